import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from wsubreg.cyclotomic import Cyc, cyc_sum, galois, invert, sqrt_int, to_complex, to_rational, zeta

small = st.integers(-4, 4)


@st.composite
def element(draw, N=None):
    N = draw(st.sampled_from([3, 4, 5, 8, 12, 15])) if N is None else N
    return Cyc.from_exponents(N, draw(st.lists(small, min_size=N, max_size=N)))


def approx(x: Cyc, z: complex) -> bool:
    return abs(x.to_complex() - z) < 1e-9 * (1 + abs(z))


def test_spec_examples():
    assert zeta(4, 1) ** 2 == -1
    assert cyc_sum((zeta(5, k) for k in range(5)), 5).is_zero()
    # zeta_6 = 1 + zeta_3 reduced modulo Phi_6 = x^2 - x + 1
    z6 = zeta(6, 1)
    assert z6.embed(6) == (Cyc.rational(1, 3) + zeta(3, 1)).embed(6)
    assert z6.coeffs == [0, 1]
    assert (zeta(6, 1) ** 2).coeffs == [-1, 1]


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_field_operations_match_complex(data):
    N = data.draw(st.sampled_from([5, 8, 12, 15]))
    a, b = data.draw(element(N)), data.draw(element(N))
    za, zb = a.to_complex(), b.to_complex()
    assert approx(a + b, za + zb)
    assert approx(a - b, za - zb)
    assert approx(a * b, za * zb)
    assert approx(-a, -za)
    assert approx(a.conj(), za.conjugate())
    if not b.is_zero():
        assert approx(a / b, za / zb)
        assert b * invert(b) == 1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_galois_is_a_ring_homomorphism(data):
    N = data.draw(st.sampled_from([5, 8, 12, 15]))
    a, b = data.draw(element(N)), data.draw(element(N))
    k = data.draw(st.sampled_from([u for u in range(1, N) if math.gcd(u, N) == 1]))
    assert galois(k, a * b) == galois(k, a) * galois(k, b)
    assert galois(k, a + b) == galois(k, a) + galois(k, b)
    # sum over the whole group is rational (the trace)
    tr = cyc_sum((galois(u, a) for u in range(1, N) if math.gcd(u, N) == 1), N)
    assert tr.is_rational()


def test_galois_and_invert_rejections():
    with pytest.raises(ValueError):
        galois(2, zeta(4, 1))
    with pytest.raises(ZeroDivisionError):
        invert(Cyc.rational(0, 5))


@settings(max_examples=40, deadline=None)
@given(element(), st.sampled_from([2, 3]))
def test_embedding_preserves_value(x, m):
    assert approx(x.embed(x.N * m), x.to_complex())
    assert x.embed(x.N * m).restrict(x.N) == x


def test_minimal_field_and_restrict():
    x = zeta(5, 1).embed(15) + zeta(3, 1).embed(15)
    assert x.minimal_order() == 15
    y = zeta(5, 2).embed(40)
    assert y.minimal_order() == 5
    assert y.restrict(5) == zeta(5, 2)
    with pytest.raises(ValueError):
        zeta(8, 1).restrict(4)


@pytest.mark.parametrize("M", [1, 2, 3, 5, 7, 8, 12, 45, 13500, 315131250])
def test_sqrt_int(M):
    r = sqrt_int(M)
    assert r * r == M
    assert approx(r, math.sqrt(M))


def test_rational_inspection():
    assert to_rational(Cyc.rational(Fraction(3, 7), 9)) == Fraction(3, 7)
    assert to_rational(zeta(3, 1)) is None
    assert to_complex(zeta(8, 1)) == pytest.approx(cmath.exp(2j * cmath.pi / 8))


@settings(max_examples=30, deadline=None)
@given(element(), st.integers(1, 5))
def test_power(x, e):
    assume(not x.is_zero())
    assert approx(x ** e, x.to_complex() ** e)
    assert x ** -e * x ** e == 1

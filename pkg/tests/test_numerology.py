import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wsubreg import numerology as nm
from wsubreg.admissible import LevelData
from wsubreg.fusion import ring_isomorphic
from wsubreg.rootsystem import build_root_system
from wsubreg.smatrix import is_symmetric, is_unitary


def level(f, n, p, q):
    return LevelData(build_root_system(f, n), p, q)


def test_central_charge_examples():
    assert nm.central_charge(level("E", 6, 12, 11)) == Fraction(-350, 11)
    ld = level("D", 4, 6, 5)
    assert nm.central_charge(ld) == Fraction(-22, 5)
    for p, q in ((6, 5), (7, 5), (7, 4), (11, 5)):
        assert nm.central_charge(level("D", 4, p, q)) == Fraction(-6 * (4 * p - 7 * q) * (3 * p - 4 * q), p * q)
    for n in (3, 5, 7):
        assert nm.central_charge(level("A", n, n + 1, n)) == 0


levels = st.sampled_from([("E", 6, (9, 10, 11)), ("E", 7, (14, 15, 16, 17)), ("E", 8, (24, 25, 26, 27, 28, 29)),
                          ("D", 4, (4, 5)), ("D", 6, (8, 9)), ("D", 7, (10, 11)), ("A", 3, (3,)), ("A", 5, (5,))])


@settings(max_examples=60, deadline=None)
@given(levels, st.integers(0, 40), st.data())
def test_closed_form_matches_direct(spec, extra, data):
    f, n, qs = spec
    q = data.draw(st.sampled_from(qs))
    rs = build_root_system(f, n)
    p = rs.h + extra
    if math.gcd(p, q) != 1:
        return
    ld = LevelData(rs, p, q)
    assert nm.central_charge_closed_form(ld) == nm.central_charge(ld)


def test_printed_type_a_constant_is_wrong():
    forms = nm.load_table()["closed_forms"]
    printed = forms["An_odd_printed"]
    for n in (3, 5, 7):
        ld = level("A", n, n + 1, n)
        printed_value = nm._eval(printed, n=n, p=n + 1, q=n)
        assert printed_value != 0 and nm.central_charge(ld) == 0
        # the derived coefficients reproduce the direct value at an arbitrary level
        ld2 = level("A", n, n + 4, n) if math.gcd(n + 4, n) == 1 else level("A", n, n + 2, n)
        assert nm.central_charge_closed_form(ld2) == nm.central_charge(ld2)


def test_effective_central_charge_examples():
    assert nm.effective_central_charge(level("E", 6, 12, 11)) == Fraction(10, 11)
    assert nm.effective_central_charge(level("E", 7, 19, 16)) == Fraction(9, 8)
    for n in (2, 3, 4, 5):
        assert nm.effective_central_charge(level("A", n, n + 1, n)) == 0


@pytest.mark.parametrize("case", [("D", 4, 6, 5), ("D", 5, 8, 7), ("E", 6, 12, 11), ("E", 7, 19, 15)])
def test_growth_equals_effective_central_charge(case):
    ld = level(*case)
    assert nm.asymptotic_growth(ld) == nm.effective_central_charge(ld)


def test_virasoro_data():
    yl = nm.vir_minimal_model(2, 5)
    assert yl.c == Fraction(-22, 5) and len(yl.labels) == 2
    assert sorted(yl.h.values()) == [Fraction(-1, 5), 0]
    ising = nm.vir_minimal_model(3, 4)
    assert ising.c == Fraction(1, 2)
    assert sorted(ising.h.values()) == [0, Fraction(1, 16), Fraction(1, 2)]
    sigma = [i for i, L in enumerate(ising.labels) if ising.h[L] == Fraction(1, 16)][0]
    eps = [i for i, L in enumerate(ising.labels) if ising.h[L] == Fraction(1, 2)][0]
    assert ising.ring.product(sigma, sigma) == {ising.vacuum: 1, eps: 1}
    for p, q in ((2, 5), (3, 4), (3, 5), (2, 13), (5, 6), (3, 22)):
        vd = nm.vir_minimal_model(p, q)
        assert len(vd.labels) == (p - 1) * (q - 1) // 2
        assert is_unitary(vd.S) and is_symmetric(vd.S)
    with pytest.raises(ValueError):
        nm.vir_minimal_model(4, 6)


@pytest.mark.parametrize("pq", [(2, 5), (3, 5), (2, 13), (3, 4), (5, 6), (3, 22)])
def test_vir_amplitude_against_s_matrix(pq):
    p, q = pq
    vd = nm.vir_minimal_model(p, q)
    S = vd.S.to_complex()
    m = vd.index(*nm._vir_min_label(p, q))
    assert vd.h[vd.labels[m]] == min(vd.h.values())
    for i, L in enumerate(vd.labels):
        assert abs(nm.vir_asymptotic_dimension(vd, *L)) == pytest.approx(abs(S[i, m]), abs=1e-12)


def test_asymptotic_dimension_matches_minimal_model():
    for case, (a, b) in ((("D", 4, 6, 5), (2, 5)), (("E", 8, 31, 25), (2, 5)), (("E", 7, 19, 15), (3, 5))):
        amp = nm.asymptotic_dimension(level(*case))
        assert amp == pytest.approx(nm.vir_asymptotic_dimension((a, b), 1, 1), abs=1e-12)


def test_singular_vector_weight():
    # (p - h + 1)(q - <theta, x0>), with <theta, x0> = h - 1 - a_* for the subregular grading
    ld = level("E", 6, 12, 11)
    assert nm.singular_vector_conformal_weight(ld) == 1 * (11 - (12 - 1 - 3))
    ld = level("D", 5, 9, 7)
    assert nm.singular_vector_conformal_weight(ld) == (9 - 8 + 1) * (7 - (8 - 1 - 2))


def test_typeA_selfdual():
    assert nm.typeA_selfdual(4, 5, 3, 2)
    assert nm.typeA_selfdual(3, 3, 2, 1)
    assert not nm.typeA_selfdual(3, 5, 3, 1)
    # the displayed scalar has an extra zero at k = n/2 that the two clauses do not list
    assert nm.typeA_selfdual_scalar(3, Fraction(3, 2)) == 0
    assert nm.typeA_selfdual_scalar(3, Fraction(-3) + Fraction(3, 2)) == 0
    assert nm.typeA_selfdual_scalar(3, Fraction(-3) + Fraction(5, 3)) != 0


def test_sporadic_reports():
    assert nm.sporadic_report(level("D", 4, 6, 5)).identified == "Vir[2,5]"
    rep = nm.sporadic_report(level("E", 6, 12, 11))
    assert rep.identified == "Vir[3,22]+L[21,1]" and rep.evidence["multiplicity"] == 1
    rep = nm.sporadic_report(level("E", 7, 19, 16))
    assert rep.identified == "unidentified" and rep.evidence["reason"] == "c_eff >= 1"
    assert nm.sporadic_report(level("E", 8, 31, 24)).identified == "trivial"
    assert rep.to_json()["identified"] == "unidentified"


def test_sporadic_report_with_ring():
    from cases import computed
    run = computed("D", 5, 8, 7)
    rep = nm.sporadic_report(run.ld, ring=run.ring, labels=run.labels)
    assert rep.identified == "Vir[2,7]" and rep.evidence["fusion_isomorphism"] is not None
    assert ring_isomorphic(run.ring, nm.vir_minimal_model(2, 7).ring) is not None


def test_extension_irreps():
    vd = nm.vir_minimal_model(3, 22)
    hs = [vd.h[L] for L in vd.labels]
    assert nm.extension_irreps(vd.ring, hs, vd.index(21, 1)) == 7
    # (1, 2) is the same module as (21, 1) under the Kac symmetry
    assert vd.index(1, 2) == vd.index(21, 1)
    assert nm.extension_irreps(vd.ring, hs, vd.index(2, 1)) is None


def test_table_rows():
    rows = nm.table_rows()
    assert len(rows) == 24
    assert {(r["family"], r["rank"]) for r in rows if r["family"] == "D"} == {("D", n) for n in (4, 5, 6, 7)}
    # the (2n-1)/(2n-4) row is skipped when n = 2 mod 3
    assert not any(r["family"] == "D" and r["rank"] == 5 and r["q"] == 6 for r in rows)

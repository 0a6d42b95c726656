import itertools
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from test_weyl import bfs_orbit_size
from wsubreg import weyl
from wsubreg.admissible import LevelData, admissible_count, choose_y_eta, conformal_dimension, \
    enumerate_dominant, enumerate_subreg_coweights, enumerate_typeA_coweights, integral_roots, label_weight, \
    lattice_representative, orbit_representatives, vacuum_index, vacuum_label
from wsubreg.rootsystem import Weight, build_root_system, inner_product
from wsubreg import reference


def brute_dominant(rs, m):
    return sorted(v for v in itertools.product(range(m + 1), repeat=rs.rank)
                  if sum(a * b for a, b in zip(rs.marks, v)) <= m)


@pytest.mark.parametrize("f,n,m", [("A", 1, 4), ("A", 3, 3), ("D", 4, 2), ("E", 6, 2), ("E", 7, 1), ("E", 8, 2)])
def test_enumerate_dominant(f, n, m):
    rs = build_root_system(f, n)
    got = sorted(tuple(int(c) for c in w.coords) for w in enumerate_dominant(rs, m))
    assert got == brute_dominant(rs, m)


def test_dominant_examples():
    e7 = build_root_system("E", 7)
    assert {w.coords for w in enumerate_dominant(e7, 1)} == {Weight.zero(7).coords, e7.varpi(7).coords}
    assert len(enumerate_dominant(build_root_system("A", 1), 5 - 2)) == 4
    assert [w.coords for w in enumerate_dominant(e7, 0)] == [Weight.zero(7).coords]


def test_subreg_coweights_examples():
    a3 = build_root_system("A", 3)
    got = {w.coords for w in enumerate_subreg_coweights(a3, 3)}
    assert got == {a3.rho.coords} | {(a3.rho - a3.varpi(i)).coords for i in (1, 2, 3)}
    e7 = build_root_system("E", 7)
    got = {w.coords for w in enumerate_subreg_coweights(e7, 16)}
    printed = {tuple(Fraction(c) for c in w[1:]) for w in reference.e7_weights().values()}
    assert got == printed and len(got) == 13
    assert len(enumerate_subreg_coweights(build_root_system("E", 6), 11)) == 21
    with pytest.raises(ValueError):
        enumerate_subreg_coweights(e7, 13)


def test_typeA_coweights_examples():
    # examples stated for sl_n with n = rank + 1
    sl3 = build_root_system("A", 2)
    assert [w.coords for w in enumerate_typeA_coweights(sl3, 3)] == [Weight([1, 1]).coords]
    assert len(enumerate_typeA_coweights(sl3, 2)) == 2
    assert len(enumerate_typeA_coweights(build_root_system("A", 4), 2)) == 2
    with pytest.raises(ValueError):
        enumerate_typeA_coweights(build_root_system("D", 4), 2)


@pytest.mark.parametrize("f,n,p,q,count", [("E", 6, 12, 11, 7), ("D", 4, 6, 5, 2), ("E", 8, 30, 29, 44),
                                          ("E", 7, 19, 16, 13), ("A", 3, 5, 3, 4)])
def test_orbit_counts(f, n, p, q, count):
    ld = LevelData(build_root_system(f, n), p, q)
    labels = orbit_representatives(ld)
    assert len(labels) == count
    # orbits partition the (kappa, eta) pairs
    members = [m for L in labels for m in L.orbit]
    assert len(members) == len(set(members))


@pytest.mark.parametrize("f,n,q", [("E", 6, 11), ("E", 6, 10), ("D", 5, 7), ("D", 4, 5), ("E", 7, 16), ("A", 3, 3)])
def test_choose_y_eta_makes_pairing_positive(f, n, q):
    rs = build_root_system(f, n)
    for p in (rs.h + 1, rs.h + 5):
        if np.gcd(p, q) != 1:
            continue
        for eta in enumerate_subreg_coweights(rs, q):
            y = choose_y_eta(rs, eta, q)
            if eta[rs.star - 1] == 0:
                assert y.word == ()
            for kappa in enumerate_dominant(rs, p - rs.h):
                lam = weyl.apply(y, kappa + rs.rho - Fraction(p, q) * eta)
                val = inner_product(rs, rs.alpha_star, lam)
                assert val > 0 and val.denominator == 1


def test_choose_y_for_x0_is_identity():
    e6 = build_root_system("E", 6)
    assert choose_y_eta(e6, e6.x0, 11).word == ()


@pytest.mark.parametrize("f,n,p,q", [("E", 6, 12, 11), ("A", 3, 5, 3), ("D", 4, 6, 5), ("E", 7, 19, 16)])
def test_vacuum(f, n, p, q):
    ld = LevelData(build_root_system(f, n), p, q)
    labels = orbit_representatives(ld)
    v = vacuum_label(ld, labels)
    assert v.h == 0
    assert (ld.x0.coords, Weight.zero(n).coords) in v.orbit
    assert conformal_dimension(ld, label_weight(ld, Weight.zero(n), ld.x0)) == 0
    assert labels[vacuum_index(labels, ld)] == v


def test_e6_conformal_dimensions():
    ld = LevelData(build_root_system("E", 6), 12, 11)
    got = Counter(L.h for L in orbit_representatives(ld))
    want = Counter(Fraction(i * (3 * i - 19), 22) for i in (0, 1, 2, 3, 4, 5, 5))
    assert got == want


def test_lattice_representative_unique():
    for f, n, p, q in (("E", 6, 13, 10), ("E", 6, 13, 9), ("D", 4, 7, 5), ("E", 7, 19, 16)):
        ld = LevelData(build_root_system(f, n), p, q)
        for L in orbit_representatives(ld):
            r = lattice_representative(ld, L)
            assert r.h == L.h
            assert (r.eta.coords, r.kappa.coords) in L.orbit


def stabilizer_order(rs, zeros):
    """Order of the group generated by the affine simple reflections at the vanishing labels."""
    theta = [int(c) for c in rs.theta_w.coords]
    n = rs.rank
    A = np.zeros((n + 1, n + 1), dtype=np.int64)
    A[0, 0] = 2
    A[0, 1:] = [-t for t in theta]
    A[1:, 0] = [-t for t in theta]
    A[1:, 1:] = rs.cartan
    sub = A[np.ix_(zeros, zeros)]
    if not len(zeros):
        return 1

    class Sub:
        rank = len(zeros)
        cartan = sub
    return bfs_orbit_size(Sub, [1] * len(zeros))


def orbit_count_oracle(rs, q):
    """q^rank from counting points of P/qQ by alcove representatives."""
    total = 0
    for v in itertools.product(range(q + 1), repeat=rs.rank):
        rest = q - sum(a * b for a, b in zip(rs.marks, v))
        if rest < 0:
            continue
        labels = [rest] + list(v)
        zeros = [i for i, c in enumerate(labels) if c == 0]
        total += rs.weyl_order // stabilizer_order(rs, zeros)
    assert total % rs.center_order == 0
    return total // rs.center_order


@pytest.mark.parametrize("f,n,p,q,mode", [("A", 1, 3, 2, "typeA"), ("A", 2, 4, 3, "typeA"), ("A", 3, 5, 3, "subreg"),
                                          ("D", 4, 7, 5, "subreg"), ("A", 2, 5, 2, "subreg")])
def test_admissible_count_against_orbit_count(f, n, p, q, mode):
    ld = LevelData(build_root_system(f, n), p, q, mode)
    oracle = orbit_count_oracle(ld.rs, q) * len(brute_dominant(ld.rs, p - ld.rs.h))
    assert admissible_count(ld) == oracle


def test_admissible_count_examples():
    assert admissible_count(LevelData(build_root_system("A", 1), 3, 2, "typeA")) == 4
    assert admissible_count(LevelData(build_root_system("A", 2), 4, 3, "typeA")) == 27
    assert admissible_count(LevelData(build_root_system("E", 6), 12, 11)) == 11 ** 6


def test_integral_roots():
    e6 = build_root_system("E", 6)
    assert len(integral_roots(e6, e6.varpi(2))) == 72
    lam = Fraction(1, 3) * e6.varpi(1)
    assert len(integral_roots(e6, lam)) < 72


def test_level_rejections():
    e6 = build_root_system("E", 6)
    with pytest.raises(ValueError):
        LevelData(e6, 22, 11)
    with pytest.raises(ValueError):
        LevelData(e6, 11, 10)
    with pytest.raises(ValueError, match="legal values"):
        LevelData(e6, 13, 8)
    with pytest.raises(ValueError):
        LevelData(e6, 13, 2, "typeA")


words = st.lists(st.integers(1, 6), max_size=10)


@settings(max_examples=40, deadline=None)
@given(words, st.integers(0, 20))
def test_conformal_dimension_dot_invariant(word, pick):
    ld = LevelData(build_root_system("E", 6), 13, 10)
    labels = orbit_representatives(ld)
    L = labels[pick % len(labels)]
    lam = label_weight(ld, L.kappa, L.eta)
    w = weyl.from_word(ld.rs, word)
    assert conformal_dimension(ld, weyl.dot(w, lam)) == L.h

from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wsubreg import weyl
from wsubreg.rootsystem import Weight, build_root_system


def bfs_orbit_size(rs, v):
    """Plain set-based orbit count, independent of the canonical-parent walk."""
    start = tuple(v)
    seen = {start}
    queue = deque([start])
    while queue:
        x = np.array(queue.popleft())
        for i in range(rs.rank):
            y = tuple(int(c) for c in x - x[i] * rs.cartan[i])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


@pytest.mark.parametrize("f,n,order", [("A", 2, 6), ("A", 3, 24), ("D", 4, 192), ("E", 6, 51840)])
def test_enumeration_count_and_signs(f, n, order):
    rs = build_root_system(f, n)
    assert bfs_orbit_size(rs, [1] * n) == order
    count, signed = 0, 0
    images = set()
    for sign, imgs in weyl.orbit_chunks(rs, np.ones((1, n), dtype=np.int64)):
        count += len(imgs)
        signed += sign * len(imgs)
        images.update(tuple(m[0]) for m in imgs)
    assert count == order == rs.weyl_order
    assert len(images) == order
    assert signed == 0


def test_signs_match_inversion_count():
    rs = build_root_system("D", 4)
    for w in weyl.enumerate_weyl(rs):
        assert w.sign == weyl.sign_by_count(rs, w)


@pytest.mark.parametrize("nparts", [2, 3])
def test_partitioned_stream_covers_group_once(nparts):
    rs = build_root_system("A", 4)
    seen = []
    for part in range(nparts):
        for _, imgs in weyl.orbit_chunks(rs, np.ones((1, 4), dtype=np.int64), chunk_size=7, part=part,
                                         nparts=nparts):
            seen.extend(tuple(m[0]) for m in imgs)
    assert len(seen) == len(set(seen)) == 120


def test_cap():
    rs = build_root_system("E", 8)
    with pytest.raises(ValueError, match="allow_huge"):
        next(weyl.orbit_chunks(rs, np.ones((1, 8), dtype=np.int64)))


def test_wsr_is_half_of_w():
    rs = build_root_system("D", 5)
    inside = sum(weyl.in_Wsr(rs, w) for w in weyl.enumerate_weyl(rs))
    assert inside == rs.weyl_order // 2
    assert weyl.in_Wsr(rs, weyl.identity(rs))
    assert not weyl.in_Wsr(rs, weyl.simple(rs, rs.star))


def test_longest_element():
    for f, n in (("A", 3), ("D", 5), ("E", 6), ("E", 7)):
        rs = build_root_system(f, n)
        w0 = weyl.longest(rs)
        assert weyl.apply(w0, rs.rho) == -rs.rho
        assert w0.sign == weyl.sign_by_count(rs, w0)


def test_element_mapping_root():
    e6 = build_root_system("E", 6)
    w = weyl.element_mapping_root(e6, e6.alpha_star, e6.alpha_star)
    assert w.word == ()
    w = weyl.element_mapping_root(e6, e6.theta_w, e6.alpha_star)
    assert weyl.apply(w, e6.theta_w) == e6.alpha_star
    # length of a shortest path equals the height difference for roots reached by simple reflections
    assert len(w.word) == sum(e6.theta) - 1
    a2 = build_root_system("A", 2)
    w = weyl.element_mapping_root(a2, a2.alpha(1), a2.alpha(2))
    assert w.word in ((1, 2), (2, 1))
    assert weyl.apply(w, a2.alpha(1)) == a2.alpha(2)
    with pytest.raises(ValueError):
        weyl.element_mapping_root(a2, a2.alpha(1), a2.varpi(1))


words = st.lists(st.integers(1, 6), max_size=12)
lams = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=6, max_size=6)


@settings(max_examples=60, deadline=None)
@given(words, lams)
def test_dot_action_is_an_action(word, lam):
    rs = build_root_system("E", 6)
    lam = Weight(lam)
    w = weyl.from_word(rs, word)
    step = lam
    for i in reversed(word):
        step = weyl.dot(weyl.simple(rs, i), step)
    assert weyl.dot(w, lam) == step
    assert weyl.dot(w.inverse(), weyl.dot(w, lam)) == lam

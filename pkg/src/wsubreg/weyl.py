"""Weyl group elements and streaming enumeration.

The group is enumerated as the orbit of rho.  Orbit points correspond
bijectively to group elements, and a point x = w(rho) has the children
s_i x with x_i > 0 (these lengthen w).  Each child is kept only when i is
the first negative coordinate of s_i x, so every element has exactly one
parent and no deduplication is needed.  The depth in the tree is the length.

The workhorse is :func:`orbit_chunks`, which streams numpy arrays holding the
images of a fixed set of tracked vectors under all group elements.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .rootsystem import RootSystem, Weight

DEFAULT_CAP = 3_000_000  # covers W(E7) = 2,903,040


@dataclass(frozen=True)
class WeylElement:
    matrix: np.ndarray  # acts on fundamental-weight coordinates
    sign: int
    word: tuple[int, ...] | None = None  # 1-based generators, rightmost applied first

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(self.matrix @ other.matrix, self.sign * other.sign, word)

    def inverse(self) -> "WeylElement":
        # orthogonal for the invariant form, so integral inverse exists; solve exactly
        inv = np.rint(np.linalg.inv(self.matrix)).astype(np.int64)
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(inv, self.sign, word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(np.eye(rs.rank, dtype=np.int64), 1, ())


def simple(rs: RootSystem, i: int) -> WeylElement:
    return WeylElement(rs.simple_reflection(i), -1, (i,))


def from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    """Element s_{w[0]} s_{w[1]} ... (rightmost acts first)."""
    w = identity(rs)
    for i in word:
        w = w @ simple(rs, i)
    return w


def longest(rs: RootSystem) -> WeylElement:
    n_pos = len(rs.positive_roots)
    return WeylElement(rs.longest_element.copy(), (-1) ** n_pos)


def apply(w: WeylElement, lam: Weight) -> Weight:
    M = w.matrix
    n = M.shape[0]
    return Weight(sum((int(M[r, c]) * lam[c] for c in range(n) if lam[c]), Fraction(0)) for r in range(n))


def dot(w: WeylElement, lam: Weight) -> Weight:
    rho = Weight([1] * len(lam))
    return apply(w, lam + rho) - rho


def root_height(rs: RootSystem, root: Weight) -> Fraction:
    return rs.height(root)


def in_Wsr(rs: RootSystem, w: WeylElement) -> bool:
    return root_height(rs, apply(w, rs.alpha_star)) > 0


def sign_by_count(rs: RootSystem, w: WeylElement) -> int:
    """(-1)^(number of positive roots sent to negative roots), counted directly."""
    imgs = rs.positive_roots_w @ w.matrix.T
    hts = imgs @ rs.gram_int.sum(axis=0)
    return -1 if int((hts < 0).sum()) % 2 else 1


def _check_cap(rs: RootSystem, cap: int | None, allow_huge: bool):
    cap = DEFAULT_CAP if cap is None else cap
    if rs.weyl_order > cap and not allow_huge:
        raise ValueError(
            f"|W({rs.name})| = {rs.weyl_order} exceeds the enumeration cap {cap}; pass allow_huge=True")


def _children(A: np.ndarray, X: np.ndarray, T: np.ndarray):
    """Canonical children of a batch of orbit points together with their tracked images."""
    outX, outT = [], []
    for i in range(A.shape[0]):
        xi = X[:, i]
        mask = xi > 0
        if not mask.any():
            continue
        idx = np.flatnonzero(mask)
        Y = X[idx] - xi[idx, None] * A[i]
        if i:
            keep = (Y[:, :i] >= 0).all(axis=1)
            if not keep.all():
                Y, idx = Y[keep], idx[keep]
        if not len(idx):
            continue
        Ti = T[idx]
        outX.append(Y)
        outT.append(Ti - Ti[:, :, i:i + 1] * A[i])
    if not outX:
        return None, None
    return np.concatenate(outX), np.concatenate(outT)


def orbit_chunks(rs: RootSystem, tracked: np.ndarray, chunk_size: int = 1 << 16,
                 part: int = 0, nparts: int = 1, cap: int | None = None,
                 allow_huge: bool = False) -> Iterator[tuple[int, np.ndarray]]:
    """Stream (sign, images) over all of W.

    ``tracked`` is a (k, l) integer array of vectors in fundamental-weight
    coordinates; ``images`` has shape (m, k, l) and holds w(v) for m group
    elements of equal length.  The tree is walked depth first in batches of
    at most ``chunk_size`` points, so memory stays bounded even for E8.
    Chunks are numbered in traversal order and only those congruent to
    ``part`` modulo ``nparts`` are yielded, so disjoint workers cover W once.
    """
    _check_cap(rs, cap, allow_huge)
    A = rs.cartan
    n = rs.rank
    tracked = np.asarray(tracked, dtype=np.int64).reshape(-1, n)
    stack = [(0, np.ones((1, n), dtype=np.int64), tracked[None, :, :].copy())]
    counter = 0
    while stack:
        layer, X, T = stack.pop()
        if counter % nparts == part:
            yield (-1 if layer & 1 else 1), T
        counter += 1
        Y, U = _children(A, X, T)
        if Y is None:
            continue
        for s in reversed(range(0, len(Y), chunk_size)):
            stack.append((layer + 1, Y[s:s + chunk_size], U[s:s + chunk_size]))


def enumerate_weyl(rs: RootSystem, cap: int | None = None, allow_huge: bool = False) -> Iterator[WeylElement]:
    """Every element once, in depth-first order of the canonical-parent tree."""
    eye = np.eye(rs.rank, dtype=np.int64)
    for sign, imgs in orbit_chunks(rs, eye, cap=cap, allow_huge=allow_huge):
        for m in imgs:
            yield WeylElement(np.ascontiguousarray(m.T), sign)


def thread_count() -> int:
    """Worker count from WSUBREG_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("WSUBREG_THREADS", "1")))
    except ValueError:
        return 1


def element_mapping_root(rs: RootSystem, source: Weight, target: Weight) -> WeylElement:
    """Shortest w with w(source) = target, found by BFS over the root orbit.

    Generators are tried in increasing index order, which fixes the choice.
    """
    src, tgt = tuple(int(c) for c in source.coords), tuple(int(c) for c in target.coords)
    A = rs.cartan
    parent: dict[tuple, tuple | None] = {src: None}
    queue = deque([src])
    while queue:
        r = queue.popleft()
        if r == tgt:
            break
        v = np.array(r)
        for i in range(rs.rank):
            s = tuple(int(c) for c in v - v[i] * A[i])
            if s not in parent:
                parent[s] = (r, i + 1)
                queue.append(s)
    if tgt not in parent:
        raise ValueError(f"{target} is not in the Weyl orbit of {source}")
    word = []
    node = tgt
    while parent[node] is not None:
        node, i = parent[node]
        word.append(i)
    # word lists generators from last applied to first applied
    w = from_word(rs, word)
    assert apply(w, source) == target
    return w

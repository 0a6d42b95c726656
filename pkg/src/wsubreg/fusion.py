"""Fusion rings from exact S-matrices."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from flint import fmpq_poly

from .cyclotomic import Cyc, cyclotomic_poly
from .smatrix import ScaledMatrix, charge_conjugation


class FusionError(ValueError):
    pass


@dataclass
class FusionRing:
    labels: list
    identity: int
    dual: list[int]
    N: np.ndarray  # N[i, j, k] = multiplicity of k in i x j
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.labels)

    def matrix(self, i: int) -> np.ndarray:
        """Fusion matrix of label i: entry (j, k) is N_{i,j}^k."""
        return self.N[i]

    def product(self, i: int, j: int) -> dict[int, int]:
        return {k: int(v) for k, v in enumerate(self.N[i, j]) if v}

    def check(self) -> None:
        """Raise FusionError if a ring axiom fails."""
        N, n, e = self.N, self.size, self.identity
        if (N < 0).any():
            raise FusionError("negative structure constant")
        if not np.array_equal(N[e], np.eye(n, dtype=N.dtype)):
            raise FusionError("identity label does not act as the identity")
        if not np.array_equal(N, N.transpose(1, 0, 2)):
            raise FusionError("fusion is not commutative")
        d = self.dual
        if sorted(d) != list(range(n)) or any(d[d[i]] != i for i in range(n)) or d[e] != e:
            raise FusionError("duality is not an involution fixing the identity")
        for i in range(n):
            for j in range(n):
                if N[i, j, e] != (1 if j == d[i] else 0):
                    raise FusionError(f"N[{i},{j}]^identity inconsistent with duality")
        # associativity: (N_i N_j) = sum_k N_ij^k N_k as matrices
        mats = N.astype(np.int64)
        for i in range(n):
            for j in range(n):
                lhs = mats[i] @ mats[j]
                rhs = np.tensordot(mats[i, j], mats, axes=1)
                if not np.array_equal(lhs.T, rhs) and not np.array_equal(lhs, rhs):
                    raise FusionError(f"associativity fails for ({i},{j})")

    def is_simple_current(self, i: int) -> bool:
        return all(self.N[i, j].sum() == 1 for j in range(self.size))

    def order_of(self, i: int) -> int | None:
        """Order of a simple current in the group of simple currents."""
        if not self.is_simple_current(i):
            return None
        x, k = self.identity, 0
        while True:
            x = int(np.flatnonzero(self.N[i, x])[0])
            k += 1
            if x == self.identity:
                return k

    def fp_dims(self) -> np.ndarray:
        """Frobenius-Perron dimensions (largest eigenvalue of each fusion matrix)."""
        return np.array([max(abs(np.linalg.eigvals(self.N[i].astype(float)))) for i in range(self.size)])

    def to_json(self) -> str:
        return json.dumps({"labels": [str(l) for l in self.labels], "identity": self.identity,
                           "dual": self.dual, "N": self.N.tolist()})


def _polys(core, N: int):
    return [[(x.embed(N) if x.N != N else x).poly for x in row] for row in core]


def verlinde_raw(core: list, norm: Fraction | int, vac: int, labels=None) -> FusionRing:
    """Fusion ring of the matrix (core / sqrt(norm)) up to a phase; norm = core core^dagger diagonal."""
    n = len(core)
    N = math.lcm(*(x.N for row in core for x in row))
    Phi = cyclotomic_poly(N)
    P = _polys(core, N)
    conj = [[Cyc(N, p, reduced=True).conj().poly for p in row] for row in P]
    invV = []
    for w in range(n):
        c = Cyc(N, P[vac][w], reduced=True)
        if c.is_zero():
            raise FusionError(f"vacuum row vanishes in column {w}")
        invV.append(c.inverse().poly)
    norm = Fraction(norm)
    out = np.zeros((n, n, n), dtype=np.int64)
    for X in range(n):
        for Y in range(X, n):
            T = [((P[X][w] * P[Y][w]) % Phi) * invV[w] % Phi for w in range(n)]
            for Z in range(n):
                acc = fmpq_poly([])
                for w in range(n):
                    acc += T[w] * conj[Z][w]
                acc = acc % Phi
                if acc.degree() > 0:
                    raise FusionError(f"N[{X},{Y}]^{Z} is not rational")
                c = acc.coeffs()[0] if acc.degree() == 0 else 0
                val = Fraction(int(c.p), int(c.q)) / norm if c else Fraction(0)
                if val.denominator != 1 or val < 0:
                    raise FusionError(f"N[{X},{Y}]^{Z} = {val} is not a nonnegative integer")
                out[X, Y, Z] = out[Y, X, Z] = int(val)
    dual = [int(np.flatnonzero(out[i, :, vac])[0]) if out[i, :, vac].sum() == 1 else -1 for i in range(n)]
    ring = FusionRing(list(range(n)) if labels is None else list(labels), vac, dual, out)
    ring.check()
    return ring


def verlinde(S: ScaledMatrix, vacuum_index: int) -> FusionRing:
    """Fusion ring via N_XY^Z = (1/M) sum_W core_XW core_YW conj(core_ZW) / core_VW.

    The duality read off from the vacuum column is cross-checked against S^2.
    """
    ring = verlinde_raw(S.core, S.radicand, vacuum_index, S.labels)
    cc = charge_conjugation(S)
    if cc is None or cc != ring.dual:
        raise FusionError(f"S^2 gives {cc}, Verlinde duality gives {ring.dual}")
    return ring


def raw_norm(core: list) -> Fraction:
    """lambda with core core^dagger = lambda I, or an error."""
    n = len(core)
    vals = set()
    for i in range(n):
        for j in range(n):
            acc = sum((core[i][k] * core[j][k].conj() for k in range(n)), Cyc.rational(0, core[0][0].N))
            r = acc.to_rational()
            if r is None or (i != j and r != 0):
                raise FusionError("matrix is not a multiple of a unitary matrix")
            if i == j:
                vals.add(r)
    if len(vals) != 1:
        raise FusionError("rows have different norms")
    return vals.pop()


def fusion_from_raw(core: list, labels=None) -> FusionRing:
    """Fusion ring of a matrix known only up to scale, trying every row as the unit."""
    lam = raw_norm(core)
    last = None
    for v in range(len(core)):
        try:
            return verlinde_raw(core, lam, v, labels)
        except FusionError as exc:
            last = exc
    raise FusionError(f"no row yields a fusion ring: {last}")


def quantum_dimensions(S: ScaledMatrix, vacuum_index: int) -> list[Cyc]:
    v = S.core[vacuum_index]
    inv = v[vacuum_index].inverse()
    return [x * inv for x in v]


def tensor_ring(F1: FusionRing, F2: FusionRing) -> FusionRing:
    n1, n2 = F1.size, F2.size
    N = np.einsum("abc,ijk->aibjck", F1.N, F2.N).reshape(n1 * n2, n1 * n2, n1 * n2)
    labels = [(a, b) for a in F1.labels for b in F2.labels]
    dual = [F1.dual[i // n2] * n2 + F2.dual[i % n2] for i in range(n1 * n2)]
    return FusionRing(labels, F1.identity * n2 + F2.identity, dual, N)


def _invariants(F: FusionRing, i: int):
    N = F.N
    return (i == F.identity, F.dual[i] == i, tuple(sorted(N[i].ravel().tolist())),
            round(float(F.fp_dims()[i]), 8))


def ring_isomorphic(F1: FusionRing, F2: FusionRing) -> list[int] | None:
    """Bijection sigma (F1 index -> F2 index) preserving identity, duals and N, or None."""
    n = F1.size
    if F2.size != n:
        return None
    inv1 = [_invariants(F1, i) for i in range(n)]
    inv2 = [_invariants(F2, i) for i in range(n)]
    if sorted(inv1) != sorted(inv2):
        return None
    order = sorted(range(n), key=lambda i: (not inv1[i][0], sum(1 for j in range(n) if inv2[j] == inv1[i])))
    sigma = [-1] * n
    used = [False] * n
    assigned: list[int] = []

    def consistent(i):
        a = sigma[i]
        if F1.dual[i] in assigned or F1.dual[i] == i:
            if sigma[F1.dual[i]] != F2.dual[a] and F1.dual[i] != i:
                return False
            if F1.dual[i] == i and F2.dual[a] != a:
                return False
        for j in assigned + [i]:
            for k in assigned + [i]:
                if F1.N[i, j, k] != F2.N[a, sigma[j], sigma[k]]:
                    return False
                if F1.N[j, k, i] != F2.N[sigma[j], sigma[k], a]:
                    return False
        return True

    def rec(t):
        if t == n:
            return True
        i = order[t]
        for a in range(n):
            if used[a] or inv2[a] != inv1[i]:
                continue
            sigma[i] = a
            if consistent(i):
                used[a] = True
                assigned.append(i)
                if rec(t + 1):
                    return True
                assigned.pop()
                used[a] = False
            sigma[i] = -1
        return False

    if not rec(0):
        return None
    ok = all(F1.N[i, j, k] == F2.N[sigma[i], sigma[j], sigma[k]]
             for i in range(n) for j in range(n) for k in range(n))
    return sigma if ok else None


def group_ring(n: int) -> FusionRing:
    """Z[Z/n] with its canonical basis."""
    N = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            N[i, j, (i + j) % n] = 1
    return FusionRing(list(range(n)), 0, [(-i) % n for i in range(n)], N)


def dtype_conjecture_ring(m: int, check: bool = True) -> FusionRing:
    """Conjectural ring with r = 3m - 1 labels 0..r-1.

    [i] x [j] = sum of [k] over |i-j| <= k <= min(i+j, r-i-j) with k = i+j mod 2.
    """
    if m < 1:
        raise ValueError("m must be positive")
    r = 3 * m - 1
    N = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            for k in range(abs(i - j), min(i + j, r - i - j) + 1):
                if (k - i - j) % 2 == 0 and k < r:
                    N[i, j, k] = 1
    dual = list(range(r))
    ring = FusionRing(list(range(r)), 0, dual, N)
    if check:
        ring.check()
    return ring


def match_fusion_matrices(ring: FusionRing, printed: dict[int, np.ndarray], fixed: dict[int, int] | None = None,
                          allowed: dict[int, set[int]] | None = None, limit: int = 0) -> list[list[int]]:
    """All bijections pi (printed index -> ring index) with N[pi(i)][pi(j), pi(k)] = printed[i][j, k].

    ``fixed`` pins some indices, ``allowed`` restricts candidates per index
    (for example by conformal dimension).  Stops after ``limit`` solutions
    when limit > 0.
    """
    n = ring.size
    fixed = dict(fixed or {})
    printed = {i: np.asarray(M) for i, M in printed.items()}
    cand = {a: set(range(n)) if allowed is None or a not in allowed else set(allowed[a]) for a in range(n)}
    for a, b in fixed.items():
        cand[a] = {b}
    # row sums of the printed matrices are cheap invariants of the target label
    for i, M in printed.items():
        cand[i] = {b for b in cand[i] if np.array_equal(np.sort(ring.N[b].sum(axis=1)), np.sort(M.sum(axis=1)))}
    order = sorted(range(n), key=lambda a: (a not in printed, len(cand[a])))
    pi = [-1] * n
    used = [False] * n
    sols: list[list[int]] = []

    def consistent(a: int) -> bool:
        done = [x for x in range(n) if pi[x] >= 0]
        for i, M in printed.items():
            if pi[i] < 0:
                continue
            Ni = ring.N[pi[i]]
            if i == a:
                for j in done:
                    for k in done:
                        if Ni[pi[j], pi[k]] != M[j, k]:
                            return False
            else:
                for j in done:
                    if Ni[pi[a], pi[j]] != M[a, j] or Ni[pi[j], pi[a]] != M[j, a]:
                        return False
        return True

    def rec(t: int) -> bool:
        if t == n:
            sols.append(list(pi))
            return limit > 0 and len(sols) >= limit
        a = order[t]
        for b in sorted(cand[a]):
            if used[b]:
                continue
            pi[a], used[b] = b, True
            if consistent(a) and rec(t + 1):
                return True
            pi[a], used[b] = -1, False
        return False

    rec(0)
    return sols

"""Exact S-matrices as (i^a / sqrt(M)) * core with core entries in a cyclotomic field.

All Weyl-group sums reduce to one primitive: for integer vectors u_i, v_j
and every w, the phase zeta_m^(-c * d*(u_i, w v_j)) weighted by an integer.
The engine streams W once, turns phases into residues mod m and histograms
them with np.bincount, so every matrix entry comes out as an integer vector
of length m, i.e. an element of Z[zeta_m].
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import weyl
from .admissible import (LevelData, SubregLabel, enumerate_dominant, enumerate_subreg_coweights,
                         choose_y_eta, lattice_representative, orbit_representatives,
                         representative_mode)
from .cyclotomic import Cyc, sqrt_int, zeta
from .rootsystem import RootSystem, Weight, inner_product
from .weyl import apply


@dataclass
class ScaledMatrix:
    """The matrix (i**i_power / sqrt(radicand)) * core."""

    i_power: int
    radicand: int
    core: list  # list of rows of Cyc
    labels: list
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.i_power %= 4

    @property
    def size(self) -> int:
        return len(self.core)

    @property
    def order(self) -> int:
        return math.lcm(*(x.N for row in self.core for x in row))

    def scale_complex(self) -> complex:
        return (1j ** self.i_power) / math.sqrt(self.radicand)

    def to_complex(self) -> np.ndarray:
        s = self.scale_complex()
        return np.array([[s * x.to_complex() for x in row] for row in self.core])

    def entry(self, i: int, j: int) -> Cyc:
        """Exact value of entry (i, j) including the scale."""
        return self.core[i][j] * zeta(4, self.i_power) / sqrt_int(self.radicand)

    def submatrix(self, idx: Sequence[int]) -> "ScaledMatrix":
        return ScaledMatrix(self.i_power, self.radicand,
                            [[self.core[i][j] for j in idx] for i in idx],
                            [self.labels[i] for i in idx], dict(self.meta))

    def permuted(self, perm: Sequence[int]) -> "ScaledMatrix":
        return self.submatrix(perm)

    def to_json(self) -> dict:
        return {
            "labels": [getattr(L, "to_json", lambda: str(L))() for L in self.labels],
            "i_power": self.i_power,
            "radicand": self.radicand,
            "core": [[{"N": x.N, "coeffs": [str(c) for c in x.coeffs]} for x in row] for row in self.core],
            "float": [[[v.real, v.imag] for v in row] for row in self.to_complex()],
        }


def transpose(core):
    return [list(col) for col in zip(*core)]


def matmul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = A[i][0] * B[0][j]
            for t in range(1, m):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


# Weyl-group exponential sums

def _chunk_bins(rs, gram_f, left_g, signs_chunk, imgs, nl, nr, coeff, modulus, xs_simple, star_pos):
    """Histogram contribution of one chunk; returns array (nx, nl, nr, modulus)."""
    sign, T = signs_chunk, imgs
    m = T.shape[0]
    V = T[:, :nr, :]  # images of the right vectors
    if star_pos is not None:
        a_img = T[:, nr, :]  # image of alpha_*
        simple = a_img @ rs_gram_int_T(rs)  # d * simple-root coordinates
        ht = simple.sum(axis=1)
        keep = ht > 0
        if not keep.any():
            return None
        V = V[keep]
        simple = simple[keep]
        m = V.shape[0]
        wts = (simple @ xs_simple.T) // rs.form_denominator * sign  # (m, nx)
    else:
        wts = np.full((m, 1), sign, dtype=np.int64)
    ip = np.rint(V.reshape(-1, V.shape[-1]).astype(np.float64) @ left_g.T).astype(np.int64)
    ip = ip.reshape(m, nr, nl).transpose(0, 2, 1)  # (m, nl, nr)
    res = (-coeff * ip) % modulus
    pair = np.arange(nl * nr, dtype=np.int64).reshape(1, nl, nr) * modulus
    idx = (res + pair).reshape(m, -1)
    nx = wts.shape[1]
    out = np.empty((nx, nl * nr * modulus), dtype=np.int64)
    for x in range(nx):
        w = np.broadcast_to(wts[:, x:x + 1], idx.shape)
        out[x] = np.rint(np.bincount(idx.ravel(), weights=w.ravel().astype(np.float64),
                                     minlength=nl * nr * modulus)).astype(np.int64)
    return out.reshape(nx, nl, nr, modulus)


def rs_gram_int_T(rs):
    return rs.gram_int.T


def _engine_part(args):
    (family, rank, star, left, right, coeff, modulus, subregular, xs, part, nparts, allow_huge) = args
    rs = RootSystem(family, rank, star if family == "A" else None)
    n = rank
    left = np.asarray(left, dtype=np.int64).reshape(-1, n)
    right = np.asarray(right, dtype=np.int64).reshape(-1, n)
    nl, nr = left.shape[0], right.shape[0]
    tracked = right
    xs_simple = None
    star_pos = None
    if subregular:
        tracked = np.vstack([right, rs.alpha_star.int_array()[None]])
        xs_simple = np.asarray(xs, dtype=np.int64).reshape(-1, n)
        star_pos = nr
    left_g = (left @ rs.gram_int).astype(np.float64)  # d * (left_i, .)
    nx = xs_simple.shape[0] if subregular else 1
    acc = np.zeros((nx, nl, nr, modulus), dtype=np.int64)
    # chunk size keeps the float index arrays around a few tens of MB
    chunk = max(256, (1 << 21) // max(1, nl * nr))
    for sign, imgs in weyl.orbit_chunks(rs, tracked, chunk_size=chunk, part=part, nparts=nparts,
                                        allow_huge=allow_huge):
        b = _chunk_bins(rs, None, left_g, sign, imgs, nl, nr, coeff, modulus, xs_simple, star_pos)
        if b is not None:
            acc += b
    return acc


_ENGINE_CACHE: dict = {}


def weyl_sums(rs: RootSystem, left: np.ndarray, right: np.ndarray, coeff: int, modulus: int,
              subregular: bool = False, xs: np.ndarray | None = None, workers: int | None = None,
              allow_huge: bool = False) -> np.ndarray:
    """Integer histograms H[x, i, j, r] with

        sum_r H[x,i,j,r] zeta_modulus^r = sum_w weight_x(w) zeta_modulus^(-coeff * d (left_i, w right_j)),

    where the sum runs over W (weight eps(w)) or, if ``subregular``, over the
    w with w(alpha_*) > 0 (weight eps(w) <w(alpha_*), x>).  The x vectors are
    coweights given in fundamental-coweight coordinates.
    """
    left = np.asarray(left, dtype=np.int64)
    right = np.asarray(right, dtype=np.int64)
    if xs is None:
        xs = np.ones((1, rs.rank), dtype=np.int64)
    xs = np.asarray(xs, dtype=np.int64).reshape(-1, rs.rank)
    # checked here so cache hits and worker processes honour the current cap
    weyl._check_cap(rs, None, allow_huge)
    key = (rs.name, rs.star, left.tobytes(), left.shape, right.tobytes(), right.shape, coeff, modulus,
           subregular, xs.tobytes() if subregular else b"")
    if key in _ENGINE_CACHE:
        return _ENGINE_CACHE[key]
    workers = weyl.thread_count() if workers is None else workers
    base = (rs.family, rs.rank, rs.star, left.tolist(), right.tolist(), coeff, modulus, subregular,
            xs.tolist())
    if workers <= 1:
        out = _engine_part(base + (0, 1, True))
    else:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_engine_part, [base + (k, workers, True) for k in range(workers)]))
        out = sum(parts[1:], parts[0])
    _ENGINE_CACHE[key] = out
    return out


def clear_cache():
    _ENGINE_CACHE.clear()


def _to_cyc_matrix(H: np.ndarray, modulus: int) -> list:
    return [[Cyc.from_exponents(modulus, H[i, j]) for j in range(H.shape[1])] for i in range(H.shape[0])]


def _vectors(ws: Sequence[Weight]) -> np.ndarray:
    return np.array([w.int_array() for w in ws], dtype=np.int64).reshape(len(ws), -1)


def weyl_denominator_sum(rs: RootSystem, mu: Weight, coeff: int, modulus: int) -> Cyc:
    """sum_w eps(w) zeta_modulus^(-coeff d (rho, w mu)) from the Weyl denominator product."""
    prods = rs.positive_roots_w @ rs.gram_int @ mu.int_array()  # d (alpha, mu)
    out = Cyc.rational(1, 2 * modulus)
    for v in prods:
        e = int(coeff * v)
        out = out * (zeta(2 * modulus, -e) - zeta(2 * modulus, e))
    return out.restrict(modulus)


def _k_part(rs: RootSystem, nus: list, coeff: int, modulus: int, workers=None, allow_huge=False) -> list:
    """Matrix of full Weyl sums between the vectors nu (tuples of weight coordinates)."""
    rho = rs.rho
    if len(nus) == 1 and Weight(nus[0]) == rho:
        return [[weyl_denominator_sum(rs, rho, coeff, modulus)]]
    V = _vectors([Weight(v) for v in nus])
    H = weyl_sums(rs, V, V, coeff, modulus, workers=workers, allow_huge=allow_huge)[0]
    return _to_cyc_matrix(H, modulus)


# affine vertex algebras

def K_matrix(rs: RootSystem, p: int, workers: int | None = None, allow_huge: bool = False) -> ScaledMatrix:
    """S-matrix of the simple affine vertex algebra at level p - h, indexed by dominant weights."""
    if p < rs.h_dual:
        raise ValueError(f"p={p} must be at least h={rs.h_dual}")
    kappas = enumerate_dominant(rs, p - rs.h_dual)
    nus = _vectors([k + rs.rho for k in kappas])
    d = rs.form_denominator
    H = weyl_sums(rs, nus, nus, 1, d * p, workers=workers, allow_huge=allow_huge)[0]
    core = _to_cyc_matrix(H, d * p)
    M = p ** rs.rank * rs.center_order
    return ScaledMatrix(len(rs.positive_roots), M, core, kappas, {"kind": "K", "p": p, "rs": rs})


def K_restrict(K: ScaledMatrix, mode: str) -> ScaledMatrix:
    """Principal submatrix on kappa in Q ('int') or kappa in -rho + Q ('Z')."""
    rs = K.meta["rs"]
    if mode == "int":
        idx = [i for i, k in enumerate(K.labels) if rs.in_root_lattice(k)]
    elif mode == "Z":
        idx = [i for i, k in enumerate(K.labels) if rs.in_root_lattice(k + rs.rho)]
    else:
        raise ValueError("mode must be 'int' or 'Z'")
    out = K.submatrix(idx)
    out.meta["restricted"] = mode
    return out


# subregular factor

def default_xs(rs: RootSystem, seed: int = 0) -> np.ndarray:
    """rho and one seeded random integral coweight with nonzero star coordinate."""
    rng = np.random.default_rng(seed)
    x2 = rng.integers(1, 50, size=rs.rank)
    return np.vstack([np.ones(rs.rank, dtype=np.int64), x2])


def _x_divide(rs: RootSystem, H: np.ndarray, xs: np.ndarray, modulus: int) -> list:
    """Per-x Cyc matrices divided by <alpha_*, x> = x_star."""
    out = []
    for k in range(H.shape[0]):
        xstar = int(xs[k][rs.star - 1])
        if xstar == 0:
            raise ValueError("x is orthogonal to alpha_*")
        M = _to_cyc_matrix(H[k], modulus)
        out.append([[e / xstar for e in row] for row in M])
    return out


def C_matrix(rs: RootSystem, q: int, x: Weight | None = None, etas: Sequence[Weight] | None = None,
             coeff: int = 1, workers: int | None = None, allow_huge: bool = False) -> ScaledMatrix:
    """Raw coefficient matrix over subregular coweights (optionally a subset ``etas``).

    Entry (eta, eta') is the sum over w in W^sr of
    eps(w) <w alpha_*, x>/<alpha_*, x> zeta_{dq}^(-coeff d (beta, w beta')).
    """
    etas = list(enumerate_subreg_coweights(rs, q) if etas is None else etas)
    xs = np.ones((1, rs.rank), dtype=np.int64) if x is None else _x_as_int(x)
    betas = [-apply(choose_y_eta(rs, e, q), e) for e in etas]
    B = _vectors(betas)
    d = rs.form_denominator
    H = weyl_sums(rs, B, B, coeff, d * q, subregular=True, xs=xs, workers=workers, allow_huge=allow_huge)
    core = _x_divide(rs, H, xs, d * q)[0]
    return ScaledMatrix(0, 1, core, etas, {"kind": "C", "q": q, "rs": rs})


def _x_as_int(x: Weight) -> np.ndarray:
    den = math.lcm(*(c.denominator for c in x.coords))
    return np.array([[int(c * den) for c in x.coords]], dtype=np.int64)


def C_restrict(C: ScaledMatrix) -> ScaledMatrix:
    rs = C.meta["rs"]
    return C.submatrix([i for i, e in enumerate(C.labels) if rs.in_root_lattice(e)])


# subregular W-algebras

def _subreg_parts(ld: LevelData, labels: list[SubregLabel], xs: np.ndarray, workers=None,
                  allow_huge: bool = False):
    """Exact C- and K-parts for the lattice representatives of ``labels``."""
    rs = ld.rs
    reps = [lattice_representative(ld, L) for L in labels]
    betas = sorted({r.beta.coords for r in reps})
    nus = sorted({r.nu.coords for r in reps})
    d = rs.form_denominator
    Hc = weyl_sums(rs, _vectors([Weight(b) for b in betas]), _vectors([Weight(b) for b in betas]),
                   ld.p, d * ld.q, subregular=True, xs=xs, workers=workers, allow_huge=allow_huge)
    Cs = _x_divide(rs, Hc, xs, d * ld.q)
    K = _k_part(rs, nus, ld.q, d * ld.p, workers, allow_huge)
    bi = {b: i for i, b in enumerate(betas)}
    ni = {v: i for i, v in enumerate(nus)}
    return reps, Cs, K, bi, ni


def subreg_radicand(ld: LevelData) -> int:
    return (ld.p * ld.q) ** ld.rs.rank * ld.rs.center_order


def S_subreg(ld: LevelData, labels: list[SubregLabel] | None = None, xs: np.ndarray | None = None,
             workers: int | None = None, allow_huge: bool = False) -> ScaledMatrix:
    """S-matrix from the product formula over lattice representatives.

    With several x vectors the C-parts are computed for each of them and
    returned in ``meta['C_by_x']``; the matrix itself uses the first x.
    """
    rs = ld.rs
    labels = orbit_representatives(ld) if labels is None else labels
    xs = default_xs(rs) if xs is None else np.asarray(xs, dtype=np.int64).reshape(-1, rs.rank)
    reps, Cs, K, bi, ni = _subreg_parts(ld, labels, xs, workers, allow_huge)
    C = Cs[0]
    core = []
    for r1 in reps:
        row = []
        for r2 in reps:
            v = C[bi[r1.beta.coords]][bi[r2.beta.coords]] * K[ni[r1.nu.coords]][ni[r2.nu.coords]]
            row.append(v if r1.sign * r2.sign == 1 else -v)
        core.append(row)
    N = ld.field_order
    core = [[x.embed(N) if x.N != N else x for x in row] for row in core]
    meta = {"kind": "subreg", "ld": ld, "reps": reps, "C_by_x": Cs, "xs": xs}
    return ScaledMatrix(1, subreg_radicand(ld), core, labels, meta)


def a_B(ld: LevelData, lam: tuple, lam2: tuple, workers=None) -> tuple[Cyc, int]:
    """Modular coefficient for two admissible triples (y, eta, nu).

    Returns (value, M) with the true coefficient equal to value / sqrt(M).
    """
    rs = ld.rs
    (y, eta, nu), (y2, eta2, nu2) = lam, lam2
    beta, beta2 = -apply(y, eta), -apply(y2, eta2)
    d = rs.form_denominator
    Hk = weyl_sums(rs, _vectors([nu]), _vectors([nu2]), ld.q, d * ld.p, workers=workers)[0]
    ksum = Cyc.from_exponents(d * ld.p, Hk[0, 0])
    N = ld.field_order
    # e^{-2 pi i [(nu, beta2) + (nu2, beta) + (p/q)(beta, beta2)]} as a power of zeta_{dq}
    e = (ld.q * (d * inner_product(rs, nu, beta2) + d * inner_product(rs, nu2, beta))
         + ld.p * d * inner_product(rs, beta, beta2))
    phase = zeta(d * ld.q, -int(e))
    val = phase * ksum * (y.sign * y2.sign)
    return val.embed(N) if val.N != N else val, subreg_radicand(ld)


def S_via_aB(ld: LevelData, labels: list[SubregLabel] | None = None, x: Weight | None = None,
             workers: int | None = None, allow_huge: bool = False) -> ScaledMatrix:
    """S-matrix from the sum over W^sr of a^B(lam, y o lam'), using canonical representatives.

    For fixed lam the W^sr sum only involves phases
    (q nu + p beta, y beta') / q, so it reduces to one histogram per label pair.
    """
    rs = ld.rs
    labels = orbit_representatives(ld) if labels is None else labels
    xs = np.ones((1, rs.rank), dtype=np.int64) if x is None else _x_as_int(x)
    d = rs.form_denominator
    left = _vectors([ld.q * L.nu + ld.p * L.beta for L in labels])
    right = _vectors([L.beta for L in labels])
    H = weyl_sums(rs, left, right, 1, d * ld.q, subregular=True, xs=xs, workers=workers,
                  allow_huge=allow_huge)
    Y = _x_divide(rs, H, xs, d * ld.q)[0]
    nus = sorted({L.nu.coords for L in labels})
    ni = {v: i for i, v in enumerate(nus)}
    K = _k_part(rs, nus, ld.q, d * ld.p, workers, allow_huge)
    N = ld.field_order
    core = []
    for a, L in enumerate(labels):
        row = []
        for b, L2 in enumerate(labels):
            cross = d * inner_product(rs, L2.nu, L.beta)
            v = Y[a][b] * K[ni[L.nu.coords]][ni[L2.nu.coords]] * zeta(d, -int(cross))
            v = v if L.sign * L2.sign == 1 else -v
            row.append(v.embed(N) if v.N != N else v)
        core.append(row)
    return ScaledMatrix(1, subreg_radicand(ld), core, labels, {"kind": "aB", "ld": ld})


# Galois action, Kronecker products, comparisons

def galois_scale_factor(a: int, i_power: int, radicand: int) -> tuple[int, int]:
    """phi_a(i^b / sqrt(M)) = sign * i^b' / sqrt(M); returns (b', sign)."""
    if a % 2 == 0:
        raise ValueError("the scale i^b/sqrt(M) is only transformed by odd a")
    b = (i_power * (1 if a % 4 == 1 else 3)) % 4
    r = sqrt_int(radicand)
    if math.gcd(a, r.N) != 1:
        raise ValueError(f"gcd({a}, {r.N}) != 1")
    s = 1 if r.galois(a) == r else -1
    return b, s


def galois_matrix(a: int, S: ScaledMatrix, core_only: bool = False) -> ScaledMatrix:
    N = S.order
    if math.gcd(a, N) != 1:
        raise ValueError(f"gcd({a}, {N}) != 1")
    core = [[x.galois(a % x.N) for x in row] for row in S.core]
    if core_only or (S.i_power == 0 and S.radicand == 1):
        return ScaledMatrix(S.i_power, S.radicand, core, S.labels, dict(S.meta))
    b, s = galois_scale_factor(a, S.i_power, S.radicand)
    if s < 0:
        core = [[-x for x in row] for row in core]
    return ScaledMatrix(b, S.radicand, core, S.labels, dict(S.meta))


def kron(S1: ScaledMatrix, S2: ScaledMatrix) -> ScaledMatrix:
    n1, n2 = S1.size, S2.size
    core = [[S1.core[i // n2][j // n2] * S2.core[i % n2][j % n2] for j in range(n1 * n2)]
            for i in range(n1 * n2)]
    labels = [(a, b) for a in S1.labels for b in S2.labels]
    return ScaledMatrix(S1.i_power + S2.i_power, S1.radicand * S2.radicand, core, labels)


def proportionality(core1, core2) -> Cyc | None:
    """The scalar c with core1 = c * core2 entrywise, or None."""
    c = None
    for r1, r2 in zip(core1, core2):
        for x, y in zip(r1, r2):
            if y.is_zero():
                if not x.is_zero():
                    return None
                continue
            if c is None:
                c = x / y
            elif x != c * y:
                return None
    return c


def equal_exact(S1: ScaledMatrix, S2: ScaledMatrix, perm: Sequence[int] | None = None) -> bool:
    """S1[perm[i], perm[j]] == S2[i, j] as numbers (scales included)."""
    n = S2.size
    perm = list(range(n)) if perm is None else perm
    lhs_f = zeta(4, S1.i_power) * sqrt_int(S2.radicand)
    rhs_f = zeta(4, S2.i_power) * sqrt_int(S1.radicand)
    return all(S1.core[perm[i]][perm[j]] * lhs_f == S2.core[i][j] * rhs_f
               for i in range(n) for j in range(n))


def match_permutation(S1: ScaledMatrix, S2: ScaledMatrix, tol: float = 1e-9) -> list[int] | None:
    """A permutation perm with S1[perm[i], perm[j]] = S2[i, j], verified exactly."""
    A, B = S1.to_complex(), S2.to_complex()
    n = len(B)
    if len(A) != n:
        return None
    perm: list[int] = []
    used = [False] * n

    def ok(i, a):
        if abs(A[a, a] - B[i, i]) > tol:
            return False
        return all(abs(A[a, perm[j]] - B[i, j]) <= tol for j in range(len(perm)))

    def rec(i):
        if i == n:
            return True
        for a in range(n):
            if not used[a] and ok(i, a):
                used[a] = True
                perm.append(a)
                if rec(i + 1):
                    return True
                perm.pop()
                used[a] = False
        return False

    if not rec(0):
        return None
    return perm if equal_exact(S1, S2, perm) else None


def is_symmetric(S: ScaledMatrix) -> bool:
    n = S.size
    return all(S.core[i][j] == S.core[j][i] for i in range(n) for j in range(i + 1, n))


def is_unitary(S: ScaledMatrix) -> bool:
    """core * conj(core)^T == M * I exactly."""
    n = S.size
    conj = [[x.conj() for x in row] for row in S.core]
    for i in range(n):
        for j in range(i, n):
            acc = sum((S.core[i][k] * conj[j][k] for k in range(n)), Cyc.rational(0, S.core[i][0].N))
            target = S.radicand if i == j else 0
            if acc != target:
                return False
    return True


def charge_conjugation(S: ScaledMatrix) -> list[int] | None:
    """The permutation given by S^2, or None if S^2 is not a permutation matrix."""
    n = S.size
    sgn = 1 if S.i_power % 2 == 0 else -1  # i^(2a)
    perm = []
    for i in range(n):
        hits = []
        for j in range(n):
            acc = sum((S.core[i][k] * S.core[k][j] for k in range(n)), Cyc.rational(0, S.core[i][0].N))
            v = acc * sgn / S.radicand
            r = v.to_rational()
            if r is None or r not in (0, 1):
                return None
            if r == 1:
                hits.append(j)
        if len(hits) != 1:
            return None
        perm.append(hits[0])
    return perm


def _galois_minimal(a: int, S: ScaledMatrix) -> ScaledMatrix:
    """Apply zeta -> zeta^a entrywise, each entry taken in its smallest cyclotomic field."""
    core = []
    for row in S.core:
        out = []
        for x in row:
            m = x.minimal_order()
            if math.gcd(a, m) != 1:
                raise ValueError(f"gcd({a}, {m}) != 1: entry not in a field where the conjugation acts")
            out.append(x.restrict(m).galois(a % m))
        core.append(out)
    return ScaledMatrix(S.i_power, S.radicand, core, S.labels, dict(S.meta))


def factorization(ld: LevelData, S: ScaledMatrix | None = None, labels: list[SubregLabel] | None = None,
                  with_signs: bool = True, workers=None) -> Cyc | None:
    """The scalar c with S = c * (phi_p(C) (x) phi_q(K)) on the cores, or None.

    The C factor is C_q^Z (eta in Q) when q is prime to |P/Q| and the full
    C_q otherwise, with K_p or K_p^Z to match.  With ``with_signs`` the
    C factor is conjugated by the diagonal of eps(y^(eta)), the only
    eta-dependent factor that the tensor product does not carry.
    """
    rs = ld.rs
    labels = orbit_representatives(ld) if labels is None else labels
    S = S_subreg(ld, labels, workers=workers) if S is None else S
    mode = representative_mode(ld)
    etas = [e for e in enumerate_subreg_coweights(rs, ld.q) if mode == "nu" or rs.in_root_lattice(e)]
    C = C_matrix(rs, ld.q, etas=etas, workers=workers)
    if with_signs:
        sg = [choose_y_eta(rs, e, ld.q).sign for e in etas]
        C.core = [[x if sg[i] * sg[j] == 1 else -x for j, x in enumerate(row)] for i, row in enumerate(C.core)]
    K = K_matrix(rs, ld.p, workers=workers)
    if mode == "nu":
        K = K_restrict(K, "Z")
    prod = kron(_galois_minimal(ld.p, C), _galois_minimal(ld.q, K))
    index = {(e.coords, k.coords): i for i, (e, k) in enumerate(prod.labels)}
    reps = [lattice_representative(ld, L) for L in labels]
    perm = [index[(r.eta.coords, r.kappa.coords)] for r in reps]
    if sorted(perm) != list(range(prod.size)):
        raise AssertionError("lattice representatives do not biject onto the tensor labels")
    N = ld.field_order
    sub = [[prod.core[a][b].embed(N) if prod.core[a][b].N != N else prod.core[a][b] for b in perm] for a in perm]
    return proportionality(S.core, sub)

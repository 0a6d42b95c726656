"""Simply-laced finite root systems with exact data.

Weights live in the fundamental-weight basis, roots in the simple-root basis.
Simple roots use Bourbaki numbering (1-based in the public API, 0-based
inside arrays).  For D and E the distinguished node ``star`` is the
trivalent node of the Dynkin diagram.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Weight:
    """Exact rational vector in the fundamental-weight basis."""

    coords: tuple

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Weight":
        return Weight(-a for a in self.coords)

    def __mul__(self, s) -> "Weight":
        s = Fraction(s)
        return Weight(s * a for a in self.coords)

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def int_array(self) -> np.ndarray:
        if not self.is_integral():
            raise ValueError(f"weight {self} is not integral")
        return np.array([int(c) for c in self.coords], dtype=np.int64)

    def key(self) -> tuple:
        return self.coords

    def __repr__(self):
        return "Weight(" + ", ".join(str(c) for c in self.coords) + ")"

    @staticmethod
    def zero(rank: int) -> "Weight":
        return Weight([0] * rank)

    @staticmethod
    def fundamental(rank: int, i: int) -> "Weight":
        """The fundamental weight for node ``i`` (1-based)."""
        v = [0] * rank
        v[i - 1] = 1
        return Weight(v)


def cartan_matrix(family: str, rank: int) -> np.ndarray:
    A = 2 * np.eye(rank, dtype=np.int64)

    def link(i, j):  # 1-based
        A[i - 1, j - 1] = A[j - 1, i - 1] = -1

    if family == "A":
        for i in range(1, rank):
            link(i, i + 1)
    elif family == "D":
        for i in range(1, rank - 1):
            link(i, i + 1)
        link(rank - 2, rank)
    elif family == "E":
        # chain 1-3-4-5-...-rank, with node 2 attached to node 4
        link(1, 3)
        for i in range(3, rank):
            link(i, i + 1)
        link(2, 4)
    else:
        raise ValueError(f"unsupported family {family!r}")
    return A


def _exact_inverse(A: np.ndarray) -> list[list[Fraction]]:
    n = A.shape[0]
    M = [[Fraction(int(A[i, j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def _positive_roots(A: np.ndarray) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates, sorted by height then lex."""
    n = A.shape[0]
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            rv = np.array(r)
            for i in range(n):
                # (r, alpha_i) = (A r)_i in the simply-laced normalization
                if int(A[i] @ rv) == -1:
                    s = list(r)
                    s[i] += 1
                    s = tuple(s)
                    if s not in found:
                        found.add(s)
                        nxt.append(s)
        frontier = nxt
    return sorted(found, key=lambda r: (sum(r), r))


def _simple_reflection_matrix(A: np.ndarray, i: int) -> np.ndarray:
    """Reflection in alpha_i acting on fundamental-weight coordinates (0-based i)."""
    n = A.shape[0]
    S = np.eye(n, dtype=np.int64)
    S[:, i] -= A[i]
    return S


def _longest_element(A: np.ndarray, nodes: Sequence[int]) -> np.ndarray:
    """Longest element of the parabolic subgroup generated by ``nodes`` (0-based)."""
    n = A.shape[0]
    refl = [_simple_reflection_matrix(A, i) for i in range(n)]
    w = np.eye(n, dtype=np.int64)
    x = np.zeros(n, dtype=np.int64)
    x[list(nodes)] = 1
    while True:
        v = w @ x
        i = next((i for i in nodes if v[i] > 0), None)
        if i is None:
            return w
        w = refl[i] @ w


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    star_override: int | None = None
    cartan: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fam, n = self.family, self.rank
        ok = (fam == "A" and n >= 1) or (fam == "D" and n >= 4) or (fam == "E" and n in (6, 7, 8))
        if not ok:
            raise ValueError(f"unsupported root system {fam}{n}; expected A_l (l>=1), D_l (l>=4) or E6/E7/E8")
        if self.star_override is not None:
            if fam != "A":
                raise ValueError("the distinguished node can only be overridden in type A")
            if not 1 <= self.star_override <= n:
                raise ValueError(f"star index {self.star_override} out of range 1..{n}")
        object.__setattr__(self, "cartan", cartan_matrix(fam, n))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    # basic lattice data
    @cached_property
    def gram(self) -> list[list[Fraction]]:
        """(varpi_i, varpi_j), i.e. the inverse Cartan matrix."""
        return _exact_inverse(self.cartan)

    @cached_property
    def form_denominator(self) -> int:
        return math.lcm(*(x.denominator for row in self.gram for x in row))

    @cached_property
    def gram_int(self) -> np.ndarray:
        """d * gram as an integer matrix, d = form_denominator."""
        d = self.form_denominator
        return np.array([[int(x * d) for x in row] for row in self.gram], dtype=np.int64)

    @cached_property
    def positive_roots(self) -> list[tuple[int, ...]]:
        return _positive_roots(self.cartan)

    @cached_property
    def positive_roots_w(self) -> np.ndarray:
        """Positive roots in fundamental-weight coordinates, one per row."""
        return np.array(self.positive_roots, dtype=np.int64) @ self.cartan

    @cached_property
    def theta(self) -> tuple[int, ...]:
        return self.positive_roots[-1]

    @property
    def marks(self) -> tuple[int, ...]:
        return self.theta

    @cached_property
    def h(self) -> int:
        return sum(self.theta) + 1

    @property
    def h_dual(self) -> int:
        return self.h

    @cached_property
    def J(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, a in enumerate(self.marks) if a == 1)

    @property
    def center_order(self) -> int:
        return len(self.J) + 1

    @cached_property
    def star(self) -> int:
        """1-based index of the distinguished simple root."""
        if self.star_override is not None:
            return self.star_override
        if self.family == "A":
            return (self.rank + 2) // 2
        if self.family == "D":
            return self.rank - 2
        return 4

    @cached_property
    def dim(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @cached_property
    def weyl_order(self) -> int:
        n = self.rank
        if self.family == "A":
            return math.factorial(n + 1)
        if self.family == "D":
            return 2 ** (n - 1) * math.factorial(n)
        return {6: 51840, 7: 2903040, 8: 696729600}[n]

    # distinguished weights
    @cached_property
    def rho(self) -> Weight:
        return Weight([1] * self.rank)

    @cached_property
    def theta_w(self) -> Weight:
        return self.root_to_weight(self.theta)

    @cached_property
    def x0(self) -> Weight:
        return Weight([0 if i + 1 == self.star else 1 for i in range(self.rank)])

    def alpha(self, i: int) -> Weight:
        """Simple root alpha_i (1-based) as a weight."""
        return Weight(self.cartan[i - 1])

    def varpi(self, i: int) -> Weight:
        return Weight.fundamental(self.rank, i)

    @property
    def alpha_star(self) -> Weight:
        return self.alpha(self.star)

    def root_to_weight(self, r: Sequence[int]) -> Weight:
        return Weight(np.asarray(r, dtype=np.int64) @ self.cartan)

    def weight_to_root_coords(self, lam: Weight) -> tuple[Fraction, ...]:
        """Coordinates of ``lam`` in the simple-root basis."""
        G = self.gram
        return tuple(sum(G[i][j] * lam[j] for j in range(self.rank)) for i in range(self.rank))

    def in_root_lattice(self, lam: Weight) -> bool:
        return all(c.denominator == 1 for c in self.weight_to_root_coords(lam))

    def inner(self, lam: Weight, mu: Weight) -> Fraction:
        return inner_product(self, lam, mu)

    def height(self, lam: Weight) -> Fraction:
        return sum(self.weight_to_root_coords(lam), Fraction(0))

    def pair_theta(self, lam: Weight) -> Fraction:
        """<lam, theta^vee> = sum_i a_i lam_i."""
        return sum((a * c for a, c in zip(self.marks, lam.coords)), Fraction(0))

    # diagram automorphism group
    def simple_reflection(self, i: int) -> np.ndarray:
        return _simple_reflection_matrix(self.cartan, i - 1)

    @cached_property
    def longest_element(self) -> np.ndarray:
        return _longest_element(self.cartan, range(self.rank))

    @cached_property
    def pibar(self) -> dict[int, np.ndarray]:
        """For j in J, the finite Weyl element permuting {alpha_1..alpha_l, -theta} with -theta -> alpha_j."""
        out = {}
        w0 = self.longest_element
        ext = [self.alpha(i).int_array() for i in range(1, self.rank + 1)] + [-self.theta_w.int_array()]
        ext_set = {tuple(v) for v in ext}
        for j in self.J:
            wj = _longest_element(self.cartan, [i for i in range(self.rank) if i != j - 1])
            for cand in (wj @ w0, w0 @ wj):
                imgs = {tuple(cand @ v) for v in ext}
                if imgs == ext_set and tuple(cand @ ext[-1]) == tuple(ext[j - 1]):
                    out[j] = cand
                    break
            else:  # pragma: no cover - impossible for simply-laced types
                raise RuntimeError(f"no diagram automorphism found for node {j}")
        return out

    def affine_action(self, j: int | None, lam: Weight, level) -> Weight:
        """pi_j(lam) = pibar_j(lam) + level*varpi_j; j=None is the identity."""
        if j is None:
            return lam
        M = self.pibar[j]
        v = [sum(int(M[r, c]) * lam[c] for c in range(self.rank)) for r in range(self.rank)]
        v[j - 1] += Fraction(level)
        return Weight(v)


def build_root_system(family: str, rank: int, star_index_override: int | None = None) -> RootSystem:
    return RootSystem(family.upper(), int(rank), star_index_override)


def parse_type(name: str) -> tuple[str, int]:
    """'E6' -> ('E', 6)."""
    name = name.strip().upper()
    if len(name) < 2 or not name[1:].isdigit():
        raise ValueError(f"cannot parse Lie type {name!r}")
    return name[0], int(name[1:])


def inner_product(rs: RootSystem, lam: Weight, mu: Weight) -> Fraction:
    G = rs.gram
    n = rs.rank
    return sum((lam[i] * G[i][j] * mu[j] for i in range(n) for j in range(n) if lam[i] and mu[j]),
               Fraction(0))


def wtilde_plus(rs: RootSystem) -> list[tuple[int | None, np.ndarray, Weight]]:
    """Elements (j, pibar_j, varpi_j) of the extended affine group modulo the affine Weyl group.

    The identity comes first as (None, I, 0).
    """
    out = [(None, np.eye(rs.rank, dtype=np.int64), Weight.zero(rs.rank))]
    out += [(j, rs.pibar[j], rs.varpi(j)) for j in rs.J]
    return out


def shift_to_root_lattice(rs: RootSystem, mu: Weight, level: int):
    """The unique element j of the diagram group with pi_j(mu) in Q, and the image."""
    if math.gcd(level, rs.center_order) != 1:
        raise ValueError(f"level {level} is not coprime to |P/Q| = {rs.center_order}")
    hits = [(j, rs.affine_action(j, mu, level)) for j, _, _ in wtilde_plus(rs)]
    hits = [(j, nu) for j, nu in hits if rs.in_root_lattice(nu)]
    if len(hits) != 1:  # pragma: no cover - excluded by coprimality
        raise RuntimeError(f"orbit of {mu} meets Q in {len(hits)} points")
    return hits[0]


def load_denominator_table() -> dict:
    """Subregular denominators for every type, keyed by family (with closed forms in the rank)."""
    with resources.files("wsubreg.data").joinpath("denominators.json").open() as fh:
        return json.load(fh)


def subregular_denominators(family: str, rank: int) -> list[int]:
    table = load_denominator_table()["families"]
    entry = table[family.upper()]
    if "fixed" in entry:
        key = str(rank)
        if key not in entry["fixed"]:
            return []
        return list(entry["fixed"][key])
    n = rank
    if n < entry.get("min_rank", 1):
        return []
    return [int(eval(expr, {"__builtins__": {}}, {"n": n})) for expr in entry["q"]]


def dual_coxeter(family: str, rank: int) -> int:
    entry = load_denominator_table()["families"][family.upper()]
    if "fixed" in entry:
        return entry["h_dual"][str(rank)]
    return int(eval(entry["h_dual"], {"__builtins__": {}}, {"n": rank}))

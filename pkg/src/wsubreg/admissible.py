"""Labels of irreducible modules for subregular and type-A exceptional W-algebras.

A label is an orbit of pairs (kappa, eta) under the diagram group, where
kappa is a dominant weight of level p - h and eta a coweight from the
relevant finite set.  The canonical representative is the lexicographic
minimum of (eta, kappa) over the orbit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterator


from .rootsystem import RootSystem, Weight, inner_product, subregular_denominators, wtilde_plus
from .weyl import WeylElement, apply, element_mapping_root, identity


@dataclass(frozen=True)
class LevelData:
    """Admissible level k = -h + p/q together with the nilpotent class."""

    rs: RootSystem
    p: int
    q: int
    mode: str = "subreg"

    def __post_init__(self):
        rs, p, q = self.rs, self.p, self.q
        if self.mode not in ("subreg", "typeA"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if math.gcd(p, q) != 1:
            raise ValueError(f"p={p} and q={q} are not coprime")
        if p < rs.h_dual:
            raise ValueError(f"p={p} must be at least h={rs.h_dual}")
        if self.mode == "subreg":
            legal = subregular_denominators(rs.family, rs.rank)
            if q not in legal:
                raise ValueError(f"q={q} is not a subregular denominator for {rs.name}; legal values: {legal}")
        else:
            if rs.family != "A":
                raise ValueError("type-A mode needs a root system of type A")
            if not 1 <= q <= rs.rank + 1:
                raise ValueError(f"type-A mode needs q <= n = {rs.rank + 1}")

    @property
    def t(self) -> Fraction:
        """k + h."""
        return Fraction(self.p, self.q)

    @property
    def k(self) -> Fraction:
        return self.t - self.rs.h_dual

    @property
    def level(self) -> int:
        return self.p - self.rs.h_dual

    @cached_property
    def x0(self) -> Weight:
        if self.mode == "subreg":
            return self.rs.x0
        return typeA_x0(self.rs, self.q)

    @property
    def field_order(self) -> int:
        return self.rs.form_denominator * self.p * self.q


@dataclass(frozen=True)
class SubregLabel:
    kappa: Weight
    eta: Weight
    y_eta: WeylElement = field(compare=False, repr=False)
    beta: Weight = field(compare=False)
    sign: int = field(compare=False)
    h: Fraction = field(compare=False)
    orbit: tuple = field(compare=False, repr=False, default=())

    @property
    def nu(self) -> Weight:
        return self.kappa + Weight([1] * len(self.kappa))

    def to_json(self) -> dict:
        s = lambda w: [str(c) for c in w.coords]
        return {"kappa": s(self.kappa), "eta": s(self.eta), "beta": s(self.beta),
                "sign": self.sign, "h": str(self.h)}


def _bounded_vectors(weights, budget: int) -> Iterator[list[int]]:
    """Nonnegative integer vectors e with sum(weights[i]*e[i]) <= budget, lexicographic."""
    n = len(weights)
    cur = [0] * n

    def rec(i, left):
        if i == n:
            yield list(cur)
            return
        for v in range(left // weights[i] + 1):
            cur[i] = v
            yield from rec(i + 1, left - v * weights[i])
        cur[i] = 0

    yield from rec(0, budget)


def enumerate_dominant(rs: RootSystem, m: int) -> list[Weight]:
    """Dominant integral weights with <lam, theta> <= m, in lexicographic order."""
    if m < 0:
        return []
    return [Weight(v) for v in _bounded_vectors(rs.marks, m)]


def enumerate_subreg_coweights(rs: RootSystem, q: int) -> list[Weight]:
    """Dominant coweights whose affine labels (q - <eta,theta>, eta_1, ...) have exactly one zero."""
    if q not in subregular_denominators(rs.family, rs.rank):
        raise ValueError(f"q={q} is not a subregular denominator for {rs.name}")
    return _one_zero_coweights(rs, q)


def _one_zero_coweights(rs: RootSystem, q: int) -> list[Weight]:
    marks = rs.marks
    n = rs.rank
    out = []
    for z in range(n + 1):  # index of the vanishing affine label; 0 is the affine node
        base = [0 if i + 1 == z else 1 for i in range(n)]
        used = sum(a * b for a, b in zip(marks, base))
        others = [i for i in range(n) if i + 1 != z]
        ws = [marks[i] for i in others]
        if z == 0:
            slack = q - used
            if slack < 0:
                continue
            for e in _bounded_vectors(ws, slack):
                if sum(a * b for a, b in zip(ws, e)) != slack:
                    continue
                v = list(base)
                for i, ei in zip(others, e):
                    v[i] += ei
                out.append(Weight(v))
        else:
            slack = q - 1 - used  # affine label must stay >= 1
            if slack < 0:
                continue
            for e in _bounded_vectors(ws, slack):
                v = list(base)
                for i, ei in zip(others, e):
                    v[i] += ei
                out.append(Weight(v))
    return sorted(out, key=lambda w: w.coords)


def typeA_x0(rs: RootSystem, q: int) -> Weight:
    """Grading element of the left-justified Young diagram for the orbit O_q in sl_n."""
    n = rs.rank + 1
    r, s = divmod(n, q)
    comp = [r + 1] * s + [r] * (q - s)
    return _composition_weight(rs.rank, comp)


def _composition_weight(rank: int, comp) -> Weight:
    v = [0] * rank
    acc = 0
    for m in comp[:-1]:
        acc += m
        v[acc - 1] += 1
    return Weight(v)


def enumerate_typeA_coweights(rs: RootSystem, q: int) -> list[Weight]:
    """Coweights sum_j varpi_(m_1+...+m_j) over distinct rearrangements (m_a) of the orbit partition."""
    if rs.family != "A":
        raise ValueError("type-A coweights need a root system of type A")
    n = rs.rank + 1
    if not 1 <= q <= n:
        raise ValueError(f"need 1 <= q <= {n}")
    r, s = divmod(n, q)
    base = [r + 1] * s + [r] * (q - s)
    if r == 0:
        raise ValueError("q > n has no standard Levi orbit")
    comps = sorted(set(permutations(base)))
    return sorted((_composition_weight(rs.rank, c) for c in comps), key=lambda w: w.coords)


def integral_roots(rs: RootSystem, lam: Weight) -> set[tuple[int, ...]]:
    """Roots alpha (simple-root coordinates, both signs) with <lam + rho, alpha> integral."""
    out = set()
    for r in rs.positive_roots:
        val = sum((c * (x + 1) for c, x in zip(r, lam.coords)), Fraction(0))
        if val.denominator == 1:
            out.add(tuple(r))
            out.add(tuple(-c for c in r))
    return out


def choose_y_eta(rs: RootSystem, eta: Weight, q: int | None = None) -> WeylElement:
    """Weyl element y with <alpha_*, y(nu - (p/q) eta)> a positive integer for every nu.

    If a finite label of eta vanishes at node k we map alpha_k to alpha_*.
    Otherwise only the affine label vanishes (eta = rho) and we map -theta to
    alpha_*, because <theta, nu - (p/q) rho> = <theta, nu> - p is negative.
    """
    zeros = [i + 1 for i, c in enumerate(eta.coords) if c == 0]
    if len(zeros) > 1:
        raise ValueError(f"{eta} has more than one vanishing label")
    src = rs.alpha(zeros[0]) if zeros else -rs.theta_w
    return element_mapping_root(rs, src, rs.alpha_star)


def conformal_dimension(ld: LevelData, lam: Weight) -> Fraction:
    """Lowest L_0 eigenvalue of the module attached to the finite weight lam."""
    rs, t, x0 = ld.rs, ld.t, ld.x0
    rho = rs.rho
    lr = lam + rho
    return ((inner_product(rs, lr, lr) - inner_product(rs, rho, rho)) / (2 * t)
            - t / 2 * inner_product(rs, x0, x0) + inner_product(rs, x0, rho))


def label_weight(ld: LevelData, kappa: Weight, eta: Weight) -> Weight:
    """kappa - (p/q) eta."""
    return kappa - ld.t * eta


def _act(ld: LevelData, j, kappa: Weight, eta: Weight) -> tuple[Weight, Weight]:
    rs = ld.rs
    return rs.affine_action(j, kappa, ld.level), rs.affine_action(j, eta, ld.q)


def coweights(ld: LevelData) -> list[Weight]:
    if ld.mode == "subreg":
        return enumerate_subreg_coweights(ld.rs, ld.q)
    return enumerate_typeA_coweights(ld.rs, ld.q)


def _orbits(ld: LevelData):
    rs = ld.rs
    group = [j for j, _, _ in wtilde_plus(rs)]
    kappas = enumerate_dominant(rs, ld.level)
    etas = coweights(ld)
    seen = set()
    out = []
    for eta in etas:
        for kappa in kappas:
            key = (eta.coords, kappa.coords)
            if key in seen:
                continue
            members = []
            for j in group:
                k2, e2 = _act(ld, j, kappa, eta)
                members.append((k2, e2))
                seen.add((e2.coords, k2.coords))
            out.append(members)
    return out, len(kappas), len(etas)


def _make_label(ld: LevelData, kappa: Weight, eta: Weight, members) -> SubregLabel:
    rs = ld.rs
    if ld.mode == "subreg":
        y = choose_y_eta(rs, eta, ld.q)
    else:
        y = identity(rs)
    beta = -apply(y, eta)
    h = conformal_dimension(ld, label_weight(ld, kappa, eta))
    uniq = tuple(sorted({(e.coords, k.coords) for k, e in members}))
    return SubregLabel(kappa, eta, y, beta, y.sign, h, uniq)


def orbit_representatives(ld: LevelData) -> list[SubregLabel]:
    """One canonical label per orbit, sorted by (eta, kappa)."""
    orbits, _, _ = _orbits(ld)
    labels = []
    for members in orbits:
        kappa, eta = min(members, key=lambda ke: (ke[1].coords, ke[0].coords))
        labels.append(_make_label(ld, kappa, eta, members))
    labels.sort(key=lambda L: (L.eta.coords, L.kappa.coords))
    return labels


def representative_mode(ld: LevelData) -> str:
    """'eta' if eta can be taken in Q (q prime to |P/Q|), otherwise 'nu' (kappa + rho in Q)."""
    if math.gcd(ld.q, ld.rs.center_order) == 1:
        return "eta"
    if math.gcd(ld.p, ld.rs.center_order) == 1:
        return "nu"
    raise AssertionError("p and q cannot both share a factor with |P/Q|")


def lattice_representative(ld: LevelData, label: SubregLabel) -> SubregLabel:
    """The orbit member used by the product formula for S, with its own y, beta and sign."""
    rs = ld.rs
    mode = representative_mode(ld)
    hits = []
    for eta_c, kappa_c in label.orbit:
        eta, kappa = Weight(eta_c), Weight(kappa_c)
        test = eta if mode == "eta" else kappa + rs.rho
        if rs.in_root_lattice(test):
            hits.append((kappa, eta))
    if len(hits) != 1:
        raise AssertionError(f"orbit of {label} meets the lattice condition {len(hits)} times")
    kappa, eta = hits[0]
    return _make_label(ld, kappa, eta, ())


def vacuum_label(ld: LevelData, labels: list[SubregLabel] | None = None) -> SubregLabel:
    labels = orbit_representatives(ld) if labels is None else labels
    key = (ld.x0.coords, Weight.zero(ld.rs.rank).coords)
    for L in labels:
        if key in L.orbit:
            return L
    raise AssertionError("vacuum orbit not found")


def vacuum_index(labels: list[SubregLabel], ld: LevelData) -> int:
    v = vacuum_label(ld, labels)
    return labels.index(v)


def admissible_count(ld: LevelData) -> int:
    return ld.q ** ld.rs.rank * len(enumerate_dominant(ld.rs, ld.level))


def labels_json(labels: list[SubregLabel]) -> str:
    return json.dumps([L.to_json() for L in labels], indent=1)

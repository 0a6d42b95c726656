"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is a rational polynomial in zeta_N reduced modulo the N-th
cyclotomic polynomial, so two elements of the same field are equal exactly
when their coefficient vectors agree.  Polynomial arithmetic is delegated to
python-flint.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from flint import fmpq, fmpq_poly, fmpz_poly
from sympy import factorint, legendre_symbol


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> fmpq_poly:
    return fmpq_poly(fmpz_poly.cyclotomic(N))


@lru_cache(maxsize=None)
def _roots_of_unity(N: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(N) / N)


def _to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


class Cyc:
    """Element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("N", "poly")
    __hash__ = None

    def __init__(self, N: int, poly: fmpq_poly, reduced: bool = False):
        self.N = int(N)
        self.poly = poly if reduced else poly % cyclotomic_poly(self.N)

    # construction
    @classmethod
    def rational(cls, x, N: int = 1) -> "Cyc":
        return cls(N, fmpq_poly([_to_fmpq(x)]), reduced=True)

    @classmethod
    def from_exponents(cls, N: int, counts: Sequence) -> "Cyc":
        """sum_k counts[k] * zeta_N^k for a length-N integer (or rational) vector."""
        coeffs = [int(c) if isinstance(c, (int, np.integer)) else _to_fmpq(c) for c in counts]
        return cls(N, fmpq_poly(coeffs))

    @property
    def coeffs(self) -> list[Fraction]:
        """Coefficients of 1, zeta, ..., zeta^(phi(N)-1)."""
        phi = cyclotomic_poly(self.N).degree()
        cs = [Fraction(int(c.p), int(c.q)) for c in self.poly.coeffs()]
        return cs + [Fraction(0)] * (phi - len(cs))

    # coercion
    def _coerce(self, other) -> tuple["Cyc", "Cyc"]:
        if not isinstance(other, Cyc):
            return self, Cyc.rational(other, self.N)
        if other.N == self.N:
            return self, other
        L = math.lcm(self.N, other.N)
        return self.embed(L), other.embed(L)

    def embed(self, M: int) -> "Cyc":
        """Image in Q(zeta_M) for a multiple M of N, using zeta_N = zeta_M^(M/N)."""
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"cannot embed Q(zeta_{self.N}) into Q(zeta_{M})")
        step = M // self.N
        cs = self.poly.coeffs()
        out = [fmpq(0)] * (step * max(len(cs) - 1, 0) + 1)
        for k, c in enumerate(cs):
            out[k * step] = c
        return Cyc(M, fmpq_poly(out))

    # ring operations
    def __add__(self, other):
        a, b = self._coerce(other)
        return Cyc(a.N, a.poly + b.poly, reduced=True)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return Cyc(a.N, a.poly - b.poly, reduced=True)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Cyc(self.N, -self.poly, reduced=True)

    def __mul__(self, other):
        if not isinstance(other, Cyc):
            return Cyc(self.N, self.poly * _to_fmpq(other), reduced=True)
        a, b = self._coerce(other)
        return Cyc(a.N, a.poly * b.poly)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Cyc):
            return Cyc(self.N, self.poly / _to_fmpq(other), reduced=True)
        a, b = self._coerce(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = Cyc.rational(1, self.N), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        g, s, _ = self.poly.xgcd(cyclotomic_poly(self.N))
        # g is a nonzero constant because Phi_N is irreducible
        return Cyc(self.N, s / g.coeffs()[0])

    def __eq__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return a.poly == b.poly

    def is_zero(self) -> bool:
        return self.poly.degree() < 0

    # Galois group
    def galois(self, a: int) -> "Cyc":
        """The automorphism zeta_N -> zeta_N^a."""
        N = self.N
        if math.gcd(a, N) != 1:
            raise ValueError(f"gcd({a}, {N}) != 1: not a Galois automorphism of Q(zeta_{N})")
        a %= N
        if a == 1:
            return self
        out = [fmpq(0)] * N
        for k, c in enumerate(self.poly.coeffs()):
            out[(k * a) % N] += c
        return Cyc(N, fmpq_poly(out))

    def conj(self) -> "Cyc":
        return self.galois(-1)

    # inspection
    def to_complex(self) -> complex:
        cs = self.poly.coeffs()
        if not cs:
            return 0j
        vals = np.array([float(Fraction(int(c.p), int(c.q))) for c in cs])
        return complex(np.dot(vals, _roots_of_unity(self.N)[: len(cs)]))

    def to_rational(self) -> Fraction | None:
        deg = self.poly.degree()
        if deg < 0:
            return Fraction(0)
        if deg > 0:
            return None
        c = self.poly.coeffs()[0]
        return Fraction(int(c.p), int(c.q))

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    def minimal_order(self) -> int:
        """Smallest M | N with the element in Q(zeta_M) (checked by Galois invariance)."""
        N = self.N
        for M in sorted(m for m in range(1, N + 1) if N % m == 0):
            if M == N:
                return N
            # x lies in Q(zeta_M) iff fixed by every a = 1 mod M coprime to N
            fixed = all(self.galois(a) == self for a in range(1, N, M) if math.gcd(a, N) == 1)
            if fixed:
                return M
        return N

    def restrict(self, M: int) -> "Cyc":
        """Rewrite in Q(zeta_M) (requires the element to lie there)."""
        if M == self.N:
            return self
        # evaluate the embedding of the generic element of Q(zeta_M) and solve
        phiM = cyclotomic_poly(M).degree()
        basis = [Cyc(M, fmpq_poly([0] * k + [1])).embed(self.N) for k in range(phiM)]
        return _solve_in_basis(self, basis, M)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"Cyc[{self.N}](" + (" + ".join(terms) or "0") + ")"


def _solve_in_basis(x: Cyc, basis: list[Cyc], M: int) -> Cyc:
    import sympy

    phiN = cyclotomic_poly(x.N).degree()
    cols = [b.coeffs for b in basis]
    A = sympy.Matrix(phiN, len(basis), lambda i, j: cols[j][i])
    rhs = sympy.Matrix(phiN, 1, x.coeffs)
    sol, params = A.gauss_jordan_solve(rhs)
    if params.shape[0]:
        raise ValueError("degenerate basis")
    vals = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in sol]
    out = Cyc(M, fmpq_poly([_to_fmpq(v) for v in vals]))
    if out.embed(x.N) != x:
        raise ValueError(f"element does not lie in Q(zeta_{M})")
    return out


def zeta(N: int, k: int = 1) -> Cyc:
    k %= N
    return Cyc(N, fmpq_poly([0] * k + [1]))


def galois(a: int, x: Cyc) -> Cyc:
    return x.galois(a)


def invert(x: Cyc) -> Cyc:
    return x.inverse()


def to_complex(x: Cyc) -> complex:
    return x.to_complex()


def to_rational(x: Cyc) -> Fraction | None:
    return x.to_rational()


def cyc_sum(xs: Iterable[Cyc], N: int) -> Cyc:
    poly = fmpq_poly([])
    for x in xs:
        poly += x.embed(N).poly if x.N != N else x.poly
    return Cyc(N, poly, reduced=True)


def sqrt_int(M: int) -> Cyc:
    """Positive square root of a positive integer as a cyclotomic number (via Gauss sums)."""
    if M <= 0:
        raise ValueError("radicand must be positive")
    out = Cyc.rational(1)
    for p, e in factorint(M).items():
        out = out * (p ** (e // 2))
        if e % 2 == 0:
            continue
        if p == 2:
            r = zeta(8, 1) + zeta(8, 7)
        else:
            g = sum((zeta(p, k) * legendre_symbol(k, p) for k in range(1, p)), Cyc.rational(0, p))
            r = g if p % 4 == 1 else g * zeta(4, 3)
        out = out * r
    if out.to_complex().real < 0:  # pragma: no cover - Gauss sum sign is fixed
        out = -out
    return out

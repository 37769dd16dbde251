"""Monogenic spheroidal polynomials X[n, m, +/-] and the ambigenic basis Y.

X[n, m] = D U[n+1, m] with D = d0 - e1 d1 - e2 d2.  Written in terms of the
harmonic basis V this is

    e0 = V[n,m,+/-]
    e1 = 1/2 ((n+m+1) V[n,m-1,+/-] - V[n,m+1,+/-]/(n+m+2))
    e2 = -/+ 1/2 ((n+m+1) V[n,m-1,-/+] + V[n,m+1,-/+]/(n+m+2))

with V beyond its index range read as zero.  The X are annihilated by
Dbar = d0 + e1 d1 + e2 d2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .exactcore import QPoly, ScalarPoly, SpheroidShape, fueter_apply
from .harmonics import U_poly, V_poly, normalize_parity
from .integrate import PiRational, scalar_inner
from .legendre import I_symbolic, double_factorial


@dataclass(frozen=True)
class MonogenicIndex:
    n: int
    m: int
    parity: str = "+"

    def __post_init__(self):
        object.__setattr__(self, "parity", normalize_parity(self.parity))
        if self.n < 0 or self.m < 0 or self.m > self.n + 1:
            raise ValueError(f"monogenic index requires 0 <= m <= n+1, got ({self.n}, {self.m})")
        if self.parity == "-" and self.m == 0:
            raise ValueError("parity '-' needs m >= 1")

    @property
    def is_constant(self) -> bool:
        """m = n+1: independent of x0, and monogenic together with its conjugate."""
        return self.m == self.n + 1

    @property
    def label(self) -> str:
        return f"{self.n},{self.m},{self.parity}"


@dataclass(frozen=True)
class MonogenicBasisElement:
    index: MonogenicIndex
    qpoly: QPoly

    def to_json(self) -> dict:
        return {
            "family": "X",
            "n": self.index.n,
            "m": self.index.m,
            "parity": self.index.parity,
            "poly": self.qpoly.to_json(),
        }


def monogenic_indices(nmax: int) -> List[MonogenicIndex]:
    return [
        MonogenicIndex(n, m, p)
        for n in range(nmax + 1)
        for m in range(n + 2)
        for p in ("+", "-")
        if not (p == "-" and m == 0)
    ]


@lru_cache(maxsize=None)
def X_poly(n: int, m: int, parity: str = "+") -> QPoly:
    idx = MonogenicIndex(n, m, parity)
    n, m, parity = idx.n, idx.m, idx.parity
    other = "-" if parity == "+" else "+"
    sign = 1 if parity == "+" else -1
    inv = Fraction(1, n + m + 2)
    e0 = V_poly(n, m, parity)
    e1 = (V_poly(n, m - 1, parity).scale(n + m + 1) - V_poly(n, m + 1, parity).scale(inv)).scale(Fraction(1, 2))
    e2 = (V_poly(n, m - 1, other).scale(n + m + 1) + V_poly(n, m + 1, other).scale(inv)).scale(Fraction(-sign, 2))
    return QPoly(e0, e1, e2)


def build_X(index: MonogenicIndex) -> MonogenicBasisElement:
    return MonogenicBasisElement(index, X_poly(index.n, index.m, index.parity))


def build_X_via_operator(index: MonogenicIndex) -> MonogenicBasisElement:
    q = fueter_apply(QPoly.scalar(U_poly(index.n + 1, index.m, index.parity)), "D")
    if not q.is_r3():
        raise ArithmeticError("D U has a nonzero e3 component")
    return MonogenicBasisElement(index, q)


# ---------------------------------------------------------------------------
# norms


def _I(n: int, m: int):
    if m > n or (m == -1 and n == 0):
        return None
    return I_symbolic(n, m)


def X_norm_symbolic(n: int, m: int):
    """||X[n, m]||^2 / pi as a polynomial in tau (same for both parities)."""
    MonogenicIndex(n, m, "+")
    f = math.factorial
    d = 1 if m == 0 else 0
    terms = []
    if n + m:
        terms.append(((n + 2) * (n + m) * (n + m + 1) * f(n - m + 3) * f(n + m + 2), _I(n, m - 1)))
    if d:
        terms.append((2 * (n + m + 2) * f(n + 1) * f(n + 2), _I(n, 1)))
    c3 = (n + 2) * f(n - m + 1) * f(n + m + 2)
    terms.append((c3, _I(n, m + 1)))
    terms.append((c3 * 2 * (n - m + 2) * (n + m + 1) * (1 + d), _I(n, m)))
    pre = Fraction(1, (n + 2) * (n + m + 2) * double_factorial(2 * n + 1) * double_factorial(2 * n + 3))
    total = None
    for coeff, poly in terms:
        if poly is None:
            continue
        piece = poly * (pre * coeff)
        total = piece if total is None else total + piece
    return total


def X_norm_sq(index: MonogenicIndex, shape: SpheroidShape) -> PiRational:
    return PiRational(X_norm_symbolic(index.n, index.m)(shape.tau))


def _sc_vec_norms(q: QPoly, shape: SpheroidShape) -> Tuple[Fraction, Fraction]:
    sc = scalar_inner(q.e0, q.e0, shape)
    vec = scalar_inner(q.e1, q.e1, shape) + scalar_inner(q.e2, q.e2, shape)
    return sc, vec


@lru_cache(maxsize=4096)
def _c_cached(n: int, m: int, parity: str, tau: Fraction) -> Fraction:
    if m == n + 1:
        return Fraction(0)
    sc, vec = _sc_vec_norms(X_poly(n, m, parity), SpheroidShape(tau))
    return (sc - vec) / (sc + vec)


def c_coeff(n: int, m: int, shape: SpheroidShape, parity: str = "+") -> Fraction:
    """<X, conj X> / ||X||^2, by exact integration; 0 for monogenic constants."""
    idx = MonogenicIndex(n, m, parity)
    return _c_cached(idx.n, idx.m, idx.parity, shape.tau)


def conj_inner(n: int, m: int, parity: str, shape: SpheroidShape) -> PiRational:
    """<X, conj X> = ||Sc X||^2 - ||Vec X||^2."""
    sc, vec = _sc_vec_norms(X_poly(n, m, parity), shape)
    return PiRational(sc - vec)


def sc_vec_split(q: QPoly) -> Tuple[ScalarPoly, QPoly]:
    if not q.is_r3():
        raise ValueError("expected an R^3-valued polynomial")
    return q.e0, QPoly(e1=q.e1, e2=q.e2)


# ---------------------------------------------------------------------------
# ambigenic basis


@dataclass(frozen=True)
class AmbigenicBasisElement:
    """Y[kind][n, m]; kinds ++ and -+ are X itself, +- and -- are conj X - c X."""

    kind: str
    n: int
    m: int
    qpoly: QPoly
    c_used: Fraction = Fraction(0)
    x: Optional[QPoly] = None  # the X this element was built from, at the same shape

    @property
    def label(self) -> str:
        return f"Y{self.kind}[{self.n},{self.m}]"

    @property
    def x_parity(self) -> str:
        return self.kind[0]

    def split(self) -> Tuple[QPoly, QPoly]:
        """(monogenic part, antimonogenic part), monogenic constants counted as monogenic."""
        if self.kind[1] == "+" or self.m == self.n + 1:
            return self.qpoly, QPoly()
        return self.x.scale(-self.c_used), self.x.conj()

    def to_json(self) -> dict:
        return {
            "family": "Y",
            "kind": self.kind,
            "n": self.n,
            "m": self.m,
            "c": f"{self.c_used.numerator}/{self.c_used.denominator}",
            "poly": self.qpoly.to_json(),
        }


def _y_minus(n: int, m: int, parity: str, shape: SpheroidShape) -> AmbigenicBasisElement:
    x = X_poly(n, m, parity).substitute_tau(shape)
    c = c_coeff(n, m, shape, parity)
    return AmbigenicBasisElement(parity + "-", n, m, x.conj() - x.scale(c), c, x)


def ambigenic_basis(nmax: int, shape: SpheroidShape) -> List[AmbigenicBasisElement]:
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    out = [
        AmbigenicBasisElement("++", 0, 0, X_poly(0, 0, "+")),
        AmbigenicBasisElement("++", 0, 1, X_poly(0, 1, "+")),
        AmbigenicBasisElement("-+", 0, 1, X_poly(0, 1, "-")),
    ]
    for k in range(1, nmax + 1):
        for m in range(k + 2):
            out.append(AmbigenicBasisElement("++", k, m, X_poly(k, m, "+").substitute_tau(shape)))
        for m in range(1, k + 1):
            out.append(AmbigenicBasisElement("-+", k, m, X_poly(k, m, "-").substitute_tau(shape)))
        for m in range(k + 1):
            out.append(_y_minus(k, m, "+", shape))
        for m in range(1, k + 2):
            out.append(_y_minus(k, m, "-", shape))
    return out


def ambigenic_count(nmax: int) -> int:
    return 2 * nmax * (nmax + 3) + 3

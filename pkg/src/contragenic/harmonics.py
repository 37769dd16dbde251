"""Spheroidal harmonic polynomials U and the orthogonal harmonic basis V.

U[n, m, +/-] = gamma(n, m) mu^n P_n^m(cos u) P_n^m(cosh v) {cos, sin}(m phi).

The Cartesian form is obtained without square roots.  With t1 = cos u and
t2 = cosh v we have t1 t2 = x0/mu and t1^2 + t2^2 = 1 + |x|^2/mu^2, the two
half-power branch factors multiply to (-1)^m (rho/mu)^m, and the product of
the two cores is symmetric in (t1, t2).  Each symmetric pair
t1^i t2^j + t1^j t2^i reduces to x0^j * Pi_{i-j} * mu^(-i) with the scaled
power sums

    Pi_0 = 2,  Pi_2 = tau + |x|^2,  Pi_2l = Pi_2 Pi_(2l-2) - tau x0^2 Pi_(2l-4),

so every power of mu that survives is an even, non-negative one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .exactcore import ONE, TAU, X0, X1, X2, ZERO, ScalarPoly, SpheroidShape, UniPoly
from .integrate import PiRational
from .legendre import I_symbolic, double_factorial, gamma_coeff, legendre_core

PARITIES = ("+", "-")


def normalize_parity(parity: str) -> str:
    if parity in ("+", "plus"):
        return "+"
    if parity in ("-", "−", "minus"):
        return "-"
    raise ValueError(f"parity must be '+' or '-', got {parity!r}")


@dataclass(frozen=True)
class HarmonicIndex:
    n: int
    m: int
    parity: str = "+"

    def __post_init__(self):
        object.__setattr__(self, "parity", normalize_parity(self.parity))
        if self.n < 0 or self.m < 0 or self.m > self.n:
            raise ValueError(f"harmonic index requires 0 <= m <= n, got ({self.n}, {self.m})")
        if self.parity == "-" and self.m == 0:
            raise ValueError("parity '-' with m = 0 is identically zero and excluded")

    @property
    def label(self) -> str:
        return f"{self.n},{self.m},{self.parity}"


@dataclass(frozen=True)
class HarmonicBasisElement:
    index: HarmonicIndex
    poly: ScalarPoly
    family: str

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.index.n,
            "m": self.index.m,
            "parity": self.index.parity,
            "poly": self.poly.to_json(),
        }


def harmonic_indices(nmax: int) -> List[HarmonicIndex]:
    return [
        HarmonicIndex(n, m, p)
        for n in range(nmax + 1)
        for m in range(n + 1)
        for p in PARITIES
        if not (p == "-" and m == 0)
    ]


# ---------------------------------------------------------------------------
# building blocks


@lru_cache(maxsize=None)
def _scaled_power_sum(l2: int) -> ScalarPoly:
    """mu^(2l) (t1^(2l) + t2^(2l)) as a polynomial in x and tau."""
    if l2 == 0:
        return ScalarPoly.constant(2)
    p = TAU + X0 * X0 + X1 * X1 + X2 * X2
    if l2 == 2:
        return p
    return p * _scaled_power_sum(l2 - 2) - TAU * X0 * X0 * _scaled_power_sum(l2 - 4)


@lru_cache(maxsize=None)
def _x0_power(j: int) -> ScalarPoly:
    return X0**j


@lru_cache(maxsize=None)
def _tau_power(k: int) -> ScalarPoly:
    return TAU**k


def symmetric_core_product(core) -> ScalarPoly:
    """mu^k c(t1) c(t2) in Cartesian form, k = deg c, c of parity (-1)^k."""
    k = core.degree
    out = ZERO
    cs = core.coeffs
    for i in range(k, -1, -1):
        ci = cs[i]
        if not ci:
            continue
        if (k - i) % 2:
            raise ArithmeticError("core does not have definite parity")
        tau_part = _tau_power((k - i) // 2)
        out = out + (_x0_power(i) * tau_part).scale(ci * ci)
        for j in range(i - 1, -1, -1):
            cj = cs[j]
            if cj:
                out = out + (_x0_power(j) * _scaled_power_sum(i - j) * tau_part).scale(ci * cj)
    return out


@lru_cache(maxsize=None)
def angular(m: int) -> Tuple[ScalarPoly, ScalarPoly]:
    """(Re, Im) of (x1 + i x2)^m = rho^m (cos m phi, sin m phi)."""
    re, im = ONE, ZERO
    for _ in range(m):
        re, im = re * X1 - im * X2, re * X2 + im * X1
    return re, im


def _angular_factor(m: int, parity: str) -> ScalarPoly:
    if m >= 0:
        re, im = angular(m)
        return re if parity == "+" else im
    re, im = angular(-m)
    return re if parity == "+" else -im


@lru_cache(maxsize=None)
def _U_raw(n: int, m: int, parity: str) -> ScalarPoly:
    """U for 0 <= m <= n, or m = -1 with n >= 1; no index validation."""
    core = legendre_core(n, m)
    sign = 1 if m == -1 else (-1) ** m
    g = gamma_coeff(n, m) * sign
    return (symmetric_core_product(core) * _angular_factor(m, parity)).scale(g)


# ---------------------------------------------------------------------------
# public constructors


def build_U(n: int, m: int, parity: str = "+") -> HarmonicBasisElement:
    idx = HarmonicIndex(n, m, parity)
    return HarmonicBasisElement(idx, _U_raw(idx.n, idx.m, idx.parity), "U")


def build_V(n: int, m: int, parity: str = "+") -> HarmonicBasisElement:
    idx = HarmonicIndex(n, m, parity)
    return HarmonicBasisElement(idx, V_poly(idx.n, idx.m, idx.parity), "V")


@lru_cache(maxsize=None)
def V_poly(n: int, m: int, parity: str) -> ScalarPoly:
    """V[n, m, parity] extended by zero outside the valid range.

    m = -1 uses the order -1 Legendre functions; m > n and (m = 0, '-') give 0.
    """
    parity = normalize_parity(parity)
    if n < 0 or m > n or m < -1 or (m == 0 and parity == "-"):
        return ZERO
    return _U_raw(n + 1, m, parity).diff(0)


def U_poly(n: int, m: int, parity: str) -> ScalarPoly:
    parity = normalize_parity(parity)
    if n < 0 or m > n or m < -1 or (m == 0 and parity == "-") or (m == -1 and n < 1):
        return ZERO
    return _U_raw(n, m, parity)


# ---------------------------------------------------------------------------
# norms, recurrence and relations


def sigma_coeff(n: int, m: int) -> Fraction:
    """Coefficient of the norm formula, in units of pi, as printed."""
    return Fraction(
        2 ** (n + 1) * (n + m + 1) * math.factorial(n - m + 2) * math.factorial(n + m + 1),
        double_factorial(2 * n + 1) * double_factorial(2 * n + 3),
    )


def V_norm_sq(n: int, m: int, parity: str, shape: SpheroidShape) -> PiRational:
    idx = HarmonicIndex(n, m, parity)
    delta = 2 if idx.m == 0 else 1
    return PiRational(delta * V_norm_coeff(idx.n, idx.m) * I_symbolic(idx.n, idx.m)(shape.tau))


def V_norm_coeff(n: int, m: int) -> Fraction:
    """Coefficient multiplying mu^(2n+3) I[n, m] in ||V[n, m]||^2, in units of pi.

    The printed constant carries 2^(n+1); exact integration shows the factor
    is 2 for every n, i.e. the printed value is off by 2^n.
    """
    return sigma_coeff(n, m) / 2**n


def recurrence_residual(n: int, m: int, parity: str = "+") -> ScalarPoly:
    """V[n,m] - (n+m+1) U[n,m] - tau (n+m+1)(n+m)/((2n+1)(2n-1)) V[n-2,m].

    Valid for 0 <= m <= n; V[n-2,m] is zero when m > n-2.
    """
    if n < 2 or m < 0 or m > n:
        raise ValueError(f"recurrence needs n >= 2 and 0 <= m <= n, got ({n}, {m})")
    HarmonicIndex(n, m, parity)
    factor = Fraction((n + m + 1) * (n + m), (2 * n + 1) * (2 * n - 1))
    rhs = U_poly(n, m, parity).scale(n + m + 1) + (TAU * V_poly(n - 2, m, parity)).scale(factor)
    return V_poly(n, m, parity) - rhs


def check_recurrence(n: int, m: int, parity: str = "+") -> bool:
    return recurrence_residual(n, m, parity).is_zero()


def V_neg_relation_factor(n: int) -> Optional[Fraction]:
    """The constant c with V^[n,-1] = c V^[n,1] (angular factors stripped), or None."""
    if n < 0:
        raise ValueError("n must be non-negative")
    neg = V_poly(n, -1, "+")  # cos(-phi) = cos(phi): same angular factor as m = 1
    pos = V_poly(n, 1, "+")
    if pos.is_zero():
        return Fraction(0) if neg.is_zero() else None
    (key, pv), *_ = pos.raw_terms().items()
    c = neg.raw_terms().get(key, Fraction(0)) / pv
    return c if neg == pos.scale(c) else None


def V_neg_relation_check(n: int) -> bool:
    """V^[n,-1] = -V^[n,1]/((n+1)(n+2)); for n = 0 both sides vanish."""
    return V_poly(n, -1, "+") == V_poly(n, 1, "+").scale(Fraction(-1, (n + 1) * (n + 2)))


# ---------------------------------------------------------------------------
# independent construction of solid spherical harmonics


@lru_cache(maxsize=None)
def _rodrigues(n: int):
    """P_n from Rodrigues' formula, independent of the recurrence."""
    p = UniPoly([-1, 0, 1]) ** n
    for _ in range(n):
        p = p.derivative()
    return p * Fraction(1, 2**n * math.factorial(n))


def solid_harmonic(n: int, m: int, parity: str = "+") -> ScalarPoly:
    """|x|^n P_n^m(x0/|x|) Phi_m(phi) with the Ferrers branch (-1)^m (1-t^2)^(m/2)."""
    idx = HarmonicIndex(n, m, parity)
    core = _rodrigues(n)
    for _ in range(m):
        core = core.derivative()
    r2 = X0 * X0 + X1 * X1 + X2 * X2
    k = n - m
    radial = ZERO
    for j, c in enumerate(core.coeffs):
        if c:
            radial = radial + (X0**j * r2 ** ((k - j) // 2)).scale(c)
    return (radial * _angular_factor(m, idx.parity)).scale((-1) ** m)

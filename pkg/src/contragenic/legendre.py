"""Associated Legendre functions of the first kind, exactly and in floating point.

Branch conventions (these reproduce the monogenic tables downstream):

* ``t > 1``:   P_n^m(t) = (t^2 - 1)^{m/2} d^m P_n / dt^m
* ``|t| <= 1``: P_n^m(t) = (-1)^m (1 - t^2)^{m/2} d^m P_n / dt^m

so both branches share the same polynomial *core* d^m P_n / dt^m, whose
leading coefficient is 1/gamma(n, m).  For order -1 the core is
(integral_1^t P_n) / (t^2 - 1) on both branches, with no sign on either.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactcore import SpheroidShape, UniPoly

T = UniPoly([0, 1])


def double_factorial(k: int) -> int:
    if k < -1:
        raise ValueError(f"double factorial undefined for {k}")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def gamma_coeff(n: int, m: int) -> Fraction:
    """(n - m)! / (2n - 1)!!, the factor that keeps the spherical limit finite."""
    if m > n:
        raise ValueError(f"order {m} exceeds degree {n}")
    if m < -1 or n < 0:
        raise ValueError(f"invalid index ({n}, {m})")
    return Fraction(math.factorial(n - m), double_factorial(2 * n - 1))


@lru_cache(maxsize=None)
def legendre_poly(n: int) -> UniPoly:
    """P_n by Bonnet's recurrence."""
    if n < 0:
        raise ValueError("negative degree")
    prev, cur = UniPoly([1]), T
    if n == 0:
        return prev
    for k in range(1, n):
        nxt = (T * cur * (2 * k + 1) - prev * k) * Fraction(1, k + 1)
        prev, cur = cur, nxt
    return cur


@lru_cache(maxsize=None)
def legendre_core(n: int, m: int) -> UniPoly:
    if m > n:
        raise ValueError(f"order {m} exceeds degree {n}")
    if m == -1:
        if n < 1:
            raise ValueError("order -1 core needs degree >= 1")
        anti = legendre_poly(n).antiderivative()
        anti = anti - anti(Fraction(1))
        q, r = anti.divmod(UniPoly([-1, 0, 1]))
        if not r.is_zero():
            raise ArithmeticError(f"integral of P_{n} not divisible by t^2 - 1")
        return q
    if m < -1:
        raise ValueError(f"order {m} unsupported")
    p = legendre_poly(n)
    for _ in range(m):
        p = p.derivative()
    return p


@dataclass(frozen=True)
class LegendreDecomp:
    """P_n^m(t) = branch factor * core(t); see the module docstring."""

    n: int
    m: int
    core: UniPoly
    convention: str = "inside: (-1)^m (1-t^2)^(m/2); outside: (t^2-1)^(m/2)"

    def inside_sign(self) -> int:
        return 1 if self.m == -1 else (-1) ** self.m

    def __call__(self, t: float) -> float:
        k = abs(self.m)
        c = float(self.core(Fraction(t)))
        if abs(t) <= 1:
            return self.inside_sign() * (1 - t * t) ** (k / 2) * c
        if t > 1:
            return (t * t - 1) ** (k / 2) * c
        raise ValueError("t < -1 is outside the supported branches")


def legendre_decomp(n: int, m: int) -> LegendreDecomp:
    if n < 0 or m < 0:
        if m == -1 and n >= 1:
            return LegendreDecomp(n, m, legendre_core(n, m))
        raise ValueError(f"invalid index ({n}, {m})")
    if m > n:
        raise ValueError(f"order {m} exceeds degree {n}")
    return LegendreDecomp(n, m, legendre_core(n, m))


def core_eval(n: int, m: int, t):
    """Core d^m P_n/dt^m at t (real or complex) by upward recurrence in degree."""
    if m > n:
        return 0.0 * t
    prev = 0.0 * t
    cur = float(double_factorial(2 * m - 1)) + 0.0 * t
    for k in range(m, n):
        prev, cur = cur, ((2 * k + 1) * t * cur - (k + m) * prev) / (k - m + 1)
    return cur


def legendre_eval(n: int, m: int, t: float) -> float:
    if m > n or m < 0:
        raise ValueError(f"invalid index ({n}, {m})")
    c = core_eval(n, m, t)
    if abs(t) <= 1:
        return (-1) ** m * (1 - t * t) ** (m / 2) * c
    if t > 1:
        return (t * t - 1) ** (m / 2) * c
    raise ValueError("t < -1 is outside the supported branches")


# ---------------------------------------------------------------------------
# the product integral I[n, m] = int_1^{1/mu} P_n^m P_{n+2}^m dt


@lru_cache(maxsize=None)
def _I_antiderivative(n: int, m: int) -> UniPoly:
    k = abs(m)
    integrand = UniPoly([-1, 0, 1]) ** k * legendre_core(n, m) * legendre_core(n + 2, m)
    F = integrand.antiderivative()
    if F(Fraction(1)) != 0:
        raise ArithmeticError(f"antiderivative for I[{n},{m}] does not vanish at t=1")
    return F


def I_symbolic(n: int, m: int) -> UniPoly:
    """mu^(2n+3) * I[n, m] as a polynomial in tau = mu^2."""
    if m > n:
        return UniPoly()  # P_n^m vanishes identically
    if n < 0 or m < -1 or (m == -1 and n < 1):
        raise ValueError(f"invalid index ({n}, {m})")
    F = _I_antiderivative(n, m)
    top = 2 * n + 3
    out = [Fraction(0)] * (n + 2)
    for k, f in enumerate(F.coeffs):
        if not f:
            continue
        if k % 2 == 0:
            raise ArithmeticError("antiderivative is not odd")
        out[(top - k) // 2] = f
    return UniPoly(out)


def I_integral(n: int, m: int, shape: SpheroidShape) -> Fraction:
    """I[n, m] itself; only rational for prolate shapes with rational mu."""
    if m > n:
        raise ValueError(f"order {m} exceeds degree {n}")
    tau = shape.tau
    if tau <= 0:
        raise ValueError("I[n,m] is only real for prolate shapes; use I_symbolic/I_scaled")
    num, den = tau.numerator, tau.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError(f"mu = sqrt({tau}) is irrational; use I_symbolic/I_scaled")
    mu = Fraction(rn, rd)
    F = _I_antiderivative(n, m)
    return F(1 / mu) - F(Fraction(1))


def I_scaled(n: int, m: int, shape: SpheroidShape) -> Fraction:
    return I_symbolic(n, m)(shape.tau)

"""Contragenic polynomials Z: harmonic, square integrable, orthogonal to every ambigenic one.

For 1 <= m <= n-1

    Z[n,m,+/-] = (a V[n,m-1,-/+] + V[n,m+1,-/+]/(n+m+2)) e1
                 +/- (a V[n,m-1,+/-] - V[n,m+1,+/-]/(n+m+2)) e2

with a = a[n,m] = ||V[n,m+1]||^2 / ((n+m+1)(n+m+2)^2 ||V[n,m-1]||^2), doubled
when m = 1 (see a_coeff), and

    Z[n,0] = (V[n,1,-] e1 - V[n,1,+] e2) / (n+2).

a depends rationally on tau, so Z lives at a fixed shape.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .exactcore import QPoly, SpheroidShape
from .harmonics import V_norm_sq, V_poly, normalize_parity
from .integrate import cross_inner


@dataclass(frozen=True)
class ContragenicIndex:
    n: int
    m: int
    parity: Optional[str] = None  # None only for m = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("contragenic polynomials start at degree 1")
        if self.m == 0:
            if self.parity not in (None, "+", "0"):
                raise ValueError("Z[n,0] carries no parity")
            object.__setattr__(self, "parity", None)
            return
        if not 1 <= self.m <= self.n - 1:
            raise ValueError(f"contragenic index requires m = 0 or 1 <= m <= n-1, got ({self.n}, {self.m})")
        if self.parity is None:
            raise ValueError("parity required for m >= 1")
        object.__setattr__(self, "parity", normalize_parity(self.parity))

    @property
    def label(self) -> str:
        return f"Z[{self.n},0]" if self.m == 0 else f"Z{self.parity}[{self.n},{self.m}]"


@dataclass(frozen=True)
class ContragenicBasisElement:
    index: ContragenicIndex
    qpoly: QPoly
    a_used: Optional[Fraction] = None

    @property
    def label(self) -> str:
        return self.index.label

    def to_json(self) -> dict:
        out = {
            "family": "Z",
            "n": self.index.n,
            "m": self.index.m,
            "parity": self.index.parity,
            "poly": self.qpoly.to_json(),
        }
        if self.a_used is not None:
            out["a"] = f"{self.a_used.numerator}/{self.a_used.denominator}"
        return out


def contragenic_indices(nmax: int) -> List[ContragenicIndex]:
    out = []
    for n in range(1, nmax + 1):
        out.append(ContragenicIndex(n, 0))
        for m in range(1, n):
            out.append(ContragenicIndex(n, m, "+"))
            out.append(ContragenicIndex(n, m, "-"))
    return out


def _check_range(n: int, m: int):
    if not 1 <= m <= n - 1:
        raise ValueError(f"a[n,m] needs 1 <= m <= n-1, got ({n}, {m})")


def a_coeff_printed(n: int, m: int, shape: SpheroidShape) -> Fraction:
    """||V[n,m+1]||^2 / ((n+m+1)(n+m+2)^2 ||V[n,m-1]||^2) taken literally."""
    _check_range(n, m)
    top = V_norm_sq(n, m + 1, "+", shape)
    bottom = V_norm_sq(n, m - 1, "+", shape)
    return (top / bottom) / ((n + m + 1) * (n + m + 2) ** 2)


def a_coeff(n: int, m: int, shape: SpheroidShape) -> Fraction:
    """The coefficient that makes Z[n,m,+/-] orthogonal to X[n,m,-/+].

    Pairing Z with X gives a (n+m+1) N' - ||V[n,m+1]||^2/(n+m+2)^2, where N' is
    the squared norm of V[n,m-1] restricted to the one angular factor that
    survives.  For m >= 2 that is ||V[n,m-1]||^2, so this equals the literal
    ratio.  For m = 1 the sine partner V[n,0,-] vanishes and N' is half of
    ||V[n,0]||^2, which doubles a.
    """
    a = a_coeff_printed(n, m, shape)
    return 2 * a if m == 1 else a


def A_coeff(n: int, m: int, sign: str, shape: SpheroidShape) -> Fraction:
    sign = normalize_parity(sign)
    a = a_coeff(n, m, shape)
    s = n + m + 1
    return (a + s) / s if sign == "+" else (a - s) / s


def build_Z(index: ContragenicIndex, shape: SpheroidShape, a: Optional[Fraction] = None) -> ContragenicBasisElement:
    """Z at a fixed shape; `a` overrides a_coeff (e.g. a_coeff_printed)."""
    n, m = index.n, index.m
    if m == 0:
        q = QPoly(e1=V_poly(n, 1, "-"), e2=-V_poly(n, 1, "+")).scale(Fraction(1, n + 2))
        return ContragenicBasisElement(index, q.substitute_tau(shape))
    p = index.parity
    other = "-" if p == "+" else "+"
    sign = 1 if p == "+" else -1
    a = a_coeff(n, m, shape) if a is None else a
    inv = Fraction(1, n + m + 2)
    e1 = V_poly(n, m - 1, other).scale(a) + V_poly(n, m + 1, other).scale(inv)
    e2 = (V_poly(n, m - 1, p).scale(a) - V_poly(n, m + 1, p).scale(inv)).scale(sign)
    return ContragenicBasisElement(index, QPoly(e1=e1, e2=e2).substitute_tau(shape), a)


def contragenic_basis(nmax: int, shape: SpheroidShape) -> List[ContragenicBasisElement]:
    return [build_Z(i, shape) for i in contragenic_indices(nmax)]


def contragenic_dim(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return n * n


def shape_distinguishing_check(tau1, tau2) -> bool:
    """True when Z[2,1,+] built for tau1 is not orthogonal to the ambigenic space of tau2."""
    from .monogenics import ambigenic_basis

    s1 = tau1 if isinstance(tau1, SpheroidShape) else SpheroidShape(tau1)
    s2 = tau2 if isinstance(tau2, SpheroidShape) else SpheroidShape(tau2)
    if s1.tau == s2.tau:
        raise ValueError("the two shapes must differ")
    z = build_Z(ContragenicIndex(2, 1, "+"), s1).qpoly
    amb = [y.qpoly for y in ambigenic_basis(2, s2)]
    return any(v != 0 for v in cross_inner([z], amb, s2)[0])

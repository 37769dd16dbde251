"""Exact arithmetic on polynomials in x0, x1, x2 whose coefficients are
polynomials in the shape parameter tau = mu**2.

Coefficients are :class:`fractions.Fraction`; nothing in this module touches
floating point except :meth:`ScalarPoly.eval_float`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

MAX_DEGREE = 64

Rational = Fraction
Scalar = Union[int, Fraction]
Monomial3 = Tuple[int, int, int]


class CapacityError(ValueError):
    """Raised when a product exceeds the configured total-degree bound."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Univariate polynomial over the rationals, coefficients in ascending order.

    Used both for the tau-dependence of coefficients and for Legendre cores in t.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, coeff: Scalar = 1) -> "UniPoly":
        return cls([0] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other) -> "UniPoly":
        other = _as_unipoly(other)
        n = max(len(self), len(other))
        return UniPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-_as_unipoly(other))

    def __rsub__(self, other) -> "UniPoly":
        return _as_unipoly(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = _as_unipoly(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def antiderivative(self) -> "UniPoly":
        """Antiderivative vanishing at 0."""
        return UniPoly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other) + 1, 0)
        lead = other.coeffs[-1]
        for k in range(len(rem) - len(other), -1, -1):
            f = rem[k + len(other) - 1] / lead
            q[k] = f
            if f:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= f * b
        return UniPoly(q), UniPoly(rem)

    def compose_neg(self) -> "UniPoly":
        """p(-t)."""
        return UniPoly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def to_json(self) -> list:
        return [[str(c.numerator), str(c.denominator)] for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "UniPoly":
        return cls(Fraction(int(num), int(den)) for num, den in data)


TauPoly = UniPoly


def _as_unipoly(value) -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    return UniPoly([as_fraction(value)])


# ---------------------------------------------------------------------------
# multivariate polynomials in x0, x1, x2 with tau-polynomial coefficients

_Key = Tuple[int, int, int, int]  # (a, b, c, k): x0^a x1^b x2^c tau^k


def _graded_key(mono: Monomial3):
    a, b, c = mono
    return (a + b + c, -a, -b, -c)


class ScalarPoly:
    """Sparse polynomial in x0, x1, x2 whose coefficients are polynomials in tau.

    Internally the tau exponent is flattened into the key, so a term is
    ``(a, b, c, k) -> coefficient`` for ``x0^a x1^b x2^c tau^k``.  Instances
    are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[_Key, Scalar] | None = None, *, _trusted: bool = False):
        if _trusted:
            self._terms: Dict[_Key, Fraction] = terms  # type: ignore[assignment]
        else:
            clean: Dict[_Key, Fraction] = {}
            for key, coeff in (terms or {}).items():
                if len(key) == 3:
                    key = (*key, 0)
                if any(e < 0 for e in key):
                    raise ValueError(f"negative exponent in {key}")
                if key[0] + key[1] + key[2] > MAX_DEGREE:
                    raise CapacityError(f"total degree exceeds {MAX_DEGREE}")
                coeff = as_fraction(coeff)
                if coeff:
                    clean[key] = clean.get(key, Fraction(0)) + coeff
                    if not clean[key]:
                        del clean[key]
            self._terms = clean
        self._hash = None

    # -- constructors
    @classmethod
    def constant(cls, value: Scalar) -> "ScalarPoly":
        return cls({(0, 0, 0, 0): value})

    @classmethod
    def var(cls, axis: int) -> "ScalarPoly":
        e = [0, 0, 0, 0]
        e[axis] = 1
        return cls({tuple(e): 1})

    @classmethod
    def tau(cls) -> "ScalarPoly":
        return cls({(0, 0, 0, 1): 1})

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[Monomial3, UniPoly | Scalar]) -> "ScalarPoly":
        terms: Dict[_Key, Fraction] = {}
        for (a, b, c), tp in coeffs.items():
            tp = _as_unipoly(tp)
            for k, v in enumerate(tp.coeffs):
                if v:
                    terms[(a, b, c, k)] = v
        return cls(terms)

    # -- inspection
    def is_zero(self) -> bool:
        return not self._terms

    def raw_terms(self) -> Mapping[_Key, Fraction]:
        return self._terms

    def terms(self) -> Dict[Monomial3, UniPoly]:
        grouped: Dict[Monomial3, Dict[int, Fraction]] = {}
        for (a, b, c, k), v in self._terms.items():
            grouped.setdefault((a, b, c), {})[k] = v
        out = {}
        for mono in sorted(grouped, key=_graded_key):
            ks = grouped[mono]
            out[mono] = UniPoly(ks.get(k, 0) for k in range(max(ks) + 1))
        return out

    def coefficient(self, mono: Monomial3) -> UniPoly:
        return self.terms().get(tuple(mono), UniPoly())

    @property
    def degree(self) -> int:
        """Total degree in x; -1 for the zero polynomial."""
        return max((a + b + c for a, b, c, _ in self._terms), default=-1)

    @property
    def tau_degree(self) -> int:
        return max((k for *_, k in self._terms), default=-1)

    def is_tau_free(self) -> bool:
        return all(k == 0 for *_, k in self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ScalarPoly.constant(other)
        return isinstance(other, ScalarPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"ScalarPoly({self.pretty()})"

    # -- arithmetic
    def __add__(self, other) -> "ScalarPoly":
        other = _as_scalarpoly(other)
        out = dict(self._terms)
        for key, v in other._terms.items():
            s = out.get(key, 0) + v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return ScalarPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "ScalarPoly":
        return ScalarPoly({k: -v for k, v in self._terms.items()}, _trusted=True)

    def __sub__(self, other) -> "ScalarPoly":
        return self + (-_as_scalarpoly(other))

    def __rsub__(self, other) -> "ScalarPoly":
        return _as_scalarpoly(other) - self

    def __mul__(self, other) -> "ScalarPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, UniPoly):
            other = ScalarPoly.from_coefficients({(0, 0, 0): other})
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        if self.degree + other.degree > MAX_DEGREE:
            raise CapacityError(f"product degree {self.degree + other.degree} exceeds {MAX_DEGREE}")
        out: Dict[_Key, Fraction] = {}
        for (a1, b1, c1, k1), v1 in self._terms.items():
            for (a2, b2, c2, k2), v2 in other._terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2, k1 + k2)
                out[key] = out.get(key, 0) + v1 * v2
        return ScalarPoly({k: v for k, v in out.items() if v}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ScalarPoly":
        out = ScalarPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, factor) -> "ScalarPoly":
        if isinstance(factor, UniPoly):
            return self * factor
        factor = as_fraction(factor)
        if not factor:
            return ScalarPoly()
        return ScalarPoly({k: v * factor for k, v in self._terms.items()}, _trusted=True)

    # -- calculus
    def diff(self, axis: int) -> "ScalarPoly":
        if axis not in (0, 1, 2):
            raise ValueError("axis must be 0, 1 or 2")
        out: Dict[_Key, Fraction] = {}
        for key, v in self._terms.items():
            e = key[axis]
            if e:
                nk = list(key)
                nk[axis] = e - 1
                out[tuple(nk)] = v * e
        return ScalarPoly(out, _trusted=True)

    def laplacian(self) -> "ScalarPoly":
        return self.diff(0).diff(0) + self.diff(1).diff(1) + self.diff(2).diff(2)

    # -- substitution / evaluation
    def substitute_tau(self, tau) -> "ScalarPoly":
        tau = tau.tau if isinstance(tau, SpheroidShape) else as_fraction(tau)
        out: Dict[_Key, Fraction] = {}
        for (a, b, c, k), v in self._terms.items():
            if k and not tau:
                continue
            key = (a, b, c, 0)
            s = out.get(key, 0) + v * tau**k
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return ScalarPoly(out, _trusted=True)

    def eval_float(self, x: Sequence[float], tau: float = 0.0) -> float:
        """Evaluate at a point; nested Horner in x0 over the (b, c, k) groups."""
        x0, x1, x2 = (float(v) for v in x)
        groups: Dict[Tuple[int, int, int], Dict[int, Fraction]] = {}
        for (a, b, c, k), v in self._terms.items():
            groups.setdefault((b, c, k), {})[a] = v
        total = 0.0
        for (b, c, k), by_a in groups.items():
            acc = 0.0
            for a in range(max(by_a), -1, -1):
                acc = acc * x0 + float(by_a.get(a, 0))
            total += acc * x1**b * x2**c * tau**k
        return total

    def exact_value(self, x: Sequence, tau=0) -> Fraction:
        x0, x1, x2 = (as_fraction(v) for v in x)
        tau = as_fraction(tau)
        return sum((v * x0**a * x1**b * x2**c * tau**k for (a, b, c, k), v in self._terms.items()), Fraction(0))

    # -- serialisation
    def to_json(self) -> list:
        return [
            {"a": a, "b": b, "c": c, "tau": tp.to_json()}
            for (a, b, c), tp in self.terms().items()
        ]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> "ScalarPoly":
        return cls.from_coefficients(
            {(int(t["a"]), int(t["b"]), int(t["c"])): UniPoly.from_json(t["tau"]) for t in data}
        )

    def pretty(self, tau_name: str = "mu^2") -> str:
        if self.is_zero():
            return "0"
        pieces = []
        keys = sorted(self._terms, key=lambda t: (-(t[0] + t[1] + t[2]), t[0] == 0, -t[0], -t[1], -t[3]))
        for key in keys:
            a, b, c, k = key
            v = self._terms[key]
            factors = [f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate((a, b, c)) if e]
            if k:
                factors.append(tau_name if k == 1 else f"({tau_name})^{k}")
            mag = abs(v)
            coeff = "" if (mag == 1 and factors) else str(mag)
            body = "*".join(([coeff] if coeff else []) + factors)
            sign = "-" if v < 0 else "+"
            pieces.append((sign, body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


def _as_scalarpoly(value) -> ScalarPoly:
    if isinstance(value, ScalarPoly):
        return value
    if isinstance(value, UniPoly):
        return ScalarPoly.from_coefficients({(0, 0, 0): value})
    return ScalarPoly.constant(as_fraction(value))


X0 = ScalarPoly.var(0)
X1 = ScalarPoly.var(1)
X2 = ScalarPoly.var(2)
TAU = ScalarPoly.tau()
ZERO = ScalarPoly()
ONE = ScalarPoly.constant(1)


def poly_arith(p: ScalarPoly, q, op: str) -> ScalarPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: ScalarPoly, axis: int) -> ScalarPoly:
    return p.diff(axis)


def laplacian(p: ScalarPoly) -> ScalarPoly:
    return p.laplacian()


def substitute_tau(p: ScalarPoly, shape) -> ScalarPoly:
    return p.substitute_tau(shape)


def eval_float(p: ScalarPoly, x: Sequence[float], tau: float = 0.0) -> float:
    return p.eval_float(x, tau)


# ---------------------------------------------------------------------------
# quaternion-valued polynomials


@dataclass(frozen=True)
class QPoly:
    """Quaternion-valued polynomial e0 + e1*i + e2*j + e3*(i j)."""

    e0: ScalarPoly = ZERO
    e1: ScalarPoly = ZERO
    e2: ScalarPoly = ZERO
    e3: ScalarPoly = ZERO

    @classmethod
    def scalar(cls, p: ScalarPoly) -> "QPoly":
        return cls(p, ZERO, ZERO, ZERO)

    @property
    def components(self) -> Tuple[ScalarPoly, ScalarPoly, ScalarPoly, ScalarPoly]:
        return (self.e0, self.e1, self.e2, self.e3)

    def is_r3(self) -> bool:
        return self.e3.is_zero()

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    def conj(self) -> "QPoly":
        return QPoly(self.e0, -self.e1, -self.e2, -self.e3)

    def __add__(self, other: "QPoly") -> "QPoly":
        return QPoly(*(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "QPoly") -> "QPoly":
        return QPoly(*(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "QPoly":
        return QPoly(*(-a for a in self.components))

    def scale(self, factor) -> "QPoly":
        return QPoly(*(a.scale(factor) for a in self.components))

    def __mul__(self, factor) -> "QPoly":
        if isinstance(factor, QPoly):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def map(self, fn) -> "QPoly":
        return QPoly(*(fn(a) for a in self.components))

    def substitute_tau(self, shape) -> "QPoly":
        return self.map(lambda p: p.substitute_tau(shape))

    def laplacian(self) -> "QPoly":
        return self.map(ScalarPoly.laplacian)

    def to_json(self) -> dict:
        return {f"e{i}": c.to_json() for i, c in enumerate(self.components)}

    @classmethod
    def from_json(cls, data: Mapping) -> "QPoly":
        return cls(*(ScalarPoly.from_json(data.get(f"e{i}", [])) for i in range(4)))

    def pretty(self, tau_name: str = "mu^2") -> str:
        parts = []
        for name, comp in zip(("", "e1", "e2", "e3"), self.components):
            if comp.is_zero():
                continue
            body = comp.pretty(tau_name)
            parts.append(body if not name else f"({body})*{name}")
        return " + ".join(parts) if parts else "0"


def fueter_apply(q: QPoly, variant: str) -> QPoly:
    """Apply D = d0 - e1 d1 - e2 d2 or Dbar = d0 + e1 d1 + e2 d2 from the left.

    The result keeps all four quaternion components.
    """
    if not q.is_r3():
        raise ValueError("Fueter operators are defined here for R^3-valued input (e3 must vanish)")
    if variant not in ("D", "Dbar"):
        raise ValueError(f"unknown Fueter variant {variant!r}")
    s = 1 if variant == "Dbar" else -1
    f0, f1, f2 = q.e0, q.e1, q.e2
    return QPoly(
        f0.diff(0) - (f1.diff(1) + f2.diff(2)).scale(s),
        f1.diff(0) + f0.diff(1).scale(s),
        f2.diff(0) + f0.diff(2).scale(s),
        (f2.diff(1) - f1.diff(2)).scale(s),
    )


# ---------------------------------------------------------------------------
# spheroid shapes


class ShapeKind(str, enum.Enum):
    PROLATE = "prolate"
    SPHERE = "sphere"
    OBLATE = "oblate"


@dataclass(frozen=True)
class SpheroidShape:
    """The spheroid x0^2 + (x1^2 + x2^2)/(1 - tau) < 1 with tau = mu^2 < 1."""

    tau: Fraction

    def __post_init__(self):
        object.__setattr__(self, "tau", as_fraction(self.tau))
        if self.tau >= 1:
            raise ValueError(f"tau must be < 1, got {self.tau}")

    @classmethod
    def parse(cls, text: str) -> "SpheroidShape":
        text = str(text).strip()
        if text.lower() == "sphere":
            return cls(Fraction(0))
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"shape must be an exact rational like 1/4, not a float: {text!r}")
        try:
            return cls(Fraction(text))
        except ValueError as exc:
            raise ValueError(f"shape must be an exact rational like 1/4 or 'sphere', got {text!r}") from exc

    @property
    def kind(self) -> ShapeKind:
        if self.tau > 0:
            return ShapeKind.PROLATE
        if self.tau < 0:
            return ShapeKind.OBLATE
        return ShapeKind.SPHERE

    @property
    def wsq(self) -> Fraction:
        return 1 - self.tau

    @property
    def mu_abs(self) -> float:
        return math.sqrt(abs(self.tau))

    def contains(self, x: Sequence[float]) -> bool:
        x0, x1, x2 = x
        return x0 * x0 + (x1 * x1 + x2 * x2) / float(self.wsq) < 1.0

    def __str__(self) -> str:
        return str(self.tau)


SPHERE = SpheroidShape(Fraction(0))

"""Exact L2 inner products over the spheroid, Gram matrices and exact ranks.

Every integral of a polynomial over the spheroid is a rational multiple of
pi.  Monomials integrate in closed form (scaling x1, x2 by w maps the
spheroid onto the unit ball):

    int x0^a x1^b x2^c dx = 4 pi (a-1)!! (b-1)!! (c-1)!! / (a+b+c+3)!! * w^(b+c+2)

when a, b, c are all even, and 0 otherwise.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exactcore import QPoly, ScalarPoly, SpheroidShape, as_fraction


@dataclass(frozen=True, order=True)
class PiRational:
    """The exact real number r * pi."""

    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", as_fraction(self.r))

    def __add__(self, other: "PiRational") -> "PiRational":
        return PiRational(self.r + other.r)

    def __sub__(self, other: "PiRational") -> "PiRational":
        return PiRational(self.r - other.r)

    def __neg__(self) -> "PiRational":
        return PiRational(-self.r)

    def __mul__(self, k) -> "PiRational":
        return PiRational(self.r * as_fraction(k))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiRational):
            return self.r / other.r
        return PiRational(self.r / as_fraction(other))

    def __bool__(self) -> bool:
        return bool(self.r)

    def __float__(self) -> float:
        return float(self.r) * np.pi

    def __str__(self) -> str:
        return f"{self.r}*pi"


# ---------------------------------------------------------------------------
# monomial moments


def _dfact(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


@lru_cache(maxsize=200_000)
def _moment(a: int, b: int, c: int, tau: Fraction) -> Fraction:
    if a % 2 or b % 2 or c % 2:
        return Fraction(0)
    base = Fraction(4 * _dfact(a - 1) * _dfact(b - 1) * _dfact(c - 1), _dfact(a + b + c + 3))
    return base * (1 - tau) ** ((b + c + 2) // 2)


def monomial_integral(a: int, b: int, c: int, shape: SpheroidShape) -> PiRational:
    if min(a, b, c) < 0:
        raise ValueError("exponents must be non-negative")
    return PiRational(_moment(a, b, c, shape.tau))


def _at_shape(p: ScalarPoly, shape: SpheroidShape) -> Dict[Tuple[int, int, int], Fraction]:
    fixed = p if p.is_tau_free() else p.substitute_tau(shape)
    return {(a, b, c): v for (a, b, c, _), v in fixed.raw_terms().items()}


def scalar_inner(f: ScalarPoly, g: ScalarPoly, shape: SpheroidShape) -> Fraction:
    ft, gt = _at_shape(f, shape), _at_shape(g, shape)
    tau = shape.tau
    total = Fraction(0)
    for (a1, b1, c1), v1 in ft.items():
        for (a2, b2, c2), v2 in gt.items():
            a, b, c = a1 + a2, b1 + b2, c1 + c2
            if a % 2 or b % 2 or c % 2:
                continue
            total += v1 * v2 * _moment(a, b, c, tau)
    return total


def _require_r3(*qs: QPoly):
    for q in qs:
        if not q.is_r3():
            raise ValueError("inner products are defined for R^3-valued functions (e3 must vanish)")


def inner_product(f: QPoly, g: QPoly, shape: SpheroidShape) -> PiRational:
    if isinstance(f, ScalarPoly):
        f = QPoly.scalar(f)
    if isinstance(g, ScalarPoly):
        g = QPoly.scalar(g)
    _require_r3(f, g)
    return PiRational(sum((scalar_inner(a, b, shape) for a, b in zip(f.components[:3], g.components[:3])), Fraction(0)))


# ---------------------------------------------------------------------------
# batched inner products with integer matrices


class _Batch:
    """Polynomials of a family, stored as integer coefficient matrices per component."""

    def __init__(self, polys: Sequence[QPoly], shape: SpheroidShape, monos: Optional[List[List[Tuple[int, int, int]]]] = None):
        _require_r3(*polys)
        self.shape = shape
        per_comp = [[_at_shape(q.components[i], shape) for q in polys] for i in range(3)]
        if monos is None:
            monos = [sorted({m for d in comp for m in d}) for comp in per_comp]
        self.monos = monos
        self.denoms: List[int] = []
        for q_idx in range(len(polys)):
            dens = [v.denominator for comp in per_comp for v in comp[q_idx].values()]
            self.denoms.append(reduce(lcm, dens, 1))
        self.mats = []
        for comp, mono_list in zip(per_comp, monos):
            pos = {m: j for j, m in enumerate(mono_list)}
            mat = np.zeros((len(polys), len(mono_list)), dtype=object)
            mat[:] = 0
            for i, d in enumerate(comp):
                den = self.denoms[i]
                for mono, v in d.items():
                    mat[i, pos[mono]] = v.numerator * (den // v.denominator)
            self.mats.append(mat)


def _moment_matrix(rows: List[Tuple[int, int, int]], cols: List[Tuple[int, int, int]], tau: Fraction):
    vals = [[_moment(a1 + a2, b1 + b2, c1 + c2, tau) for (a2, b2, c2) in cols] for (a1, b1, c1) in rows]
    den = reduce(lcm, (v.denominator for row in vals for v in row), 1)
    mat = np.zeros((len(rows), len(cols)), dtype=object)
    mat[:] = 0
    for i, row in enumerate(vals):
        for j, v in enumerate(row):
            if v:
                mat[i, j] = v.numerator * (den // v.denominator)
    return mat, den


def cross_inner(left: Sequence[QPoly], right: Sequence[QPoly], shape: SpheroidShape) -> List[List[Fraction]]:
    """Matrix of <left_i, right_j> / pi, exactly."""
    if not left or not right:
        return [[Fraction(0)] * len(right) for _ in left]
    lb = _Batch(left, shape)
    rb = lb if left is right else _Batch(right, shape)
    total = None
    common = 1
    partial = []
    for c in range(3):
        if not lb.monos[c] or not rb.monos[c]:
            continue
        mom, den = _moment_matrix(lb.monos[c], rb.monos[c], shape.tau)
        prod = lb.mats[c].dot(mom).dot(rb.mats[c].T)
        partial.append((prod, den))
        common = lcm(common, den)
    out = [[Fraction(0)] * len(right) for _ in left]
    for prod, den in partial:
        f = common // den
        total = prod * f if total is None else total + prod * f
    if total is None:
        return out
    for i in range(len(left)):
        for j in range(len(right)):
            v = total[i, j]
            if v:
                out[i][j] = Fraction(int(v), lb.denoms[i] * rb.denoms[j] * common)
    return out


@dataclass
class GramMatrix:
    labels: List[str]
    entries: List[List[PiRational]]

    def __len__(self) -> int:
        return len(self.labels)

    def is_symmetric(self) -> bool:
        n = len(self)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def off_diagonal_nonzero(self) -> List[Tuple[int, int]]:
        n = len(self)
        return [(i, j) for i in range(n) for j in range(n) if i != j and self.entries[i][j].r != 0]

    def is_diagonal(self) -> bool:
        return not self.off_diagonal_nonzero()

    def diagonal(self) -> List[PiRational]:
        return [self.entries[i][i] for i in range(len(self))]

    def rank(self) -> int:
        return exact_rank([[e.r for e in row] for row in self.entries])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + self.labels)
        for label, row in zip(self.labels, self.entries):
            w.writerow([label] + [f"{e.r.numerator}/{e.r.denominator}" for e in row])
        return buf.getvalue()


def gram(basis: Sequence[QPoly], shape: SpheroidShape, labels: Optional[Sequence[str]] = None) -> GramMatrix:
    basis = [QPoly.scalar(b) if isinstance(b, ScalarPoly) else b for b in basis]
    vals = cross_inner(basis, basis, shape)
    labels = list(labels) if labels is not None else [str(i) for i in range(len(basis))]
    return GramMatrix(labels, [[PiRational(v) for v in row] for row in vals])


# ---------------------------------------------------------------------------
# fraction-free elimination


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by Bareiss fraction-free elimination."""
    if not rows:
        return 0
    fr = [[as_fraction(v) for v in row] for row in rows]
    scale = [reduce(lcm, (v.denominator for v in row), 1) for row in fr]
    mat = [[int(v * s) for v in row] for row, s in zip(fr, scale)]
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, nrows):
            lead = mat[r][col]
            row_r, row_p = mat[r], mat[rank]
            mat[r] = [(p * row_r[k] - lead * row_p[k]) // prev for k in range(ncols)]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def coefficient_rank(polys: Sequence[QPoly], shape: Optional[SpheroidShape] = None) -> int:
    """Rank of the coefficient matrix; symbolic in tau when shape is None."""
    keys = set()
    rows = []
    for q in polys:
        row = {}
        for i, comp in enumerate(q.components):
            src = comp.substitute_tau(shape) if shape is not None else comp
            for key, v in src.raw_terms().items():
                row[(i, key)] = v
                keys.add((i, key))
        rows.append(row)
    order = sorted(keys)
    return exact_rank([[row.get(k, 0) for k in order] for row in rows])


# ---------------------------------------------------------------------------
# decomposition into monogenic, antimonogenic and contragenic parts


class NotHarmonicError(ValueError):
    def __init__(self, component: int, laplacian: ScalarPoly):
        self.component = component
        self.laplacian = laplacian
        super().__init__(f"component e{component} is not harmonic; its Laplacian is {laplacian.pretty()}")


@dataclass
class DecompositionResult:
    coefficients: List[Tuple[str, Fraction]]
    monogenic: QPoly
    antimonogenic: QPoly
    contragenic: QPoly
    residual: QPoly
    shape: SpheroidShape
    nmax: int
    norms: Dict[str, PiRational] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "shape": str(self.shape.tau),
            "nmax": self.nmax,
            "coefficients": [
                {"basis": label, "coefficient": f"{c.numerator}/{c.denominator}"} for label, c in self.coefficients
            ],
            "parts": {
                "monogenic": self.monogenic.to_json(),
                "antimonogenic": self.antimonogenic.to_json(),
                "contragenic": self.contragenic.to_json(),
                "residual": self.residual.to_json(),
            },
            "norms_sq_over_pi": {k: f"{v.r.numerator}/{v.r.denominator}" for k, v in self.norms.items()},
        }


@lru_cache(maxsize=16)
def _decomposition_basis(nmax: int, tau: Fraction):
    from .contragenics import contragenic_basis
    from .monogenics import ambigenic_basis

    shape = SpheroidShape(tau)
    amb = ambigenic_basis(nmax, shape)
    con = contragenic_basis(nmax, shape)
    polys = [y.qpoly for y in amb] + [z.qpoly for z in con]
    labels = [y.label for y in amb] + [z.label for z in con]
    norms = [inner_product(b, b, shape).r for b in polys]
    return amb, con, polys, labels, norms


def check_harmonic(f: QPoly) -> None:
    for i, comp in enumerate(f.components[:3]):
        lap = comp.laplacian()
        if not lap.is_zero():
            raise NotHarmonicError(i, lap)


def decompose(f: QPoly, nmax: int, shape: SpheroidShape) -> DecompositionResult:
    """Fourier coefficients over the orthogonal ambigenic + contragenic basis of degree <= nmax."""
    if not f.is_r3():
        raise ValueError("decompose expects an R^3-valued polynomial")
    f = f.substitute_tau(shape)
    check_harmonic(f)
    if f.degree > nmax:
        raise ValueError(f"input degree {f.degree} exceeds nmax={nmax}")

    amb, con, basis, labels, diag = _decomposition_basis(nmax, shape.tau)
    against = cross_inner([f], basis, shape)[0]
    coeffs = [a / d for a, d in zip(against, diag)]
    mono = anti = contra = QPoly()
    for y, c in zip(amb, coeffs[: len(amb)]):
        if not c:
            continue
        m_part, a_part = y.split()
        mono = mono + m_part.scale(c)
        anti = anti + a_part.scale(c)
    for z, c in zip(con, coeffs[len(amb):]):
        if c:
            contra = contra + z.qpoly.scale(c)
    residual = f - mono - anti - contra
    result = DecompositionResult(list(zip(labels, coeffs)), mono, anti, contra, residual, shape, nmax)
    result.norms = {
        name: inner_product(part, part, shape)
        for name, part in (("monogenic", mono), ("antimonogenic", anti), ("contragenic", contra))
    }
    return result


# ---------------------------------------------------------------------------
# dimension table


@dataclass
class DimensionRow:
    n: int
    har_scalar: Tuple[int, int]
    har_r3: Tuple[int, int]
    monogenic: Tuple[int, int]
    monogenic_constants: Tuple[int, int]
    ambigenic: Tuple[int, int]
    contragenic: Tuple[int, int]
    completeness: Tuple[int, int]

    def items(self):
        return [
            ("Har(R)", self.har_scalar),
            ("Har(R^3)", self.har_r3),
            ("M*", self.monogenic),
            ("M* cap conj M*", self.monogenic_constants),
            ("M* + conj M*", self.ambigenic),
            ("N*", self.contragenic),
            ("ambigenic + N*", self.completeness),
        ]

    def ok(self) -> bool:
        return all(c == e for _, (c, e) in self.items())


def rank_dimension_report(nmax: int, shape: SpheroidShape, cap: int = 8) -> List[DimensionRow]:
    """Computed Gram ranks against the closed-form dimensions, for n = 0..nmax."""
    from .contragenics import contragenic_basis
    from .harmonics import V_poly, harmonic_indices
    from .monogenics import ambigenic_basis, monogenic_indices, X_poly

    if nmax > cap:
        raise ValueError(f"nmax={nmax} exceeds the cap {cap}")
    rows = []
    for n in range(nmax + 1):
        vs = [V_poly(i.n, i.m, i.parity) for i in harmonic_indices(n)]
        har_scalar = gram([QPoly.scalar(v) for v in vs], shape).rank()
        har_r3 = gram(
            [QPoly.scalar(v) for v in vs] + [QPoly(e1=v) for v in vs] + [QPoly(e2=v) for v in vs], shape
        ).rank()
        xs = [X_poly(i.n, i.m, i.parity) for i in monogenic_indices(n)]
        mono = gram(xs, shape).rank()
        both = gram(xs + [x.conj() for x in xs], shape).rank()
        amb = gram([y.qpoly for y in ambigenic_basis(n, shape)], shape).rank()
        con_basis = [z.qpoly for z in contragenic_basis(n, shape)]
        con = gram(con_basis, shape).rank() if con_basis else 0
        full = gram([y.qpoly for y in ambigenic_basis(n, shape)] + con_basis, shape).rank()
        rows.append(
            DimensionRow(
                n,
                (har_scalar, (n + 1) ** 2),
                (har_r3, 3 * (n + 1) ** 2),
                (mono, (n + 3) * (n + 1)),
                (2 * mono - both, 2 * n + 3),
                (amb if amb == both else -1, 2 * (n * n + 3 * n + 1) + 1),
                (con, n * n),
                (full, 3 * (n + 1) ** 2),
            )
        )
    return rows

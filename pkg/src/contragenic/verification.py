"""Invariant suites shared by the `verify` command and the acceptance tests.

Every suite returns a list of Check records; a suite passes when all of its
checks do.  Defaults reproduce the sizes used for acceptance.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .contragenics import (
    ContragenicIndex,
    a_coeff_printed,
    build_Z,
    contragenic_basis,
    contragenic_indices,
    shape_distinguishing_check,
)
from .exactcore import ONE, X0, X1, X2, ZERO, QPoly, ScalarPoly, SpheroidShape, fueter_apply
from .harmonics import (
    U_poly,
    V_neg_relation_check,
    V_norm_sq,
    V_poly,
    harmonic_indices,
    recurrence_residual,
    solid_harmonic,
)
from .integrate import cross_inner, decompose, gram, inner_product, monomial_integral, rank_dimension_report
from .monogenics import (
    X_norm_sq,
    X_poly,
    ambigenic_basis,
    build_X_via_operator,
    conj_inner,
    monogenic_indices,
)
from .numeval import (
    eval_basis_numeric,
    eval_poly,
    eval_qpoly,
    mc_inner_product,
    random_interior_points,
    relative_error,
)
from .reference_tables import (
    MONOGENIC_LOW,
    MONOGENIC_N3,
    X31_MINUS_E2_PRINTED,
    contragenic_low,
)


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"suite": self.suite, "check": self.name, "passed": self.passed, "detail": self.detail}


def _shapes(shapes: Optional[Sequence], default: Sequence[str]) -> List[SpheroidShape]:
    items = default if shapes is None else shapes
    return [s if isinstance(s, SpheroidShape) else SpheroidShape.parse(str(s)) for s in items]


def _first_failures(items: List[str], limit: int = 5) -> str:
    if not items:
        return ""
    more = f" (+{len(items) - limit} more)" if len(items) > limit else ""
    return "; ".join(items[:limit]) + more


# ---------------------------------------------------------------------------


def suite_harmonicity(nmax: int = 8, shapes=None, **_) -> List[Check]:
    out = []
    bad = [f"U{i.label}" for i in harmonic_indices(nmax) if not U_poly(i.n, i.m, i.parity).laplacian().is_zero()]
    out.append(Check("harmonicity", f"U, n<={nmax}", not bad, _first_failures(bad)))
    bad = [f"V{i.label}" for i in harmonic_indices(nmax) if not V_poly(i.n, i.m, i.parity).laplacian().is_zero()]
    out.append(Check("harmonicity", f"V, n<={nmax}", not bad, _first_failures(bad)))
    bad = [f"X{i.label}" for i in monogenic_indices(nmax) if not X_poly(i.n, i.m, i.parity).laplacian().is_zero()]
    out.append(Check("harmonicity", f"X components, n<={nmax}", not bad, _first_failures(bad)))
    for shape in _shapes(shapes, ["0", "1/4", "-1"]):
        bad = [y.label for y in ambigenic_basis(nmax, shape) if not y.qpoly.laplacian().is_zero()]
        out.append(Check("harmonicity", f"Y components, n<={nmax}, tau={shape.tau}", not bad, _first_failures(bad)))
        bad = [z.label for z in contragenic_basis(nmax, shape) if not z.qpoly.laplacian().is_zero()]
        out.append(Check("harmonicity", f"Z components, n<={nmax}, tau={shape.tau}", not bad, _first_failures(bad)))
    return out


def suite_monogenicity(nmax: int = 8, **_) -> List[Check]:
    idx = monogenic_indices(nmax)
    bad = [i.label for i in idx if not fueter_apply(X_poly(i.n, i.m, i.parity), "Dbar").is_zero()]
    out = [Check("monogenicity", f"Dbar X = 0 (4 components, tau symbolic), n<={nmax}", not bad, _first_failures(bad))]
    n_op = min(nmax, 6)
    bad = [i.label for i in monogenic_indices(n_op) if build_X_via_operator(i).qpoly != X_poly(i.n, i.m, i.parity)]
    out.append(Check("monogenicity", f"X = D U[n+1,m], n<={n_op}", not bad, _first_failures(bad)))
    bad = [i.label for i in monogenic_indices(n_op) if x_has_tau_expected(i.n, i.m) == _tau_free(X_poly(i.n, i.m, i.parity))]
    out.append(Check("monogenicity", f"X contains tau iff n-m >= 2 or (m >= 1 and n-m = 1), n<={n_op}", not bad, _first_failures(bad)))
    return out


def x_has_tau_expected(n: int, m: int) -> bool:
    """V[n,k] carries tau iff n-k >= 2; X[n,m] involves V[n,m], V[n,m-1] and V[n,m+1].

    For m = 0 the m-1 term is a multiple of V[n,1].
    """
    lower = 1 if m == 0 else m - 1
    return n - m >= 2 or n - lower >= 2


def _tau_free(q: QPoly) -> bool:
    return all(c.is_tau_free() for c in q.components)


def suite_orthogonality(nmax: int = 6, shapes=None, **_) -> List[Check]:
    out = []
    vs = [QPoly.scalar(V_poly(i.n, i.m, i.parity)) for i in harmonic_indices(nmax)]
    xs = [X_poly(i.n, i.m, i.parity) for i in monogenic_indices(nmax)]
    for shape in _shapes(shapes, ["0", "1/4", "-1"]):
        for name, fam in (("V", vs), ("X", xs)):
            g = gram(fam, shape)
            off = g.off_diagonal_nonzero()
            out.append(Check("orthogonality", f"{name}, n<={nmax}, tau={shape.tau}", not off, f"{len(off)} nonzero off-diagonal" if off else f"{len(g)}x{len(g)} diagonal"))
        amb = ambigenic_basis(nmax, shape)
        con = contragenic_basis(nmax, shape)
        labels = [y.label for y in amb] + [z.label for z in con]
        g = gram([y.qpoly for y in amb] + [z.qpoly for z in con], shape, labels)
        off = g.off_diagonal_nonzero()
        pairs = [f"<{labels[i]},{labels[j]}>" for i, j in off if i < j]
        out.append(Check("orthogonality", f"ambigenic + Z, n<={nmax}, tau={shape.tau}", not off, _first_failures(pairs) or f"{len(g)}x{len(g)} diagonal"))
    return out


def suite_norms(nmax: int = 5, shapes=None, **_) -> List[Check]:
    out = []
    for shape in _shapes(shapes, ["1/4", "-1"]):
        bad = []
        for i in harmonic_indices(nmax):
            v = QPoly.scalar(V_poly(i.n, i.m, i.parity))
            if inner_product(v, v, shape) != V_norm_sq(i.n, i.m, i.parity, shape):
                bad.append(f"V{i.label}")
        out.append(Check("norms", f"||V||^2 closed form, n<={nmax}, tau={shape.tau}", not bad, _first_failures(bad)))
        bad = []
        for i in monogenic_indices(nmax):
            x = X_poly(i.n, i.m, i.parity)
            if inner_product(x, x, shape) != X_norm_sq(i, shape):
                bad.append(f"X{i.label}")
        out.append(Check("norms", f"||X||^2 closed form, n<={nmax}, tau={shape.tau}", not bad, _first_failures(bad)))
        vol = Fraction(4, 3) * (1 - shape.tau)
        got = V_norm_sq(0, 0, "+", shape).r
        out.append(Check("norms", f"||V[0,0]||^2 = volume, tau={shape.tau}", got == vol, f"{got}*pi vs {vol}*pi"))
    return out


def suite_recurrence(nmax: int = 8, shapes=None, **_) -> List[Check]:
    bad = []
    for n in range(2, nmax + 1):
        for m in range(0, n + 1):
            for p in ("+", "-"):
                if p == "-" and m == 0:
                    continue
                if not recurrence_residual(n, m, p).is_zero():
                    bad.append(f"({n},{m},{p})")
    out = [Check("recurrence", f"three-term recurrence, 2<=n<={nmax}", not bad, _first_failures(bad))]
    n_rel = min(nmax, 6)
    bad = [str(n) for n in range(n_rel + 1) if not V_neg_relation_check(n)]
    out.append(Check("recurrence", f"V[n,-1] = -V[n,1]/((n+1)(n+2)), n<={n_rel}", not bad, _first_failures(bad)))
    for shape in _shapes(shapes, ["0", "1/4", "-1"]):
        bad = [
            f"({n},{m})"
            for n in range(1, n_rel + 1)
            for m in range(1, n + 1)
            if conj_inner(n, m, "+", shape) != conj_inner(n, m, "-", shape)
        ]
        out.append(Check("recurrence", f"<X+,conj X+> = <X-,conj X->, 1<=m<=n<={n_rel}, tau={shape.tau}", not bad, _first_failures(bad)))
    return out


def suite_dims(nmax: int = 5, shapes=None, **_) -> List[Check]:
    out = []
    for shape in _shapes(shapes, ["0", "1/4", "-1"]):
        for row in rank_dimension_report(nmax, shape):
            bad = [f"{name}: {got} != {want}" for name, (got, want) in row.items() if got != want]
            summary = ", ".join(f"{name}={got}" for name, (got, _) in row.items())
            out.append(Check("dims", f"n={row.n}, tau={shape.tau}", not bad, _first_failures(bad) or summary))
    return out


def suite_tables(shapes=None, **_) -> List[Check]:
    out = []
    for key, want in list(MONOGENIC_LOW.items()) + list(MONOGENIC_N3.items()):
        got = X_poly(*key)
        out.append(Check("tables", f"X{key}", got == want, "" if got == want else f"generated {got.pretty()}"))
    out.append(
        Check(
            "tables",
            "printed e2 of X(3,1,-) is not harmonic (stored entry corrected)",
            not X31_MINUS_E2_PRINTED.laplacian().is_zero(),
            f"Laplacian {X31_MINUS_E2_PRINTED.laplacian().pretty()}",
        )
    )
    for shape in _shapes(shapes, ["1/4", "-1/2"]):
        for (n, m, p), want in contragenic_low(shape).items():
            got = build_Z(ContragenicIndex(n, m, p), shape).qpoly
            label = f"Z({n},{m},{p or ''}) tau={shape.tau}"
            detail = ""
            if got != want:
                printed = build_Z(ContragenicIndex(n, m, p), shape, a=a_coeff_printed(n, m, shape)).qpoly
                detail = "reference entry equals the literal-a construction" if printed == want else "no match"
            out.append(Check("tables", label, got == want, detail))
    return out


def suite_dualpath(nmax: int = 8, shapes=None, points: int = 100, seed: int = 0, tol: float = 1e-9, **_) -> List[Check]:
    out = []
    for k, shape in enumerate(_shapes(shapes, ["1/4", "-1"])):
        if shape.tau == 0:
            continue
        pts = random_interior_points(shape, points, seed, stream=k)
        tau = float(shape.tau)
        worst = 0.0
        bad = []

        def record(name, err):
            nonlocal worst
            worst = max(worst, err)
            if not err <= tol:
                bad.append(f"{name}: {err:.2e}")

        for i in harmonic_indices(nmax):
            record(f"U{i.label}", relative_error(eval_basis_numeric("U", i, pts, shape), eval_poly(U_poly(i.n, i.m, i.parity), pts, tau)))
            record(f"V{i.label}", relative_error(eval_basis_numeric("V", i, pts, shape), eval_poly(V_poly(i.n, i.m, i.parity), pts, tau)))
        for i in monogenic_indices(nmax):
            record(f"X{i.label}", relative_error(eval_basis_numeric("X", i, pts, shape), eval_qpoly(X_poly(i.n, i.m, i.parity), pts, tau)))
        for i in contragenic_indices(nmax):
            record(i.label, relative_error(eval_basis_numeric("Z", i, pts, shape), eval_qpoly(build_Z(i, shape).qpoly, pts, tau)))
        out.append(Check("dualpath", f"U,V,X,Z n<={nmax}, tau={shape.tau}, {points} points", not bad, _first_failures(bad) or f"max relative error {worst:.2e}"))
    return out


def _random_basis_pool(shape: SpheroidShape, nmax: int = 3) -> List[tuple]:
    pool = [(f"V{i.label}", QPoly.scalar(V_poly(i.n, i.m, i.parity))) for i in harmonic_indices(nmax)]
    pool += [(f"X{i.label}", X_poly(i.n, i.m, i.parity)) for i in monogenic_indices(nmax)]
    pool += [(z.label, z.qpoly) for z in contragenic_basis(nmax, shape)]
    return pool


def suite_mc(samples: int = 1_000_000, seed: int = 0, shapes=None, pairs: int = 20, triples: int = 20, sigmas: float = 4.0, **_) -> List[Check]:
    out = []
    shape_list = _shapes(shapes, ["0", "1/4", "-1"])
    rng = random.Random(seed)
    stream = 0
    for shape in shape_list:
        bad = []
        for _ in range(triples):
            a, b, c = (rng.randrange(0, 5) for _ in range(3))
            exact = float(monomial_integral(a, b, c, shape))
            mono = ScalarPoly({(a, b, c, 0): 1})
            res = mc_inner_product(QPoly.scalar(mono), QPoly.scalar(ONE), shape, samples, seed, stream)
            stream += 1
            if abs(res.estimate - exact) > sigmas * res.stderr:
                bad.append(f"x^({a},{b},{c}): {res.estimate:.5g} vs {exact:.5g} (se {res.stderr:.2g})")
        out.append(Check("mc", f"monomial integrals, {triples} triples, tau={shape.tau}", not bad, _first_failures(bad)))
    bad = []
    for k in range(pairs):
        shape = shape_list[k % len(shape_list)]
        pool = _random_basis_pool(shape)
        (na, fa), (nb, fb) = rng.choice(pool), rng.choice(pool)
        exact = float(inner_product(fa, fb, shape))
        res = mc_inner_product(fa, fb, shape, samples, seed, stream)
        stream += 1
        if abs(res.estimate - exact) > sigmas * res.stderr:
            bad.append(f"<{na},{nb}> tau={shape.tau}: {res.estimate:.5g} vs {exact:.5g} (se {res.stderr:.2g})")
    out.append(Check("mc", f"inner products, {pairs} random pairs, {samples} samples", not bad, _first_failures(bad)))
    return out


def suite_spherical(nmax: int = 8, **_) -> List[Check]:
    bad = [i.label for i in harmonic_indices(nmax) if U_poly(i.n, i.m, i.parity).substitute_tau(0) != solid_harmonic(i.n, i.m, i.parity)]
    return [Check("spherical", f"U at tau=0 equals the solid spherical harmonic, n<={nmax}", not bad, _first_failures(bad))]


# ---------------------------------------------------------------------------
# random harmonic test inputs, built without the basis


def _pythagorean(rng: random.Random):
    s = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    d = 1 + s * s
    return (1 - s * s) / d, 2 * s / d


def _null_power(k: int, real, imag):
    """Re and Im of (real.x + i imag.x)^k for real, imag orthogonal of equal length."""
    lin_r = X0.scale(real[0]) + X1.scale(real[1]) + X2.scale(real[2])
    lin_i = X0.scale(imag[0]) + X1.scale(imag[1]) + X2.scale(imag[2])
    re, im = ONE, ZERO
    for _ in range(k):
        re, im = re * lin_r - im * lin_i, re * lin_i + im * lin_r
    return re, im


def random_harmonic_scalar(rng: random.Random, degree: int) -> ScalarPoly:
    out = ZERO
    for k in range(degree + 1):
        for _ in range(2):
            a, b = _pythagorean(rng)
            choice = rng.randrange(3)
            if choice == 0:
                real, imag = (1, 0, 0), (0, a, b)
            elif choice == 1:
                real, imag = (a, b, 0), (0, 0, 1)
            else:
                real, imag = (a, 0, b), (0, 1, 0)
            re, im = _null_power(k, real, imag)
            out = out + re.scale(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
            out = out + im.scale(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    return out


def random_harmonic_field(rng: random.Random, degree: int) -> QPoly:
    return QPoly(*(random_harmonic_scalar(rng, degree) for _ in range(3)))


def suite_decomposition(count: int = 50, nmax: int = 5, shapes=None, seed: int = 0, **_) -> List[Check]:
    out = []
    for k, shape in enumerate(_shapes(shapes, ["0", "1/4", "-1"])):
        rng = random.Random(seed * 1000 + k)
        amb = [y.qpoly for y in ambigenic_basis(nmax, shape)]
        failures = []
        for j in range(count):
            f = random_harmonic_field(rng, rng.randint(1, nmax))
            r = decompose(f, nmax, shape)
            if not r.residual.is_zero():
                failures.append(f"#{j}: nonzero residual")
            if (r.monogenic + r.antimonogenic + r.contragenic) != f.substitute_tau(shape):
                failures.append(f"#{j}: parts do not sum to input")
            if not fueter_apply(r.monogenic, "Dbar").is_zero():
                failures.append(f"#{j}: monogenic part not in ker Dbar")
            if not fueter_apply(r.antimonogenic, "D").is_zero():
                failures.append(f"#{j}: antimonogenic part not in ker D")
            if any(v != 0 for v in cross_inner([r.contragenic], amb, shape)[0]):
                failures.append(f"#{j}: contragenic part not orthogonal to ambigenic space")
        out.append(Check("decomposition", f"{count} random harmonic fields, degree<={nmax}, tau={shape.tau}", not failures, _first_failures(failures)))
    return out


def suite_shapes(pairs: int = 5, seed: int = 0, **_) -> List[Check]:
    rng = random.Random(seed)
    out = []
    done = 0
    while done < pairs:
        t1 = Fraction(rng.randint(-8, 7), 8)
        t2 = Fraction(rng.randint(-8, 7), 8)
        if t1 == t2:
            continue
        done += 1
        ok = shape_distinguishing_check(t1, t2)
        out.append(Check("shapes", f"Z(2,1,+) for tau={t1} not contragenic for tau={t2}", ok))
    return out


SUITES: Dict[str, Callable[..., List[Check]]] = {
    "harmonicity": suite_harmonicity,
    "monogenicity": suite_monogenicity,
    "orthogonality": suite_orthogonality,
    "norms": suite_norms,
    "recurrence": suite_recurrence,
    "dims": suite_dims,
    "tables": suite_tables,
    "dualpath": suite_dualpath,
    "mc": suite_mc,
    "spherical": suite_spherical,
    "decomposition": suite_decomposition,
    "shapes": suite_shapes,
}


def run_suite(name: str, **kwargs) -> List[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    kwargs = {k: v for k, v in kwargs.items() if v is not None}
    return SUITES[name](**kwargs)

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from contragenic.contragenics import ContragenicIndex, build_Z, contragenic_basis
from contragenic.exactcore import ONE, X0, X1, X2, QPoly, ScalarPoly, SpheroidShape, fueter_apply
from contragenic.harmonics import V_poly, harmonic_indices
from contragenic.integrate import (
    GramMatrix,
    NotHarmonicError,
    PiRational,
    cross_inner,
    decompose,
    exact_rank,
    gram,
    inner_product,
    monomial_integral,
    rank_dimension_report,
)
from contragenic.monogenics import X_poly, ambigenic_basis, monogenic_indices
from contragenic.numeval import mc_inner_product
from contragenic.verification import random_harmonic_field

from conftest import OBLATE, PROLATE, SPHERE, scalar_polys, taus

pi = lambda r: PiRational(Fraction(r))


def test_monomial_integral_examples():
    assert monomial_integral(0, 0, 0, SPHERE) == pi(Fraction(4, 3))
    for tau in (Fraction(1, 4), Fraction(-1), Fraction(1, 2)):
        assert monomial_integral(0, 0, 0, SpheroidShape(tau)) == pi(Fraction(4, 3) * (1 - tau))
    assert monomial_integral(2, 0, 0, SPHERE) == pi(Fraction(4, 15))
    assert monomial_integral(1, 2, 0, PROLATE) == pi(0)
    assert monomial_integral(0, 3, 2, OBLATE) == pi(0)


@pytest.mark.parametrize("shape", [SPHERE, PROLATE, OBLATE], ids=["sphere", "prolate", "oblate"])
@pytest.mark.parametrize("abc", [(0, 0, 0), (2, 0, 0), (0, 2, 2), (4, 2, 0), (2, 2, 2)])
def test_monomial_integral_against_monte_carlo(shape, abc):
    a, b, c = abc
    exact = float(monomial_integral(a, b, c, shape))
    mono = QPoly.scalar(ScalarPoly({(a, b, c, 0): 1}))
    res = mc_inner_product(mono, QPoly.scalar(ONE), shape, 200_000, seed=11)
    assert abs(res.estimate - exact) <= 4 * res.stderr


def test_inner_product_examples():
    assert inner_product(QPoly.scalar(ONE), QPoly.scalar(ONE), PROLATE) == pi(1)
    x10 = X_poly(1, 0, "+").substitute_tau(PROLATE)
    x11 = X_poly(1, 1, "+").substitute_tau(PROLATE)
    assert inner_product(x10, x11, PROLATE) == pi(0)
    with pytest.raises(ValueError):
        inner_product(QPoly(e3=X0), QPoly(e3=X0), PROLATE)


@settings(max_examples=40, deadline=None)
@given(scalar_polys(with_tau=False), scalar_polys(with_tau=False), scalar_polys(with_tau=False),
       scalar_polys(with_tau=False), taus, st.fractions(-3, 3, max_denominator=5))
def test_inner_product_bilinear_symmetric(f0, f1, g0, g1, tau, lam):
    shape = SpheroidShape(tau)
    f, g, h = QPoly(f0, f1), QPoly(g0, e2=g1), QPoly(f1, g0, f0)
    assert inner_product(f, g, shape) == inner_product(g, f, shape)
    assert inner_product(f.scale(lam) + h, g, shape) == inner_product(f, g, shape) * lam + inner_product(h, g, shape)
    if not f.is_zero():
        assert inner_product(f, f, shape).r > 0


@pytest.mark.parametrize("shape", [PROLATE, OBLATE], ids=["prolate", "oblate"])
def test_positivity_on_basis(shape):
    basis = [QPoly.scalar(V_poly(i.n, i.m, i.parity)) for i in harmonic_indices(6)]
    basis += [X_poly(i.n, i.m, i.parity) for i in monogenic_indices(6)]
    basis += [y.qpoly for y in ambigenic_basis(6, shape)]
    basis += [z.qpoly for z in contragenic_basis(6, shape)]
    basis = [b.substitute_tau(shape) for b in basis]
    rows = cross_inner(basis, basis, shape)
    assert all(rows[i][i] > 0 for i in range(len(basis)))


def test_gram_examples():
    vs = [QPoly.scalar(V_poly(i.n, i.m, i.parity)) for i in harmonic_indices(3)]
    g = gram(vs, PROLATE)
    assert g.is_symmetric() and g.is_diagonal() and g.rank() == 16
    xs = [X_poly(i.n, i.m, i.parity) for i in monogenic_indices(3)]
    assert gram(xs, OBLATE).is_diagonal()
    x2 = [X_poly(i.n, i.m, i.parity) for i in monogenic_indices(2)]
    both = x2 + [x.conj() for x in x2]
    assert gram(both, PROLATE).rank() == 23


def test_gram_csv():
    g = gram([QPoly.scalar(ONE), QPoly.scalar(X0)], PROLATE, labels=["a", "b"])
    lines = g.to_csv().strip().splitlines()
    assert lines[0].split(",") == ["", "a", "b"]
    assert lines[1].split(",")[1] == "1/1"
    assert lines[1].split(",")[2] == "0/1"


def test_exact_rank():
    assert exact_rank([]) == 0
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[Fraction(1, 3), 1, 0], [0, 1, 1], [Fraction(1, 3), 2, 1]]) == 2
    assert exact_rank([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 3


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_exact_rank_transpose_and_dependency(rows):
    cols = [list(c) for c in zip(*rows)]
    r = exact_rank(rows)
    assert r == exact_rank(cols)
    assert exact_rank(rows + [[a + b for a, b in zip(rows[0], rows[-1])]]) == r


def _check_parts(res, f):
    shape = res.shape
    assert res.residual.is_zero()
    assert res.monogenic + res.antimonogenic + res.contragenic == f.substitute_tau(shape)
    assert fueter_apply(res.monogenic, "Dbar").is_zero()
    assert fueter_apply(res.antimonogenic, "D").is_zero()
    amb = [y.qpoly for y in ambigenic_basis(res.nmax, shape)]
    assert all(v == 0 for v in cross_inner([res.contragenic], amb, shape)[0])


def test_decompose_basis_elements():
    f = X_poly(2, 0, "+")
    res = decompose(f, 2, PROLATE)
    assert res.monogenic == f.substitute_tau(PROLATE)
    assert res.antimonogenic.is_zero() and res.contragenic.is_zero()
    z = build_Z(ContragenicIndex(1, 0), PROLATE).qpoly
    res = decompose(z, 2, PROLATE)
    assert res.contragenic == z and res.monogenic.is_zero() and res.antimonogenic.is_zero()


def test_decompose_x2_e1():
    f = QPoly(e1=X2)
    res = decompose(f, 1, PROLATE)
    coeffs = dict(res.coefficients)
    assert coeffs["Z[1,0]"] == Fraction(-1, 2)
    assert not res.contragenic.is_zero()
    assert not (res.monogenic + res.antimonogenic).is_zero()
    _check_parts(res, f)


def test_decompose_linearity():
    x = X_poly(1, 0, "+")
    z = build_Z(ContragenicIndex(1, 0), OBLATE).qpoly
    res = decompose(x + x.conj() + z, 1, OBLATE)
    assert res.monogenic == x
    assert res.antimonogenic == x.conj()
    assert res.contragenic == z


def test_decompose_rejects_non_harmonic():
    with pytest.raises(NotHarmonicError) as err:
        decompose(QPoly(e1=X1 * X1), 2, PROLATE)
    assert err.value.component == 1
    assert err.value.laplacian == ONE.scale(2)
    with pytest.raises(ValueError):
        decompose(QPoly(X1 * X2 * X0), 2, PROLATE)


@pytest.mark.parametrize("shape", [SPHERE, PROLATE, OBLATE], ids=["sphere", "prolate", "oblate"])
@pytest.mark.parametrize("seed", range(4))
def test_decompose_random_fields(shape, seed):
    rng = random.Random(seed)
    f = random_harmonic_field(rng, 4)
    res = decompose(f, 4, shape)
    _check_parts(res, f)


def test_decompose_json():
    res = decompose(QPoly(e1=X2), 1, PROLATE)
    data = res.to_json()
    assert set(data["parts"]) == {"monogenic", "antimonogenic", "contragenic", "residual"}
    assert data["shape"] == "1/4"


@pytest.mark.parametrize("shape", [SPHERE, PROLATE, OBLATE], ids=["sphere", "prolate", "oblate"])
def test_dimension_report(shape):
    rows = rank_dimension_report(3, shape)
    assert all(r.ok() for r in rows)
    assert rows[0].ambigenic == (3, 3) and rows[0].contragenic == (0, 0)
    assert rows[1].contragenic[0] == 1
    assert rows[2].har_r3[0] == 27 and rows[2].ambigenic[0] == 23 and rows[2].contragenic[0] == 4
    with pytest.raises(ValueError):
        rank_dimension_report(9, shape)

from fractions import Fraction

import pytest
from hypothesis import given, settings

from contragenic.exactcore import (
    ONE,
    TAU,
    X0,
    X1,
    X2,
    ZERO,
    CapacityError,
    QPoly,
    ScalarPoly,
    ShapeKind,
    SpheroidShape,
    UniPoly,
    eval_float,
    fueter_apply,
    laplacian,
    partial_derivative,
    poly_arith,
    substitute_tau,
)

from conftest import scalar_polys

U20 = X0 * X0 - (X1 * X1 + X2 * X2).scale(Fraction(1, 2)) - TAU.scale(Fraction(1, 3))


def test_arith_examples():
    assert poly_arith(X0, X0, "add") == X0.scale(2)
    assert poly_arith(X1, X1, "mul") == X1 ** 2
    assert poly_arith(X0 * X0, UniPoly([0, 1]), "scale") == TAU * X0 * X0


def test_partial_derivative_examples():
    assert partial_derivative(U20, 0) == X0.scale(2)
    assert partial_derivative(ONE.scale(7), 1).is_zero()
    assert partial_derivative(X1 * X2, 2) == X1


def test_laplacian_examples():
    assert laplacian(U20).is_zero()
    assert laplacian(X0).is_zero()
    assert laplacian(X0 * X0) == ONE.scale(2)


def test_substitute_tau_examples():
    p = X0 * X0 * 3 - TAU.scale(Fraction(3, 5))
    assert substitute_tau(p, SpheroidShape(Fraction(0))) == X0 * X0 * 3
    assert substitute_tau(p, SpheroidShape(Fraction(1, 4))) == X0 * X0 * 3 - ONE.scale(Fraction(3, 20))
    q = X0 * X0 - TAU.scale(Fraction(1, 3))
    assert substitute_tau(q, SpheroidShape(Fraction(-1))) == X0 * X0 + ONE.scale(Fraction(1, 3))


def test_eval_float_examples():
    assert eval_float(X0, (0.5, 0, 0)) == pytest.approx(0.5)
    assert eval_float(U20, (1.0, 0, 0), 0.0) == pytest.approx(1.0)
    assert eval_float(X0.scale(2), (0.3, 0.1, 0.2)) == pytest.approx(0.6)


def test_fueter_examples():
    x10 = QPoly(X0.scale(2), X1, X2)
    assert fueter_apply(x10, "Dbar").is_zero()
    assert not fueter_apply(x10, "D").is_zero()
    assert fueter_apply(QPoly.scalar(ONE), "D").is_zero()
    assert fueter_apply(QPoly.scalar(ONE), "Dbar").is_zero()
    dd = fueter_apply(fueter_apply(QPoly.scalar(X0 * X0), "Dbar"), "D")
    assert dd.e0 == ONE.scale(2)


def test_fueter_rejects_non_r3():
    with pytest.raises(ValueError):
        fueter_apply(QPoly(e3=X0), "D")


def test_capacity_error():
    with pytest.raises(CapacityError):
        X0 ** 65


def test_zero_poly_conventions():
    assert ZERO.is_zero() and ZERO.degree == -1
    assert ScalarPoly({(1, 0, 0, 0): 0}).is_zero()


def test_shape_kinds():
    assert SpheroidShape(Fraction(1, 4)).kind is ShapeKind.PROLATE
    assert SpheroidShape(Fraction(0)).kind is ShapeKind.SPHERE
    assert SpheroidShape(Fraction(-1)).kind is ShapeKind.OBLATE
    assert SpheroidShape(Fraction(-1)).wsq == 2
    with pytest.raises(ValueError):
        SpheroidShape(Fraction(1))


def test_shape_parse():
    assert SpheroidShape.parse("sphere").tau == 0
    assert SpheroidShape.parse("-1/2").tau == Fraction(-1, 2)
    for bad in ("0.25", "1e-1", "2"):
        with pytest.raises(ValueError):
            SpheroidShape.parse(bad)


def test_json_round_trip():
    q = QPoly(U20, X0 * X1 * 3, TAU * X2)
    assert QPoly.from_json(q.to_json()) == q
    data = U20.to_json()
    assert all(isinstance(s, str) for term in data for pair in term["tau"] for s in pair)
    assert ScalarPoly.from_json(data) == U20


@settings(max_examples=60, deadline=None)
@given(scalar_polys(), scalar_polys(), scalar_polys())
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p
    assert (p - p).is_zero()


@settings(max_examples=60, deadline=None)
@given(scalar_polys(max_degree=4))
def test_laplacian_factorises_through_fueter(p):
    q = fueter_apply(fueter_apply(QPoly.scalar(p), "Dbar"), "D")
    assert q.e0 == laplacian(p)


@settings(max_examples=60, deadline=None)
@given(scalar_polys(), scalar_polys(), scalar_polys())
def test_d_plus_dbar_is_twice_d0(f0, f1, f2):
    q = QPoly(f0, f1, f2)
    total = fueter_apply(q, "D") + fueter_apply(q, "Dbar")
    assert total == QPoly(f0.diff(0), f1.diff(0), f2.diff(0)).scale(2)


@settings(max_examples=40, deadline=None)
@given(scalar_polys(), scalar_polys(), scalar_polys(), scalar_polys())
def test_conj_involution(a, b, c, d):
    q = QPoly(a, b, c, d)
    assert q.conj().conj() == q
    assert q.conj() == QPoly(a, -b, -c, -d)

import random
from fractions import Fraction

import pytest

from contragenic.exactcore import SpheroidShape, UniPoly
from contragenic.legendre import (
    I_integral,
    I_scaled,
    I_symbolic,
    _I_antiderivative,
    double_factorial,
    gamma_coeff,
    legendre_core,
    legendre_decomp,
    legendre_eval,
)

T = UniPoly([0, 1])
ONE_MINUS_T2 = UniPoly([1, 0, -1])


def test_double_factorial():
    assert double_factorial(5) == 15
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(6) == 48
    with pytest.raises(ValueError):
        double_factorial(-2)


def test_gamma_coeff():
    assert gamma_coeff(0, 0) == 1
    assert gamma_coeff(2, 0) == Fraction(2, 3)
    assert gamma_coeff(2, 1) == Fraction(1, 3)
    with pytest.raises(ValueError):
        gamma_coeff(1, 2)
    assert all(gamma_coeff(n, m) > 0 for n in range(12) for m in range(n + 1))


def test_decomp_examples():
    assert legendre_decomp(1, 0).core == T
    assert legendre_decomp(2, 0).core == UniPoly([Fraction(-1, 2), 0, Fraction(3, 2)])
    assert legendre_decomp(1, 1).core == UniPoly([1])
    with pytest.raises(ValueError):
        legendre_decomp(2, 3)


def test_eval_examples():
    assert legendre_eval(2, 0, 1.0) == pytest.approx(1.0)
    assert legendre_eval(1, 0, 0.5) == pytest.approx(0.5)
    v = legendre_eval(2, 1, 2.0)
    assert abs(v) == pytest.approx(6 * 3 ** 0.5)
    assert v == pytest.approx(legendre_decomp(2, 1)(2.0))


@pytest.mark.parametrize("n", range(16))
def test_core_parity(n):
    for m in range(n + 1):
        c = legendre_core(n, m)
        assert c.compose_neg() == c * (-1) ** (n - m)


@pytest.mark.parametrize("n", range(1, 16))
def test_three_term_recurrence_on_cores(n):
    for m in range(n):
        lhs = legendre_core(n + 1, m) * (n - m + 1)
        rhs = T * legendre_core(n, m) * (2 * n + 1)
        if m <= n - 1:
            rhs = rhs - legendre_core(n - 1, m) * (n + m)
        assert lhs == rhs


@pytest.mark.parametrize("n", range(15))
def test_derivative_recurrence_on_cores(n):
    # (1-t^2) P'_{n+1} = (n+m+1) P_n - (n+1) t P_{n+1}; the branch factor
    # contributes -m t core on either side of t = 1.
    for m in range(n + 1):
        c = legendre_core(n + 1, m)
        lhs = ONE_MINUS_T2 * c.derivative() - T * c * m
        rhs = legendre_core(n, m) * (n + m + 1) - T * c * (n + 1)
        assert lhs == rhs


@pytest.mark.parametrize("n", range(1, 10))
@pytest.mark.parametrize("t", [0.3, -0.7, 1.5, 3.0])
def test_derivative_recurrence_numeric_both_branches(n, t):
    h = 1e-6
    for m in range(n + 1):
        d = (legendre_eval(n + 1, m, t + h) - legendre_eval(n + 1, m, t - h)) / (2 * h)
        lhs = (1 - t * t) * d
        rhs = (n + m + 1) * legendre_eval(n, m, t) - (n + 1) * t * legendre_eval(n + 1, m, t)
        assert lhs == pytest.approx(rhs, rel=1e-5, abs=1e-5 * max(1.0, abs(rhs)))


@pytest.mark.parametrize("n", range(13))
def test_leading_coefficient_is_inverse_gamma(n):
    for m in range(n + 1):
        c = legendre_core(n, m)
        assert c[c.degree] == 1 / gamma_coeff(n, m)


@pytest.mark.parametrize("n", range(11))
def test_antiderivative_vanishes_at_one(n):
    for m in range(n + 1):
        assert _I_antiderivative(n, m)(Fraction(1)) == 0


def test_I_examples():
    assert I_symbolic(0, 0) == UniPoly([Fraction(1, 2), Fraction(-1, 2)])
    assert I_scaled(0, 0, SpheroidShape(Fraction(1, 4))) == Fraction(3, 8)
    assert I_integral(0, 0, SpheroidShape(Fraction(1, 4))) == 3
    assert _I_antiderivative(1, 0) == UniPoly([0, 0, 0, Fraction(-1, 2), 0, Fraction(1, 2)])
    for n in range(6):
        for m in range(n + 1):
            F = _I_antiderivative(n, m)
            assert I_symbolic(n, m)(0) == F[F.degree]


def test_I_integral_matches_scaled_form():
    shape = SpheroidShape(Fraction(4, 9))
    mu = Fraction(2, 3)
    for n in range(5):
        for m in range(n + 1):
            assert I_integral(n, m, shape) * mu ** (2 * n + 3) == I_scaled(n, m, shape)


def test_I_integral_domain():
    with pytest.raises(ValueError):
        I_integral(1, 0, SpheroidShape(Fraction(-1)))
    with pytest.raises(ValueError):
        I_integral(1, 0, SpheroidShape(Fraction(1, 2)))
    with pytest.raises(ValueError):
        I_integral(1, 2, SpheroidShape(Fraction(1, 4)))


@pytest.mark.parametrize("n", range(16))
def test_eval_matches_decomposition(n):
    rng = random.Random(n)
    for m in range(n + 1):
        d = legendre_decomp(n, m)
        for lo, hi in ((-0.999, 0.999), (1.0, 3.0)):
            pts = [rng.uniform(lo, hi) for _ in range(100)]
            ref = [d(t) for t in pts]
            scale = max(abs(r) for r in ref)
            for t, r in zip(pts, ref):
                assert abs(legendre_eval(n, m, t) - r) <= 1e-10 * max(abs(r), scale * 1e-3, 1e-300)

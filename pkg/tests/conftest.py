from fractions import Fraction

import pytest
from hypothesis import strategies as st

from contragenic.exactcore import ScalarPoly, SpheroidShape

PROLATE = SpheroidShape(Fraction(1, 4))
OBLATE = SpheroidShape(Fraction(-1))
SPHERE = SpheroidShape(Fraction(0))
SHAPES = [SPHERE, PROLATE, OBLATE]


@pytest.fixture(params=SHAPES, ids=["sphere", "prolate", "oblate"])
def shape(request):
    return request.param


@pytest.fixture(params=[PROLATE, OBLATE], ids=["prolate", "oblate"])
def curved_shape(request):
    return request.param


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
taus = st.fractions(min_value=-3, max_value=Fraction(9, 10), max_denominator=12)


@st.composite
def scalar_polys(draw, max_degree=3, max_terms=5, with_tau=True):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        a = draw(st.integers(0, max_degree))
        b = draw(st.integers(0, max_degree - a))
        c = draw(st.integers(0, max_degree - a - b))
        k = draw(st.integers(0, 2)) if with_tau else 0
        terms[(a, b, c, k)] = draw(small_fractions)
    return ScalarPoly(terms)

"""Reference low-degree basis polynomials, transcribed as exact polynomials.

mu^2 is written as T.  MONOGENIC_LOW holds X for n <= 2 and MONOGENIC_N3 the
degree 3 entries; one degree 3 entry is stored corrected, with the printed
form kept alongside so a test can show it is not harmonic.  contragenic_low
gives Z for n <= 3 at a fixed shape.
"""
from fractions import Fraction as Fr

from .exactcore import ONE, TAU as T, X0 as x0, X1 as x1, X2 as x2, ZERO, QPoly, SpheroidShape


def Q(e0=ZERO, e1=ZERO, e2=ZERO):
    return QPoly(e0, e1, e2)


def h(p):
    return p.scale(Fr(1, 2))


MONOGENIC_LOW = {
    (0, 0, "+"): Q(ONE),
    (0, 1, "+"): Q(e1=ONE),
    (0, 1, "-"): Q(e2=ONE),
    (1, 0, "+"): Q(x0 * 2, x1, x2),
    (1, 1, "+"): Q(x1 * -3, x0 * 3),
    (1, 1, "-"): Q(x2 * -3, e2=x0 * 3),
    (1, 2, "+"): Q(e1=x1 * -6, e2=x2 * 6),
    (1, 2, "-"): Q(e1=x2 * -6, e2=x1 * -6),
    (2, 0, "+"): Q(x0 * x0 * 3 - h(x1 * x1 * 3) - h(x2 * x2 * 3) - T.scale(Fr(3, 5)), x0 * x1 * 3, x0 * x2 * 3),
    (2, 1, "+"): Q(x0 * x1 * -12, x0 * x0 * 6 - h(x1 * x1 * 9) - h(x2 * x2 * 3) - T.scale(Fr(6, 5)), x1 * x2 * -3),
    (2, 1, "-"): Q(x0 * x2 * -12, x1 * x2 * -3, x0 * x0 * 6 - h(x1 * x1 * 3) - h(x2 * x2 * 9) - T.scale(Fr(6, 5))),
    (2, 2, "+"): Q(x1 * x1 * 15 - x2 * x2 * 15, x0 * x1 * -30, x0 * x2 * 30),
    (2, 2, "-"): Q(x1 * x2 * 30, x0 * x2 * -30, x0 * x1 * -30),
    (2, 3, "+"): Q(e1=x1 * x1 * 45 - x2 * x2 * 45, e2=x1 * x2 * -90),
    (2, 3, "-"): Q(e1=x1 * x2 * 90, e2=x1 * x1 * 45 - x2 * x2 * 45),
}

_x31m_e2_tail = -h(x0 * x1 * x1 * 15) - h(x0 * x2 * x2 * 45) - (x0 * T).scale(Fr(30, 7))
X31_MINUS_E2_PRINTED = x0**3 * 5 + _x31m_e2_tail
X31_MINUS_E2_CORRECTED = x0**3 * 10 + _x31m_e2_tail

MONOGENIC_N3 = {
    (3, 0, "+"): Q(
        x0**3 * 4 - x0 * x1 * x1 * 6 - x0 * x2 * x2 * 6 - (x0 * T).scale(Fr(12, 7)),
        x0 * x0 * x1 * 6 - h(x1**3 * 3) - h(x1 * x2 * x2 * 3) - (x1 * T).scale(Fr(6, 7)),
        x0 * x0 * x2 * 6 - h(x1 * x1 * x2 * 3) - h(x2**3 * 3) - (x2 * T).scale(Fr(6, 7)),
    ),
    (3, 1, "+"): Q(
        x0 * x0 * x1 * -30 + h(x1**3 * 15) + h(x1 * x2 * x2 * 15) + (x1 * T).scale(Fr(30, 7)),
        x0**3 * 10 - h(x0 * x1 * x1 * 45) - h(x0 * x2 * x2 * 15) - (x0 * T).scale(Fr(30, 7)),
        x0 * x1 * x2 * -15,
    ),
    (3, 1, "-"): Q(
        x0 * x0 * x2 * -30 + h(x1 * x1 * x2 * 15) + h(x2**3 * 15) + (x2 * T).scale(Fr(30, 7)),
        x0 * x1 * x2 * -15,
        X31_MINUS_E2_CORRECTED,
    ),
    (3, 2, "+"): Q(
        x0 * x1 * x1 * 90 - x0 * x2 * x2 * 90,
        x0 * x0 * x1 * -90 + x1**3 * 30 + (x1 * T).scale(Fr(90, 7)),
        x0 * x0 * x2 * 90 - x2**3 * 30 - (x2 * T).scale(Fr(90, 7)),
    ),
    (3, 2, "-"): Q(
        x0 * x1 * x2 * 180,
        x0 * x0 * x2 * -90 + x1 * x1 * x2 * 45 + x2**3 * 15 + (x2 * T).scale(Fr(90, 7)),
        x0 * x0 * x1 * -90 + x1**3 * 15 + x1 * x2 * x2 * 45 + (x1 * T).scale(Fr(90, 7)),
    ),
    (3, 3, "+"): Q(
        x1**3 * -105 + x1 * x2 * x2 * 315,
        x0 * x1 * x1 * 315 - x0 * x2 * x2 * 315,
        x0 * x1 * x2 * -630,
    ),
    (3, 3, "-"): Q(
        x1 * x1 * x2 * -315 + x2**3 * 105,
        x0 * x1 * x2 * 630,
        x0 * x1 * x1 * 315 - x0 * x2 * x2 * 315,
    ),
    (3, 4, "+"): Q(e1=x1**3 * -420 + x1 * x2 * x2 * 1260, e2=x1 * x1 * x2 * 1260 - x2**3 * 420),
    (3, 4, "-"): Q(e1=x1 * x1 * x2 * -1260 + x2**3 * 420, e2=x1**3 * -420 + x1 * x2 * x2 * 1260),
}


def contragenic_low(shape: SpheroidShape):
    """Contragenic entries at a fixed shape; the rational prefactors depend on mu^2."""
    t = shape.tau
    sq = (T - ONE) * (T - ONE)

    def at(p):
        return p.substitute_tau(shape)

    z21_plus_e2 = (
        x2 * x2 * 25 - T * 2 - x2 * x2 * T * 10 + T * T * 4 + x2 * x2 * T * T - T**3 * 2
        + x0 * x0 * sq * 10 + x1 * x1 * (ONE * -35 + T * 30 - T * T * 11)
    )
    z21_minus_e1 = (
        x2 * x2 * -35 - T * 2 + x2 * x2 * T * 30 + T * T * 4 - x2 * x2 * T * T * 11 - T**3 * 2
        + x1 * x1 * (T - ONE * 5) * (T - ONE * 5) + x0 * x0 * sq * 10
    )
    k21 = Fr(3) / (30 - 20 * t + 6 * t * t)
    cubic = x0 * x0 * -28 + x1 * x1 * 7 + x2 * x2 * 7 + T * 4
    z31_plus_e2 = x0 * (
        x2 * x2 * 49 - T * 6 - x2 * x2 * T * 42 + T * T * 12 + x2 * x2 * T * T * 9 - T**3 * 6
        + x0 * x0 * sq * 14 + x1 * x1 * (ONE * -91 + T * 126 - T * T * 51)
    )
    z31_minus_e1 = x0 * (
        x2 * x2 * -91 - T * 6 + x2 * x2 * T * 126 + T * T * 12 - x2 * x2 * T * T * 51 - T**3 * 6
        + x1 * x1 * (ONE * 7 - T * 3) * (ONE * 7 - T * 3) + x0 * x0 * sq * 14
    )
    k31 = Fr(15) / (70 - 84 * t + 30 * t * t)
    k32 = Fr(30) / (35 - 14 * t + 3 * t * t)
    z32_plus_e1 = x2 * (
        x2 * x2 * -21 - T * 2 + x2 * x2 * T * 14 + T * T * 4 - x2 * x2 * T * T * 5 - T**3 * 2
        + x1 * x1 * (T - ONE * 7) * (T - ONE * 7) + x0 * x0 * sq * 14
    )
    z32_plus_e2 = x1 * (
        x2 * x2 * 49 - T * 2 - x2 * x2 * T * 14 + T * T * 4 + x2 * x2 * T * T - T**3 * 2
        + x0 * x0 * sq * 14 + x1 * x1 * (ONE * -21 + T * 14 - T * T * 5)
    )
    z32_minus_e1 = x1 * (
        x2 * x2 * 28 + T - x2 * x2 * T * 14 - T * T * 2 + x2 * x2 * T * T * 4 + T**3
        - x0 * x0 * sq * 7 + x1 * x1 * (T * T - ONE * 7)
    )
    z32_minus_e2 = x2 * (
        x2 * x2 * -7 + T - T * T * 2 + x2 * x2 * T * T + T**3
        - x0 * x0 * sq * 7 + x1 * x1 * (ONE * 14 - T * 7 + T * T * 2) * 2
    )
    return {
        (1, 0, None): Q(e1=-x2, e2=x1),
        (2, 0, None): Q(e1=x0 * x2 * -3, e2=x0 * x1 * 3),
        (2, 1, "+"): Q(e1=x1 * x2 * 6, e2=at(z21_plus_e2).scale(k21)),
        (2, 1, "-"): Q(e1=at(z21_minus_e1).scale(k21), e2=x1 * x2 * 6),
        (3, 0, None): Q(e1=(x2 * cubic).scale(Fr(3, 14)), e2=(x1 * cubic).scale(Fr(-3, 14))).substitute_tau(shape),
        (3, 1, "+"): Q(e1=x0 * x1 * x2 * 30, e2=at(z31_plus_e2).scale(k31)),
        (3, 1, "-"): Q(e1=at(z31_minus_e1).scale(k31), e2=x0 * x1 * x2 * 30),
        (3, 2, "+"): Q(e1=at(z32_plus_e1).scale(-k32), e2=at(z32_plus_e2).scale(-k32)),
        (3, 2, "-"): Q(e1=at(z32_minus_e1).scale(2 * k32), e2=at(z32_minus_e2).scale(-2 * k32)),
    }

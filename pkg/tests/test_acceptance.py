"""The ten acceptance criteria, each at its stated size and tolerance.

Every criterion prints one PASS/FAIL line.  Run directly
(`python tests/test_acceptance.py`) for the summary without pytest.
"""
import sys
import time

import pytest

from contragenic.exactcore import QPoly, SpheroidShape
from contragenic.harmonics import V_poly, harmonic_indices, sigma_coeff
from contragenic.integrate import inner_product
from contragenic.legendre import I_symbolic
from contragenic.monogenics import X_poly
from contragenic.reference_tables import X31_MINUS_E2_PRINTED
from contragenic.verification import Check, run_suite

SHAPES_3 = ["0", "1/4", "-1"]


def _printed_x31_entry():
    # The suite compares against the harmonic (corrected) entry; the literal
    # printed entry is checked here as well so the criterion stays literal.
    got = X_poly(3, 1, "-").e2
    ok = got == X31_MINUS_E2_PRINTED
    return [Check("tables", "X(3,1,-) e2 against the literal printed entry", ok,
                  "" if ok else f"generated {got.pretty()}; printed entry has Laplacian {X31_MINUS_E2_PRINTED.laplacian().pretty()}")]


def _printed_v_norm(nmax=5, shapes=("1/4", "-1")):
    # The library's V_norm_sq carries the corrected constant; this applies the
    # constant exactly as printed (2^(n+1)) and reports the ratio where it misses.
    out = []
    for text in shapes:
        shape = SpheroidShape.parse(text)
        ratios, bad = {}, 0
        for i in harmonic_indices(nmax):
            v = QPoly.scalar(V_poly(i.n, i.m, i.parity))
            exact = inner_product(v, v, shape).r
            printed = (2 if i.m == 0 else 1) * sigma_coeff(i.n, i.m) * I_symbolic(i.n, i.m)(shape.tau)
            if printed != exact:
                ratios.setdefault(i.n, set()).add(printed / exact)
                bad += 1
        detail = "" if not ratios else f"mismatch at {bad} indices; printed/exact by degree: " + ", ".join(
            f"n={n}: {'/'.join(str(r) for r in sorted(rs))}" for n, rs in sorted(ratios.items())
        )
        out.append(Check("norms", f"||V||^2 with the printed constant, n<={nmax}, tau={shape.tau}", not ratios, detail))
    return out


CRITERIA = {
    1: ("table regression (X for n<=3 tau-symbolic, Z at tau=1/4,-1/2)",
        lambda: run_suite("tables", shapes=["1/4", "-1/2"]) + _printed_x31_entry()),
    2: ("harmonicity and monogenicity up to n=8",
        lambda: run_suite("harmonicity", nmax=8, shapes=SHAPES_3) + run_suite("monogenicity", nmax=8)),
    3: ("exact Gram diagonality of V, X, ambigenic+Z, n<=6, tau in {0,1/4,-1}",
        lambda: run_suite("orthogonality", nmax=6, shapes=SHAPES_3)),
    4: ("norm formulas vs exact integration, n<=5, tau in {1/4,-1}; volume",
        lambda: run_suite("norms", nmax=5, shapes=["1/4", "-1"]) + _printed_v_norm()),
    5: ("recurrence, order -1 relation, conjugate-pairing equality",
        lambda: run_suite("recurrence", nmax=8, shapes=SHAPES_3)),
    6: ("dimension table from Gram ranks, n<=5, tau in {0,1/4,-1}",
        lambda: run_suite("dims", nmax=5, shapes=SHAPES_3)),
    7: ("spherical embedding, n<=8",
        lambda: run_suite("spherical", nmax=8)),
    8: ("decomposition round trip, 50 fields per shape, degree<=5",
        lambda: run_suite("decomposition", count=50, nmax=5, shapes=SHAPES_3)),
    9: ("dual-path numerics (1e-9, 100 points, n<=8) and Monte Carlo (1e6 samples, 4 sigma, 20 pairs)",
        lambda: run_suite("dualpath", nmax=8, points=100, tol=1e-9, shapes=["1/4", "-1"])
        + run_suite("mc", samples=1_000_000, pairs=20, sigmas=4.0, shapes=SHAPES_3)),
    10: ("shape dependence, 5 random pairs",
         lambda: run_suite("shapes", pairs=5)),
}


def evaluate(number):
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    checks = fn()
    elapsed = time.perf_counter() - start
    failed = [c for c in checks if not c.passed]
    status = "PASS" if checks and not failed else "FAIL"
    line = f"{status} criterion {number}: {title} [{len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.1f}s]"
    return line, failed


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    line, failed = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
        for c in failed:
            print(f"    failed: {c.name} -- {c.detail}")
    assert not failed, "; ".join(f"{c.name}: {c.detail}" for c in failed)


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for line, _ in results:
        print(line)
    sys.exit(0 if all(not f for _, f in results) else 1)

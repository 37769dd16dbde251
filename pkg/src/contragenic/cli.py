"""Command-line interface.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from .exactcore import CapacityError, QPoly, ScalarPoly, SpheroidShape

NMAX_CAP = 10
FAMILIES = ("U", "V", "X", "Y", "Z")
SYMBOLIC_FAMILIES = ("U", "V", "X")


class UsageError(Exception):
    pass


def _shape(text: Optional[str], allow_sym: bool = False):
    if text is None:
        return None
    if text == "sym":
        if not allow_sym:
            raise UsageError("'sym' is only available for the U, V and X families")
        return "sym"
    try:
        return SpheroidShape.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _nmax(value: int) -> int:
    if value < 0 or value > NMAX_CAP:
        raise UsageError(f"--nmax must be between 0 and {NMAX_CAP}")
    return value


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _parse_index(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (2, 3):
        raise UsageError(f"index must look like n,m or n,m,+ ; got {text!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise UsageError(f"bad index {text!r}") from exc
    parity = parts[2] if len(parts) == 3 else None
    return n, m, parity


def _default_parity(family: str, m: int, parity):
    """Z[n,0] has no parity; everything else defaults to '+'."""
    if parity is None and not (family == "Z" and m == 0):
        return "+"
    return parity


# ---------------------------------------------------------------------------
# basis generation


def _family_elements(family: str, nmax: int, shape):
    from .contragenics import contragenic_basis
    from .harmonics import build_U, build_V, harmonic_indices
    from .monogenics import ambigenic_basis, build_X, monogenic_indices

    if family in ("U", "V"):
        build = build_U if family == "U" else build_V
        elems = [build(i.n, i.m, i.parity) for i in harmonic_indices(nmax)]
        polys = [QPoly.scalar(e.poly) for e in elems]
        meta = [(e.index.n, e.index.m, e.index.parity) for e in elems]
    elif family == "X":
        elems = [build_X(i) for i in monogenic_indices(nmax)]
        polys = [e.qpoly for e in elems]
        meta = [(e.index.n, e.index.m, e.index.parity) for e in elems]
    elif family == "Y":
        elems = ambigenic_basis(nmax, shape)
        polys = [e.qpoly for e in elems]
        meta = [(e.n, e.m, e.kind) for e in elems]
    else:
        elems = contragenic_basis(nmax, shape)
        polys = [e.qpoly for e in elems]
        meta = [(e.index.n, e.index.m, e.index.parity) for e in elems]
    if shape != "sym":
        polys = [p.substitute_tau(shape) for p in polys]
    return elems, polys, meta


def cmd_gen_basis(args) -> int:
    family = (args.family_opt or args.family or "").upper()
    if family not in FAMILIES:
        raise UsageError(f"family must be one of {', '.join(FAMILIES)}")
    nmax = _nmax(args.nmax)
    default = "sym" if family in SYMBOLIC_FAMILIES else None
    shape = _shape(args.shape or default, allow_sym=family in SYMBOLIC_FAMILIES)
    if shape is None:
        raise UsageError(f"family {family} lives at a fixed shape; pass --shape")
    elems, polys, meta = _family_elements(family, nmax, shape)
    fmt = "pretty" if args.pretty else args.format
    if fmt == "pretty":
        lines = []
        for (n, m, p), q in zip(meta, polys):
            tag = f"{family}[{n},{m}{',' + p if p else ''}]"
            body = q.e0.pretty() if family in ("U", "V") else q.pretty()
            lines.append(f"{tag} = {body}")
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    if fmt != "json":
        raise UsageError("gen-basis supports --format json or pretty")
    records = []
    for e, q in zip(elems, polys):
        rec = e.to_json()
        rec["poly"] = q.e0.to_json() if family in ("U", "V") else q.to_json()
        records.append(rec)
    payload = {"family": family, "nmax": nmax, "shape": "sym" if shape == "sym" else str(shape.tau), "elements": records}
    _emit(_dump(payload), args.out)
    return 0


# ---------------------------------------------------------------------------
# verification


def cmd_verify(args) -> int:
    from .verification import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    shapes = None
    if args.shapes:
        shapes = [_shape(s.strip()) for s in args.shapes.split(",")]
    opts = {"shapes": shapes, "seed": args.seed, "samples": args.samples}
    if args.nmax is not None:
        opts["nmax"] = _nmax(args.nmax)
    results = []
    for name in names:
        results.extend(run_suite(name, **opts))
    ok = all(c.passed for c in results)
    if args.format == "json":
        _emit(_dump({"passed": ok, "checks": [c.to_json() for c in results]}), args.out)
    else:
        lines = [f"{'PASS' if c.passed else 'FAIL'}  [{c.suite}] {c.name}" + (f"  -- {c.detail}" if c.detail else "") for c in results]
        lines.append(f"{sum(c.passed for c in results)}/{len(results)} checks passed")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# decomposition


def _load_qpoly(path: str) -> QPoly:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if isinstance(data, dict) and "poly" in data:
        data = data["poly"]
    try:
        if isinstance(data, list):
            return QPoly.scalar(ScalarPoly.from_json(data))
        return QPoly.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a polynomial in the JSON format: {exc}") from exc


def cmd_decompose(args) -> int:
    from .integrate import NotHarmonicError, decompose

    f = _load_qpoly(args.input)
    shape = _shape(args.shape or "sphere")
    nmax = _nmax(args.nmax if args.nmax is not None else max(f.degree, 0))
    try:
        result = decompose(f, nmax, shape)
    except NotHarmonicError as exc:
        sys.stderr.write(f"error: component e{exc.component} is not harmonic; Laplacian = {exc.laplacian.pretty()}\n")
        return 2
    _emit(_dump(result.to_json()), args.out)
    for name, val in result.norms.items():
        sys.stderr.write(f"||{name} part||^2 = {val.r}*pi\n")
    return 0


# ---------------------------------------------------------------------------
# numerics


def _read_points(args):
    import numpy as np

    from .numeval import random_interior_points

    shape = _shape(args.shape or "sphere")
    if args.points:
        try:
            with open(args.points) as fh:
                first = fh.readline()
            try:
                [float(v) for v in first.split(",")]
                skip = 0
            except ValueError:
                skip = 1  # header row
            pts = np.loadtxt(args.points, delimiter=",", ndmin=2, skiprows=skip)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read points from {args.points}: {exc}") from exc
        if pts.shape[1] != 3:
            raise UsageError("points file needs three comma-separated columns x0,x1,x2")
    else:
        pts = random_interior_points(shape, args.samples or 10, args.seed or 0)
    return shape, pts


def _exact_member(family: str, n: int, m: int, parity, shape) -> QPoly:
    from .contragenics import ContragenicIndex, build_Z
    from .harmonics import build_U, build_V
    from .monogenics import MonogenicIndex, build_X

    parity = _default_parity(family, m, parity)
    if family == "U":
        return QPoly.scalar(build_U(n, m, parity).poly)
    if family == "V":
        return QPoly.scalar(build_V(n, m, parity).poly)
    if family == "X":
        return build_X(MonogenicIndex(n, m, parity)).qpoly
    if family == "Z":
        return build_Z(ContragenicIndex(n, m, parity), shape).qpoly
    raise UsageError(f"family must be one of U, V, X, Z for this command; got {family}")


def cmd_eval(args) -> int:
    import numpy as np

    from .numeval import eval_basis_numeric, eval_qpoly

    family = (args.family_opt or args.family or "").upper()
    n, m, parity = _parse_index(args.index)
    parity = _default_parity(family, m, parity)
    shape, pts = _read_points(args)
    if not all(shape.contains(p) for p in pts):
        raise UsageError("all points must lie inside the spheroid")
    if args.path == "coordinate":
        vals = eval_basis_numeric(family, (n, m, parity), pts, shape)
    else:
        q = _exact_member(family, n, m, parity, shape)
        vals = eval_qpoly(q, pts, float(shape.tau))
        if family in ("U", "V"):
            vals = vals[:, 0]
    vals = np.asarray(vals)
    cols = ["value"] if vals.ndim == 1 else ["e0", "e1", "e2"]
    vals = vals.reshape(len(pts), -1)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x0", "x1", "x2"] + cols)
    for p, v in zip(pts, vals):
        w.writerow([repr(float(c)) for c in p] + [repr(float(c)) for c in v])
    _emit(buf.getvalue(), args.out)
    return 0


def _operand(text: str, shape) -> QPoly:
    if ":" in text and not text.endswith(".json"):
        family, idx = text.split(":", 1)
        n, m, parity = _parse_index(idx)
        return _exact_member(family.upper(), n, m, parity, shape).substitute_tau(shape)
    return _load_qpoly(text).substitute_tau(shape)


def cmd_mc(args) -> int:
    from .integrate import inner_product
    from .numeval import mc_inner_product

    shape = _shape(args.shape or "sphere")
    f = _operand(args.f, shape)
    g = _operand(args.g, shape)
    samples = args.samples if args.samples is not None else 1_000_000
    seed = args.seed if args.seed is not None else 0
    if samples <= 0:
        raise UsageError("--samples must be positive")
    res = mc_inner_product(f, g, shape, samples, seed)
    payload = res.to_json()
    if args.with_exact:
        payload["exact"] = float(inner_product(f, g, shape))
    _emit(json.dumps(payload) + "\n", args.out)
    return 0


def cmd_dims(args) -> int:
    from .integrate import rank_dimension_report

    shape = _shape(args.shape or "1/4")
    nmax = _nmax(args.nmax if args.nmax is not None else 3)
    rows = rank_dimension_report(nmax, shape)
    ok = all(r.ok() for r in rows)
    if args.format == "json":
        payload = [{"n": r.n, **{name: {"rank": got, "expected": want} for name, (got, want) in r.items()}} for r in rows]
        _emit(_dump(payload), args.out)
    else:
        header = ["n"] + [name for name, _ in rows[0].items()]
        lines = ["\t".join(header)]
        for r in rows:
            lines.append("\t".join([str(r.n)] + [f"{got}" + ("" if got == want else f"(!={want})") for _, (got, want) in r.items()]))
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def cmd_gram(args) -> int:
    from .integrate import gram

    family = (args.family_opt or args.family or "").upper()
    if family not in FAMILIES:
        raise UsageError(f"family must be one of {', '.join(FAMILIES)}")
    shape = _shape(args.shape or "1/4")
    _, polys, meta = _family_elements(family, _nmax(args.nmax), shape)
    labels = [f"{family}[{n},{m}{',' + p if p else ''}]" for n, m, p in meta]
    _emit(gram(polys, shape, labels).to_csv(), args.out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contragenic", description="Spheroidal harmonic, monogenic and contragenic polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices=("json", "pretty")):
        p.add_argument("--shape", help="tau = mu^2 as an exact rational (e.g. 1/4, -1), 'sphere', or 'sym'")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--format", choices=fmt_choices, default=fmt_choices[0])

    g = sub.add_parser("gen-basis", help="emit a basis family up to degree nmax")
    g.add_argument("family", nargs="?", help="U, V, X, Y or Z")
    g.add_argument("--family", dest="family_opt")
    g.add_argument("--nmax", type=int, default=2)
    g.add_argument("--pretty", action="store_true")
    common(g)
    g.set_defaults(func=cmd_gen_basis)

    v = sub.add_parser("verify", help="run an invariant suite")
    v.add_argument("suite", help="suite name or 'all'")
    v.add_argument("--nmax", type=int)
    v.add_argument("--shapes", help="comma-separated list of shapes")
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--out")
    v.add_argument("--format", choices=("pretty", "json"), default="pretty")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decompose", help="split a harmonic R^3-valued polynomial into its parts")
    d.add_argument("input", help="QPoly JSON file")
    d.add_argument("--nmax", type=int)
    common(d, ("json",))
    d.set_defaults(func=cmd_decompose)

    e = sub.add_parser("eval", help="evaluate a basis element at points (CSV)")
    e.add_argument("family", nargs="?")
    e.add_argument("--family", dest="family_opt")
    e.add_argument("--index", required=True, help="n,m[,parity]")
    e.add_argument("--points", help="CSV file with x0,x1,x2 rows")
    e.add_argument("--samples", type=int, help="number of random interior points when --points is absent")
    e.add_argument("--seed", type=int)
    e.add_argument("--path", choices=("exact", "coordinate"), default="exact")
    common(e, ("csv",))
    e.set_defaults(func=cmd_eval)

    m = sub.add_parser("mc", help="Monte Carlo inner product (JSON)")
    m.add_argument("f", help="FAMILY:n,m[,parity] or a QPoly JSON file")
    m.add_argument("g", help="FAMILY:n,m[,parity] or a QPoly JSON file")
    m.add_argument("--samples", type=int)
    m.add_argument("--seed", type=int)
    m.add_argument("--with-exact", action="store_true", help="also report the exact value")
    common(m, ("json",))
    m.set_defaults(func=cmd_mc)

    t = sub.add_parser("dims", help="dimension table from exact Gram ranks")
    t.add_argument("--nmax", type=int)
    common(t, ("pretty", "json"))
    t.set_defaults(func=cmd_dims)

    gr = sub.add_parser("gram", help="exact Gram matrix of a family as CSV (entries r meaning r*pi)")
    gr.add_argument("family", nargs="?")
    gr.add_argument("--family", dest="family_opt")
    gr.add_argument("--nmax", type=int, default=2)
    common(gr, ("csv",))
    gr.set_defaults(func=cmd_gram)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args)
    except (UsageError, CapacityError, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        sys.stderr.write(f"error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

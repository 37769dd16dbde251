import json

import pytest

from contragenic.cli import main
from contragenic.contragenics import ContragenicIndex, build_Z
from contragenic.exactcore import QPoly, SpheroidShape
from contragenic.monogenics import X_poly
from contragenic.reference_tables import MONOGENIC_LOW

PROLATE = SpheroidShape.parse("1/4")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_basis_pretty_symbolic(capsys):
    code, out, _ = run(capsys, "gen-basis", "X", "--nmax", "2", "--shape", "sym", "--pretty")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == len(MONOGENIC_LOW)
    assert any(line.startswith("X[2,0,+]") and "mu^2" in line for line in lines)


def test_gen_basis_json(capsys):
    code, out, _ = run(capsys, "gen-basis", "Z", "--nmax", "3", "--shape", "1/4")
    assert code == 0
    data = json.loads(out)
    assert len(data["elements"]) == 9
    code, out, _ = run(capsys, "gen-basis", "--family", "V", "--nmax", "0")
    recs = json.loads(out)["elements"]
    assert len(recs) == 1
    assert recs[0]["poly"] == [{"a": 0, "b": 0, "c": 0, "tau": [["1", "1"]]}]


def test_gen_basis_round_trip(capsys):
    code, out, _ = run(capsys, "gen-basis", "X", "--nmax", "3", "--shape", "sym")
    for rec in json.loads(out)["elements"]:
        assert QPoly.from_json(rec["poly"]) == X_poly(rec["n"], rec["m"], rec["parity"])


def test_gen_basis_errors(capsys):
    assert run(capsys, "gen-basis", "W")[0] == 2
    assert run(capsys, "gen-basis", "Z", "--nmax", "2")[0] == 2
    assert run(capsys, "gen-basis", "Y", "--nmax", "2", "--shape", "sym")[0] == 2
    assert run(capsys, "gen-basis", "X", "--nmax", "11")[0] == 2
    code, _, err = run(capsys, "gen-basis", "X", "--shape", "0.25")
    assert code == 2 and "error" in err
    assert run(capsys, "frobnicate")[0] == 2


def test_deterministic_output_files(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(capsys, "gen-basis", "Y", "--nmax", "2", "--shape", "-1", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    for path in (a, b):
        assert run(capsys, "mc", "X:1,0", "X:1,1,+", "--shape", "1/4", "--samples", "5000", "--seed", "3", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "orthogonality", "--nmax", "4", "--shapes", "0,1/4,-1")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "dims", "--nmax", "4", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_tables_reports_the_a_discrepancy(capsys):
    code, out, _ = run(capsys, "verify", "tables", "--format", "json")
    assert code == 1
    failed = [c for c in json.loads(out)["checks"] if not c["passed"]]
    assert failed
    assert all(c["check"].startswith(("Z(2,1", "Z(3,1")) for c in failed)
    assert all(c["detail"] == "reference entry equals the literal-a construction" for c in failed)


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "nonsense")[0] == 2


def _write(tmp_path, name, q):
    path = tmp_path / name
    path.write_text(json.dumps(q.to_json()))
    return str(path)


def test_decompose(tmp_path, capsys):
    x = X_poly(2, 1, "-")
    code, out, _ = run(capsys, "decompose", _write(tmp_path, "x.json", x), "--shape", "1/4")
    assert code == 0
    parts = json.loads(out)["parts"]
    assert QPoly.from_json(parts["monogenic"]) == x.substitute_tau(PROLATE)
    z = build_Z(ContragenicIndex(2, 0), PROLATE).qpoly
    code, out, _ = run(capsys, "decompose", _write(tmp_path, "z.json", z), "--shape", "1/4")
    assert QPoly.from_json(json.loads(out)["parts"]["contragenic"]) == z
    x10 = X_poly(1, 0, "+")
    z10 = build_Z(ContragenicIndex(1, 0), PROLATE).qpoly
    code, out, _ = run(capsys, "decompose", _write(tmp_path, "s.json", x10 + x10.conj() + z10), "--shape", "1/4")
    parts = json.loads(out)["parts"]
    assert QPoly.from_json(parts["monogenic"]) == x10
    assert QPoly.from_json(parts["antimonogenic"]) == x10.conj()
    assert QPoly.from_json(parts["contragenic"]) == z10


def test_decompose_non_harmonic(tmp_path, capsys):
    from contragenic.exactcore import X1

    code, _, err = run(capsys, "decompose", _write(tmp_path, "bad.json", QPoly(e2=X1 * X1)), "--shape", "1/4")
    assert code == 2
    assert "e2" in err and "Laplacian" in err


def test_eval_paths_agree(tmp_path, capsys):
    pts = tmp_path / "pts.csv"
    pts.write_text("x0,x1,x2\n0.1,0.2,0.3\n-0.4,0.1,0.05\n")
    rows = {}
    for path in ("exact", "coordinate"):
        code, out, _ = run(capsys, "eval", "X", "--index", "3,1,-", "--points", str(pts), "--shape", "-1", "--path", path)
        assert code == 0
        rows[path] = [list(map(float, r.split(","))) for r in out.strip().splitlines()[1:]]
    for a, b in zip(rows["exact"], rows["coordinate"]):
        assert a == pytest.approx(b, rel=1e-9, abs=1e-12)


def test_eval_defaults_and_errors(capsys):
    code, out, _ = run(capsys, "eval", "Z", "--index", "2,0", "--shape", "1/4", "--samples", "3")
    assert code == 0 and len(out.strip().splitlines()) == 4
    code, out, _ = run(capsys, "eval", "V", "--index", "1,0", "--shape", "sphere", "--samples", "2")
    assert code == 0
    assert run(capsys, "eval", "V", "--index", "1,0", "--shape", "sphere", "--samples", "2", "--path", "coordinate")[0] == 2
    assert run(capsys, "eval", "V", "--index", "1,0,-", "--shape", "1/4", "--samples", "2")[0] == 2


def test_mc_with_exact(capsys):
    code, out, _ = run(capsys, "mc", "X:1,0", "X:1,1,+", "--shape", "1/4", "--samples", "100000", "--with-exact")
    data = json.loads(out)
    assert code == 0 and data["exact"] == 0.0
    assert abs(data["estimate"]) <= 4 * data["stderr"]


def test_dims_and_gram(capsys):
    code, out, _ = run(capsys, "dims", "--nmax", "3", "--shape", "-1", "--format", "json")
    assert code == 0
    code, out, _ = run(capsys, "gram", "V", "--nmax", "1", "--shape", "1/4")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 5

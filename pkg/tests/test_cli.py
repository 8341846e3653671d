from __future__ import annotations

import json
import subprocess
import sys

import pytest

from eislat import boundary
from eislat.cli import emit_report, exit_code, main
from eislat.eisenstein import ONE, THETA, ZERO
from eislat.elattice import e_complement_quotient, isotropic_search, lambda_lattice
from eislat.reports import WitnessReport

V = WitnessReport("a", "verified", {"x": 1}, {"exact": True}, 5)
R = WitnessReport("b", "refuted", {"x": 2}, {"exact": True}, 6)
I = WitnessReport("c", "inconclusive", {}, {"height": 1}, 7)


def strip_timing(payload):
    for r in payload["reports"]:
        r.pop("elapsed_ms")
        r["witnesses"] = json.loads(json.dumps(r["witnesses"]).replace('"ms"', '"_"'))
    return payload


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# report emission -----------------------------------------------------------------


def test_empty_report():
    data = json.loads(emit_report([]))
    assert data["seed_invariants"] == {"claims_total": 0, "verified": 0, "refuted": 0, "inconclusive": 0}
    assert data["reports"] == []
    assert emit_report([], "text") == ""


def test_single_verified_counts():
    data = json.loads(emit_report([V]))
    assert list(data["seed_invariants"].values()) == [1, 1, 0, 0]
    assert list(data) == ["tool_version", "seed_invariants", "reports"]


def test_mixed_counts_and_text():
    data = json.loads(emit_report([V, R, I, V]))
    assert data["seed_invariants"] == {"claims_total": 4, "verified": 2, "refuted": 1, "inconclusive": 1}
    lines = emit_report([V, I], "text").splitlines()
    assert lines == [
        'a  verified  (bound={"exact":true}, elapsed=5ms)',
        'c  inconclusive  (bound={"height":1}, elapsed=7ms)',
    ]


def test_exit_codes():
    assert exit_code([]) == 0
    assert exit_code([V]) == 0
    assert exit_code([V, I]) == 3
    assert exit_code([V, I, R]) == 2


# commands ----------------------------------------------------------------------


def test_verify_chordal(capsys):
    code, out, _ = run(["verify", "chordal"], capsys)
    assert code == 0
    assert json.loads(out)["reports"][0]["status"] == "verified"


def test_degenerate_height_is_inconclusive(capsys):
    code, out, _ = run(["verify", "lambda10-split", "--height", "0", "--text"], capsys)
    assert code == 3
    assert out.startswith("lambda10-split  inconclusive")


def test_arcs_exit_code(capsys):
    code, _, _ = run(["verify", "arcs"], capsys)
    assert code == 2


def test_report_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(["verify", "gamma-gram", "--k", "4", "--report", str(path)], capsys)
    assert code == 0
    assert out.startswith("gamma-gram  verified")
    assert json.loads(path.read_text())["reports"][0]["search_bound"] == {"k": 4}


def test_shortvec(tmp_path, capsys):
    z3 = tmp_path / "z3.json"
    z3.write_text(json.dumps({"gram": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    code, out, _ = run(["lattice", "shortvec", str(z3), "--norm", "3"], capsys)
    assert code == 0
    wit = json.loads(out)["reports"][0]["witnesses"]
    assert wit["count_up_to_sign"] == 4
    assert all(all(abs(c) == 1 for c in v) for v in wit["vectors"])


def test_lattice_info_and_isometry(tmp_path, capsys):
    a2 = tmp_path / "a2.json"
    a2.write_text(json.dumps({"gram": [[2, -1], [-1, 2]]}))
    a2b = tmp_path / "a2b.json"
    a2b.write_text(json.dumps({"gram": [[2, 1], [1, 2]]}))
    z2 = tmp_path / "z2.json"
    z2.write_text(json.dumps({"gram": [[1, 0], [0, 1]]}))
    e1 = tmp_path / "e1.json"
    e1.write_text(json.dumps({"hgram": [[[3, 0]]]}))
    code, out, _ = run(["lattice", "info", str(a2)], capsys)
    assert code == 0 and json.loads(out)["reports"][0]["witnesses"]["det"] == 3
    code, out, _ = run(["lattice", "info", str(e1)], capsys)
    assert code == 0 and json.loads(out)["reports"][0]["witnesses"]["kind"] == "eisenstein"
    assert run(["lattice", "isometry", str(a2), str(a2b)], capsys)[0] == 0
    assert run(["lattice", "isometry", str(a2), str(z2)], capsys)[0] == 2
    assert run(["lattice", "isometry", str(a2), str(e1)], capsys)[0] == 1


def test_mu3_file_is_loaded_as_eisenstein(tmp_path, capsys):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"gram": [[2, -1], [-1, 2]], "t": [[0, -1], [1, -1]]}))
    code, out, _ = run(["lattice", "info", str(f)], capsys)
    assert code == 0
    assert json.loads(out)["reports"][0]["witnesses"]["rank"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["verify"],
        ["verify", "nothing"],
        ["lattice", "info", "/nonexistent/file.json"],
        ["lattice", "shortvec"],
        ["verify", "chordal", "--parallel", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1
    assert "usage" in err or "error" in err


def test_bad_json(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code, _, err = run(["lattice", "info", str(f)], capsys)
    assert code == 1 and "not valid JSON" in err
    g = tmp_path / "nogram.json"
    g.write_text("{}")
    assert run(["lattice", "info", str(g)], capsys)[0] == 1


def test_unwritable_report(capsys):
    assert run(["verify", "chordal", "--report", "/nonexistent/dir/r.json"], capsys)[0] == 1


def test_boundary_commands(tmp_path, capsys):
    L = boundary.big_lambda()
    r11 = tuple(ONE if i == 10 else ZERO for i in range(11))
    ys = isotropic_search(lambda_lattice(10), 4)[:6]
    recs = [boundary.confirm_normal(L, r11)]
    recs += [boundary.confirm_normal(L, tuple(THETA * c for c in y) + (ONE,)) for y in ys]
    rfile = tmp_path / "records.json"
    rfile.write_text(json.dumps(boundary.hyperplanes_to_json(recs)))

    code, out, _ = run(["boundary", "disjointness", str(rfile), "--pairs", "3"], capsys)
    rep = json.loads(out)["reports"][0]
    assert rep["claim_id"] == "disjointness"
    assert rep["search_bound"]["pairs_tested"] == 3
    assert code == (0 if rep["status"] == "verified" else 2)

    iso = isotropic_search(L, 4)
    normals = [r.normal for r in recs]
    on = [v for v in iso if any(not L.inner(v, n) for n in normals)][:5]
    off = [v for v in iso if all(L.inner(v, n) for n in normals)][:5]
    classes = []
    for label, vecs in (("class-A", on), ("class-B", off)):
        Q = e_complement_quotient(L, vecs[0]).quotient
        classes.append(boundary.CuspClass(label, Q, [boundary.CuspRecord(v, Q) for v in vecs], vecs))
    cfile = tmp_path / "classes.json"
    cfile.write_text(json.dumps(boundary.classes_to_json(classes)))
    code, out, _ = run(["boundary", "incidence", str(cfile), str(rfile)], capsys)
    rep = json.loads(out)["reports"][0]
    assert rep["witnesses"]["labels"] == {"class-A": "A5^2", "class-B": "D4^3"}
    assert rep["witnesses"]["d4_off_hyperplanes"]["ok"]

    one = tmp_path / "one.json"
    one.write_text(json.dumps(boundary.hyperplanes_to_json(recs[:1])))
    assert run(["boundary", "disjointness", str(one)], capsys)[0] == 1
    assert run(["boundary", "incidence", str(cfile)], capsys)[0] == 1


def test_cusps_command_writes_classes(tmp_path, capsys):
    out_path = tmp_path / "c.json"
    code, out, _ = run(["cusps", "--height", "2", "--out", str(out_path)], capsys)
    assert code == 3
    assert json.loads(out_path.read_text()) == {"classes": []}


def test_hyperplanes_command(tmp_path, capsys):
    out_path = tmp_path / "h.json"
    code, out, _ = run(["hyperplanes", "--height", "3", "--max", "5", "--out", str(out_path)], capsys)
    assert code == 3  # only the tautological record exists at this height
    assert len(json.loads(out_path.read_text())["records"]) == 1


def test_verify_all_is_deterministic():
    cmd = [sys.executable, "-m", "eislat", "verify", "all", "--height", "2", "--parallel", "4"]
    runs = [subprocess.run(cmd, capture_output=True, text=True) for _ in range(2)]
    assert all(r.returncode == 2 for r in runs)  # the arcs claim is refuted
    a, b = (strip_timing(json.loads(r.stdout)) for r in runs)
    assert a == b

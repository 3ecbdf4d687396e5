import json
from pathlib import Path

import pytest

from hopfad.cli import EXIT_EVIDENCE, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, RESULT_TAGS, Report, dumps, main, tag_for
from hopfad.hopf import dump_hsc, sweedler
from hopfad.scalar import QQ

FAMILIES = Path(__file__).resolve().parent.parent / "families"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), out


@pytest.mark.parametrize("name", ["sweedler", "taft:3", "group:perm:(123),(12)", "dual:group:S3", "uqsl2:3"])
def test_verify_builtins_pass(capsys, name):
    code, rep, _ = run_json(capsys, "verify", "--builtin", name, "--pairs", "5")
    assert code == EXIT_PASS
    assert all(c["status"] == "pass" for c in rep["checks"])


def test_verify_corrupted_file_fails_with_witness(capsys, tmp_path):
    # x·x = 0 has no stored line; declare x·x = 1 instead
    text = dump_hsc(sweedler(QQ)) + "mult 2 2 0 1\n"
    p = tmp_path / "bad.hsc"
    p.write_text(text)
    code, rep, _ = run_json(capsys, "verify", str(p))
    assert code == EXIT_FAIL
    assoc = next(c for c in rep["checks"] if c["id"] == "axiom.associativity")
    assert assoc["status"] == "fail" and assoc["data"]["witness"] is not None


def test_verify_file_round_trip(capsys, tmp_path):
    p = tmp_path / "sw.hsc"
    p.write_text(dump_hsc(sweedler(QQ)))
    code, _, _ = run_json(capsys, "verify", str(p))
    assert code == EXIT_PASS


def test_parse_error_reports_position(capsys, tmp_path):
    p = tmp_path / "broken.hsc"
    p.write_text("field Q\ndim 2\nmult 0 zz 0 1\n")
    code, _, err = run(capsys, "verify", str(p))
    assert code == EXIT_USAGE and "line 3" in err and "column" in err


def test_usage_errors(capsys):
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "verify")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--builtin", "nope")[0] == EXIT_USAGE
    assert run(capsys, "fc", "dinf", "--budget", "0")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--builtin", "sweedler", "--field", "fp:2")[0] == EXIT_USAGE


def test_adfin_quotient(capsys):
    code, rep, _ = run_json(capsys, "adfin", "--algebra", "uq-sl2-quotient:3", "--window", "6")
    assert code == EXIT_PASS
    checks = {c["id"]: c for c in rep["checks"]}
    assert checks["adfin.window"]["data"]["window_size"] == 3 * 13 * 3
    assert all(v == {"verdict": "finite", "dim": 1} for v in checks["adfin.window"]["data"]["verdicts"].values())
    assert checks["adfin.left-coideal"]["status"] == "pass"


def test_adfin_generic_is_evidence_only(capsys):
    code, rep, _ = run_json(capsys, "adfin", "--algebra", "uq-sl2")
    assert code == EXIT_EVIDENCE
    chain = next(c for c in rep["checks"] if c["id"] == "evidence.ad-E-chain")
    assert chain["status"] == "evidence" and chain["data"]["dims"] == [1, 2, 3, 4, 5, 6]


def test_adfin_finite_dimensional_builtin(capsys):
    code, rep, _ = run_json(capsys, "adfin", "--builtin", "taft:3")
    assert code == EXIT_PASS


def test_fc_dinf_members(capsys):
    code, rep, _ = run_json(capsys, "fc", "dinf", "--length", "8")
    assert code == EXIT_PASS
    members = next(c for c in rep["checks"] if c["id"] == "fc.members")["data"]["members"]
    expect = {"1"} | {f"r^{k}" for k in range(-8, 9) if k not in (0, 1)} | {"r"}
    assert set(members) == expect


def test_dietzmann_families(capsys):
    code, rep, _ = run_json(capsys, "dietzmann", str(FAMILIES / "d4-family.json"))
    assert code == EXIT_PASS
    filt = next(c for c in rep["checks"] if c["id"] == "dietzmann.filtration")["data"]
    assert filt["s_star"] == 2 and filt["closure_dim"] == 8 and filt["dims"] == [6, 8, 8]
    code, rep, _ = run_json(capsys, "dietzmann", str(FAMILIES / "zs3-family.json"))
    filt = next(c for c in rep["checks"] if c["id"] == "dietzmann.filtration")["data"]
    assert code == EXIT_PASS and filt["s_star"] == 1 and filt["closure_dim"] == 6


def test_dietzmann_bad_json(capsys, tmp_path):
    p = tmp_path / "f.json"
    p.write_text('{"host": "group:D4",\n "components": [}')
    code, _, err = run(capsys, "dietzmann", str(p))
    assert code == EXIT_USAGE and "line 2" in err


def test_tensorfin_small_window(capsys):
    code, rep, _ = run_json(capsys, "tensorfin", "regular+trivial", "regular+sign", "--window", "3", "--samples", "10")
    assert code == EXIT_PASS
    data = rep["checks"][0]["data"]
    assert data["disagreements"] == [] and data["window_keys_per_factor"] == [8, 8]


def test_report_json_round_trip(capsys):
    _, rep, text = run_json(capsys, "fc", "heis", "--length", "2")
    assert dumps(json.loads(text)) + "\n" == text
    assert rep["schema"] == 1 and [c["id"] for c in rep["checks"]] == sorted(c["id"] for c in rep["checks"])


def test_table_output(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "sweedler")
    assert code == EXIT_PASS and out.splitlines()[0].split() == ["check", "status", "result"]


def test_report_exit_codes_and_tags():
    r = Report(["x"])
    assert r.exit_code() == EXIT_PASS
    r.add("fc.members", "pass")
    r.add("evidence.orbit-of-K", "budget-exceeded")
    assert r.exit_code() == EXIT_EVIDENCE
    r.add("axiom.unit", "fail")
    assert r.exit_code() == EXIT_FAIL
    with pytest.raises(ValueError):
        r.add("axiom.unit", "pass")
    with pytest.raises(ValueError):
        r.add("axiom.counit", "maybe")
    with pytest.raises(KeyError):
        tag_for("unknown.check")
    assert tag_for("dietzmann.straighten.3") == RESULT_TAGS["dietzmann.straighten"]

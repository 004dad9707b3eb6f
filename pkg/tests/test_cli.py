import json

import pytest

from intfourier.cli import OUTPUT_DIR_ENV, RunConfig, dispatch, main, parse
from intfourier.sl2 import sym_power


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tm_table(capsys):
    code, out, _ = run(capsys, "tm", "--max", "6")
    assert code == 0
    data = json.loads(out)
    assert [r["T"] for r in data["rows"]] == [1, 2, 12, 24, 720, 1440, 60480]
    assert data["status"] == "pass"


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--rank", "2", "--max-deg", "4")
    data = json.loads(out)
    assert code == 0
    assert len(data["reports"]) == 4
    assert all(r["status"] == "pass" and r["residual"] == [] for r in data["reports"])
    assert all("elapsed" not in r for r in data["reports"])


def test_sl2_decompose_from_file(capsys, tmp_path):
    path = tmp_path / "module.json"
    path.write_text(json.dumps(sym_power(2).to_json()))
    code, out, _ = run(capsys, "sl2", "decompose", "--input", str(path))
    assert code == 0
    assert json.loads(out)["rows"] == [{"n": 2, "freeRank": 1, "torsion": [], "type": "L^1"}]


@pytest.mark.parametrize(
    "argv",
    [
        ["todd", "--max-deg", "3", "--rank", "2"],
        ["chern-char", "--max-deg", "3"],
        ["ftd-inv", "--rank", "2", "--max-deg", "3"],
        ["fct", "--max-deg", "2"],
        ["verify", "key-collapse", "--g", "1"],
        ["verify", "pappas-shape", "--g", "2", "--n", "3"],
        ["projectors", "--g", "2", "--d", "1"],
        ["fourier-check", "--g", "3"],
        ["fourier-check", "--g", "2", "--nu", "3"],
        ["oracle-check", "--g", "2"],
        ["sl2", "decompose", "--sym", "2"],
        ["sl2", "flek", "--n-max", "3", "--sym", "3"],
        ["demo", "torsion", "--g", "3", "--p", "11", "--k", "2"],
    ],
)
def test_commands_pass_and_are_deterministic(capsys, argv):
    code, first, _ = run(capsys, *argv)
    assert code == 0, first
    _, second, _ = run(capsys, *argv)
    assert first == second
    _, text, _ = run(capsys, *argv, "--format", "text")
    assert text.startswith("# ") and "status: pass" in text


def test_usage_errors(capsys):
    assert run(capsys, "oracle-check", "--g", "4")[0] == 2
    assert run(capsys, "fourier-check", "--g", "9")[0] == 2
    assert run(capsys, "demo", "torsion", "--g", "2", "--p", "5")[0] == 2
    assert run(capsys, "sl2", "decompose")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_math_failure_exit_code(tmp_path, capsys):
    bad = {"g": 1, "invertedPrimes": [2], "pieces": [{"weight": -1, "freeRank": 1, "torsion": []}, {"weight": 1, "freeRank": 1, "torsion": []}], "eMaps": {"-1": [[2]]}, "fMaps": {"1": [[1]]}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "sl2", "decompose", "--input", str(path))
    assert code == 2  # not a representation is a malformed input


def test_failed_check_exits_one(monkeypatch):
    from intfourier import cli
    from intfourier.reports import IdentityReport

    monkeypatch.setitem(cli.COMMANDS, "tm", lambda p: cli.Outcome(reports=[IdentityReport("x", {}, failures=["boom"])]))
    code, text = dispatch(RunConfig("tm", {"max": 1}))
    assert code == 1 and json.loads(text)["status"] == "fail"


def test_timings_flag(capsys):
    _, out, _ = run(capsys, "verify", "key-collapse", "--g", "1", "--timings")
    assert "elapsed" in json.loads(out)["reports"][0]


def test_output_destinations(capsys, tmp_path, monkeypatch):
    target = tmp_path / "t.json"
    code, out, _ = run(capsys, "tm", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["command"] == "tm"
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "env"))
    run(capsys, "verify", "pappas-shape", "--format", "text")
    assert (tmp_path / "env" / "verify-pappas-shape.txt").read_text().startswith("# verify pappas-shape")


def test_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "verify", "identities", "--max-deg", "2", "-v")
    assert code == 0
    json.loads(out)


def test_parse_collects_parameters():
    cfg = parse(["projectors", "--g", "2", "--d", "1", "--format", "text"])
    assert cfg.command == "projectors" and cfg.parameters == {"g": 2, "d": 1} and cfg.format == "text"

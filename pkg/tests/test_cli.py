import json

import pytest

from qpw.cli import main, read_config, resolve_seed


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_coeffs_matches_enumeration(capsys):
    code, out, _ = run(capsys, "coeffs", "--series", "pbar_omega", "--max-n", "30", "--format", "json")
    assert code == 0
    data = json.loads(out)
    code, out, _ = run(capsys, "coeffs", "--series", "pbar_omega", "--max-n", "30", "--source", "enumeration",
                       "--format", "json")
    assert json.loads(out)["coefficients"] == data["coefficients"]
    assert len(data["coefficients"]) == 30


def test_coeffs_of_Y(capsys):
    code, out, _ = run(capsys, "coeffs", "--series", "y", "--max-n", "15", "--format", "json")
    values = json.loads(out)["coefficients"]
    assert [values[e - 1] for e in range(3, 16, 2)] == [-1, -2, -3, -5, -4, -7, -9]


def test_usage_errors(capsys):
    assert run(capsys, "coeffs", "--series", "pbar_omega", "--max-n", "0")[0] == 2
    assert run(capsys, "coeffs", "--series", "nope")[0] == 2
    assert run(capsys, "verify", "--id", "no_such")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "scan", "--sequence", "pbar_omega")[0] == 2
    assert run(capsys, "verify", "--id", "extvar", "--param", "beta=q^-2")[0] == 2


def test_verify_ids(capsys):
    code, out, _ = run(capsys, "verify", "--id", "cor_4", "--id", "sq1", "--order", "30")
    assert code == 0
    assert "2/2 passed" in out


def test_verify_known_false_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "--id", "ady1_original")
    assert code == 1
    assert "FAIL" in out


def test_verify_trials_are_deterministic(capsys):
    argv = ("verify", "--id", "extvar", "--trials", "2", "--order", "20", "--seed", "7", "--format", "json")
    first = json.loads(run(capsys, *argv)[1])
    second = json.loads(run(capsys, *argv)[1])
    for d in first + second:
        d.pop("elapsed_ms")
    assert first == second
    assert first[0]["status"] == "PASS" and first[0]["seed"] == 7


def test_scan_stated_claims(capsys, tmp_path):
    out_file = tmp_path / "scan.json"
    code, out, _ = run(capsys, "scan", "--sequence", "sptbar_omega", "--claims", "paper", "--max-n", "300",
                       "--output", str(out_file))
    assert code == 0
    data = json.loads(out_file.read_text(encoding="utf-8"))
    assert all(d["verdict"] == "PASS" for d in data)


def test_scan_single_claim_fails(capsys):
    code, out, _ = run(capsys, "scan", "--sequence", "sptbar_omega", "--claim", "3,1,3", "--max-n", "60")
    assert code == 1
    assert "first failure" in out


def test_scan_mine(capsys):
    code, out, _ = run(capsys, "scan", "--sequence", "pbar_omega", "--mine", "--A-max", "8", "--mods", "2,3,4,5",
                       "--max-n", "300", "--format", "json")
    found = {(d["A"], d["B"], d["M"]) for d in json.loads(out)}
    assert {(4, 3, 4), (8, 6, 4)} <= found


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--sequence", "pbar_omega", "--max-n", "40")
    assert code == 0 and out.startswith("PASS")


def test_config_file_and_seed_precedence(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "qpw.conf"
    cfg.write_text("# defaults\nmax-n = 12\nseed = 5\nformat = json\n", encoding="utf-8")
    conf = read_config(cfg)
    assert conf == {"max_n": "12", "seed": "5", "format": "json"}
    monkeypatch.delenv("QPW_SEED", raising=False)
    assert resolve_seed(None, conf) == 5
    monkeypatch.setenv("QPW_SEED", "9")
    assert resolve_seed(None, conf) == 9
    assert resolve_seed(3, conf) == 3
    code, out, _ = run(capsys, "coeffs", "--series", "pbar", "--config", str(cfg))
    assert code == 0
    assert len(json.loads(out)["coefficients"]) == 12


def test_bad_config_line(tmp_path, capsys):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("just words\n", encoding="utf-8")
    assert run(capsys, "coeffs", "--series", "pbar", "--config", str(cfg))[0] == 2

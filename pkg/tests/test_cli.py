import json
import subprocess
import sys

from weightlab.cli import main, random_rational, run_suite

DENSE = '{"nu": ["1/2", "1/3"], "lambda": [0, 0]}'
CORNER = '{"nu": [3, 1], "lambda": [3, 1], "J": ["1+", "2+"]}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_act(capsys):
    code, out, _ = run(capsys, "act", "--spec", DENSE, "x1d1", "x^(1/2,1/3) v0")
    assert code == 0
    assert json.loads(out)["text"] == "1/2 x^(1/2,1/3) v0"


def test_act_reduces_at_the_corner(capsys):
    code, out, _ = run(capsys, "act", "--spec", CORNER, "x2d1", "x^(3,1) v0")
    assert json.loads(out)["text"] == "2 x^(2,2) v1"  # (s1 - l1) v0 vanishes, (n - i) v1 = 2 v1


def test_act_with_the_wrong_algebra(capsys):
    code, _, err = run(capsys, "act", "--spec", DENSE, "D1", "x^(1/2,1/3) v0")
    assert code == 2 and ("AlgebraMismatch" in err or "BadMonomial" in err)


def test_character_table(capsys, tmp_path):
    path = tmp_path / "spec.json"
    path.write_text('{"nu": [0, 0], "lambda": [0, 0], "J": ["1+", "2+"]}')
    code, out, _ = run(capsys, "character", "--spec", str(path), "--window", "0,0:6,6:0", "--format", "table")
    rows = out.strip().splitlines()
    assert code == 0 and len(rows) == 7
    assert all(r.split("|")[1].split() == ["1"] * 7 for r in rows)
    code, out, _ = run(capsys, "character", "--spec", '{"nu": [2, 0], "lambda": [2, 0], "J": ["1-", "2-"]}')
    data = json.loads(out)
    assert data["degree"] == 3
    assert {"weight", "mult"} == set(data["character"][0])


def test_support(capsys):
    code, out, _ = run(capsys, "support", "--spec", '{"nu": ["1/3", "2/5"], "lambda": [2, 0]}')
    assert json.loads(out)["shape"]["tag"] == "xv"


def test_wp_and_closure(capsys):
    code, out, _ = run(capsys, "wp", "--case", "i", "--nu", "1/3,0", "--lambda", "2,0", "--window=-4,-5:5,5:0")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = run(capsys, "closure", "--spec", CORNER, "--seed-vector", "4,2:1", "--window", "0,-2:8,6:2")
    assert json.loads(out)["fills_interior"] is True


def test_loc_iso(capsys):
    code, out, _ = run(capsys, "loc-iso", "A1_I1_plus", "--params", '{"lambda": "1/3", "c": 1, "nu": "1/2"}')
    assert code == 0 and json.loads(out)["violations"] == []
    code, _, err = run(capsys, "loc-iso", "A1_I1_plus", "--params", '{"lambda": "1/3", "c": 0, "nu": "1/2"}')
    assert code == 2 and "HypothesisViolated" in err


def test_parabolics_and_bounds(capsys):
    code, out, _ = run(capsys, "parabolics")
    data = json.loads(out)
    assert code == 0 and len(data["parabolics"]) == 12 and data["summary"]["fail"] == 0
    assert data["parabolics"][7]["name"] == "P(1⁻,2⁺)"
    code, out, _ = run(capsys, "bounds")
    assert code == 0


def test_charpoly_check(capsys):
    code, out, _ = run(capsys, "charpoly-check", "--n", "2", "--samples", "4")
    data = json.loads(out)
    assert code == 0 and data["summary"] == {"pass": 1, "fail": 0, "info": 1}


def test_info_findings_do_not_fail_the_run(capsys):
    code, out, _ = run(capsys, "verify", "sl3")
    data = json.loads(out)
    assert code == 0 and data["summary"]["info"] == 1 and data["failing"] == []


def test_determinism(capsys, tmp_path, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify", "charpoly", "--samples", "3", "--seed", "11", "--out", str(a)])
    monkeypatch.setenv("WEIGHTLAB_SEED", "11")
    main(["verify", "charpoly", "--samples", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    assert run_suite("wp", 5, 1) == run_suite("wp", 5, 1)


def test_random_rationals_are_non_integral():
    import random

    rng = random.Random(0)
    qs = [random_rational(rng) for _ in range(200)]
    assert all(q.denominator != 1 and q.denominator <= 7 for q in qs)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weightlab.cli", "verify", "parabolics", "--format", "table"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip().splitlines()[-1].startswith("summary:")


def test_bad_window(capsys):
    code, _, err = run(capsys, "character", "--spec", DENSE, "--window", "0,0")
    assert code == 2 and "bad window" in err

import json
import os
import random
import subprocess
import sys
from fractions import Fraction
from pathlib import Path


from planelinsys import carnot as ct
from planelinsys.cli import main
from planelinsys.fields import QQ, PrimeField
from planelinsys.geometry import DivisorOnLine, Line, ProjPoint
from curves import random_smooth_curve, rational_points

F101 = PrimeField(101)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return p


def menelaus_instance():
    F = QQ
    lines = [Line(F, c) for c in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    # the transversal x + y + z = 0
    pts = [ProjPoint(F, c) for c in ((0, 1, -1), (1, 0, -1), (1, -1, 0))]
    return ct.CarnotInstance(lines, [DivisorOnLine(L, [(P, 1)]) for L, P in zip(lines, pts)], ct.TRIANGLE)


# --- formula commands -------------------------------------------------------------

def test_bounds(capsys):
    assert run(capsys, "bounds", "--d", 10, "--r", 3) == (0, {"n_lower": 28})


def test_hartshorne(capsys):
    assert run(capsys, "hartshorne", "--d", 7, "--n", 12) == (0, {"r_max": 3})


def test_linsys_formulas_print_integers(capsys):
    assert run(capsys, "linsys", "bounds", "--d", 10, "--r", 3) == (0, 28)
    assert run(capsys, "linsys", "hartshorne", "--d", 7, "--n", 12) == (0, 3)


def test_decompose(capsys):
    assert run(capsys, "decompose", "--r", 9) == (0, {"r": 9, "x": 3, "beta": 1})
    code, out = run(capsys, "decompose", "--r", 1)
    assert code == 1 and out["error"] == "ROutOfRange"


def test_table_flags(capsys):
    code, out = run(capsys, "table", "--d", 10)
    assert code == 0
    rows = out["rows"]
    assert [t["r"] for t in rows] == sorted(t["r"] for t in rows)
    for t in rows:
        assert (t["x"] + 1) * (t["x"] + 2) // 2 - t["beta"] == t["r"]
        assert t["n_lower"] == (10 - 3) * (t["x"] + 3) - t["beta"]
        if t["x"] <= 4:
            assert t["status"] == "constructible"
        else:
            assert t["x"] in (5, 6, 7) and t["status"].startswith("no base-point-free")
        assert t["certifiable"] == (t["x"] == 1)
    assert run(capsys, "linsys", "table", "--d", 10)[1] == out


def test_usage_errors(capsys):
    assert main(["bounds", "--d", "10"]) == 2
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_missing_file(capsys, tmp_path):
    assert main(["carnot", "check", "--instance", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["verify", str(bad)]) == 2
    capsys.readouterr()


# --- carnot ----------------------------------------------------------------------

def test_carnot_check(capsys, tmp_path):
    inst = menelaus_instance()
    code, out = run(capsys, "carnot", "check", "--instance", write(tmp_path, "i.json", inst.to_json()))
    assert code == 0 and out["holds"] is True
    assert Fraction(out["value"]) == -1 == Fraction(out["target"])


def test_carnot_solve_last(capsys, tmp_path):
    obj = menelaus_instance().to_json()
    obj["divisors"][2]["entries"] = []
    code, out = run(capsys, "carnot", "solve-last", "--instance", write(tmp_path, "i.json", obj))
    assert code == 0 and out["holds"] is True
    assert ProjPoint.from_json(out["point"]) == ProjPoint(QQ, (1, -1, 0))


def test_carnot_random_construct_smooth(capsys, tmp_path):
    code, out = run(capsys, "carnot", "random", "--m", 4, "--p", 101, "--seed", 7)
    assert code == 0 and out["seed"] == 7
    path = write(tmp_path, "r.json", out["instance"])
    assert run(capsys, "carnot", "check", "--instance", path)[1]["holds"] is True
    code, out = run(capsys, "carnot", "construct", "--instance", path, "--seed", 3)
    assert code == 0 and out["curve"]["degree"] == 4 and out["seed"] == 3
    code, out = run(capsys, "carnot", "smooth", "--instance", path, "--seed", 3)
    assert code == 0 and out["curve"]["degree"] == 4


def test_carnot_random_concurrent(capsys, tmp_path):
    code, out = run(capsys, "carnot", "random", "--m", 3, "--p", 101, "--case", "Concurrent", "--seed", 1)
    assert code == 0 and out["instance"]["case"] == "Concurrent"
    path = write(tmp_path, "c.json", out["instance"])
    assert run(capsys, "carnot", "check", "--instance", path)[1]["holds"] is True


def test_carnot_violated_is_domain_error(capsys, tmp_path):
    obj = menelaus_instance().to_json()
    obj["divisors"][2]["entries"][0]["point"]["xyz"] = ["3", "-1", "0"]
    path = write(tmp_path, "v.json", obj)
    assert run(capsys, "carnot", "check", "--instance", path)[1]["holds"] is False
    code, out = run(capsys, "carnot", "construct", "--instance", path, "--seed", 0)
    assert code == 1 and out["error"] == "CarnotViolated"


def test_seed_generated_and_echoed(capsys):
    code, out = run(capsys, "carnot", "random", "--m", 2, "--p", 101)
    assert code == 0 and isinstance(out["seed"], int)


# --- linsys ----------------------------------------------------------------------

def test_linsys_analyze(capsys, tmp_path):
    C = random_smooth_curve(F101, 4, random.Random(4))
    P = rational_points(C, 1, random.Random(9))
    obj = {"curve": C.to_json(), "m": 1,
           "Z": {"entries": [{"point": P[0].to_json(), "mult": 1}]}}
    code, out = run(capsys, "linsys", "analyze", "--input", write(tmp_path, "a.json", obj), "--seed", 5)
    assert code == 0
    assert (out["d"], out["m"], out["n"], out["r"], out["seed"]) == (4, 1, 3, 1, 5)
    assert out["base_point_free"] is True


# --- construction ----------------------------------------------------------------

def test_construct_verify_roundtrip(capsys, tmp_path):
    argv = ["construct", "--d", 10, "--x", 1, "--beta", 0, "--p", 1009, "--seed", 42]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main([str(s) for s in argv + ["--out", a]]) == 0
    assert main([str(s) for s in argv + ["--out", b]]) == 0
    assert a.read_bytes() == b.read_bytes()
    cert = json.loads(a.read_text())
    assert (cert["r"], cert["n"], cert["triviality"], cert["seed"]) == (3, 28, "NonTrivial", 42)
    code, out = run(capsys, "verify", a)
    assert code == 0 and out["verified"] is True and out["seed"] == 42


def test_construct_rejects_out_of_range(capsys):
    code, out = run(capsys, "construct", "--d", 9, "--x", 1, "--seed", 1)
    assert code == 1 and out["error"] == "PreconditionError"


def test_verify_tampered(capsys, tmp_path):
    a = tmp_path / "a.json"
    assert main(["construct", "--d", "10", "--x", "1", "--seed", "42", "--out", str(a)]) == 0
    cert = json.loads(a.read_text())
    cert["n"] = 27
    code, out = run(capsys, "verify", write(tmp_path, "t.json", cert))
    assert code == 1 and out["error"] == "CertificationFailed"


def test_selftest(capsys):
    code, out = run(capsys, "selftest")
    assert code == 0 and out["ok"] is True and out["menelaus_checked"] > 0


def test_module_entry_point():
    env = dict(os.environ)
    src = str(Path(__file__).resolve().parents[1] / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run([sys.executable, "-m", "planelinsys", "bounds", "--d", "10", "--r", "3"],
                          capture_output=True, text=True, env=env, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"n_lower": 28}

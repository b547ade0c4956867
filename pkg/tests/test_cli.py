import json
import subprocess
import sys
from pathlib import Path

import pytest

from frobvir.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_kc(capsys):
    code, out, _ = run(capsys, "verify", "--degree", 6, DATA / "kc.alg")
    assert code == 0
    assert "virasoro-vector: pass" in out.splitlines()
    assert "virasoro_convention_charge: 10" in out


def test_character_kc(capsys):
    code, out, _ = run(capsys, "character", "--degree", 8, DATA / "kc.alg")
    assert code == 0
    assert out.strip() == "1 0 1 1 2 2 4 4 7"


def test_validate_broken(capsys):
    code, out, _ = run(capsys, "validate", DATA / "broken.alg")
    assert code == 1
    assert "invariance" in out
    assert "(t, t, 1)" in out or "t, t, 1" in out


def test_validate_good(capsys):
    code, out, _ = run(capsys, "validate", DATA / "dual.alg")
    assert code == 0
    assert "form rank: 2 of 2" in out


def test_check_axioms(capsys):
    assert run(capsys, "check-axioms", DATA / "vir_k1.alg")[0] == 0
    assert run(capsys, "check-axioms", DATA / "dual.alg")[0] == 0
    code, out, _ = run(capsys, "check-axioms", DATA / "broken.alg")
    assert code == 1 and "frobenius-axioms: fail" in out


def test_check_axioms_broken_algebroid(tmp_path, capsys):
    path = tmp_path / "bad.alg"
    path.write_text("algebroid bad\nbasis v\nop1 v v = 2 v\nform v v = 1\n")
    code, out, _ = run(capsys, "check-axioms", path)
    assert code == 1
    assert "algebroid-axioms: fail" in out
    # op0t is missing, so eq1 fails first: (v(1)v)(1)v = 4v while the right side is 0
    assert "witness axiom: eq1" in out
    assert "witness lhs: ((4))" in out and "witness rhs: ((0))" in out


def test_build(capsys):
    code, out, _ = run(capsys, "build", "--degree", 4, DATA / "dual.alg")
    assert code == 0
    lines = out.splitlines()
    assert "degree 4: dim 5" in lines
    assert "  L[-2](1)L[-2](t)|0>" in lines
    assert lines[-1] == "rank of translation from degree 2 to 3: 2 (dim F = 2)"


def test_machine_output_one_record_per_check(capsys):
    code, out, _ = run(capsys, "verify", "--machine", "--degree", 5, DATA / "dual.alg")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) == 9
    assert len({r["check"] for r in records}) == 9
    assert all(r["status"] == "pass" for r in records)
    code, out, _ = run(capsys, "validate", "--machine", DATA / "broken.alg")
    (rec,) = [json.loads(line) for line in out.splitlines()]
    assert code == 1 and rec["status"] == "fail" and rec["witness"]["axiom"] == "invariance"
    code, out, _ = run(capsys, "character", "--machine", "--degree", 6, DATA / "kc.alg")
    (rec,) = [json.loads(line) for line in out.splitlines()]
    assert rec["notes"]["dims"] == "1 0 1 1 2 2 4"


def test_demo(capsys):
    code, out, _ = run(capsys, "demo", "--degree", 5, "direct_sum(k_c(1),dual_numbers(0))")
    assert code == 0
    assert out.splitlines()[0] == "# direct_sum(k_1,dual_numbers(0)): basis e_1 1_2 t_2"
    assert run(capsys, "demo", "octonions")[0] == 2


def test_usage_errors(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra a\nbasis e\nunit e\nmul e e = 1 f\n")
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and f"{bad}:4:13: undeclared label 'f'" in err
    assert run(capsys, "validate", tmp_path / "missing.alg")[0] == 2
    assert run(capsys, "verify", "--degree", 3, DATA / "kc.alg")[0] == 2
    assert run(capsys, "build", "--degree", -1, DATA / "kc.alg")[0] == 2
    assert run(capsys, "build", DATA / "vir_k1.alg")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_degree_warning(capsys, caplog):
    code, _, _ = run(capsys, "character", "--degree", 13, DATA / "kc.alg")
    assert code == 0
    assert "safety bound 12" in caplog.text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "frobvir", "character", "--degree", "8",
                           str(DATA / "kc.alg")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1 0 1 1 2 2 4 4 7"

import io
import json
import subprocess
import sys

import pytest

from kumcoh.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_snf_from_file(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("2 2\n2 4\n6 8\n")
    code, out, _ = run(capsys, "snf", str(f))
    doc = json.loads(out)
    assert code == 0 and doc["diagonal"] == [2, 4] and doc["rank"] == 2
    assert doc["cokernel"] == {"invariant_factors": [2, 4], "free_rank": 0}


def test_snf_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("1 3\n2 4 6\n"))
    code, out, _ = run(capsys, "snf")
    assert code == 0 and json.loads(out)["cokernel"] == {"invariant_factors": [2], "free_rank": 0}


def test_snf_bad_input(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("2 2\n1 x\n"))
    assert run(capsys, "snf")[0] == 2


def test_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "--group", "S4", "--module", "gamma", "--coeff", "2", "--degree", "1")
    assert code == 0 and json.loads(out)["invariant_factors"] == [2, 2]


def test_cohomology_reps(capsys):
    code, out, _ = run(capsys, "cohomology", "--group", "S3", "--module", "gamma", "--coeff", "3",
                       "--degree", "1", "--reps")
    doc = json.loads(out)
    assert code == 0 and len(doc["representatives"]) == len(doc["invariant_factors"]) == 1


def test_cohomology_cyclic(capsys):
    code, out, _ = run(capsys, "cohomology", "--group", "S4", "--module", "trivial", "--coeff", "4",
                       "--degree", "2", "--method", "cyclic", "--cyclic-generator", "(1 2 3 4)")
    assert code == 0 and json.loads(out)["invariant_factors"] == [4]


def test_cohomology_usage_errors(capsys):
    assert run(capsys, "cohomology", "--group", "S4", "--module", "gamma", "--coeff", "2", "--degree", "1",
               "--method", "cyclic")[0] == 2
    assert run(capsys, "cohomology", "--group", "S9", "--module", "gamma", "--coeff", "2", "--degree", "1")[0] == 2
    with pytest.raises(SystemExit) as err:
        main(["cohomology", "--group", "S4", "--module", "nope", "--coeff", "2", "--degree", "1"])
    assert err.value.code == 2


def test_cohomology_budget(capsys):
    code, _, err = run(capsys, "cohomology", "--group", "S6", "--module", "trivial", "--coeff", "2", "--degree", "3")
    assert code == 1 and "budget" in err


def test_sp_witness(capsys):
    assert run(capsys, "sp-witness", "--n", "3", "--e", "2")[1].strip() == "1 1 1 2"
    assert run(capsys, "sp-witness", "--n", "3", "--e", "3")[1].strip() == "none"
    code, out, _ = run(capsys, "sp-witness", "--n", "5", "--e", "2", "--json")
    assert code == 0 and json.loads(out)["variant"] == "dual"
    assert run(capsys, "sp-witness", "--n", "1", "--e", "2")[0] == 2


def test_hecke(capsys):
    code, out, _ = run(capsys, "hecke", "--level", "6", "--matrix", "1,2;6,13")
    assert code == 0 and json.loads(out)["member"] is True
    assert run(capsys, "hecke", "--level", "6", "--matrix", "1,2")[0] == 2


def test_ledger(capsys):
    code, out, _ = run(capsys, "ledger", "--n", "4")
    doc = json.loads(out)
    assert code == 0 and all(doc["identities"].values()) and doc["rank_E"] == str(4**4)


def test_partitions(capsys):
    code, out, _ = run(capsys, "partitions", "--n", "5")
    rows = json.loads(out)
    assert code == 0 and [r["partition"] for r in rows] == [[5], [4, 1], [3, 2]]
    code, out, _ = run(capsys, "partitions", "--n", "5", "--table")
    assert "(4,1)" in out


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--mod", "2", "--only", "h0-standard,sp-witness", "--format", "md")
    assert code == 0 and "pass 2, fail 0" in out
    assert run(capsys, "verify", "--n", "9")[0] == 2
    with pytest.raises(SystemExit) as err:
        main(["verify", "--n", "a..b"])
    assert err.value.code == 2


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "kumcoh.cli", "sp-witness", "--n", "3", "--e", "2"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "1 1 1 2"

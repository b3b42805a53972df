import pytest

from dqir import bundled
from dqir.cli import budgets_from_env, run
from dqir.fuzz import Budgets

FT = str(bundled.path("F_T.dqdimacs"))
FF = str(bundled.path("F_F.dqdimacs"))
LD = str(bundled.path("ld_refutation.proof"))


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve(capsys):
    code, out, _ = call(capsys, "solve", FT)
    assert (code, out) == (0, "TRUE\n")
    code, out, _ = call(capsys, "solve", FF)
    assert (code, out) == (1, "FALSE\n")


def test_solve_witness(capsys):
    code, out, _ = call(capsys, "solve", FT, "--witness")
    assert out.splitlines() == ["TRUE", "MODEL 3 0 1", "MODEL 4 1 0", "MODEL 5 1 0 0 1"]


@pytest.mark.parametrize("calc", ["dqures", "dqres"])
def test_steps_on_doubled_formula(capsys, calc):
    assert call(capsys, "steps", FF, "--calc", calc)[:2] == (0, "NO-STEPS\n")


def test_steps_lists_merging_resolution(capsys):
    code, out, _ = call(capsys, "steps", FT, "--calc", "dldqres")
    assert code == 0
    assert "LRES 1 2 3 : *2 5" in out.splitlines()


def test_check_and_audit(capsys):
    code, out, _ = call(capsys, "check", FT, LD)
    assert code == 0 and out.splitlines()[-1] == "RESULT VALID BOTTOM 1"
    code, out, _ = call(capsys, "audit", FT, LD)
    assert code == 2
    lines = out.splitlines()
    assert lines[0] == "UNSOUNDNESS-WITNESS"
    assert "MODEL 5 1 0 0 1" in lines


@pytest.mark.parametrize("calc", ["dir", "exp"])
def test_prove_then_check(capsys, tmp_path, calc):
    proof = tmp_path / "p.proof"
    code, out, _ = call(capsys, "prove", FF, "--calc", calc, "-o", str(proof))
    assert code == 0 and out.startswith("REFUTED")
    assert call(capsys, "check", FF, str(proof))[0] == 0
    assert call(capsys, "audit", FF, str(proof))[:2][0] == 0


def test_prove_true_formula(capsys):
    assert call(capsys, "prove", FT)[:2] == (1, "NOT-REFUTED\n")


def test_validate(capsys, tmp_path):
    assert call(capsys, "validate", FT)[:2] == (0, "VALID\n")
    bad = tmp_path / "bad.dqdimacs"
    bad.write_text("p cnf 1 1\ne 1 0\n1 2 0\n")
    code, out, _ = call(capsys, "validate", str(bad))
    assert code == 1 and out.startswith("INVALID")


def test_translate(capsys, tmp_path):
    target = tmp_path / "f.p"
    assert call(capsys, "translate", FT, "-o", str(target))[0] == 0
    text = target.read_text()
    call(capsys, "translate", FT, "-o", str(target))
    assert target.read_text() == text
    assert "cnf(unit_np0, axiom, ~p(c0))." in text


def test_fuzz_command(capsys):
    code, out, _ = call(capsys, "fuzz", "--seed", "1", "--count", "5")
    assert code == 0
    assert out.splitlines()[-1] == "SUMMARY instances 5 discrepancies 0 budget 0"


def test_exit_codes(capsys, tmp_path, monkeypatch):
    assert call(capsys, "nosuch")[0] == 64
    assert call(capsys, "steps", FT)[0] == 64
    assert call(capsys, "solve", str(tmp_path / "missing"))[0] == 66
    bad = tmp_path / "bad.dqdimacs"
    bad.write_text("p cnf 1 1\ne 1 0\n1 x 0\n")
    assert call(capsys, "solve", str(bad))[0] == 65
    monkeypatch.setenv("DQIR_BUDGET", "10")
    code, _, err = call(capsys, "solve", FT)
    assert code == 69 and "256" in err


def test_budget_env():
    assert budgets_from_env(None) == Budgets()
    assert budgets_from_env("5") == Budgets(5, 5, 5, 5)
    assert budgets_from_env("models=3,ground=9") == Budgets(models=3, ground=9)

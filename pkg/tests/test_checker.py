from dataclasses import replace

from dqir import bundled
from dqir.checker import CONSISTENT, UNSOUNDNESS_WITNESS, check_proof, soundness_audit
from dqir.core import DQBF, Annotation, AnnotatedLiteral, ExtLit, Prefix
from dqir.oracle import decide
from dqir.proof import Proof, ProofStep, parse_proof
from dqir.prover import prove_dir, prove_expansion
from helpers import CONTRADICTION, F_F, F_T, corpus

LD = bundled.ld_refutation()


def test_bundled_refutation_is_valid():
    report = check_proof(F_T, LD)
    assert report.valid and report.derives_bottom
    assert report.overall == "VALID"
    assert report.summary_line() == "RESULT VALID BOTTOM 1"


def test_same_proof_under_plain_calculus_is_invalid():
    report = check_proof(F_T, replace(LD, calculus="DQRES"))
    assert not report.valid
    assert [v.id for v in report.errors()] == [5, 6, 7, 8, 9]
    assert report.summary_line().startswith("RESULT INVALID")


def test_later_steps_are_checked_after_an_error():
    steps = list(LD.steps)
    steps[4] = replace(steps[4], clause=frozenset({ExtLit(2, "*")}))
    report = check_proof(F_T, Proof("DLDQRES", tuple(steps)))
    # step 7 resolves on z, which the tampered step 5 no longer has
    assert [v.id for v in report.errors()] == [5, 7]
    assert report.derives_bottom  # steps 8 and 9 still follow from the claimed clauses


def test_check_is_deterministic():
    assert check_proof(F_T, LD) == check_proof(F_T, LD)


def test_prover_refutation_of_false_formula_is_valid():
    r = prove_dir(F_F)
    report = check_proof(F_F, r.proof)
    assert report.valid and report.is_refutation


def test_audit_finds_unsoundness_witness():
    audit = soundness_audit(F_T, LD)
    assert audit.verdict == UNSOUNDNESS_WITNESS
    assert audit.witness == bundled.F_T_MODEL


def test_audit_of_sound_refutation_is_consistent():
    assert soundness_audit(F_F, prove_dir(F_F).proof).verdict == CONSISTENT


def test_audit_of_invalid_proof_is_consistent():
    audit = soundness_audit(F_T, replace(LD, calculus="DQRES"))
    assert audit.verdict == CONSISTENT and audit.oracle is None


def test_axiom_checks():
    p = parse_proof("p dqbf-proof DQRES\n1 AX 9 : 1\n2 AX 1 : 2 3\n")
    report = check_proof(F_T, p)
    assert not report.steps[0].ok and "out of range" in report.steps[0].reason
    assert not report.steps[1].ok


def test_rule_outside_calculus():
    p = parse_proof("p dqbf-proof DIR\n1 AX 1 : 3{} \n2 RED 1 1 : 3{}\n")
    assert "not part of DIR" in check_proof(F_T, p).steps[1].reason


def test_inst_must_bind_universals():
    p = Proof("DIR", (ProofStep(1, "AX", (1,), frozenset({AnnotatedLiteral(1)})), ProofStep(2, "INST", (1,), frozenset({AnnotatedLiteral(1)}), annotation=Annotation.of({1: 0}))))
    report = check_proof(CONTRADICTION, p)
    assert report.steps[0].ok and not report.steps[1].ok


def test_universal_pivot_only_in_qu_calculi():
    text = "1 AX 1 : 1\n2 AX 2 : -1 2\n3 RES 1 2 1 : 2\n4 RED 3 2 :\n"
    f = DQBF(Prefix((1, 2), (), {}), (frozenset({1}), frozenset({-1, 2})))
    assert not check_proof(f, parse_proof("p dqbf-proof DQRES\n" + text)).valid
    ok = check_proof(f, parse_proof("p dqbf-proof DQURES\n" + text))
    assert ok.valid and ok.derives_bottom


def test_no_valid_refutation_of_true_formula_in_corpus():
    for f in corpus():
        truth = decide(f).truth
        for r in (prove_dir(f), prove_expansion(f)):
            if r.refuted:
                assert not truth
                assert check_proof(f, r.proof).is_refutation

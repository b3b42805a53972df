import pytest
from hypothesis import given

from dqir import bundled
from dqir.core import DQBF, Annotation, AnnotatedLiteral, ExtLit, Prefix
from dqir.dqdimacs import ParseError, SemanticError, emit_dqdimacs, parse_dqdimacs
from dqir.proof import ForwardReferenceError, Proof, ProofStep, emit_proof, parse_proof
from dqir.prover import prove_dir, prove_expansion
from helpers import F_F, F_T, corpus, formulas

F_T_TEXT = """c the true formula with a merging refutation
p cnf 5 4
a 1 2 0
d 3 1 0
d 4 2 0
d 5 1 2 0
3 2 5 0
-3 -2 5 0
4 1 -5 0
-4 -1 -5 0
"""


def test_parse_true_formula():
    f = parse_dqdimacs(F_T_TEXT)
    assert f == F_T
    assert f.matrix[0] == frozenset({2, 3, 5})


def test_single_existential():
    f = parse_dqdimacs("p cnf 1 1\ne 1 0\n1 0\n")
    assert f == DQBF(Prefix((), (1,), {1: ()}), (frozenset({1}),))


def test_e_lines_take_preceding_universals():
    f = parse_dqdimacs("p cnf 4 1\na 1 0\ne 2 0\na 3 0\ne 4 0\n2 4 0\n")
    assert f.deps(2) == (1,)
    assert f.deps(4) == (1, 3)


def test_d_line_on_existential_is_semantic_error():
    text = "p cnf 4 0\na 1 0\ne 4 0\nd 3 4 0\n"
    with pytest.raises(SemanticError) as e:
        parse_dqdimacs(text)
    assert e.value.line == 4


@pytest.mark.parametrize(
    "text, line",
    [
        ("p cnf 2 1\na 1 0\n1 x 0\n", 3),
        ("p cnf 1 1\ne 1 0\n1 2 0\n", 3),
        ("p cnf 1 2\ne 1 0\n1 0\n", 1),
        ("e 1 0\n", 1),
        ("p cnf 2 1\na 1 0\ne 1 0\n1 0\n", 3),
        ("p cnf 2 1\ne 1 0\n1 0\na 2 0\n", 4),
    ],
)
def test_malformed_input_reports_a_position(text, line):
    with pytest.raises(ParseError) as e:
        parse_dqdimacs(text)
    assert e.value.line == line
    assert e.value.column >= 1


def test_emit_false_formula_shape():
    text = emit_dqdimacs(F_F)
    lines = text.splitlines()
    assert lines[0] == "p cnf 6 6"
    assert sum(1 for ln in lines if ln.startswith("d ")) == 2
    assert sum(1 for ln in lines[1:] if ln[0] not in "ad") == 6


def test_emit_empty_formula():
    assert emit_dqdimacs(DQBF()).splitlines() == ["p cnf 0 0"]


def test_bundled_files_are_canonical():
    for name in bundled.NAMES:
        text = bundled.text(f"{name}.dqdimacs")
        assert emit_dqdimacs(parse_dqdimacs(text)) == text


@given(formulas)
def test_dqdimacs_round_trip(f):
    assert parse_dqdimacs(emit_dqdimacs(f)) == f


def test_dqdimacs_round_trip_on_corpus():
    for f in corpus():
        text = emit_dqdimacs(f)
        assert parse_dqdimacs(text) == f
        assert emit_dqdimacs(parse_dqdimacs(text)) == text


def test_bundled_refutation_parses():
    p = bundled.ld_refutation()
    assert p.calculus == "DLDQRES"
    assert [s.rule for s in p.steps] == ["AX"] * 4 + ["LRES"] * 3 + ["REDSTAR"] * 2
    assert p.steps[6].clause == frozenset({ExtLit(1, "*"), ExtLit(2, "*")})
    assert p.conclusion == frozenset()
    assert p.is_refutation


def test_one_step_proof():
    p = parse_proof("p dqbf-proof DIR\n1 AX 1 : 3{} \n")
    assert len(p.steps) == 1
    assert p.steps[0].clause == frozenset({AnnotatedLiteral(3, Annotation())})


def test_forward_reference():
    text = "p dqbf-proof DIR\n1 AX 1 : 3{}\n2 RES 1 3 3 : \n"
    with pytest.raises(ForwardReferenceError) as e:
        parse_proof(text)
    assert e.value.line == 3


def test_unknown_calculus_tag():
    with pytest.raises(ParseError):
        parse_proof("p dqbf-proof IRM\n")


def test_missing_header():
    with pytest.raises(ParseError):
        parse_proof("1 AX 1 : 3{}\n")


def test_annotated_syntax():
    text = "p dqbf-proof DIR\n1 AX 2 : 3{1/1,0/2} -4{0/2}\n2 INST 1 1/5 : 3{1/1,0/2} -4{0/2,1/5}\n"
    p = parse_proof(text)
    assert p.steps[1].annotation == Annotation.of({5: 1})
    assert AnnotatedLiteral(-4, Annotation.of({2: 0, 5: 1})) in p.steps[1].clause
    assert emit_proof(p) == text


def test_emitted_proof_of_bundled_refutation():
    assert emit_proof(bundled.ld_refutation()) == bundled.text("ld_refutation.proof")


def test_proof_round_trip_on_corpus():
    for f in corpus(count=60):
        for r in (prove_dir(f), prove_expansion(f)):
            if r.refuted:
                text = emit_proof(r.proof)
                assert parse_proof(text) == r.proof
                assert emit_proof(parse_proof(text)) == text


def test_proof_round_trip_cdcl_steps():
    p = Proof("DLQU", (ProofStep(1, "AX", (1,), frozenset({ExtLit.of(1)})), ProofStep(2, "RED", (1,), frozenset(), reduced=1)))
    assert parse_proof(emit_proof(p)) == p

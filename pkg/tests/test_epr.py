import itertools

import pytest
from hypothesis import given, settings

from dqir.calculus import dir_axiom, instantiate
from dqir.checker import check_proof
from dqir.core import DQBF, Annotation, AnnotatedLiteral, Prefix
from dqir.epr.foproof import GROUND, RESOLVE, FOProof, FOStep, Input, check_fo_proof, emit_fo_proof, parse_fo_proof
from dqir.epr.ground import GroundSet, ground, saturate, truth_table_sat
from dqir.epr.logic import NOT_P0, P1, FOAtom, FOVar, neg, p_atom, pos, substitute
from dqir.epr.simulate import RestrictionViolation, lemma1_check, lift_ground_refutation, translate_dir_proof
from dqir.epr.translate import (
    emit_tptp,
    naming_for,
    parse_tptp_naming,
    tptp_line,
    translate,
    translate_annotated,
    translate_clause,
)
from dqir.oracle import decide
from dqir.proof import Proof, ProofStep
from dqir.prover import prove_dir
from helpers import CONTRADICTION, F_F, F_T, PI1, U, V, W, X, Y, corpus, formula_with_clause


def fv(u):
    return FOVar(u)


def gs(*clauses):
    cs = tuple(frozenset(c) for c in clauses)
    return GroundSet(cs, tuple((i, Annotation()) for i in range(1, len(cs) + 1)), len(cs))


def test_translate_pi1_clause():
    t = translate(PI1)
    expected = {
        pos(FOAtom(X, (fv(U), fv(V)))),
        pos(FOAtom(Y, (fv(V), fv(W)))),
        neg(p_atom(fv(U))),
        pos(p_atom(fv(V))),
    }
    assert t.matrix[0] == frozenset(expected)
    assert t.inputs[-2:] == (P1, NOT_P0)


def test_translate_edge_clauses():
    f = DQBF(Prefix((1, 2), (3,), {3: (1,)}), ())
    assert translate_clause(f, []) == frozenset()
    assert translate_clause(f, [1, -2]) == frozenset({pos(p_atom(fv(1))), neg(p_atom(fv(2)))})


def test_translate_annotated_pi1():
    c = {AnnotatedLiteral(X, Annotation.of({U: 1, V: 0})), AnnotatedLiteral(Y, Annotation.of({V: 0}))}
    assert translate_annotated(PI1, c) == frozenset({pos(FOAtom(X, (1, 0))), pos(FOAtom(Y, (0, fv(W))))})
    assert translate_annotated(PI1, set()) == frozenset()
    plain = {AnnotatedLiteral(-X, Annotation())}
    assert translate_annotated(PI1, plain) == frozenset({neg(FOAtom(X, (fv(U), fv(V))))})


def test_tptp_lines():
    naming = naming_for(PI1)
    assert tptp_line("unit_p1", P1, naming) == "cnf(unit_p1, axiom, p(c1))."
    assert tptp_line("m1", translate(PI1).matrix[0], naming) == "cnf(m1, axiom, (x3(U,V) | x4(V,W) | ~p(U) | p(V)))."
    assert tptp_line("goal", frozenset(), naming) == "cnf(goal, axiom, $false)."


def test_tptp_is_stable_and_naming_reads_back():
    a, b = emit_tptp(translate(F_T)), emit_tptp(translate(F_T))
    assert a == b
    naming = parse_tptp_naming(a)
    assert naming == naming_for(F_T)
    assert "cnf(m1, axiom, (x3(U) | x5(U,V) | p(V)))." in a.splitlines()


def test_ground_counts():
    two = frozenset({pos(FOAtom(7, (fv(1), fv(2))))})
    assert len(ground([two])) == 4
    fixed = frozenset({pos(FOAtom(7, (0, 1)))})
    assert ground([fixed]).clauses == (fixed,)


def test_ground_true_formula():
    t = translate(F_T)
    g = ground(t.matrix)
    assert g.instances == 16
    assert len(g) == 16
    assert ground(t.inputs).instances == 18


def test_ground_drops_tautologies():
    c = frozenset({pos(p_atom(fv(1))), neg(p_atom(fv(2)))})
    assert len(ground([c])) == 2  # sigma with equal values makes p(b) | ~p(b)


def test_saturate_small_sets():
    r = saturate(gs(P1, {neg(p_atom(1))}))
    assert not r.satisfiable
    assert sum(1 for s in r.proof.steps if s.rule == RESOLVE) == 1
    assert not saturate(gs({pos(FOAtom(3, ()))}, {neg(FOAtom(3, ()))})).satisfiable
    assert saturate(gs(P1, NOT_P0)).satisfiable


def test_saturate_false_formula():
    r = saturate(ground(translate(F_F).inputs))
    assert not r.satisfiable
    assert check_fo_proof(translate(F_F).inputs, r.proof).is_refutation


def test_lemma1_examples():
    for f, truth in ((F_T, True), (F_F, False), (CONTRADICTION, False)):
        rep = lemma1_check(f)
        assert rep.truth is truth and rep.satisfiable is truth and rep.agree


def test_lemma1_on_corpus():
    assert all(lemma1_check(f).agree for f in corpus())


def test_saturate_agrees_with_truth_tables_on_corpus():
    for f in corpus(count=120):
        g = ground(translate(f).inputs)
        atoms = {lit.atom for c in g for lit in c}
        if len(atoms) > 14:
            continue
        assert saturate(g).satisfiable == truth_table_sat(g.clauses)


def test_axiom_simulation_pi1():
    f = PI1
    p = Proof("DIR", (ProofStep(1, "AX", (1,), dir_axiom(f, f.matrix[0])),))
    fo = translate_dir_proof(f, p)
    assert [s.rule for s in fo.steps] == [GROUND, RESOLVE, RESOLVE]
    assert fo.steps[0].substitution == Annotation.of({U: 1, V: 0})
    assert fo.steps[1].premises[0] == Input(2) and fo.steps[2].premises[1] == Input(3)
    assert fo.conclusion == frozenset({pos(FOAtom(X, (1, 0))), pos(FOAtom(Y, (0, fv(W))))})
    assert check_fo_proof(translate(f).inputs, fo).valid


def test_existential_axiom_is_one_ground_step():
    f = CONTRADICTION
    p = Proof("DIR", (ProofStep(1, "AX", (1,), dir_axiom(f, f.matrix[0])),))
    fo = translate_dir_proof(f, p)
    assert len(fo.steps) == 1 and fo.steps[0].rule == GROUND
    assert fo.steps[0].substitution == Annotation()


def test_simulation_of_false_formula_refutation():
    p = prove_dir(F_F).proof
    fo = translate_dir_proof(F_F, p)
    assert check_fo_proof(translate(F_F).inputs, fo).is_refutation


def test_fo_proof_text_round_trip():
    fo = translate_dir_proof(F_F, prove_dir(F_F).proof)
    text = emit_fo_proof(fo)
    assert parse_fo_proof(text) == fo
    assert emit_fo_proof(parse_fo_proof(text)) == text


def test_fo_checker_catches_bad_steps():
    inputs = translate(CONTRADICTION).inputs
    bad = FOProof((FOStep(1, GROUND, (Input(1),), frozenset({pos(FOAtom(1, ()))}), substitution=Annotation.of({1: 0})),))
    assert not check_fo_proof(inputs, bad).valid
    wrong = FOProof((FOStep(1, RESOLVE, (Input(2), Input(1)), frozenset(), atom=FOAtom(1, ())),))
    assert not check_fo_proof(inputs, wrong).valid


def test_lift_contradiction_in_three_steps():
    r = saturate(ground(translate(CONTRADICTION).inputs))
    p = lift_ground_refutation(CONTRADICTION, r.proof)
    assert [s.rule for s in p.steps] == ["AX", "AX", "RES"]
    assert check_proof(CONTRADICTION, p).is_refutation


def test_lift_leaf_with_one_unit_resolution():
    # forall u exists x(u): {-u, x}, {-x}; the u=1 instance loses ~p(1) against p(1)
    f = DQBF(Prefix((1,), (2,), {2: (1,)}), (frozenset({-1, 2}), frozenset({-2})))
    x1 = pos(FOAtom(2, (1,)))
    fo = FOProof((
        FOStep(1, GROUND, (Input(1),), {neg(p_atom(1)), x1}, substitution=Annotation.of({1: 1})),
        FOStep(2, RESOLVE, (Input(3), 1), {x1}, atom=p_atom(1)),
        FOStep(3, GROUND, (Input(2),), {x1.negate()}, substitution=Annotation.of({1: 1})),
        FOStep(4, RESOLVE, (2, 3), set(), atom=x1.atom),
    ))
    assert check_fo_proof(translate(f).inputs, fo).is_refutation
    p = lift_ground_refutation(f, fo)
    assert [s.rule for s in p.steps] == ["AX", "AX", "INST", "RES"]
    assert p.steps[0].clause == frozenset({AnnotatedLiteral(2, Annotation.of({1: 1}))})
    assert check_proof(f, p).is_refutation


def test_lift_rejects_existential_resolution_before_p_cut():
    f = DQBF(Prefix((1,), (2,), {2: (1,)}), (frozenset({-1, 2}), frozenset({-2})))
    x1 = pos(FOAtom(2, (1,)))
    fo = FOProof((
        FOStep(1, GROUND, (Input(1),), {neg(p_atom(1)), x1}, substitution=Annotation.of({1: 1})),
        FOStep(2, GROUND, (Input(2),), {x1.negate()}, substitution=Annotation.of({1: 1})),
        FOStep(3, RESOLVE, (1, 2), {neg(p_atom(1))}, atom=x1.atom),
        FOStep(4, RESOLVE, (Input(3), 3), set(), atom=p_atom(1)),
    ))
    with pytest.raises(RestrictionViolation):
        lift_ground_refutation(f, fo)


def test_lift_and_simulate_on_corpus():
    for f in corpus():
        if decide(f).truth:
            continue
        inputs = translate(f).inputs
        r = saturate(ground(inputs))
        p = lift_ground_refutation(f, r.proof)
        assert check_proof(f, p).is_refutation
        fo = translate_dir_proof(f, p)
        rep = check_fo_proof(inputs, fo)
        assert rep.is_refutation


@given(formula_with_clause())
@settings(max_examples=200)
def test_instantiation_commutes_with_translation(fct):
    f, c, tau = fct
    left = translate_annotated(f, instantiate(f.prefix, tau, c))
    right = substitute(translate_annotated(f, c), tau)
    assert left == right


def test_derived_clauses_are_entailed_at_ground_level():
    checked = 0
    for f in corpus(count=80):
        r = prove_dir(f)
        if not r.refuted:
            continue
        g = ground(translate(f).inputs).clauses
        for s in r.proof.steps:
            fo = translate_annotated(f, s.clause)
            vs = sorted({v.universal for lit in fo for v in lit.atom.variables()})
            for bits in itertools.product((0, 1), repeat=len(vs)):
                inst = substitute(fo, Annotation(tuple(zip(vs, bits))))
                negation = [frozenset({lit.negate()}) for lit in inst]
                atoms = {lit.atom for c in (*g, *negation) for lit in c}
                if len(atoms) > 16:
                    continue
                assert not truth_table_sat([*g, *negation])
                checked += 1
    assert checked > 100

"""Moving refutations between D-IR-calc and ground FO-res."""

from __future__ import annotations

from dataclasses import dataclass

from ..calculus import axiom_assignment, dir_axiom, instantiate
from ..checker import check_proof
from ..core import DQBF, AnnotatedLiteral, Annotation, DQIRError
from ..oracle import OracleVerdict, decide
from ..proof import Proof, ProofStep
from .foproof import GROUND, RESOLVE, FOProof, FOStep, Input, Ref
from .ground import SaturationResult, ground, saturate
from .logic import NOT_P0, P1, FOClause, has_p, neg, p_atom, pos, substitute
from .translate import translate, translate_annotated, translate_annotated_literal, untranslate_ground


class InvalidProofError(DQIRError):
    pass


class RestrictionViolation(DQIRError):
    """The ground refutation does not resolve p-literals first."""


def ground_translation(f: DQBF, ground_budget: int | None = None):
    t = translate(f)
    return t, ground(t.inputs, ground_budget)


@dataclass(frozen=True)
class EquivalenceReport:
    oracle: OracleVerdict
    saturation: SaturationResult

    @property
    def truth(self) -> bool:
        return self.oracle.truth

    @property
    def satisfiable(self) -> bool:
        return self.saturation.satisfiable

    @property
    def agree(self) -> bool:
        return self.truth == self.satisfiable

    def __str__(self) -> str:
        return (
            f"oracle {'TRUE' if self.truth else 'FALSE'} "
            f"ground {'SAT' if self.satisfiable else 'UNSAT'} "
            f"{'agree' if self.agree else 'DISAGREE'}"
        )


def lemma1_check(
    f: DQBF,
    model_budget: int | None = None,
    ground_budget: int | None = None,
    clause_budget: int | None = None,
    oracle: OracleVerdict | None = None,
    saturation: SaturationResult | None = None,
) -> EquivalenceReport:
    """Compare the oracle with satisfiability of the grounded translation."""
    if oracle is None:
        oracle = decide(f, model_budget)
    if saturation is None:
        _, g = ground_translation(f, ground_budget)
        saturation = saturate(g, clause_budget)
    return EquivalenceReport(oracle, saturation)


def translate_dir_proof(f: DQBF, p: Proof) -> FOProof:
    """Simulate each D-IR-calc step in FO-res over ``translate(f).inputs``.

    Axioms become a grounding by the axiom assignment followed by resolution
    against ``p(1)`` and ``~p(0)``; instantiation becomes grounding and
    resolution stays resolution.
    """
    if p.calculus != "DIR" or not check_proof(f, p).valid:
        raise InvalidProofError("input is not a valid D-IR-calc proof")
    t = translate(f)
    m = len(t.matrix)
    unit_p1, unit_np0 = Input(m + 1), Input(m + 2)
    steps: list[FOStep] = []
    of: dict[int, int] = {}

    def emit(rule: str, prem: tuple[Ref, ...], clause: FOClause, **kw) -> int:
        sid = len(steps) + 1
        steps.append(FOStep(sid, rule, prem, clause, **kw))
        return sid

    claims: dict[int, FOClause] = {}
    for s in p.steps:
        if s.rule == "AX":
            (idx,) = s.premises
            src = t.matrix[idx - 1]
            tau = axiom_assignment(f, f.matrix[idx - 1])
            cur = substitute(src, tau)
            sid = emit(GROUND, (Input(idx),), cur, substitution=tau)
            if neg(p_atom(1)) in cur:
                cur = cur - {neg(p_atom(1))}
                sid = emit(RESOLVE, (unit_p1, sid), cur, atom=p_atom(1))
            if pos(p_atom(0)) in cur:
                cur = cur - {pos(p_atom(0))}
                sid = emit(RESOLVE, (sid, unit_np0), cur, atom=p_atom(0))
        elif s.rule == "INST":
            prev = claims[s.premises[0]]
            live = {v.universal for lit in prev for v in lit.atom.variables()}
            sigma = s.annotation.restrict_to(live)
            cur = substitute(prev, sigma)
            sid = emit(GROUND, (of[s.premises[0]],), cur, substitution=sigma)
        else:
            a, b = s.premises
            atom = translate_annotated_literal(f, _pivot(s)).atom
            cur = (claims[a] - {pos(atom)}) | (claims[b] - {neg(atom)})
            sid = emit(RESOLVE, (of[a], of[b]), cur, atom=atom)
        if cur != translate_annotated(f, s.clause):
            raise InvalidProofError(f"simulation of step {s.id} diverged")
        of[s.id] = sid
        claims[s.id] = cur
    return FOProof(tuple(steps))


def _pivot(s: ProofStep) -> AnnotatedLiteral:
    return AnnotatedLiteral(s.pivot, s.annotation or Annotation())


def lift_ground_refutation(f: DQBF, fp: FOProof) -> Proof:
    """Turn a p-first ground FO-res refutation over ``translate(f).inputs`` into D-IR-calc.

    Each matrix leaf, once its p-literals are cut away by ``p(1)`` and
    ``~p(0)``, is an axiom of its matrix clause followed by an instantiation
    with the rest of the grounding substitution.  Resolutions on existential
    atoms carry over one to one.
    """
    t = translate(f)
    m = len(t.matrix)
    out: list[ProofStep] = []
    leaf_ids: dict[tuple[int, Annotation], int] = {}
    # state per FO step: ("unit", clause) | ("leaf", clause, k, sigma) | ("dir", clause, dir_id)
    state: dict[int, tuple] = {}

    def emit(rule, prem, clause, **kw) -> int:
        sid = len(out) + 1
        out.append(ProofStep(sid, rule, prem, clause, **kw))
        return sid

    def close_leaf(k: int, sigma: Annotation, clause: FOClause) -> tuple:
        key = (k, sigma)
        if key not in leaf_ids:
            tau = axiom_assignment(f, f.matrix[k - 1])
            if sigma.restrict_to(tau.domain) != tau:
                raise RestrictionViolation(f"leaf from clause {k} is subsumed by p(1) or ~p(0)")
            ax = dir_axiom(f, f.matrix[k - 1])
            sid = emit("AX", (k,), ax)
            residual = Annotation(tuple(pr for pr in sigma if pr[0] not in tau.domain))
            relevant = set().union(*(f.prefix.dep_set(abs(lit)) for lit in f.matrix[k - 1]
                                     if f.prefix.is_existential(abs(lit))))
            residual = residual.restrict_to(relevant)
            if residual:
                sid = emit("INST", (sid,), instantiate(f.prefix, residual, ax), annotation=residual)
            leaf_ids[key] = sid
        return ("dir", clause, leaf_ids[key])

    def leaf_state(k: int, sigma: Annotation, clause: FOClause) -> tuple:
        # a purely universal clause can ground to p(1) or ~p(0) verbatim; no axiom does
        if k > m or clause in (P1, NOT_P0):
            return ("unit", clause)
        if has_p(clause):
            return ("leaf", clause, k, sigma)
        return close_leaf(k, sigma, clause)

    def fetch(r: Ref) -> tuple:
        if isinstance(r, Input):
            c = t.inputs[r.index - 1]
            if r.index <= m and not all(lit.atom.is_ground() for lit in c):
                raise RestrictionViolation(f"input #{r.index} used without grounding")
            return leaf_state(r.index, Annotation(), c)
        return state[r]

    for s in fp.steps:
        if s.rule == GROUND:
            (r,) = s.premises
            if not isinstance(r, Input):
                raise RestrictionViolation(f"step {s.id} grounds a derived clause")
            if not 1 <= r.index <= m + 2:
                raise InvalidProofError(f"step {s.id} uses unknown input #{r.index}")
            c = substitute(t.inputs[r.index - 1], s.substitution or Annotation())
            if c != s.clause or not all(lit.atom.is_ground() for lit in c):
                raise InvalidProofError(f"step {s.id} is not a ground instance of #{r.index}")
            state[s.id] = leaf_state(r.index, s.substitution or Annotation(), c)
            continue
        if s.rule != RESOLVE:
            raise InvalidProofError(f"unknown rule {s.rule}")
        a, b = (fetch(r) for r in s.premises)
        lp, ln = pos(s.atom), neg(s.atom)
        if lp not in a[1] or ln not in b[1]:
            raise InvalidProofError(f"step {s.id} resolves an atom its premises lack")
        clause = (a[1] - {lp}) | (b[1] - {ln})
        if clause != s.clause:
            raise InvalidProofError(f"step {s.id} claims the wrong resolvent")
        if s.atom.is_p:
            units = [x for x in (a, b) if x[0] == "unit"]
            other = b if a[0] == "unit" else a
            if not units or units[0][1] not in (P1, NOT_P0) or other[0] != "leaf":
                raise RestrictionViolation(f"step {s.id} resolves a p-atom outside a unit step")
            _, _, k, sigma = other
            state[s.id] = ("leaf", clause, k, sigma) if has_p(clause) else close_leaf(k, sigma, clause)
            continue
        for x in (a, b):
            if x[0] != "dir":
                raise RestrictionViolation(f"step {s.id} resolves an existential atom while p-literals remain")
        pivot = untranslate_ground(f, [lp])
        (al,) = pivot
        sid = emit("RES", (a[2], b[2]), untranslate_ground(f, clause), pivot=al.var, annotation=al.annotation)
        state[s.id] = ("dir", clause, sid)

    if fp.conclusion != frozenset():
        raise InvalidProofError("FO proof does not end in the empty clause")
    last = state[fp.steps[-1].id]
    if last[0] != "dir":
        raise InvalidProofError("refutation does not end in a lifted step")
    return Proof("DIR", tuple(out[: last[2]]))


"""Refutation producers: D-IR-calc through ground FO-res, and lifted forall-Exp+Res."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .calculus import axiom_assignment, dir_axiom, expansion_axiom, instantiate
from .checker import check_proof
from .core import DQBF, AnnotatedLiteral, Annotation, BudgetExceeded, is_tautological
from .epr.foproof import FOProof
from .epr.ground import saturate
from .epr.simulate import InvalidProofError, ground_translation, lift_ground_refutation
from .oracle import universal_assignments
from .proof import Proof, ProofStep

DEFAULT_ASSIGNMENT_BUDGET = 1 << 20
DEFAULT_EXPANSION_BUDGET = 10**6


@dataclass(frozen=True)
class ProverResult:
    refuted: bool
    proof: Proof | None = None
    fo_proof: FOProof | None = None

    @property
    def tag(self) -> str:
        return "R" if self.refuted else "N"


def prove_dir(f: DQBF, ground_budget: int | None = None, clause_budget: int | None = None) -> ProverResult:
    """Saturate the grounded EPR translation; lift an UNSAT result to D-IR-calc."""
    _, g = ground_translation(f, ground_budget)
    sat = saturate(g, clause_budget)
    if sat.satisfiable:
        return ProverResult(False)
    return ProverResult(True, lift_ground_refutation(f, sat.proof), sat.proof)


def expansion_axioms(f: DQBF, budget: int | None = None) -> Iterator[tuple[int, Annotation, frozenset]]:
    """(matrix index, total assignment, annotated clause) for every clause an assignment falsifies."""
    budget = DEFAULT_ASSIGNMENT_BUDGET if budget is None else budget
    need = 1 << len(f.universals)
    if need > budget:
        raise BudgetExceeded("universal assignment", need, budget)
    for alpha in universal_assignments(f):
        tau = Annotation.of(alpha)
        for idx, c in enumerate(f.matrix, 1):
            if is_tautological(c):
                continue
            if any(alpha.get(abs(lit)) == (lit > 0) for lit in c if abs(lit) in alpha):
                continue
            yield idx, tau, expansion_axiom(f, c, tau)


def _clause_key(c: frozenset[AnnotatedLiteral]) -> tuple:
    return (len(c), sorted(al.sort_key() for al in c))


def _davis_putnam(axioms, budget: int) -> tuple[dict, frozenset] | None:
    """Variable elimination with unit propagation and subsumption.

    Returns the derivation map and the empty clause on refutation, else None.
    Derivations are ``("ax", idx, tau)`` or ``("res", pos_clause, neg_clause, pivot)``.
    """
    origin: dict[frozenset, tuple] = {}
    live: set[frozenset] = set()
    bottom = frozenset()

    def insert(c: frozenset, why: tuple) -> None:
        if any(al.negate() in c for al in c):
            return
        if c not in origin:
            if len(origin) >= budget:
                raise BudgetExceeded("expansion clause", len(origin) + 1, budget)
            origin[c] = why
        if any(d <= c for d in live):
            return
        for d in [d for d in live if c < d]:
            live.discard(d)
        live.add(c)

    for idx, tau, c in axioms:
        insert(c, ("ax", idx, tau))

    while bottom not in live:
        progress = True
        while progress and bottom not in live:
            progress = False
            for u in sorted((c for c in live if len(c) == 1), key=_clause_key):
                if u not in live:
                    continue
                (lit,) = u
                hits = sorted((d for d in live if lit.negate() in d), key=_clause_key)
                for d in hits:
                    pair = (u, d) if lit.positive else (d, u)
                    insert(d - {lit.negate()}, ("res", *pair, lit if lit.positive else lit.negate()))
                    progress = True
        if bottom in live:
            break
        atoms = sorted({AnnotatedLiteral(al.var, al.annotation) for c in live for al in c})
        if not atoms:
            return None

        def cost(a: AnnotatedLiteral) -> tuple:
            np_ = sum(1 for c in live if a in c)
            nn = sum(1 for c in live if a.negate() in c)
            return (np_ * nn - np_ - nn, a)

        a = min(atoms, key=cost)
        pos_side = sorted((c for c in live if a in c), key=_clause_key)
        neg_side = sorted((c for c in live if a.negate() in c), key=_clause_key)
        for c in (*pos_side, *neg_side):
            live.discard(c)
        for cp in pos_side:
            for cn in neg_side:
                insert((cp - {a}) | (cn - {a.negate()}), ("res", cp, cn, a))
    return origin, bottom


def prove_expansion(f: DQBF, assignment_budget: int | None = None, clause_budget: int | None = None) -> ProverResult:
    """Refute in lifted forall-Exp+Res by full expansion and propositional resolution."""
    budget = DEFAULT_EXPANSION_BUDGET if clause_budget is None else clause_budget
    found = _davis_putnam(list(expansion_axioms(f, assignment_budget)), budget)
    if found is None:
        return ProverResult(False)
    origin, bottom = found
    order: list[frozenset] = []
    ids: dict[frozenset, int] = {}
    stack = [(bottom, False)]
    while stack:
        c, expanded = stack.pop()
        if c in ids:
            continue
        why = origin[c]
        if expanded or why[0] == "ax":
            order.append(c)
            ids[c] = len(order)
            continue
        stack.append((c, True))
        stack.extend((p, False) for p in (why[2], why[1]) if p not in ids)
    steps = []
    for c in order:
        why = origin[c]
        sid = ids[c]
        if why[0] == "ax":
            steps.append(ProofStep(sid, "AX", (why[1],), c, annotation=why[2]))
        else:
            _, cp, cn, a = why
            steps.append(ProofStep(sid, "RES", (ids[cp], ids[cn]), c, pivot=a.var, annotation=a.annotation))
    return ProverResult(True, Proof("EXP", tuple(steps)))


def expansion_to_dir(f: DQBF, p: Proof) -> Proof:
    """Rewrite an expansion proof as D-IR-calc: each axiom becomes AX plus INST."""
    if p.calculus != "EXP" or not check_proof(f, p).valid:
        raise InvalidProofError("input is not a valid expansion proof")
    out: list[ProofStep] = []
    new_id: dict[int, int] = {}
    for s in p.steps:
        if s.rule == "AX":
            (idx,) = s.premises
            c = f.matrix[idx - 1]
            ax = dir_axiom(f, c)
            out.append(ProofStep(len(out) + 1, "AX", (idx,), ax))
            tau_ax = axiom_assignment(f, c)
            relevant = set()
            for lit in c:
                if f.prefix.is_existential(abs(lit)):
                    relevant |= f.prefix.dep_set(abs(lit))
            tau = s.annotation or Annotation()
            residual = tau.restrict_to(relevant - tau_ax.domain)
            if residual:
                out.append(ProofStep(len(out) + 1, "INST", (len(out),), instantiate(f.prefix, residual, ax), annotation=residual))
        else:
            a, b = s.premises
            out.append(
                ProofStep(len(out) + 1, "RES", (new_id[a], new_id[b]), s.clause, pivot=s.pivot, annotation=s.annotation)
            )
        new_id[s.id] = len(out)
    return Proof("DIR", tuple(out))

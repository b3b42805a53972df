"""Grounding over {0,1} and ground FO-res saturation."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Sequence

from ..core import Annotation, BudgetExceeded
from .foproof import GROUND, RESOLVE, FOProof, FOStep, Input
from .logic import FOAtom, FOClause, FOLit, is_fo_tautology, substitute, variables

DEFAULT_GROUND_BUDGET = 10**6
DEFAULT_CLAUSE_BUDGET = 10**6


@dataclass(frozen=True)
class GroundSet:
    """Distinct non-tautological ground instances, each with its first origin.

    ``origins[i]`` is ``(k, sigma)``: clause ``i`` is input ``k`` (1-based)
    under substitution ``sigma``.
    """

    clauses: tuple[FOClause, ...]
    origins: tuple[tuple[int, Annotation], ...]
    instances: int  # instances generated before removing duplicates and tautologies

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)


def ground(clauses: Sequence[FOClause], budget: int | None = None) -> GroundSet:
    budget = DEFAULT_GROUND_BUDGET if budget is None else budget
    plan = [sorted(v.universal for v in variables(c)) for c in clauses]
    total = sum(1 << len(vs) for vs in plan)
    if total > budget:
        raise BudgetExceeded("ground clause", total, budget)
    seen: set[FOClause] = set()
    out: list[FOClause] = []
    origins: list[tuple[int, Annotation]] = []
    for k, (c, vs) in enumerate(zip(clauses, plan), 1):
        for bits in itertools.product((0, 1), repeat=len(vs)):
            sigma = Annotation(tuple(zip(vs, bits)))
            g = substitute(c, sigma)
            if g in seen or is_fo_tautology(g):
                continue
            seen.add(g)
            out.append(g)
            origins.append((k, sigma))
    return GroundSet(tuple(out), tuple(origins), total)


def atoms_of(clauses) -> list[FOAtom]:
    return sorted({lit.atom for c in clauses for lit in c}, key=FOAtom.key)


def truth_table_sat(clauses: Sequence[FOClause]) -> bool:
    """Satisfiability of a ground clause set by enumerating all atom assignments."""
    atoms = atoms_of(clauses)
    index = {a: i for i, a in enumerate(atoms)}
    coded = [[(index[lit.atom], lit.positive) for lit in c] for c in clauses]
    for bits in itertools.product((False, True), repeat=len(atoms)):
        if all(any(bits[i] == s for i, s in c) for c in coded):
            return True
    return False


@dataclass(frozen=True)
class SaturationResult:
    satisfiable: bool
    proof: FOProof | None
    generated: int  # clauses kept (inputs and resolvents)


def _max_literal(c: FOClause) -> FOLit:
    return max(c, key=FOLit.key)


def saturate(g: GroundSet, budget: int | None = None) -> SaturationResult:
    """Ordered resolution on a ground set with subsumption.

    Atoms are totally ordered with every ``p`` atom above every existential
    atom, and only the maximal literal of a clause is resolved upon.  So a
    clause that still has a ``p`` literal is resolved on a ``p`` literal, and
    units ``p(1)`` / ``~p(0)`` (selected first, being shortest) remove every
    clause they subsume before it is used.
    """
    budget = DEFAULT_CLAUSE_BUDGET if budget is None else budget
    clauses: list[FOClause] = []
    origin: list[tuple] = []  # ("in", k, sigma) | ("res", pos_id, neg_id, atom)
    known: dict[FOClause, int] = {}
    passive: list[tuple[int, int]] = []

    def add(c: FOClause, why: tuple) -> int | None:
        if c in known or is_fo_tautology(c):
            return None
        if len(clauses) >= budget:
            raise BudgetExceeded("saturation clause", len(clauses) + 1, budget)
        cid = len(clauses)
        clauses.append(c)
        origin.append(why)
        known[c] = cid
        heapq.heappush(passive, (len(c), cid))
        return cid

    for c, (k, sigma) in zip(g.clauses, g.origins):
        add(c, ("in", k, sigma))

    active: set[int] = set()
    index: dict[FOLit, set[int]] = {}
    dead: set[int] = set()
    bottom = known.get(frozenset())

    while passive and bottom is None:
        _, gid = heapq.heappop(passive)
        if gid in dead:
            continue
        given = clauses[gid]
        if any(clauses[a] <= given for a in active):
            dead.add(gid)
            continue
        for a in [a for a in active if given <= clauses[a]]:
            active.discard(a)
            dead.add(a)
            index[_max_literal(clauses[a])].discard(a)
        active.add(gid)
        sel = _max_literal(given)
        index.setdefault(sel, set()).add(gid)
        for other in sorted(index.get(sel.negate(), ())):
            oc = clauses[other]
            r = (given - {sel}) | (oc - {sel.negate()})
            pos_id, neg_id = (gid, other) if sel.positive else (other, gid)
            rid = add(r, ("res", pos_id, neg_id, sel.atom))
            if rid is not None and not r:
                bottom = rid
                break

    if bottom is None:
        return SaturationResult(True, None, len(clauses))
    return SaturationResult(False, _extract(bottom, clauses, origin), len(clauses))


def _extract(root: int, clauses: list[FOClause], origin: list[tuple]) -> FOProof:
    order: list[int] = []
    done: set[int] = set()
    stack = [(root, False)]
    while stack:
        cid, expanded = stack.pop()
        if cid in done:
            continue
        why = origin[cid]
        if expanded or why[0] == "in":
            done.add(cid)
            order.append(cid)
            continue
        stack.append((cid, True))
        stack.extend((p, False) for p in (why[2], why[1]) if p not in done)
    step_of: dict[int, int] = {}
    steps = []
    for n, cid in enumerate(order, 1):
        why = origin[cid]
        if why[0] == "in":
            _, k, sigma = why
            steps.append(FOStep(n, GROUND, (Input(k),), clauses[cid], substitution=sigma))
        else:
            _, a, b, atom = why
            steps.append(FOStep(n, RESOLVE, (step_of[a], step_of[b]), clauses[cid], atom=atom))
        step_of[cid] = n
    return FOProof(tuple(steps))

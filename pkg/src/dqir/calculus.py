"""Rule functions for D-IR-calc, lifted expansion, and the lifted CDCL calculi.

Index conditions of the QBF calculi are read as dependency conditions:
``ind(u) < ind(x)`` becomes ``u in Y_x`` and ``ind(x) < ind(u)`` becomes
``u not in Y_x``.  Comparisons between two universals impose nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import (
    DQBF,
    NEG,
    POS,
    STAR,
    AnnotatedLiteral,
    Annotation,
    DQIRError,
    ExtLit,
    ext_clause,
    Prefix,
    is_tautological,
)

AnnotatedClause = frozenset  # frozenset[AnnotatedLiteral]
ExtClause = frozenset  # frozenset[ExtLit]

SHORT, LONG = "short", "long"


class RuleError(DQIRError):
    """A rule's side condition fails; ``code`` names which one."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class Calculus:
    tag: str
    rules: frozenset[str]
    universal_pivots: bool = False
    annotated: bool = False


CALCULI: dict[str, Calculus] = {
    "DIR": Calculus("DIR", frozenset({"AX", "INST", "RES"}), annotated=True),
    "EXP": Calculus("EXP", frozenset({"AX", "RES"}), annotated=True),
    "DQRES": Calculus("DQRES", frozenset({"AX", "RES", "RED"})),
    "DQURES": Calculus("DQURES", frozenset({"AX", "RES", "RED"}), universal_pivots=True),
    "DLDQRES": Calculus("DLDQRES", frozenset({"AX", "LRES", "RED", "REDSTAR"})),
    "DLQU": Calculus("DLQU", frozenset({"AX", "LRES", "RED", "REDSTAR"}), universal_pivots=True),
}


def calculus(tag: str) -> Calculus:
    try:
        return CALCULI[tag.upper()]
    except KeyError:
        raise RuleError("unsupported-calculus", f"unknown calculus {tag!r}") from None


# --- annotations -----------------------------------------------------------


def restrict(prefix: Prefix, x: int, tau: Annotation) -> Annotation:
    """``rest_x(tau)``: keep only the bindings of variables in ``Y_x``."""
    return tau.restrict_to(prefix.dep_set(x))


def check_annotated(prefix: Prefix, al: AnnotatedLiteral) -> AnnotatedLiteral:
    if not prefix.is_existential(al.var):
        raise RuleError("not-existential", f"annotated literal on non-existential {al.var}")
    extra = al.annotation.domain - prefix.dep_set(al.var)
    if extra:
        raise RuleError(
            "annotation-outside-deps",
            f"annotation of {al.var} binds {sorted(extra)} outside its dependencies",
        )
    return al


def annotated(prefix: Prefix, lit: int, tau: Annotation) -> AnnotatedLiteral:
    return check_annotated(prefix, AnnotatedLiteral(lit, restrict(prefix, abs(lit), tau)))


def instantiate(prefix: Prefix, tau: Annotation, c: Iterable[AnnotatedLiteral]) -> AnnotatedClause:
    """``inst_tau(C)``: fill unbound dependencies from ``tau``; existing bindings win."""
    out = set()
    for al in c:
        sigma = dict(tau.pairs)
        sigma.update(al.annotation.mapping)
        out.add(annotated(prefix, al.lit, Annotation.of(sigma)))
    return frozenset(out)


# --- D-IR-calc / lifted expansion ------------------------------------------


def axiom_assignment(f: DQBF, c: Iterable[int]) -> Annotation:
    """The assignment falsifying every universal literal of ``c``."""
    return Annotation.of({abs(lit): int(lit < 0) for lit in c if f.prefix.is_universal(abs(lit))})


def _axiom_source(f: DQBF, c: frozenset[int]) -> None:
    if c not in f.matrix:
        raise RuleError("clause-not-in-matrix", f"{sorted(c)} is not a matrix clause")
    if is_tautological(c):
        raise RuleError("tautological-clause", f"{sorted(c)} is tautological")


def dir_axiom(f: DQBF, c: Iterable[int]) -> AnnotatedClause:
    c = frozenset(c)
    _axiom_source(f, c)
    tau = axiom_assignment(f, c)
    return frozenset(
        annotated(f.prefix, lit, tau) for lit in c if f.prefix.is_existential(abs(lit))
    )


def expansion_axiom(f: DQBF, c: Iterable[int], tau: Annotation) -> AnnotatedClause:
    """Axiom of lifted forall-Exp+Res for a total universal assignment ``tau``."""
    c = frozenset(c)
    _axiom_source(f, c)
    missing = f.prefix.universal_set - tau.domain
    if missing or tau.domain - f.prefix.universal_set:
        raise RuleError("non-total-assignment", "expansion axioms need a total universal assignment")
    for lit in c:
        if f.prefix.is_universal(abs(lit)) and tau.get(abs(lit)) == int(lit > 0):
            raise RuleError("satisfied-clause", f"the assignment satisfies universal literal {lit}")
    return frozenset(
        annotated(f.prefix, lit, tau) for lit in c if f.prefix.is_existential(abs(lit))
    )


def dir_resolve(c1: AnnotatedClause, c2: AnnotatedClause, pivot: AnnotatedLiteral) -> AnnotatedClause:
    if pivot not in c1:
        raise RuleError("pivot-not-found", f"{pivot} is not in the first premise")
    neg = pivot.negate()
    if neg not in c2:
        if any(al.lit == neg.lit for al in c2):
            raise RuleError("annotation-mismatch", f"second premise has {-pivot.lit} but not as {neg}")
        raise RuleError("pivot-not-found", f"{neg} is not in the second premise")
    return (c1 - {pivot}) | (c2 - {neg})


# --- lifted CDCL calculi ---------------------------------------------------


def _by_var(c: ExtClause) -> dict[int, ExtLit]:
    out: dict[int, ExtLit] = {}
    for e in c:
        if e.var in out:
            raise RuleError("tautological-clause", f"clause has two literals on {e.var}")
        out[e.var] = e
    return out


def cdcl_reduce(f: DQBF, c: ExtClause, u: int, star: bool = False) -> ExtClause:
    """Universal reduction of ``u`` (or ``u*`` when ``star``) from ``c``."""
    if not f.prefix.is_universal(u):
        raise RuleError("not-universal", f"{u} is not universal")
    hit = [e for e in c if e.var == u and e.is_star == star]
    if not hit:
        raise RuleError("literal-not-found", f"{'*' if star else ''}{u} does not occur in the clause")
    rest = c - {hit[0]}
    for e in sorted(rest):
        if f.prefix.is_existential(e.var) and f.prefix.depends(e.var, u):
            raise RuleError("dependency-violation", f"{e} depends on {u}")
    return rest


def cdcl_resolve(f: DQBF, c1: ExtClause, c2: ExtClause, pivot: int, mode: str = SHORT) -> ExtClause:
    """Resolve ``c1`` (containing ``pivot``) with ``c2`` (containing ``-pivot``)."""
    m1, m2 = _by_var(c1), _by_var(c2)
    l1, l2 = m1.get(pivot), m2.get(pivot)
    if (l1 is not None and l1.is_star) or (l2 is not None and l2.is_star):
        raise RuleError("star-pivot", f"pivot {pivot} occurs as a merged literal")
    if l1 != ExtLit(pivot, POS) or l2 != ExtLit(pivot, NEG):
        raise RuleError("pivot-not-found", f"need {pivot} in the first and -{pivot} in the second premise")
    del m1[pivot], m2[pivot]
    existential_pivot = f.prefix.is_existential(pivot)

    if mode == SHORT:
        for e in (*m1.values(), *m2.values()):
            if e.is_star:
                raise RuleError("star-in-short", f"merged literal {e} in short-distance resolution")
        for v in sorted(m1.keys() & m2.keys()):
            if m1[v] != m2[v]:
                raise RuleError("tautology-blocked", f"{m1[v]} and {m2[v]} clash")
        return frozenset(m1.values()) | frozenset(m2.values())

    if mode != LONG:
        raise ValueError(f"unknown mode {mode!r}")
    out = {**m1, **m2}
    for v in sorted(m1.keys() & m2.keys()):
        a, b = m1[v], m2[v]
        if a == b and not a.is_star:
            continue
        if not f.prefix.is_universal(v):
            raise RuleError("tautology-blocked", f"{a} and {b} clash")
        if existential_pivot and f.prefix.depends(pivot, v):
            raise RuleError("merge-dependency-violation", f"cannot merge {v}: it is in Y_{pivot}")
        out[v] = ExtLit(v, STAR)
    return frozenset(out.values())


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    premises: tuple[int, ...]
    conclusion: ExtClause
    pivot: int | None = None
    reduced: int | None = None

    def replay(self, f: DQBF, clauses: Mapping[int, ExtClause]) -> ExtClause:
        if self.rule in ("RED", "REDSTAR"):
            return cdcl_reduce(f, clauses[self.premises[0]], self.reduced, self.rule == "REDSTAR")
        mode = LONG if self.rule == "LRES" else SHORT
        a, b = self.premises
        return cdcl_resolve(f, clauses[a], clauses[b], self.pivot, mode)

    def __str__(self) -> str:
        param = self.pivot if self.pivot is not None else self.reduced
        lits = sorted(self.conclusion, key=lambda e: (e.var, e.polarity))
        head = " ".join([self.rule, *map(str, self.premises), str(param)])
        return f"{head} : {' '.join(map(str, lits))}".rstrip()


def enumerate_steps(
    f: DQBF,
    tag: str,
    clauses: Mapping[int, ExtClause] | Sequence[ExtClause] | None = None,
    max_width: int | None = None,
) -> list[RuleApplication]:
    """Every single CDCL-calculus inference available from ``clauses``.

    ``clauses`` defaults to the matrix; integer-literal clauses are lifted
    to extended clauses.  Sequences are numbered from 1.  The result is sorted by premises then
    pivot/reduced variable and keeps the first application per conclusion.
    """
    calc = calculus(tag)
    if calc.annotated:
        raise RuleError("unsupported-calculus", f"step enumeration is not available for {calc.tag}")
    if clauses is None:
        clauses = f.matrix
    if not isinstance(clauses, Mapping):
        clauses = dict(enumerate(clauses, 1))
    clauses = {i: ext_clause(c) if any(isinstance(e, int) for e in c) else frozenset(c) for i, c in clauses.items()}
    ids = sorted(clauses)
    found: list[RuleApplication] = []

    for i in ids:
        for e in clauses[i]:
            if not f.prefix.is_universal(e.var):
                continue
            rule = "REDSTAR" if e.is_star else "RED"
            if rule not in calc.rules:
                continue
            try:
                concl = cdcl_reduce(f, clauses[i], e.var, e.is_star)
            except RuleError:
                continue
            found.append(RuleApplication(rule, (i,), concl, reduced=e.var))

    rule = "LRES" if "LRES" in calc.rules else "RES"
    mode = LONG if rule == "LRES" else SHORT
    for i in ids:
        for j in ids:
            if i == j:
                continue
            for e in clauses[i]:
                v = e.var
                if e.polarity != POS or ExtLit(v, NEG) not in clauses[j]:
                    continue
                if f.prefix.is_universal(v) and not calc.universal_pivots:
                    continue
                try:
                    concl = cdcl_resolve(f, clauses[i], clauses[j], v, mode)
                except RuleError:
                    continue
                found.append(RuleApplication(rule, (i, j), concl, pivot=v))

    found.sort(key=lambda r: (r.premises, r.pivot if r.pivot is not None else r.reduced, r.rule))
    seen: set[ExtClause] = set()
    out = []
    for r in found:
        if max_width is not None and len(r.conclusion) > max_width:
            continue
        if r.conclusion in seen:
            continue
        seen.add(r.conclusion)
        out.append(r)
    return out

"""Step-by-step proof checking and oracle-backed soundness audits."""

from __future__ import annotations

from dataclasses import dataclass

from . import calculus as calc
from .core import DQBF, AnnotatedLiteral, Annotation, ExtLit, ext_clause, is_tautological
from .oracle import OracleVerdict, decide
from .proof import Proof, ProofStep, format_clause

VALID, INVALID = "VALID", "INVALID"
UNSOUNDNESS_WITNESS, CONSISTENT = "UNSOUNDNESS-WITNESS", "CONSISTENT"


class StepFailure(Exception):
    pass


@dataclass(frozen=True)
class StepVerdict:
    id: int
    ok: bool
    reason: str = ""


@dataclass(frozen=True)
class CheckReport:
    calculus: str
    steps: tuple[StepVerdict, ...]
    derives_bottom: bool

    @property
    def valid(self) -> bool:
        return all(s.ok for s in self.steps)

    @property
    def overall(self) -> str:
        return VALID if self.valid else INVALID

    @property
    def is_refutation(self) -> bool:
        return self.valid and self.derives_bottom

    def errors(self) -> list[StepVerdict]:
        return [s for s in self.steps if not s.ok]

    def summary_line(self) -> str:
        return f"RESULT {self.overall} BOTTOM {int(self.derives_bottom)}"

    def render(self) -> str:
        lines = [f"calculus {self.calculus}"]
        for s in self.steps:
            lines.append(f"step {s.id} ok" if s.ok else f"step {s.id} error {s.reason}")
        lines.append(self.summary_line())
        return "\n".join(lines) + "\n"


def _clause_kind_ok(clause: frozenset, annotated: bool) -> bool:
    want = AnnotatedLiteral if annotated else ExtLit
    return all(isinstance(lit, want) for lit in clause)


def _expected(f: DQBF, cal: calc.Calculus, step: ProofStep, claims: dict[int, frozenset]) -> frozenset:
    if step.rule not in cal.rules:
        raise StepFailure(f"rule {step.rule} is not part of {cal.tag}")
    for p in step.premises if step.rule != "AX" else ():
        if p not in claims:
            raise StepFailure(f"premise {p} is not an earlier step")
    pre = f.prefix

    if step.rule == "AX":
        (idx,) = step.premises
        if not 1 <= idx <= len(f.matrix):
            raise StepFailure(f"matrix index {idx} out of range")
        c = f.matrix[idx - 1]
        if is_tautological(c):
            raise StepFailure(f"matrix clause {idx} is tautological")
        if cal.tag == "EXP":
            if step.annotation is None and f.universals:
                raise StepFailure("expansion axiom needs a total universal assignment")
            return calc.expansion_axiom(f, c, step.annotation or Annotation())
        if step.annotation is not None:
            raise StepFailure("axiom takes no assignment in this calculus")
        if cal.annotated:
            return calc.dir_axiom(f, c)
        return ext_clause(c)

    if step.rule == "INST":
        tau = step.annotation or Annotation()
        bad = tau.domain - pre.universal_set
        if bad:
            raise StepFailure(f"instantiation binds non-universal {sorted(bad)}")
        return calc.instantiate(pre, tau, claims[step.premises[0]])

    if step.rule in ("RES", "LRES"):
        a, b = step.premises
        v = step.pivot
        if cal.annotated:
            if not pre.is_existential(v):
                raise StepFailure(f"pivot {v} is not existential")
            pivot = AnnotatedLiteral(v, step.annotation or Annotation())
            return calc.dir_resolve(claims[a], claims[b], pivot)
        if step.annotation is not None:
            raise StepFailure("resolution takes no annotation in this calculus")
        if pre.is_universal(v):
            if not cal.universal_pivots:
                raise StepFailure(f"universal pivot {v} is not allowed in {cal.tag}")
        elif not pre.is_existential(v):
            raise StepFailure(f"pivot {v} is undeclared")
        mode = calc.LONG if step.rule == "LRES" else calc.SHORT
        return calc.cdcl_resolve(f, claims[a], claims[b], v, mode)

    return calc.cdcl_reduce(f, claims[step.premises[0]], step.reduced, step.rule == "REDSTAR")


def check_proof(f: DQBF, p: Proof) -> CheckReport:
    """Recompute every step and compare with its claimed clause.

    Each step is checked against the claimed clauses of its premises, so one
    bad step does not hide errors further down.
    """
    try:
        cal = calc.calculus(p.calculus)
    except calc.RuleError as e:
        return CheckReport(p.calculus, (StepVerdict(0, False, str(e)),), False)
    claims: dict[int, frozenset] = {}
    verdicts = []
    bottom = False
    last = 0
    for step in p.steps:
        try:
            if step.id <= last:
                raise StepFailure("step ids must be strictly increasing")
            if not _clause_kind_ok(step.clause, cal.annotated):
                raise StepFailure(f"claimed clause has the wrong literal kind for {cal.tag}")
            got = _expected(f, cal, step, claims)
            if got != step.clause:
                raise StepFailure(
                    f"claimed [{format_clause(step.clause)}] but rule yields [{format_clause(got)}]"
                )
        except (StepFailure, calc.RuleError) as e:
            verdicts.append(StepVerdict(step.id, False, str(e)))
        else:
            verdicts.append(StepVerdict(step.id, True))
            bottom = bottom or not step.clause
        claims[step.id] = step.clause
        last = max(last, step.id)
    return CheckReport(cal.tag, tuple(verdicts), bottom)


@dataclass(frozen=True)
class AuditVerdict:
    verdict: str
    report: CheckReport
    oracle: OracleVerdict | None

    @property
    def witness(self):
        return self.oracle.witness if self.oracle else None


def soundness_audit(f: DQBF, p: Proof, budget: int | None = None) -> AuditVerdict:
    """Flag a checked refutation of a true formula as an unsoundness witness."""
    report = check_proof(f, p)
    if not report.is_refutation:
        return AuditVerdict(CONSISTENT, report, None)
    verdict = decide(f, budget)
    kind = UNSOUNDNESS_WITNESS if verdict.truth else CONSISTENT
    return AuditVerdict(kind, report, verdict)

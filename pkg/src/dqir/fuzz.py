"""Seeded differential harness: oracle vs both provers vs the ground EPR route."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .checker import check_proof
from .core import DQBF, BudgetExceeded, Prefix
from .dqdimacs import emit_dqdimacs, parse_dqdimacs
from .epr.foproof import check_fo_proof
from .epr.simulate import ground_translation, lemma1_check, translate_dir_proof
from .epr.ground import saturate
from .epr.translate import translate_annotated
from .oracle import decide
from .proof import emit_proof, parse_proof
from .prover import ProverResult, expansion_to_dir, prove_dir, prove_expansion


@dataclass(frozen=True)
class Budgets:
    models: int | None = None
    ground: int | None = None
    clauses: int | None = None
    assignments: int | None = None


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 1
    count: int = 200
    max_universals: int = 3
    max_existentials: int = 3
    max_dep_size: int = 2
    max_clauses: int = 8
    max_width: int = 4
    pinned: tuple[DQBF, ...] = ()
    budgets: Budgets = field(default_factory=Budgets)


def random_dqbf(rng: random.Random, cfg: FuzzConfig) -> DQBF:
    nu = rng.randint(0, cfg.max_universals)
    ne = rng.randint(1, cfg.max_existentials)
    universals = tuple(range(1, nu + 1))
    existentials = tuple(range(nu + 1, nu + ne + 1))
    deps = {}
    for x in existentials:
        k = rng.randint(0, min(cfg.max_dep_size, nu))
        deps[x] = tuple(sorted(rng.sample(universals, k)))
    nvars = nu + ne
    matrix = []
    for _ in range(rng.randint(1, cfg.max_clauses)):
        width = rng.randint(1, min(cfg.max_width, nvars))
        vs = rng.sample(range(1, nvars + 1), width)
        matrix.append(frozenset(v if rng.random() < 0.5 else -v for v in vs))
    return DQBF(Prefix(universals, existentials, deps), tuple(matrix))


def instance(cfg: FuzzConfig, n: int) -> DQBF:
    """The n-th instance (1-based): pinned formulas first, then seeded random ones."""
    if n <= len(cfg.pinned):
        return cfg.pinned[n - 1]
    return random_dqbf(random.Random(f"{cfg.seed}:{n}"), cfg)


@dataclass(frozen=True)
class Outcome:
    n: int
    truth: bool | None = None
    dir: bool | None = None
    exp: bool | None = None
    lemma1: bool = False
    checked: bool = False
    simulated: bool | None = None  # None when there is no D-IR-calc proof to translate
    round_trip: bool = False
    budget: str | None = None
    problems: tuple[str, ...] = ()

    @property
    def discrepancy(self) -> bool:
        return bool(self.problems)

    def line(self) -> str:
        if self.budget is not None:
            return f"INSTANCE {self.n} BUDGET {self.budget}"

        def rn(b: bool | None) -> str:
            return "R" if b else "N"

        return (
            f"INSTANCE {self.n} ORACLE {'T' if self.truth else 'F'} DIR {rn(self.dir)} "
            f"EXP {rn(self.exp)} L1 {'OK' if self.lemma1 else 'FAIL'} "
            f"CHECK {'OK' if self.checked else 'FAIL'}"
        )


def _refutes(f: DQBF, r: ProverResult) -> bool:
    rep = check_proof(f, r.proof)
    return rep.valid and rep.is_refutation


def run_instance(f: DQBF, n: int, budgets: Budgets = Budgets()) -> Outcome:
    problems: list[str] = []
    try:
        verdict = decide(f, budgets.models)
        _, g = ground_translation(f, budgets.ground)
        sat = saturate(g, budgets.clauses)
        dirr = prove_dir(f, budgets.ground, budgets.clauses)
        expr = prove_expansion(f, budgets.assignments, budgets.clauses)
    except BudgetExceeded as e:
        return Outcome(n, budget=e.what.replace(" ", "-"))
    l1 = lemma1_check(f, oracle=verdict, saturation=sat).agree
    if not l1:
        problems.append("lemma1")
    if dirr.refuted == verdict.truth:
        problems.append("dir-verdict")
    if expr.refuted == verdict.truth:
        problems.append("exp-verdict")

    checked = True
    simulated = None
    if dirr.refuted:
        if not _refutes(f, dirr):
            checked = False
            problems.append("dir-proof")
        fo = translate_dir_proof(f, dirr.proof)
        inputs = ground_translation(f, budgets.ground)[0].inputs
        rep = check_fo_proof(inputs, fo)
        simulated = rep.valid and rep.conclusion == translate_annotated(f, dirr.proof.conclusion)
        if not simulated:
            problems.append("simulation")
    if expr.refuted:
        if not _refutes(f, expr):
            checked = False
            problems.append("exp-proof")
        as_dir = expansion_to_dir(f, expr.proof)
        if not check_proof(f, as_dir).is_refutation:
            checked = False
            problems.append("exp-to-dir")

    round_trip = parse_dqdimacs(emit_dqdimacs(f)) == f
    for r in (dirr, expr):
        if r.proof is not None and parse_proof(emit_proof(r.proof)) != r.proof:
            round_trip = False
    if not round_trip:
        problems.append("round-trip")
    return Outcome(n, verdict.truth, dirr.refuted, expr.refuted, l1, checked, simulated, round_trip, None, tuple(problems))


def _job(args: tuple[FuzzConfig, int]) -> Outcome:
    cfg, n = args
    return run_instance(instance(cfg, n), n, cfg.budgets)


@dataclass(frozen=True)
class FuzzReport:
    outcomes: tuple[Outcome, ...]

    @property
    def discrepancies(self) -> list[Outcome]:
        return [o for o in self.outcomes if o.discrepancy]

    @property
    def over_budget(self) -> list[Outcome]:
        return [o for o in self.outcomes if o.budget is not None]

    def render(self) -> str:
        lines = [o.line() for o in self.outcomes]
        for o in self.discrepancies:
            lines.append(f"DISCREPANCY {o.n} {' '.join(o.problems)}")
        lines.append(
            f"SUMMARY instances {len(self.outcomes)} discrepancies {len(self.discrepancies)} "
            f"budget {len(self.over_budget)}"
        )
        return "\n".join(lines) + "\n"


def fuzz(cfg: FuzzConfig, jobs: int = 1) -> FuzzReport:
    total = len(cfg.pinned) + cfg.count
    work = [(cfg, n) for n in range(1, total + 1)]
    if jobs > 1 and total > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_job, work, chunksize=8))
    else:
        outcomes = [_job(w) for w in work]
    return FuzzReport(tuple(outcomes))

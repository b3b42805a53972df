"""Command-line driver: ``dqir <command> ...``.

Exit codes: 0/1/2 per command, 64 usage, 65 malformed input, 66 I/O, 69 budget.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from .calculus import RuleError, enumerate_steps
from .checker import UNSOUNDNESS_WITNESS, check_proof, soundness_audit
from .core import DQBF, BudgetExceeded, SkolemModel, validate
from .dqdimacs import ParseError, parse_dqdimacs
from .epr.translate import emit_tptp, translate
from .fuzz import Budgets, FuzzConfig, fuzz
from .oracle import decide
from .proof import emit_proof, parse_proof
from .prover import expansion_to_dir, prove_dir, prove_expansion

EX_USAGE, EX_DATAERR, EX_NOINPUT, EX_UNAVAILABLE = 64, 65, 66, 69


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def budgets_from_env(value: str | None) -> Budgets:
    """``DQIR_BUDGET=N`` caps every budget; ``models=N,ground=N,...`` sets them one by one."""
    if not value:
        return Budgets()
    value = value.strip()
    if value.isdigit():
        n = int(value)
        return Budgets(n, n, n, n)
    fields = {}
    for part in value.split(","):
        key, sep, num = part.partition("=")
        key = key.strip()
        if not sep or key not in Budgets.__dataclass_fields__ or not num.strip().isdigit():
            raise UsageError(f"bad DQIR_BUDGET entry {part!r}")
        fields[key] = int(num)
    return Budgets(**fields)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise IOError(f"{path}: {e.strerror or e}") from e


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise IOError(f"{path}: {e.strerror or e}") from e


def _formula(path: str) -> DQBF:
    return parse_dqdimacs(_read(path))


def _model_lines(model: SkolemModel) -> list[str]:
    return [f"MODEL {x} " + " ".join(map(str, t)) for x, t in sorted(model.tables.items())]


def cmd_validate(args, budgets: Budgets) -> int:
    try:
        f = _formula(args.file)
    except ParseError as e:
        print(f"INVALID {e}")
        return 1
    report = validate(f)
    if report.ok:
        print("VALID")
        return 0
    print("INVALID")
    for v in report.violations:
        print(f"  {v}")
    return 1


def cmd_solve(args, budgets: Budgets) -> int:
    verdict = decide(_formula(args.file), budgets.models)
    print("TRUE" if verdict.truth else "FALSE")
    if args.witness and verdict.witness is not None:
        print("\n".join(_model_lines(verdict.witness)))
    return 0 if verdict.truth else 1


def cmd_prove(args, budgets: Budgets) -> int:
    f = _formula(args.file)
    if args.calc == "dir":
        result = prove_dir(f, budgets.ground, budgets.clauses)
    else:
        result = prove_expansion(f, budgets.assignments, budgets.clauses)
    if not result.refuted:
        print("NOT-REFUTED")
        return 1
    proof = result.proof
    if args.calc == "exp" and args.as_dir:
        proof = expansion_to_dir(f, proof)
    print(f"REFUTED {len(proof.steps)} steps")
    _write(args.output, emit_proof(proof))
    return 0


def cmd_check(args, budgets: Budgets) -> int:
    f = _formula(args.file)
    report = check_proof(f, parse_proof(_read(args.proof)))
    sys.stdout.write(report.render())
    return 0 if report.valid else 1


def cmd_audit(args, budgets: Budgets) -> int:
    f = _formula(args.file)
    audit = soundness_audit(f, parse_proof(_read(args.proof)), budgets.models)
    print(audit.verdict)
    print(audit.report.summary_line())
    if audit.verdict == UNSOUNDNESS_WITNESS:
        print("\n".join(_model_lines(audit.witness)))
        return 2
    return 0


def cmd_translate(args, budgets: Budgets) -> int:
    _write(args.output, emit_tptp(translate(_formula(args.file))))
    return 0


def cmd_steps(args, budgets: Budgets) -> int:
    f = _formula(args.file)
    try:
        found = enumerate_steps(f, args.calc, max_width=args.max_width)
    except RuleError as e:
        raise UsageError(str(e)) from None
    if not found:
        print("NO-STEPS")
    for r in found:
        print(r)
    return 0


def cmd_fuzz(args, budgets: Budgets) -> int:
    cfg = FuzzConfig(
        seed=args.seed,
        count=args.count,
        max_universals=args.max_universals,
        max_existentials=args.max_existentials,
        max_dep_size=args.max_dep_size,
        max_clauses=args.max_clauses,
        max_width=args.max_width,
        budgets=budgets,
    )
    if args.pin:
        cfg = replace(cfg, pinned=tuple(_formula(p) for p in args.pin))
    report = fuzz(cfg, jobs=args.jobs)
    sys.stdout.write(report.render())
    return 0 if not report.discrepancies else 1


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="dqir", description="DQBF oracle, provers and proof checker")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a DQDIMACS file is well formed")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("solve", help="decide truth by Skolem model enumeration")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="print the first satisfying model")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("prove", help="produce a refutation")
    p.add_argument("file")
    p.add_argument("--calc", choices=("dir", "exp"), default="dir")
    p.add_argument("--as-dir", action="store_true", help="with --calc exp, rewrite the proof into D-IR-calc")
    p.add_argument("-o", "--output", help="proof file (default: stdout)")
    p.set_defaults(run=cmd_prove)

    p = sub.add_parser("check", help="check a proof step by step")
    p.add_argument("file")
    p.add_argument("proof")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("audit", help="check a proof and compare with the oracle")
    p.add_argument("file")
    p.add_argument("proof")
    p.set_defaults(run=cmd_audit)

    p = sub.add_parser("translate", help="write the EPR translation as TPTP")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="TPTP file (default: stdout)")
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("steps", help="list every single inference from the matrix")
    p.add_argument("file")
    p.add_argument("--calc", required=True, type=str.upper, choices=("DQRES", "DQURES", "DLDQRES", "DLQU"))
    p.add_argument("--max-width", type=int, default=None)
    p.set_defaults(run=cmd_steps)

    p = sub.add_parser("fuzz", help="differential test on random formulas")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-universals", type=int, default=3)
    p.add_argument("--max-existentials", type=int, default=3)
    p.add_argument("--max-dep-size", type=int, default=2)
    p.add_argument("--max-clauses", type=int, default=8)
    p.add_argument("--max-width", type=int, default=4)
    p.add_argument("--pin", action="append", default=[], help="DQDIMACS file run before the random instances")
    p.set_defaults(run=cmd_fuzz)
    return ap


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        budgets = budgets_from_env(os.environ.get("DQIR_BUDGET"))
        return args.run(args, budgets)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EX_USAGE
    except IOError as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_NOINPUT
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_DATAERR
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_UNAVAILABLE


def main() -> None:
    sys.exit(run())

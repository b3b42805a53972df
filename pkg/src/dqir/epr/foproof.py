"""FO-res derivations: lazy grounding plus resolution on syntactically equal atoms.

Text format, mirroring ``dqbf-proof``::

    p fo-proof
    1 GROUND #1 1/1 0/2 : x3(1,0) x4(0,V5) ~p(1) p(0)
    2 RESOLVE #6 1 p(1) : x3(1,0) x4(0,V5) p(0)

``#k`` names the k-th input clause, a bare number an earlier step.
``RESOLVE a b A`` resolves ``A`` in ``a`` against ``~A`` in ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from ..core import Annotation
from ..dqdimacs import ParseError, tokens
from ..proof import ForwardReferenceError, parse_binding
from .logic import FOAtom, FOClause, format_fo_clause, neg, parse_atom, parse_fo_literal, pos, substitute, variables

GROUND, RESOLVE = "GROUND", "RESOLVE"


@dataclass(frozen=True, order=True)
class Input:
    index: int  # 1-based position in the input clause list

    def __str__(self) -> str:
        return f"#{self.index}"


Ref = Union[int, Input]


@dataclass(frozen=True)
class FOStep:
    id: int
    rule: str
    premises: tuple[Ref, ...]
    clause: FOClause
    substitution: Annotation | None = None  # GROUND
    atom: FOAtom | None = None  # RESOLVE

    def __post_init__(self) -> None:
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "clause", frozenset(self.clause))


@dataclass(frozen=True)
class FOProof:
    steps: tuple[FOStep, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def conclusion(self) -> FOClause | None:
        return self.steps[-1].clause if self.steps else None


def emit_fo_proof(p: FOProof) -> str:
    lines = ["p fo-proof"]
    for s in p.steps:
        parts = [str(s.id), s.rule, *map(str, s.premises)]
        if s.rule == GROUND and s.substitution is not None:
            parts.extend(f"{b}/{u}" for u, b in s.substitution)
        if s.rule == RESOLVE:
            parts.append(str(s.atom))
        body = format_fo_clause(s.clause)
        lines.append(" ".join(parts) + " :" + (" " + body if body else ""))
    return "\n".join(lines) + "\n"


def parse_fo_proof(text: str) -> FOProof:
    header = False
    steps: list[FOStep] = []
    known: set[int] = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = tokens(line)
        if not toks or toks[0][0] == "c":
            continue
        if toks[0][0] == "p":
            if header or [t for t, _ in toks] != ["p", "fo-proof"]:
                raise ParseError("header must be 'p fo-proof'", lineno, toks[0][1])
            header = True
            continue
        if not header:
            raise ParseError("missing 'p fo-proof' header", lineno, toks[0][1])
        cut = line.find(":")
        if cut < 0:
            raise ParseError("missing ':' before the clause", lineno, len(line) + 1)
        head = tokens(line[:cut])
        tail = [(t, c + cut + 1) for t, c in tokens(line[cut + 1:])]
        if len(head) < 3:
            raise ParseError("step needs id, rule and premises", lineno, toks[0][1])
        try:
            sid = int(head[0][0])
        except ValueError:
            raise ParseError("bad step id", lineno, head[0][1]) from None
        if sid <= (steps[-1].id if steps else 0):
            raise ParseError("step ids must be positive and strictly increasing", lineno, head[0][1])

        def ref(t: str, c: int) -> Ref:
            try:
                if t.startswith("#"):
                    k = int(t[1:])
                    if k <= 0:
                        raise ValueError
                    return Input(k)
                v = int(t)
            except ValueError:
                raise ParseError(f"bad premise {t!r}", lineno, c) from None
            if v not in known:
                raise ForwardReferenceError(f"premise {v} is not an earlier step", lineno, c)
            return v

        rule = head[1][0]
        clause = frozenset(parse_fo_literal(t, lineno, c) for t, c in tail)
        if rule == GROUND:
            prem = (ref(*head[2]),)
            pairs = [parse_binding(t, lineno, c) for t, c in head[3:]]
            try:
                sub = Annotation.of(pairs)
            except ValueError as e:
                raise ParseError(str(e), lineno, head[2][1]) from None
            steps.append(FOStep(sid, rule, prem, clause, substitution=sub))
        elif rule == RESOLVE:
            if len(head) != 5:
                raise ParseError("RESOLVE takes two premises and an atom", lineno, head[1][1])
            prem = (ref(*head[2]), ref(*head[3]))
            steps.append(FOStep(sid, rule, prem, clause, atom=parse_atom(*head[4], lineno)))
        else:
            raise ParseError(f"unknown rule {rule!r}", lineno, head[1][1])
        known.add(sid)
    if not header:
        raise ParseError("missing 'p fo-proof' header", 1)
    return FOProof(tuple(steps))


def read_fo_proof(path: str | Path) -> FOProof:
    return parse_fo_proof(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class FOCheckReport:
    errors: tuple[tuple[int, str], ...]
    conclusion: FOClause | None

    @property
    def valid(self) -> bool:
        return not self.errors

    @property
    def is_refutation(self) -> bool:
        return self.valid and self.conclusion == frozenset()


def check_fo_proof(inputs: Sequence[FOClause], p: FOProof) -> FOCheckReport:
    """Replay every GROUND/RESOLVE step from ``inputs`` and the claimed premises."""
    claims: dict[int, FOClause] = {}
    errors = []

    def fetch(r: Ref) -> FOClause:
        if isinstance(r, Input):
            if not 1 <= r.index <= len(inputs):
                raise ValueError(f"input #{r.index} out of range")
            return frozenset(inputs[r.index - 1])
        if r not in claims:
            raise ValueError(f"premise {r} is not an earlier step")
        return claims[r]

    for s in p.steps:
        try:
            if s.rule == GROUND:
                (r,) = s.premises
                c = fetch(r)
                sub = s.substitution or Annotation()
                unknown = sub.domain - {v.universal for v in variables(c)}
                if unknown:
                    raise ValueError(f"substitution binds absent variables {sorted(unknown)}")
                got = substitute(c, sub)
            elif s.rule == RESOLVE:
                a, b = (fetch(r) for r in s.premises)
                lp, ln = pos(s.atom), neg(s.atom)
                if lp not in a:
                    raise ValueError(f"{lp} not in first premise")
                if ln not in b:
                    raise ValueError(f"{ln} not in second premise")
                got = (a - {lp}) | (b - {ln})
            else:
                raise ValueError(f"unknown rule {s.rule}")
            if got != s.clause:
                raise ValueError(f"claimed [{format_fo_clause(s.clause)}] but got [{format_fo_clause(got)}]")
        except ValueError as e:
            errors.append((s.id, str(e)))
        claims[s.id] = s.clause
    return FOCheckReport(tuple(errors), p.conclusion)


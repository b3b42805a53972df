"""The line-oriented ``dqbf-proof`` format.

::

    p dqbf-proof DIR
    1 AX 2 : 3{1/1,0/2} -4{0/2}
    2 INST 1 1/5 : 3{1/1,0/2} -4{0/2,1/5}
    3 RES 2 7 3 1/1 0/2 : -4{0/2,1/5}

CDCL calculi use plain literals and ``*v`` for merged literals.  Under
``EXP`` an ``AX`` line lists the total universal assignment used for the
expansion after the matrix index.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .core import POS, STAR, Annotation, AnnotatedLiteral, ExtLit
from .dqdimacs import ParseError, tokens

CALCULI = ("DIR", "DQRES", "DQURES", "DLDQRES", "DLQU", "EXP")
ANNOTATED_CALCULI = ("DIR", "EXP")
RULES = ("AX", "INST", "RES", "RED", "REDSTAR", "LRES")

AnyClause = Union[frozenset[AnnotatedLiteral], frozenset[ExtLit]]

_ANN_LIT = re.compile(r"^(-?)(\d+)\{([^{}]*)\}$")
_BINDING = re.compile(r"^([01])/(\d+)$")
_STAR_LIT = re.compile(r"^\*(\d+)$")
_PLAIN_LIT = re.compile(r"^-?\d+$")


class ForwardReferenceError(ParseError):
    pass


@dataclass(frozen=True)
class ProofStep:
    id: int
    rule: str
    premises: tuple[int, ...]  # step ids; for AX the 1-based matrix index
    clause: AnyClause
    annotation: Annotation | None = None  # INST, RES pivot, EXP axiom assignment
    pivot: int | None = None  # RES / LRES
    reduced: int | None = None  # RED / REDSTAR

    def __post_init__(self) -> None:
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "clause", frozenset(self.clause))
        if self.rule == "AX" and self.annotation is not None and not self.annotation:
            object.__setattr__(self, "annotation", None)


@dataclass(frozen=True)
class Proof:
    calculus: str
    steps: tuple[ProofStep, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def conclusion(self) -> AnyClause | None:
        return self.steps[-1].clause if self.steps else None

    @property
    def is_refutation(self) -> bool:
        return bool(self.steps) and not self.steps[-1].clause


def parse_binding(tok: str, lineno: int, col: int) -> tuple[int, int]:
    m = _BINDING.match(tok)
    if not m:
        raise ParseError(f"expected <bit>/<var>, got {tok!r}", lineno, col)
    return int(m.group(2)), int(m.group(1))


def _annotation(toks: list[tuple[str, int]], lineno: int) -> Annotation:
    pairs = [parse_binding(t, lineno, c) for t, c in toks]
    try:
        return Annotation.of(pairs)
    except ValueError as e:
        raise ParseError(str(e), lineno, toks[0][1]) from None


def parse_annotated_literal(tok: str, lineno: int = 1, col: int = 1) -> AnnotatedLiteral:
    m = _ANN_LIT.match(tok)
    if not m or int(m.group(2)) == 0:
        raise ParseError(f"bad annotated literal {tok!r}", lineno, col)
    body = m.group(3).strip()
    pairs = [parse_binding(b.strip(), lineno, col) for b in body.split(",")] if body else []
    try:
        ann = Annotation.of(pairs)
    except ValueError as e:
        raise ParseError(str(e), lineno, col) from None
    lit = int(m.group(2))
    return AnnotatedLiteral(-lit if m.group(1) else lit, ann)


def parse_ext_literal(tok: str, lineno: int = 1, col: int = 1) -> ExtLit:
    m = _STAR_LIT.match(tok)
    if m and int(m.group(1)) > 0:
        return ExtLit(int(m.group(1)), STAR)
    if _PLAIN_LIT.match(tok) and int(tok) != 0:
        return ExtLit.of(int(tok))
    raise ParseError(f"bad literal {tok!r}", lineno, col)


def parse_clause_tokens(toks: list[tuple[str, int]], annotated: bool, lineno: int) -> AnyClause:
    parse = parse_annotated_literal if annotated else parse_ext_literal
    return frozenset(parse(t, lineno, c) for t, c in toks)


def _split_colon(line: str, lineno: int) -> tuple[list[tuple[str, int]], list[tuple[str, int]]]:
    pos = line.find(":")
    if pos < 0:
        raise ParseError("missing ':' before the claimed clause", lineno, len(line) + 1)
    head = tokens(line[:pos])
    tail = [(t, c + pos + 1) for t, c in tokens(line[pos + 1:])]
    return head, tail


def parse_proof(text: str) -> Proof:
    calculus: str | None = None
    steps: list[ProofStep] = []
    known: set[int] = set()
    last_id = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = tokens(line)
        if not toks or toks[0][0] == "c":
            continue
        if toks[0][0] == "p":
            if calculus is not None:
                raise ParseError("second header line", lineno, toks[0][1])
            if len(toks) != 3 or toks[1][0] != "dqbf-proof":
                raise ParseError("header must be 'p dqbf-proof <calculus>'", lineno, toks[0][1])
            if toks[2][0] not in CALCULI:
                raise ParseError(f"unknown calculus tag {toks[2][0]!r}", lineno, toks[2][1])
            calculus = toks[2][0]
            continue
        if calculus is None:
            raise ParseError("missing 'p dqbf-proof' header", lineno, toks[0][1])

        head, tail = _split_colon(line, lineno)
        if len(head) < 2:
            raise ParseError("step needs an id and a rule", lineno, toks[0][1])
        (id_tok, id_col), (rule, rule_col) = head[0], head[1]
        sid = _int_tok(id_tok, lineno, id_col)
        if sid <= last_id:
            raise ParseError("step ids must be positive and strictly increasing", lineno, id_col)
        if rule not in RULES:
            raise ParseError(f"unknown rule {rule!r}", lineno, rule_col)
        args = head[2:]

        def ref(i: int) -> int:
            if i >= len(args):
                raise ParseError(f"{rule} is missing an argument", lineno, rule_col)
            t, c = args[i]
            v = _int_tok(t, lineno, c)
            if v not in known:
                raise ForwardReferenceError(f"premise {v} is not an earlier step", lineno, c)
            return v

        def number(i: int) -> int:
            if i >= len(args):
                raise ParseError(f"{rule} is missing an argument", lineno, rule_col)
            v = _int_tok(*args[i], lineno)
            if v <= 0:
                raise ParseError("expected a positive integer", lineno, args[i][1])
            return v

        def exact(n: int) -> None:
            if len(args) != n:
                raise ParseError(f"{rule} takes {n} arguments", lineno, rule_col)

        annotation = pivot = reduced = None
        if rule == "AX":
            premises = (number(0),)
            if len(args) > 1:
                annotation = _annotation(args[1:], lineno)
        elif rule == "INST":
            premises = (ref(0),)
            annotation = _annotation(args[1:], lineno) if len(args) > 1 else Annotation()
        elif rule == "RES":
            premises = (ref(0), ref(1))
            pivot = number(2)
            if len(args) > 3:
                annotation = _annotation(args[3:], lineno)
            elif calculus in ANNOTATED_CALCULI:
                annotation = Annotation()
        elif rule == "LRES":
            exact(3)
            premises = (ref(0), ref(1))
            pivot = number(2)
        else:
            exact(2)
            premises = (ref(0),)
            reduced = number(1)

        clause = parse_clause_tokens(tail, calculus in ANNOTATED_CALCULI, lineno)
        steps.append(ProofStep(sid, rule, premises, clause, annotation, pivot, reduced))
        known.add(sid)
        last_id = sid
    if calculus is None:
        raise ParseError("missing 'p dqbf-proof' header", 1)
    return Proof(calculus, tuple(steps))


def _int_tok(tok: str, lineno: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, col) from None


def format_clause(c: AnyClause) -> str:
    lits = list(c)
    if lits and isinstance(lits[0], AnnotatedLiteral):
        lits.sort(key=AnnotatedLiteral.sort_key)
    else:
        lits.sort(key=lambda e: (e.var, e.polarity != POS, e.polarity))
    return " ".join(map(str, lits))


def _bindings(a: Annotation) -> list[str]:
    return [f"{b}/{u}" for u, b in a]


def emit_step(s: ProofStep) -> str:
    parts = [str(s.id), s.rule, *map(str, s.premises)]
    if s.rule in ("RES", "LRES"):
        parts.append(str(s.pivot))
    if s.rule in ("RED", "REDSTAR"):
        parts.append(str(s.reduced))
    if s.annotation is not None and s.rule in ("AX", "INST", "RES"):
        parts.extend(_bindings(s.annotation))
    body = format_clause(s.clause)
    return " ".join(parts) + " :" + (" " + body if body else "")


def emit_proof(p: Proof) -> str:
    lines = [f"p dqbf-proof {p.calculus}"]
    lines.extend(emit_step(s) for s in p.steps)
    return "\n".join(lines) + "\n"


def read_proof(path: str | Path) -> Proof:
    return parse_proof(Path(path).read_text(encoding="utf-8"))

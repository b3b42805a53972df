"""DQDIMACS reading and writing.

``a`` lines declare universals, ``e`` lines declare existentials depending on
every universal declared so far, and ``d x y1 .. yk 0`` lines give an
existential an explicit dependency set.  Dependency lists are stored in
ascending id order.
"""

from __future__ import annotations

import re
from pathlib import Path

from .core import DQBF, DQIRError, Prefix

_TOKEN = re.compile(r"\S+")


class ParseError(DQIRError, ValueError):
    """Input text violates a grammar; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class SemanticError(ParseError):
    """Well-formed text that declares an ill-formed formula."""


def tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _int(tok: str, lineno: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, col) from None


def parse_dqdimacs(text: str) -> DQBF:
    header: tuple[int, int, int] | None = None  # nvars, nclauses, line
    universals: list[int] = []
    existentials: list[int] = []
    deps: dict[int, tuple[int, ...]] = {}
    kind: dict[int, str] = {}
    clauses: list[frozenset[int]] = []
    seen_clause = False

    for lineno, line in enumerate(text.splitlines(), 1):
        toks = tokens(line)
        if not toks or toks[0][0].startswith("c"):
            continue
        head, hcol = toks[0]
        if head == "p":
            if header is not None:
                raise ParseError("second problem line", lineno, hcol)
            if len(toks) != 4 or toks[1][0] != "cnf":
                raise ParseError("problem line must be 'p cnf <nvars> <nclauses>'", lineno, hcol)
            nv, nc = (_int(t, lineno, c) for t, c in toks[2:])
            if nv < 0 or nc < 0:
                raise ParseError("negative count in problem line", lineno, toks[2][1])
            header = (nv, nc, lineno)
            continue
        if header is None:
            raise ParseError("missing problem line", lineno, hcol)
        nvars = header[0]

        if head in ("a", "e", "d"):
            if seen_clause:
                raise ParseError("quantifier line after clauses", lineno, hcol)
            body = toks[1:]
            if not body or body[-1][0] != "0":
                raise ParseError("quantifier line must end with 0", lineno, hcol)
            vs = []
            for t, c in body[:-1]:
                v = _int(t, lineno, c)
                if v <= 0:
                    raise ParseError(f"bad variable {t!r}", lineno, c)
                if v > nvars:
                    raise SemanticError(f"variable {v} exceeds declared maximum {nvars}", lineno, c)
                vs.append((v, c))
            if head == "d":
                if not vs:
                    raise ParseError("'d' line needs an existential variable", lineno, hcol)
                (x, xc), dvs = vs[0], vs[1:]
                if x in kind:
                    raise SemanticError(f"variable {x} redeclared", lineno, xc)
                for y, c in dvs:
                    if kind.get(y) != "a":
                        raise SemanticError(f"dependency {y} of {x} is not a declared universal", lineno, c)
                kind[x] = "e"
                existentials.append(x)
                deps[x] = tuple(sorted({y for y, _ in dvs}))
            else:
                for v, c in vs:
                    if v in kind:
                        raise SemanticError(f"variable {v} redeclared", lineno, c)
                    kind[v] = head
                    if head == "a":
                        universals.append(v)
                    else:
                        existentials.append(v)
                        deps[v] = tuple(sorted(universals))
            continue

        seen_clause = True
        if toks[-1][0] != "0":
            raise ParseError("clause must be terminated by 0", lineno, toks[-1][1])
        current: list[int] = []
        for t, c in toks:
            lit = _int(t, lineno, c)
            if lit == 0:
                clauses.append(frozenset(current))
                current = []
                continue
            if abs(lit) > nvars:
                raise SemanticError(f"variable {abs(lit)} exceeds declared maximum {nvars}", lineno, c)
            if abs(lit) not in kind:
                raise SemanticError(f"clause uses undeclared variable {abs(lit)}", lineno, c)
            current.append(lit)

    if header is None:
        raise ParseError("missing problem line", 1)
    if len(clauses) != header[1]:
        raise SemanticError(f"header announces {header[1]} clauses, found {len(clauses)}", header[2])
    return DQBF(Prefix(tuple(universals), tuple(existentials), deps), tuple(clauses))


def emit_dqdimacs(f: DQBF) -> str:
    lines = [f"p cnf {f.max_var()} {len(f.matrix)}"]
    if f.universals:
        lines.append("a " + " ".join(map(str, f.universals)) + " 0")
    for x in f.existentials:
        lines.append(" ".join(["d", str(x), *map(str, f.deps(x)), "0"]))
    for c in f.matrix:
        lits = sorted(c, key=lambda lit: (abs(lit), lit < 0))
        lines.append(" ".join([*map(str, lits), "0"]))
    return "\n".join(lines) + "\n"


def read_dqdimacs(path: str | Path) -> DQBF:
    return parse_dqdimacs(Path(path).read_text(encoding="utf-8"))

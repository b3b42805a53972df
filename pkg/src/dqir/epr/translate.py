"""DQBF to EPR translation and TPTP export.

Existential ``x`` with dependencies ``y1..yk`` becomes the atom
``x(V_y1, .., V_yk)`` and a universal ``y`` becomes ``p(V_y)``.  The
formula is true iff the translated matrix together with ``p(1)`` and
``~p(0)`` is satisfiable.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable

from ..core import DQBF, AnnotatedLiteral, Annotation
from ..dqdimacs import ParseError, tokens
from .logic import NOT_P0, P, P1, FOAtom, FOClause, FOLit, FOVar, Term, p_atom, sorted_lits


@dataclass(frozen=True)
class NamingMap:
    """TPTP names: universal id -> variable name, existential id -> (predicate, argument order)."""

    universals: tuple[tuple[int, str], ...]
    existentials: tuple[tuple[int, str, tuple[int, ...]], ...]

    def var_name(self, u: int) -> str:
        return dict(self.universals)[u]

    def pred_name(self, x: int) -> str:
        return "p" if x == P else {e: n for e, n, _ in self.existentials}[x]


@dataclass(frozen=True)
class Translation:
    matrix: tuple[FOClause, ...]
    naming: NamingMap

    @property
    def units(self) -> tuple[FOClause, FOClause]:
        return (P1, NOT_P0)

    @property
    def inputs(self) -> tuple[FOClause, ...]:
        """Translated matrix clauses followed by ``p(1)`` and ``~p(0)``; FO proofs index into this."""
        return (*self.matrix, P1, NOT_P0)


def _var_names(n: int) -> list[str]:
    letters = string.ascii_uppercase
    start = letters.index("U")
    cycle = letters[start:] + letters[:start]
    return [cycle[i % 26] + (str(i // 26 + 1) if i >= 26 else "") for i in range(n)]


def naming_for(f: DQBF) -> NamingMap:
    names = _var_names(len(f.universals))
    return NamingMap(
        tuple(zip(f.universals, names)),
        tuple((x, f"x{x}", tuple(f.deps(x))) for x in f.existentials),
    )


def translate_literal(f: DQBF, lit: int) -> FOLit:
    v = abs(lit)
    if f.prefix.is_existential(v):
        atom = FOAtom(v, tuple(FOVar(y) for y in f.deps(v)))
    else:
        atom = p_atom(FOVar(v))
    return FOLit(lit > 0, atom)


def translate_clause(f: DQBF, c: Iterable[int]) -> FOClause:
    return frozenset(translate_literal(f, lit) for lit in c)


def translate(f: DQBF) -> Translation:
    return Translation(tuple(translate_clause(f, c) for c in f.matrix), naming_for(f))


def translate_annotated_literal(f: DQBF, al: AnnotatedLiteral) -> FOLit:
    args: list[Term] = []
    for y in f.deps(al.var):
        b = al.annotation.get(y)
        args.append(FOVar(y) if b is None else b)
    return FOLit(al.positive, FOAtom(al.var, tuple(args)))


def translate_annotated(f: DQBF, c: Iterable[AnnotatedLiteral]) -> FOClause:
    return frozenset(translate_annotated_literal(f, al) for al in c)


def untranslate_ground(f: DQBF, c: Iterable[FOLit]) -> frozenset[AnnotatedLiteral]:
    """Inverse of ``translate_annotated`` on p-free clauses (ground or not)."""
    out = set()
    for lit in c:
        a = lit.atom
        if a.is_p or not f.prefix.is_existential(a.pred):
            raise ValueError(f"{lit} has no annotated counterpart")
        ys = f.deps(a.pred)
        if len(ys) != len(a.args):
            raise ValueError(f"{lit} has the wrong arity")
        ann = Annotation.of({y: t for y, t in zip(ys, a.args) if not isinstance(t, FOVar)})
        out.add(AnnotatedLiteral(a.pred if lit.positive else -a.pred, ann))
    return frozenset(out)


# --- TPTP ------------------------------------------------------------------


def _tptp_term(t: Term, naming: NamingMap) -> str:
    if isinstance(t, FOVar):
        return naming.var_name(t.universal)
    return f"c{t}"


def _tptp_lit(lit: FOLit, naming: NamingMap) -> str:
    a = lit.atom
    name = naming.pred_name(a.pred)
    body = name if not a.args else f"{name}({','.join(_tptp_term(t, naming) for t in a.args)})"
    return body if lit.positive else f"~{body}"


def tptp_line(name: str, c: Iterable[FOLit], naming: NamingMap) -> str:
    lits = [_tptp_lit(lit, naming) for lit in sorted_lits(c)]
    if not lits:
        body = "$false"
    elif len(lits) == 1:
        body = lits[0]
    else:
        body = "(" + " | ".join(lits) + ")"
    return f"cnf({name}, axiom, {body})."


def emit_naming(naming: NamingMap) -> list[str]:
    lines = ["% naming map"]
    for u, n in naming.universals:
        lines.append(f"% universal {u} {n}")
    for x, n, ys in naming.existentials:
        lines.append(" ".join(["% existential", str(x), n, *map(str, ys)]))
    return lines


def emit_tptp(t: Translation) -> str:
    lines = ["% EPR translation of a DQBF", *emit_naming(t.naming)]
    for i, c in enumerate(t.matrix, 1):
        lines.append(tptp_line(f"m{i}", c, t.naming))
    lines.append(tptp_line("unit_p1", P1, t.naming))
    lines.append(tptp_line("unit_np0", NOT_P0, t.naming))
    return "\n".join(lines) + "\n"


def parse_tptp_naming(text: str) -> NamingMap:
    """Read back the naming map written as comments by :func:`emit_tptp`."""
    universals: list[tuple[int, str]] = []
    existentials: list[tuple[int, str, tuple[int, ...]]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = tokens(line)
        if len(toks) < 2 or toks[0][0] != "%" or toks[1][0] not in ("universal", "existential"):
            continue
        try:
            if toks[1][0] == "universal":
                if len(toks) != 4:
                    raise ValueError
                universals.append((int(toks[2][0]), toks[3][0]))
            else:
                if len(toks) < 4:
                    raise ValueError
                existentials.append((int(toks[2][0]), toks[3][0], tuple(int(t) for t, _ in toks[4:])))
        except ValueError:
            raise ParseError("malformed naming comment", lineno, toks[0][1]) from None
    return NamingMap(tuple(universals), tuple(existentials))


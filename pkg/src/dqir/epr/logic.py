"""Function-free first-order clauses over the predicate ``p``, one predicate
per existential variable, the constants 0 and 1, and one variable per
universal DQBF variable."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from ..core import Annotation
from ..dqdimacs import ParseError

P = 0  # predicate id of p; existential predicates use the variable id


@dataclass(frozen=True, order=True)
class FOVar:
    universal: int

    def __str__(self) -> str:
        return f"V{self.universal}"


Term = Union[int, FOVar]  # int terms are the constants 0 and 1


def term_key(t: Term) -> tuple[int, int]:
    return (1, t.universal) if isinstance(t, FOVar) else (0, t)


@dataclass(frozen=True)
class FOAtom:
    pred: int
    args: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        for a in self.args:
            if not isinstance(a, FOVar) and a not in (0, 1):
                raise ValueError(f"bad term {a!r}")
        if self.pred == P and len(self.args) != 1:
            raise ValueError("p has arity one")

    @property
    def is_p(self) -> bool:
        return self.pred == P

    def variables(self) -> set[FOVar]:
        return {a for a in self.args if isinstance(a, FOVar)}

    def is_ground(self) -> bool:
        return not any(isinstance(a, FOVar) for a in self.args)

    def key(self) -> tuple:
        """Total order used for ground ordered resolution: p-atoms are largest."""
        return (int(self.is_p), self.pred, tuple(term_key(a) for a in self.args))

    def substitute(self, sigma: Mapping[int, int]) -> FOAtom:
        return FOAtom(
            self.pred,
            tuple(sigma.get(a.universal, a) if isinstance(a, FOVar) else a for a in self.args),
        )

    def __str__(self) -> str:
        name = "p" if self.is_p else f"x{self.pred}"
        if not self.args:
            return name
        return f"{name}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class FOLit:
    positive: bool
    atom: FOAtom

    def negate(self) -> FOLit:
        return FOLit(not self.positive, self.atom)

    def key(self) -> tuple:
        return (self.atom.key(), not self.positive)

    def substitute(self, sigma: Mapping[int, int]) -> FOLit:
        return FOLit(self.positive, self.atom.substitute(sigma))

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"~{self.atom}"


FOClause = frozenset  # frozenset[FOLit]


def pos(atom: FOAtom) -> FOLit:
    return FOLit(True, atom)


def neg(atom: FOAtom) -> FOLit:
    return FOLit(False, atom)


def p_atom(t: Term) -> FOAtom:
    return FOAtom(P, (t,))


P1 = frozenset({pos(p_atom(1))})
NOT_P0 = frozenset({neg(p_atom(0))})


def variables(c: Iterable[FOLit]) -> set[FOVar]:
    out: set[FOVar] = set()
    for lit in c:
        out |= lit.atom.variables()
    return out


def is_ground(c: Iterable[FOLit]) -> bool:
    return all(lit.atom.is_ground() for lit in c)


def substitute(c: Iterable[FOLit], sigma: Mapping[int, int] | Annotation) -> frozenset[FOLit]:
    """Apply ``sigma`` (universal id -> 0/1) to every variable it binds."""
    m = sigma.mapping if isinstance(sigma, Annotation) else sigma
    return frozenset(lit.substitute(m) for lit in c)


def is_fo_tautology(c: Iterable[FOLit]) -> bool:
    s = set(c)
    return any(lit.negate() in s for lit in s)


def has_p(c: Iterable[FOLit]) -> bool:
    return any(lit.atom.is_p for lit in c)


def sorted_lits(c: Iterable[FOLit]) -> list[FOLit]:
    return sorted(c, key=FOLit.key)


def format_fo_clause(c: Iterable[FOLit]) -> str:
    return " ".join(map(str, sorted_lits(c)))


_ATOM = re.compile(r"^(p|x(\d+))(?:\(([^()]*)\))?$")


def parse_atom(tok: str, lineno: int = 1, col: int = 1) -> FOAtom:
    m = _ATOM.match(tok)
    if not m:
        raise ParseError(f"bad atom {tok!r}", lineno, col)
    pred = P if m.group(1) == "p" else int(m.group(2))
    args: list[Term] = []
    if m.group(3) is not None and m.group(3).strip():
        for a in m.group(3).split(","):
            a = a.strip()
            if a in ("0", "1"):
                args.append(int(a))
            elif re.fullmatch(r"V\d+", a):
                args.append(FOVar(int(a[1:])))
            else:
                raise ParseError(f"bad term {a!r}", lineno, col)
    try:
        return FOAtom(pred, tuple(args))
    except ValueError as e:
        raise ParseError(str(e), lineno, col) from None


def parse_fo_literal(tok: str, lineno: int = 1, col: int = 1) -> FOLit:
    if tok.startswith("~"):
        return FOLit(False, parse_atom(tok[1:], lineno, col + 1))
    return FOLit(True, parse_atom(tok, lineno, col))

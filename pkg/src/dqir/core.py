"""DQBF object model.

Variables are positive integers (DQDIMACS numbering) and propositional
literals are signed integers, so a matrix clause is a ``frozenset[int]``.
Everything here is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

Clause = frozenset  # frozenset[int]; the empty clause is bottom

POS, NEG, STAR = "+", "-", "*"


class DQIRError(Exception):
    """Base class for all toolkit errors."""


class BudgetExceeded(DQIRError):
    def __init__(self, what: str, required: int, budget: int):
        super().__init__(f"{what} budget exceeded: need {required}, budget is {budget}")
        self.what = what
        self.required = required
        self.budget = budget


def clause(lits: Iterable[int] = ()) -> frozenset[int]:
    return frozenset(lits)


def is_tautological(c: Iterable[int]) -> bool:
    """True iff the clause contains some literal together with its negation."""
    s = set(c)
    return any(-lit in s for lit in s)


@dataclass(frozen=True)
class Prefix:
    universals: tuple[int, ...] = ()
    existentials: tuple[int, ...] = ()
    deps: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "universals", tuple(self.universals))
        object.__setattr__(self, "existentials", tuple(self.existentials))
        frozen = {x: tuple(ys) for x, ys in dict(self.deps).items()}
        object.__setattr__(self, "deps", MappingProxyType(frozen))

    @cached_property
    def universal_set(self) -> frozenset[int]:
        return frozenset(self.universals)

    @cached_property
    def existential_set(self) -> frozenset[int]:
        return frozenset(self.existentials)

    @cached_property
    def _dep_sets(self) -> dict[int, frozenset[int]]:
        return {x: frozenset(ys) for x, ys in self.deps.items()}

    def is_universal(self, v: int) -> bool:
        return v in self.universal_set

    def is_existential(self, v: int) -> bool:
        return v in self.existential_set

    def dep_set(self, x: int) -> frozenset[int]:
        return self._dep_sets[x]

    def depends(self, x: int, u: int) -> bool:
        return u in self._dep_sets[x]


@dataclass(frozen=True)
class DQBF:
    prefix: Prefix = field(default_factory=Prefix)
    matrix: tuple[frozenset[int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", tuple(frozenset(c) for c in self.matrix))

    @property
    def universals(self) -> tuple[int, ...]:
        return self.prefix.universals

    @property
    def existentials(self) -> tuple[int, ...]:
        return self.prefix.existentials

    def deps(self, x: int) -> tuple[int, ...]:
        return self.prefix.deps[x]

    def max_var(self) -> int:
        vs = [*self.universals, *self.existentials]
        vs.extend(abs(lit) for c in self.matrix for lit in c)
        return max(vs, default=0)


@dataclass(frozen=True, order=True)
class Annotation:
    """A partial assignment of universal variables to 0/1, kept sorted by variable."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        seen: dict[int, int] = {}
        for u, b in self.pairs:
            if b not in (0, 1):
                raise ValueError(f"annotation value for {u} must be 0 or 1, got {b}")
            if u in seen:
                raise ValueError(f"variable {u} bound twice in annotation")
            seen[u] = b
        object.__setattr__(self, "pairs", tuple(sorted(seen.items())))

    @classmethod
    def of(cls, bindings: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> Annotation:
        items = bindings.items() if isinstance(bindings, Mapping) else bindings
        return cls(tuple((int(u), int(b)) for u, b in items))

    @cached_property
    def mapping(self) -> Mapping[int, int]:
        return MappingProxyType(dict(self.pairs))

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def get(self, u: int, default: int | None = None) -> int | None:
        return self.mapping.get(u, default)

    def __contains__(self, u: object) -> bool:
        return u in self.mapping

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def restrict_to(self, vs: Iterable[int]) -> Annotation:
        keep = set(vs)
        return Annotation(tuple(p for p in self.pairs if p[0] in keep))

    def __str__(self) -> str:
        return ",".join(f"{b}/{u}" for u, b in self.pairs)


EMPTY = Annotation()


@dataclass(frozen=True, order=True)
class AnnotatedLiteral:
    """An existential literal ``lit`` carrying an annotation over (part of) its dependencies."""

    lit: int
    annotation: Annotation = EMPTY

    @property
    def var(self) -> int:
        return abs(self.lit)

    @property
    def positive(self) -> bool:
        return self.lit > 0

    def negate(self) -> AnnotatedLiteral:
        return AnnotatedLiteral(-self.lit, self.annotation)

    def sort_key(self) -> tuple:
        return (self.var, self.lit < 0, self.annotation)

    def __str__(self) -> str:
        return f"{self.lit}{{{self.annotation}}}"


@dataclass(frozen=True, order=True)
class ExtLit:
    """Literal of the CDCL-style calculi; ``polarity`` is ``+``, ``-`` or ``*`` (merged)."""

    var: int
    polarity: str = POS

    def __post_init__(self) -> None:
        if self.polarity not in (POS, NEG, STAR):
            raise ValueError(f"bad polarity {self.polarity!r}")

    @classmethod
    def of(cls, lit: int) -> ExtLit:
        return cls(abs(lit), POS if lit > 0 else NEG)

    @property
    def is_star(self) -> bool:
        return self.polarity == STAR

    def negate(self) -> ExtLit:
        if self.is_star:
            return self
        return ExtLit(self.var, NEG if self.polarity == POS else POS)

    def __str__(self) -> str:
        if self.polarity == STAR:
            return f"*{self.var}"
        return str(self.var) if self.polarity == POS else f"-{self.var}"


def ext_clause(c: Iterable[int]) -> frozenset[ExtLit]:
    return frozenset(ExtLit.of(lit) for lit in c)


@dataclass(frozen=True)
class SkolemModel:
    """Truth tables per existential variable.

    ``tables[x][i]`` is ``f_x`` at the dependency assignment whose bits, read in
    the prefix order of ``Y_x`` with the first dependency most significant,
    spell ``i``.
    """

    tables: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        frozen = {x: tuple(int(b) for b in t) for x, t in dict(self.tables).items()}
        object.__setattr__(self, "tables", MappingProxyType(frozen))

    def value(self, x: int, bits: Sequence[int]) -> int:
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return self.tables[x][idx]

    def shape_errors(self, prefix: Prefix) -> list[str]:
        errors = []
        for x in prefix.existentials:
            if x not in self.tables:
                errors.append(f"no table for existential {x}")
            elif len(self.tables[x]) != 1 << len(prefix.deps[x]):
                errors.append(
                    f"table for {x} has {len(self.tables[x])} entries, "
                    f"expected {1 << len(prefix.deps[x])}"
                )
        return errors


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(f: DQBF) -> ValidationReport:
    """List violations of the DQBF well-formedness invariants."""
    out: list[str] = []
    pre = f.prefix
    declared: set[int] = set()
    for v in (*pre.universals, *pre.existentials):
        if v <= 0:
            out.append(f"variable id {v} is not positive")
        if v in declared:
            out.append(f"variable {v} declared more than once")
        declared.add(v)
    for x in pre.existentials:
        if x not in pre.deps:
            out.append(f"existential {x} has no dependency entry")
            continue
        ys = pre.deps[x]
        if len(set(ys)) != len(ys):
            out.append(f"dependency list of {x} repeats a variable")
        for y in ys:
            if not pre.is_universal(y):
                what = "an existential" if pre.is_existential(y) else "undeclared"
                out.append(f"existential {x} depends on {y}, which is {what}")
    for x in pre.deps:
        if not pre.is_existential(x):
            out.append(f"dependency entry for non-existential {x}")
    for i, c in enumerate(f.matrix, 1):
        for lit in sorted(c, key=abs):
            if lit == 0:
                out.append(f"clause {i} contains literal 0")
            elif abs(lit) not in declared:
                out.append(f"clause {i} uses undeclared variable {abs(lit)}")
    return ValidationReport(tuple(out))


def qbf_embed(linear_prefix: Sequence[tuple[str, int]], matrix: Iterable[Iterable[int]]) -> DQBF:
    """Turn a linear QBF prefix of ``("a"|"e", var)`` pairs into a DQBF.

    Each existential depends on every universal to its left.
    """
    universals: list[int] = []
    existentials: list[int] = []
    deps: dict[int, tuple[int, ...]] = {}
    seen: set[int] = set()
    for q, v in linear_prefix:
        if v in seen:
            raise DQIRError(f"variable {v} occurs twice in the prefix")
        seen.add(v)
        if q == "a":
            universals.append(v)
        elif q == "e":
            existentials.append(v)
            deps[v] = tuple(sorted(universals))
        else:
            raise DQIRError(f"unknown quantifier {q!r}")
    return DQBF(Prefix(tuple(universals), tuple(existentials), deps), tuple(frozenset(c) for c in matrix))

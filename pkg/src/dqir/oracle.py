"""Brute-force DQBF semantics: Skolem model checking and exhaustive search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .core import DQBF, BudgetExceeded, SkolemModel

DEFAULT_MODEL_BUDGET = 1 << 24


def universal_assignments(f: DQBF) -> Iterator[dict[int, int]]:
    """All total assignments to the universals, lexicographic in prefix order."""
    us = f.universals
    for bits in itertools.product((0, 1), repeat=len(us)):
        yield dict(zip(us, bits))


def extend(f: DQBF, model: SkolemModel, alpha: Mapping[int, int]) -> dict[int, int]:
    out = {y: alpha[y] for y in f.universals}
    for x in f.existentials:
        out[x] = model.value(x, [alpha[y] for y in f.deps(x)])
    return out


def eval_matrix(matrix: Iterable[Iterable[int]], a: Mapping[int, int]) -> bool:
    return all(any(a[abs(lit)] == (lit > 0) for lit in c) for c in matrix)


def find_falsifier(f: DQBF, model: SkolemModel) -> tuple[dict[int, int], int] | None:
    """First (assignment, 1-based clause index) the model fails on, or None."""
    for alpha in universal_assignments(f):
        a = extend(f, model, alpha)
        for i, c in enumerate(f.matrix, 1):
            if not any(a[abs(lit)] == (lit > 0) for lit in c):
                return alpha, i
    return None


def check_skolem_model(f: DQBF, model: SkolemModel) -> bool:
    errors = model.shape_errors(f.prefix)
    if errors:
        raise ValueError("; ".join(errors))
    return find_falsifier(f, model) is None


def table_bits(f: DQBF) -> int:
    return sum(1 << len(f.deps(x)) for x in f.existentials)


def count_models(f: DQBF) -> int:
    return 1 << table_bits(f)


def _model_from_int(f: DQBF, m: int, width: int) -> SkolemModel:
    tables = {}
    pos = width
    for x in f.existentials:
        n = 1 << len(f.deps(x))
        tables[x] = tuple((m >> (pos - 1 - j)) & 1 for j in range(n))
        pos -= n
    return SkolemModel(tables)


def iter_models(f: DQBF) -> Iterator[SkolemModel]:
    """Every Skolem model once, lexicographic over the concatenated truth tables."""
    width = table_bits(f)
    for m in range(1 << width):
        yield _model_from_int(f, m, width)


@dataclass(frozen=True)
class OracleVerdict:
    truth: bool
    witness: SkolemModel | None = None
    candidates: int = 0  # models examined before the verdict
    falsifiers: tuple[tuple[SkolemModel, dict[int, int], int], ...] | None = None


def _constraints(f: DQBF, width: int) -> list[tuple[int, int]] | None:
    """Encode the matrix as (mask, wanted) pairs over candidate bit positions.

    A candidate ``m`` satisfies a pair iff some masked bit of ``m`` equals the
    matching bit of ``wanted``.  Returns None if some pair has an empty mask.
    """
    offsets = {}
    pos = width
    for x in f.existentials:
        offsets[x] = pos
        pos -= 1 << len(f.deps(x))
    out = set()
    for alpha in universal_assignments(f):
        idx = {}
        for x in f.existentials:
            i = 0
            for y in f.deps(x):
                i = (i << 1) | alpha[y]
            idx[x] = offsets[x] - 1 - i
        for c in f.matrix:
            mask = wanted = 0
            sat = False
            for lit in c:
                v = abs(lit)
                if v in idx:
                    bit = 1 << idx[v]
                    want = bit if lit > 0 else 0
                    if mask & bit and (wanted & bit) != want:
                        sat = True
                        break
                    mask |= bit
                    wanted |= want
                elif alpha.get(v) == (lit > 0):
                    sat = True
                    break
            if sat:
                continue
            if not mask:
                return None
            out.add((mask, wanted))
    return sorted(out, key=lambda p: (bin(p[0]).count("1"), p))


def decide(f: DQBF, budget: int | None = None, trace: bool = False) -> OracleVerdict:
    """Decide truth by enumerating Skolem models in lexicographic order.

    The first satisfying model is returned as witness.  With ``trace`` every
    rejected candidate is recorded with its first failing assignment and clause.
    """
    budget = DEFAULT_MODEL_BUDGET if budget is None else budget
    total = count_models(f)
    if total > budget:
        raise BudgetExceeded("skolem model", total, budget)

    if trace:
        fails = []
        for n, model in enumerate(iter_models(f), 1):
            bad = find_falsifier(f, model)
            if bad is None:
                return OracleVerdict(True, model, n, tuple(fails))
            fails.append((model, *bad))
        return OracleVerdict(False, None, total, tuple(fails))

    width = table_bits(f)
    cons = _constraints(f, width)
    if cons is None:
        return OracleVerdict(False, None, total)
    full = (1 << width) - 1
    for m in range(total):
        inv = full ^ m  # bits where m is 0
        if all((inv ^ w) & k for k, w in cons):
            return OracleVerdict(True, _model_from_int(f, m, width), m + 1)
    return OracleVerdict(False, None, total)

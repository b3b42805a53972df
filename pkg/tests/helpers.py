"""Shared formulas and hypothesis strategies."""

import random

from hypothesis import strategies as st

from dqir import bundled
from dqir.core import DQBF, Annotation, AnnotatedLiteral, Prefix
from dqir.fuzz import FuzzConfig, random_dqbf

F_T = bundled.formula("F_T")
F_F = bundled.formula("F_F")
PI1 = bundled.formula("pi1_example")
PI1_PREFIX = PI1.prefix
U, V, W, X, Y = 1, 2, 5, 3, 4  # numbering of the pi1 example

CONTRADICTION = DQBF(Prefix((), (1,), {1: ()}), (frozenset({1}), frozenset({-1})))


def corpus(seed=1, count=200):
    cfg = FuzzConfig(seed=seed, count=count)
    return [random_dqbf(random.Random(f"{seed}:{n}"), cfg) for n in range(1, count + 1)]


formulas = st.integers(0, 10**9).map(lambda s: random_dqbf(random.Random(s), FuzzConfig()))


@st.composite
def annotations_over(draw, universals):
    chosen = draw(st.lists(st.sampled_from(universals), unique=True)) if universals else []
    return Annotation.of({u: draw(st.integers(0, 1)) for u in chosen})


@st.composite
def formula_with_clause(draw):
    """A formula, one annotated clause over it and a universal assignment."""
    f = draw(formulas)
    lits = []
    for x in draw(st.lists(st.sampled_from(f.existentials), unique=True, max_size=3)):
        ann = draw(annotations_over(list(f.deps(x))))
        lits.append(AnnotatedLiteral(x if draw(st.booleans()) else -x, ann))
    tau = draw(annotations_over(list(f.universals)))
    return f, frozenset(lits), tau

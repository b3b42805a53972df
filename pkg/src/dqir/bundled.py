"""Formulas and proofs shipped with the package."""

from __future__ import annotations

from importlib import resources

from .core import DQBF, SkolemModel
from .dqdimacs import parse_dqdimacs
from .proof import Proof, parse_proof

NAMES = ("F_T", "F_F", "pi1_example")


def path(name: str):
    """Filesystem path of a bundled asset, e.g. ``path("F_T.dqdimacs")``."""
    return resources.files("dqir") / "data" / name


def text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def formula(name: str) -> DQBF:
    return parse_dqdimacs(text(f"{name}.dqdimacs"))


def ld_refutation() -> Proof:
    return parse_proof(text("ld_refutation.proof"))


# x(u)=u, y(v)=not v, z(u,v)=(u and v) or (not u and not v); tables indexed by the
# dependency bits with the first dependency most significant
F_T_MODEL = SkolemModel({3: (0, 1), 4: (1, 0), 5: (1, 0, 0, 1)})

"""Dependency QBF toolkit: formulas, Skolem oracle, resolution calculi and proof checking."""

from .core import DQBF, Annotation, AnnotatedLiteral, BudgetExceeded, DQIRError, Prefix, SkolemModel
from .dqdimacs import ParseError, emit_dqdimacs, parse_dqdimacs, read_dqdimacs
from .proof import Proof, ProofStep, emit_proof, parse_proof, read_proof

__version__ = "0.1.0"

__all__ = [
    "DQBF",
    "Annotation",
    "AnnotatedLiteral",
    "BudgetExceeded",
    "DQIRError",
    "ParseError",
    "Prefix",
    "Proof",
    "ProofStep",
    "SkolemModel",
    "emit_dqdimacs",
    "emit_proof",
    "parse_dqdimacs",
    "parse_proof",
    "read_dqdimacs",
    "read_proof",
]

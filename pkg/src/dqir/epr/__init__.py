"""First-order side: EPR translation, grounding, FO-res proofs and simulations."""

from .foproof import FOProof, FOStep, check_fo_proof, emit_fo_proof, parse_fo_proof
from .ground import ground, saturate, truth_table_sat
from .simulate import lemma1_check, lift_ground_refutation, translate_dir_proof
from .translate import emit_tptp, parse_tptp_naming, translate, translate_annotated

__all__ = [
    "FOProof",
    "FOStep",
    "check_fo_proof",
    "emit_fo_proof",
    "emit_tptp",
    "ground",
    "lemma1_check",
    "lift_ground_refutation",
    "parse_fo_proof",
    "parse_tptp_naming",
    "saturate",
    "translate",
    "translate_annotated",
    "translate_dir_proof",
    "truth_table_sat",
]

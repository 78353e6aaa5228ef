"""
PA 表示层：方程的表示公式 d、可证性公式 B、W 序列与表示性质的证明
"""

from proof_forge.core.representation.machines import machine_representation, machine_system
from proof_forge.core.representation.formulas import (
    Representation, at_code, b_formula, b_of, equation_to_formula, instance_terms, represent,
    w_sequence,
)
from proof_forge.core.representation.proofs import (
    evaluate_representation, instance, prove_b_of, prove_instance,
)
from proof_forge.core.representation.terms import (
    check_numeral_limit, largest_numeral, poly_to_term,
)

__all__ = [
    "Representation", "poly_to_term", "equation_to_formula", "represent",
    "b_formula", "at_code", "b_of", "w_sequence", "instance_terms",
    "evaluate_representation", "instance", "prove_instance", "prove_b_of",
    "check_numeral_limit", "largest_numeral",
    "machine_system", "machine_representation",
]

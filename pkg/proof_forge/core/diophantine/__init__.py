"""
丢番图层：多项式、指数丢番图方程组、机器算术化、降阶、单一方程与有界搜索
"""

from proof_forge.core.diophantine.arithmetize import (
    arithmetize, construct_witness, default_parameters, tableau_bounds,
)
from proof_forge.core.diophantine.equation import (
    Equation, collapse, evaluate, to_natural_form,
)
from proof_forge.core.diophantine.io import (
    load_equation, load_system, read_equation, read_system, save_equation, save_system,
    write_equation, write_system,
)
from proof_forge.core.diophantine.lowering import (
    STAGE_REGISTRY, LoweringPipeline, eliminate_exponentials, reduce_mask,
)
from proof_forge.core.diophantine.polynomial import Polynomial, const, var
from proof_forge.core.diophantine.proof_equation import ProofEquation
from proof_forge.core.diophantine.search import bounded_search
from proof_forge.core.diophantine.system import (
    Assignment, Condition, DiophSystem, Exp, Mask, PolyEq, equation,
)

__all__ = [
    "Polynomial", "var", "const",
    "PolyEq", "Exp", "Mask", "Condition", "DiophSystem", "Assignment", "equation",
    "arithmetize", "construct_witness", "default_parameters", "tableau_bounds",
    "reduce_mask", "eliminate_exponentials", "LoweringPipeline", "STAGE_REGISTRY",
    "Equation", "collapse", "to_natural_form", "evaluate",
    "bounded_search", "ProofEquation",
    "read_equation", "write_equation", "load_equation", "save_equation",
    "read_system", "write_system", "load_system", "save_system",
]

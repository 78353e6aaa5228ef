from proof_forge.core.synth.arithmetic import (
    equality_line,
    inequality_line,
    prove_closed_equality,
    prove_closed_inequality,
    prove_evaluation,
)
from proof_forge.core.synth.builder import ProofBuilder
from proof_forge.core.synth.existential import (
    existential_intro,
    existential_intro_many,
    introduce,
    introduce_many,
)

__all__ = [
    "equality_line",
    "inequality_line",
    "prove_closed_equality",
    "prove_closed_inequality",
    "prove_evaluation",
    "ProofBuilder",
    "existential_intro",
    "existential_intro_many",
    "introduce",
    "introduce_many",
]

from proof_forge.core.checker.proof_io import load_proof, read_proof, save_proof, write_proof
from proof_forge.core.checker.schemas import (
    AXIOM_TABLE,
    AxiomSchema,
    AxiomTable,
    is_axiom_instance,
    schema_id,
)
from proof_forge.core.checker.verifier import (
    LineVerdict,
    check_code,
    check_proof,
    explain_proof,
)

__all__ = [
    "load_proof",
    "read_proof",
    "save_proof",
    "write_proof",
    "AXIOM_TABLE",
    "AxiomSchema",
    "AxiomTable",
    "is_axiom_instance",
    "schema_id",
    "LineVerdict",
    "check_code",
    "check_proof",
    "explain_proof",
]

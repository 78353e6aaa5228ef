from proof_forge.core.codec.godel import (
    Tag,
    code_of_var,
    decode_formula,
    decode_term,
    encode_formula,
    encode_term,
    is_formula_code,
    is_term_code,
)
from proof_forge.core.codec.pairing import pair, seq_code, seq_decode, unpair
from proof_forge.core.codec.proofs import (
    MP,
    AnnotatedProof,
    Axiom,
    Gen,
    ProofLine,
    Warrant,
    decode_proof,
    encode_proof,
)

__all__ = [
    "Tag",
    "code_of_var",
    "decode_formula",
    "decode_term",
    "encode_formula",
    "encode_term",
    "is_formula_code",
    "is_term_code",
    "pair",
    "seq_code",
    "seq_decode",
    "unpair",
    "MP",
    "AnnotatedProof",
    "Axiom",
    "Gen",
    "ProofLine",
    "Warrant",
    "decode_proof",
    "encode_proof",
]

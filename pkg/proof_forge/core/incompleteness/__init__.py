"""
不完备性构造：对角关系、Gödel / Henkin 句、不可判定命题生成器
"""

from proof_forge.core.incompleteness.context import (
    TOY_DIAGONAL, TOY_PROVABILITY, IncompletenessContext,
)
from proof_forge.core.incompleteness.diagonal import (
    diag_machine, diag_representation, diagonal_of, is_diagonal_pair, is_diagonal_sentence,
)
from proof_forge.core.incompleteness.sentences import (
    GODEL, HENKIN, Undecidable, diagonalize, godel_sentence, godel_theta, henkin_sentence,
    henkin_theta, replay_certificate, undecidable_from,
)

__all__ = [
    "IncompletenessContext", "TOY_DIAGONAL", "TOY_PROVABILITY",
    "diag_machine", "diag_representation", "diagonal_of",
    "is_diagonal_pair", "is_diagonal_sentence",
    "GODEL", "HENKIN", "godel_theta", "henkin_theta", "diagonalize",
    "godel_sentence", "henkin_sentence", "replay_certificate",
    "Undecidable", "undecidable_from",
]

"""
对角关系

[职责]
- diag_machine：接受 (n, m) 当且仅当 m = #ψ(n')，ψ 是 n 所编码、恰有一个自由变量的公式
- diag_representation：同一条丢番图流水线给出的 PA 表示 diagRep(x, y, z...)
- is_diagonal_pair / is_diagonal_sentence：检查器层面的对角谓词
[约定] 代换语义与机器一致：替换唯一自由变量的全部自由出现，不改名
"""

import logging
from functools import lru_cache
from typing import Optional

from proof_forge.config import Budget
from proof_forge.core.codec.godel import decode_formula, encode_formula
from proof_forge.core.machine import CounterMachine, compile_minilang, diag_program
from proof_forge.core.pa.syntax import Formula, free_vars, naive_substitute, numeral
from proof_forge.core.representation import Representation, machine_representation
from proof_forge.errors import DecodeError

logger = logging.getLogger(__name__)

DIAGONAL_PARAMETERS = ("n", "m")


@lru_cache(maxsize=None)
def diag_machine() -> CounterMachine:
    return compile_minilang(diag_program())


def diag_representation(budget: Optional[Budget] = None) -> Representation:
    """
    Raises:
        BudgetExceeded: 降阶或塌缩的规模超过预算
    """
    rep = machine_representation(diag_machine(), DIAGONAL_PARAMETERS, budget=budget)
    logger.info("diagonal representation over %d unknowns", len(rep.unknown_to_var))
    return rep


def diagonal_of(code: int) -> Optional[Formula]:
    """ψ(n')；n 不是恰有一个自由变量的公式码时返回 None"""
    try:
        psi = decode_formula(code)
    except DecodeError:
        return None
    variables = free_vars(psi)
    if len(variables) != 1:
        return None
    (var,) = variables
    return naive_substitute(psi, var, numeral(code))


def is_diagonal_sentence(code: int, sentence: Formula) -> bool:
    """与 is_diagonal_pair(code, #sentence) 等价，但不必计算 sentence 的编码"""
    return diagonal_of(code) == sentence


def is_diagonal_pair(n: int, m: int, budget: Optional[Budget] = None) -> bool:
    """
    Raises:
        BudgetExceeded: ψ(n') 的编码超过 budget.max_bits
    """
    target = diagonal_of(n)
    if target is None:
        return False
    return encode_formula(target, budget) == m

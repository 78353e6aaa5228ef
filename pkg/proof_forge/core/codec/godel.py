"""
项与公式的 Gödel 编码

[职责]
- 节点编码 = pair(tag, seq_code(子编码))
- 标签表：Zero=0, Succ=1, Add=2, Mul=3, Numeral=4, Var=5,
  Eq=6, Not=7, Implies=8, ForAll=9
- Numeral 以自然数本身为载荷，Var 与 ForAll 的变量以下标为载荷
- 解码是编码的偏逆，失败即 "不在像集中"
"""

from enum import IntEnum
from typing import List, Optional

from proof_forge.config import Budget
from proof_forge.core.codec.pairing import checked_pair, seq_code, seq_decode_exact, unpair
from proof_forge.core.pa.syntax import (
    ZERO, Add, Eq, ForAll, Formula, Implies, Mul, Not, Numeral, Succ, Term, Var, Zero, peel,
)
from proof_forge.errors import NotAFormulaCode, NotATermCode


class Tag(IntEnum):
    ZERO = 0
    SUCC = 1
    ADD = 2
    MUL = 3
    NUMERAL = 4
    VAR = 5
    EQ = 6
    NOT = 7
    IMPLIES = 8
    FORALL = 9


TERM_TAGS = frozenset({Tag.ZERO, Tag.SUCC, Tag.ADD, Tag.MUL, Tag.NUMERAL, Tag.VAR})
FORMULA_TAGS = frozenset({Tag.EQ, Tag.NOT, Tag.IMPLIES, Tag.FORALL})


def _node(tag: int, children: List[int], budget: Optional[Budget]) -> int:
    return checked_pair(tag, seq_code(children, budget), budget)


# -------------------------------------------------------------- encoding

def encode_term(term: Term, budget: Optional[Budget] = None) -> int:
    if isinstance(term, Zero):
        return 0
    if isinstance(term, Numeral):
        return _node(Tag.NUMERAL, [term.value], budget)
    if isinstance(term, Var):
        return _node(Tag.VAR, [term.index], budget)
    if isinstance(term, Succ):
        depth = 0
        while isinstance(term, Succ):
            depth += 1
            term = term.arg
        code = encode_term(term, budget)
        for _ in range(depth):
            code = _node(Tag.SUCC, [code], budget)
        return code
    tag = Tag.ADD if isinstance(term, Add) else Tag.MUL
    return _node(tag, [encode_term(term.left, budget), encode_term(term.right, budget)], budget)


def code_of_var(index: int) -> int:
    return _node(Tag.VAR, [index], None)


def encode_formula(formula: Formula, budget: Optional[Budget] = None) -> int:
    """
    公式编码

    Args:
        formula: 待编码公式（按原样编码，不做规范化）
        budget: 给出时在每次配对前检查比特估计

    Raises:
        BudgetExceeded: 编码规模超过 budget.max_bits
    """
    prefix, matrix = peel(formula)
    if isinstance(matrix, Eq):
        code = _node(Tag.EQ, [encode_term(matrix.left, budget),
                              encode_term(matrix.right, budget)], budget)
    else:
        code = _node(Tag.IMPLIES, [encode_formula(matrix.antecedent, budget),
                                   encode_formula(matrix.consequent, budget)], budget)
    for entry in reversed(prefix):
        if entry is None:
            code = _node(Tag.NOT, [code], budget)
        else:
            code = _node(Tag.FORALL, [entry, code], budget)
    return code


# -------------------------------------------------------------- decoding

_ARITY = {
    Tag.ZERO: 0, Tag.SUCC: 1, Tag.ADD: 2, Tag.MUL: 2, Tag.NUMERAL: 1, Tag.VAR: 1,
    Tag.EQ: 2, Tag.NOT: 1, Tag.IMPLIES: 2, Tag.FORALL: 2,
}


def decode_term(code: int) -> Term:
    """
    Raises:
        NotATermCode: code 不在 encode_term 的像中
    """
    tag, rest = unpair(code)
    if tag not in TERM_TAGS:
        raise NotATermCode(f"{code} carries non-term tag {tag}")
    children = seq_decode_exact(rest, _ARITY[Tag(tag)])
    if children is None:
        raise NotATermCode(f"{code} has malformed children for tag {tag}")

    if tag == Tag.ZERO:
        return ZERO
    if tag == Tag.NUMERAL:
        return Numeral(children[0])
    if tag == Tag.VAR:
        return Var(children[0])
    if tag == Tag.SUCC:
        # S 链迭代解码
        depth = 1
        inner = children[0]
        while True:
            inner_tag, inner_rest = unpair(inner)
            if inner_tag != Tag.SUCC:
                break
            nested = seq_decode_exact(inner_rest, 1)
            if nested is None:
                raise NotATermCode(f"{inner} has malformed children for tag {Tag.SUCC}")
            depth += 1
            inner = nested[0]
        term = decode_term(inner)
        for _ in range(depth):
            term = Succ(term)
        return term
    left, right = decode_term(children[0]), decode_term(children[1])
    return Add(left, right) if tag == Tag.ADD else Mul(left, right)


def decode_formula(code: int) -> Formula:
    """
    Raises:
        NotAFormulaCode: code 不在 encode_formula 的像中（即不属于 FC）
    """
    prefix: List[Optional[int]] = []
    while True:
        tag, rest = unpair(code)
        if tag not in FORMULA_TAGS:
            raise NotAFormulaCode(f"{code} carries non-formula tag {tag}")
        children = seq_decode_exact(rest, _ARITY[Tag(tag)])
        if children is None:
            raise NotAFormulaCode(f"{code} has malformed children for tag {tag}")
        if tag == Tag.NOT:
            prefix.append(None)
            code = children[0]
        elif tag == Tag.FORALL:
            prefix.append(children[0])
            code = children[1]
        else:
            break

    if tag == Tag.EQ:
        try:
            matrix: Formula = Eq(decode_term(children[0]), decode_term(children[1]))
        except NotATermCode as exc:
            raise NotAFormulaCode(f"equation side is not a term code: {exc}") from exc
    else:
        matrix = Implies(decode_formula(children[0]), decode_formula(children[1]))

    for entry in reversed(prefix):
        matrix = Not(matrix) if entry is None else ForAll(entry, matrix)
    return matrix


def is_formula_code(code: int) -> bool:
    """FC 成员判定"""
    try:
        decode_formula(code)
    except NotAFormulaCode:
        return False
    return True


def is_term_code(code: int) -> bool:
    try:
        decode_term(code)
    except NotATermCode:
        return False
    return True

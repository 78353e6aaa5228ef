"""
多项式到 PA 项

[职责]
- poly_to_term：自然系数多项式 → 由 Numeral 系数、Add、Mul 与变量组成的项
- 数字位数守卫：打印前拒绝超过 numeral_digit_limit 的数字
[约定]
- 非常数单项式按排序在前，常数项在最后
- 和与积都按平衡二叉树组合，项的深度只随单项式个数对数增长
"""

from typing import Callable, List, Mapping, Union

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.diophantine.polynomial import Monomial, Polynomial
from proof_forge.core.pa.digits import decimal_digits
from proof_forge.core.pa.syntax import (
    ZERO, Add, Eq, ForAll, Formula, Implies, Mul, Not, Numeral, Succ, Term, Var, VarId, numeral,
)
from proof_forge.errors import BudgetExceeded, RepresentationError


def _balanced(items: List[Term], combine: Callable[[Term, Term], Term]) -> Term:
    if len(items) == 1:
        return items[0]
    middle = len(items) // 2
    return combine(_balanced(items[:middle], combine), _balanced(items[middle:], combine))


def _monomial_term(monomial: Monomial, coefficient: int, varmap: Mapping[str, VarId]) -> Term:
    factors: List[Term] = []
    if coefficient != 1 or not monomial:
        factors.append(numeral(coefficient))
    for name, exponent in monomial:
        if name not in varmap:
            raise RepresentationError(f"no PA variable for unknown {name!r}")
        factors.extend([Var(varmap[name])] * exponent)
    return _balanced(factors, Mul)


def poly_to_term(polynomial: Polynomial, varmap: Mapping[str, VarId],
                 budget: Budget = DEFAULT_BUDGET) -> Term:
    """
    Args:
        polynomial: 系数全部非负
        varmap: 未知数名 → PA 变量下标

    Raises:
        RepresentationError: 出现负系数，或某个未知数没有对应变量
        BudgetExceeded: 单项式个数超过 budget.max_monomials
    """
    budget.check_monomials(len(polynomial), "representation monomials")
    monomials = sorted(polynomial.items(), key=lambda item: (not item[0], item[0]))
    summands: List[Term] = []
    for monomial, coefficient in monomials:
        if coefficient < 0:
            raise RepresentationError(
                f"coefficient {coefficient} of {monomial!r} is negative; "
                f"split the polynomial into natural sides first"
            )
        summands.append(_monomial_term(monomial, coefficient, varmap))
    if not summands:
        return ZERO
    return _balanced(summands, Add)


# ------------------------------------------------------------ numeral guard


def largest_numeral(obj: Union[Term, Formula]) -> int:
    """公式或项中最大的 Numeral 值（没有时为 0）"""
    largest = 0
    stack: List[Union[Term, Formula]] = [obj]
    while stack:
        node = stack.pop()
        if isinstance(node, Numeral):
            largest = max(largest, node.value)
        elif isinstance(node, Succ):
            stack.append(node.arg)
        elif isinstance(node, (Add, Mul, Eq)):
            stack.extend((node.left, node.right))
        elif isinstance(node, (Not, ForAll)):
            stack.append(node.body)
        elif isinstance(node, Implies):
            stack.extend((node.antecedent, node.consequent))
    return largest


def check_numeral_limit(obj: Union[Term, Formula], digit_limit: int,
                        allow_huge: bool = False) -> None:
    """
    Raises:
        BudgetExceeded: 某个数字的十进制位数超过 digit_limit，且未给出 allow_huge
    """
    if allow_huge:
        return
    digits = decimal_digits(largest_numeral(obj))
    if digits > digit_limit:
        raise BudgetExceeded("numeral digits", digit_limit, digits)

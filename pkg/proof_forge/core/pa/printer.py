"""
PA 公式打印

输出可被 parse_formula 重新读回；数字打印为十进制字面量。
"""

from typing import List

from proof_forge.core.pa.digits import to_decimal
from proof_forge.core.pa.syntax import Add, Eq, Formula, Numeral, Succ, Term, Var, Zero, peel


def print_term(term: Term) -> str:
    if isinstance(term, Zero):
        return "0"
    if isinstance(term, Numeral):
        return to_decimal(term.value)
    if isinstance(term, Var):
        return f"x{term.index}"
    if isinstance(term, Succ):
        depth = 0
        while isinstance(term, Succ):
            depth += 1
            term = term.arg
        return "S(" * depth + print_term(term) + ")" * depth
    op = "+" if isinstance(term, Add) else "*"
    return f"({print_term(term.left)} {op} {print_term(term.right)})"


def print_formula(formula: Formula) -> str:
    parts: List[str] = []
    _emit(formula, parts)
    return "".join(parts)


def _emit(formula: Formula, parts: List[str]) -> None:
    prefix, matrix = peel(formula)
    for entry in prefix:
        parts.append("~" if entry is None else f"forall x{entry}. ")

    if isinstance(matrix, Eq):
        atom = f"{print_term(matrix.left)} = {print_term(matrix.right)}"
        # ~ 直接作用于等式时加括号
        if prefix and prefix[-1] is None:
            atom = f"({atom})"
        parts.append(atom)
        return

    parts.append("(")
    _emit(matrix.antecedent, parts)
    parts.append(" -> ")
    _emit(matrix.consequent, parts)
    parts.append(")")

"""
方程的 PA 表示与可证性公式

[职责]
- equation_to_formula / represent：自然系数两边形式 → 原子公式 d = Eq(L, R)
- b_formula：对全部未知数变量做存在闭包，只留参数变量自由
- b_of / w_sequence：在码位代入公式编码的数字，并迭代
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.codec.godel import encode_formula
from proof_forge.core.diophantine.equation import Equation
from proof_forge.core.diophantine.polynomial import Polynomial
from proof_forge.core.pa.syntax import (
    Eq, Formula, Term, VarId, exists_, numeral, substitute, substitute_terms,
)
from proof_forge.core.representation.terms import poly_to_term
from proof_forge.errors import RepresentationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Representation:
    """
    [职责] 方程的表示公式及名字到 PA 变量的映射
    [约定]
    - formula 是 Eq(L, R)，自由变量取自 unknown_to_var 与 parameter_to_var 的值
    - parameter_to_var 的第一个参数是码位 (parameter_var)
    - 两个映射都保持声明顺序；b_formula 的量词前缀按 unknown_to_var 的顺序
    """

    formula: Eq
    unknown_to_var: Dict[str, VarId] = field(default_factory=dict)
    parameter_to_var: Dict[str, VarId] = field(default_factory=dict)

    @property
    def parameter_var(self) -> VarId:
        if not self.parameter_to_var:
            raise RepresentationError("representation has no parameter slot")
        return next(iter(self.parameter_to_var.values()))

    @property
    def unknown_vars(self) -> Tuple[VarId, ...]:
        return tuple(self.unknown_to_var.values())

    @property
    def variables(self) -> Dict[str, VarId]:
        return {**self.parameter_to_var, **self.unknown_to_var}

    def max_var(self) -> VarId:
        return max(self.variables.values(), default=-1)

    def environment(self, assignment: Mapping[str, int]) -> Dict[VarId, int]:
        """
        名字赋值 → 变量赋值

        Raises:
            RepresentationError: 缺少某个名字的取值，或取值为负
        """
        env: Dict[VarId, int] = {}
        for name, index in self.variables.items():
            if name not in assignment:
                raise RepresentationError(f"no value for {name!r}")
            value = assignment[name]
            if value < 0:
                raise RepresentationError(f"value of {name!r} must be a natural, got {value}")
            env[index] = value
        return env


def equation_to_formula(sides: Tuple[Polynomial, Polynomial], varmap: Mapping[str, VarId],
                        parameters: Sequence[str] = (),
                        budget: Budget = DEFAULT_BUDGET) -> Representation:
    """
    Args:
        sides: to_natural_form 给出的 (L, R)
        varmap: 全部名字 → 变量下标（单射）
        parameters: varmap 中作为参数的名字，第一个是码位

    Raises:
        RepresentationError: varmap 不全或不是单射，或两边有负系数
    """
    left, right = sides
    indices = list(varmap.values())
    if len(set(indices)) != len(indices):
        raise RepresentationError("variable map sends two names to the same PA variable")
    missing = (left.unknowns() | right.unknowns() | set(parameters)) - set(varmap)
    if missing:
        raise RepresentationError(f"no PA variable for unknown {sorted(missing)[0]!r}")
    formula = Eq(poly_to_term(left, varmap, budget), poly_to_term(right, varmap, budget))
    return Representation(
        formula=formula,
        unknown_to_var={n: i for n, i in varmap.items() if n not in parameters},
        parameter_to_var={n: varmap[n] for n in parameters},
    )


def represent(equation: Equation, first_var: VarId = 0,
              budget: Budget = DEFAULT_BUDGET) -> Representation:
    """参数在前、未知数在后，按声明顺序从 first_var 起分配变量"""
    varmap = {name: first_var + offset for offset, name in enumerate(equation.names)}
    rep = equation_to_formula(equation.natural_form(), varmap, equation.parameters, budget)
    logger.debug("represented equation over %d names from x%d", len(varmap), first_var)
    return rep


# ------------------------------------------------------------ provability


def b_formula(rep: Representation) -> Formula:
    """exists u0 exists u1 ... d：最外层量词对应第一个未知数"""
    body: Formula = rep.formula
    for index in reversed(rep.unknown_vars):
        body = exists_(index, body)
    return body


def at_code(rep: Representation, term: Term) -> Formula:
    """B(term)：码位代入 term，其余参数保持自由"""
    return substitute(b_formula(rep), rep.parameter_var, term)


def b_of(formula: Formula, rep: Representation,
         budget: Optional[Budget] = None) -> Formula:
    """B((#F)')"""
    return at_code(rep, numeral(encode_formula(formula, budget)))


def w_sequence(formula: Formula, t_max: int, rep: Representation,
               budget: Optional[Budget] = None) -> List[Formula]:
    """
    [W1, ..., W_t_max]，W_{t+1} = b_of(W_t)，W0 = formula

    Raises:
        ValueError: t_max < 1
        BudgetExceeded: 某个 W_t 的编码超过 budget.max_bits
    """
    if t_max < 1:
        raise ValueError(f"t_max must be at least 1, got {t_max}")
    sequence: List[Formula] = []
    current = formula
    for _ in range(t_max):
        current = b_of(current, rep, budget)
        sequence.append(current)
    return sequence


def instance_terms(rep: Representation,
                   assignment: Mapping[str, int]) -> Tuple[Term, Term]:
    """d 在 assignment 处的两边闭项"""
    mapping = {index: numeral(value) for index, value in rep.environment(assignment).items()}
    return (substitute_terms(rep.formula.left, mapping),
            substitute_terms(rep.formula.right, mapping))

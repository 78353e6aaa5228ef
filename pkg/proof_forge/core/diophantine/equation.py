"""
单一多项式方程 D = 0

[职责]
- collapse：纯多项式方程组 → D = Σ (Lᵢ - Rᵢ)²
- to_natural_form：D 拆成两边系数均非负的 D_L = D_R
- Equation：带参数 / 未知数划分的方程，支持参数改为未知数、参数代入与求值
"""

import logging
from dataclasses import dataclass
from typing import Mapping, Tuple

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.diophantine.polynomial import Polynomial, poly_sum
from proof_forge.core.diophantine.system import DiophSystem, PolyEq
from proof_forge.errors import ParameterError

logger = logging.getLogger(__name__)


def collapse(system: DiophSystem, budget: Budget = DEFAULT_BUDGET) -> "Equation":
    """
    Raises:
        ValueError: 方程组仍含 Exp / Mask 条件
        BudgetExceeded: 平方展开后的单项式个数估计超过预算
    """
    if not system.is_polynomial:
        raise ValueError(f"collapse needs a pure polynomial system, got {system.kinds()}")
    differences = [c.difference for c in system.conditions if isinstance(c, PolyEq)]
    estimate = sum(len(d) * (len(d) + 1) // 2 for d in differences)
    budget.check_monomials(estimate, "collapsed equation monomials")
    total = poly_sum(difference * difference for difference in differences)
    logger.info("collapsed %d conditions into %d monomials of degree %d",
                len(differences), len(total), total.degree())
    return Equation(total, system.parameters, system.unknowns)


def to_natural_form(polynomial: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """D = D_L - D_R，两边系数非负且没有公共单项式"""
    return polynomial.split_signs()


def evaluate(polynomial: Polynomial, assignment: Mapping[str, int]) -> int:
    return polynomial.evaluate(assignment)


@dataclass(frozen=True)
class Equation:
    """
    方程 polynomial = 0

    Attributes:
        polynomial: D
        parameters: 参数（如 k、x₀ 之前的 a）
        unknowns: 存在未知数；声明顺序即搜索的字典序
    """

    polynomial: Polynomial
    parameters: Tuple[str, ...] = ()
    unknowns: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "unknowns", tuple(self.unknowns))
        names = self.parameters + self.unknowns
        if len(set(names)) != len(names):
            raise ParameterError("a name is declared both as parameter and unknown")
        stray = self.polynomial.unknowns() - set(names)
        if stray:
            raise ParameterError(f"polynomial uses undeclared name {sorted(stray)[0]!r}")

    @classmethod
    def over(cls, polynomial: Polynomial, parameters: Tuple[str, ...] = ()) -> "Equation":
        """未知数取多项式中除参数外的全部名字（按名字排序）"""
        unknowns = tuple(sorted(polynomial.unknowns() - set(parameters)))
        return cls(polynomial, tuple(parameters), unknowns)

    @property
    def names(self) -> Tuple[str, ...]:
        return self.parameters + self.unknowns

    def natural_form(self) -> Tuple[Polynomial, Polynomial]:
        return to_natural_form(self.polynomial)

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        return self.polynomial.evaluate(assignment)

    def holds(self, assignment: Mapping[str, int]) -> bool:
        return self.evaluate(assignment) == 0

    def parameter_to_unknown(self, name: str) -> "Equation":
        """
        参数 name 改为存在未知数（排在最前），多项式不变

        Raises:
            ParameterError: name 不是参数（包括已经改过一次）
        """
        if name not in self.parameters:
            raise ParameterError(f"{name!r} is not a parameter of this equation")
        return Equation(
            self.polynomial,
            tuple(p for p in self.parameters if p != name),
            (name,) + self.unknowns,
        )

    def specialize(self, name: str, value: int) -> "Equation":
        """
        参数 name 代入常数 value

        Raises:
            ParameterError: name 不是参数或 value 为负
        """
        if name not in self.parameters:
            raise ParameterError(f"{name!r} is not a parameter of this equation")
        if value < 0:
            raise ParameterError(f"{name} := {value}: parameters are naturals")
        return Equation(
            self.polynomial.substitute({name: value}),
            tuple(p for p in self.parameters if p != name),
            self.unknowns,
        )

    def as_system(self) -> DiophSystem:
        return DiophSystem(self.parameters, self.unknowns, (PolyEq(self.polynomial),))

    def __str__(self) -> str:
        return f"{self.polynomial} = 0"

"""
不完备性构造的上下文

[职责] 收拢对角表示 diagRep(x, y, z...) 与可证性表示 B(p)，保证两者变量互不相交
[场景]
    ctx = IncompletenessContext.toy()             # 桌面规模：两个无未知数的小方程
    ctx = IncompletenessContext.from_pipeline()   # 真实机器，受预算约束
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from proof_forge.config import Budget
from proof_forge.core.diophantine import Equation, var
from proof_forge.core.incompleteness.diagonal import DIAGONAL_PARAMETERS, diag_representation
from proof_forge.core.machine import universal_checker_machine
from proof_forge.core.pa.syntax import Formula, Term, VarId
from proof_forge.core.representation import (
    Representation, at_code, machine_representation, represent,
)
from proof_forge.errors import RepresentationError

logger = logging.getLogger(__name__)

# y = x + 1 的形状；只用于桌面规模的句子构造
TOY_DIAGONAL = Equation(var("n") + 1 - var("m"), DIAGONAL_PARAMETERS)
# B(k) := k = 0，没有公式码满足
TOY_PROVABILITY = Equation(var("k"), ("k",))


@dataclass(frozen=True)
class IncompletenessContext:
    diagonal: Representation
    provability: Representation
    is_toy: bool = False

    def __post_init__(self):
        if len(self.diagonal.parameter_to_var) != 2:
            raise RepresentationError("the diagonal representation needs parameters (n, m)")
        shared = set(self.diagonal.variables.values()) & set(self.provability.variables.values())
        if shared:
            raise RepresentationError(
                f"diagonal and provability representations share variable x{min(shared)}"
            )
        if not self.provability.parameter_to_var:
            raise RepresentationError("the provability representation has no code slot")

    @property
    def slots(self) -> Tuple[VarId, VarId]:
        """(x, y)：对角关系的两个参数变量"""
        x, y = self.diagonal.parameter_to_var.values()
        return x, y

    @property
    def block(self) -> Tuple[VarId, ...]:
        """对角表示的未知数变量 (z-block)"""
        return self.diagonal.unknown_vars

    def provable(self, term: Term) -> Formula:
        return at_code(self.provability, term)

    @classmethod
    def of(cls, diagonal: Equation, provability: Equation,
           budget: Optional[Budget] = None, is_toy: bool = False) -> "IncompletenessContext":
        budget = budget or Budget.from_settings()
        diag_rep = represent(diagonal, 0, budget)
        prov_rep = represent(provability, diag_rep.max_var() + 1, budget)
        return cls(diag_rep, prov_rep, is_toy)

    @classmethod
    def toy(cls, budget: Optional[Budget] = None) -> "IncompletenessContext":
        return cls.of(TOY_DIAGONAL, TOY_PROVABILITY, budget, is_toy=True)

    @classmethod
    def from_pipeline(cls, budget: Optional[Budget] = None) -> "IncompletenessContext":
        """
        Raises:
            BudgetExceeded: 任一表示的规模超过预算
        """
        budget = budget or Budget.from_settings()
        diag_rep = diag_representation(budget)
        prov_rep = machine_representation(
            universal_checker_machine(), ("k", "a"), existential=("a",),
            first_var=diag_rep.max_var() + 1, budget=budget,
        )
        logger.info("incompleteness context from pipeline: %d + %d unknowns",
                    len(diag_rep.unknown_to_var), len(prov_rep.unknown_to_var))
        return cls(diag_rep, prov_rep)

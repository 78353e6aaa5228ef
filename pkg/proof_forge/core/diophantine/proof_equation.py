"""
证明方程

[职责]
- 把检查器机器的算术化在 k = #F 处特化，a 改为存在未知数，得到公式 F 的证明方程
- witness_for(a)：由接受运行构造方程（任一阶段）的精确解
- search(bound)：逐个 a ≤ bound 回答 "a 是否为 F 的证明码"（对固定 a 可判定）
[约定] 所有物化都受 Budget 约束，超限时抛 BudgetExceeded 而不是耗尽内存
"""

import logging
from functools import cached_property
from typing import Optional, Tuple

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.checker import check_code
from proof_forge.core.diophantine.arithmetize import arithmetize, construct_witness
from proof_forge.core.diophantine.equation import Equation, collapse
from proof_forge.core.diophantine.lowering import LoweringPipeline, WitnessTransformer
from proof_forge.core.diophantine.system import Assignment, DiophSystem
from proof_forge.core.machine import (
    CounterMachine, Outcome, simulate, universal_checker_machine,
)
from proof_forge.errors import BudgetExceeded, WitnessError

logger = logging.getLogger(__name__)

STAGES = ("exp", "poly", "equation")


class ProofEquation:
    """
    [职责] 公式 F（码 k）的证明方程及其解
    [场景]
        eq = ProofEquation(encode_formula(parse_formula("0=0")))
        eq.search(10_000)                  # 最小证明码
        eq.witness_for(a, stage="exp")     # 方程组的精确解
    """

    def __init__(self, code: int, machine: Optional[CounterMachine] = None,
                 budget: Budget = DEFAULT_BUDGET):
        self.code = code
        self.machine = machine or universal_checker_machine()
        self.budget = budget

    @property
    def is_universal(self) -> bool:
        return self.machine is universal_checker_machine()

    # --------------------------------------------------------------- stages

    @cached_property
    def system(self) -> DiophSystem:
        """指数丢番图形式：参数 k 已代入，a 是第一个未知数"""
        universal = arithmetize(self.machine, ("k", "a"))
        return universal.specialize("k", self.code).parameter_to_unknown("a")

    @cached_property
    def _lowered(self) -> Tuple[DiophSystem, WitnessTransformer]:
        return LoweringPipeline(budget=self.budget).run(self.system)

    @property
    def polynomial_system(self) -> DiophSystem:
        return self._lowered[0]

    @cached_property
    def equation(self) -> Equation:
        return collapse(self.polynomial_system, self.budget)

    # ------------------------------------------------------------ solutions

    def accepts(self, a: int) -> bool:
        """a 是否为 F 的证明码；检查器机器直接用 check_code 回答"""
        if self.is_universal:
            return check_code(self.code, a)
        return simulate(self.machine, (self.code, a), self.budget.max_steps).accepted

    def search(self, bound: int) -> Optional[int]:
        """最小的 a ≤ bound 使方程有解；没有则 None"""
        for a in range(bound + 1):
            if self.accepts(a):
                logger.info("proof code %d found for formula code %d", a, self.code)
                return a
        return None

    def solve(self, bound: int, stage: str = "exp") -> Optional[Tuple[int, Assignment]]:
        """search 找到 a 后构造该阶段的精确解"""
        a = self.search(bound)
        if a is None:
            return None
        return a, self.witness_for(a, stage)

    def witness_for(self, a: int, stage: str = "exp") -> Assignment:
        """
        Args:
            a: 证明码
            stage: "exp" 为指数丢番图方程组，"poly"/"equation" 为降阶后的多项式形式

        Raises:
            WitnessError: 机器在燃料内不接受 (k, a)
            BudgetExceeded: 运行步数或见证规模超出预算
            ValueError: 未知阶段
        """
        if stage not in STAGES:
            raise ValueError(f"unknown stage {stage!r}; choose from {STAGES}")
        trial = simulate(self.machine, (self.code, a), self.budget.max_steps)
        if trial.outcome == Outcome.OUT_OF_FUEL:
            raise BudgetExceeded("machine steps", self.budget.max_steps)
        if not trial.accepted:
            raise WitnessError(
                f"checker does not accept (k={self.code}, a={a}): {trial.outcome.value}"
            )
        # 每个数字至少两位：轨迹之前先按步数拒绝
        self.budget.check_bit_estimate(2 * (trial.steps + 2), "tableau bits")
        run = simulate(self.machine, (self.code, a), trial.steps, trace=True)
        witness = construct_witness(self.machine, run, ("k", "a"), self.budget)
        del witness["k"]
        if stage == "exp":
            return witness
        return self._lowered[1](witness)

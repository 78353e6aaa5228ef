"""
锻造流水线

[职责] 公式 → 通用检查机 → 算术化 → 降阶 → 塌缩 → 自然系数两边 → PA 表示
[约定]
- 通用产物只构造一次并缓存；每一步都受 Budget 约束，超限抛 BudgetExceeded
- feasibility_report 不物化超出预算的对象，只记录拒绝原因
"""

import logging
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from proof_forge.config import Budget
from proof_forge.core.codec.godel import encode_formula
from proof_forge.core.codec.proofs import AnnotatedProof, encode_proof
from proof_forge.core.diophantine import (
    DiophSystem, Equation, LoweringPipeline, ProofEquation, collapse,
)
from proof_forge.core.machine import CounterMachine, Outcome, simulate, universal_checker_machine
from proof_forge.core.pa.syntax import Formula, VarId
from proof_forge.core.representation import Representation, machine_system, represent
from proof_forge.core.types import FeasibilityReport, StageStats
from proof_forge.errors import BudgetExceeded, WitnessError

logger = logging.getLogger(__name__)


class ForgePipeline:
    """
    [职责] 通用证明方程及其表示的调度器
    [场景]
        forge = ForgePipeline()
        forge.proof_equation(parse_formula("0 = 0")).search(10_000)
        forge.feasibility_report(corpus)
    """

    PARAMETERS = ("k", "a")

    def __init__(self, budget: Optional[Budget] = None,
                 machine: Optional[CounterMachine] = None):
        self.budget = budget or Budget.from_settings()
        self.machine = machine or universal_checker_machine()
        self.lowering = LoweringPipeline(budget=self.budget)

    # ------------------------------------------------------------- artifacts

    @cached_property
    def universal_system(self) -> DiophSystem:
        """参数 k，a 为第一个未知数的指数丢番图方程组"""
        return machine_system(self.machine, self.PARAMETERS, existential=("a",))

    @cached_property
    def polynomial_system(self) -> DiophSystem:
        lowered, _ = self.lowering.run(self.universal_system)
        return lowered

    @cached_property
    def universal_equation(self) -> Equation:
        return collapse(self.polynomial_system, self.budget)

    def universal_representation(self, first_var: VarId = 0) -> Representation:
        return represent(self.universal_equation, first_var, self.budget)

    def proof_equation(self, formula: Formula) -> ProofEquation:
        code = encode_formula(formula, self.budget)
        return ProofEquation(code, self.machine, self.budget)

    def stage_stats(self) -> List[StageStats]:
        """各阶段规模（降阶阶段按模板推算，不物化）"""
        first = self.universal_system.stats("exp")
        return [first] + self.lowering.estimate(first)

    # ------------------------------------------------------------ feasibility

    def feasibility_report(self, corpus: Sequence[Tuple[str, AnnotatedProof, Formula]]
                           ) -> FeasibilityReport:
        """
        Args:
            corpus: (名字, 证明, 目标) 列表；取行数最少的一项作为最小实例（只编码这一项）
        """
        if not corpus:
            raise ValueError("feasibility report needs at least one corpus proof")
        name, proof, goal = min(corpus, key=lambda entry: len(entry[1]))
        k, a = encode_formula(goal, self.budget), encode_proof(proof, self.budget)
        refusals: List[str] = []

        run = simulate(self.machine, (k, a), self.budget.max_steps)
        steps = run.steps if run.outcome != Outcome.OUT_OF_FUEL else None
        if steps is None:
            refusals.append(f"checker machine out of fuel after {self.budget.max_steps} steps")

        largest: Optional[int] = None
        if steps is not None:
            try:
                witness = ProofEquation(k, self.machine, self.budget).witness_for(a, "exp")
                largest = max(value.bit_length() for value in witness.values())
            except (BudgetExceeded, WitnessError) as exc:
                refusals.append(f"witness for {name}: {exc}")

        stages: List[StageStats] = []
        try:
            stages = self.stage_stats()
        except BudgetExceeded as exc:
            refusals.append(f"stage statistics: {exc}")

        logger.info("feasibility report on %s: %s steps, %d refusals", name, steps, len(refusals))
        return FeasibilityReport(
            machine_instructions=len(self.machine),
            machine_registers=self.machine.registers,
            smallest_proof=name,
            smallest_proof_code_bits=a.bit_length(),
            checker_steps=steps,
            checker_fuel=self.budget.max_steps,
            stages=stages,
            largest_witness_bits=largest,
            refusals=refusals,
        )


__all__ = ["ForgePipeline"]

"""
机器接受关系的表示：算术化 → 降阶 → 塌缩 → 表示
"""

from typing import Optional, Sequence

from proof_forge.config import Budget
from proof_forge.core.diophantine import DiophSystem, LoweringPipeline, arithmetize, collapse
from proof_forge.core.machine import CounterMachine
from proof_forge.core.pa.syntax import VarId
from proof_forge.core.representation.formulas import Representation, represent


def machine_system(machine: CounterMachine, parameters: Sequence[str],
                   existential: Sequence[str] = ()) -> DiophSystem:
    """算术化后把 existential 中的参数改为存在未知数"""
    system = arithmetize(machine, tuple(parameters))
    for name in existential:
        system = system.parameter_to_unknown(name)
    return system


def machine_representation(machine: CounterMachine, parameters: Sequence[str],
                           existential: Sequence[str] = (), first_var: VarId = 0,
                           budget: Optional[Budget] = None) -> Representation:
    """
    Raises:
        BudgetExceeded: 降阶、塌缩或表示的规模超过预算
    """
    budget = budget or Budget.from_settings()
    system = machine_system(machine, parameters, existential)
    lowered, _ = LoweringPipeline(budget=budget).run(system)
    return represent(collapse(lowered, budget), first_var, budget)

"""
降阶阶段基类

[职责]
- LoweringStage：把某一类条件逐条替换为模板展开，并给出见证变换
- estimate：只按模板规模推算输出统计，不物化方程组
[约定] 每条被替换的条件得到一个互不相同的标签，模板的新未知数都以该标签为前缀
"""

import logging
from abc import ABC, abstractmethod
from typing import Callable, Dict, List, Mapping, Tuple

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.diophantine.system import (
    Assignment, Condition, DiophSystem, PolyEq, kind_of,
)
from proof_forge.core.types import StageStats

logger = logging.getLogger(__name__)

WitnessTransformer = Callable[[Mapping[str, int]], Assignment]


def identity_transformer(assignment: Mapping[str, int]) -> Assignment:
    return dict(assignment)


class LoweringStage(ABC):
    """
    [职责] 一个降阶阶段：替换 kind 类条件
    [场景] LoweringPipeline 依次调用；新增阶段只需注册
    """

    name: str = "stage"
    kind: str = ""
    prefix: str = "s"

    @abstractmethod
    def expand(self, condition: Condition, tag: str) -> Tuple[List[str], List[Condition]]:
        """单条条件的展开：(新未知数, 替换条件)"""

    @abstractmethod
    def witness(self, condition: Condition, tag: str, assignment: Mapping[str, int],
                budget: Budget) -> Dict[str, int]:
        """在原条件成立的赋值上给出新未知数的取值"""

    def _tags(self, system: DiophSystem) -> List[Tuple[int, str]]:
        selected = []
        for index, condition in enumerate(system.conditions):
            if kind_of(condition) == self.kind:
                selected.append((index, f"{self.prefix}{len(selected)}"))
        return selected

    def lower(self, system: DiophSystem,
              budget: Budget = DEFAULT_BUDGET) -> Tuple[DiophSystem, WitnessTransformer]:
        """
        Raises:
            BudgetExceeded: 输出方程组的单项式总数估计超过 budget.max_monomials
        """
        tags = self._tags(system)
        if not tags:
            return system, identity_transformer
        estimate = self.estimate(system.stats("input"))
        budget.check_monomials(estimate.monomials or 0, f"{self.name} output monomials")

        tag_of = dict(tags)
        fresh: List[str] = []
        conditions: List[Condition] = []
        for index, condition in enumerate(system.conditions):
            if index in tag_of:
                names, replacement = self.expand(condition, tag_of[index])
                fresh.extend(names)
                conditions.extend(replacement)
            else:
                conditions.append(condition)
        lowered = DiophSystem(system.parameters, system.unknowns + tuple(fresh), conditions)
        logger.info("%s: %d conditions replaced, %d unknowns added",
                    self.name, len(tags), len(fresh))

        originals = [(system.conditions[index], tag) for index, tag in tags]

        def transform(assignment: Mapping[str, int]) -> Assignment:
            extended = dict(assignment)
            for condition, tag in originals:
                extended.update(self.witness(condition, tag, assignment, budget))
            return extended

        return lowered, transform

    # ------------------------------------------------------------ sizing

    def template_stats(self) -> Tuple[int, Dict[str, int], int, int]:
        """(新未知数个数, 各类条件个数, 最高次数, 单项式个数)，按一条代表条件展开"""
        names, replacement = self.expand(self.representative(), "sample")
        kinds: Dict[str, int] = {}
        degree = 0
        monomials = 0
        for condition in replacement:
            kinds[kind_of(condition)] = kinds.get(kind_of(condition), 0) + 1
            if isinstance(condition, PolyEq):
                difference = condition.difference
                degree = max(degree, difference.degree())
                monomials += len(difference)
        return len(names), kinds, degree, monomials

    @abstractmethod
    def representative(self) -> Condition:
        """用于推算模板规模的代表条件"""

    def estimate(self, stats: StageStats) -> StageStats:
        count = stats.conditions.get(self.kind, 0)
        fresh, kinds, degree, monomials = self.template_stats()
        conditions = dict(stats.conditions)
        conditions[self.kind] = 0
        for kind, number in kinds.items():
            conditions[kind] = conditions.get(kind, 0) + number * count
        return StageStats(
            stage=self.name,
            parameters=stats.parameters,
            unknowns=stats.unknowns + fresh * count,
            conditions=conditions,
            degree=max(stats.degree, degree) if count else stats.degree,
            monomials=(stats.monomials or 0) + monomials * count,
            materialized=False,
        )

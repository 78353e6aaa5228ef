"""
降阶流水线：Mask → Exp → PolyEq

[职责]
- STAGE_REGISTRY：阶段名到阶段类的注册表
- LoweringPipeline：依次执行各阶段并复合见证变换
[约定] 阶段顺序有意义：Mask 消去会引入 Exp 条件，必须排在指数消去之前
"""

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Type

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.diophantine.lowering.base import (
    LoweringStage, WitnessTransformer, identity_transformer,
)
from proof_forge.core.diophantine.lowering.exponential import (
    ExponentialElimination, eliminate_exponentials,
)
from proof_forge.core.diophantine.lowering.mask import MaskReduction, reduce_mask
from proof_forge.core.diophantine.lowering.pell import (
    index_block, index_block_witness, pell_pair,
)
from proof_forge.core.diophantine.system import Assignment, DiophSystem
from proof_forge.core.types import StageStats

logger = logging.getLogger(__name__)

STAGE_REGISTRY: Dict[str, Type[LoweringStage]] = {
    "mask": MaskReduction,
    "exponential": ExponentialElimination,
}

DEFAULT_STAGES = ("mask", "exponential")


class LoweringPipeline:
    """
    [职责] 把指数丢番图方程组降为纯多项式方程组
    [场景]
        pipeline = LoweringPipeline()
        lowered, transform = pipeline.run(system)
        lowered.holds(transform(witness))
    """

    def __init__(self, stages: Optional[Sequence[LoweringStage]] = None,
                 budget: Budget = DEFAULT_BUDGET):
        self.stages: List[LoweringStage] = (
            list(stages) if stages is not None
            else [STAGE_REGISTRY[name]() for name in DEFAULT_STAGES]
        )
        self.budget = budget

    @classmethod
    def from_names(cls, names: Sequence[str], budget: Budget = DEFAULT_BUDGET
                   ) -> "LoweringPipeline":
        """
        Raises:
            ValueError: 未注册的阶段名
        """
        unknown = [name for name in names if name not in STAGE_REGISTRY]
        if unknown:
            raise ValueError(
                f"unknown lowering stage {unknown[0]!r}; known: {sorted(STAGE_REGISTRY)}"
            )
        return cls([STAGE_REGISTRY[name]() for name in names], budget)

    def run(self, system: DiophSystem) -> Tuple[DiophSystem, WitnessTransformer]:
        """依次降阶；返回最终方程组和复合后的见证变换"""
        transforms: List[WitnessTransformer] = []
        for stage in self.stages:
            system, transform = stage.lower(system, self.budget)
            if transform is not identity_transformer:
                transforms.append(transform)
        logger.info("lowered to %d unknowns, %d conditions",
                    len(system.unknowns), len(system.conditions))

        def composed(assignment: Mapping[str, int]) -> Assignment:
            result = dict(assignment)
            for transform in transforms:
                result = transform(result)
            return result

        return system, composed

    def transform(self, system: DiophSystem, assignment: Mapping[str, int]) -> Assignment:
        """对 system 的见证直接给出降阶后方程组的见证"""
        _, composed = self.run(system)
        return composed(assignment)

    def estimate(self, stats: StageStats) -> List[StageStats]:
        """不物化，按模板逐阶段推算规模"""
        rows = []
        for stage in self.stages:
            stats = stage.estimate(stats)
            rows.append(stats)
        return rows


__all__ = [
    "LoweringStage", "WitnessTransformer", "identity_transformer",
    "MaskReduction", "reduce_mask", "ExponentialElimination", "eliminate_exponentials",
    "pell_pair", "index_block", "index_block_witness",
    "STAGE_REGISTRY", "DEFAULT_STAGES", "LoweringPipeline",
]

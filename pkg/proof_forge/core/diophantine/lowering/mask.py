"""
Mask 消去

u ⊴ v 当且仅当 C(v, u) 为奇数（Kummer / Lucas）。取 B = 2^(v+1) > 2^v，
(B+1)^v 的 B 进制数字恰为 C(v, 0..v)，于是 C(v, u) 是第 u 位数字：

    B = 2^(v+1)，E = (B+1)^v，Bu = B^u，
    E = Hq·Bu + low (low < Bu)，Hq = Hh·B + C (C < B)，C = 2·Hc + 1
"""

from typing import Dict, List, Mapping, Tuple

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.diophantine.lowering.base import LoweringStage, WitnessTransformer
from proof_forge.core.diophantine.polynomial import var
from proof_forge.core.diophantine.system import Condition, DiophSystem, Exp, Mask, equation
from proof_forge.errors import WitnessError

FIELDS = ("two", "v1", "B", "B1", "E", "Bu", "low", "sl1", "Hq", "Hh", "C", "sl2", "Hc")


class MaskReduction(LoweringStage):
    name = "mask"
    kind = "MASK"
    prefix = "m"

    def representative(self) -> Condition:
        return Mask("u", "v")

    def expand(self, condition: Mask, tag: str) -> Tuple[List[str], List[Condition]]:
        n = {field: f"{tag}.{field}" for field in FIELDS}
        p = {field: var(name) for field, name in n.items()}
        conditions: List[Condition] = [
            equation(p["two"], 2),
            equation(p["v1"], var(condition.v) + 1),
            Exp(n["B"], n["two"], n["v1"]),
            equation(p["B1"], p["B"] + 1),
            Exp(n["E"], n["B1"], condition.v),
            Exp(n["Bu"], n["B"], condition.u),
            equation(p["E"], p["Hq"] * p["Bu"] + p["low"]),
            equation(p["low"] + 1 + p["sl1"], p["Bu"]),
            equation(p["Hq"], p["Hh"] * p["B"] + p["C"]),
            equation(p["C"] + 1 + p["sl2"], p["B"]),
            equation(p["C"], 2 * p["Hc"] + 1),
        ]
        return list(n.values()), conditions

    def witness(self, condition: Mask, tag: str, assignment: Mapping[str, int],
                budget: Budget) -> Dict[str, int]:
        u, v = assignment[condition.u], assignment[condition.v]
        if u & ~v:
            raise WitnessError(f"{condition.u}={u} is not a binary submask of {condition.v}={v}")
        shift = v + 1
        budget.check_bit_estimate(shift + 1, "mask witness bits")
        budget.check_bit_estimate(v * (shift + 1) + 1, "mask witness bits")
        big = 1 << shift
        power = pow(big + 1, v)
        high, low = power >> (u * shift), power & ((1 << (u * shift)) - 1)
        top, digit = divmod(high, big)
        values = {
            "two": 2, "v1": shift, "B": big, "B1": big + 1, "E": power,
            "Bu": 1 << (u * shift), "low": low, "sl1": (1 << (u * shift)) - low - 1,
            "Hq": high, "Hh": top, "C": digit, "sl2": big - digit - 1, "Hc": (digit - 1) // 2,
        }
        return {f"{tag}.{field}": value for field, value in values.items()}


def reduce_mask(system: DiophSystem,
                budget: Budget = DEFAULT_BUDGET) -> Tuple[DiophSystem, WitnessTransformer]:
    """消去全部 Mask 条件，返回 (无 Mask 的方程组, 见证变换)"""
    return MaskReduction().lower(system, budget)

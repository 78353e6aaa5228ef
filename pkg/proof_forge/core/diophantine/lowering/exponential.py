"""
指数消去

m = n^k 拆成两个由 0/1 选择子 z 切换的分支：
- z = 1：平凡分支，n ≤ 1 或 k = 0，直接用低次方程刻画
- z = 0：Pell 分支，n ≥ 2 且 k ≥ 1。取 a 使 M = 2an - n² - 1 > y_{k+1}(n+1) > n^k，
  则 n^k ≡ x_k(a) - (a - n)·y_k(a) (mod M)，m 是该余数
"""

from typing import Dict, List, Mapping, Tuple

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.diophantine.lowering.base import LoweringStage, WitnessTransformer
from proof_forge.core.diophantine.lowering.pell import (
    block_names, idle_block, index_block, index_block_witness,
)
from proof_forge.core.diophantine.polynomial import var
from proof_forge.core.diophantine.system import Condition, DiophSystem, Exp, PolyEq
from proof_forge.errors import WitnessError

FIELDS = ("z", "te", "n2", "k1", "a", "sl", "rl", "h")


class ExponentialElimination(LoweringStage):
    name = "exponential"
    kind = "EXP"
    prefix = "e"

    def representative(self) -> Condition:
        return Exp("u", "v", "w")

    def expand(self, condition: Exp, tag: str) -> Tuple[List[str], List[Condition]]:
        f = {field: f"{tag}.{field}" for field in FIELDS}
        p = {field: var(name) for field, name in f.items()}
        m, n, k = var(condition.u), var(condition.v), var(condition.w)
        z, a = p["z"], p["a"]
        g = 1 - z

        trivial = [
            k * n * (n - 1),
            m * k * (1 - n),
            (1 - m) * n,
            m * m - m,
            m + k - 1 - p["te"],
        ]
        size = f"{tag}.S"
        value = f"{tag}.V"
        y_size = var(block_names(size)["y"])
        value_names = block_names(value)
        x_val, y_val = var(value_names["x"]), var(value_names["y"])
        modulus = 2 * a * n - n * n - 1
        pell = [
            n - p["n2"] - 2,
            k - p["k1"] - 1,
            2 * a * n - n * n - y_size - 2 - p["sl"],
            modulus - m - 1 - p["rl"],
            x_val + n * y_val - a * y_val - m - p["h"] * modulus,
        ]

        conditions: List[Condition] = [PolyEq(z * z - z)]
        conditions += [PolyEq(z * poly) for poly in trivial]
        conditions += [PolyEq(g * poly) for poly in pell]
        conditions += index_block(size, n + 1, k + 1, g)
        conditions += index_block(value, a, k, g)
        names = list(f.values()) + list(block_names(size).values()) + list(value_names.values())
        return names, conditions

    def witness(self, condition: Exp, tag: str, assignment: Mapping[str, int],
                budget: Budget) -> Dict[str, int]:
        m, n, k = assignment[condition.u], assignment[condition.v], assignment[condition.w]
        size, value = f"{tag}.S", f"{tag}.V"
        values = {field: 0 for field in FIELDS}
        if n <= 1 or k == 0:
            expected = 1 if k == 0 else n
            if m != expected:
                raise WitnessError(f"{condition.u}={m} is not {n}^{k}")
            values.update(z=1, te=m + k - 1)
            result = {f"{tag}.{field}": v for field, v in values.items()}
            result.update(idle_block(size))
            result.update(idle_block(value))
            return result

        block_s = index_block_witness(size, n + 1, k + 1, budget)
        y_size = block_s[block_names(size)["y"]]
        a = max(3, -(-(n * n + y_size + 2) // (2 * n)))
        modulus = 2 * a * n - n * n - 1
        block_v = index_block_witness(value, a, k, budget)
        names = block_names(value)
        residue = block_v[names["x"]] + (n - a) * block_v[names["y"]]
        h, rem = divmod(residue - m, modulus)
        if rem or m >= modulus or h < 0:
            raise WitnessError(f"{condition.u}={m} is not {n}^{k}")
        values.update(
            n2=n - 2, k1=k - 1, a=a,
            sl=2 * a * n - n * n - y_size - 2,
            rl=modulus - m - 1, h=h,
        )
        result = {f"{tag}.{field}": v for field, v in values.items()}
        result.update(block_s)
        result.update(block_v)
        return result


def eliminate_exponentials(system: DiophSystem,
                           budget: Budget = DEFAULT_BUDGET
                           ) -> Tuple[DiophSystem, WitnessTransformer]:
    """消去全部 Exp 条件，返回 (纯多项式方程组, 见证变换)"""
    return ExponentialElimination().lower(system, budget)

"""
指数丢番图方程组

[职责]
- 三种条件：PolyEq(L, R) / Exp(u, v, w) 即 u = v^w / Mask(u, v) 即 u 的二进制位是 v 的子集
- DiophSystem：参数、存在未知数与条件列表；校验名字空间、统计规模、检查赋值
[约定] 所有量取自然数；一个方程组内参数与未知数的名字互不相同
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple, Union

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.diophantine.polynomial import ZERO_POLY, Polynomial, const, var
from proof_forge.core.types import StageStats
from proof_forge.errors import ParameterError, WitnessError

logger = logging.getLogger(__name__)

Assignment = Dict[str, int]


@dataclass(frozen=True)
class PolyEq:
    left: Polynomial
    right: Polynomial = field(default=ZERO_POLY)

    @property
    def difference(self) -> Polynomial:
        return self.left - self.right

    def unknowns(self) -> FrozenSet[str]:
        return self.left.unknowns() | self.right.unknowns()


@dataclass(frozen=True)
class Exp:
    """u = v^w（0^0 = 1）"""

    u: str
    v: str
    w: str

    def unknowns(self) -> FrozenSet[str]:
        return frozenset((self.u, self.v, self.w))


@dataclass(frozen=True)
class Mask:
    """u ⊴ v：u 的每个二进制位都不超过 v 的对应位"""

    u: str
    v: str

    def unknowns(self) -> FrozenSet[str]:
        return frozenset((self.u, self.v))


Condition = Union[PolyEq, Exp, Mask]

KIND_NAMES = {PolyEq: "EQ", Exp: "EXP", Mask: "MASK"}


def kind_of(condition: Condition) -> str:
    return KIND_NAMES[type(condition)]


def equation(left, right=0) -> PolyEq:
    """PolyEq 的便捷构造，两边可以是多项式、整数或未知数名字"""
    return PolyEq(_as_poly(left), _as_poly(right))


def _as_poly(value) -> Polynomial:
    if isinstance(value, str):
        return var(value)
    return Polynomial.coerce(value)


def condition_holds(condition: Condition, assignment: Mapping[str, int],
                    budget: Budget = DEFAULT_BUDGET) -> bool:
    """
    在赋值下检查单个条件

    Raises:
        WitnessError: 赋值缺少条件中的未知数
        BudgetExceeded: 检查 Exp 所需的幂超出比特预算
    """
    if isinstance(condition, PolyEq):
        return condition.left.evaluate(assignment) == condition.right.evaluate(assignment)
    try:
        if isinstance(condition, Exp):
            u, v, w = assignment[condition.u], assignment[condition.v], assignment[condition.w]
            return power_matches(u, v, w, budget)
        u, v = assignment[condition.u], assignment[condition.v]
    except KeyError as exc:
        raise WitnessError(f"assignment has no value for {exc.args[0]!r}") from None
    return u & ~v == 0


def power_matches(u: int, v: int, w: int, budget: Budget = DEFAULT_BUDGET) -> bool:
    """u == v**w，在算出幂之前按比特长度排除"""
    if v <= 1 or w == 0:
        return u == (1 if w == 0 else v)
    if u < v:
        return False
    # v^w 的比特长度介于 w·(bits(v)-1) 与 w·bits(v) 之间
    if not w * (v.bit_length() - 1) < u.bit_length() <= w * v.bit_length():
        return False
    budget.check_bit_estimate(w * v.bit_length(), "exponential check")
    return v ** w == u


@dataclass(frozen=True)
class DiophSystem:
    """
    方程组

    Attributes:
        parameters: 有序参数（如 k、a），不会被当作存在未知数消去
        unknowns: 存在未知数，声明顺序即有界搜索的字典序
        conditions: 条件列表
    """

    parameters: Tuple[str, ...]
    unknowns: Tuple[str, ...]
    conditions: Tuple[Condition, ...]

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "unknowns", tuple(self.unknowns))
        object.__setattr__(self, "conditions", tuple(self.conditions))
        names = self.parameters + self.unknowns
        if len(set(names)) != len(names):
            duplicates = sorted(n for n, c in Counter(names).items() if c > 1)
            raise ParameterError(f"names declared twice: {', '.join(duplicates[:5])}")
        declared = set(names)
        for index, condition in enumerate(self.conditions):
            stray = condition.unknowns() - declared
            if stray:
                raise ParameterError(
                    f"condition {index} uses undeclared name {sorted(stray)[0]!r}"
                )

    @property
    def names(self) -> Tuple[str, ...]:
        return self.parameters + self.unknowns

    @property
    def is_polynomial(self) -> bool:
        return all(isinstance(c, PolyEq) for c in self.conditions)

    def kinds(self) -> Dict[str, int]:
        counts = Counter(kind_of(c) for c in self.conditions)
        return {kind: counts.get(kind, 0) for kind in ("EQ", "EXP", "MASK")}

    def degree(self) -> int:
        return max(
            (c.difference.degree() for c in self.conditions if isinstance(c, PolyEq)),
            default=0,
        )

    def stats(self, stage: str) -> StageStats:
        return StageStats(
            stage=stage,
            parameters=len(self.parameters),
            unknowns=len(self.unknowns),
            conditions=self.kinds(),
            degree=self.degree(),
            monomials=sum(
                len(c.difference) for c in self.conditions if isinstance(c, PolyEq)
            ),
        )

    # ------------------------------------------------------- assignments

    def failing(self, assignment: Mapping[str, int],
                budget: Budget = DEFAULT_BUDGET) -> List[int]:
        """不成立的条件下标"""
        self.require_total(assignment)
        return [
            index for index, condition in enumerate(self.conditions)
            if not condition_holds(condition, assignment, budget)
        ]

    def holds(self, assignment: Mapping[str, int], budget: Budget = DEFAULT_BUDGET) -> bool:
        return not self.failing(assignment, budget)

    def require_total(self, assignment: Mapping[str, int]) -> None:
        missing = [name for name in self.names if name not in assignment]
        if missing:
            raise WitnessError(
                f"assignment misses {len(missing)} names, first {missing[0]!r}"
            )
        negative = [name for name in self.names if assignment[name] < 0]
        if negative:
            raise WitnessError(f"{negative[0]!r} is negative; solutions are naturals")

    # --------------------------------------------------- reclassification

    def parameter_to_unknown(self, name: str) -> "DiophSystem":
        """
        参数改为存在未知数（排在最前）

        Raises:
            ParameterError: name 不是参数
        """
        if name not in self.parameters:
            raise ParameterError(f"{name!r} is not a parameter")
        return DiophSystem(
            tuple(p for p in self.parameters if p != name),
            (name,) + self.unknowns,
            self.conditions,
        )

    def specialize(self, name: str, value: int) -> "DiophSystem":
        """
        参数代入常数；出现在 Exp / Mask 中的参数改为被钉住的未知数

        Raises:
            ParameterError: name 不是参数或 value 为负
        """
        if name not in self.parameters:
            raise ParameterError(f"{name!r} is not a parameter")
        if value < 0:
            raise ParameterError(f"{name} := {value}: parameters are naturals")
        pinned = any(
            not isinstance(c, PolyEq) and name in c.unknowns() for c in self.conditions
        )
        parameters = tuple(p for p in self.parameters if p != name)
        if pinned:
            return DiophSystem(
                parameters,
                (name,) + self.unknowns,
                self.conditions + (PolyEq(var(name), const(value)),),
            )
        conditions = tuple(
            PolyEq(c.left.substitute({name: value}), c.right.substitute({name: value}))
            if isinstance(c, PolyEq) and name in c.unknowns() else c
            for c in self.conditions
        )
        return DiophSystem(parameters, self.unknowns, conditions)

    def pinned(self, values: Mapping[str, int]) -> "DiophSystem":
        """依次代入多个参数"""
        system = self
        for name, value in values.items():
            system = system.specialize(name, value)
        return system


def merge_unknowns(*groups: Iterable[str]) -> Tuple[str, ...]:
    """按首次出现顺序合并名字"""
    seen: Dict[str, None] = {}
    for group in groups:
        for name in group:
            seen.setdefault(name, None)
    return tuple(seen)


def restrict(assignment: Mapping[str, int], names: Iterable[str]) -> Assignment:
    return {name: assignment[name] for name in names}

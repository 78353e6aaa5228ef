"""
有界搜索

[职责] 在 "每个未知数 ≤ 上界" 的范围内找字典序最小的自然数解
[做法]
- 按声明顺序深度优先；每次赋值后做约束传播：
  - 只剩一个未赋值未知数且它线性出现的 PolyEq 直接解出该值
  - Exp 由另外两个量解出第三个（幂、离散对数、整数开方）
  - 全部赋值的条件直接检查
- 分支时，若存在已知右端的 Mask(x, v)，x 只枚举这些 v 的按位与的子掩码（递增）
- 传播得到的值由已赋值部分唯一确定，因此第一个解就是字典序最小解
[约定] 并行时只在第一个自由未知数上切分，按候选顺序合并，结果与调度无关
"""

import itertools
import logging
import threading
from collections import deque
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass
from typing import Deque, Dict, FrozenSet, Iterator, List, Mapping, Optional, Tuple, Union

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.diophantine.equation import Equation
from proof_forge.core.diophantine.polynomial import Polynomial
from proof_forge.core.diophantine.system import Assignment, DiophSystem, Exp, Mask, PolyEq
from proof_forge.errors import BudgetExceeded

logger = logging.getLogger(__name__)

Target = Union[DiophSystem, Equation]

_CONFLICT = "conflict"


class _Abandoned(Exception):
    """更早的分支已得出结论，放弃当前分支"""


def integer_root(value: int, degree: int) -> Optional[int]:
    """value 的精确 degree 次方根；不存在时返回 None"""
    if value < 2 or degree == 1:
        return value
    low, high = 0, 1 << (value.bit_length() // degree + 1)
    while low < high:
        mid = (low + high) // 2
        if mid ** degree < value:
            low = mid + 1
        else:
            high = mid
    return low if low ** degree == value else None


def integer_log(value: int, base: int) -> Optional[int]:
    """base ≥ 2 时 value = base^w 的 w；不存在时返回 None"""
    exponent, power = 0, 1
    while power < value:
        power *= base
        exponent += 1
    return exponent if power == value else None


class _Plan:
    """与搜索状态无关的预处理：监听表、线性拆分、上界"""

    def __init__(self, system: DiophSystem, bound: int, bounds: Mapping[str, int]):
        self.order: Tuple[str, ...] = system.names
        self.conditions = system.conditions
        self.caps: Dict[str, int] = {name: bounds.get(name, bound) for name in self.order}
        self.watch: Dict[str, List[int]] = {name: [] for name in self.order}
        self.differences: Dict[int, Polynomial] = {}
        self.splits: Dict[int, Dict[str, Optional[Tuple[Polynomial, Polynomial]]]] = {}
        self.masks: Dict[str, List[str]] = {}
        self.names_of: List[FrozenSet[str]] = []
        for index, condition in enumerate(self.conditions):
            names = condition.unknowns()
            if isinstance(condition, PolyEq):
                difference = condition.difference
                names = difference.unknowns()
                self.differences[index] = difference
                self.splits[index] = {
                    name: difference.linear_split(name) for name in difference.unknowns()
                }
            elif isinstance(condition, Mask):
                self.masks.setdefault(condition.u, []).append(condition.v)
            self.names_of.append(names)
            for name in names:
                self.watch[name].append(index)


class _Walker:
    """一次深度优先搜索的状态；limit 是本次可用的赋值次数"""

    def __init__(self, plan: _Plan, budget: Budget, limit: Optional[int] = None,
                 stop: Optional[threading.Event] = None):
        self.plan = plan
        self.budget = budget
        self.limit = budget.max_steps if limit is None else limit
        self.stop = stop
        self.nodes = 0

    # ---------------------------------------------------------- propagation

    def _visit(self, index: int, w: Dict[str, int]):
        condition = self.plan.conditions[index]
        free = [name for name in self.plan.names_of[index] if name not in w]
        if isinstance(condition, PolyEq):
            if not free:
                return None if self.plan.differences[index].evaluate(w) == 0 else _CONFLICT
            if len(free) > 1:
                return None
            split = self.plan.splits[index][free[0]]
            if split is None:
                return None
            slope, rest = split[0].evaluate(w), split[1].evaluate(w)
            if slope == 0:
                return None if rest == 0 else _CONFLICT
            value, remainder = divmod(-rest, slope)
            return _CONFLICT if remainder else (free[0], value)
        if isinstance(condition, Mask):
            if free:
                return None
            return None if w[condition.u] & ~w[condition.v] == 0 else _CONFLICT
        return self._visit_exp(condition, free, w)

    def _visit_exp(self, condition: Exp, free: List[str], w: Dict[str, int]):
        u, v, e = condition.u, condition.v, condition.w
        # 名字重复（如 x = b^x）时未赋值的量留给分支
        if len(free) > 1 or (free and len({u, v, e}) < 3):
            return None
        if not free or free == [u]:
            base, exponent = w[v], w[e]
            if exponent == 0 or base <= 1:
                value = 1 if exponent == 0 else base
            else:
                # 超过上界的幂不必算出
                if exponent * (base.bit_length() - 1) >= self.plan.caps[u].bit_length():
                    return _CONFLICT
                value = base ** exponent
            if not free:
                return None if w[u] == value else _CONFLICT
            return (u, value)
        if free == [e]:
            value, base = w[u], w[v]
            if base >= 2:
                exponent = integer_log(value, base)
                return _CONFLICT if exponent is None else (e, exponent)
            if base == 1:
                return None if value == 1 else _CONFLICT
            return (e, 0) if value == 1 else (None if value == 0 else _CONFLICT)
        value, exponent = w[u], w[e]
        if exponent == 0:
            return None if value == 1 else _CONFLICT
        root = integer_root(value, exponent)
        return _CONFLICT if root is None else (v, root)

    def _assign(self, name: str, value: int, w: Dict[str, int], trail: List[str]) -> bool:
        if value < 0 or value > self.plan.caps[name]:
            return False
        self.nodes += 1
        if self.nodes > self.limit:
            raise _exhausted(self.budget)
        if self.stop is not None and self.stop.is_set():
            raise _Abandoned()
        w[name] = value
        trail.append(name)
        return True

    def propagate(self, pending: deque, w: Dict[str, int], trail: List[str]) -> bool:
        while pending:
            outcome = self._visit(pending.popleft(), w)
            if outcome is None:
                continue
            if outcome == _CONFLICT:
                return False
            name, value = outcome
            if name in w:
                if w[name] != value:
                    return False
                continue
            if not self._assign(name, value, w, trail):
                return False
            pending.extend(self.plan.watch[name])
        return True

    # ------------------------------------------------------------ branching

    def candidates(self, name: str, w: Mapping[str, int]) -> Iterator[int]:
        cap = self.plan.caps[name]
        known = [w[v] for v in self.plan.masks.get(name, ()) if v in w]
        if not known:
            yield from range(cap + 1)
            return
        mask = known[0]
        for other in known[1:]:
            mask &= other
        sub = 0
        while sub <= cap:
            yield sub
            sub = (sub - mask) & mask
            if sub == 0:
                return

    def first_free(self, w: Mapping[str, int]) -> Optional[str]:
        return next((name for name in self.plan.order if name not in w), None)

    def try_value(self, name: str, value: int, w: Dict[str, int], trail: List[str]) -> bool:
        if not self._assign(name, value, w, trail):
            return False
        return self.propagate(deque(self.plan.watch[name]), w, trail)

    def solve(self, w: Dict[str, int]) -> Optional[Assignment]:
        name = self.first_free(w)
        if name is None:
            return dict(w)
        for value in self.candidates(name, w):
            trail: List[str] = []
            if self.try_value(name, value, w, trail):
                found = self.solve(w)
                if found is not None:
                    return found
            for assigned in trail:
                del w[assigned]
        return None


def bounded_search(target: Target, bound: int,
                   bounds: Optional[Mapping[str, int]] = None,
                   fixed: Optional[Mapping[str, int]] = None,
                   budget: Budget = DEFAULT_BUDGET,
                   workers: int = 1) -> Optional[Assignment]:
    """
    字典序最小的解（按 参数 + 未知数 的声明顺序比较），所有值 ≤ 各自上界

    Args:
        target: 方程组或单一方程
        bound: 默认上界
        bounds: 逐未知数上界，覆盖 bound
        fixed: 钉住的取值（通常是参数）
        budget: budget.max_steps 限制赋值次数
        workers: >1 时在第一个自由未知数上并行切分

    Returns:
        解（覆盖全部名字），或 None

    Raises:
        BudgetExceeded: 赋值次数超过 budget.max_steps
    """
    system = target.as_system() if isinstance(target, Equation) else target
    plan = _Plan(system, bound, dict(bounds or {}))
    walker = _Walker(plan, budget)
    w: Dict[str, int] = {}
    trail: List[str] = []
    for name, value in (fixed or {}).items():
        if name not in plan.caps:
            raise KeyError(f"{name!r} is not a name of the searched system")
        if value < 0 or not walker._assign(name, value, w, trail):
            return None
    if not walker.propagate(deque(range(len(plan.conditions))), w, trail):
        return None

    if workers <= 1:
        found, nodes = walker.solve(w), walker.nodes
    else:
        found, nodes = _parallel(plan, budget, w, walker.nodes, workers)
    logger.info("bounded search over %d names: %s after %d assignments",
                len(plan.order), "found" if found is not None else "none", nodes)
    return found


def _exhausted(budget: Budget) -> BudgetExceeded:
    return BudgetExceeded("search nodes", budget.max_steps, budget.max_steps + 1)


@dataclass(frozen=True)
class _Branch:
    """一个分支的结论：解、赋值次数、是否单独就用完了剩余预算"""

    found: Optional[Assignment]
    nodes: int
    exhausted: bool = False


def _parallel(plan: _Plan, budget: Budget, start: Dict[str, int], spent: int,
              workers: int) -> Tuple[Optional[Assignment], int]:
    """
    在第一个自由未知数的候选值上并行

    候选按窗口提交；结论按候选顺序读取并累加赋值次数，
    因此与顺序搜索在同一处给出同一个解或同一次超限
    """
    scout = _Walker(plan, budget)
    name = scout.first_free(start)
    if name is None:
        return dict(start), spent
    remaining = budget.max_steps - spent
    stop = threading.Event()

    def branch(value: int) -> _Branch:
        walker = _Walker(plan, budget, limit=remaining, stop=stop)
        w = dict(start)
        try:
            if not walker.try_value(name, value, w, []):
                return _Branch(None, walker.nodes)
            return _Branch(walker.solve(w), walker.nodes)
        except BudgetExceeded:
            return _Branch(None, walker.nodes, exhausted=True)

    values = scout.candidates(name, start)
    window: Deque[Future] = deque()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        try:
            while True:
                for value in itertools.islice(values, 2 * workers - len(window)):
                    window.append(pool.submit(branch, value))
                if not window:
                    return None, spent
                outcome = window.popleft().result()
                spent += outcome.nodes
                if outcome.exhausted or spent > budget.max_steps:
                    raise _exhausted(budget)
                if outcome.found is not None:
                    return outcome.found, spent
        finally:
            stop.set()
            for future in window:
                future.cancel()

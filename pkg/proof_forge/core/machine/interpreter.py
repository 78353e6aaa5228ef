"""
MiniLang 参考解释器

直接在 Python 整数上执行语句，宏按其数学定义计算。
编译产物与它做差分测试：接受与否、输出变量都须一致。
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from proof_forge.core.codec.pairing import pair, unpair
from proof_forge.core.machine.minilang import (
    MACROS, Accept, Call, Clear, Decrement, IfZero, Increment, MiniProgram, Reject, SetConst,
    Statement, While, validate,
)
from proof_forge.core.machine.simulator import Outcome
from proof_forge.errors import MachineError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Interpretation:
    outcome: Outcome
    env: Dict[str, int]
    statements: int

    @property
    def accepted(self) -> bool:
        return self.outcome == Outcome.ACCEPT

    def outputs(self, program: MiniProgram) -> Tuple[int, ...]:
        return tuple(self.env[name] for name in program.outputs)


def apply_macro(name: str, values: Sequence[int]) -> Tuple[int, ...]:
    """宏的数学语义：返回目标参数的新值"""
    if name == "add":
        return (values[0] + values[1],)
    if name == "sub":
        return (max(0, values[0] - values[1]),)
    if name == "mul":
        return (values[0] * values[1],)
    if name == "divmod":
        x, y = values
        return (0, x) if y == 0 else divmod(x, y)
    if name == "pair":
        return (pair(values[0], values[1]),)
    if name == "unpair":
        return unpair(values[0])
    if name == "copy":
        return (values[0],)
    if name == "eq":
        return (int(values[0] == values[1]),)
    raise MachineError(f"unknown macro {name!r}")


class _Halt(Exception):
    def __init__(self, outcome: Outcome):
        self.outcome = outcome


class _Interpreter:
    def __init__(self, env: Dict[str, int], max_statements: Optional[int]):
        self.env = env
        self.max_statements = max_statements
        self.count = 0

    def _tick(self) -> None:
        self.count += 1
        if self.max_statements is not None and self.count > self.max_statements:
            raise _Halt(Outcome.OUT_OF_FUEL)

    def run(self, body: Sequence[Statement]) -> None:
        # 显式栈：(语句块, 下一条下标)；While 在块尾重新入栈
        stack: List[Tuple[Sequence[Statement], int]] = [(body, 0)]
        env = self.env
        while stack:
            block, index = stack.pop()
            if index >= len(block):
                continue
            stmt = block[index]
            stack.append((block, index + 1))
            self._tick()
            if isinstance(stmt, Increment):
                env[stmt.var] += 1
            elif isinstance(stmt, Decrement):
                if env[stmt.var] > 0:
                    env[stmt.var] -= 1
            elif isinstance(stmt, Clear):
                env[stmt.var] = 0
            elif isinstance(stmt, SetConst):
                env[stmt.var] = stmt.value
            elif isinstance(stmt, While):
                if env[stmt.var] > 0:
                    stack[-1] = (block, index)
                    stack.append((stmt.body, 0))
            elif isinstance(stmt, IfZero):
                stack.append((stmt.then if env[stmt.var] == 0 else stmt.orelse, 0))
            elif isinstance(stmt, Call):
                arity = MACROS[stmt.macro][1]
                targets, sources = stmt.args[:arity], stmt.args[arity:]
                results = apply_macro(stmt.macro, [env[name] for name in sources])
                for name, value in zip(targets, results):
                    env[name] = value
            elif isinstance(stmt, Accept):
                raise _Halt(Outcome.ACCEPT)
            elif isinstance(stmt, Reject):
                raise _Halt(Outcome.REJECT)


def interpret(program: MiniProgram, inputs: Sequence[int],
              max_statements: Optional[int] = None) -> Interpretation:
    """
    执行 MiniLang 程序

    Args:
        program: 程序
        inputs: 依次赋给 program.inputs 的初值
        max_statements: 执行语句数上限，超出时结果为 OUT_OF_FUEL

    Raises:
        MiniLangError: 程序声明不合法
        MachineError: 输入个数不符
    """
    validate(program)
    if len(inputs) != len(program.inputs):
        raise MachineError(f"program takes {len(program.inputs)} inputs, got {len(inputs)}")
    env = {name: 0 for name in program.declared}
    env.update(zip(program.inputs, inputs))
    runner = _Interpreter(env, max_statements)
    try:
        runner.run(program.body)
        outcome = Outcome.ACCEPT
    except _Halt as halt:
        outcome = halt.outcome
    logger.debug("interpreted %d statements: %s", runner.count, outcome.value)
    return Interpretation(outcome, env, runner.count)

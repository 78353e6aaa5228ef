"""
计数器机模拟器

[职责]
- 在燃料上限内确定性地执行，结果为 Accept / Reject / OutOfFuel
- 步数 = 已执行的 Inc / DecJz 条数；停机指令本身不计步
- trace=True 时记录每个格局 (指令下标, 寄存器快照)，共 steps + 1 个

[加速]
不记录轨迹时，沿各 DecJz 的 "为正" 出口能回到起点的循环（中间只有 Inc、
DecJz 与无条件跳转）按整轮批量执行：轮数取所有被减寄存器都够减的最大值，
步数按逐条执行的结果精确累加。
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from proof_forge.core.machine.ir import CounterMachine, DecJz, HaltAccept, HaltReject, Inc
from proof_forge.errors import MachineError

logger = logging.getLogger(__name__)

# 批量执行只识别不超过这么长的循环
LOOP_LENGTH_LIMIT = 16


class Outcome(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    OUT_OF_FUEL = "out_of_fuel"


Configuration = Tuple[int, Tuple[int, ...]]


@dataclass(frozen=True)
class Run:
    """一次运行的结果；trace 仅在 trace=True 时给出"""

    outcome: Outcome
    steps: int
    pc: int
    registers: Tuple[int, ...]
    trace: Optional[Tuple[Configuration, ...]] = None

    @property
    def accepted(self) -> bool:
        return self.outcome == Outcome.ACCEPT

    @property
    def halted(self) -> bool:
        return self.outcome != Outcome.OUT_OF_FUEL


@dataclass(frozen=True)
class _Loop:
    """
    一轮：从循环头沿 "寄存器为正" 的出口走回循环头

    terms 为 (寄存器, 每轮净变化, 本轮内各次 DecJz 前该寄存器须达到的下限)；
    下限为 0 表示本轮不减它
    """

    terms: Tuple[Tuple[int, int, int], ...]
    length: int

    def rounds(self, regs: Sequence[int], limit: int) -> int:
        """从当前寄存器值出发能完整执行的轮数，不超过 limit"""
        rounds = limit
        for reg, delta, need in self.terms:
            value = regs[reg]
            if value < need:
                return 0
            if delta < 0:
                rounds = min(rounds, (value - need) // -delta + 1)
        return rounds


@lru_cache(maxsize=8)
def _fast_loops(machine: CounterMachine) -> Dict[int, _Loop]:
    """找出所有可整体执行的循环，键为循环头 DecJz 的下标"""
    loops: Dict[int, _Loop] = {}
    program = machine.program
    zero = machine.zero_register
    for head, instr in enumerate(program):
        if not isinstance(instr, DecJz) or instr.reg == zero:
            continue
        change: Dict[int, int] = {}
        need: Dict[int, int] = {}
        length = 0
        pc = head
        seen = set()
        while pc not in seen and length < LOOP_LENGTH_LIMIT:
            seen.add(pc)
            body = program[pc]
            if isinstance(body, Inc):
                change[body.reg] = change.get(body.reg, 0) + 1
                pc = body.next
            elif isinstance(body, DecJz) and body.reg == zero:
                pc = body.if_zero
            elif isinstance(body, DecJz):
                before = change.get(body.reg, 0)
                need[body.reg] = max(need.get(body.reg, 0), 1 - before)
                change[body.reg] = before - 1
                pc = body.if_positive
            else:
                break
            length += 1
            if pc == head:
                terms = tuple(sorted(
                    (reg, delta, need.get(reg, 0)) for reg, delta in change.items()
                ))
                loops[head] = _Loop(terms, length)
                break
    return loops


def simulate(machine: CounterMachine, inputs: Sequence[int], fuel: int,
             trace: bool = False, accelerate: bool = True) -> Run:
    """
    执行计数器机

    Args:
        machine: 待执行的机器
        inputs: 输入寄存器的初值
        fuel: 最多执行的步数
        trace: 是否记录完整格局序列（此时不做循环加速）
        accelerate: 是否批量执行循环

    Raises:
        MachineError: 输入个数不符或燃料为负
    """
    if fuel < 0:
        raise MachineError("fuel must be a natural number")
    regs: List[int] = list(machine.initial_registers(inputs))
    program = machine.program
    loops = _fast_loops(machine) if accelerate and not trace else {}
    history: Optional[List[Configuration]] = [] if trace else None

    pc = 0
    steps = 0
    while True:
        instr = program[pc]
        if history is not None:
            history.append((pc, tuple(regs)))
        if isinstance(instr, HaltAccept):
            outcome = Outcome.ACCEPT
            break
        if isinstance(instr, HaltReject):
            outcome = Outcome.REJECT
            break
        if steps >= fuel:
            outcome = Outcome.OUT_OF_FUEL
            break

        loop = loops.get(pc)
        if loop is not None:
            rounds = loop.rounds(regs, (fuel - steps) // loop.length)
            if rounds > 0:
                for reg, delta, _ in loop.terms:
                    regs[reg] += rounds * delta
                steps += rounds * loop.length
                continue

        if isinstance(instr, Inc):
            regs[instr.reg] += 1
            pc = instr.next
        elif regs[instr.reg] > 0:
            regs[instr.reg] -= 1
            pc = instr.if_positive
        else:
            pc = instr.if_zero
        steps += 1

    logger.debug("machine stopped: %s after %d steps", outcome.value, steps)
    return Run(
        outcome=outcome,
        steps=steps,
        pc=pc,
        registers=tuple(regs),
        trace=tuple(history) if history is not None else None,
    )


def accepts(machine: CounterMachine, inputs: Sequence[int], fuel: int) -> bool:
    return simulate(machine, inputs, fuel).accepted

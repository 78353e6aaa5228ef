"""
计数器机的算术化

[职责]
- arithmetize：把 "机器在输入上接受" 写成指数丢番图方程组
- construct_witness：由一次带轨迹的接受运行构造方程组的精确解
- tableau_bounds：有界搜索用的逐未知数上界

[编码]
运行 0..t 步的格局排成 Q 进制数字串，Q = 2^(c+1)，每个数字只用低 c 位（< Qh = 2^c）：
- I = Σ Q^s（全 1 串），MI = (Qh-1)·I（数字上界掩码）
- L.i：第 i 条指令的指示串，第 s 位为 1 当且仅当第 s 步执行第 i 条
- R.r：寄存器 r 的数字串；G.r：寄存器 r 为正的指示串（仅被 DecJz 测试的寄存器）
- Y.i / W.i：DecJz 第 i 条的 "减一" / "为零" 分支串
数字不进位是整组条件成立的前提：所有数字 < Qh，且 Qh 大于指令条数与各输入
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from proof_forge.config import DEFAULT_BUDGET, Budget
from proof_forge.core.diophantine.polynomial import const, poly_sum, var
from proof_forge.core.diophantine.system import (
    Assignment, Condition, DiophSystem, Exp, Mask, equation,
)
from proof_forge.core.machine.ir import CounterMachine, DecJz, HaltAccept, HaltReject, Inc
from proof_forge.core.machine.simulator import Run
from proof_forge.errors import ParameterError, WitnessError

logger = logging.getLogger(__name__)

CONSTANTS = ("two", "Qh", "Q", "Qs", "P", "I", "MI", "s.N")


def default_parameters(machine: CounterMachine) -> Tuple[str, ...]:
    """两个输入记作 (k, a)，一个输入记作 (a,)，其余记作 in0, in1, …"""
    if machine.inputs == 2:
        return ("k", "a")
    if machine.inputs == 1:
        return ("a",)
    return tuple(f"in{j}" for j in range(machine.inputs))


def _resolve_parameters(machine: CounterMachine,
                        parameters: Optional[Sequence[str]]) -> Tuple[str, ...]:
    names = tuple(parameters) if parameters is not None else default_parameters(machine)
    if len(names) != machine.inputs:
        raise ParameterError(
            f"machine takes {machine.inputs} inputs but {len(names)} parameter names were given"
        )
    return names


def tested_registers(machine: CounterMachine) -> Tuple[int, ...]:
    return tuple(sorted({machine.program[i].reg for i in machine.dec_indices}))


@dataclass(frozen=True)
class _Layout:
    """方程组的未知数布局，arithmetize 与 construct_witness 共用"""

    machine: CounterMachine
    parameters: Tuple[str, ...]

    @property
    def lines(self) -> range:
        return range(len(self.machine))

    @property
    def tested(self) -> Tuple[int, ...]:
        return tested_registers(self.machine)

    def unknowns(self) -> Tuple[str, ...]:
        program = self.machine.program
        names: List[str] = ["t", "c"]
        names += CONSTANTS
        names += [f"s.{p}" for p in self.parameters]
        names += [f"L.{i}" for i in self.lines]
        names.append("V0")
        for r in self.tested:
            names += [f"G.{r}", f"NG.{r}"]
        for i in self.lines:
            if isinstance(program[i], DecJz):
                names.append(f"Y.{i}")
        for i in self.lines:
            if isinstance(program[i], Inc):
                names.append(f"U.{i}")
            elif isinstance(program[i], DecJz):
                names += [f"W.{i}", f"SY.{i}", f"SW.{i}"]
        names += [f"last.{r}" for r in range(self.machine.registers)]
        names += [f"R.{r}" for r in range(self.machine.registers)]
        for r in self.tested:
            names += [f"D.{r}", f"MG.{r}"]
        return tuple(names)


def arithmetize(machine: CounterMachine,
                parameters: Optional[Sequence[str]] = None) -> DiophSystem:
    """
    机器接受输入 ⇔ 方程组有自然数解

    Args:
        machine: 计数器机，输入寄存器 j 对应第 j 个参数
        parameters: 参数名；缺省见 default_parameters

    Raises:
        ParameterError: 参数名个数与机器输入个数不符
    """
    params = _resolve_parameters(machine, parameters)
    layout = _Layout(machine, params)
    program = machine.program
    v = var
    Q, Qh, I = v("Q"), v("Qh"), v("I")

    conditions: List[Condition] = [
        equation("two", 2),
        Exp("Qh", "two", "c"),
        equation(Q, 2 * Qh),
        Exp("Qs", "Q", "t"),
        equation("P", Q * v("Qs")),
        equation(I * Q + 1, v("P") + I),
        equation(v("MI") + I, Qh * I),
        equation(Qh, len(program) + 1 + v("s.N")),
    ]
    conditions += [equation(Qh, v(p) + 1 + v(f"s.{p}")) for p in params]

    # 指令指示串：0/1 数字，每步恰好一条，从第 0 条开始
    conditions += [Mask(f"L.{i}", "I") for i in layout.lines]
    conditions.append(equation(poly_sum(v(f"L.{i}") for i in layout.lines), I))
    conditions.append(equation("L.0", 1 + Q * v("V0")))

    accept = [i for i in layout.lines if isinstance(program[i], HaltAccept)]
    conditions.append(equation(poly_sum(v(f"L.{i}") for i in accept), "Qs"))
    conditions += [
        equation(f"L.{i}", 0) for i in layout.lines if isinstance(program[i], HaltReject)
    ]

    for r in layout.tested:
        g = v(f"G.{r}")
        conditions += [
            Mask(f"G.{r}", "I"),
            equation(v(f"NG.{r}") + g, I),
            equation(v(f"D.{r}") + g, v(f"R.{r}")),
            Mask(f"D.{r}", "MI"),
            equation(v(f"MG.{r}") + g, Qh * g),
            Mask(f"R.{r}", f"MG.{r}"),
        ]
    conditions += [
        Mask(f"R.{r}", "MI") for r in range(machine.registers) if r not in layout.tested
    ]

    for i, instr in enumerate(program):
        if isinstance(instr, Inc):
            conditions += [
                equation(f"U.{i}", Q * v(f"L.{i}")),
                Mask(f"U.{i}", f"L.{instr.next}"),
            ]
        elif isinstance(instr, DecJz):
            conditions += [
                Mask(f"Y.{i}", f"L.{i}"),
                Mask(f"Y.{i}", f"G.{instr.reg}"),
                equation(v(f"W.{i}") + v(f"Y.{i}"), f"L.{i}"),
                Mask(f"W.{i}", f"NG.{instr.reg}"),
                equation(f"SY.{i}", Q * v(f"Y.{i}")),
                Mask(f"SY.{i}", f"L.{instr.if_positive}"),
                equation(f"SW.{i}", Q * v(f"W.{i}")),
                Mask(f"SW.{i}", f"L.{instr.if_zero}"),
            ]

    for r in range(machine.registers):
        incs = [i for i, ins in enumerate(program) if isinstance(ins, Inc) and ins.reg == r]
        decs = [i for i, ins in enumerate(program) if isinstance(ins, DecJz) and ins.reg == r]
        start = v(params[r]) if r < len(params) else const(0)
        rr = v(f"R.{r}")
        left = rr + Q * poly_sum(v(f"Y.{i}") for i in decs) + v(f"last.{r}") * v("P")
        right = start + Q * rr + Q * poly_sum(v(f"L.{i}") for i in incs)
        conditions.append(equation(left, right))

    system = DiophSystem(params, layout.unknowns(), conditions)
    logger.info("arithmetized %d-line machine: %d unknowns, %s",
                len(program), len(system.unknowns), system.kinds())
    return system


def _stream(digits: Sequence[int], width: int) -> int:
    """Σ digits[s]·Q^s，Q = 2^width"""
    value = 0
    for digit in reversed(digits):
        value = (value << width) | digit
    return value


def construct_witness(machine: CounterMachine, run: Run,
                      parameters: Optional[Sequence[str]] = None,
                      budget: Budget = DEFAULT_BUDGET) -> Assignment:
    """
    由接受运行构造 arithmetize(machine) 的解（含参数取值）

    Raises:
        WitnessError: 运行未接受或没有轨迹
        BudgetExceeded: 数字串的比特长度超出预算
    """
    if not run.accepted:
        raise WitnessError(
            f"run ended with {run.outcome.value}; only accepting runs have witnesses"
        )
    if run.trace is None:
        raise WitnessError("witness construction needs a traced run (simulate(..., trace=True))")
    params = _resolve_parameters(machine, parameters)
    layout = _Layout(machine, params)
    program = machine.program
    trace = run.trace
    t = run.steps
    inputs = trace[0][1][:machine.inputs]

    largest = max(max(regs, default=0) for _, regs in trace)
    floor = max(len(program) + 1, largest + 1, *(x + 1 for x in inputs))
    c = (floor - 1).bit_length()
    width = c + 1
    budget.check_bit_estimate((t + 2) * width, "tableau bits")

    qh, q = 1 << c, 1 << width
    ones = [1] * (t + 1)
    w: Dict[str, int] = dict(zip(params, inputs))
    w.update(
        t=t, c=c, two=2, Qh=qh, Q=q, Qs=1 << (t * width), P=1 << ((t + 1) * width),
        I=_stream(ones, width),
    )
    w["MI"] = (qh - 1) * w["I"]
    w["s.N"] = qh - len(program) - 1
    for p, x in zip(params, inputs):
        w[f"s.{p}"] = qh - x - 1

    pcs = [pc for pc, _ in trace]
    for i in layout.lines:
        w[f"L.{i}"] = _stream([int(pc == i) for pc in pcs], width)
    w["V0"] = (w["L.0"] - 1) >> width

    for r in range(machine.registers):
        column = [regs[r] for _, regs in trace]
        w[f"R.{r}"] = _stream(column, width)
        w[f"last.{r}"] = column[-1]
        if r in layout.tested:
            w[f"G.{r}"] = _stream([int(x > 0) for x in column], width)
            w[f"NG.{r}"] = w["I"] - w[f"G.{r}"]
            w[f"D.{r}"] = w[f"R.{r}"] - w[f"G.{r}"]
            w[f"MG.{r}"] = (qh - 1) * w[f"G.{r}"]

    for i, instr in enumerate(program):
        if isinstance(instr, Inc):
            w[f"U.{i}"] = w[f"L.{i}"] << width
        elif isinstance(instr, DecJz):
            taken = [int(pc == i and regs[instr.reg] > 0) for pc, regs in trace]
            w[f"Y.{i}"] = _stream(taken, width)
            w[f"W.{i}"] = w[f"L.{i}"] - w[f"Y.{i}"]
            w[f"SY.{i}"] = w[f"Y.{i}"] << width
            w[f"SW.{i}"] = w[f"W.{i}"] << width
    logger.debug("witness for %d-step run: width %d, %d bits per stream",
                 t, width, (t + 1) * width)
    return w


def tableau_bounds(machine: CounterMachine, steps: int, width: int) -> Dict[str, int]:
    """
    有界搜索用的上界：步数 ≤ steps、位宽 c ≤ width、末值 last.r < 2^width

    其余未知数要么被条件唯一确定，要么由 Mask 限定候选
    """
    bounds = {"t": steps, "c": width}
    bounds.update({f"last.{r}": (1 << width) - 1 for r in range(machine.registers)})
    return bounds


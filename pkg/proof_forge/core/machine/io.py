"""
计数器机文件读写

    REGS <R>
    INPUTS <n>              （可选，默认 0）
    ZERO r<j>               （可选，恒零寄存器）
    NAME <name> r<j>        （可选，可多行）
    <idx>: INC r<j> -> <t>
    <idx>: DECJZ r<j> -> <t+> / <t0>
    <idx>: ACCEPT
    <idx>: REJECT
指令下标从 0 开始且须连续；空行与 # 注释被忽略。
"""

import re
from pathlib import Path
from typing import Dict, List, Optional, Union

from proof_forge.core.machine.ir import (
    CounterMachine, DecJz, HaltAccept, HaltReject, Inc, Instruction,
)
from proof_forge.core.machine.minilang import MiniProgram, format_minilang, parse_minilang
from proof_forge.errors import MachineError

_HEADER = re.compile(r"^(REGS|INPUTS)\s+(\d+)$")
_ZERO = re.compile(r"^ZERO\s+r(\d+)$")
_NAME = re.compile(r"^NAME\s+(\S+)\s+r(\d+)$")
_INSTR = re.compile(
    r"^(\d+):\s*(?:"
    r"INC\s+r(\d+)\s*->\s*(\d+)"
    r"|DECJZ\s+r(\d+)\s*->\s*(\d+)\s*/\s*(\d+)"
    r"|(ACCEPT)|(REJECT))$"
)


def read_machine(text: str) -> CounterMachine:
    """
    Raises:
        MachineError: 缺少 REGS、下标不连续或指令格式错误
    """
    registers: Optional[int] = None
    inputs = 0
    zero: Optional[int] = None
    names: Dict[str, int] = {}
    program: List[Instruction] = []
    for row, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _HEADER.match(line)
        if header:
            if header.group(1) == "REGS":
                registers = int(header.group(2))
            else:
                inputs = int(header.group(2))
            continue
        match = _ZERO.match(line)
        if match:
            zero = int(match.group(1))
            continue
        match = _NAME.match(line)
        if match:
            names[match.group(1)] = int(match.group(2))
            continue
        match = _INSTR.match(line)
        if match is None:
            raise MachineError(f"row {row}: cannot read {line!r}")
        index = int(match.group(1))
        if index != len(program):
            raise MachineError(f"row {row}: instruction {index}, expected {len(program)}")
        if match.group(2) is not None:
            program.append(Inc(int(match.group(2)), int(match.group(3))))
        elif match.group(4) is not None:
            program.append(DecJz(int(match.group(4)), int(match.group(5)), int(match.group(6))))
        elif match.group(7):
            program.append(HaltAccept())
        else:
            program.append(HaltReject())
    if registers is None:
        raise MachineError("machine file has no REGS header")
    return CounterMachine(registers, tuple(program), inputs=inputs, names=names, zero_register=zero)


def write_machine(machine: CounterMachine) -> str:
    rows = [f"REGS {machine.registers}"]
    if machine.inputs:
        rows.append(f"INPUTS {machine.inputs}")
    if machine.zero_register is not None:
        rows.append(f"ZERO r{machine.zero_register}")
    for name, reg in sorted(machine.names.items(), key=lambda item: item[1]):
        rows.append(f"NAME {name} r{reg}")
    for index, instr in enumerate(machine.program):
        if isinstance(instr, Inc):
            rows.append(f"{index}: INC r{instr.reg} -> {instr.next}")
        elif isinstance(instr, DecJz):
            rows.append(f"{index}: DECJZ r{instr.reg} -> {instr.if_positive} / {instr.if_zero}")
        elif isinstance(instr, HaltAccept):
            rows.append(f"{index}: ACCEPT")
        else:
            rows.append(f"{index}: REJECT")
    return "\n".join(rows) + "\n"


def load_machine(path: Union[str, Path]) -> CounterMachine:
    return read_machine(Path(path).read_text(encoding="utf-8"))


def save_machine(machine: CounterMachine, path: Union[str, Path]) -> None:
    Path(path).write_text(write_machine(machine), encoding="utf-8")


def load_minilang(path: Union[str, Path]) -> MiniProgram:
    return parse_minilang(Path(path).read_text(encoding="utf-8"))


def save_minilang(program: MiniProgram, path: Union[str, Path]) -> None:
    Path(path).write_text(format_minilang(program), encoding="utf-8")

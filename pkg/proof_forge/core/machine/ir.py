"""
计数器机中间表示

[职责]
- 四种指令：Inc(r, next) / DecJz(r, if_positive, if_zero) / HaltAccept / HaltReject
- CounterMachine 在构造时校验寄存器与跳转目标
- 可选 zero_register：编译器保留的恒零寄存器，DecJz(zero, L, L) 即无条件跳转

指令下标从 0 开始，程序从第 0 条开始执行。
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple, Union

from proof_forge.errors import MachineError


@dataclass(frozen=True)
class Inc:
    reg: int
    next: int


@dataclass(frozen=True)
class DecJz:
    """寄存器为正时减一并跳到 if_positive，为零时跳到 if_zero"""

    reg: int
    if_positive: int
    if_zero: int


@dataclass(frozen=True)
class HaltAccept:
    pass


@dataclass(frozen=True)
class HaltReject:
    pass


Instruction = Union[Inc, DecJz, HaltAccept, HaltReject]
HALTS = (HaltAccept, HaltReject)


@dataclass(frozen=True)
class CounterMachine:
    """
    计数器机

    Attributes:
        registers: 寄存器个数 R，寄存器编号 0..R-1
        program: 指令序列
        inputs: 输入寄存器个数，输入依次放入 0..inputs-1
        names: 具名寄存器（名字 -> 编号），编译产物用它标出变量
        zero_register: 恒为零的寄存器编号（若有）
    """

    registers: int
    program: Tuple[Instruction, ...]
    inputs: int = 0
    names: Dict[str, int] = field(default_factory=dict, compare=False, hash=False)
    zero_register: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "program", tuple(self.program))
        if self.registers < 1:
            raise MachineError("a machine needs at least one register")
        if not self.program:
            raise MachineError("empty program")
        if not 0 <= self.inputs <= self.registers:
            raise MachineError(f"{self.inputs} inputs do not fit {self.registers} registers")
        size = len(self.program)
        for index, instr in enumerate(self.program):
            if isinstance(instr, Inc):
                regs, targets = [instr.reg], [instr.next]
            elif isinstance(instr, DecJz):
                regs, targets = [instr.reg], [instr.if_positive, instr.if_zero]
            elif isinstance(instr, HALTS):
                continue
            else:
                raise MachineError(f"instruction {index}: unknown instruction {instr!r}")
            for reg in regs:
                if not 0 <= reg < self.registers:
                    raise MachineError(f"instruction {index}: register r{reg} out of range")
            for target in targets:
                if not 0 <= target < size:
                    raise MachineError(f"instruction {index}: jump target {target} out of range")
        if self.zero_register is not None:
            if not self.inputs <= self.zero_register < self.registers:
                raise MachineError(f"zero register r{self.zero_register} is not a free register")
            for index, instr in enumerate(self.program):
                if isinstance(instr, Inc) and instr.reg == self.zero_register:
                    raise MachineError(f"instruction {index} increments the zero register")
        for name, reg in self.names.items():
            if not 0 <= reg < self.registers:
                raise MachineError(f"register name {name!r} maps outside the machine")

    def __len__(self) -> int:
        return len(self.program)

    @property
    def dec_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, instr in enumerate(self.program) if isinstance(instr, DecJz))

    def register(self, name: str) -> int:
        if name not in self.names:
            raise MachineError(f"no register named {name!r}")
        return self.names[name]

    def initial_registers(self, inputs: Sequence[int]) -> Tuple[int, ...]:
        if len(inputs) != self.inputs:
            raise MachineError(f"machine takes {self.inputs} inputs, got {len(inputs)}")
        if any(value < 0 for value in inputs):
            raise MachineError("register inputs must be naturals")
        return tuple(inputs) + (0,) * (self.registers - len(inputs))

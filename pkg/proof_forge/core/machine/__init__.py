"""
计数器机层：中间表示、模拟器、MiniLang 及其编译器、检查器程序
"""

from proof_forge.core.machine.builder import MiniBuilder
from proof_forge.core.machine.compiler import compile_minilang, expand
from proof_forge.core.machine.interpreter import Interpretation, apply_macro, interpret
from proof_forge.core.machine.io import (
    load_machine, load_minilang, read_machine, save_machine, save_minilang, write_machine,
)
from proof_forge.core.machine.ir import (
    CounterMachine, DecJz, HaltAccept, HaltReject, Inc, Instruction,
)
from proof_forge.core.machine.minilang import (
    Accept, Call, Clear, Decrement, IfZero, Increment, MiniProgram, Reject, SetConst, Statement,
    While, format_minilang, parse_minilang,
)
from proof_forge.core.machine.programs import (
    checker_program, diag_program, universal_checker_machine,
)
from proof_forge.core.machine.simulator import Outcome, Run, accepts, simulate

__all__ = [
    "CounterMachine", "Inc", "DecJz", "HaltAccept", "HaltReject", "Instruction",
    "Outcome", "Run", "simulate", "accepts",
    "MiniProgram", "Statement", "Increment", "Decrement", "Clear", "SetConst", "While",
    "IfZero", "Call", "Accept", "Reject", "parse_minilang", "format_minilang",
    "Interpretation", "interpret", "apply_macro",
    "compile_minilang", "expand", "MiniBuilder",
    "checker_program", "diag_program", "universal_checker_machine",
    "read_machine", "write_machine", "load_machine", "save_machine",
    "load_minilang", "save_minilang",
]

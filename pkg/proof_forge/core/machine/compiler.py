"""
MiniLang -> 计数器机

[职责]
- 宏展开为核心语句（inc / dec / clear / set / while / if / accept / reject），
  所有宏共用一组临时寄存器，每次展开先清零再使用
- 核心语句按模板翻译为 Inc / DecJz，末尾补 HaltAccept
- 寄存器布局：输入，声明变量，临时寄存器，恒零寄存器

[模板]
    dec v            DecJz(v, L+1, L+1)
    clear v          L: DecJz(v, L, L+1)
    while v > 0 B    L: DecJz(v, L+1, X); Inc(v); B; jump L; X:
    while v > 0 { dec v; B }   L: DecJz(v, L+1, X); B; jump L; X:
    if v = 0 T else E          DecJz(v, L+1, T0); Inc(v, E0); T; jump X; E; X:
    if v = 0 T else { dec v; E }   DecJz(v, E0, L+1); T; jump X; E; X:
jump L 即 DecJz(zero, L, L)。输出前把每个指向跳转的目标改为跳转链的终点。
"""

import logging
from typing import Dict, List, Sequence, Tuple

from proof_forge.core.machine.ir import CounterMachine, DecJz, HaltAccept, HaltReject, Inc
from proof_forge.core.machine.minilang import (
    Accept, Call, Clear, Decrement, IfZero, Increment, MiniProgram, Reject, SetConst, Statement,
    While, validate, walk,
)
from proof_forge.errors import MiniLangError

logger = logging.getLogger(__name__)

ZERO_NAME = "%zero"


def _temp(index: int) -> str:
    return f"%t{index}"


TEMPS = 6
T0, T1, T2, T3, T4, T5 = (_temp(i) for i in range(TEMPS))


# ------------------------------------------------------------ macros

def _move(dst: str, src: str) -> List[Statement]:
    """dst := src，src 清零"""
    return [Clear(dst), While(src, (Decrement(src), Increment(dst)))]


def _copy(dst: str, src: str, tmp: str = T0) -> List[Statement]:
    """dst := src，src 保持不变"""
    return [
        Clear(dst), Clear(tmp),
        While(src, (Decrement(src), Increment(dst), Increment(tmp))),
        While(tmp, (Decrement(tmp), Increment(src))),
    ]


def _add_into(acc: str, src: str, tmp: str = T0) -> List[Statement]:
    """acc += src，src 保持不变"""
    return [
        Clear(tmp),
        While(src, (Decrement(src), Increment(acc), Increment(tmp))),
        While(tmp, (Decrement(tmp), Increment(src))),
    ]


def _triangle_into(acc: str, count: str, spare: str) -> List[Statement]:
    """acc += count (count + 1) / 2；count 与 spare 交替递减，结束时均为 0"""
    return [While(count, (
        Decrement(count), Increment(acc),
        While(count, (Decrement(count), Increment(spare), Increment(acc))),
        IfZero(spare, (), (
            Decrement(spare), Increment(acc),
            While(spare, (Decrement(spare), Increment(count), Increment(acc))),
        )),
    ))]


def _cantor_walk(x: str, y: str, z: str, keep: bool) -> List[Statement]:
    """
    沿对角线逐个消耗 z，T2 / T3 轮流作为当前点的两个坐标，T4 收存 x

    keep 为真时 T5 记下消耗的量，最后还给 z
    """
    def step(dst: str) -> Tuple[Statement, ...]:
        return (Decrement(z),) + ((Increment(T5),) if keep else ()) + (Increment(dst),)

    def half(src: str, dst: str) -> Statement:
        stash = (Increment(src), While(src, (Decrement(src), Increment(T4))))
        return While(src, (Decrement(src), IfZero(z, stash, step(dst))))

    walk = While(z, step(T3) + (half(T3, T2), IfZero(z, (), step(T2) + (half(T2, T3),))))
    out = [Clear(T2), Clear(T3), Clear(T4)] + ([Clear(T5)] if keep else []) + [walk]
    out += _move(x, T4) + _move(y, T2) + [While(T3, (Decrement(T3), Increment(y)))]
    if keep:
        out.append(While(T5, (Decrement(T5), Increment(z))))
    return out


def _equal(f: str, x: str, y: str) -> List[Statement]:
    """x、y 同步递减到一方为 0（T2 计数），再加回"""
    if x == y:
        return [SetConst(f, 1)]
    both = IfZero(y, (Increment(x),), (Decrement(y), Increment(T2), Increment(T1)))
    loop = While(T1, (
        Decrement(T1),
        IfZero(x, (IfZero(y, (Increment(T3),)),), (Decrement(x), both)),
    ))
    restore = While(T2, (Decrement(T2), Increment(x), Increment(y)))
    return [Clear(T3), Clear(T2), SetConst(T1, 1), loop, restore] + _move(f, T3)


def expand_macro(call: Call) -> List[Statement]:
    """把一次宏调用展开为核心语句"""
    name, args = call.macro, call.args
    if name == "copy":
        z, x = args
        return [] if z == x else _copy(z, x)
    if name == "add":
        z, x, y = args
        return _copy(T1, x) + _add_into(T1, y) + _move(z, T1)
    if name == "sub":
        z, x, y = args
        return (_copy(T1, x) + _copy(T2, y)
                + [While(T2, (Decrement(T2), Decrement(T1)))] + _move(z, T1))
    if name == "mul":
        z, x, y = args
        loop = While(T2, tuple([Decrement(T2)] + _add_into(T1, x)))
        return [Clear(T1)] + _copy(T2, y) + [loop] + _move(z, T1)
    if name == "divmod":
        q, r, x, y = args
        # T1 剩余被除数，T2 除数，T3 余数，T4 商，T5 距下一次进位的步数
        carry = IfZero(T5, tuple([Clear(T3), Increment(T4)] + _copy(T5, T2)))
        count = While(T1, (Decrement(T1), Increment(T3), Decrement(T5), carry))
        split = IfZero(T2, tuple(_move(T3, T1)), tuple(_copy(T5, T2) + [count]))
        return (_copy(T1, x) + _copy(T2, y) + [Clear(T3), Clear(T4), split]
                + _move(q, T4) + _move(r, T3))
    if name == "pair":
        z, x, y = args
        # T3 = y，T1 = x + y；全部读完后才写 z
        return (_copy(T3, y) + _copy(T1, x) + _add_into(T1, y) + [Clear(T2), Clear(z)]
                + _triangle_into(z, T1, T2) + [While(T3, (Decrement(T3), Increment(z)))])
    if name == "unpair":
        x, y, z = args
        return _cantor_walk(x, y, z, keep=z not in (x, y))
    if name == "eq":
        return _equal(*args)
    raise MiniLangError(f"unknown macro {name!r}")


def expand(body: Sequence[Statement]) -> List[Statement]:
    """递归展开语句块中的全部宏"""
    out: List[Statement] = []
    for stmt in body:
        if isinstance(stmt, Call):
            out.extend(expand_macro(stmt))
        elif isinstance(stmt, While):
            out.append(While(stmt.var, tuple(expand(stmt.body))))
        elif isinstance(stmt, IfZero):
            out.append(IfZero(stmt.var, tuple(expand(stmt.then)), tuple(expand(stmt.orelse))))
        else:
            out.append(stmt)
    return out


# --------------------------------------------------------- emission

class _Emitter:
    def __init__(self, registers: Dict[str, int], zero: int):
        self.registers = registers
        self.zero = zero
        self.code: List[list] = []

    @property
    def here(self) -> int:
        return len(self.code)

    def emit(self, *fields) -> int:
        self.code.append(list(fields))
        return len(self.code) - 1

    def jump(self, target: int) -> int:
        return self.emit("dec", self.zero, target, target)

    def block(self, body: Sequence[Statement]) -> None:
        for stmt in body:
            self.statement(stmt)

    def statement(self, stmt: Statement) -> None:
        if isinstance(stmt, Increment):
            self.emit("inc", self.registers[stmt.var], self.here + 1)
        elif isinstance(stmt, Decrement):
            self.emit("dec", self.registers[stmt.var], self.here + 1, self.here + 1)
        elif isinstance(stmt, Clear):
            self.emit("dec", self.registers[stmt.var], self.here, self.here + 1)
        elif isinstance(stmt, SetConst):
            self.statement(Clear(stmt.var))
            for _ in range(stmt.value):
                self.statement(Increment(stmt.var))
        elif isinstance(stmt, While):
            reg = self.registers[stmt.var]
            head = self.emit("dec", reg, self.here + 1, None)
            body = stmt.body
            if body and body[0] == Decrement(stmt.var):
                body = body[1:]
            else:
                self.emit("inc", reg, self.here + 1)
            self.block(body)
            self.jump(head)
            self.code[head][3] = self.here
        elif isinstance(stmt, IfZero):
            reg = self.registers[stmt.var]
            if stmt.orelse and stmt.orelse[0] == Decrement(stmt.var):
                test = self.emit("dec", reg, None, self.here + 1)
                self.block(stmt.then)
                skip = self.jump(None)
                self.code[test][2] = self.here
                self.block(stmt.orelse[1:])
                self.code[skip][2] = self.code[skip][3] = self.here
                return
            self.emit("dec", reg, self.here + 1, self.here + 2)
            restore = self.emit("inc", reg, None)
            self.block(stmt.then)
            if stmt.orelse:
                skip = self.jump(None)
                self.code[restore][2] = self.here
                self.block(stmt.orelse)
                self.code[skip][2] = self.code[skip][3] = self.here
            else:
                self.code[restore][2] = self.here
        elif isinstance(stmt, Accept):
            self.emit("accept")
        elif isinstance(stmt, Reject):
            self.emit("reject")
        else:
            raise MiniLangError(f"cannot compile {stmt!r}; expand macros first")

    def _through(self, target: int) -> int:
        """跳过以 target 开头的无条件跳转链"""
        seen = set()
        while target not in seen and target < len(self.code):
            fields = self.code[target]
            if fields[0] != "dec" or fields[1] != self.zero or fields[2] != fields[3]:
                break
            seen.add(target)
            target = fields[2]
        return target

    def instructions(self) -> list:
        out = []
        for fields in self.code:
            kind = fields[0]
            if kind == "inc":
                out.append(Inc(fields[1], self._through(fields[2])))
            elif kind == "dec":
                out.append(DecJz(fields[1], self._through(fields[2]), self._through(fields[3])))
            elif kind == "accept":
                out.append(HaltAccept())
            else:
                out.append(HaltReject())
        return out


def compile_minilang(program: MiniProgram) -> CounterMachine:
    """
    编译 MiniLang 程序

    输入变量依次放在寄存器 0..n-1；machine.names 标出每个声明变量的寄存器。

    Raises:
        MiniLangError: 未声明变量、未知宏等
    """
    validate(program)
    body = expand(program.body)
    registers: Dict[str, int] = {name: i for i, name in enumerate(program.declared)}
    if any(isinstance(stmt, Call) for stmt in walk(program.body)):
        for i in range(TEMPS):
            registers[_temp(i)] = len(registers)
    zero = len(registers)
    registers[ZERO_NAME] = zero

    emitter = _Emitter(registers, zero)
    emitter.block(body)
    emitter.emit("accept")
    machine = CounterMachine(
        registers=len(registers),
        program=tuple(emitter.instructions()),
        inputs=len(program.inputs),
        names={name: reg for name, reg in registers.items() if not name.startswith("%")},
        zero_register=zero,
    )
    logger.info("compiled %d statements into %d instructions over %d registers",
                program.statement_count(), len(machine), machine.registers)
    return machine


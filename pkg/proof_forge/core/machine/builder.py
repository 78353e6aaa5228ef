"""
MiniLang 程序构造器

[职责]
- 以 Python 代码生成 MiniLang 语句块（with 语句表示嵌套块）
- 临时变量池：scratch() 借出、退出时归还，同一时刻不会重名
- 常用片段：相等 / 比较断言（失败即 reject）、多路分派、配对栈、序列编码

配对栈：空栈为 0，push(s, v) 令 s := pair(v, s) + 1，与序列编码一致。
"""

from contextlib import contextmanager
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from proof_forge.core.machine.minilang import (
    Accept, Call, Clear, Decrement, IfZero, Increment, MiniProgram, Reject, SetConst, Statement,
    While, validate,
)
from proof_forge.errors import MiniLangError


class _Branch:
    def __init__(self, builder: "MiniBuilder"):
        self._builder = builder
        self.then: List[Statement] = []
        self.orelse: List[Statement] = []

    @contextmanager
    def otherwise(self) -> Iterator[None]:
        self._builder._blocks.append(self.orelse)
        try:
            yield
        finally:
            self._builder._blocks.pop()


class MiniBuilder:
    """
    [职责] 生成 MiniLang 程序
    [场景] 检查器程序、对角程序等大段机器代码
    """

    def __init__(self, inputs: Sequence[str], outputs: Sequence[str] = ()):
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)
        self.variables: List[str] = []
        self._blocks: List[List[Statement]] = [[]]
        self._idle: List[str] = []
        self._scratch_made = 0

    # ------------------------------------------------------ variables

    def declare(self, *names: str) -> None:
        for name in names:
            if name not in self.inputs and name not in self.variables:
                self.variables.append(name)

    def _take(self) -> str:
        if self._idle:
            return self._idle.pop()
        name = f"s{self._scratch_made}"
        self._scratch_made += 1
        self.declare(name)
        return name

    @contextmanager
    def scratch(self, count: int) -> Iterator[List[str]]:
        """借出 count 个临时变量；内容不保证为 0"""
        names = [self._take() for _ in range(count)]
        try:
            yield names
        finally:
            self._idle.extend(reversed(names))

    @contextmanager
    def temp(self) -> Iterator[str]:
        with self.scratch(1) as names:
            yield names[0]

    # ----------------------------------------------------- statements

    def emit(self, stmt: Statement) -> None:
        self._blocks[-1].append(stmt)

    def inc(self, var: str) -> None:
        self.emit(Increment(var))

    def dec(self, var: str) -> None:
        self.emit(Decrement(var))

    def clear(self, var: str) -> None:
        self.emit(Clear(var))

    def set(self, var: str, value: int) -> None:
        self.emit(SetConst(var, int(value)))

    def accept(self) -> None:
        self.emit(Accept())

    def reject(self) -> None:
        self.emit(Reject())

    def copy(self, dst: str, src: str) -> None:
        if dst != src:
            self.emit(Call("copy", (dst, src)))

    def add(self, dst: str, x: str, y: str) -> None:
        self.emit(Call("add", (dst, x, y)))

    def sub(self, dst: str, x: str, y: str) -> None:
        self.emit(Call("sub", (dst, x, y)))

    def mul(self, dst: str, x: str, y: str) -> None:
        self.emit(Call("mul", (dst, x, y)))

    def divmod(self, q: str, r: str, x: str, y: str) -> None:
        self.emit(Call("divmod", (q, r, x, y)))

    def pair(self, dst: str, x: str, y: str) -> None:
        self.emit(Call("pair", (dst, x, y)))

    def unpair(self, x: str, y: str, src: str) -> None:
        self.emit(Call("unpair", (x, y, src)))

    # -------------------------------------------------------- control

    @contextmanager
    def _block(self) -> Iterator[List[Statement]]:
        body: List[Statement] = []
        self._blocks.append(body)
        try:
            yield body
        finally:
            self._blocks.pop()

    @contextmanager
    def while_(self, var: str) -> Iterator[None]:
        with self._block() as body:
            yield
        self.emit(While(var, tuple(body)))

    @contextmanager
    def when_zero(self, var: str) -> Iterator[None]:
        with self._block() as body:
            yield
        self.emit(IfZero(var, tuple(body)))

    @contextmanager
    def when_positive(self, var: str) -> Iterator[None]:
        with self._block() as body:
            yield
        self.emit(IfZero(var, (), tuple(body)))

    @contextmanager
    def if_zero(self, var: str) -> Iterator[_Branch]:
        """then 分支写在 with 体内，else 分支写在 branch.otherwise() 内"""
        branch = _Branch(self)
        self._blocks.append(branch.then)
        try:
            yield branch
        finally:
            self._blocks.pop()
        self.emit(IfZero(var, tuple(branch.then), tuple(branch.orelse)))

    def switch(self, var: str, cases: Dict[int, Callable[[], None]],
               default: Optional[Callable[[], None]] = None) -> None:
        """按 var 的取值分派；未列出的取值执行 default（缺省为 reject）"""
        fallback = default or self.reject
        top = max(cases)
        with self.temp() as scan:
            self.copy(scan, var)

            def chain(value: int) -> None:
                with self.if_zero(scan) as branch:
                    cases.get(value, fallback)()
                    with branch.otherwise():
                        if value == top:
                            fallback()
                        else:
                            self.dec(scan)
                            chain(value + 1)

            chain(0)

    # --------------------------------------------------------- checks

    def eq_flag(self, flag: str, x: str, y: str) -> None:
        """flag := 1 当且仅当 x = y"""
        self.emit(Call("eq", (flag, x, y)))

    def require_eq(self, x: str, y: str) -> None:
        with self.temp() as same:
            self.eq_flag(same, x, y)
            self.require_positive(same)

    def require_ne(self, x: str, y: str) -> None:
        with self.temp() as same:
            self.eq_flag(same, x, y)
            self.require_zero(same)

    def require_const(self, x: str, value: int) -> None:
        with self.temp() as const:
            self.set(const, value)
            self.require_eq(x, const)

    def require_zero(self, var: str) -> None:
        with self.when_positive(var):
            self.reject()

    def require_positive(self, var: str) -> None:
        with self.when_zero(var):
            self.reject()

    def require_less(self, x: str, y: str) -> None:
        """x < y"""
        with self.temp() as gap:
            self.sub(gap, y, x)
            self.require_positive(gap)

    # --------------------------------------------------- codes, stacks

    def push(self, stack: str, value: str) -> None:
        self.pair(stack, value, stack)
        self.inc(stack)

    def pop(self, value: str, stack: str) -> None:
        """栈须非空"""
        self.dec(stack)
        self.unpair(value, stack, stack)

    def pack(self, dst: str, *values: str) -> None:
        """dst := pair(v1, pair(v2, ... vn))"""
        with self.temp() as acc:
            self.copy(acc, values[-1])
            for value in reversed(values[:-1]):
                self.pair(acc, value, acc)
            self.copy(dst, acc)

    def unpack(self, src: str, *names: str) -> None:
        with self.temp() as rest:
            self.copy(rest, src)
            for name in names[:-1]:
                self.unpair(name, rest, rest)
            self.copy(names[-1], rest)

    def seq(self, dst: str, items: Sequence[str]) -> None:
        """dst := seq_code(items)"""
        with self.temp() as acc:
            self.clear(acc)
            for item in reversed(items):
                self.pair(acc, item, acc)
                self.inc(acc)
            self.copy(dst, acc)

    def node(self, dst: str, tag: int, children: Sequence[str]) -> None:
        """dst := pair(tag, seq_code(children))"""
        with self.scratch(2) as (label, rest):
            self.seq(rest, children)
            self.set(label, tag)
            self.pair(dst, label, rest)

    def open_exact(self, rest: str, children: Sequence[str]) -> None:
        """把序列码 rest 拆成恰好 len(children) 项，否则 reject；rest 被消耗"""
        for child in children:
            self.require_positive(rest)
            self.dec(rest)
            self.unpair(child, rest, rest)
        self.require_zero(rest)

    def open_node(self, code: str, tag: str, children: Sequence[str]) -> None:
        """已知合法的节点码：tag 与各子码"""
        with self.temp() as rest:
            self.unpair(tag, rest, code)
            for child in children:
                self.dec(rest)
                self.unpair(child, rest, rest)

    def expect(self, code: str, tag: int, children: Sequence[str]) -> None:
        """code 须是标签为 tag 的节点，读出子码（code 须为合法编码）"""
        with self.temp() as label:
            self.open_node(code, label, children)
            self.require_const(label, tag)

    # ----------------------------------------------------------- build

    def build(self) -> MiniProgram:
        if len(self._blocks) != 1:
            raise MiniLangError("unclosed block")
        self.declare(*self.outputs)
        program = MiniProgram(self.inputs, self.outputs, tuple(self.variables),
                              tuple(self._blocks[0]))
        validate(program)
        return program

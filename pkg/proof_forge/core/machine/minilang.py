"""
MiniLang - 编译到计数器机的结构化小语言

[语句]
    inc x;  dec x;（饱和减一）  clear x;  set x 5;
    while x > 0 { ... }
    if x = 0 { ... } else { ... }
    accept;  reject;（立即停机）
    add(z, x, y);  sub(z, x, y);（截断减法）  mul(z, x, y);
    divmod(q, r, x, y);（除数为 0 时 q = 0, r = x）
    pair(z, x, y);  unpair(x, y, z);  copy(z, x);  eq(z, x, y);（相等为 1，否则为 0）

[程序头]
    input k, a;   output ok;   var t, u;
变量都须在程序头声明；执行到末尾视为 accept。宏的第一个（unpair 为前两个）
参数是目标，其余是源，源与目标可以重名。
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Set, Tuple, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, VisitError

from proof_forge.errors import MiniLangError


@dataclass(frozen=True)
class Increment:
    var: str


@dataclass(frozen=True)
class Decrement:
    var: str


@dataclass(frozen=True)
class Clear:
    var: str


@dataclass(frozen=True)
class SetConst:
    var: str
    value: int


@dataclass(frozen=True)
class While:
    var: str
    body: Tuple["Statement", ...]


@dataclass(frozen=True)
class IfZero:
    var: str
    then: Tuple["Statement", ...]
    orelse: Tuple["Statement", ...] = ()


@dataclass(frozen=True)
class Call:
    macro: str
    args: Tuple[str, ...]


@dataclass(frozen=True)
class Accept:
    pass


@dataclass(frozen=True)
class Reject:
    pass


Statement = Union[Increment, Decrement, Clear, SetConst, While, IfZero, Call, Accept, Reject]

# 宏名 -> (参数个数, 目标参数个数)
MACROS: Dict[str, Tuple[int, int]] = {
    "add": (3, 1),
    "sub": (3, 1),
    "mul": (3, 1),
    "divmod": (4, 2),
    "pair": (3, 1),
    "unpair": (3, 2),
    "copy": (2, 1),
    "eq": (3, 1),
}


@dataclass(frozen=True)
class MiniProgram:
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    variables: Tuple[str, ...]
    body: Tuple[Statement, ...]

    @property
    def declared(self) -> Tuple[str, ...]:
        return self.inputs + self.variables

    def statement_count(self) -> int:
        return sum(1 for _ in walk(self.body))


def walk(body: Sequence[Statement]) -> Iterator[Statement]:
    """先序遍历全部语句（含嵌套块）"""
    stack: List[Statement] = list(reversed(body))
    while stack:
        stmt = stack.pop()
        yield stmt
        if isinstance(stmt, While):
            stack.extend(reversed(stmt.body))
        elif isinstance(stmt, IfZero):
            stack.extend(reversed(stmt.orelse))
            stack.extend(reversed(stmt.then))


def _used(stmt: Statement) -> Tuple[str, ...]:
    if isinstance(stmt, Call):
        return stmt.args
    if isinstance(stmt, (Accept, Reject)):
        return ()
    return (stmt.var,)


def validate(program: MiniProgram) -> None:
    """
    Raises:
        MiniLangError: 重复声明、未声明变量、未知宏或宏参数个数 / 目标重名错误
    """
    seen: Set[str] = set()
    for name in program.declared:
        if name in seen:
            raise MiniLangError(f"variable {name!r} declared twice")
        seen.add(name)
    for name in program.outputs:
        if name not in seen:
            raise MiniLangError(f"output {name!r} is not declared")
    for stmt in walk(program.body):
        if isinstance(stmt, Call):
            if stmt.macro not in MACROS:
                raise MiniLangError(f"unknown macro {stmt.macro!r}")
            arity, targets = MACROS[stmt.macro]
            if len(stmt.args) != arity:
                raise MiniLangError(f"{stmt.macro} takes {arity} arguments, got {len(stmt.args)}")
            if targets == 2 and stmt.args[0] == stmt.args[1]:
                raise MiniLangError(f"{stmt.macro} needs two distinct targets")
        if isinstance(stmt, SetConst) and stmt.value < 0:
            raise MiniLangError(f"set {stmt.var}: constants are naturals")
        for name in _used(stmt):
            if name not in seen:
                raise MiniLangError(f"undeclared variable {name!r}")


# ---------------------------------------------------------------- text

MINILANG_GRAMMAR = r"""
    start: header* stmt*

    header: "input" names ";"   -> inputs
          | "output" names ";"  -> outputs
          | "var" names ";"     -> variables

    names: NAME ("," NAME)*

    block: "{" stmt* "}"

    ?stmt: "inc" NAME ";"                          -> increment
         | "dec" NAME ";"                          -> decrement
         | "clear" NAME ";"                        -> clear
         | "set" NAME NUMBER ";"                   -> set_const
         | "while" NAME ">" "0" block              -> while_
         | "if" NAME "=" "0" block ["else" block]  -> if_zero
         | "accept" ";"                            -> accept
         | "reject" ";"                            -> reject
         | NAME "(" names ")" ";"                  -> call

    NAME: /[A-Za-z_][A-Za-z0-9_]*/
    NUMBER: /[0-9]+/
    COMMENT: /#[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""


@v_args(inline=True)
class _ProgramBuilder(Transformer):
    def names(self, *tokens):
        return tuple(str(t) for t in tokens)

    def inputs(self, names):
        return ("input", names)

    def outputs(self, names):
        return ("output", names)

    def variables(self, names):
        return ("var", names)

    def block(self, *stmts):
        return tuple(stmts)

    def increment(self, name):
        return Increment(str(name))

    def decrement(self, name):
        return Decrement(str(name))

    def clear(self, name):
        return Clear(str(name))

    def set_const(self, name, value):
        return SetConst(str(name), int(value))

    def while_(self, name, body):
        return While(str(name), body)

    def if_zero(self, name, then, orelse=None):
        return IfZero(str(name), then, orelse or ())

    def accept(self):
        return Accept()

    def reject(self):
        return Reject()

    def call(self, name, args):
        return Call(str(name), args)

    def start(self, *items):
        groups: Dict[str, List[str]] = {"input": [], "output": [], "var": []}
        body: List[Statement] = []
        for item in items:
            if isinstance(item, tuple) and len(item) == 2 and item[0] in groups:
                groups[item[0]].extend(item[1])
            else:
                body.append(item)
        return MiniProgram(tuple(groups["input"]), tuple(groups["output"]),
                           tuple(groups["var"]), tuple(body))


_PARSER = Lark(MINILANG_GRAMMAR, parser="lalr", maybe_placeholders=True)


def parse_minilang(text: str) -> MiniProgram:
    """
    Raises:
        MiniLangError: 语法错误或声明错误
    """
    try:
        tree = _PARSER.parse(text)
        program = _ProgramBuilder().transform(tree)
    except UnexpectedCharacters as exc:
        raise MiniLangError(
            f"unexpected character at line {exc.line}, column {exc.column}"
        ) from exc
    except UnexpectedInput as exc:
        raise MiniLangError(f"syntax error at line {exc.line}, column {exc.column}") from exc
    except VisitError as exc:
        raise MiniLangError(str(exc.orig_exc)) from exc
    validate(program)
    return program


def _format_block(body: Sequence[Statement], indent: int, out: List[str]) -> None:
    pad = "    " * indent
    for stmt in body:
        if isinstance(stmt, Increment):
            out.append(f"{pad}inc {stmt.var};")
        elif isinstance(stmt, Decrement):
            out.append(f"{pad}dec {stmt.var};")
        elif isinstance(stmt, Clear):
            out.append(f"{pad}clear {stmt.var};")
        elif isinstance(stmt, SetConst):
            out.append(f"{pad}set {stmt.var} {stmt.value};")
        elif isinstance(stmt, While):
            out.append(f"{pad}while {stmt.var} > 0 {{")
            _format_block(stmt.body, indent + 1, out)
            out.append(f"{pad}}}")
        elif isinstance(stmt, IfZero):
            out.append(f"{pad}if {stmt.var} = 0 {{")
            _format_block(stmt.then, indent + 1, out)
            if stmt.orelse:
                out.append(f"{pad}}} else {{")
                _format_block(stmt.orelse, indent + 1, out)
            out.append(f"{pad}}}")
        elif isinstance(stmt, Call):
            out.append(f"{pad}{stmt.macro}({', '.join(stmt.args)});")
        elif isinstance(stmt, Accept):
            out.append(f"{pad}accept;")
        else:
            out.append(f"{pad}reject;")


def format_minilang(program: MiniProgram) -> str:
    out: List[str] = []
    if program.inputs:
        out.append(f"input {', '.join(program.inputs)};")
    if program.outputs:
        out.append(f"output {', '.join(program.outputs)};")
    if program.variables:
        out.append(f"var {', '.join(program.variables)};")
    _format_block(program.body, 0, out)
    return "\n".join(out) + "\n"

"""
方程 / 方程组文件读写

单一方程（polynomial = 0）：

    PARAMS k a
    UNKNOWNS x0 x1
    <coeff> <e1> <e2> … <en>     （指数按 PARAMS 再 UNKNOWNS 的顺序）

方程组在同样的头部之后由 --- 分隔成块，每块以条件种类开头：

    EQ                            （其后是差式 L - R 的单项式行）
    EXP u v w
    MASK u v

空行与 # 注释被忽略；所有整数十进制。
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from proof_forge.core.diophantine.equation import Equation
from proof_forge.core.pa.digits import from_decimal, to_decimal
from proof_forge.core.diophantine.polynomial import Monomial, Polynomial
from proof_forge.core.diophantine.system import Condition, DiophSystem, Exp, Mask, PolyEq
from proof_forge.errors import EquationFormatError, ParameterError

_TAGS = ("EQ", "EXP", "MASK")


def _rows(text: str) -> List[Tuple[int, str]]:
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((number, line))
    return rows


def _header(rows: List[Tuple[int, str]]) -> Tuple[Tuple[str, ...], Tuple[str, ...], int]:
    declared: Dict[str, Tuple[str, ...]] = {}
    position = 0
    while position < len(rows):
        number, line = rows[position]
        head, _, rest = line.partition(" ")
        if head not in ("PARAMS", "UNKNOWNS"):
            break
        if head in declared:
            raise EquationFormatError(f"row {number}: {head} declared twice")
        declared[head] = tuple(rest.split())
        position += 1
    if "UNKNOWNS" not in declared and "PARAMS" not in declared:
        raise EquationFormatError("equation file has no UNKNOWNS / PARAMS header")
    return declared.get("PARAMS", ()), declared.get("UNKNOWNS", ()), position


def _monomial_row(number: int, line: str, names: Sequence[str]) -> Tuple[Monomial, int]:
    fields = line.split()
    if len(fields) != len(names) + 1:
        raise EquationFormatError(
            f"row {number}: expected a coefficient and {len(names)} exponents, got {len(fields)}"
        )
    try:
        coefficient, *exponents = (from_decimal(field) for field in fields)
    except ValueError:
        raise EquationFormatError(f"row {number}: non-integer field in {line!r}") from None
    if any(exp < 0 for exp in exponents):
        raise EquationFormatError(f"row {number}: negative exponent")
    monomial = tuple((name, exp) for name, exp in sorted(zip(names, exponents)) if exp)
    return monomial, coefficient


def _polynomial(rows: Sequence[Tuple[int, str]], names: Sequence[str]) -> Polynomial:
    terms: Dict[Monomial, int] = {}
    for number, line in rows:
        monomial, coefficient = _monomial_row(number, line, names)
        terms[monomial] = terms.get(monomial, 0) + coefficient
    return Polynomial(terms)


def _format_polynomial(polynomial: Polynomial, names: Sequence[str]) -> List[str]:
    lines = []
    for monomial, coefficient in sorted(polynomial.items(), key=lambda item: item[0]):
        exponents = dict(monomial)
        fields = [to_decimal(coefficient)] + [str(exponents.get(n, 0)) for n in names]
        lines.append(" ".join(fields))
    return lines


def _header_lines(parameters: Sequence[str], unknowns: Sequence[str]) -> List[str]:
    return [" ".join(("PARAMS",) + tuple(parameters)).strip(),
            " ".join(("UNKNOWNS",) + tuple(unknowns)).strip()]


# ------------------------------------------------------------------ equation


def read_equation(text: str) -> Equation:
    """
    Raises:
        EquationFormatError: 头部缺失、行格式错误或出现条件种类标记
    """
    rows = _rows(text)
    parameters, unknowns, start = _header(rows)
    body = rows[start:]
    for number, line in body:
        if line.split()[0] in _TAGS or line == "---":
            raise EquationFormatError(f"row {number}: condition blocks belong in a system file")
    try:
        return Equation(_polynomial(body, parameters + unknowns), parameters, unknowns)
    except ParameterError as exc:
        raise EquationFormatError(str(exc)) from None


def write_equation(equation: Equation) -> str:
    rows = _header_lines(equation.parameters, equation.unknowns)
    rows += _format_polynomial(equation.polynomial, equation.names)
    return "\n".join(rows) + "\n"


# -------------------------------------------------------------------- system


def _block(chunk: List[Tuple[int, str]], names: Sequence[str]) -> Condition:
    number, line = chunk[0]
    head, *args = line.split()
    if head == "EQ" and not args:
        return PolyEq(_polynomial(chunk[1:], names))
    if head == "EXP" and len(args) == 3 and len(chunk) == 1:
        return Exp(*args)
    if head == "MASK" and len(args) == 2 and len(chunk) == 1:
        return Mask(*args)
    raise EquationFormatError(f"row {number}: cannot read condition block starting {line!r}")


def read_system(text: str) -> DiophSystem:
    """
    Raises:
        EquationFormatError: 头部缺失、块格式错误或名字未声明
    """
    rows = _rows(text)
    parameters, unknowns, start = _header(rows)
    names = parameters + unknowns
    chunks: List[List[Tuple[int, str]]] = [[]]
    for number, line in rows[start:]:
        if line == "---":
            chunks.append([])
        else:
            chunks[-1].append((number, line))
    conditions = [_block(chunk, names) for chunk in chunks if chunk]
    try:
        return DiophSystem(parameters, unknowns, conditions)
    except ParameterError as exc:
        raise EquationFormatError(str(exc)) from None


def write_system(system: DiophSystem) -> str:
    rows = _header_lines(system.parameters, system.unknowns)
    for index, condition in enumerate(system.conditions):
        if index:
            rows.append("---")
        if isinstance(condition, PolyEq):
            rows.append("EQ")
            rows += _format_polynomial(condition.difference, system.names)
        elif isinstance(condition, Exp):
            rows.append(f"EXP {condition.u} {condition.v} {condition.w}")
        else:
            rows.append(f"MASK {condition.u} {condition.v}")
    return "\n".join(rows) + "\n"


def is_system_text(text: str) -> Optional[bool]:
    """正文第一行是条件种类标记时视为方程组；没有正文时返回 None"""
    rows = _rows(text)
    try:
        _, _, start = _header(rows)
    except EquationFormatError:
        return None
    if start >= len(rows):
        return None
    return rows[start][1].split()[0] in _TAGS


def load_equation(path: Union[str, Path]) -> Equation:
    return read_equation(Path(path).read_text(encoding="utf-8"))


def save_equation(equation: Equation, path: Union[str, Path]) -> None:
    Path(path).write_text(write_equation(equation), encoding="utf-8")


def load_system(path: Union[str, Path]) -> DiophSystem:
    return read_system(Path(path).read_text(encoding="utf-8"))


def save_system(system: DiophSystem, path: Union[str, Path]) -> None:
    Path(path).write_text(write_system(system), encoding="utf-8")

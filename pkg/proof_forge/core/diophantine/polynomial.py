"""
稀疏多元多项式

[职责] 整系数、以未知数名字为键的多项式代数：加减乘幂、代换、精确求值
[约定]
- 单项式是按名字排序的 ((name, exponent), ...) 元组，指数均为正；常数项对应空元组
- 不保存系数为零的单项式
- 实例不可变，所有运算返回新对象
"""

from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple, Union

from proof_forge.errors import WitnessError

Monomial = Tuple[Tuple[str, int], ...]
Coefficient = int
PolyLike = Union["Polynomial", int]

ONE_MONOMIAL: Monomial = ()


def _merge(a: Monomial, b: Monomial) -> Monomial:
    """两个单项式相乘"""
    if not a:
        return b
    if not b:
        return a
    merged: Dict[str, int] = dict(a)
    for name, exp in b:
        merged[name] = merged.get(name, 0) + exp
    return tuple(sorted(merged.items()))


class Polynomial:
    """
    [职责] 方程组各阶段共用的多项式表示
    [场景] 条件 PolyEq 的两边、塌缩后的单一方程、自然系数两边形式
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Coefficient]] = None):
        self._terms: Dict[Monomial, Coefficient] = {
            mono: coeff for mono, coeff in (terms or {}).items() if coeff
        }
        self._hash: Optional[int] = None

    # ---------------------------------------------------------- builders

    @classmethod
    def constant(cls, value: int) -> "Polynomial":
        return cls({ONE_MONOMIAL: value})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls({((name, 1),): 1})

    @staticmethod
    def coerce(value: PolyLike) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, int):
            return Polynomial.constant(value)
        raise TypeError(f"cannot use {type(value).__name__} as a polynomial")

    # ------------------------------------------------------------- views

    def items(self) -> Iterator[Tuple[Monomial, Coefficient]]:
        return iter(self._terms.items())

    def coefficient(self, monomial: Monomial) -> Coefficient:
        return self._terms.get(monomial, 0)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    @property
    def constant_term(self) -> Coefficient:
        return self._terms.get(ONE_MONOMIAL, 0)

    def unknowns(self) -> FrozenSet[str]:
        return frozenset(name for mono in self._terms for name, _ in mono)

    def degree(self) -> int:
        """总次数；零多项式的次数记为 0"""
        return max((sum(exp for _, exp in mono) for mono in self._terms), default=0)

    def degree_in(self, name: str) -> int:
        return max((exp for mono in self._terms for n, exp in mono if n == name), default=0)

    # -------------------------------------------------------- arithmetic

    def __add__(self, other: PolyLike) -> "Polynomial":
        other = Polynomial.coerce(other)
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return Polynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: PolyLike) -> "Polynomial":
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other: PolyLike) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def __mul__(self, other: PolyLike) -> "Polynomial":
        other = Polynomial.coerce(other)
        terms: Dict[Monomial, Coefficient] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _merge(m1, m2)
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return Polynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("polynomials only take natural powers")
        result = Polynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -------------------------------------------------------- semantics

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        """
        精确求值

        Raises:
            WitnessError: 赋值缺少某个出现的未知数
        """
        missing = self.unknowns().difference(assignment)
        if missing:
            raise WitnessError(f"assignment has no value for {sorted(missing)[0]!r}")
        powers: Dict[Tuple[str, int], int] = {}
        total = 0
        for mono, coeff in self._terms.items():
            value = coeff
            for name, exp in mono:
                key = (name, exp)
                if key not in powers:
                    base = assignment[name]
                    powers[key] = base if exp == 1 else base ** exp
                value *= powers[key]
                if not value:
                    break
            total += value
        return total

    def substitute(self, mapping: Mapping[str, PolyLike]) -> "Polynomial":
        """把若干未知数同时替换为多项式或常数"""
        images = {name: Polynomial.coerce(value) for name, value in mapping.items()}
        result: Dict[Monomial, Coefficient] = {}
        for mono, coeff in self._terms.items():
            kept = tuple((n, e) for n, e in mono if n not in images)
            part = Polynomial({kept: coeff})
            for name, exp in mono:
                if name in images:
                    part = part * images[name] ** exp
            for m, c in part._terms.items():
                result[m] = result.get(m, 0) + c
        return Polynomial(result)

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        return Polynomial({
            tuple(sorted((mapping.get(n, n), e) for n, e in mono)): coeff
            for mono, coeff in self._terms.items()
        })

    def linear_split(self, name: str) -> Optional[Tuple["Polynomial", "Polynomial"]]:
        """
        写成 A·name + B（A、B 不含 name）

        Returns:
            (A, B)；name 的次数超过 1 时返回 None
        """
        slope: Dict[Monomial, Coefficient] = {}
        rest: Dict[Monomial, Coefficient] = {}
        for mono, coeff in self._terms.items():
            exp = dict(mono).get(name, 0)
            if exp == 0:
                rest[mono] = coeff
            elif exp == 1:
                slope[tuple((n, e) for n, e in mono if n != name)] = coeff
            else:
                return None
        return Polynomial(slope), Polynomial(rest)

    def split_signs(self) -> Tuple["Polynomial", "Polynomial"]:
        """(正系数部分, 负系数部分取反)，两者系数都非负"""
        positive = {m: c for m, c in self._terms.items() if c > 0}
        negative = {m: -c for m, c in self._terms.items() if c < 0}
        return Polynomial(positive), Polynomial(negative)

    # ------------------------------------------------------------- text

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in sorted(self._terms.items(), key=lambda item: item[0]):
            factors = [name if exp == 1 else f"{name}^{exp}" for name, exp in mono]
            if not factors:
                parts.append(str(coeff))
                continue
            prefix = "" if coeff == 1 else "-" if coeff == -1 else f"{coeff}*"
            parts.append(prefix + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def var(name: str) -> Polynomial:
    return Polynomial.variable(name)


def const(value: int) -> Polynomial:
    return Polynomial.constant(value)


def poly_sum(items: Iterable[PolyLike]) -> Polynomial:
    """一次累加，避免逐项相加时反复复制"""
    terms: Dict[Monomial, Coefficient] = {}
    for item in items:
        for monomial, coefficient in Polynomial.coerce(item).items():
            terms[monomial] = terms.get(monomial, 0) + coefficient
    return Polynomial(terms)


ZERO_POLY = Polynomial()

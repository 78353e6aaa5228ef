"""
公理模式表 (Axiom Table)

[职责]
- 每个公理模式一个 AxiomSchema 子类，负责判定公式是否为其实例
- AxiomTable 按注册顺序分配稠密编号 1..15
- PA1-PA6 允许任意全称闭包（匹配前剥离前导 forall）

[约定]
- Numeral(k+1) 在 PA 模式的 S 位置上视作 S(numeral(k))
- Q1 / IND 使用朴素代换，Q1 另要求 t 对 x 自由
"""

from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Type

from proof_forge.core.pa.syntax import (
    ZERO, Add, Eq, ForAll, Formula, Implies, Mul, Not, Numeral, Succ, Term, Var, VarId, Zero,
    free_vars, is_free_for, naive_substitute, numeral,
)
from proof_forge.errors import SchemaError


# ---------------------------------------------------------------- views

def is_zero(term: Term) -> bool:
    return isinstance(term, Zero) or (isinstance(term, Numeral) and term.value == 0)


def succ_view(term: Term) -> Optional[Term]:
    """S(t) 返回 t；Numeral(k+1) 返回 numeral(k)；否则 None"""
    if isinstance(term, Succ):
        return term.arg
    if isinstance(term, Numeral) and term.value > 0:
        return numeral(term.value - 1)
    return None


def strip_forall(formula: Formula) -> Formula:
    while isinstance(formula, ForAll):
        formula = formula.body
    return formula


def find_substituted(pattern: Formula, var: VarId, target: Formula) -> Optional[Term]:
    """
    在 pattern 与 target 的并行遍历中，找到 var 第一个自由出现处
    target 对应位置的项；没有自由出现时返回 Var(var)
    """
    found: List[Term] = []

    def walk_term(p: Term, t: Term) -> bool:
        if isinstance(p, Var) and p.index == var:
            found.append(t)
            return True
        if type(p) is not type(t):
            return False
        if isinstance(p, Succ):
            return walk_term(p.arg, t.arg)
        if isinstance(p, (Add, Mul)):
            return walk_term(p.left, t.left) or walk_term(p.right, t.right)
        return False

    def walk(p: Formula, t: Formula) -> bool:
        if type(p) is not type(t):
            return False
        if isinstance(p, Eq):
            return walk_term(p.left, t.left) or walk_term(p.right, t.right)
        if isinstance(p, Not):
            return walk(p.body, t.body)
        if isinstance(p, Implies):
            return walk(p.antecedent, t.antecedent) or walk(p.consequent, t.consequent)
        if p.var == var or p.var != t.var:
            return False
        return walk(p.body, t.body)

    walk(pattern, target)
    return found[0] if found else Var(var)


def atoms_differ_by(a: Term, b: Term, t: Term, u: Term) -> bool:
    """a 与 b 只在 a 显示 t、b 显示 u 的位置不同"""
    if a == b:
        return True
    if a == t and b == u:
        return True
    if type(a) is not type(b):
        return False
    if isinstance(a, Succ):
        return atoms_differ_by(a.arg, b.arg, t, u)
    if isinstance(a, (Add, Mul)):
        return atoms_differ_by(a.left, b.left, t, u) and atoms_differ_by(a.right, b.right, t, u)
    return False


# -------------------------------------------------------------- schemas

class AxiomSchema(ABC):
    """
    [职责] 公理模式接口 - 判定公式是否为本模式的实例
    [场景] 检查器逐行核对 Axiom(s) 依据
    """

    name: str = ""
    description: str = ""

    @abstractmethod
    def matches(self, formula: Formula) -> bool:
        pass


class A1(AxiomSchema):
    name = "A1"
    description = "phi -> (psi -> phi)"

    def matches(self, f: Formula) -> bool:
        return (isinstance(f, Implies) and isinstance(f.consequent, Implies)
                and f.consequent.consequent == f.antecedent)


class A2(AxiomSchema):
    name = "A2"
    description = "(phi -> (psi -> chi)) -> ((phi -> psi) -> (phi -> chi))"

    def matches(self, f: Formula) -> bool:
        if not (isinstance(f, Implies) and isinstance(f.antecedent, Implies)
                and isinstance(f.consequent, Implies)):
            return False
        left, right = f.antecedent, f.consequent
        if not (isinstance(left.consequent, Implies) and isinstance(right.antecedent, Implies)
                and isinstance(right.consequent, Implies)):
            return False
        phi, psi, chi = left.antecedent, left.consequent.antecedent, left.consequent.consequent
        return (right.antecedent.antecedent == phi and right.antecedent.consequent == psi
                and right.consequent.antecedent == phi and right.consequent.consequent == chi)


class A3(AxiomSchema):
    name = "A3"
    description = "(~psi -> ~phi) -> (phi -> psi)"

    def matches(self, f: Formula) -> bool:
        if not (isinstance(f, Implies) and isinstance(f.antecedent, Implies)
                and isinstance(f.consequent, Implies)):
            return False
        left = f.antecedent
        if not (isinstance(left.antecedent, Not) and isinstance(left.consequent, Not)):
            return False
        psi, phi = left.antecedent.body, left.consequent.body
        return f.consequent.antecedent == phi and f.consequent.consequent == psi


class Q1(AxiomSchema):
    name = "Q1"
    description = "forall x. phi -> phi[x := t], t free for x"

    def matches(self, f: Formula) -> bool:
        if not (isinstance(f, Implies) and isinstance(f.antecedent, ForAll)):
            return False
        var, body = f.antecedent.var, f.antecedent.body
        term = find_substituted(body, var, f.consequent)
        if term is None:
            return False
        return naive_substitute(body, var, term) == f.consequent and is_free_for(body, var, term)


class Q2(AxiomSchema):
    name = "Q2"
    description = "forall x. (phi -> psi) -> (phi -> forall x. psi), x not free in phi"

    def matches(self, f: Formula) -> bool:
        if not (isinstance(f, Implies) and isinstance(f.antecedent, ForAll)
                and isinstance(f.consequent, Implies)):
            return False
        var, inner = f.antecedent.var, f.antecedent.body
        right = f.consequent
        if not (isinstance(inner, Implies) and isinstance(right.consequent, ForAll)):
            return False
        return (right.antecedent == inner.antecedent and right.consequent.var == var
                and right.consequent.body == inner.consequent
                and var not in free_vars(inner.antecedent))


class E1(AxiomSchema):
    name = "E1"
    description = "t = t"

    def matches(self, f: Formula) -> bool:
        return isinstance(f, Eq) and f.left == f.right


class E2(AxiomSchema):
    name = "E2"
    description = "t = u -> (phi[x := t] -> phi[x := u]), phi atomic"

    def matches(self, f: Formula) -> bool:
        if not (isinstance(f, Implies) and isinstance(f.antecedent, Eq)
                and isinstance(f.consequent, Implies)):
            return False
        t, u = f.antecedent.left, f.antecedent.right
        a, b = f.consequent.antecedent, f.consequent.consequent
        if not (isinstance(a, Eq) and isinstance(b, Eq)):
            return False
        return atoms_differ_by(a.left, b.left, t, u) and atoms_differ_by(a.right, b.right, t, u)


class PA1(AxiomSchema):
    name = "PA1"
    description = "~(S(x) = 0)"

    def matches(self, f: Formula) -> bool:
        f = strip_forall(f)
        return (isinstance(f, Not) and isinstance(f.body, Eq)
                and succ_view(f.body.left) is not None and is_zero(f.body.right))


class PA2(AxiomSchema):
    name = "PA2"
    description = "S(x) = S(y) -> x = y"

    def matches(self, f: Formula) -> bool:
        f = strip_forall(f)
        if not (isinstance(f, Implies) and isinstance(f.antecedent, Eq)
                and isinstance(f.consequent, Eq)):
            return False
        left, right = succ_view(f.antecedent.left), succ_view(f.antecedent.right)
        return (left is not None and right is not None
                and f.consequent.left == left and f.consequent.right == right)


class PA3(AxiomSchema):
    name = "PA3"
    description = "x + 0 = x"

    def matches(self, f: Formula) -> bool:
        f = strip_forall(f)
        return (isinstance(f, Eq) and isinstance(f.left, Add)
                and is_zero(f.left.right) and f.left.left == f.right)


class PA4(AxiomSchema):
    name = "PA4"
    description = "x + S(y) = S(x + y)"

    def matches(self, f: Formula) -> bool:
        f = strip_forall(f)
        if not (isinstance(f, Eq) and isinstance(f.left, Add) and isinstance(f.right, Succ)):
            return False
        inner = succ_view(f.left.right)
        return inner is not None and f.right.arg == Add(f.left.left, inner)


class PA5(AxiomSchema):
    name = "PA5"
    description = "x * 0 = 0"

    def matches(self, f: Formula) -> bool:
        f = strip_forall(f)
        return (isinstance(f, Eq) and isinstance(f.left, Mul)
                and is_zero(f.left.right) and is_zero(f.right))


class PA6(AxiomSchema):
    name = "PA6"
    description = "x * S(y) = x * y + x"

    def matches(self, f: Formula) -> bool:
        f = strip_forall(f)
        if not (isinstance(f, Eq) and isinstance(f.left, Mul)):
            return False
        inner = succ_view(f.left.right)
        return inner is not None and f.right == Add(Mul(f.left.left, inner), f.left.left)


class IND(AxiomSchema):
    name = "IND"
    description = "phi[x := 0] -> (forall x. (phi -> phi[x := S(x)]) -> forall x. phi)"

    def matches(self, f: Formula) -> bool:
        if not (isinstance(f, Implies) and isinstance(f.consequent, Implies)):
            return False
        step, goal = f.consequent.antecedent, f.consequent.consequent
        if not (isinstance(step, ForAll) and isinstance(goal, ForAll)
                and isinstance(step.body, Implies)):
            return False
        var, phi = goal.var, goal.body
        return (step.var == var and step.body.antecedent == phi
                and f.antecedent == naive_substitute(phi, var, ZERO)
                and step.body.consequent == naive_substitute(phi, var, Succ(Var(var))))


class NUM(AxiomSchema):
    name = "NUM"
    description = "Numeral(n+1) = S(Numeral(n)), Numeral(0) = 0"

    def matches(self, f: Formula) -> bool:
        if not (isinstance(f, Eq) and isinstance(f.left, Numeral)):
            return False
        n = f.left.value
        if n == 0:
            return isinstance(f.right, Zero)
        return f.right == Succ(numeral(n - 1))


# ---------------------------------------------------------------- table

class AxiomTable:
    """
    公理表

    编号按注册顺序稠密分配，构造后不可变。
    """

    SCHEMA_REGISTRY: Dict[str, Type[AxiomSchema]] = {
        "A1": A1, "A2": A2, "A3": A3, "Q1": Q1, "Q2": Q2, "E1": E1, "E2": E2,
        "PA1": PA1, "PA2": PA2, "PA3": PA3, "PA4": PA4, "PA5": PA5, "PA6": PA6,
        "IND": IND, "NUM": NUM,
    }

    def __init__(self):
        self._schemas: List[AxiomSchema] = [cls() for cls in self.SCHEMA_REGISTRY.values()]
        self._ids: Dict[str, int] = {s.name: i for i, s in enumerate(self._schemas, start=1)}

    def __len__(self) -> int:
        return len(self._schemas)

    @property
    def names(self) -> List[str]:
        return [s.name for s in self._schemas]

    def schema(self, schema_id: int) -> AxiomSchema:
        if not 1 <= schema_id <= len(self._schemas):
            raise SchemaError(f"unknown axiom schema id {schema_id}")
        return self._schemas[schema_id - 1]

    def id_of(self, name: str) -> int:
        key = name.upper()
        if key not in self._ids:
            raise SchemaError(f"unknown axiom schema {name!r}; known: {self.names}")
        return self._ids[key]

    def name_of(self, schema_id: int) -> str:
        return self.schema(schema_id).name

    def is_axiom_instance(self, formula: Formula, schema_id: int) -> bool:
        """
        Raises:
            SchemaError: 编号不在表中
        """
        return self.schema(schema_id).matches(formula)

    def has(self, schema_id: int) -> bool:
        return 1 <= schema_id <= len(self._schemas)


AXIOM_TABLE = AxiomTable()


def schema_id(name: str) -> int:
    return AXIOM_TABLE.id_of(name)


def is_axiom_instance(formula: Formula, schema_id_: int) -> bool:
    return AXIOM_TABLE.is_axiom_instance(formula, schema_id_)

"""
PA 抽象语法 (Terms / Formulas)

语言固定为 {0, S, +, *, =}；原始联结词只有 ~、->、forall，
其余 (exists, &, |, <->) 都是定义性缩写，构造时立即展开。
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple, Union

VarId = int


# ---------------------------------------------------------------- Terms

@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Var:
    index: VarId


@dataclass(frozen=True)
class Numeral:
    """紧凑数字节点：Numeral(n) 是 n 个 S 作用于 0 的缩写"""

    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"numeral must be a natural, got {self.value}")


Term = Union[Zero, Succ, Add, Mul, Var, Numeral]

ZERO = Zero()


# ------------------------------------------------------------- Formulas

@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Implies:
    antecedent: "Formula"
    consequent: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: VarId
    body: "Formula"


Formula = Union[Eq, Not, Implies, ForAll]


# ------------------------------------------------ derived abbreviations

def exists_(var: VarId, body: Formula) -> Formula:
    """exists x. φ  :=  ~forall x. ~φ"""
    return Not(ForAll(var, Not(body)))


def and_(left: Formula, right: Formula) -> Formula:
    """φ & ψ  :=  ~(φ -> ~ψ)"""
    return Not(Implies(left, Not(right)))


def or_(left: Formula, right: Formula) -> Formula:
    """φ | ψ  :=  (~φ -> ψ)"""
    return Implies(Not(left), right)


def iff_(left: Formula, right: Formula) -> Formula:
    return and_(Implies(left, right), Implies(right, left))


def expand(formula: Formula) -> Formula:
    """缩写在构造时已展开，AST 中只有原始联结词，展开是恒等"""
    return formula


# ------------------------------------------------------------- numerals

def numeral(n: int) -> Term:
    """
    规范数字：0 返回 Zero（与 Numeral(0) 等价），n ≥ 1 返回紧凑节点
    """
    if n < 0:
        raise ValueError(f"numeral must be a natural, got {n}")
    return ZERO if n == 0 else Numeral(n)


def unfold_once(term: Numeral) -> Term:
    """Numeral(n+1) 展开一层为 Succ(numeral(n))；Numeral(0) 展开为 Zero"""
    if term.value == 0:
        return ZERO
    return Succ(numeral(term.value - 1))


def unfold(term: Term, limit: int = 100_000) -> Term:
    """完全展开为 S 链（仅用于小数字，超过 limit 拒绝）"""
    if not isinstance(term, Numeral):
        return term
    if term.value > limit:
        raise ValueError(f"refusing to unfold numeral {term.value} beyond limit {limit}")
    result: Term = ZERO
    for _ in range(term.value):
        result = Succ(result)
    return result


def numeral_value(term: Term) -> Optional[int]:
    """若 term 是 0 / Numeral / S 链，返回其值，否则 None"""
    depth = 0
    while isinstance(term, Succ):
        depth += 1
        term = term.arg
    if isinstance(term, Zero):
        return depth
    if isinstance(term, Numeral):
        return depth + term.value
    return None


# --------------------------------------------------------- prefix peeling
#
# 表示定理生成的公式有很长的 ~/forall 前缀（每个存在量词贡献三层），
# 下面的遍历都先剥离一元前缀再处理母式，递归深度只取决于母式。

Prefix = List[Optional[VarId]]


def peel(formula: Formula) -> Tuple[Prefix, Formula]:
    """剥离一元前缀：None 表示 Not，整数表示 ForAll 的约束变量"""
    prefix: Prefix = []
    while isinstance(formula, (Not, ForAll)):
        if isinstance(formula, Not):
            prefix.append(None)
        else:
            prefix.append(formula.var)
        formula = formula.body
    return prefix, formula


def wrap(prefix: Prefix, matrix: Formula) -> Formula:
    for entry in reversed(prefix):
        matrix = Not(matrix) if entry is None else ForAll(entry, matrix)
    return matrix


# --------------------------------------------------------- normalization

def normalize_term(term: Term) -> Term:
    """S 作用于数字时折叠为 Numeral；Numeral(0) 规范化为 Zero"""
    if isinstance(term, (Zero, Var)):
        return term
    if isinstance(term, Numeral):
        return numeral(term.value)
    if isinstance(term, Succ):
        value = numeral_value(term)
        if value is not None:
            return numeral(value)
        return Succ(normalize_term(term.arg))
    if isinstance(term, Add):
        return Add(normalize_term(term.left), normalize_term(term.right))
    return Mul(normalize_term(term.left), normalize_term(term.right))


def normalize(formula: Formula) -> Formula:
    prefix, matrix = peel(formula)
    if isinstance(matrix, Eq):
        matrix = Eq(normalize_term(matrix.left), normalize_term(matrix.right))
    else:
        matrix = Implies(normalize(matrix.antecedent), normalize(matrix.consequent))
    return wrap(prefix, matrix)


# ------------------------------------------------------------ variables

def iter_term_vars(term: Term) -> Iterator[VarId]:
    stack = [term]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            yield node.index
        elif isinstance(node, Succ):
            stack.append(node.arg)
        elif isinstance(node, (Add, Mul)):
            stack.append(node.right)
            stack.append(node.left)


def term_vars(term: Term) -> FrozenSet[VarId]:
    return frozenset(iter_term_vars(term))


def is_closed_term(term: Term) -> bool:
    return next(iter_term_vars(term), None) is None


def free_vars(formula: Formula) -> FrozenSet[VarId]:
    """恰好是有自由出现的变量"""
    prefix, matrix = peel(formula)
    if isinstance(matrix, Eq):
        inner = term_vars(matrix.left) | term_vars(matrix.right)
    else:
        inner = free_vars(matrix.antecedent) | free_vars(matrix.consequent)
    bound = {entry for entry in prefix if entry is not None}
    return inner - bound


def is_closed(formula: Formula) -> bool:
    return not free_vars(formula)


def fresh_var(*objs: Union[Term, Formula]) -> VarId:
    """比所有出现过的下标都大的新变量"""
    return max((max_var_index(obj) for obj in objs), default=-1) + 1


def max_var_index(obj: Union[Term, Formula]) -> int:
    """出现过的最大变量下标（含约束变量），无变量时为 -1"""
    best = -1
    stack: List[Union[Term, Formula]] = [obj]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            best = max(best, node.index)
        elif isinstance(node, Succ):
            stack.append(node.arg)
        elif isinstance(node, (Add, Mul, Eq)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Not):
            stack.append(node.body)
        elif isinstance(node, Implies):
            stack.append(node.antecedent)
            stack.append(node.consequent)
        elif isinstance(node, ForAll):
            best = max(best, node.var)
            stack.append(node.body)
    return best


# --------------------------------------------------------- substitution

def substitute_term(term: Term, var: VarId, replacement: Term) -> Term:
    return substitute_terms(term, {var: replacement})


def substitute_terms(term: Term, mapping: Dict[VarId, Term]) -> Term:
    """同时代换"""
    if isinstance(term, Var):
        return mapping.get(term.index, term)
    if isinstance(term, (Zero, Numeral)):
        return term
    if isinstance(term, Succ):
        return Succ(substitute_terms(term.arg, mapping))
    if isinstance(term, Add):
        return Add(substitute_terms(term.left, mapping), substitute_terms(term.right, mapping))
    return Mul(substitute_terms(term.left, mapping), substitute_terms(term.right, mapping))


def substitute(formula: Formula, var: VarId, replacement: Term) -> Formula:
    """
    避免捕获的代换 φ[x := t]

    约束变量与 t 的自由变量冲突时，改名为 max 下标 + 1。
    """
    if var not in free_vars(formula):
        return formula
    fresh = [max(max_var_index(formula), max_var_index(replacement), var) + 1]
    return _substitute_simultaneous(formula, {var: replacement}, fresh)


def _substitute_simultaneous(formula: Formula, mapping: Dict[VarId, Term],
                             fresh: List[int]) -> Formula:
    prefix, matrix = peel(formula)
    mapping = dict(mapping)
    danger = set()
    for term in mapping.values():
        danger.update(iter_term_vars(term))

    new_prefix: Prefix = []
    for position, entry in enumerate(prefix):
        if entry is None:
            new_prefix.append(None)
            continue
        mapping.pop(entry, None)
        if not mapping:
            return wrap(new_prefix + prefix[position:], matrix)
        if entry in danger:
            remainder = wrap(prefix[position + 1:], matrix)
            if any(key in free_vars(remainder) for key in mapping if key != entry):
                renamed = fresh[0]
                fresh[0] += 1
                mapping[entry] = Var(renamed)
                new_prefix.append(renamed)
                continue
        new_prefix.append(entry)

    if isinstance(matrix, Eq):
        matrix = Eq(substitute_terms(matrix.left, mapping),
                    substitute_terms(matrix.right, mapping))
    else:
        matrix = Implies(_substitute_simultaneous(matrix.antecedent, mapping, fresh),
                         _substitute_simultaneous(matrix.consequent, mapping, fresh))
    return wrap(new_prefix, matrix)


def naive_substitute(formula: Formula, var: VarId, replacement: Term) -> Formula:
    """替换所有自由出现，不改名（公理模式匹配使用的语义）"""
    prefix, matrix = peel(formula)
    if var in prefix:
        # 被前缀约束时母式中没有自由出现
        return formula
    if isinstance(matrix, Eq):
        matrix = Eq(substitute_term(matrix.left, var, replacement),
                    substitute_term(matrix.right, var, replacement))
    else:
        matrix = Implies(naive_substitute(matrix.antecedent, var, replacement),
                         naive_substitute(matrix.consequent, var, replacement))
    return wrap(prefix, matrix)


def is_free_for(formula: Formula, var: VarId, replacement: Term) -> bool:
    """t 对 x 在 φ 中自由：x 的自由出现都不在 t 的变量的量词辖域内"""
    danger = term_vars(replacement)
    return _free_for(formula, var, danger, frozenset())


def _free_for(formula: Formula, var: VarId, danger: FrozenSet[VarId],
              binders: FrozenSet[VarId]) -> bool:
    prefix, matrix = peel(formula)
    bound = set(binders)
    for entry in prefix:
        if entry == var:
            return True
        if entry is not None:
            bound.add(entry)
    if isinstance(matrix, Eq):
        if var in term_vars(matrix.left) or var in term_vars(matrix.right):
            return not (bound & danger)
        return True
    frozen = frozenset(bound)
    return (_free_for(matrix.antecedent, var, danger, frozen)
            and _free_for(matrix.consequent, var, danger, frozen))


# ----------------------------------------------------------- semantics

def evaluate_term(term: Term, env: Optional[Dict[VarId, int]] = None) -> int:
    """标准模型中的取值"""
    env = env or {}
    if isinstance(term, Zero):
        return 0
    if isinstance(term, Numeral):
        return term.value
    if isinstance(term, Var):
        if term.index not in env:
            raise KeyError(f"variable x{term.index} has no value")
        return env[term.index]
    if isinstance(term, Succ):
        return evaluate_term(term.arg, env) + 1
    if isinstance(term, Add):
        return evaluate_term(term.left, env) + evaluate_term(term.right, env)
    return evaluate_term(term.left, env) * evaluate_term(term.right, env)


def formula_size(obj: Union[Term, Formula]) -> int:
    """节点个数"""
    count = 0
    stack: List[Union[Term, Formula]] = [obj]
    while stack:
        node = stack.pop()
        count += 1
        if isinstance(node, Succ):
            stack.append(node.arg)
        elif isinstance(node, (Add, Mul, Eq)):
            stack.extend((node.left, node.right))
        elif isinstance(node, (Not, ForAll)):
            stack.append(node.body)
        elif isinstance(node, Implies):
            stack.extend((node.antecedent, node.consequent))
    return count

"""
闭项等式 / 不等式的证明合成

按项结构递归求值并改写（不做证明搜索），结果都经过检查器自检。
"""

import logging
from typing import Optional

from proof_forge.core.checker.schemas import AXIOM_TABLE
from proof_forge.core.checker.verifier import check_proof
from proof_forge.core.codec.proofs import AnnotatedProof
from proof_forge.core.pa.printer import print_formula
from proof_forge.core.pa.syntax import (
    ZERO, Add, Eq, Formula, Implies, Mul, Not, Numeral, Succ, Term, Zero, evaluate_term,
    is_closed_term, numeral,
)
from proof_forge.core.synth.builder import ProofBuilder
from proof_forge.errors import SynthesisError

logger = logging.getLogger(__name__)


def _require_closed(*terms: Term) -> None:
    for term in terms:
        if not is_closed_term(term):
            raise SynthesisError(f"term {term!r} is not closed")


def _axiom_shortcut(builder: ProofBuilder, goal: Formula) -> Optional[int]:
    """目标本身是公理实例时直接一行"""
    for schema in range(1, len(AXIOM_TABLE) + 1):
        if AXIOM_TABLE.is_axiom_instance(goal, schema):
            return builder.axiom(goal, AXIOM_TABLE.name_of(schema))
    return None


# ----------------------------------------------------------- numerals

def num_succ(builder: ProofBuilder, value: int) -> int:
    """S(N(v)) = N(v+1)"""
    unfold = builder.axiom(Eq(numeral(value + 1), Succ(numeral(value))), "NUM")
    return builder.symmetry(unfold)


def add_num(builder: ProofBuilder, x: int, y: int) -> int:
    """N(x) + N(y) = N(x+y)，按 y 迭代"""
    current = builder.axiom(Eq(Add(numeral(x), ZERO), numeral(x)), "PA3")
    for k in range(y):
        # N(x) + N(k+1) = S(N(x) + N(k))
        step = builder.axiom(
            Eq(Add(numeral(x), numeral(k + 1)), Succ(Add(numeral(x), numeral(k)))), "PA4"
        )
        lifted = builder.cong_succ(current)
        current = builder.transitivity(builder.transitivity(step, lifted), num_succ(builder, x + k))
    return current


def mul_num(builder: ProofBuilder, x: int, y: int) -> int:
    """N(x) * N(y) = N(x*y)，按 y 迭代"""
    current = builder.axiom(Eq(Mul(numeral(x), ZERO), ZERO), "PA5")
    for k in range(y):
        # N(x) * N(k+1) = N(x) * N(k) + N(x)
        step = builder.axiom(
            Eq(Mul(numeral(x), numeral(k + 1)), Add(Mul(numeral(x), numeral(k)), numeral(x))),
            "PA6",
        )
        regrouped = builder.cong_add(current, builder.reflexivity(numeral(x)))
        summed = add_num(builder, x * k, x)
        current = builder.transitivity(builder.transitivity(step, regrouped), summed)
    return current


def evaluation(builder: ProofBuilder, term: Term) -> int:
    """t = N(value(t))，t 为闭项"""
    if isinstance(term, Numeral) and term.value == 0:
        return builder.axiom(Eq(term, ZERO), "NUM")
    if isinstance(term, (Zero, Numeral)):
        return builder.reflexivity(term)
    value = evaluate_term(term)
    if isinstance(term, Succ):
        inner = evaluation(builder, term.arg)
        lifted = builder.cong_succ(inner)
        return builder.transitivity(lifted, num_succ(builder, value - 1))
    left = evaluation(builder, term.left)
    right = evaluation(builder, term.right)
    x, y = evaluate_term(term.left), evaluate_term(term.right)
    if isinstance(term, Add):
        regrouped = builder.cong_add(left, right)
        return builder.transitivity(regrouped, add_num(builder, x, y))
    regrouped = builder.cong_mul(left, right)
    return builder.transitivity(regrouped, mul_num(builder, x, y))


def neq_num(builder: ProofBuilder, a: int, b: int) -> int:
    """~(N(a) = N(b))，a != b，经 PA2 下降到一端为 0"""
    if a == b:
        raise SynthesisError(f"values are equal: {a}")
    low = min(a, b)
    a0, b0 = a - low, b - low
    if b0 == 0:
        current = builder.axiom(Not(Eq(numeral(a0), ZERO)), "PA1")
    else:
        base = builder.axiom(Not(Eq(numeral(b0), ZERO)), "PA1")
        flip = builder.sym_implication(ZERO, numeral(b0))
        current = builder.modus_tollens(flip, base)
    for k in range(1, low + 1):
        # N(a0+k) = N(b0+k) -> N(a0+k-1) = N(b0+k-1)
        descent = builder.axiom(
            Implies(Eq(numeral(a0 + k), numeral(b0 + k)),
                    Eq(numeral(a0 + k - 1), numeral(b0 + k - 1))),
            "PA2",
        )
        current = builder.modus_tollens(descent, current)
    return current


# ------------------------------------------------------------ public

def _certified(builder: ProofBuilder, line: int, goal: Formula) -> AnnotatedProof:
    if builder.formula(line) != goal:
        raise SynthesisError(
            f"derived {print_formula(builder.formula(line))}, wanted {print_formula(goal)}"
        )
    proof = builder.build(line)
    if not check_proof(proof, goal):
        raise SynthesisError(f"synthesized proof of {print_formula(goal)} failed the checker")
    logger.debug("synthesized %d-line proof of %s", len(proof), print_formula(goal))
    return proof


def prove_evaluation(term: Term) -> AnnotatedProof:
    """t = N(value(t))"""
    _require_closed(term)
    builder = ProofBuilder()
    line = evaluation(builder, term)
    return _certified(builder, line, builder.formula(line))


def equality_line(builder: ProofBuilder, t: Term, u: Term) -> int:
    """在 builder 中推出 t = u（值须相等）"""
    goal = Eq(t, u)
    shortcut = _axiom_shortcut(builder, goal)
    if shortcut is not None:
        return shortcut
    left = evaluation(builder, t)
    right = builder.symmetry(evaluation(builder, u))
    return builder.transitivity(left, right)


def inequality_line(builder: ProofBuilder, t: Term, u: Term) -> int:
    """在 builder 中推出 ~(t = u)（值须不同）"""
    goal = Not(Eq(t, u))
    shortcut = _axiom_shortcut(builder, goal)
    if shortcut is not None:
        return shortcut
    a, b = evaluate_term(t), evaluate_term(u)
    core = neq_num(builder, a, b)
    na, nb = numeral(a), numeral(b)
    if t == na and u == nb:
        return core
    # t = u -> N(a) = u -> N(a) = N(b)
    chain = builder.identity(Eq(t, u))
    if t != na:
        left = evaluation(builder, t)
        step = builder.e2(builder.formula(left), Eq(t, u), Eq(na, u))
        chain = builder.hs(chain, builder.mp(left, step))
    if u != nb:
        right = evaluation(builder, u)
        step = builder.e2(builder.formula(right), Eq(na, u), Eq(na, nb))
        chain = builder.hs(chain, builder.mp(right, step))
    return builder.modus_tollens(chain, core)


def prove_closed_equality(t: Term, u: Term) -> AnnotatedProof:
    """
    证明闭项等式 t = u

    Raises:
        SynthesisError: 非闭项，或两边取值不同
    """
    _require_closed(t, u)
    a, b = evaluate_term(t), evaluate_term(u)
    if a != b:
        raise SynthesisError(f"values differ: {a} != {b}")
    builder = ProofBuilder()
    return _certified(builder, equality_line(builder, t, u), Eq(t, u))


def prove_closed_inequality(t: Term, u: Term) -> AnnotatedProof:
    """
    证明闭项不等式 ~(t = u)

    Raises:
        SynthesisError: 非闭项，或两边取值相等
    """
    _require_closed(t, u)
    a, b = evaluate_term(t), evaluate_term(u)
    if a == b:
        raise SynthesisError(f"values are equal: {a}")
    builder = ProofBuilder()
    return _certified(builder, inequality_line(builder, t, u), Not(Eq(t, u)))

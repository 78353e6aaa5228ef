"""
Gödel 句、Henkin 句与不可判定命题生成器

[职责]
- godel_sentence：θ(x) := forall y forall z (diagRep(x, y, z) -> ~B(y))，G := θ((#θ)')
- henkin_sentence：θ'(x) := exists y exists z (diagRep(x, y, z) & B(y))，H := θ'((#θ')')
- undecidable_from：由已证定理 A 给出 ~A 的证明方程与句子 ~B((#~A)')
[约定]
- 证书记录 θ 的文本与十进制编码，replay_certificate 由证书逐位重建句子
- 两个不动点等价式在 PA 内的可证性不在这里检查
"""

import logging
from typing import NamedTuple, Optional, Tuple

from proof_forge.config import Budget
from proof_forge.core.checker import check_proof
from proof_forge.core.codec.godel import encode_formula
from proof_forge.core.codec.proofs import AnnotatedProof
from proof_forge.core.diophantine import ProofEquation
from proof_forge.core.incompleteness.context import IncompletenessContext
from proof_forge.core.pa.digits import from_decimal, to_decimal
from proof_forge.core.pa.parser import parse_formula
from proof_forge.core.pa.printer import print_formula
from proof_forge.core.pa.syntax import (
    ForAll, Formula, Implies, Not, Var, and_, exists_, free_vars, numeral, substitute,
)
from proof_forge.core.types import Certificate, UndecidableReport
from proof_forge.errors import CertificateError

logger = logging.getLogger(__name__)

GODEL = "godel"
HENKIN = "henkin"


def godel_theta(context: IncompletenessContext) -> Formula:
    _, y = context.slots
    body: Formula = Implies(context.diagonal.formula, Not(context.provable(Var(y))))
    for index in reversed((y,) + context.block):
        body = ForAll(index, body)
    return body


def henkin_theta(context: IncompletenessContext) -> Formula:
    _, y = context.slots
    body = and_(context.diagonal.formula, context.provable(Var(y)))
    for index in reversed((y,) + context.block):
        body = exists_(index, body)
    return body


def _fill(theta: Formula, code: int) -> Formula:
    (slot,) = free_vars(theta)
    return substitute(theta, slot, numeral(code))


def diagonalize(theta: Formula, kind: str,
                budget: Optional[Budget] = None) -> Tuple[Formula, Certificate]:
    """
    θ 恰有一个自由变量时返回 θ((#θ)') 及其证书

    Raises:
        ValueError: θ 的自由变量不是恰好一个
        BudgetExceeded: #θ 超过 budget.max_bits
    """
    if len(free_vars(theta)) != 1:
        raise ValueError(f"θ must have exactly one free variable, has {len(free_vars(theta))}")
    code = encode_formula(theta, budget)
    sentence = _fill(theta, code)
    certificate = Certificate(
        kind=kind,
        theta=print_formula(theta),
        theta_code=to_decimal(code),
        sentence=print_formula(sentence),
    )
    logger.info("%s sentence: #θ has %d bits", kind, code.bit_length())
    return sentence, certificate


def godel_sentence(context: Optional[IncompletenessContext] = None,
                   budget: Optional[Budget] = None) -> Tuple[Formula, Certificate]:
    """G 满足 G ↔ ~B((#G)') 的对角形状"""
    context = context or IncompletenessContext.toy(budget)
    return diagonalize(godel_theta(context), GODEL, budget)


def henkin_sentence(context: Optional[IncompletenessContext] = None,
                    budget: Optional[Budget] = None) -> Tuple[Formula, Certificate]:
    """H 满足 H ↔ B((#H)') 的对角形状"""
    context = context or IncompletenessContext.toy(budget)
    return diagonalize(henkin_theta(context), HENKIN, budget)


def replay_certificate(certificate: Certificate) -> Formula:
    """
    Raises:
        CertificateError: 记录的编码与 θ 不符
    """
    theta = parse_formula(certificate.theta, normalize_numerals=False)
    code = from_decimal(certificate.theta_code)
    if encode_formula(theta) != code:
        raise CertificateError(
            f"recorded code does not encode θ of the {certificate.kind} sentence"
        )
    return _fill(theta, code)


# --------------------------------------------------------------- generator


class Undecidable(NamedTuple):
    equation: ProofEquation
    sentence: Formula
    report: UndecidableReport


def undecidable_from(theorem: Formula, proof: AnnotatedProof,
                     context: Optional[IncompletenessContext] = None,
                     search_bound: Optional[int] = None,
                     budget: Optional[Budget] = None) -> Undecidable:
    """
    由已证定理 A 构造 ~A 的证明方程与句子 ~B((#~A)')

    Args:
        theorem: A（公理也可，附一行证明）
        proof: A 的证明，必须通过检查器
        search_bound: 在证明码 a ≤ search_bound 内搜索方程的解

    Raises:
        CertificateError: proof 不是 theorem 的证明
    """
    budget = budget or Budget.from_settings()
    context = context or IncompletenessContext.toy(budget)
    if not check_proof(proof, theorem):
        raise CertificateError(f"proof does not certify {print_formula(theorem)}")
    negation = Not(theorem)
    code = encode_formula(negation, budget)
    equation = ProofEquation(code, budget=budget)
    sentence = Not(context.provable(numeral(code)))

    bound = budget.search_bound if search_bound is None else search_bound
    found = equation.search(bound)
    notes = [
        "the equation has a solution iff PA proves the negation; "
        "with A provable this fails whenever PA is consistent",
        "the sentence is true and unprovable in PA under the same consistency assumption; "
        "neither claim is machine-checked here",
    ]
    if found is not None:
        notes.append(f"proof code {found} of the negation found: PA is inconsistent")
    report = UndecidableReport(
        theorem=print_formula(theorem),
        negation_code=to_decimal(code),
        equation_unknowns=len(context.provability.unknown_to_var),
        sentence=print_formula(sentence),
        search_bound=bound,
        solution_found=found is not None,
        notes=notes,
        toy=context.is_toy,
    )
    logger.info("undecidable equation for code %d: searched a <= %d", code, bound)
    return Undecidable(equation, sentence, report)

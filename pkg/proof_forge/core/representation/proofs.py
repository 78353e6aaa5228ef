"""
表示性质的可执行形式

[职责]
- evaluate_representation：标准模型中 d 两边的取值
- prove_instance：D(b) = 0 时给出 d(b') 的证明，否则给出 ~d(b') 的证明
- prove_b_of：由见证证明 B((code)')（闭项等式 + 逐个存在引入）
[约定] 产出的证明都已经过检查器
"""

import logging
from typing import Mapping, Tuple

from proof_forge.core.codec.proofs import AnnotatedProof
from proof_forge.core.pa.syntax import Eq, Formula, evaluate_term, numeral, substitute_terms
from proof_forge.core.representation.formulas import Representation, instance_terms
from proof_forge.core.synth.arithmetic import prove_closed_equality, prove_closed_inequality
from proof_forge.core.synth.existential import existential_intro_many
from proof_forge.errors import RepresentationError, WitnessError

logger = logging.getLogger(__name__)


def evaluate_representation(rep: Representation,
                            assignment: Mapping[str, int]) -> Tuple[int, int]:
    env = rep.environment(assignment)
    return evaluate_term(rep.formula.left, env), evaluate_term(rep.formula.right, env)


def instance(rep: Representation, assignment: Mapping[str, int]) -> Formula:
    """数字实例 d(b')"""
    return Eq(*instance_terms(rep, assignment))


def prove_instance(rep: Representation, assignment: Mapping[str, int]) -> AnnotatedProof:
    left, right = instance_terms(rep, assignment)
    if evaluate_term(left) == evaluate_term(right):
        return prove_closed_equality(left, right)
    return prove_closed_inequality(left, right)


def prove_b_of(rep: Representation, code: int, witness: Mapping[str, int]) -> AnnotatedProof:
    """
    Args:
        code: 码位的取值
        witness: 全部未知数（以及码位以外的参数）的取值

    Raises:
        WitnessError: witness 不是 code 处的解
        RepresentationError: witness 缺少某个名字
    """
    code_name = next(iter(rep.parameter_to_var), None)
    if code_name is None:
        raise RepresentationError("representation has no parameter slot")
    values = {**witness, code_name: code}
    left, right = instance_terms(rep, values)
    if evaluate_term(left) != evaluate_term(right):
        raise WitnessError(f"assignment does not solve the represented equation at code {code}")

    fixed = {index: numeral(values[name]) for name, index in rep.parameter_to_var.items()}
    body = Eq(substitute_terms(rep.formula.left, fixed),
              substitute_terms(rep.formula.right, fixed))
    proof = existential_intro_many(prove_closed_equality(left, right), rep.unknown_vars, body)
    logger.info("proved B at code %d in %d lines", code, len(proof))
    return proof

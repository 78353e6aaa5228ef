"""
存在引入

由 phi[x := t] 的证明得到 exists x. phi（即 ~forall x. ~phi）：
    Q1:   forall x. ~phi -> ~phi[x := t]
    换质位 + DNI + MP
多变量时逐个引入，最内层的变量先引入，最外层最后。
"""

import logging
from typing import Dict, Sequence

from proof_forge.core.checker.schemas import find_substituted
from proof_forge.core.checker.verifier import check_proof
from proof_forge.core.codec.proofs import AnnotatedProof
from proof_forge.core.pa.printer import print_formula
from proof_forge.core.pa.syntax import (
    ForAll, Formula, Implies, Not, Term, Var, VarId, exists_, substitute,
)
from proof_forge.core.synth.builder import ProofBuilder
from proof_forge.errors import SynthesisError

logger = logging.getLogger(__name__)


def introduce(builder: ProofBuilder, instance_line: int, var: VarId, body: Formula) -> int:
    """在 builder 中由 body[var := t] 推出 exists var. body"""
    instance = builder.formula(instance_line)
    witness = find_substituted(body, var, instance)
    if witness is None or substitute(body, var, witness) != instance:
        raise SynthesisError(
            f"{print_formula(instance)} is not an instance of {print_formula(body)} at x{var}"
        )
    negated = Not(body)
    q1 = builder.axiom(Implies(ForAll(var, negated), Not(instance)), "Q1")
    flipped = builder.contrapose(q1)
    doubled = builder.mp(instance_line, builder.dni(instance))
    return builder.mp(doubled, flipped)


def existential_intro(proof: AnnotatedProof, var: VarId, body: Formula) -> AnnotatedProof:
    """
    由 proof（结论为 body[var := numeral(n)]）得到 exists var. body 的证明

    Raises:
        SynthesisError: proof 的结论不是所需实例
    """
    builder = ProofBuilder()
    line = builder.include(proof)
    result = introduce(builder, line, var, body)
    goal = exists_(var, body)
    out = builder.build(result)
    if not check_proof(out, goal):
        raise SynthesisError(f"existential introduction for x{var} failed the checker")
    return out


def witness_assignment(body: Formula, variables: Sequence[VarId],
                       instance: Formula) -> Dict[VarId, Term]:
    """从实例中读出各变量的见证项"""
    witnesses: Dict[VarId, Term] = {}
    for var in variables:
        witness = find_substituted(body, var, instance)
        witnesses[var] = witness if witness is not None else Var(var)
    return witnesses


def introduce_many(builder: ProofBuilder, instance_line: int,
                   variables: Sequence[VarId], body: Formula) -> int:
    """在 builder 中由全代换实例推出 exists x0 ... exists xn. body"""
    instance = builder.formula(instance_line)
    witnesses = witness_assignment(body, variables, instance)
    if substitute_terms_formula(body, witnesses) != instance:
        raise SynthesisError(f"{print_formula(instance)} is not an instance of the prefix body")

    current_line = instance_line
    current_body = body
    # 由内向外：先引入最后一个变量
    for position in range(len(variables) - 1, -1, -1):
        var = variables[position]
        outer: Dict[VarId, Term] = {v: witnesses[v] for v in variables[:position]}
        pattern = substitute_terms_formula(current_body, outer)
        current_line = introduce(builder, current_line, var, pattern)
        current_body = exists_(var, current_body)
    return current_line


def existential_intro_many(proof: AnnotatedProof, variables: Sequence[VarId],
                           body: Formula) -> AnnotatedProof:
    """
    多变量存在引入；variables 为空时原样返回 proof
    """
    if not variables:
        return proof
    builder = ProofBuilder()
    line = builder.include(proof)
    result = introduce_many(builder, line, list(variables), body)
    goal = body
    for var in reversed(list(variables)):
        goal = exists_(var, goal)
    out = builder.build(result)
    if not check_proof(out, goal):
        raise SynthesisError("existential introduction failed the checker")
    logger.debug("introduced %d existential quantifiers", len(variables))
    return out


def substitute_terms_formula(formula: Formula, mapping: Dict[VarId, Term]) -> Formula:
    """顺次代换封闭见证项"""
    for var, term in mapping.items():
        formula = substitute(formula, var, term)
    return formula

"""
证明检查器 C(k, a)

[职责]
- Task 1: a 是否编码一个公式序列（解码成功）
- Task 2: 每行是否有合法依据（公理实例 / MP / GEN）
- Task 3: 最后一行是否就是 k 所编码的公式

check_code 只返回布尔值；逐行诊断通过 explain_proof 获得。
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

from proof_forge.core.checker.schemas import AXIOM_TABLE, AxiomTable
from proof_forge.core.codec.godel import decode_formula
from proof_forge.core.codec.proofs import MP, AnnotatedProof, Axiom, Gen, decode_proof
from proof_forge.core.pa.printer import print_formula
from proof_forge.core.pa.syntax import ForAll, Formula, Implies
from proof_forge.errors import DecodeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineVerdict:
    number: int
    ok: bool
    reason: str


def _line_verdict(proof: AnnotatedProof, number: int, table: AxiomTable) -> LineVerdict:
    line = proof.line(number)
    warrant = line.warrant

    if isinstance(warrant, Axiom):
        if not table.has(warrant.schema_id):
            return LineVerdict(number, False, f"unknown axiom schema id {warrant.schema_id}")
        name = table.name_of(warrant.schema_id)
        if table.is_axiom_instance(line.formula, warrant.schema_id):
            return LineVerdict(number, True, f"instance of {name}")
        return LineVerdict(number, False, f"not an instance of {name}")

    if isinstance(warrant, MP):
        if not (1 <= warrant.l < number and 1 <= warrant.m < number):
            return LineVerdict(number, False, f"MP {warrant.l} {warrant.m} refers forward")
        minor = proof.line(warrant.l).formula
        major = proof.line(warrant.m).formula
        if major == Implies(minor, line.formula):
            return LineVerdict(number, True, f"MP from {warrant.l} and {warrant.m}")
        return LineVerdict(number, False, f"line {warrant.m} is not line {warrant.l} -> this line")

    if isinstance(warrant, Gen):
        if not 1 <= warrant.j < number:
            return LineVerdict(number, False, f"GEN {warrant.j} refers forward")
        if line.formula == ForAll(warrant.var, proof.line(warrant.j).formula):
            return LineVerdict(number, True, f"GEN of line {warrant.j} over x{warrant.var}")
        return LineVerdict(number, False, f"not forall x{warrant.var} of line {warrant.j}")

    return LineVerdict(number, False, f"unknown warrant {warrant!r}")


def explain_proof(proof: AnnotatedProof, goal: Optional[Formula] = None,
                  table: AxiomTable = AXIOM_TABLE) -> List[LineVerdict]:
    """逐行判定；给出 goal 时追加一条针对结论的判定（行号 0）"""
    verdicts = [_line_verdict(proof, n, table) for n in range(1, len(proof) + 1)]
    if goal is not None:
        if not proof.lines:
            verdicts.append(LineVerdict(0, False, "empty proof"))
        elif proof.conclusion == goal:
            verdicts.append(LineVerdict(0, True, "last line is the goal"))
        else:
            verdicts.append(LineVerdict(
                0, False, f"last line {print_formula(proof.conclusion)} is not the goal"
            ))
    return verdicts


def check_proof(proof: AnnotatedProof, goal: Formula, table: AxiomTable = AXIOM_TABLE) -> bool:
    if not proof.lines or proof.conclusion != goal:
        return False
    for number in range(1, len(proof) + 1):
        if not _line_verdict(proof, number, table).ok:
            logger.debug("line %d rejected", number)
            return False
    return True


def check_code(k: int, a: int, table: AxiomTable = AXIOM_TABLE) -> bool:
    """
    a 是否为 k 所编码公式的证明的编码；一切失败都返回 False
    """
    try:
        goal = decode_formula(k)
        proof = decode_proof(a)
    except DecodeError:
        return False
    return check_proof(proof, goal, table)

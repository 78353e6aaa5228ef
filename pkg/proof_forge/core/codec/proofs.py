"""
带依据标注的证明及其编码

[职责]
- ProofLine = (公式, 依据)；依据三种：公理模式编号 / MP(l, m) / Gen(j, x)
- 行号从 1 开始；MP(l, m) 要求第 m 行是 (第 l 行 -> 本行)
- 行编码 = pair(公式码, 依据码)，证明编码 = seq_code(行编码)
- 依据码：Axiom(s) -> pair(0, s)，MP(l, m) -> pair(1, pair(l, m))，
  Gen(j, v) -> pair(2, pair(j, v))

[注意]
序列编码每多一行比特长度约翻倍，只有短证明能真正物化为整数；
编码时传入 Budget 以便按估计值提前拒绝。
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from proof_forge.config import Budget
from proof_forge.core.codec.godel import decode_formula, encode_formula
from proof_forge.core.codec.pairing import checked_pair, seq_code, seq_decode, unpair
from proof_forge.core.pa.syntax import Formula, VarId
from proof_forge.errors import NotAFormulaCode, NotAProofCode, ProofFormatError

logger = logging.getLogger(__name__)

WARRANT_AXIOM = 0
WARRANT_MP = 1
WARRANT_GEN = 2


@dataclass(frozen=True)
class Axiom:
    schema_id: int


@dataclass(frozen=True)
class MP:
    """第 m 行须为 (第 l 行 -> 本行)"""

    l: int
    m: int


@dataclass(frozen=True)
class Gen:
    j: int
    var: VarId


Warrant = Union[Axiom, MP, Gen]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    warrant: Warrant


@dataclass(frozen=True)
class AnnotatedProof:
    """
    非空的标注证明

    构造时不检查行号引用，越界引用由检查器判为无效；
    encode_proof 要求引用合法。
    """

    lines: Tuple[ProofLine, ...]

    @classmethod
    def of(cls, lines: Sequence[ProofLine]) -> "AnnotatedProof":
        return cls(tuple(lines))

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self) -> Iterator[ProofLine]:
        return iter(self.lines)

    def line(self, number: int) -> ProofLine:
        """1-based 取行"""
        return self.lines[number - 1]

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula

    def bad_reference(self) -> Optional[int]:
        """第一个引用了非先前行的行号，全部合法时返回 None"""
        for number, line in enumerate(self.lines, start=1):
            warrant = line.warrant
            refs: List[int] = []
            if isinstance(warrant, MP):
                refs = [warrant.l, warrant.m]
            elif isinstance(warrant, Gen):
                refs = [warrant.j]
            if any(ref < 1 or ref >= number for ref in refs):
                return number
        return None


# -------------------------------------------------------------- warrants

def encode_warrant(warrant: Warrant, budget: Optional[Budget] = None) -> int:
    if isinstance(warrant, Axiom):
        return checked_pair(WARRANT_AXIOM, warrant.schema_id, budget)
    if isinstance(warrant, MP):
        return checked_pair(WARRANT_MP, checked_pair(warrant.l, warrant.m, budget), budget)
    return checked_pair(WARRANT_GEN, checked_pair(warrant.j, warrant.var, budget), budget)


def decode_warrant(code: int) -> Warrant:
    tag, payload = unpair(code)
    if tag == WARRANT_AXIOM:
        return Axiom(payload)
    if tag == WARRANT_MP:
        return MP(*unpair(payload))
    if tag == WARRANT_GEN:
        return Gen(*unpair(payload))
    raise NotAProofCode(f"unknown warrant tag {tag}")


# ---------------------------------------------------------------- proofs

def encode_line(line: ProofLine, budget: Optional[Budget] = None) -> int:
    return checked_pair(encode_formula(line.formula, budget),
                        encode_warrant(line.warrant, budget), budget)


def encode_proof(proof: AnnotatedProof, budget: Optional[Budget] = None) -> int:
    """
    证明编码

    Raises:
        ProofFormatError: 空证明或行号引用非法
        BudgetExceeded: 编码规模超过 budget.max_bits
    """
    if not proof.lines:
        raise ProofFormatError("a proof must have at least one line")
    bad = proof.bad_reference()
    if bad is not None:
        raise ProofFormatError(f"line {bad} refers to a line that is not strictly earlier")
    line_codes = [encode_line(line, budget) for line in proof.lines]
    code = seq_code(line_codes, budget)
    logger.debug("encoded %d-line proof into %d bits", len(proof), code.bit_length())
    return code


def decode_proof(code: int, max_lines: Optional[int] = None) -> AnnotatedProof:
    """
    证明解码（结构层面）；越界的 MP/GEN 引用保留，由检查器判定

    Raises:
        NotAProofCode: 空序列、某行公式码不属于 FC 或依据码非法
    """
    line_codes = seq_decode(code, limit=max_lines)
    if line_codes is None:
        raise NotAProofCode(f"proof exceeds {max_lines} lines")
    if not line_codes:
        raise NotAProofCode("empty sequence is not a proof")
    lines = []
    for number, line_code in enumerate(line_codes, start=1):
        formula_code, warrant_code = unpair(line_code)
        try:
            formula = decode_formula(formula_code)
        except NotAFormulaCode as exc:
            raise NotAProofCode(f"line {number}: {exc}") from exc
        lines.append(ProofLine(formula, decode_warrant(warrant_code)))
    return AnnotatedProof(tuple(lines))

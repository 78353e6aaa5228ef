"""
证明文件读写

格式（每行一步，行号从 1 开始严格递增）：
    <n>. <formula> ; AX <schema-name>
    <n>. <formula> ; MP <l> <m>
    <n>. <formula> ; GEN <j> x<k>
空行与以 # 开头的行被忽略。公式按原始结构读取，不折叠 S 链。
"""

import re
from pathlib import Path
from typing import List, Union

from proof_forge.core.checker.schemas import AXIOM_TABLE, AxiomTable
from proof_forge.core.codec.proofs import MP, AnnotatedProof, Axiom, Gen, ProofLine, Warrant
from proof_forge.core.pa.parser import parse_formula
from proof_forge.core.pa.printer import print_formula
from proof_forge.errors import FormulaSyntaxError, ProofFormatError, SchemaError

_STEP = re.compile(r"^\s*(\d+)\.\s*(.+)$")
_WARRANT = re.compile(r"^(AX)\s+(\w+)$|^(MP)\s+(\d+)\s+(\d+)$|^(GEN)\s+(\d+)\s+x(\d+)$")


def _parse_warrant(text: str, number: int, table: AxiomTable) -> Warrant:
    match = _WARRANT.match(text.strip())
    if match is None:
        raise ProofFormatError(f"step {number}: malformed warrant {text.strip()!r}")
    if match.group(1):
        try:
            return Axiom(table.id_of(match.group(2)))
        except SchemaError as exc:
            raise ProofFormatError(f"step {number}: {exc}") from exc
    if match.group(3):
        return MP(int(match.group(4)), int(match.group(5)))
    return Gen(int(match.group(7)), int(match.group(8)))


def read_proof(text: str, table: AxiomTable = AXIOM_TABLE) -> AnnotatedProof:
    """
    Raises:
        ProofFormatError: 行号不连续、依据格式错误或公式无法解析
    """
    lines: List[ProofLine] = []
    for row, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        match = _STEP.match(stripped)
        if match is None or ";" not in match.group(2):
            raise ProofFormatError(f"row {row}: expected '<n>. <formula> ; <warrant>'")
        number = int(match.group(1))
        if number != len(lines) + 1:
            raise ProofFormatError(f"row {row}: step number {number}, expected {len(lines) + 1}")
        formula_text, warrant_text = match.group(2).rsplit(";", 1)
        try:
            formula = parse_formula(formula_text, normalize_numerals=False)
        except FormulaSyntaxError as exc:
            raise ProofFormatError(f"row {row}: {exc}") from exc
        lines.append(ProofLine(formula, _parse_warrant(warrant_text, number, table)))
    if not lines:
        raise ProofFormatError("proof file contains no steps")
    return AnnotatedProof(tuple(lines))


def write_proof(proof: AnnotatedProof, table: AxiomTable = AXIOM_TABLE) -> str:
    rows = []
    for number, line in enumerate(proof.lines, start=1):
        warrant = line.warrant
        if isinstance(warrant, Axiom):
            tail = f"AX {table.name_of(warrant.schema_id)}"
        elif isinstance(warrant, MP):
            tail = f"MP {warrant.l} {warrant.m}"
        else:
            tail = f"GEN {warrant.j} x{warrant.var}"
        rows.append(f"{number}. {print_formula(line.formula)} ; {tail}")
    return "\n".join(rows) + "\n"


def load_proof(path: Union[str, Path]) -> AnnotatedProof:
    return read_proof(Path(path).read_text(encoding="utf-8"))


def save_proof(proof: AnnotatedProof, path: Union[str, Path]) -> None:
    Path(path).write_text(write_proof(proof), encoding="utf-8")

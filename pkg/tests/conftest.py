"""
测试公共夹具

证明语料 = assets/corpus/proofs 下手写的证明（同名 .pa 为目标公式）
加上合成器生成的闭项等式 / 不等式 / 存在引入证明。
"""

from pathlib import Path
from typing import List, Tuple

import pytest

from proof_forge.core.checker.proof_io import load_proof
from proof_forge.core.codec.proofs import AnnotatedProof
from proof_forge.core.pa.parser import parse_formula
from proof_forge.core.pa.syntax import Add, Eq, Formula, Mul, Succ, Var, numeral
from proof_forge.core.synth.arithmetic import (
    prove_closed_equality, prove_closed_inequality, prove_evaluation,
)
from proof_forge.core.synth.existential import existential_intro

from tests.strategies import codes_within_budget

CORPUS_DIR = Path(__file__).resolve().parent.parent / "assets" / "corpus"

CorpusEntry = Tuple[str, AnnotatedProof, Formula]


def hand_written_proofs() -> List[CorpusEntry]:
    entries: List[CorpusEntry] = []
    for path in sorted((CORPUS_DIR / "proofs").glob("*.prf")):
        goal_text = path.with_suffix(".pa").read_text(encoding="utf-8")
        goal = parse_formula(goal_text, normalize_numerals=False)
        entries.append((path.stem, load_proof(path), goal))
    return entries


def synthesized_proofs() -> List[CorpusEntry]:
    n = numeral
    entries: List[CorpusEntry] = []
    for a, b in [(0, 0), (1, 0), (0, 2), (2, 1), (2, 2), (3, 1)]:
        term = Add(n(a), n(b))
        entries.append((f"add_{a}_{b}", prove_closed_equality(term, n(a + b)), Eq(term, n(a + b))))
    for a, b in [(0, 3), (1, 1), (2, 2), (3, 2)]:
        term = Mul(n(a), n(b))
        entries.append((f"mul_{a}_{b}", prove_closed_equality(term, n(a * b)), Eq(term, n(a * b))))
    for a, b in [(0, 1), (1, 0), (2, 3), (4, 1)]:
        goal = prove_closed_inequality(n(a), n(b)).conclusion
        entries.append((f"neq_{a}_{b}", prove_closed_inequality(n(a), n(b)), goal))
    mixed = [
        (Add(Mul(n(2), n(2)), n(1)), n(5)),
        (Succ(Add(n(1), n(1))), n(3)),
        (Mul(Succ(n(1)), Add(n(1), n(0))), n(2)),
        (n(2), Add(n(1), n(1))),
    ]
    for index, (t, u) in enumerate(mixed):
        entries.append((f"mixed_{index}", prove_closed_equality(t, u), Eq(t, u)))
    entries.append(("neq_sum", prove_closed_inequality(Add(n(1), n(1)), n(3)),
                    prove_closed_inequality(Add(n(1), n(1)), n(3)).conclusion))
    for term in [Add(n(1), n(2)), Mul(n(2), n(3)), Succ(Succ(n(0)))]:
        proof = prove_evaluation(term)
        entries.append((f"eval_{len(entries)}", proof, proof.conclusion))
    body = Eq(Add(Var(0), n(1)), n(3))
    witness = prove_closed_equality(Add(n(2), n(1)), n(3))
    intro = existential_intro(witness, 0, body)
    entries.append(("exists_sum", intro, intro.conclusion))
    return entries


@pytest.fixture(scope="session")
def proof_corpus() -> List[CorpusEntry]:
    return hand_written_proofs() + synthesized_proofs()


@pytest.fixture(scope="session")
def e1_proof() -> AnnotatedProof:
    return load_proof(CORPUS_DIR / "proofs" / "e1_refl.prf")


@pytest.fixture(scope="session")
def coded_corpus(proof_corpus) -> List[Tuple[str, AnnotatedProof, Formula, int, int]]:
    entries = []
    for name, proof, goal in proof_corpus:
        codes = codes_within_budget(proof, goal)
        if codes is not None:
            entries.append((name, proof, goal, *codes))
    return entries

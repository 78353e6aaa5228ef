"""
证明合成：命题 / 等词工具、闭项（不）等式、存在引入
"""

import random

import pytest

from proof_forge.core.checker.schemas import schema_id
from proof_forge.core.checker.verifier import check_code, check_proof
from proof_forge.core.codec.proofs import Axiom
from proof_forge.core.pa.syntax import (
    ZERO, Add, Eq, Implies, Mul, Not, Succ, Term, Var, evaluate_term, exists_, numeral,
)
from proof_forge.core.synth.arithmetic import (
    prove_closed_equality, prove_closed_inequality, prove_evaluation,
)
from proof_forge.core.synth.builder import ProofBuilder
from proof_forge.core.synth.existential import existential_intro, existential_intro_many
from proof_forge.errors import SynthesisError

from tests.strategies import codes_within_budget

P = Eq(Var(0), ZERO)
Q = Eq(Var(1), ZERO)


def closed_term(rng: random.Random, depth: int, limit: int) -> Term:
    choice = rng.randrange(4 if depth > 0 else 1)
    if choice == 0:
        return numeral(rng.randrange(limit))
    if choice == 1:
        return Succ(closed_term(rng, depth - 1, limit))
    if choice == 2:
        return Add(closed_term(rng, depth - 1, limit), closed_term(rng, depth - 1, limit))
    return Mul(closed_term(rng, depth - 1, limit), closed_term(rng, depth - 1, limit))


def certified(builder: ProofBuilder, line: int, goal) -> bool:
    assert builder.formula(line) == goal
    return check_proof(builder.build(line), goal)


def test_identity_and_double_negation():
    builder = ProofBuilder()
    assert certified(builder, builder.identity(P), Implies(P, P))
    assert certified(builder, builder.dne(P), Implies(Not(Not(P)), P))
    assert certified(builder, builder.dni(P), Implies(P, Not(Not(P))))


def test_syllogism_and_contraposition():
    builder = ProofBuilder()
    pq = builder.weaken(builder.reflexivity(Var(1)), P)
    qr = builder.identity(Eq(Var(1), Var(1)))
    chained = builder.hs(pq, qr)
    assert certified(builder, chained, Implies(P, Eq(Var(1), Var(1))))
    flipped = builder.contrapose(chained)
    assert certified(builder, flipped, Implies(Not(Eq(Var(1), Var(1))), Not(P)))


def test_hs_rejects_mismatched_middle():
    builder = ProofBuilder()
    with pytest.raises(SynthesisError):
        builder.hs(builder.identity(P), builder.identity(Q))


def test_equality_toolkit():
    builder = ProofBuilder()
    two = prove_evaluation(Add(numeral(1), numeral(1)))
    line = builder.include(two)
    back = builder.symmetry(line)
    assert certified(builder, back, Eq(numeral(2), Add(numeral(1), numeral(1))))
    lifted = builder.cong_succ(line)
    assert certified(builder, lifted, Eq(Succ(Add(numeral(1), numeral(1))), Succ(numeral(2))))
    summed = builder.cong_add(line, builder.reflexivity(numeral(3)))
    assert certified(builder, summed,
                     Eq(Add(Add(numeral(1), numeral(1)), numeral(3)), Add(numeral(2), numeral(3))))
    product = builder.cong_mul(line, line)
    goal = Eq(Mul(Add(numeral(1), numeral(1)), Add(numeral(1), numeral(1))),
              Mul(numeral(2), numeral(2)))
    assert certified(builder, product, goal)
    assert certified(builder, builder.transitivity(back, line), Eq(numeral(2), numeral(2)))


def test_closed_equality_examples():
    goal = Eq(Add(numeral(2), numeral(2)), numeral(4))
    proof = prove_closed_equality(goal.left, goal.right)
    assert check_proof(proof, goal)
    single = prove_closed_equality(numeral(7), numeral(7))
    assert len(single) == 1 and single.lines[0].warrant == Axiom(schema_id("E1"))
    with pytest.raises(SynthesisError):
        prove_closed_equality(Mul(numeral(2), numeral(3)), numeral(5))
    with pytest.raises(SynthesisError):
        prove_closed_equality(Var(0), Var(0))


def test_closed_inequality_examples():
    one_line = prove_closed_inequality(Succ(ZERO), ZERO)
    assert check_proof(one_line, Not(Eq(Succ(ZERO), ZERO)))
    assert len(one_line) == 1
    descent = prove_closed_inequality(numeral(2), numeral(3))
    assert check_proof(descent, Not(Eq(numeral(2), numeral(3))))
    with pytest.raises(SynthesisError):
        prove_closed_inequality(ZERO, ZERO)


def test_evaluation_of_nested_term():
    term = Mul(Succ(numeral(2)), Add(numeral(1), numeral(3)))
    proof = prove_evaluation(term)
    assert proof.conclusion == Eq(term, numeral(12))


def test_existential_intro_examples():
    sum_proof = prove_closed_equality(Add(numeral(2), numeral(2)), numeral(4))
    body = Eq(Add(Var(0), numeral(2)), numeral(4))
    intro = existential_intro(sum_proof, 0, body)
    assert check_proof(intro, exists_(0, body))
    assert existential_intro_many(sum_proof, [], body) is sum_proof
    with pytest.raises(SynthesisError):
        existential_intro(sum_proof, 0, Eq(Add(Var(0), numeral(3)), numeral(4)))


def test_existential_intro_many_in_prefix_order():
    instance = prove_closed_equality(Add(numeral(1), numeral(2)), numeral(3))
    body = Eq(Add(Var(0), Var(1)), numeral(3))
    proof = existential_intro_many(instance, [0, 1], body)
    assert check_proof(proof, exists_(0, exists_(1, body)))


def self_certify(rng: random.Random, trials: int, limit: int) -> None:
    for _ in range(trials):
        t, u = closed_term(rng, 2, limit), closed_term(rng, 2, limit)
        if evaluate_term(t) == evaluate_term(u):
            proof, goal = prove_closed_equality(t, u), Eq(t, u)
        else:
            proof, goal = prove_closed_inequality(t, u), Not(Eq(t, u))
        assert check_proof(proof, goal)
        codes = codes_within_budget(proof, goal)
        if codes is not None:
            assert check_code(*codes)


def test_self_certification_small_values():
    self_certify(random.Random(17), 40, 4)


@pytest.mark.slow
def test_self_certification_200_trials():
    self_certify(random.Random(19), 200, 12)


def test_addition_proof_length_is_linear():
    lengths = []
    for n in range(1, 201, 20):
        proof = prove_closed_equality(Add(numeral(1), numeral(n)), numeral(n + 1))
        lengths.append(len(proof))
        assert len(proof) <= 60 * (n + 1)
    assert lengths == sorted(lengths)

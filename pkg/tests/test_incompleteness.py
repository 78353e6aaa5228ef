"""
对角关系、Gödel / Henkin 句与不可判定命题生成器
"""

import pytest

from proof_forge.config import Budget
from proof_forge.core.codec.godel import encode_formula
from proof_forge.core.incompleteness import (
    GODEL, HENKIN, IncompletenessContext, diagonal_of, godel_sentence, godel_theta,
    henkin_sentence, henkin_theta, is_diagonal_pair, is_diagonal_sentence, replay_certificate,
    undecidable_from,
)
from proof_forge.core.pa.digits import from_decimal, to_decimal
from proof_forge.core.pa.syntax import (
    ZERO, Eq, Not, Succ, Var, free_vars, is_closed, numeral,
)
from proof_forge.errors import BudgetExceeded, CertificateError, RepresentationError

from tests.conftest import hand_written_proofs


@pytest.fixture(scope="module")
def toy():
    return IncompletenessContext.toy()


# -------------------------------------------------------------- diagonal


def test_diagonal_pair_on_a_small_formula():
    psi = Eq(Var(0), Var(0))
    n = encode_formula(psi)
    m = encode_formula(Eq(numeral(n), numeral(n)))
    assert diagonal_of(n) == Eq(numeral(n), numeral(n))
    assert is_diagonal_pair(n, m)
    assert not is_diagonal_pair(n, m + 1)


def test_diagonal_needs_exactly_one_free_variable():
    closed = encode_formula(Eq(ZERO, ZERO))
    assert diagonal_of(closed) is None
    assert not is_diagonal_pair(closed, closed)
    assert diagonal_of(encode_formula(Eq(Var(0), Var(1)))) is None
    assert not is_diagonal_sentence(closed, Eq(ZERO, ZERO))


# --------------------------------------------------------------- context


def test_toy_context_layout(toy):
    assert toy.is_toy
    x, y = toy.slots
    assert (x, y) == (0, 1)
    assert toy.block == ()
    assert toy.provability.parameter_var > y
    assert free_vars(toy.provable(Var(y))) == frozenset({y})


def test_context_rejects_overlapping_representations(toy):
    with pytest.raises(RepresentationError):
        IncompletenessContext(toy.diagonal, toy.diagonal)


def test_pipeline_context_is_budget_guarded():
    with pytest.raises(BudgetExceeded):
        IncompletenessContext.from_pipeline(Budget(max_monomials=10))


# ------------------------------------------------------------- sentences


def test_thetas_have_one_free_variable(toy):
    x, _ = toy.slots
    assert free_vars(godel_theta(toy)) == frozenset({x})
    assert free_vars(henkin_theta(toy)) == frozenset({x})


def test_godel_sentence(toy):
    sentence, certificate = godel_sentence(toy)
    assert is_closed(sentence)
    assert certificate.kind == GODEL
    code = from_decimal(certificate.theta_code)
    assert code == encode_formula(godel_theta(toy))
    assert is_diagonal_sentence(code, sentence)
    assert replay_certificate(certificate) == sentence


def test_henkin_sentence(toy):
    sentence, certificate = henkin_sentence(toy)
    assert is_closed(sentence)
    assert certificate.kind == HENKIN
    assert is_diagonal_sentence(from_decimal(certificate.theta_code), sentence)
    assert replay_certificate(certificate) == sentence


def test_godel_and_henkin_differ(toy):
    godel, _ = godel_sentence(toy)
    henkin, _ = henkin_sentence(toy)
    assert godel != henkin


def test_tampered_certificate_is_refused(toy):
    _, certificate = godel_sentence(toy)
    forged = certificate.model_copy(
        update={"theta_code": to_decimal(from_decimal(certificate.theta_code) + 1)}
    )
    with pytest.raises(CertificateError):
        replay_certificate(forged)


def test_theta_size_is_budget_guarded(toy):
    with pytest.raises(BudgetExceeded):
        henkin_sentence(toy, Budget(max_bits=1000))


# ------------------------------------------------------------- generator


def test_undecidable_from_a_certified_theorem(toy, e1_proof):
    theorem = Eq(ZERO, ZERO)
    result = undecidable_from(theorem, e1_proof, toy, search_bound=20)
    code = encode_formula(Not(theorem))
    assert result.equation.code == code
    assert result.sentence == Not(toy.provable(numeral(code)))
    assert is_closed(result.sentence)
    report = result.report
    assert report.negation_code == to_decimal(code)
    assert report.search_bound == 20
    assert not report.solution_found
    assert report.toy and report.equation_unknowns == 0
    assert len(report.notes) == 2


def test_undecidable_from_refuses_uncertified_theorems(toy, e1_proof):
    with pytest.raises(CertificateError):
        undecidable_from(Eq(ZERO, Succ(ZERO)), e1_proof, toy, search_bound=1)


def test_distinct_theorems_give_distinct_equations(toy):
    entries = {name: (proof, goal) for name, proof, goal in hand_written_proofs()}
    codes = set()
    for name in ("e1_refl", "succ_not_zero"):
        proof, goal = entries[name]
        codes.add(undecidable_from(goal, proof, toy, search_bound=0).equation.code)
    assert len(codes) == 2


@pytest.mark.slow
@pytest.mark.parametrize("name", ["e1_refl", "succ_not_zero"])
def test_generated_equations_have_no_small_solution(toy, name):
    entries = {entry[0]: entry for entry in hand_written_proofs()}
    _, proof, goal = entries[name]
    result = undecidable_from(goal, proof, toy, search_bound=100_000)
    assert not result.report.solution_found

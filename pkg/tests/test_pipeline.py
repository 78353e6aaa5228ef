"""
锻造流水线：通用产物缓存、各阶段统计、可行性报告
"""

import pytest

from proof_forge.config import Budget
from proof_forge.core.codec.godel import encode_formula
from proof_forge.core.machine import CounterMachine, HaltAccept, load_machine
from proof_forge.core.pa.syntax import ZERO, Eq, free_vars
from proof_forge.core.representation import b_formula
from proof_forge.errors import BudgetExceeded
from proof_forge.pipeline import ForgePipeline

from tests.conftest import CORPUS_DIR

TRIVIAL = CounterMachine(2, (HaltAccept(),), inputs=2)


@pytest.fixture(scope="module")
def trivial_forge():
    return ForgePipeline(machine=TRIVIAL)


def test_corpus_machine_file_matches():
    assert load_machine(CORPUS_DIR / "machines" / "accept_all.cm") == TRIVIAL


def test_universal_artifacts_are_cached(trivial_forge):
    system = trivial_forge.universal_system
    assert system.parameters == ("k",)
    assert system.unknowns[0] == "a"
    assert trivial_forge.universal_system is system
    assert trivial_forge.polynomial_system.is_polynomial
    assert trivial_forge.universal_equation is trivial_forge.universal_equation


def test_universal_representation(trivial_forge):
    rep = trivial_forge.universal_representation(first_var=3)
    assert rep.parameter_to_var == {"k": 3}
    assert next(iter(rep.unknown_to_var)) == "a"
    assert free_vars(b_formula(rep)) == frozenset({3})


def test_proof_equation_uses_the_pipeline_machine(trivial_forge):
    formula = Eq(ZERO, ZERO)
    equation = trivial_forge.proof_equation(formula)
    assert equation.code == encode_formula(formula)
    assert equation.machine is TRIVIAL
    assert equation.search(3) == 0


def test_stage_stats(trivial_forge):
    stats = trivial_forge.stage_stats()
    assert [row.stage for row in stats] == ["exp", "mask", "exponential"]
    assert stats[0].materialized and not stats[-1].materialized
    assert stats[-1].unknowns == len(trivial_forge.polynomial_system.unknowns)


def test_feasibility_report_on_trivial_machine(trivial_forge, proof_corpus):
    report = trivial_forge.feasibility_report(proof_corpus)
    assert report.machine_instructions == 1
    assert report.smallest_proof == "e1_refl"
    assert report.checker_steps == 0
    assert len(report.stages) == 3
    assert (report.largest_witness_bits is None) == bool(report.refusals)


def test_feasibility_report_needs_a_corpus(trivial_forge):
    with pytest.raises(ValueError):
        trivial_forge.feasibility_report([])


def test_universal_equation_is_budget_guarded():
    forge = ForgePipeline(Budget(max_monomials=10), machine=TRIVIAL)
    with pytest.raises(BudgetExceeded):
        forge.universal_equation


@pytest.mark.slow
def test_feasibility_report_on_universal_checker(proof_corpus):
    report = ForgePipeline(Budget(max_steps=1000)).feasibility_report(proof_corpus)
    assert report.machine_instructions > 1
    assert report.refusals
    assert report.stages[0].stage == "exp"

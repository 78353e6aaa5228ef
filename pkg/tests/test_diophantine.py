"""
丢番图层：多项式、降阶、算术化、单一方程、有界搜索、证明方程
"""

import itertools
import random
from typing import Dict

import pytest

from proof_forge.config import Budget
from proof_forge.core.codec.godel import encode_formula
from proof_forge.core.codec.proofs import encode_proof
from proof_forge.core.diophantine import (
    DiophSystem, Equation, Exp, LoweringPipeline, Mask, Polynomial, ProofEquation, arithmetize,
    bounded_search, collapse, const, construct_witness, eliminate_exponentials, equation,
    evaluate, reduce_mask, tableau_bounds, to_natural_form, var,
)
from proof_forge.core.diophantine.lowering.pell import index_block_witness, pell_pair
from proof_forge.core.diophantine.search import integer_log, integer_root
from proof_forge.core.machine import CounterMachine, DecJz, HaltAccept, HaltReject, Inc, simulate
from proof_forge.core.pa.syntax import ZERO, Eq
from proof_forge.errors import BudgetExceeded, ParameterError, WitnessError

sympy = pytest.importorskip("sympy")

TRIVIAL = CounterMachine(2, (HaltAccept(),), inputs=2)
DECIDE = CounterMachine(1, (DecJz(0, 1, 2), HaltAccept(), HaltReject()), inputs=1)
ADDER = CounterMachine(2, (DecJz(0, 1, 2), Inc(1, 0), HaltAccept()), inputs=2)
NEEDS_PROOF = CounterMachine(2, (DecJz(1, 1, 2), HaltAccept(), HaltReject()), inputs=2)

x, y, z = var("x"), var("y"), var("z")
UNBOUNDED = 1 << 64


def traced(machine: CounterMachine, inputs):
    return simulate(machine, inputs, fuel=10_000, trace=True)


def random_poly(rng: random.Random, names=("x", "y", "z"), terms: int = 6,
                max_exp: int = 3, spread: int = 20) -> Polynomial:
    table: Dict = {}
    for _ in range(terms):
        exps = [rng.randint(0, max_exp) for _ in names]
        mono = tuple((n, e) for n, e in zip(names, exps) if e)
        table[mono] = rng.randint(-spread, spread)
    return Polynomial(table)


def reference_value(poly: Polynomial, w) -> int:
    total = 0
    for mono, coeff in poly.items():
        term = coeff
        for name, exp in mono:
            term *= w[name] ** exp
        total += term
    return total


def to_sympy(poly: Polynomial):
    return sum(
        (sympy.Integer(c) * sympy.Mul(*[sympy.Symbol(n) ** e for n, e in mono])
         for mono, c in poly.items()),
        sympy.Integer(0),
    )


# ----------------------------------------------------------- polynomial

def test_evaluate_examples():
    assert evaluate(x ** 2 + 1, {"x": 3}) == 10
    assert evaluate(Polynomial(), {"x": 5}) == 0
    with pytest.raises(WitnessError):
        evaluate(x + y, {"x": 1})


def test_evaluate_matches_reference():
    rng = random.Random(7)
    for _ in range(1000):
        poly = random_poly(rng)
        w = {n: rng.randint(0, 50) for n in ("x", "y", "z")}
        assert evaluate(poly, w) == reference_value(poly, w)


def test_algebra_against_sympy():
    rng = random.Random(11)
    for _ in range(60):
        p, q = random_poly(rng, terms=4), random_poly(rng, terms=4)
        assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
        assert sympy.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0
        assert sympy.expand(to_sympy(p ** 2) - to_sympy(p) ** 2) == 0
        image = p.substitute({"x": y + 1})
        expected = to_sympy(p).subs(sympy.Symbol("x"), sympy.Symbol("y") + 1)
        assert sympy.expand(to_sympy(image) - expected) == 0


def test_degree_and_linear_split():
    poly = 3 * x * y ** 2 - x + 4
    assert poly.degree() == 3 and poly.degree_in("y") == 2
    slope, rest = poly.linear_split("x")
    assert slope == 3 * y ** 2 - 1 and rest == 4
    assert poly.linear_split("y") is None


# ------------------------------------------------------- natural form

def test_natural_form_examples():
    left, right = to_natural_form(x ** 2 - 2 * x + 1)
    assert left == x ** 2 + 1 and right == 2 * x
    assert to_natural_form(x + 3) == (x + 3, Polynomial())


def test_natural_form_recombines():
    rng = random.Random(5)
    for _ in range(1000):
        poly = random_poly(rng)
        left, right = to_natural_form(poly)
        assert left - right == poly
        assert all(c > 0 for _, c in left.items()) and all(c > 0 for _, c in right.items())
        assert not {m for m, _ in left.items()} & {m for m, _ in right.items()}


# ------------------------------------------------------------- collapse

def test_collapse_examples():
    single = DiophSystem((), ("x",), [equation("x", 2)])
    assert collapse(single).polynomial == (x - 2) ** 2
    double = DiophSystem((), ("x", "y"), [equation("x", 1), equation("y", 2)])
    assert collapse(double).polynomial == (x - 1) ** 2 + (y - 2) ** 2


def test_collapse_zero_iff_conditions_hold():
    rng = random.Random(3)
    for _ in range(200):
        conditions = [
            equation(random_poly(rng, terms=2, max_exp=1, spread=2), rng.randint(0, 3))
            for _ in range(3)
        ]
        system = DiophSystem((), ("x", "y", "z"), conditions)
        eq = collapse(system)
        w = {n: rng.randint(0, 3) for n in ("x", "y", "z")}
        assert (eq.evaluate(w) == 0) == system.holds(w)


def test_collapse_refuses_exponential_conditions():
    system = DiophSystem(("u", "v", "w"), (), [Exp("u", "v", "w")])
    with pytest.raises(ValueError):
        collapse(system)


def test_collapse_respects_monomial_budget():
    system = DiophSystem((), ("x", "y", "z"), [equation((x + y + z + 1) ** 4, 0)])
    with pytest.raises(BudgetExceeded):
        collapse(system, Budget(max_monomials=100))


# -------------------------------------------------------------- equation

def test_parameter_to_unknown():
    eq = Equation(var("k") * x - var("a") ** 2, ("k", "a"), ("x",))
    moved = eq.parameter_to_unknown("a")
    assert moved.parameters == ("k",) and moved.unknowns == ("a", "x")
    assert moved.polynomial == eq.polynomial
    w = {"k": 2, "a": 4, "x": 8}
    assert moved.evaluate(w) == eq.evaluate(w) == 0
    with pytest.raises(ParameterError):
        moved.parameter_to_unknown("a")


def test_specialize_matches_binding():
    rng = random.Random(17)
    eq = Equation(var("k") ** 2 * x - 3 * var("k") * y + z, ("k",), ("x", "y", "z"))
    for _ in range(100):
        k = rng.randint(0, 30)
        w = {n: rng.randint(0, 30) for n in ("x", "y", "z")}
        special = eq.specialize("k", k)
        assert special.parameters == ()
        assert special.evaluate(w) == eq.evaluate({**w, "k": k})
    with pytest.raises(ParameterError):
        eq.specialize("x", 1)
    with pytest.raises(ParameterError):
        eq.specialize("k", -1)


def test_equation_rejects_undeclared_names():
    with pytest.raises(ParameterError):
        Equation(x + y, (), ("x",))


# ---------------------------------------------------------------- search

def brute_force(eq: Equation, bound: int):
    for values in itertools.product(range(bound + 1), repeat=len(eq.names)):
        w = dict(zip(eq.names, values))
        if eq.holds(w):
            return w
    return None


def test_search_examples():
    assert bounded_search(Equation.over((x - 2) ** 2), 10) == {"x": 2}
    assert bounded_search(Equation.over(x ** 2 + 1), 50) is None
    two = Equation.over((x - 1) ** 2 + (y - 3) ** 2)
    assert bounded_search(two, 5) == {"x": 1, "y": 3} == brute_force(two, 5)


@pytest.mark.parametrize("poly", [
    x + y - 3,
    x ** 2 + y ** 2 - 25,
    x * y - 6,
    (x - y) ** 2 + (z - 2) ** 2,
    x * y * z - 4 * z,
])
def test_search_is_lexicographically_least(poly):
    eq = Equation.over(poly)
    assert bounded_search(eq, 6) == brute_force(eq, 6)


def test_search_deterministic_across_workers():
    eq = Equation.over(x ** 2 + y ** 2 - 25)
    assert bounded_search(eq, 6, workers=4) == bounded_search(eq, 6) == {"x": 0, "y": 5}
    assert bounded_search(Equation.over(x ** 2 + 1), 20, workers=3) is None


def test_parallel_search_stops_at_the_first_solution():
    eq = Equation.over(x ** 2 - 4)
    assert bounded_search(eq, 10 ** 9, workers=2) == {"x": 2}
    assert bounded_search(eq, 10 ** 9, workers=8) == bounded_search(eq, 10 ** 9)


@pytest.mark.parametrize("workers", [1, 2, 4])
def test_node_budget_is_shared_across_workers(workers):
    eq = Equation.over(x ** 2 + y ** 2 - 50)
    with pytest.raises(BudgetExceeded) as exc:
        bounded_search(eq, 30, budget=Budget(max_steps=40), workers=workers)
    assert exc.value.requested == 41
    found = bounded_search(eq, 30, budget=Budget(max_steps=41), workers=workers)
    assert found == {"x": 1, "y": 7}


def test_exponential_with_a_repeated_name():
    system = DiophSystem((), ("x", "b"), (Exp("x", "b", "x"),))
    assert bounded_search(system, 10, fixed={"b": 1}) == {"b": 1, "x": 1}
    assert bounded_search(system, 10, fixed={"b": 2}) is None
    square = DiophSystem((), ("u", "x"), (Exp("u", "x", "x"),))
    assert bounded_search(square, 30) == {"u": 1, "x": 0}
    assert bounded_search(square, 30, fixed={"u": 27}) == {"u": 27, "x": 3}


def test_search_with_fixed_parameter_and_bounds():
    eq = Equation(var("k") * x - 12, ("k",), ("x",))
    assert bounded_search(eq, 20, fixed={"k": 4}) == {"k": 4, "x": 3}
    assert bounded_search(eq, 20, fixed={"k": 5}) is None
    assert bounded_search(eq, 20, bounds={"x": 2}, fixed={"k": 4}) is None


def test_search_node_budget():
    with pytest.raises(BudgetExceeded):
        bounded_search(Equation.over(x ** 2 + 1), 1000, budget=Budget(max_steps=50))


def test_integer_helpers():
    assert integer_root(3 ** 7, 7) == 3 and integer_root(30, 2) is None
    assert integer_root(0, 3) == 0 and integer_root(1, 9) == 1
    assert integer_log(81, 3) == 4 and integer_log(1, 5) == 0 and integer_log(10, 3) is None


def test_search_solves_exponential_conditions():
    system = DiophSystem((), ("u", "v", "w"), [Exp("u", "v", "w"), equation("u", 81),
                                               equation("v", 3)])
    assert bounded_search(system, 100) == {"u": 81, "v": 3, "w": 4}


# ---------------------------------------------------------- mask stage

MASK_SYSTEM = DiophSystem(("u", "v"), (), [Mask("u", "v")])


def test_mask_reduction_witness():
    lowered, transform = reduce_mask(MASK_SYSTEM)
    assert lowered.kinds()["MASK"] == 0 and lowered.kinds()["EXP"] == 3
    w = transform({"u": 5, "v": 7})
    assert lowered.holds(w)
    assert w["m0.C"] == 21


def test_mask_reduction_small_cases_exhaustive():
    lowered, transform = reduce_mask(MASK_SYSTEM)
    for v in range(8):
        for u in range(v + 1):
            if u & ~v:
                with pytest.raises(WitnessError):
                    transform({"u": u, "v": v})
            else:
                assert lowered.holds(transform({"u": u, "v": v}))


def test_mask_reduction_rejects_non_submask():
    lowered, _ = reduce_mask(MASK_SYSTEM)
    found = bounded_search(lowered, 10 ** 4, bounds={"m0.E": 1 << 40, "m0.Hq": 1 << 40},
                           fixed={"u": 2, "v": 5})
    assert found is None


def test_mask_reduction_search_finds_witness():
    lowered, transform = reduce_mask(MASK_SYSTEM)
    found = bounded_search(lowered, 10, fixed={"u": 1, "v": 1})
    assert found == transform({"u": 1, "v": 1})


def test_mask_reduction_without_masks_is_identity():
    system = DiophSystem((), ("x",), [equation("x", 2)])
    lowered, transform = reduce_mask(system)
    assert lowered is system and transform({"x": 2}) == {"x": 2}


# --------------------------------------------------- exponential stage

EXP_SYSTEM = DiophSystem(("u", "v", "w"), (), [Exp("u", "v", "w")])


def test_pell_pairs_solve_pell_equation():
    for a in range(2, 12):
        for n in range(8):
            px, py = pell_pair(a, n)
            assert px * px - (a * a - 1) * py * py == 1
    assert pell_pair(3, 3) == (99, 35)


def test_index_block_witness_values():
    w = index_block_witness("b", 3, 2)
    assert (w["b.x"], w["b.y"]) == pell_pair(3, 2)
    with pytest.raises(WitnessError):
        index_block_witness("b", 2, 2)


@pytest.mark.parametrize("v,w", [
    (v, w) for v in range(4) for w in range(4) if (v, w) not in {(2, 3), (3, 3)}
])
def test_exponential_elimination_witness(v, w):
    lowered, transform = eliminate_exponentials(EXP_SYSTEM)
    assert lowered.is_polynomial
    assignment = transform({"u": v ** w, "v": v, "w": w})
    assert lowered.holds(assignment)


@pytest.mark.slow
@pytest.mark.parametrize("v,w", [(2, 3), (3, 3)])
def test_exponential_elimination_large_witness(v, w):
    lowered, transform = eliminate_exponentials(EXP_SYSTEM)
    assert lowered.holds(transform({"u": v ** w, "v": v, "w": w}))


def test_exponential_elimination_rejects_wrong_power():
    _, transform = eliminate_exponentials(EXP_SYSTEM)
    with pytest.raises(WitnessError):
        transform({"u": 5, "v": 2, "w": 2})
    with pytest.raises(WitnessError):
        transform({"u": 0, "v": 1, "w": 2})


def test_exponential_elimination_respects_bit_budget():
    _, transform = eliminate_exponentials(EXP_SYSTEM, Budget(max_bits=10_000))
    with pytest.raises(BudgetExceeded):
        transform({"u": 2 ** 6, "v": 2, "w": 6})


def test_pipeline_estimate_matches_materialized_counts():
    pipeline = LoweringPipeline()
    lowered, _ = pipeline.run(MASK_SYSTEM)
    final = pipeline.estimate(MASK_SYSTEM.stats("input"))[-1]
    assert final.unknowns == len(lowered.unknowns)
    assert final.conditions == lowered.kinds()
    assert final.materialized is False


def test_pipeline_from_names():
    assert [s.name for s in LoweringPipeline.from_names(["mask"]).stages] == ["mask"]
    with pytest.raises(ValueError):
        LoweringPipeline.from_names(["nonsense"])


# ------------------------------------------------------- arithmetization

def test_parameter_naming():
    assert arithmetize(DECIDE).parameters == ("a",)
    assert arithmetize(ADDER).parameters == ("k", "a")
    assert arithmetize(ADDER, ("p", "q")).parameters == ("p", "q")
    with pytest.raises(ParameterError):
        arithmetize(ADDER, ("p",))


def test_trivial_machine_witness():
    system = arithmetize(TRIVIAL)
    for k, a in itertools.product(range(4), repeat=2):
        w = construct_witness(TRIVIAL, traced(TRIVIAL, [k, a]))
        assert w["t"] == 0 and w["L.0"] == 1
        assert system.holds(w)


def test_single_step_witness():
    w = construct_witness(DECIDE, traced(DECIDE, [1]))
    assert w["t"] == 1 and w["Y.0"] == 1
    assert arithmetize(DECIDE).holds(w)


def test_adder_witnesses():
    system = arithmetize(ADDER)
    for a, b in itertools.product(range(5), repeat=2):
        run = traced(ADDER, [a, b])
        w = construct_witness(ADDER, run)
        assert system.holds(w)
        assert w["last.1"] == a + b and w["t"] == run.steps
        broken = dict(w, **{"last.1": a + b + 1})
        assert system.failing(broken)


def test_long_adder_run_witness():
    run = traced(ADDER, [30, 0])
    assert run.steps == 61
    w = construct_witness(ADDER, run)
    assert arithmetize(ADDER).holds(w)
    assert max(w.values()).bit_length() <= (run.steps + 2) * (w["c"] + 1)


def test_witness_requires_accepting_traced_run():
    with pytest.raises(WitnessError):
        construct_witness(DECIDE, traced(DECIDE, [0]))
    with pytest.raises(WitnessError):
        construct_witness(DECIDE, simulate(DECIDE, [1], fuel=10))


def test_witness_respects_bit_budget():
    with pytest.raises(BudgetExceeded):
        construct_witness(ADDER, traced(ADDER, [30, 0]), budget=Budget(max_bits=50))


@pytest.mark.parametrize("a", range(6))
def test_decision_machine_search(a):
    system = arithmetize(DECIDE)
    found = bounded_search(system, UNBOUNDED, bounds=tableau_bounds(DECIDE, 1, 3),
                           fixed={"a": a})
    if a == 0:
        assert found is None
    else:
        assert found == construct_witness(DECIDE, traced(DECIDE, [a]))


@pytest.mark.parametrize("k,a", list(itertools.product(range(2), repeat=2)))
def test_adder_search_recovers_witness(k, a):
    found = bounded_search(arithmetize(ADDER), UNBOUNDED, bounds=tableau_bounds(ADDER, 3, 2),
                           fixed={"k": k, "a": a})
    assert found == construct_witness(ADDER, traced(ADDER, [k, a]))
    assert found["t"] == 2 * k + 1


def test_rejecting_inputs_have_no_small_solution():
    system = arithmetize(NEEDS_PROOF)
    bounds = tableau_bounds(NEEDS_PROOF, 2, 3)
    assert bounded_search(system, UNBOUNDED, bounds=bounds, fixed={"k": 3, "a": 0}) is None
    assert bounded_search(system, UNBOUNDED, bounds=bounds, fixed={"k": 3, "a": 2}) is not None


# 手写小机器与它们在输入 ≤ 3 上的判定
SMALL_MACHINES = {
    "accept_all": (CounterMachine(1, (HaltAccept(),), inputs=1), lambda a: True),
    "reject_all": (CounterMachine(1, (HaltReject(),), inputs=1), lambda a: False),
    "spin": (CounterMachine(1, (Inc(0, 0),), inputs=1), lambda a: False),
    "is_zero": (
        CounterMachine(1, (DecJz(0, 1, 2), HaltReject(), HaltAccept()), inputs=1),
        lambda a: a == 0,
    ),
    "even": (
        CounterMachine(1, (DecJz(0, 1, 3), DecJz(0, 0, 2), HaltReject(), HaltAccept()),
                       inputs=1),
        lambda a: a % 2 == 0,
    ),
    "at_least_two": (
        CounterMachine(1, (DecJz(0, 1, 3), DecJz(0, 2, 3), HaltAccept(), HaltReject()),
                       inputs=1),
        lambda a: a >= 2,
    ),
    "doubler": (
        CounterMachine(2, (DecJz(0, 1, 3), Inc(1, 2), Inc(1, 0), HaltAccept()), inputs=1),
        lambda a: True,
    ),
    "spin_on_odd": (
        CounterMachine(2, (DecJz(0, 1, 3), DecJz(0, 0, 2), Inc(1, 2), HaltAccept()),
                       inputs=1),
        lambda a: a % 2 == 0,
    ),
    "adder": (ADDER, lambda k, a: True),
    "at_most": (
        CounterMachine(2, (DecJz(0, 1, 3), DecJz(1, 0, 2), HaltReject(), HaltAccept()),
                       inputs=2),
        lambda k, a: k <= a,
    ),
    "equal": (
        CounterMachine(2, (DecJz(0, 1, 2), DecJz(1, 0, 3), DecJz(1, 3, 4), HaltReject(),
                           HaltAccept()), inputs=2),
        lambda k, a: k == a,
    ),
    "any_positive": (
        CounterMachine(2, (DecJz(0, 1, 2), Inc(1, 0), DecJz(1, 3, 4), HaltAccept(),
                           HaltReject()), inputs=2),
        lambda k, a: k + a > 0,
    ),
}


def small_machine_cases():
    for name, (machine, decides) in SMALL_MACHINES.items():
        for inputs in itertools.product(range(4), repeat=machine.inputs):
            yield pytest.param(machine, decides, inputs, id=f"{name}-{inputs}")


@pytest.mark.parametrize("machine, decides, inputs", small_machine_cases())
def test_small_machines_end_to_end(machine, decides, inputs):
    assert len(machine) <= 6
    system = arithmetize(machine)
    fixed = dict(zip(system.parameters, inputs))
    run = simulate(machine, inputs, fuel=50, trace=True)
    assert run.accepted == decides(*inputs)
    if not run.accepted:
        found = bounded_search(system, UNBOUNDED, bounds=tableau_bounds(machine, 2, 3),
                               fixed=fixed)
        assert found is None
        return
    w = construct_witness(machine, run)
    assert system.holds(w)
    assert all(w[name] == value for name, value in fixed.items())
    if run.steps <= 2:
        found = bounded_search(system, UNBOUNDED, bounds=tableau_bounds(machine, 2, 3),
                               fixed=fixed)
        assert found is not None and found["t"] == run.steps
        assert system.holds(found)
    if run.steps == 0:
        lowered, transform = LoweringPipeline().run(system)
        image = transform(w)
        assert lowered.holds(image)
        assert collapse(lowered).evaluate(image) == 0


# ----------------------------------------------------------- full chain

@pytest.mark.parametrize("k,a", list(itertools.product(range(2), repeat=2)))
def test_trivial_machine_full_chain(k, a):
    system = arithmetize(TRIVIAL)
    lowered, transform = LoweringPipeline().run(system)
    assert lowered.is_polynomial
    w = transform(construct_witness(TRIVIAL, traced(TRIVIAL, [k, a])))
    assert lowered.holds(w)
    eq = collapse(lowered)
    assert eq.evaluate(w) == 0
    left, right = to_natural_form(eq.polynomial)
    assert left.evaluate(w) == right.evaluate(w)


def test_one_step_run_exceeds_default_budget():
    lowered, transform = LoweringPipeline().run(arithmetize(DECIDE))
    w = construct_witness(DECIDE, traced(DECIDE, [1]))
    with pytest.raises(BudgetExceeded):
        transform(w)


# ------------------------------------------------------ proof equation

def test_proof_equation_toy_machine():
    eq = ProofEquation(3, machine=NEEDS_PROOF)
    assert eq.search(5) == 1
    assert eq.system.parameters == () and eq.system.unknowns[0] == "a"
    w = eq.witness_for(4)
    assert w["a"] == 4 and eq.system.holds(w)
    with pytest.raises(WitnessError):
        eq.witness_for(0)
    a, solution = eq.solve(5)
    assert a == 1 and eq.system.holds(solution)


def test_proof_equation_polynomial_stage():
    eq = ProofEquation(1, machine=TRIVIAL)
    w = eq.witness_for(0, stage="poly")
    assert eq.polynomial_system.holds(w)
    assert eq.equation.evaluate(w) == 0
    with pytest.raises(ValueError):
        eq.witness_for(0, stage="nonsense")


def test_universal_proof_equation_decisions(e1_proof):
    k = encode_formula(Eq(ZERO, ZERO))
    eq = ProofEquation(k)
    assert eq.accepts(encode_proof(e1_proof))
    assert not eq.accepts(0)
    assert ProofEquation(17).search(300) is None


def test_universal_witness_is_budget_guarded(e1_proof):
    k = encode_formula(Eq(ZERO, ZERO))
    eq = ProofEquation(k, budget=Budget(max_steps=1000))
    with pytest.raises(BudgetExceeded):
        eq.witness_for(encode_proof(e1_proof))


def test_constant_helpers():
    assert const(3) + x == x + 3
    assert str(equation(x, 2).difference) in {"x - 2", "-2 + x"}

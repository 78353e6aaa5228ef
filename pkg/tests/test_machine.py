"""
计数器机：模拟器、MiniLang、编译器、检查器程序与对角程序
"""

import random
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

import pytest

from proof_forge.core.checker.verifier import check_code
from proof_forge.core.codec.godel import decode_formula, encode_formula
from proof_forge.core.codec.pairing import pair
from proof_forge.core.codec.proofs import MP, AnnotatedProof, Axiom, Gen, ProofLine, encode_proof
from proof_forge.core.incompleteness import diag_machine
from proof_forge.core.machine import (
    Call, CounterMachine, DecJz, HaltAccept, HaltReject, Inc, MiniBuilder, MiniProgram, Outcome,
    accepts, checker_program, compile_minilang, diag_program, format_minilang, interpret,
    parse_minilang, read_machine, simulate, universal_checker_machine, write_machine,
)
from proof_forge.core.machine.interpreter import apply_macro
from proof_forge.core.machine.minilang import (
    MACROS, Clear, Decrement, IfZero, Increment, SetConst, Statement, While,
)
from proof_forge.core.pa.syntax import (
    ZERO, Add, Eq, ForAll, Formula, Implies, Not, Succ, Var, free_vars, naive_substitute, numeral,
)
from proof_forge.errors import DecodeError, MachineError, MiniLangError

from tests.strategies import random_term

ADDER = CounterMachine(2, (DecJz(0, 1, 2), Inc(1, 0), HaltAccept()), inputs=2)


def run_program(source: str, inputs: Sequence[int], fuel: int = 1_000_000):
    program = parse_minilang(source)
    machine = compile_minilang(program)
    return program, machine, simulate(machine, inputs, fuel)


def register_values(machine: CounterMachine, run, names: Sequence[str]) -> List[int]:
    return [run.registers[machine.register(name)] for name in names]


# ------------------------------------------------------------ simulator

def test_single_instruction_machine():
    machine = CounterMachine(1, (DecJz(0, 1, 2), HaltAccept(), HaltReject()), inputs=1)
    run = simulate(machine, [1], fuel=10)
    assert run.outcome == Outcome.ACCEPT and run.steps == 1
    assert simulate(machine, [0], fuel=10).outcome == Outcome.REJECT


def test_adder_matches_addition():
    for a in range(21):
        for b in range(21):
            run = simulate(ADDER, [a, b], fuel=1000)
            assert run.accepted and run.registers[1] == a + b
            assert run.steps == 2 * a + 1


def test_acceleration_preserves_step_counts():
    for a, b in [(0, 0), (5, 2), (40, 1)]:
        fast = simulate(ADDER, [a, b], fuel=10_000)
        slow = simulate(ADDER, [a, b], fuel=10_000, accelerate=False)
        assert fast == slow


def test_out_of_fuel_and_monotonicity():
    short = simulate(ADDER, [10, 0], fuel=5)
    assert short.outcome == Outcome.OUT_OF_FUEL and not short.halted
    full = simulate(ADDER, [10, 0], fuel=21, trace=True)
    longer = simulate(ADDER, [10, 0], fuel=500, trace=True)
    assert full.accepted and longer.accepted
    assert full.trace == longer.trace


def test_trace_has_one_configuration_per_step():
    run = simulate(ADDER, [3, 4], fuel=100, trace=True)
    assert len(run.trace) == run.steps + 1
    assert run.trace[0] == (0, (3, 4))
    assert run.trace[-1] == (2, (0, 7))


def test_machine_validation():
    with pytest.raises(MachineError):
        CounterMachine(1, (Inc(1, 0),))
    with pytest.raises(MachineError):
        CounterMachine(1, (Inc(0, 5),))
    with pytest.raises(MachineError):
        CounterMachine(2, (Inc(1, 1), HaltAccept()), zero_register=1)
    with pytest.raises(MachineError):
        simulate(ADDER, [1], fuel=10)


def test_machine_text_round_trip():
    machine = compile_minilang(parse_minilang("input x; output y; var y; add(y, x, x);"))
    again = read_machine(write_machine(machine))
    assert again == machine
    assert again.names == machine.names
    with pytest.raises(MachineError):
        read_machine("0: ACCEPT\n")
    with pytest.raises(MachineError):
        read_machine("REGS 1\n1: ACCEPT\n")


# ------------------------------------------------------------- MiniLang

def test_parse_and_format():
    source = """
    # doubling
    input x;
    output y;
    var y;
    while x > 0 { dec x; inc y; inc y; }
    if y = 0 { accept; } else { set x 3; }
    divmod(x, y, y, x);
    """
    program = parse_minilang(source)
    assert program.inputs == ("x",) and program.outputs == ("y",)
    assert parse_minilang(format_minilang(program)) == program


@pytest.mark.parametrize("source", [
    "input x; inc y;",
    "input x; frob(x, x);",
    "input x; var y; add(y, x);",
    "input x; var y; divmod(y, y, x, x);",
    "input x; var x;",
    "input x; output z;",
    "input x; while x > 0 { ",
])
def test_minilang_rejects_bad_programs(source):
    with pytest.raises(MiniLangError):
        parse_minilang(source)


def test_interpreter_macros():
    assert apply_macro("pair", [1, 2]) == (8,)
    assert apply_macro("unpair", [8]) == (1, 2)
    assert apply_macro("divmod", [17, 5]) == (3, 2)
    assert apply_macro("divmod", [17, 0]) == (0, 17)
    assert apply_macro("sub", [3, 5]) == (0,)
    assert apply_macro("eq", [4, 4]) == (1,) and apply_macro("eq", [4, 5]) == (0,)


def test_interpreter_statement_limit():
    program = parse_minilang("input x; while x > 0 { inc x; }")
    assert interpret(program, [1], max_statements=50).outcome == Outcome.OUT_OF_FUEL
    assert interpret(program, [0]).accepted


# ------------------------------------------------------------- compiler

def test_compiled_loop_zeroes_register():
    _, machine, run = run_program("input v; while v > 0 { dec v; }", [9])
    assert run.accepted and register_values(machine, run, ["v"]) == [0]


def test_compiled_pair_and_divmod():
    _, machine, run = run_program("input x, y; var z; pair(z, x, y);", [1, 2])
    assert register_values(machine, run, ["z"]) == [8]
    _, machine, run = run_program("input x, y; var q, r; divmod(q, r, x, y);", [17, 5])
    assert register_values(machine, run, ["q", "r"]) == [3, 2]
    _, machine, run = run_program("input x, y; var q, r; divmod(q, r, x, y);", [17, 0])
    assert register_values(machine, run, ["q", "r"]) == [0, 17]


@pytest.mark.parametrize("macro, arity", [
    ("add", 2), ("sub", 2), ("mul", 2), ("pair", 2), ("copy", 1), ("eq", 2),
])
def test_compiled_single_target_macros(macro, arity):
    args = ", ".join(["x", "y"][:arity])
    source = f"input x, y; var z; {macro}(z, {args});"
    program = parse_minilang(source)
    machine = compile_minilang(program)
    for x in range(6):
        for y in range(6):
            run = simulate(machine, [x, y], fuel=1_000_000)
            expected = interpret(program, [x, y]).env["z"]
            assert run.accepted and register_values(machine, run, ["z"]) == [expected]


def test_compiled_unpair_with_aliasing():
    source = "input c; var x; unpair(x, c, c);"
    program = parse_minilang(source)
    machine = compile_minilang(program)
    for c in range(40):
        run = simulate(machine, [c], fuel=1_000_000)
        assert register_values(machine, run, ["x", "c"]) == list(apply_macro("unpair", [c]))


def test_compiled_unpair_keeps_its_source():
    source = "input c; var x, y; unpair(x, y, c);"
    program = parse_minilang(source)
    machine = compile_minilang(program)
    for c in list(range(40)) + [10 ** 5, 10 ** 9 + 7]:
        run = simulate(machine, [c], fuel=10 ** 11)
        assert register_values(machine, run, ["x", "y", "c"]) == [*apply_macro("unpair", [c]), c]


@pytest.mark.parametrize("source, value, limit", [
    ("input c; var x; unpair(x, c, c);", 10 ** 6, 4 * 10 ** 6),
    ("input c; var x, y; unpair(x, y, c);", 10 ** 6, 7 * 10 ** 6),
    ("input c; var z; pair(z, c, c);", 1000, 4 * 2_002_000),
])
def test_compiled_pairing_is_linear(source, value, limit):
    _, _, run = run_program(source, [value], fuel=10 ** 9)
    assert run.accepted and run.steps < limit


def test_compiled_equality_costs_the_smaller_side():
    _, machine, run = run_program("input x, y; var z; eq(z, x, y);", [10 ** 12, 3])
    assert register_values(machine, run, ["z", "x", "y"]) == [0, 10 ** 12, 3]
    assert run.steps < 100
    _, machine, run = run_program("input x, y; var z; eq(z, x, y);", [10 ** 6, 10 ** 6],
                                  fuel=10 ** 8)
    assert register_values(machine, run, ["z"]) == [1]


def test_compiled_targets_skip_jumps():
    program = parse_minilang(
        "input x, y; var z; if x = 0 { inc z; } else { dec x; while y > 0 { dec y; inc z; } }"
    )
    machine = compile_minilang(program)
    zero = machine.zero_register
    jumps = {
        index for index, instr in enumerate(machine.program)
        if isinstance(instr, DecJz) and instr.reg == zero
    }
    for instr in machine.program:
        if isinstance(instr, Inc):
            assert instr.next not in jumps
        elif isinstance(instr, DecJz):
            assert instr.if_positive not in jumps and instr.if_zero not in jumps
    for x, y in [(0, 0), (0, 4), (3, 0), (3, 4)]:
        run = simulate(machine, [x, y], fuel=1000)
        assert register_values(machine, run, ["z"]) == [1 if x == 0 else y]


def test_acceleration_covers_loops_over_several_registers():
    program = parse_minilang(
        "input x, y; var z, u, v; eq(z, x, y); pair(u, x, y); unpair(u, v, u);"
    )
    machine = compile_minilang(program)
    for x, y in [(0, 0), (7, 7), (7, 30), (45, 2)]:
        fast = simulate(machine, [x, y], fuel=10 ** 6)
        slow = simulate(machine, [x, y], fuel=10 ** 6, accelerate=False)
        assert fast == slow and fast.accepted
        assert register_values(machine, fast, ["z", "u", "v"]) == [int(x == y), x, y]
    cut = simulate(machine, [45, 2], fuel=333)
    assert cut == simulate(machine, [45, 2], fuel=333, accelerate=False)
    assert cut.outcome == Outcome.OUT_OF_FUEL and cut.steps == 333


def test_compiled_reject_and_fallthrough():
    _, _, run = run_program("input x; if x = 0 { reject; }", [0])
    assert run.outcome == Outcome.REJECT
    _, _, run = run_program("input x; if x = 0 { reject; }", [2])
    assert run.accepted


def test_compiled_names_hide_internal_registers():
    machine = compile_minilang(parse_minilang("input x; var y; add(y, x, x);"))
    assert set(machine.names) == {"x", "y"}
    assert machine.zero_register == machine.registers - 1


INPUTS = ("a", "b")
LOCALS = ("c", "d", "e")
LOOP_MACROS = ("add", "sub", "copy", "divmod", "unpair", "eq")
TOP_MACROS = LOOP_MACROS + ("mul", "pair")


def random_call(rng: random.Random, macros: Sequence[str]) -> Call:
    name = rng.choice(macros)
    arity, targets = MACROS[name]
    chosen = rng.sample(LOCALS, targets)
    sources = [rng.choice(INPUTS + LOCALS) for _ in range(arity - targets)]
    return Call(name, tuple(chosen) + tuple(sources))


def random_block(rng: random.Random, depth: int, counters: frozenset) -> List[Statement]:
    body: List[Statement] = []
    for _ in range(rng.randint(1, 4)):
        choice = rng.randrange(7 if depth > 0 else 5)
        target = rng.choice(LOCALS)
        if choice == 0:
            body.append(Increment(target))
        elif choice == 1:
            body.append(Decrement(target))
        elif choice == 2:
            body.append(rng.choice([Clear(target), SetConst(target, rng.randrange(4))]))
        elif choice in (3, 4):
            body.append(random_call(rng, LOOP_MACROS if counters else TOP_MACROS))
        elif choice == 5:
            tested = rng.choice(INPUTS + LOCALS)
            orelse = tuple(random_block(rng, depth - 1, counters)) if rng.random() < 0.5 else ()
            body.append(IfZero(tested, tuple(random_block(rng, depth - 1, counters)), orelse))
        else:
            free = [name for name in INPUTS if name not in counters]
            if not free:
                continue
            counter = rng.choice(free)
            inner = random_block(rng, depth - 1, counters | {counter})
            body.append(While(counter, (Decrement(counter),) + tuple(inner)))
    return body


def differential_run(rng: random.Random) -> Optional[bool]:
    """解释执行与编译执行一致时返回 True；规模超出时返回 None"""
    program = MiniProgram(INPUTS, LOCALS[:2], LOCALS, tuple(random_block(rng, 2, frozenset())))
    inputs = [rng.randrange(4), rng.randrange(4)]
    expected = interpret(program, inputs, max_statements=5000)
    if expected.outcome == Outcome.OUT_OF_FUEL or max(expected.env.values()) > 2000:
        return None
    machine = compile_minilang(program)
    run = simulate(machine, inputs, fuel=300_000)
    if not run.halted:
        return None
    assert run.outcome == expected.outcome
    if run.accepted:
        assert register_values(machine, run, program.declared) == [
            expected.env[name] for name in program.declared
        ]
    return True


def test_compiler_differential_small():
    rng = random.Random(23)
    compared = sum(1 for _ in range(300) if differential_run(rng))
    assert compared >= 100


@pytest.mark.slow
def test_compiler_differential_1000():
    rng = random.Random(29)
    compared = sum(1 for _ in range(1000) if differential_run(rng))
    assert compared >= 300


def test_builder_switch_and_checks():
    b = MiniBuilder(inputs=("x",), outputs=("y",))
    b.declare("y")
    b.switch("x", {0: lambda: b.set("y", 10), 2: lambda: b.set("y", 20)})
    program = b.build()
    assert interpret(program, [0]).env["y"] == 10
    assert interpret(program, [2]).env["y"] == 20
    assert interpret(program, [1]).outcome == Outcome.REJECT
    assert interpret(program, [7]).outcome == Outcome.REJECT


def test_builder_stacks_and_sequences():
    b = MiniBuilder(inputs=("x", "y"), outputs=("s", "top"))
    b.declare("s", "top")
    b.clear("s")
    b.push("s", "x")
    b.push("s", "y")
    b.pop("top", "s")
    program = b.build()
    env = interpret(program, [4, 9]).env
    assert env["top"] == 9
    assert env["s"] == apply_macro("pair", [4, 0])[0] + 1


# ----------------------------------------------------- checker program

def interpreted_check(k: int, a: int) -> bool:
    return interpret(checker_program(), [k, a]).accepted


def test_checker_program_examples(e1_proof):
    k = encode_formula(Eq(ZERO, ZERO))
    a = encode_proof(e1_proof)
    assert interpreted_check(k, a)
    assert not interpreted_check(k, 0)
    assert not interpreted_check(k + 1, a)


def test_checker_program_random_sweep():
    rng = random.Random(31)
    for _ in range(500):
        k, a = rng.randrange(10 ** 6), rng.randrange(10 ** 6)
        assert interpreted_check(k, a) == check_code(k, a)


def test_checker_program_on_corpus(coded_corpus):
    assert coded_corpus
    for name, proof, goal, k, a in coded_corpus:
        assert interpreted_check(k, a), name
        wrong_goal = encode_formula(Not(goal))
        assert not interpreted_check(wrong_goal, a), name


def test_checker_program_on_mutated_corpus(coded_corpus):
    for name, proof, goal, k, _ in coded_corpus:
        for index, proof_line in enumerate(proof.lines):
            warrant = proof_line.warrant
            if isinstance(warrant, Axiom):
                mutated = Axiom(warrant.schema_id % 15 + 1)
            elif isinstance(warrant, MP):
                mutated = MP(warrant.m, warrant.l)
            else:
                mutated = Gen(warrant.j, warrant.var + 1)
            lines = list(proof.lines)
            lines[index] = replace(proof_line, warrant=mutated)
            a = encode_proof(AnnotatedProof(tuple(lines)))
            assert interpreted_check(k, a) == check_code(k, a), (name, index)


def schema_candidates(rng: random.Random) -> List[Formula]:
    """各公理模式的近似实例（有的满足附加条件，有的不满足）"""
    v = rng.randrange(2)
    t = random_term(rng, 1)
    phi = Eq(random_term(rng, 1), random_term(rng, 1))
    psi = Eq(random_term(rng, 1), Var(v))
    x = Var(v)
    return [
        Implies(phi, Implies(psi, phi)),
        Implies(ForAll(v, phi), naive_substitute(phi, v, t)),
        Implies(ForAll(v, ForAll(1 - v, psi)), naive_substitute(ForAll(1 - v, psi), v, t)),
        Implies(ForAll(v, Implies(phi, psi)), Implies(phi, ForAll(v, psi))),
        Eq(t, t),
        Implies(Eq(t, x), Implies(Eq(Add(t, t), t), Eq(Add(t, x), x))),
        Not(Eq(Succ(t), ZERO)),
        Implies(Eq(Succ(t), Succ(x)), Eq(t, x)),
        Eq(Add(t, ZERO), t),
        Eq(Add(t, Succ(x)), Succ(Add(t, x))),
        Implies(naive_substitute(phi, v, ZERO),
                Implies(ForAll(v, Implies(phi, naive_substitute(phi, v, Succ(x)))),
                        ForAll(v, phi))),
        Eq(numeral(rng.randrange(1, 4)), Succ(numeral(rng.randrange(3)))),
    ]


def test_checker_program_schema_differential():
    rng = random.Random(37)
    for _ in range(4):
        for formula in schema_candidates(rng):
            k = encode_formula(formula)
            for schema in range(1, 16):
                a = encode_proof(AnnotatedProof.of([ProofLine(formula, Axiom(schema))]))
                assert interpreted_check(k, a) == check_code(k, a), (formula, schema)


def test_universal_machine_on_tiny_inputs():
    machine = universal_checker_machine()
    assert machine.inputs == 2
    for k in range(0, 60, 7):
        for a in range(0, 40, 3):
            run = simulate(machine, [k, a], fuel=2_000_000)
            assert run.halted
            assert run.accepted == check_code(k, a)


def machine_sweep_pairs(rng: random.Random) -> List[Tuple[int, int]]:
    """单行证明码（公式 0 = 0，依据码 0..5）、它们的小扰动、随机数，共 500 对"""
    zero_eq = encode_formula(Eq(ZERO, ZERO))
    codes = [pair(pair(zero_eq, warrant), 0) + 1 for warrant in range(6)]
    pairs = [(k, a) for a in codes for k in (zero_eq, zero_eq + 1, 0, rng.randrange(10 ** 6))]
    for a in codes:
        for delta in range(1, 21):
            pairs += [(zero_eq, a + delta), (zero_eq, a - delta)]
    while len(pairs) < 500:
        pairs.append((rng.randrange(10 ** 6), rng.randrange(10 ** 6)))
    return pairs


def test_universal_machine_sweep_within_fuel():
    machine = universal_checker_machine()
    pairs = machine_sweep_pairs(random.Random(43))
    assert len(pairs) == 500
    for k, a in pairs:
        run = simulate(machine, [k, a], fuel=10 ** 7)
        assert run.halted, (k, a)
        assert run.accepted == check_code(k, a), (k, a)
    assert not any(check_code(k, a) for k, a in pairs)


def test_universal_machine_accepts_smallest_proof(e1_proof):
    k = encode_formula(Eq(ZERO, ZERO))
    a = encode_proof(e1_proof)
    machine = universal_checker_machine()
    assert accepts(machine, [k, a], fuel=10 ** 8)
    assert simulate(machine, [k + 1, a], fuel=10 ** 8).outcome == Outcome.REJECT


# -------------------------------------------------------- diag program

def expected_diagonal(n: int, m: int) -> bool:
    try:
        psi = decode_formula(n)
        decode_formula(m)
    except DecodeError:
        return False
    variables = free_vars(psi)
    if len(variables) != 1:
        return False
    (var,) = variables
    return encode_formula(naive_substitute(psi, var, numeral(n))) == m


def interpreted_diag(n: int, m: int) -> bool:
    return interpret(diag_program(), [n, m]).accepted


def test_diag_program_examples():
    psi = Eq(Var(0), ZERO)
    n = encode_formula(psi)
    m = encode_formula(Eq(numeral(n), ZERO))
    assert interpreted_diag(n, m) and expected_diagonal(n, m)
    assert not interpreted_diag(n, encode_formula(Eq(numeral(n + 1), ZERO)))
    closed = encode_formula(Eq(ZERO, ZERO))
    assert not interpreted_diag(closed, closed)
    two = encode_formula(Eq(Var(0), Var(1)))
    assert not interpreted_diag(two, encode_formula(Eq(numeral(two), Var(1))))


def test_diag_program_respects_binding():
    two = Implies(Eq(Var(2), Var(2)), ForAll(2, Eq(Var(2), Var(3))))
    assert free_vars(two) == {2, 3}
    assert not interpreted_diag(encode_formula(two), encode_formula(two))
    single = ForAll(1, Implies(Eq(Var(1), Var(0)), Not(Eq(Var(0), ZERO))))
    n = encode_formula(single)
    m = encode_formula(naive_substitute(single, 0, numeral(n)))
    assert interpreted_diag(n, m)
    assert not interpreted_diag(n, encode_formula(single))


def test_diag_program_differential():
    rng = random.Random(41)
    for _ in range(60):
        var = rng.randrange(3)
        psi = Eq(Add(Var(var), random_term(rng, 0)), numeral(rng.randrange(3)))
        if rng.random() < 0.5:
            psi = ForAll(3, Implies(psi, Eq(Var(3), Var(var))))
        n = encode_formula(psi)
        good = encode_formula(naive_substitute(psi, var, numeral(n)))
        for m in (good, good + 1, n):
            assert interpreted_diag(n, m) == expected_diagonal(n, m)


def test_diag_machine_rejects_within_fuel():
    machine = diag_machine()
    closed = encode_formula(Eq(ZERO, ZERO))
    for n, m in [(0, 0), (5, closed), (closed, 5), (closed, closed)]:
        run = simulate(machine, [n, m], fuel=10 ** 7)
        assert run.outcome == Outcome.REJECT, (n, m)
        assert not expected_diagonal(n, m)
        assert not interpreted_diag(n, m)

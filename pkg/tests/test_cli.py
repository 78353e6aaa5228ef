"""
forge 命令行：子命令委托、退出码、产物文件可重新读取
"""

import json

import pytest

from proof_forge.core.checker import check_proof, load_proof
from proof_forge.core.codec.godel import encode_formula
from proof_forge.core.codec.proofs import encode_proof
from proof_forge.core.diophantine import load_equation, load_system, read_equation
from proof_forge.core.incompleteness import diag_machine
from proof_forge.core.machine import load_machine
from proof_forge.core.pa.digits import from_decimal
from proof_forge.core.pa.parser import parse_formula
from proof_forge.core.pa.syntax import ZERO, Eq
from proof_forge.core.representation import represent, w_sequence
from proof_forge.tools.forge import main

from tests.conftest import CORPUS_DIR

PROOFS = CORPUS_DIR / "proofs"
EQUATIONS = CORPUS_DIR / "equations"
ACCEPT_ALL = CORPUS_DIR / "machines" / "accept_all.cm"


def run(capsys, *argv):
    status = main([str(arg) for arg in argv])
    captured = capsys.readouterr()
    return status, captured.out, captured.err


# ------------------------------------------------------------- formulas


def test_parse_normalizes_unless_raw(capsys):
    assert run(capsys, "parse", "--text", "S(S(0)) = 2")[1] == "2 = 2\n"
    assert run(capsys, "parse", "--raw", "--text", "S(S(0)) = 2")[1] == "S(S(0)) = 2\n"


def test_encode_and_decode(capsys):
    code = encode_formula(Eq(ZERO, ZERO))
    status, out, _ = run(capsys, "encode", "--text", "0 = 0")
    assert status == 0 and out == f"{code}\n"
    status, out, _ = run(capsys, "decode", "--code", code)
    assert status == 0 and out == "0 = 0\n"


def test_decode_rejects_non_codes(capsys):
    status, _, err = run(capsys, "decode", "--code", "2")
    assert status == 1 and err.startswith("error:")


def test_numeral_limit_guard(capsys):
    status, _, err = run(capsys, "--numeral-limit", "3", "parse", "--text", "12345 = 0")
    assert status == 1 and "out of budget" in err
    status, out, _ = run(capsys, "--numeral-limit", "3", "--allow-huge",
                         "parse", "--text", "12345 = 0")
    assert status == 0 and out == "12345 = 0\n"


# ---------------------------------------------------------------- proofs


def test_check_valid_proof(capsys, e1_proof):
    status, out, _ = run(capsys, "check", "--formula", PROOFS / "e1_refl.pa",
                         "--proof", PROOFS / "e1_refl.prf")
    assert status == 0
    assert out.splitlines() == ["VALID", str(encode_proof(e1_proof))]


def test_check_invalid_proof_with_trace(capsys):
    status, out, _ = run(capsys, "check", "--text", "0 = S(0)",
                         "--proof", PROOFS / "e1_refl.prf", "--trace")
    assert status == 1
    lines = out.splitlines()
    assert lines[-1] == "INVALID"
    assert lines[0].startswith("ok ") and lines[1].startswith("BAD")
    assert len(lines) == 3


def test_missing_file_is_a_domain_error(capsys, tmp_path):
    status, _, err = run(capsys, "check", "--formula", tmp_path / "missing.pa",
                         "--proof", PROOFS / "e1_refl.prf")
    assert status == 1 and err.startswith("error:")


def test_prove_eq_writes_a_checked_proof(capsys, tmp_path):
    out = tmp_path / "sum.prf"
    assert run(capsys, "prove-eq", "--text", "(1 + 1) = 2", "--out", out)[0] == 0
    goal = parse_formula("(1 + 1) = 2", normalize_numerals=False)
    assert check_proof(load_proof(out), goal)
    assert run(capsys, "prove-eq", "--text", "~(1 = 2)")[0] == 1


def test_usage_errors_exit_with_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    capsys.readouterr()


@pytest.mark.parametrize("argv", [
    ["decode"],
    ["decode", "--code", "3", "--code-file", "code.txt"],
    ["parse"],
    ["encode"],
    ["check", "--proof", "e1_refl.prf"],
    ["parse", "--text", "0 = 0", "--formula", "f.pa"],
    ["equation", "--out", "out.dph"],
    ["equation", "--universal", "--text", "0 = 0", "--out", "out.dph"],
    ["w-seq", "--steps", "1"],
    ["undecidable", "--proof", "e1_refl.prf"],
])
def test_missing_or_conflicting_inputs_are_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "usage:" in capsys.readouterr().err


# ------------------------------------------------------ machines, equations


def test_machine_emits_the_diagonal_machine(capsys, tmp_path):
    out = tmp_path / "diag.cm"
    assert run(capsys, "machine", "--diag", "--out", out)[0] == 0
    assert load_machine(out) == diag_machine()


def test_equation_and_witness_agree(capsys, tmp_path):
    system_file = tmp_path / "zero.dph"
    witness_file = tmp_path / "witness.json"
    assert run(capsys, "equation", "--text", "0 = 0", "--machine", ACCEPT_ALL,
               "--out", system_file)[0] == 0
    assert run(capsys, "witness", "--text", "0 = 0", "--machine", ACCEPT_ALL,
               "--code", "0", "--out", witness_file)[0] == 0
    system = load_system(system_file)
    witness = {name: from_decimal(value)
               for name, value in json.loads(witness_file.read_text()).items()}
    assert witness["a"] == 0
    assert system.holds(witness)


def test_equation_final_stage_reloads(capsys, tmp_path):
    out = tmp_path / "zero.eq"
    assert run(capsys, "equation", "--text", "0 = 0", "--machine", ACCEPT_ALL,
               "--stage", "equation", "--out", out)[0] == 0
    equation = load_equation(out)
    assert equation.parameters == ()
    assert equation.unknowns[0] == "a"


def test_search(capsys):
    status, out, _ = run(capsys, "search", "--equation", EQUATIONS / "square.eq")
    assert status == 0 and out == "x = 1\n"
    status, out, _ = run(capsys, "--workers", "2", "search",
                         "--equation", EQUATIONS / "pythagoras.eq", "--bound", "6")
    assert out.splitlines() == ["x = 0", "y = 5"]
    status, out, _ = run(capsys, "search", "--equation", EQUATIONS / "even.eq", "--fix", "k=6")
    assert "x = 3" in out.splitlines()
    status, out, _ = run(capsys, "search", "--equation", EQUATIONS / "square.eq", "--bound", "0")
    assert status == 0 and out.startswith("NO SOLUTION")


def test_search_on_a_system_file(capsys):
    status, out, _ = run(capsys, "search", "--equation", EQUATIONS / "affine.dph",
                         "--bound", "8")
    assert status == 0
    assert out.splitlines() == ["x = 0", "y = 1", "b = 2", "z = 1"]


def test_search_rejects_bad_fix(capsys):
    status, _, err = run(capsys, "search", "--equation", EQUATIONS / "even.eq", "--fix", "k")
    assert status == 1 and "name=value" in err


# --------------------------------------------------------- representation


def test_represent_lists_the_variable_map(capsys):
    status, out, _ = run(capsys, "represent", "--equation", EQUATIONS / "even.eq")
    assert status == 0
    lines = out.splitlines()
    assert lines[1:] == ["# k -> x0", "# x -> x1"]


def test_w_seq_with_a_toy_equation(capsys):
    equation = read_equation((EQUATIONS / "even.eq").read_text(encoding="utf-8"))
    expected = w_sequence(Eq(ZERO, ZERO), 1, represent(equation))
    status, out, _ = run(capsys, "w-seq", "--text", "0 = 0",
                         "--equation", EQUATIONS / "even.eq", "--steps", "1")
    assert status == 0
    assert [parse_formula(line) for line in out.splitlines()] == expected
    assert run(capsys, "w-seq", "--text", "0 = 0", "--equation", EQUATIONS / "even.eq",
               "--steps", "0")[0] == 1


def test_b_of_with_a_toy_equation(capsys):
    status, out, _ = run(capsys, "b-of", "--text", "0 = 0", "--equation", EQUATIONS / "even.eq")
    assert status == 0
    assert "2" in out and "x1" in out


# ---------------------------------------------------------- incompleteness


def test_godel_needs_allow_huge(capsys, tmp_path):
    status, _, err = run(capsys, "--numeral-limit", "100", "godel", "--out-dir", tmp_path)
    assert status == 1 and "out of budget" in err


def test_godel_writes_a_certificate(capsys, tmp_path):
    status, _, _ = run(capsys, "--allow-huge", "godel", "--out-dir", tmp_path)
    assert status == 0
    theta = parse_formula((tmp_path / "godel_theta.pa").read_text(encoding="utf-8"),
                          normalize_numerals=False)
    code = from_decimal((tmp_path / "godel_theta.code").read_text(encoding="utf-8").strip())
    assert encode_formula(theta) == code
    assert (tmp_path / "godel.pa").exists()
    sidecar = json.loads((tmp_path / "godel.json").read_text(encoding="utf-8"))
    assert sidecar["kind"] == "godel" and sidecar["toy"] is True and "version" in sidecar


@pytest.mark.slow
def test_undecidable_writes_equation_sentence_and_report(capsys, tmp_path):
    status, out, _ = run(capsys, "undecidable", "--theorem", PROOFS / "e1_refl.pa",
                         "--proof", PROOFS / "e1_refl.prf", "--bound", "5",
                         "--out-dir", tmp_path)
    assert status == 0 and "no solution" in out
    report = json.loads((tmp_path / "report.json").read_text(encoding="utf-8"))
    assert report["solution_found"] is False and report["toy"] is True
    assert load_system(tmp_path / "negation.dph").parameters == ()
    assert parse_formula((tmp_path / "sentence.pa").read_text(encoding="utf-8"))


def test_undecidable_refuses_uncertified_theorems(capsys, tmp_path):
    status, _, err = run(capsys, "undecidable", "--text", "0 = S(0)",
                         "--proof", PROOFS / "e1_refl.prf", "--out-dir", tmp_path)
    assert status == 1 and "does not certify" in err

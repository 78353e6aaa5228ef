#!/usr/bin/env python3
"""
forge 命令行工具

每个子命令对应一个构造：解析 / 编码 / 检查 / 合成 / 机器 / 方程 / 见证 / 搜索 /
表示 / B / W 序列 / Gödel / Henkin / 不可判定命题 / 可行性报告。

退出码：0 成功；1 领域错误（含预算超限）；2 用法错误（argparse）。
产物文件中不含时间与版本，版本只写进 JSON 附带报告。
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

from proof_forge import __version__
from proof_forge.config import Budget, ForgeSettings, get_settings, setup_logging
from proof_forge.core.checker import (
    check_proof, explain_proof, load_proof, read_proof, write_proof,
)
from proof_forge.core.codec import decode_formula, encode_formula, encode_proof
from proof_forge.core.diophantine import (
    DiophSystem, Equation, ProofEquation, bounded_search, collapse, read_equation, read_system,
    save_equation, save_system,
)
from proof_forge.core.diophantine.io import is_system_text
from proof_forge.core.diophantine.proof_equation import STAGES
from proof_forge.core.incompleteness import (
    IncompletenessContext, diag_machine, godel_sentence, henkin_sentence, undecidable_from,
)
from proof_forge.core.machine import load_machine, universal_checker_machine, write_machine
from proof_forge.core.machine.ir import CounterMachine
from proof_forge.core.pa.digits import decimal_digits, from_decimal, to_decimal
from proof_forge.core.pa.parser import parse_formula
from proof_forge.core.pa.printer import print_formula
from proof_forge.core.pa.syntax import Eq, Formula, evaluate_term, is_closed
from proof_forge.core.representation import (
    Representation, b_of, check_numeral_limit, machine_system, represent, w_sequence,
)
from proof_forge.core.synth import prove_closed_equality, prove_closed_inequality
from proof_forge.errors import BudgetExceeded, ForgeError
from proof_forge.pipeline import ForgePipeline

logger = logging.getLogger(__name__)

DEFAULT_CORPUS = Path(__file__).resolve().parents[2] / "assets" / "corpus" / "proofs"


@dataclass(frozen=True)
class Session:
    """一次命令行调用的全局选项"""

    budget: Budget
    workers: int
    numeral_limit: int
    allow_huge: bool

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: ForgeSettings) -> "Session":
        budget = Budget.from_settings(settings)
        if args.budget:
            budget = budget.scaled(args.budget)
        return cls(
            budget=budget,
            workers=args.workers or settings.workers,
            numeral_limit=args.numeral_limit or settings.numeral_digit_limit,
            allow_huge=args.allow_huge or settings.allow_huge,
        )

    def formula_text(self, formula: Formula) -> str:
        check_numeral_limit(formula, self.numeral_limit, self.allow_huge)
        return print_formula(formula)

    def number_text(self, value: int) -> str:
        digits = decimal_digits(value)
        if digits > self.numeral_limit and not self.allow_huge:
            raise BudgetExceeded("numeral digits", self.numeral_limit, digits)
        return to_decimal(value)


# ------------------------------------------------------------------ helpers


def _read_text(path: Union[str, Path]) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    logger.info("wrote %s", out)


def _formula(args: argparse.Namespace, attr: str = "formula") -> Formula:
    """--formula 文件或 --text 文本；按原样读取（不折叠 S 链）"""
    text = args.text if args.text is not None else _read_text(getattr(args, attr))
    return parse_formula(text, normalize_numerals=False)


def _machine(args: argparse.Namespace) -> CounterMachine:
    if getattr(args, "machine", None):
        return load_machine(args.machine)
    return universal_checker_machine()


def _load_target(path: str) -> Union[Equation, DiophSystem]:
    text = _read_text(path)
    if is_system_text(text):
        return read_system(text)
    return read_equation(text)


def _load_equation(path: str, session: Session) -> Equation:
    target = _load_target(path)
    if isinstance(target, Equation):
        return target
    return collapse(target, session.budget)


def _provability(args: argparse.Namespace, session: Session) -> Representation:
    """--equation 给出的单参数方程；缺省时用通用方程（受预算约束）"""
    if args.equation:
        return represent(_load_equation(args.equation, session), budget=session.budget)
    return ForgePipeline(session.budget).universal_representation()


def _parse_fixed(items: Sequence[str]) -> Dict[str, int]:
    fixed: Dict[str, int] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise ForgeError(f"--fix expects name=value, got {item!r}")
        fixed[name.strip()] = from_decimal(value.strip())
    return fixed


def _sidecar(path: Path, payload: dict) -> None:
    payload = {"version": __version__, **payload}
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


# ---------------------------------------------------------------- commands


def cmd_parse(args: argparse.Namespace, session: Session) -> int:
    text = args.text if args.text is not None else _read_text(args.formula)
    formula = parse_formula(text, normalize_numerals=not args.raw)
    _emit(session.formula_text(formula), args.out)
    return 0


def cmd_encode(args: argparse.Namespace, session: Session) -> int:
    _emit(session.number_text(encode_formula(_formula(args), session.budget)), args.out)
    return 0


def cmd_decode(args: argparse.Namespace, session: Session) -> int:
    code = from_decimal(args.code.strip()) if args.code else from_decimal(
        _read_text(args.code_file).strip()
    )
    _emit(session.formula_text(decode_formula(code)), args.out)
    return 0


def cmd_check(args: argparse.Namespace, session: Session) -> int:
    goal = _formula(args)
    proof = load_proof(args.proof)
    if args.trace:
        for verdict in explain_proof(proof, goal):
            status = "ok " if verdict.ok else "BAD"
            sys.stdout.write(f"{status} {verdict.number:>4}  {verdict.reason}\n")
    if check_proof(proof, goal):
        sys.stdout.write("VALID\n")
        sys.stdout.write(session.number_text(encode_proof(proof, session.budget)) + "\n")
        return 0
    sys.stdout.write("INVALID\n")
    return 1


def cmd_prove_eq(args: argparse.Namespace, session: Session) -> int:
    formula = _formula(args)
    if not isinstance(formula, Eq) or not is_closed(formula):
        raise ForgeError(f"expected a closed equation, got {print_formula(formula)}")
    if evaluate_term(formula.left) == evaluate_term(formula.right):
        proof = prove_closed_equality(formula.left, formula.right)
    else:
        proof = prove_closed_inequality(formula.left, formula.right)
    _emit(write_proof(proof), args.out)
    return 0


def cmd_machine(args: argparse.Namespace, session: Session) -> int:
    machine = diag_machine() if args.diag else universal_checker_machine()
    _emit(write_machine(machine), args.out)
    return 0


def cmd_equation(args: argparse.Namespace, session: Session) -> int:
    machine = _machine(args)
    if args.universal:
        system = machine_system(machine, ForgePipeline.PARAMETERS, existential=("a",))
        if args.stage == "exp":
            save_system(system, args.out)
        else:
            forge = ForgePipeline(session.budget, machine)
            if args.stage == "poly":
                save_system(forge.polynomial_system, args.out)
            else:
                save_equation(forge.universal_equation, args.out)
        return 0
    code = encode_formula(_formula(args), session.budget)
    proof_equation = ProofEquation(code, machine, session.budget)
    if args.stage == "exp":
        save_system(proof_equation.system, args.out)
    elif args.stage == "poly":
        save_system(proof_equation.polynomial_system, args.out)
    else:
        save_equation(proof_equation.equation, args.out)
    return 0


def cmd_witness(args: argparse.Namespace, session: Session) -> int:
    code = encode_formula(_formula(args), session.budget)
    if args.proof:
        a = encode_proof(load_proof(args.proof), session.budget)
    elif args.code is not None:
        a = from_decimal(args.code)
    else:
        raise ForgeError("give --proof FILE or --code A")
    witness = ProofEquation(code, _machine(args), session.budget).witness_for(a, args.stage)
    payload = {name: to_decimal(value) for name, value in witness.items()}
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def cmd_search(args: argparse.Namespace, session: Session) -> int:
    target = _load_target(args.equation)
    bound = args.bound if args.bound is not None else session.budget.search_bound
    try:
        found = bounded_search(target, bound, fixed=_parse_fixed(args.fix),
                               budget=session.budget, workers=session.workers)
    except KeyError as exc:
        raise ForgeError(str(exc.args[0])) from None
    if found is None:
        sys.stdout.write(f"NO SOLUTION with every unknown <= {bound}\n")
        return 0
    for name in target.names:
        sys.stdout.write(f"{name} = {session.number_text(found[name])}\n")
    return 0


def cmd_represent(args: argparse.Namespace, session: Session) -> int:
    rep = represent(_load_equation(args.equation, session), args.first_var, session.budget)
    lines = [session.formula_text(rep.formula)]
    for name, index in rep.variables.items():
        lines.append(f"# {name} -> x{index}")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_b_of(args: argparse.Namespace, session: Session) -> int:
    rep = _provability(args, session)
    _emit(session.formula_text(b_of(_formula(args), rep, session.budget)), args.out)
    return 0


def cmd_w_seq(args: argparse.Namespace, session: Session) -> int:
    rep = _provability(args, session)
    sequence = w_sequence(_formula(args), args.steps, rep, session.budget)
    _emit("\n".join(session.formula_text(item) for item in sequence), args.out)
    return 0


def _diagonal(args: argparse.Namespace, session: Session,
              build: Callable[..., tuple]) -> int:
    if args.pipeline:
        context = IncompletenessContext.from_pipeline(session.budget)
    else:
        context = IncompletenessContext.toy(session.budget)
    sentence, certificate = build(context, session.budget)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = certificate.kind
    check_numeral_limit(sentence, session.numeral_limit, session.allow_huge)
    (out / f"{stem}_theta.pa").write_text(certificate.theta + "\n", encoding="utf-8")
    (out / f"{stem}_theta.code").write_text(certificate.theta_code + "\n", encoding="utf-8")
    (out / f"{stem}.pa").write_text(certificate.sentence + "\n", encoding="utf-8")
    _sidecar(out / f"{stem}.json", {
        "kind": certificate.kind,
        "toy": context.is_toy,
        "theta_code_digits": len(certificate.theta_code),
    })
    sys.stdout.write(f"{stem} sentence written to {out / f'{stem}.pa'}\n")
    return 0


def cmd_godel(args: argparse.Namespace, session: Session) -> int:
    return _diagonal(args, session, godel_sentence)


def cmd_henkin(args: argparse.Namespace, session: Session) -> int:
    return _diagonal(args, session, henkin_sentence)


def cmd_undecidable(args: argparse.Namespace, session: Session) -> int:
    theorem = _formula(args, "theorem")
    proof = load_proof(args.proof)
    context = (IncompletenessContext.from_pipeline(session.budget) if args.pipeline
               else IncompletenessContext.toy(session.budget))
    result = undecidable_from(theorem, proof, context, args.bound, session.budget)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_system(result.equation.system, out / "negation.dph")
    (out / "sentence.pa").write_text(session.formula_text(result.sentence) + "\n",
                                     encoding="utf-8")
    _sidecar(out / "report.json", result.report.model_dump())
    for note in result.report.notes:
        sys.stdout.write(f"- {note}\n")
    sys.stdout.write(
        f"searched proof codes <= {result.report.search_bound}: "
        f"{'SOLUTION FOUND' if result.report.solution_found else 'no solution'}\n"
    )
    return 0


def cmd_report(args: argparse.Namespace, session: Session) -> int:
    corpus = []
    for path in sorted(Path(args.corpus).glob("*.prf")):
        goal = parse_formula(path.with_suffix(".pa").read_text(encoding="utf-8"),
                             normalize_numerals=False)
        corpus.append((path.stem, read_proof(_read_text(path)), goal))
    report = ForgePipeline(session.budget).feasibility_report(corpus)
    payload = {"version": __version__, **report.model_dump()}
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


# ------------------------------------------------------------------ parser


def _formula_inputs(parser: argparse.ArgumentParser,
                    name: str = "formula") -> argparse._MutuallyExclusiveGroup:
    """--<name> 文件与 --text 二选一且必须给出；缺少时以用法错误退出"""
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument(f"--{name}", help="PA formula file")
    group.add_argument("--text", help="PA formula given inline")
    return group


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="forge", description="PA proofs as Diophantine equations")
    parser.add_argument("--budget", type=int, default=0,
                        help="scale every resource limit by this factor")
    parser.add_argument("--workers", type=int, default=0, help="bounded-search workers")
    parser.add_argument("--numeral-limit", type=int, default=0,
                        help="largest numeral (decimal digits) printed without --allow-huge")
    parser.add_argument("--allow-huge", action="store_true", help="print numerals of any size")
    parser.add_argument("--env-file", help="dotenv file read before FORGE_* variables")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="read a formula and print its normalized form")
    _formula_inputs(p)
    p.add_argument("--raw", action="store_true", help="keep S-chains unfolded")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_parse)

    p = sub.add_parser("encode", help="Gödel code of a formula")
    _formula_inputs(p)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_encode)

    p = sub.add_parser("decode", help="formula with the given Gödel code")
    code = p.add_mutually_exclusive_group(required=True)
    code.add_argument("--code")
    code.add_argument("--code-file")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_decode)

    p = sub.add_parser("check", help="check a proof file against a formula")
    _formula_inputs(p)
    p.add_argument("--proof", required=True)
    p.add_argument("--trace", action="store_true", help="print a verdict per line")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("prove-eq", help="synthesize a proof of a closed (in)equality")
    _formula_inputs(p)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_prove_eq)

    p = sub.add_parser("machine", help="emit the universal checker machine")
    p.add_argument("--diag", action="store_true", help="emit the diagonal machine instead")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_machine)

    p = sub.add_parser("equation", help="proof equation of a formula, or the universal one")
    _formula_inputs(p).add_argument("--universal", action="store_true",
                                    help="the equation with the formula code as parameter")
    p.add_argument("--machine", help="counter machine file standing in for the checker")
    p.add_argument("--stage", choices=STAGES, default="exp")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_equation)

    p = sub.add_parser("witness", help="exact solution from an accepting run")
    _formula_inputs(p)
    p.add_argument("--proof")
    p.add_argument("--code", help="proof code a")
    p.add_argument("--machine")
    p.add_argument("--stage", choices=STAGES, default="exp")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_witness)

    p = sub.add_parser("search", help="bounded search on an equation or system file")
    p.add_argument("--equation", required=True)
    p.add_argument("--bound", type=int)
    p.add_argument("--fix", action="append", default=[], metavar="NAME=VALUE")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("represent", help="PA representation of an equation")
    p.add_argument("--equation", required=True)
    p.add_argument("--first-var", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_represent)

    for name, handler, helptext in (("b-of", cmd_b_of, "the sentence B((#F)')"),
                                    ("w-seq", cmd_w_seq, "the sequence W1 .. Wt")):
        p = sub.add_parser(name, help=helptext)
        _formula_inputs(p)
        p.add_argument("--equation", help="one-parameter equation used as B")
        p.add_argument("--out")
        if name == "w-seq":
            p.add_argument("--steps", type=int, default=1)
        p.set_defaults(handler=handler)

    for name, handler in (("godel", cmd_godel), ("henkin", cmd_henkin)):
        p = sub.add_parser(name, help=f"{name} sentence with its certificate")
        p.add_argument("--pipeline", action="store_true",
                       help="use the real representations instead of the desk-scale ones")
        p.add_argument("--out-dir", default=".")
        p.set_defaults(handler=handler)

    p = sub.add_parser("undecidable", help="equation and sentence from a certified theorem")
    _formula_inputs(p, "theorem")
    p.add_argument("--proof", required=True)
    p.add_argument("--bound", type=int)
    p.add_argument("--pipeline", action="store_true")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(handler=cmd_undecidable)

    p = sub.add_parser("report", help="feasibility table")
    p.add_argument("--corpus", default=str(DEFAULT_CORPUS))
    p.add_argument("--out")
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings(args.env_file)
    setup_logging("DEBUG" if args.verbose > 1 else "INFO" if args.verbose else settings.log_level)
    session = Session.from_args(args, settings)
    try:
        return args.handler(args, session)
    except BudgetExceeded as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    except (ForgeError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

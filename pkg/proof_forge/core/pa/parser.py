"""
PA 公式解析器

[职责]
- 基于 lark 的 LALR 文法，把文本读成 Formula
- 二元联结词与二元项运算一律带括号；括号内的 -> 右结合
- 默认对结果做数字规范化（S 链折叠为 Numeral）
"""

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from proof_forge.core.pa.digits import from_decimal
from proof_forge.errors import FormulaSyntaxError, UnknownSymbolError
from proof_forge.core.pa.syntax import (
    Add, Eq, ForAll, Formula, Implies, Mul, Not, Succ, Term, Var,
    and_, exists_, iff_, normalize, normalize_term, numeral, or_,
)

PA_GRAMMAR = r"""
    start: formula
    term_start: term

    ?formula: term "=" term                         -> eq
            | "~" formula                           -> neg
            | "forall" VAR "." formula              -> forall
            | "exists" VAR "." formula              -> exists
            | "(" formula ")"
            | "(" formula "->" formula impl_tail ")" -> implies
            | "(" formula "&" formula ")"           -> conj
            | "(" formula "|" formula ")"           -> disj
            | "(" formula "<->" formula ")"         -> iff

    impl_tail: ("->" formula)*

    ?term: NUMBER                                   -> number
         | VAR                                      -> var
         | "S" "(" term ")"                         -> succ
         | "(" term "+" term ")"                    -> add
         | "(" term "*" term ")"                    -> mul

    VAR: /x[0-9]+/
    NUMBER: /[0-9]+/

    %import common.WS
    %ignore WS
"""


@v_args(inline=True)
class _FormulaBuilder(Transformer):
    """把语法树折叠为 AST（不做规范化）"""

    def start(self, formula):
        return formula

    def term_start(self, term):
        return term

    # terms
    def number(self, token: Token) -> Term:
        value = from_decimal(str(token))
        return numeral(value)

    def var(self, token: Token) -> Term:
        return Var(int(token[1:]))

    def succ(self, arg):
        return Succ(arg)

    def add(self, left, right):
        return Add(left, right)

    def mul(self, left, right):
        return Mul(left, right)

    # formulas
    def eq(self, left, right):
        return Eq(left, right)

    def neg(self, body):
        return Not(body)

    def forall(self, token, body):
        return ForAll(int(token[1:]), body)

    def exists(self, token, body):
        return exists_(int(token[1:]), body)

    def impl_tail(self, *rest):
        return list(rest)

    def implies(self, first, second, tail):
        chain = [first, second, *tail]
        result = chain[-1]
        for antecedent in reversed(chain[:-1]):
            result = Implies(antecedent, result)
        return result

    def conj(self, left, right):
        return and_(left, right)

    def disj(self, left, right):
        return or_(left, right)

    def iff(self, left, right):
        return iff_(left, right)


_PARSER = Lark(PA_GRAMMAR, parser="lalr", start=["start", "term_start"], maybe_placeholders=False)
_BUILDER = _FormulaBuilder()


def parse_formula(text: str, normalize_numerals: bool = True) -> Formula:
    """
    解析一条公式

    Args:
        text: 公式文本
        normalize_numerals: 为 True 时 S(0) 之类折叠为 Numeral(1)；
            证明文件读取使用 False 以保留原始结构

    Raises:
        UnknownSymbolError: 出现文法之外的字符
        FormulaSyntaxError: 其他语法错误（含行列号）
    """
    formula = _parse(text, "start")
    return normalize(formula) if normalize_numerals else formula


def _parse(text: str, start: str):
    try:
        tree = _PARSER.parse(text, start=start)
    except UnexpectedCharacters as exc:
        raise UnknownSymbolError(
            f"unknown symbol {text[exc.pos_in_stream]!r}", exc.line, exc.column
        ) from exc
    except UnexpectedEOF as exc:
        raise FormulaSyntaxError("unexpected end of input", exc.line, exc.column) from exc
    except UnexpectedToken as exc:
        raise FormulaSyntaxError(
            f"unexpected token {exc.token!s}", exc.line, exc.column
        ) from exc
    except UnexpectedInput as exc:
        line, column = getattr(exc, "line", 0), getattr(exc, "column", 0)
        raise FormulaSyntaxError(str(exc), line, column) from exc
    return _BUILDER.transform(tree)


def parse_term(text: str, normalize_numerals: bool = True) -> Term:
    term = _parse(text, "term_start")
    return normalize_term(term) if normalize_numerals else term

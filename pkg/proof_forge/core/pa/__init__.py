# PA 语法层
from proof_forge.core.pa.parser import parse_formula, parse_term
from proof_forge.core.pa.printer import print_formula, print_term
from proof_forge.core.pa.syntax import (
    ZERO, Add, Eq, ForAll, Formula, Implies, Mul, Not, Numeral, Succ, Term, Var, VarId, Zero,
    and_, evaluate_term, exists_, expand, formula_size, free_vars, fresh_var, iff_, is_closed,
    is_closed_term,
    is_free_for, max_var_index, naive_substitute, normalize, normalize_term, numeral,
    numeral_value, or_, peel, substitute, substitute_term, substitute_terms, term_vars,
    unfold, unfold_once, wrap,
)

__all__ = [
    "ZERO", "Add", "Eq", "ForAll", "Formula", "Implies", "Mul", "Not", "Numeral", "Succ",
    "Term", "Var", "VarId", "Zero",
    "and_", "evaluate_term", "exists_", "expand", "formula_size", "free_vars", "fresh_var",
    "iff_", "is_closed", "parse_term",
    "is_closed_term", "is_free_for", "max_var_index", "naive_substitute", "normalize",
    "normalize_term", "numeral", "numeral_value", "or_", "parse_formula", "peel",
    "print_formula", "print_term", "substitute", "substitute_term", "substitute_terms",
    "term_vars", "unfold", "unfold_once", "wrap",
]

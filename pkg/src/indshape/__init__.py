"""Induction schemes over PA-: axiom and obligation generators, shape
transformations, evaluation in Z[X]+, and a small saturation prover."""

from .fol import alpha_equal, classify, free_vars, numeral, substitute
from .parsing import ParseError, parse_formula, parse_term
from .printing import print_term, print_text, print_tptp
from .schemes import (
    induction_axiom,
    inductiveness_obligations,
    pa_minus_axioms,
    parse_notion,
    walther_subsumes,
)

__version__ = "0.1.0"

__all__ = [
    "ParseError",
    "alpha_equal",
    "classify",
    "free_vars",
    "induction_axiom",
    "inductiveness_obligations",
    "numeral",
    "pa_minus_axioms",
    "parse_formula",
    "parse_notion",
    "parse_term",
    "print_term",
    "print_text",
    "print_tptp",
    "substitute",
    "walther_subsumes",
]

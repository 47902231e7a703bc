"""Recursive-descent parser for the formula grammar.

    term    := '0' | '1' | decimal | ident | term '+' term | term '*' term | '(' term ')'
    atom    := term ('=' | '<' | '<=') term  |  Pred '(' term {',' term} ')'
    formula := atom | '~' f | f '&' f | f '|' f | f '->' f | f '<->' f
             | ('!' | '?') ident '.' f | '(' f ')'

Precedence: ``~`` > ``&`` > ``|`` > ``->`` (right associative) > ``<->``;
quantifier scope extends as far right as possible.  Decimal literals of 2 or
more expand to left-nested numerals; ``1`` alone is the constant one.
Uppercase identifiers followed by ``(`` are schematic predicate atoms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .fol import (
    ONE,
    ZERO,
    Add,
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Lt,
    Mul,
    Not,
    Or,
    Pred,
    Term,
    Var,
    le,
    numeral,
)


class ParseError(ValueError):
    """Raised for malformed input; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


_UNICODE = {
    "∀": "!",
    "∃": "?",
    "¬": "~",
    "∧": "&",
    "∨": "|",
    "→": "->",
    "↔": "<->",
    "≤": "<=",
    "×": "*",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[a-z_][A-Za-z0-9_]*)
  | (?P<pred>[A-Z][A-Za-z0-9_]*)
  | (?P<op><->|->|<=|[<=~&|!?.()+*,])
  | (?P<uni>[∀∃¬∧∨→↔≤×])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        value = m.group()
        if kind == "uni":
            kind, value = "op", _UNICODE[value]
        if kind != "ws":
            tokens.append(Token(kind, value, pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # helpers -------------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, value: str) -> bool:
        return self.tok.kind == "op" and self.tok.value == value

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.fail(f"expected {value!r}")
        tok = self.tok
        self.i += 1
        return tok

    def fail(self, message: str):
        tok = self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.value)
        raise ParseError(f"{message}, found {found}", tok.pos, self.text)

    # formulas ------------------------------------------------------------
    def formula(self) -> Formula:
        left = self.implication()
        while self.at("<->"):
            self.i += 1
            left = Iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.at("|"):
            self.i += 1
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.at("&"):
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.at("~"):
            self.i += 1
            return Not(self.unary())
        if self.at("!") or self.at("?"):
            quant = ForAll if self.tok.value == "!" else Exists
            self.i += 1
            if self.tok.kind != "ident":
                self.fail("expected a variable after quantifier")
            name = self.tok.value
            self.i += 1
            self.expect(".")
            return quant(name, self.formula())
        if self.tok.kind == "pred":
            return self.pred_atom()
        if self.at("("):
            # either a parenthesized term starting an atom, or a sub-formula
            start = self.i
            try:
                return self.atom()
            except ParseError as term_err:
                self.i = start
                self.expect("(")
                inner = self.formula()
                if not self.at(")"):
                    # report whichever attempt got further
                    if term_err.pos > self.tok.pos:
                        raise term_err
                    self.fail("expected ')'")
                self.i += 1
                return inner
        return self.atom()

    def pred_atom(self) -> Formula:
        name = self.tok.value
        self.i += 1
        self.expect("(")
        args = [self.term()]
        while self.at(","):
            self.i += 1
            args.append(self.term())
        self.expect(")")
        return Pred(name, tuple(args))

    def atom(self) -> Formula:
        left = self.term()
        if self.at("="):
            self.i += 1
            return Eq(left, self.term())
        if self.at("<"):
            self.i += 1
            return Lt(left, self.term())
        if self.at("<="):
            self.i += 1
            return le(left, self.term())
        self.fail("expected '=', '<' or '<='")

    # terms ---------------------------------------------------------------
    def term(self) -> Term:
        left = self.product()
        while self.at("+"):
            self.i += 1
            left = Add(left, self.product())
        return left

    def product(self) -> Term:
        left = self.primary()
        while self.at("*"):
            self.i += 1
            left = Mul(left, self.primary())
        return left

    def primary(self) -> Term:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            n = int(tok.value)
            if n == 0:
                return ZERO
            if n == 1:
                return ONE
            return numeral(n)
        if tok.kind == "ident":
            self.i += 1
            return Var(tok.value)
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        self.fail("expected a term")


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind != "eof":
        p.fail("unexpected trailing input")
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        p.fail("unexpected trailing input")
    return t

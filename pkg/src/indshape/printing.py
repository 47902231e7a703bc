"""Text and TPTP renderings of terms and formulas."""

from __future__ import annotations

from .fol import (
    Add,
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Lt,
    Not,
    One,
    Or,
    Pred,
    Term,
    Var,
    Zero,
    canonical as canonicalize,
    numeral_value,
)

# binding strength of formula constructs, loosest first
_IFF, _IMP, _OR, _AND, _UNARY = 1, 2, 3, 4, 5


def print_term(t: Term, compact: bool = True) -> str:
    return _term(t, 1, compact)


def _term(t: Term, level: int, compact: bool) -> str:
    if compact:
        n = numeral_value(t)
        if n is not None and n >= 2:
            return str(n)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Add):
        text = f"{_term(t.left, 1, compact)} + {_term(t.right, 2, compact)}"
        return f"({text})" if level > 1 else text
    text = f"{_term(t.left, 2, compact)} * {_term(t.right, 3, compact)}"
    return f"({text})" if level > 2 else text


def print_text(f: Formula, canonical: bool = False, compact: bool = True) -> str:
    """Render ``f`` in the input grammar with as few parentheses as possible.

    ``parse_formula(print_text(f))`` is α-equal to ``f``.  With
    ``canonical=True`` bound variables are renamed v0, v1, ... first, making
    the output identical for α-equal inputs.
    """
    if canonical:
        f = canonicalize(f)
    return _fmt(f, _IFF, True, compact)


def _fmt(f: Formula, level: int, tail: bool, compact: bool) -> str:
    # ``tail``: nothing follows this text before the enclosing ')' or the end,
    # so a quantifier may be printed without parentheses.
    if isinstance(f, Eq):
        return f"{print_term(f.left, compact)} = {print_term(f.right, compact)}"
    if isinstance(f, Lt):
        return f"{print_term(f.left, compact)} < {print_term(f.right, compact)}"
    if isinstance(f, Pred):
        return f"{f.name}({', '.join(print_term(a, compact) for a in f.args)})"
    if isinstance(f, Not):
        return "~" + _fmt(f.body, _UNARY, tail, compact)
    if isinstance(f, (ForAll, Exists)):
        sym = "!" if isinstance(f, ForAll) else "?"
        text = f"{sym}{f.var}. {_fmt(f.body, _IFF, True, compact)}"
        return text if tail else f"({text})"
    if isinstance(f, Iff):
        mine, op, lmin, rmin = _IFF, "<->", _IFF, _IMP
    elif isinstance(f, Implies):
        mine, op, lmin, rmin = _IMP, "->", _OR, _IMP
    elif isinstance(f, Or):
        mine, op, lmin, rmin = _OR, "|", _OR, _AND
    else:
        mine, op, lmin, rmin = _AND, "&", _AND, _UNARY
    wrap = mine < level
    inner_tail = True if wrap else tail
    left = _fmt(f.left, lmin, False, compact)
    right = _fmt(f.right, rmin, inner_tail, compact)
    text = f"{left} {op} {right}"
    return f"({text})" if wrap else text


# --------------------------------------------------------------------------
# TPTP

TPTP_SYMBOLS = {"zero": "zero", "one": "one", "plus": "plus", "times": "times", "less": "less"}


def tptp_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name.upper()
    if isinstance(t, Zero):
        return "zero"
    if isinstance(t, One):
        return "one"
    fn = "plus" if isinstance(t, Add) else "times"
    return f"{fn}({tptp_term(t.left)}, {tptp_term(t.right)})"


def tptp_formula(f: Formula, top: bool = True) -> str:
    if isinstance(f, Eq):
        text = f"{tptp_term(f.left)} = {tptp_term(f.right)}"
        return text if top else f"({text})"
    if isinstance(f, Lt):
        return f"less({tptp_term(f.left)}, {tptp_term(f.right)})"
    if isinstance(f, Pred):
        return f"{f.name.lower()}({', '.join(tptp_term(a) for a in f.args)})"
    if isinstance(f, Not):
        return f"~ {tptp_formula(f.body, False)}"
    if isinstance(f, (ForAll, Exists)):
        sym = "!" if isinstance(f, ForAll) else "?"
        return f"{sym} [{f.var.upper()}] : {tptp_formula(f.body, False)}"
    op = {And: "&", Or: "|", Implies: "=>", Iff: "<=>"}[type(f)]
    text = f"{tptp_formula(f.left, False)} {op} {tptp_formula(f.right, False)}"
    return text if top else f"({text})"


def print_tptp(name: str, role: str, f: Formula) -> str:
    """One annotated first-order formula; numerals are never compacted."""
    return f"fof({name}, {role}, {tptp_formula(f)})."

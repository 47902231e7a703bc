import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indshape.dnf import DnfConjunct, DnfTooLarge, dnf_to_formula, to_dnf
from indshape.fol import (
    ONE,
    ZERO,
    Add,
    And,
    Atomic,
    Bounded,
    Eq,
    Exists,
    ForAll,
    Implies,
    Lt,
    Mul,
    Not,
    Or,
    QuantifierFree,
    SigmaK,
    Unrestricted,
    Var,
    alpha_equal,
    class_leq,
    classify,
    free_vars,
    is_lr,
    numeral,
    subformulas,
    substitute,
    term_vars,
)
from indshape.models import nat_bounded_eval
from indshape.parsing import ParseError, parse_formula, parse_term
from indshape.printing import print_term, print_text, print_tptp
from strategies import formulas, terms

x, y, z = Var("x"), Var("y"), Var("z")


# --------------------------------------------------------------------------
# parsing


def test_parse_atom():
    assert parse_formula("0 = 0") == Eq(ZERO, ZERO)


def test_parse_le_is_elaborated():
    assert parse_formula("x <= y") == Or(Lt(x, y), Eq(x, y))


def test_parse_decimal_is_left_nested_numeral():
    two = Add(Add(ZERO, ONE), ONE)
    assert parse_formula("2 = 1 + 1") == Eq(two, Add(ONE, ONE))


def test_parse_precedence_and_associativity():
    f = parse_formula("~a = b & c = d | e = f -> g = h -> i = j")
    a, b, c, d, e, f_, g, h, i, j = (Var(n) for n in "abcdefghij")
    expected = Implies(
        Or(And(Not(Eq(a, b)), Eq(c, d)), Eq(e, f_)),
        Implies(Eq(g, h), Eq(i, j)),
    )
    assert f == expected


def test_parse_times_binds_tighter_than_plus():
    assert parse_term("x + y * z") == Add(x, Mul(y, z))
    assert parse_term("x + y + z") == Add(Add(x, y), z)


def test_quantifier_scope_is_maximal():
    f = parse_formula("!x. x = x & x = 0")
    assert f == ForAll("x", And(Eq(x, x), Eq(x, ZERO)))


def test_unicode_connectives():
    assert parse_formula("∀x. x = x") == parse_formula("!x. x = x")


@pytest.mark.parametrize("text", ["x =", "x = = y", "!x x = x", "(x = y", "x = y)", "x # y"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as err:
        parse_formula(text)
    assert err.value.pos >= 0
    assert "position" in str(err.value)


# --------------------------------------------------------------------------
# numerals


@pytest.mark.parametrize("n", range(8))
def test_numeral_shape(n):
    t = numeral(n)
    ones = 0
    while isinstance(t, Add):
        assert t.right == ONE
        ones += 1
        t = t.left
    assert t == ZERO and ones == n
    assert parse_term(print_term(numeral(n))) == numeral(n)


# --------------------------------------------------------------------------
# substitution


def test_substitute_closed_term():
    assert substitute(Eq(x, ZERO), "x", numeral(1)) == Eq(Add(ZERO, ONE), ZERO)


def test_substitute_avoids_capture():
    out = substitute(Exists("y", Eq(x, y)), "x", y)
    assert isinstance(out, Exists) and out.var != "y"
    assert out.body == Eq(y, Var(out.var))


def test_substitute_bound_variable_untouched():
    f = ForAll("x", Eq(x, x))
    assert substitute(f, "x", ONE) == f


@settings(max_examples=200, deadline=None)
@given(formulas(), st.sampled_from("xyz"), terms())
def test_substitute_free_vars(f, v, t):
    out = free_vars(substitute(f, v, t))
    if v in free_vars(f):
        assert out <= (free_vars(f) - {v}) | term_vars(t)
    else:
        assert out == free_vars(f)


@settings(max_examples=100, deadline=None)
@given(formulas(), st.sampled_from("xyz"))
def test_substitute_fresh_variables_exact(f, v):
    t = Add(Var("w1"), Var("w2"))
    if v in free_vars(f):
        assert free_vars(substitute(f, v, t)) == (free_vars(f) - {v}) | {"w1", "w2"}


# --------------------------------------------------------------------------
# printing


@settings(max_examples=500, deadline=None)
@given(formulas())
def test_print_parse_round_trip(f):
    assert alpha_equal(parse_formula(print_text(f)), f)


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_canonical_printing_identifies_alpha_variants(f):
    g = parse_formula(print_text(f))
    assert print_text(f, canonical=True) == print_text(g, canonical=True)


def test_tptp_fixed_symbol_map():
    assert print_tptp("ax0", "axiom", Eq(ZERO, ZERO)) == "fof(ax0, axiom, zero = zero)."
    assert print_tptp("g", "conjecture", Lt(x, Add(x, ONE))) == "fof(g, conjecture, less(X, plus(X, one)))."


def test_tptp_never_compacts_numerals():
    out = print_tptp("a", "axiom", Eq(numeral(2), Mul(x, x)))
    assert "plus(plus(zero, one), one)" in out and "times(X, X)" in out


def test_text_compacts_numerals():
    assert print_text(Eq(numeral(3), x)) == "3 = x"


# --------------------------------------------------------------------------
# classification


@pytest.mark.parametrize(
    "text, cls",
    [
        ("x + 0 = x", Atomic()),
        ("~x = 0", QuantifierFree()),
        ("!x. (x < y -> x = 0)", Bounded()),
        ("?x. (x < y & x = 0)", Bounded()),
        ("!x. ?y. x = y", SigmaK(2)),
        ("?y. x = y + y", SigmaK(1)),
        ("!x. (x < x -> x = 0)", SigmaK(1)),
    ],
)
def test_classify(text, cls):
    assert classify(parse_formula(text)) == cls


def test_class_order():
    chain = [Atomic(), QuantifierFree(), Bounded(), SigmaK(1), SigmaK(2), Unrestricted()]
    for a, b in itertools.combinations(chain, 2):
        assert class_leq(a, b) and not class_leq(b, a)


@settings(max_examples=200, deadline=None)
@given(formulas(), st.sampled_from("xyz"), st.booleans())
def test_classify_monotone_under_quantification(f, v, universal):
    q = ForAll(v, f) if universal else Exists(v, f)
    assert class_leq(classify(f), classify(q))


def test_is_lr():
    assert is_lr(parse_formula("x * x = y + 1"))
    assert not is_lr(parse_formula("x < y"))


# --------------------------------------------------------------------------
# DNF


def test_dnf_atom():
    assert to_dnf(Eq(x, ZERO)) == [DnfConjunct(((x, ZERO),), ())]


def test_dnf_de_morgan():
    f = Not(And(Eq(x, ZERO), Not(Eq(y, ONE))))
    assert to_dnf(f) == [DnfConjunct((), ((x, ZERO),)), DnfConjunct(((y, ONE),), ())]


@pytest.mark.parametrize("text", ["x < y", "?y. x = y"])
def test_dnf_rejects_order_and_quantifiers(text):
    with pytest.raises(ValueError):
        to_dnf(parse_formula(text))


def test_dnf_cap():
    f = parse_formula(" & ".join(f"(x = {i} | y = {i})" for i in range(12)))
    with pytest.raises(DnfTooLarge):
        to_dnf(f, cap=1000)


def _nnf_ok(f):
    if isinstance(f, Not):
        return isinstance(f.body, Eq)
    if isinstance(f, And):
        return not any(isinstance(g, Or) for g in subformulas(f))
    return True


@settings(max_examples=150, deadline=None)
@given(formulas(names=("x", "y"), quantifiers=False, order=False, max_leaves=6))
def test_dnf_equivalent_on_small_naturals(f):
    dnf = to_dnf(f)
    g = dnf_to_formula(dnf)
    for c in dnf:
        assert _nnf_ok(c.to_formula())
    for a, b in itertools.product(range(9), repeat=2):
        env = {"x": a, "y": b}
        assert nat_bounded_eval(f, env, 8) == nat_bounded_eval(g, env, 8)

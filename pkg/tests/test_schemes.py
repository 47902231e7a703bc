import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indshape.fol import (
    Atomic,
    Bounded,
    QuantifierFree,
    alpha_equal,
    forall,
    free_vars,
    is_sentence,
)
from indshape.models import nat_bounded_eval
from indshape.parsing import parse_formula, parse_term
from indshape.printing import print_text
from indshape.schemes import (
    AXIOM_NAMES,
    CutKind,
    Generalized,
    KInduction,
    LessThan,
    PolyInd,
    StepK,
    Successor,
    induction_axiom,
    inductiveness_obligations,
    notion_name,
    pa_minus_axioms,
    parse_notion,
    parse_walther_spec,
    reachable,
    scheme_instances,
    step_scheme_offset,
    walther_subsumes,
)
from oracles import finite_induction_violations
from strategies import formulas, random_qf

GOLDEN = Path(__file__).parent / "golden" / "schemes"

THETAS = {"x_plus_0": "x+0=x", "x_eq_x": "x=x", "x_lt_z": "x<z"}
NOTIONS = {
    "succ": "succ",
    "less": "less",
    "step2": "step:2",
    "kind2": "kind:2",
    "pind2": "pind:2",
    "pind3": "pind:3",
    "gen_b0_sx1": "gen:B=0;S=x+1",
}


def P(text):
    return parse_formula(text)


# --------------------------------------------------------------------------
# PA-


def test_sixteen_closed_axioms():
    axioms = pa_minus_axioms()
    assert len(axioms) == 16 == len(AXIOM_NAMES)
    assert all(is_sentence(a) for a in axioms)


@pytest.mark.parametrize(
    "index, text",
    [
        (6, "!x. x + 0 = x"),
        (15, "0 < 1 & !x. (0 < x -> (1 < x | 1 = x))"),
        (16, "!x. (0 < x | 0 = x)"),
        (14, "!x. !y. (x < y <-> ?z. x + z + 1 = y)"),
        (13, "!x. !y. !z. (~z = 0 & x < y -> x * z < y * z)"),
    ],
)
def test_axiom_shapes(index, text):
    assert pa_minus_axioms()[index - 1] == P(text)


def test_axioms_hold_in_small_naturals():
    for a in pa_minus_axioms():
        assert nat_bounded_eval(a, {}, 12)


# --------------------------------------------------------------------------
# notions


@pytest.mark.parametrize(
    "text, notion",
    [
        ("succ", Successor()),
        ("less", LessThan()),
        ("step:3", StepK(3)),
        ("kind:2", KInduction(2)),
        ("pind", PolyInd(2)),
        ("pind:3", PolyInd(3)),
        ("amcut", CutKind("amcut")),
        ("gen:B=0,1;S=x+2", Generalized(frozenset({0, 1}), (parse_term("x+2"),))),
    ],
)
def test_parse_notion(text, notion):
    assert parse_notion(text) == notion
    assert parse_notion(notion_name(notion)) == notion


@pytest.mark.parametrize("bad", ["", "succ:1", "step:0", "kind:x", "pind:1", "gen:Q=1", "mystery"])
def test_parse_notion_rejects(bad):
    with pytest.raises(ValueError):
        parse_notion(bad)


# --------------------------------------------------------------------------
# induction axioms


def test_successor_axiom_shape():
    ax = induction_axiom(P("x+0=x"), "x", [], Successor())
    assert ax == P("(0+0=0 & !x.(x+0=x -> (x+1)+0=x+1)) -> !x. x+0=x")


def test_polynomial_axiom_shape():
    ax = induction_axiom(P("x=x"), "x", [], PolyInd(2))
    assert ax == P("(0=0 & !x.(x=x -> (2*x=2*x & 2*x+1=2*x+1))) -> !x. x=x")


@pytest.mark.parametrize("theta", ["x+0=x", "x=x", "x<z", "~x*z=z+1"])
def test_generalized_singleton_equals_successor(theta):
    th = P(theta)
    params = sorted(free_vars(th) - {"x"})
    gen = Generalized(frozenset({0}), (parse_term("x+1"),))
    assert alpha_equal(induction_axiom(th, "x", params, gen), induction_axiom(th, "x", params, Successor()))


def test_parameters_are_closed():
    ax = induction_axiom(P("x<z"), "x", ["z"], Successor())
    assert is_sentence(ax) and print_text(ax).startswith("!z.")


def test_empty_base_set_has_no_base_burden():
    gen = Generalized(frozenset(), (parse_term("x+1"),))
    assert induction_axiom(P("x=x"), "x", [], gen) == P("(!x. (x=x -> x+1=x+1)) -> !x. x=x")
    assert inductiveness_obligations(P("x=x"), "x", gen).tags() == ["step"]


def test_cut_kinds_have_no_axiom():
    with pytest.raises(ValueError):
        induction_axiom(P("x=x"), "x", [], CutKind("cut"))


def test_undeclared_parameter_rejected():
    with pytest.raises(ValueError):
        induction_axiom(P("x<z"), "x", [], Successor())


@pytest.mark.parametrize("theta_name", sorted(THETAS))
@pytest.mark.parametrize("notion_name_", sorted(NOTIONS))
def test_golden_scheme(theta_name, notion_name_):
    theta = P(THETAS[theta_name])
    ax = induction_axiom(theta, "x", sorted(free_vars(theta) - {"x"}), parse_notion(NOTIONS[notion_name_]))
    expected = (GOLDEN / f"{theta_name}__{notion_name_}.txt").read_text(encoding="utf-8")
    assert print_text(ax, canonical=True) + "\n" == expected


# --------------------------------------------------------------------------
# obligations


def test_successor_obligations():
    obls = inductiveness_obligations(P("x=x"), "x", Successor())
    assert obls.tags() == ["base:0", "step"]
    assert obls["base:0"].goal == P("0=0")
    assert obls["step"].goal == P("!x.(x=x -> x+1=x+1)")


def test_less_than_obligation():
    obls = inductiveness_obligations(P("x+0=x"), "x", LessThan())
    assert obls.tags() == ["step"]
    assert alpha_equal(obls["step"].goal, P("!y.((!x.(x<y -> x+0=x)) -> y+0=y)"))


def test_k_induction_obligations():
    obls = inductiveness_obligations(P("x+0=x"), "x", KInduction(2))
    assert obls.goals() == [
        P("0+0=0"),
        P("(0+1)+0 = 0+1"),
        P("!x.(x+0=x & (x+1)+0=x+1 -> (x+1+1)+0=x+1+1)"),
    ]


@pytest.mark.parametrize(
    "notion, tags",
    [
        (CutKind("cut"), ["base:0", "step", "downward"]),
        (CutKind("acut"), ["base:0", "step", "downward", "double"]),
        (CutKind("amcut"), ["base:0", "step", "downward", "double", "square"]),
        (StepK(3), ["base:0", "base:1", "base:2", "step"]),
        (PolyInd(3), ["base:0", "step"]),
    ],
)
def test_obligation_tags(notion, tags):
    assert inductiveness_obligations(P("x=x"), "x", notion).tags() == tags


def test_cut_obligations():
    obls = inductiveness_obligations(P("x=x"), "x", CutKind("amcut"))
    assert alpha_equal(obls["downward"].goal, P("!x.!y.(x<y & y=y -> x=x)"))
    assert obls["double"].goal == P("!x.(x=x -> x+x=x+x)")
    assert obls["square"].goal == P("!x.(x=x -> x*x=x*x)")


def test_obligations_reject_extra_free_variables():
    with pytest.raises(ValueError):
        inductiveness_obligations(P("x<z"), "x", Successor())


@settings(max_examples=100, deadline=None)
@given(formulas(names=("x", "y")))
def test_successor_step1_kind1_agree(phi):
    phi = _close_except_x(phi)
    sets = [inductiveness_obligations(phi, "x", n) for n in (Successor(), StepK(1), KInduction(1))]
    for other in sets[1:]:
        assert other.tags() == sets[0].tags()
        for a, b in zip(sets[0], other):
            assert alpha_equal(a.goal, b.goal)


def _close_except_x(f):
    return forall(sorted(free_vars(f) - {"x"}), f)


# --------------------------------------------------------------------------
# finite-induction soundness on bounded N


ORACLE_NOTIONS = [
    Successor(),
    LessThan(),
    StepK(2),
    KInduction(2),
    KInduction(3),
    PolyInd(2),
    PolyInd(3),
    CutKind("cut"),
    Generalized(frozenset({0, 1}), (parse_term("x+2"),)),
    Generalized(frozenset({0}), (parse_term("x+1"), parse_term("x*x+1"))),
]


@pytest.mark.parametrize("n", ORACLE_NOTIONS, ids=notion_name)
def test_finite_induction_sample(n):
    rng = random.Random(7)
    for _ in range(60):
        theta = random_qf(rng)
        assert finite_induction_violations(theta, n, 16) in (None, [])


def test_finite_induction_oracle_detects_a_true_positive():
    # x < 5 fails only the step; x*x=x*x passes everything
    assert finite_induction_violations(P("x < 5"), Successor(), 16) is None
    assert finite_induction_violations(P("x*x = x*x"), PolyInd(2), 16) == []


@pytest.mark.parametrize(
    "n, expected",
    [
        (Successor(), set(range(11))),
        (StepK(3), set(range(11))),
        (PolyInd(2), set(range(11))),
        (Generalized(frozenset({1}), (parse_term("x+2"),)), {1, 3, 5, 7, 9}),
        (Generalized(frozenset(), (parse_term("x+1"),)), set()),
    ],
)
def test_reachable(n, expected):
    assert reachable(n, 10) == expected


# --------------------------------------------------------------------------
# generalized schemes and their comparison


def W(text):
    return parse_walther_spec(text)


def test_walther_examples():
    assert walther_subsumes(W("B=0;S=x+1"), W("B=0,1;S=x+1,x+2"))
    assert not walther_subsumes(W("B=0,1;S=x+1"), W("B=0,1;S=x+2"))
    assert not walther_subsumes(W("B=0,1;S=x+2"), W("B=0,1;S=x+1"))


def test_incomparable_schemes_are_equivalent_step_schemes():
    assert step_scheme_offset(*W("B=0,1;S=x+1")) == 1
    assert step_scheme_offset(*W("B=0,1;S=x+2")) == 2
    assert step_scheme_offset(*W("B=0,1;S=x+1+1")) == 2
    assert step_scheme_offset(*W("B=0;S=x+2")) is None
    assert step_scheme_offset(*W("B=0,1;S=x*x+2")) is None
    assert step_scheme_offset(*W("B=1;S=x+1")) is None


step_terms = st.sampled_from(["x+1", "x+2", "x+1+1", "x*x", "2*x+1", "x+z"]).map(parse_term)
schemes = st.tuples(st.frozensets(st.integers(0, 4), max_size=4), st.lists(step_terms, max_size=3).map(tuple))


@settings(max_examples=200, deadline=None)
@given(schemes)
def test_walther_reflexive(a):
    assert walther_subsumes(a, a)


@settings(max_examples=300, deadline=None)
@given(schemes, schemes, schemes)
def test_walther_transitive(a, b, c):
    if walther_subsumes(a, b) and walther_subsumes(b, c):
        assert walther_subsumes(a, c)


@settings(max_examples=200, deadline=None)
@given(schemes, st.frozensets(st.integers(0, 6), max_size=3), st.lists(step_terms, max_size=2))
def test_walther_monotone(a, more_b, more_s):
    bigger = (a[0] | more_b, a[1] + tuple(more_s))
    assert walther_subsumes(a, bigger)


# --------------------------------------------------------------------------
# scheme generators


def test_scheme_instances_filter_by_class():
    assert scheme_instances(Atomic(), Successor(), [P("~x=0"), P("x=x")]) == [
        induction_axiom(P("x=x"), "x", [], Successor())
    ]
    kept = scheme_instances(QuantifierFree(), Successor(), [P("x+0=x"), P("?y. x=y+y")])
    assert len(kept) == 1
    theta = P("!y.(y<x -> y=0)")
    assert scheme_instances(Bounded(), Successor(), [theta]) == [induction_axiom(theta, "x", [], Successor())]


def test_scheme_instances_close_parameters():
    (ax,) = scheme_instances(Atomic(), Successor(), [P("x<z")])
    assert is_sentence(ax)


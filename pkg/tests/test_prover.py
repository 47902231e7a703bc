import sys
import textwrap
import time
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indshape.fol import Eq, Implies, Var, disj, forall, le, numeral
from indshape.models import WitnessConfig, refute_claim
from indshape.parsing import parse_formula
from indshape.prover import (
    ENV_COMMAND,
    Builtin,
    ClauseLimit,
    External,
    Options,
    Proved,
    Refuted,
    Unknown,
    backend_from_env,
    clausify,
    prove,
    prove_goal,
    szs_status,
    tptp_problem,
)
from indshape.prover.external import split_command
from indshape.prover.saturate import subsumes
from indshape.prover.terms import GT, KBO, LT, DiscTree, apply, match, unify
from indshape.schemes import Successor, inductiveness_obligations

import battery

GOLDEN = Path(__file__).parent / "golden" / "prover"


def P(text):
    return parse_formula(text)


# --------------------------------------------------------------------------
# terms


def test_unify_and_match():
    f = lambda *a: ("f",) + a  # noqa: E731
    a, b = ("a",), ("b",)
    s = unify(f(0, b), f(a, 1))
    assert apply(f(0, 1), s) == f(a, b)
    assert unify(f(0, 0), f(a, b)) is None
    assert unify(0, f(0)) is None  # occurs check
    assert match(f(0, 0), f(a, a)) == {0: a}
    assert match(f(0, 0), f(a, b)) is None
    assert match(f(a, 0), f(0, b)) is None


def test_variables_never_bind_predicates():
    assert unify(0, ("less", ("a",), ("b",))) is None


def test_kbo_basics():
    kbo = KBO({"zero": 1, "one": 2, "plus": 100, "times": 101})
    x = 0
    assert kbo.compare(("plus", x, ("zero",)), x) == GT
    assert kbo.compare(x, ("times", x, x)) == LT
    # equal weight: precedence decides
    assert kbo.compare(("times", x, x), ("plus", x, x)) == GT


ground = st.recursive(
    st.sampled_from([("zero",), ("one",)]),
    lambda sub: st.tuples(st.sampled_from(["plus", "times"]), sub, sub),
    max_leaves=6,
)


@settings(max_examples=200)
@given(ground, ground, ground)
def test_kbo_total_and_transitive_on_ground_terms(s, t, u):
    kbo = KBO({"zero": 1, "one": 2, "plus": 100, "times": 101})
    if s != t:
        assert kbo.compare(s, t) in (GT, LT)
    if kbo.greater(s, t) and kbo.greater(t, u):
        assert kbo.greater(s, u)


@settings(max_examples=200)
@given(ground, ground)
def test_kbo_subterm_property(s, t):
    kbo = KBO({"zero": 1, "one": 2, "plus": 100, "times": 101})
    assert kbo.greater(("plus", s, t), s)


def test_discrimination_tree_retrieves_generalizations():
    tree = DiscTree()
    tree.insert(("plus", 0, ("zero",)), "p0")
    tree.insert(("plus", 0, 1), "pxy")
    tree.insert(("times", 0, 0), "txx")
    found = set(tree.generalizations(("plus", ("one",), ("zero",))))
    assert found == {"p0", "pxy"}
    assert set(tree.generalizations(("times", ("one",), ("zero",)))) == {"txx"}


def test_subsumption_is_injective():
    a = (True, ("p", 0), ("$true",))
    b = (True, ("p", ("c",)), ("$true",))
    c = (True, ("p", ("d",)), ("$true",))
    assert subsumes((a,), (b, c))
    assert not subsumes((a, a), (b,))


# --------------------------------------------------------------------------
# clausification


def test_goal_zero_eq_zero():
    clauses = [str(c) for c in clausify([], P("0=0"))]
    assert clauses[0] == "zero != zero"
    assert "X0 = X0" in clauses


def test_goal_skolemized():
    clauses = clausify([], P("!x. x=x"), equality=False)
    assert [str(c) for c in clauses] == ["sk0 != sk0"]


def test_existential_under_universal_gets_skolem_function():
    (c,) = clausify([P("!x. ?y. x < y")], None, equality=False)
    assert str(c) == "less(X0,sk0(X0))"


def test_congruence_axioms_cover_signature():
    text = {str(c) for c in clausify([P("!x. x + 0 < x * 1")], None)}
    assert any("plus(" in t for t in text if "!=" in t and "|" in t)
    assert any("less(" in t and "~less(" in t for t in text)


def test_clause_cap():
    big = P(" & ".join(f"(x{i} = 0 | x{i} = 1)" for i in range(16)).replace("x", "v"))
    with pytest.raises(ClauseLimit):
        clausify([], forall(sorted({f"v{i}" for i in range(16)}), big), cap=1000)


def test_open_inputs_rejected():
    with pytest.raises(ValueError):
        clausify([P("x = 0")], None)


# --------------------------------------------------------------------------
# built-in prover


def test_p6_trace_is_pinned():
    v = prove_goal(P("0 + 0 = 0"), [P("!x. x + 0 = x")], base_theory=False)
    assert isinstance(v, Proved)
    expected = (GOLDEN / "p6_trace.txt").read_text(encoding="utf-8").splitlines()
    assert list(v.trace) == expected
    assert len(v.trace) <= 4


def test_trivial_goal_with_equality_axioms():
    v = prove_goal(P("0=0"), base_theory=False, backend=Builtin(options=Options(calculus="resolution")))
    assert isinstance(v, Proved)


def test_successor_obligations_of_x_eq_x_fast():
    start = time.perf_counter()
    verdicts = prove(inductiveness_obligations(P("x=x"), "x", Successor()))
    assert time.perf_counter() - start < 1.0
    assert list(verdicts) == ["base:0", "step"]
    assert all(isinstance(v, Proved) for v in verdicts.values())


def test_saturation_refutes_non_consequence():
    v = prove_goal(P("!x. x = 0"), [P("~(0 = 1)")], base_theory=False)
    assert isinstance(v, Refuted) and v.saturated


def test_division_claim_never_proved():
    v = prove_goal(P("!x.?y.(x = 2*y | x = 2*y+1)"), backend=Builtin(max_seconds=3))
    assert not isinstance(v, Proved)
    assert isinstance(v, Unknown) and v.resource in ("timeout", "clause-limit")


def test_clause_limit_reported():
    v = prove_goal(P("!x.?y.(x = 2*y | x = 2*y+1)"), backend=Builtin(max_clauses=300, max_seconds=30))
    assert isinstance(v, Unknown) and v.resource == "clause-limit"


def ee(n):
    """Every x <= n is one of the numerals 0..n."""
    x = Var("x")
    return forall(["x"], Implies(le(x, numeral(n)), disj(Eq(x, numeral(k)) for k in range(n + 1))))


REGRESSION = {
    "x<x+1": P("!x. x < x + 1"),
    "add-cancel": P("!x.!y.!z.(x + z < y + z -> x < y)"),
    "mul-cancel": P("!x.!y.!z.(x * z < y * z -> x < y)"),
    "discrete": P("!x.!y.(x < y -> x + 1 <= y)"),
    "predecessor": P("!x.(~x = 0 -> ?y. x = y + 1)"),
    **{f"bounded-{n}": ee(n) for n in range(4)},
}


@pytest.mark.parametrize("name", list(REGRESSION))
def test_regression_corpus(name):
    start = time.perf_counter()
    v = prove_goal(REGRESSION[name], backend=Builtin(max_seconds=10))
    assert isinstance(v, Proved), v
    assert time.perf_counter() - start <= 10.5


def test_deterministic_trace_hash():
    goal = REGRESSION["predecessor"]
    first = prove_goal(goal)
    second = prove_goal(goal)
    assert isinstance(first, Proved) and first.trace_hash == second.trace_hash


FALSE_IN_ZX = [
    "!x.?y.(x = 2*y | x = 2*y + 1)",
    "!x.?y.(x = 3*y | x = 3*y + 1 | x = 3*y + 2)",
    "!x.(x = 0 | ?y. x = y + y)",
    "!x.!y.(x * x = y * y -> x = y + 1)",
    "!x. x < 5",
]


@pytest.mark.parametrize("text", FALSE_IN_ZX)
def test_soundness_against_countermodels(text):
    f = P(text)
    assert refute_claim(f) is not None
    assert not isinstance(prove_goal(f, backend=Builtin(max_seconds=2)), Proved)


@pytest.mark.parametrize("name", list(REGRESSION))
def test_regression_corpus_has_no_countermodel(name):
    cfg = WitnessConfig(max_degree=1, max_coeff=3, max_assignments=200)
    assert refute_claim(REGRESSION[name], cfg) is None


# --------------------------------------------------------------------------
# external bridge


def fake_prover(tmp_path, body):
    script = tmp_path / "fake_prover.py"
    script.write_text(textwrap.dedent(body), encoding="utf-8")
    return f"{sys.executable} {script} {{file}}"


@pytest.mark.parametrize(
    "status, kind",
    [
        ("Theorem", Proved),
        ("Unsatisfiable", Proved),
        ("CounterSatisfiable", Refuted),
        ("Satisfiable", Refuted),
        ("Timeout", Unknown),
        ("GaveUp", Unknown),
    ],
)
def test_szs_mapping(tmp_path, status, kind):
    cmd = fake_prover(
        tmp_path,
        f"""
        import sys
        text = open(sys.argv[1]).read()
        assert "fof(goal, conjecture" in text
        print("% SZS status {status} for problem")
        """,
    )
    v = prove_goal(P("0 = 0"), backend=External(cmd, timeout=20))
    assert isinstance(v, kind)
    if kind is Refuted:
        assert v.saturated is False
    if status == "Timeout":
        assert v.resource == "timeout"
    if status == "GaveUp":
        assert v.resource == "external-error"


def test_external_hard_timeout(tmp_path):
    cmd = fake_prover(tmp_path, "import time\ntime.sleep(30)\n")
    start = time.perf_counter()
    v = prove_goal(P("0 = 0"), backend=External(cmd, timeout=0.5))
    assert isinstance(v, Unknown) and v.resource == "timeout"
    assert time.perf_counter() - start < 10


def test_external_missing_executable():
    v = prove_goal(P("0 = 0"), backend=External("/nonexistent/prover {file}"))
    assert isinstance(v, Unknown) and v.resource == "external-error"


def test_external_no_status(tmp_path):
    cmd = fake_prover(tmp_path, "print('hello')\n")
    v = prove_goal(P("0 = 0"), backend=External(cmd))
    assert isinstance(v, Unknown) and v.resource == "external-error"


@pytest.mark.parametrize("template", ["prover", "prover {file} {file}", ""])
def test_command_template_needs_one_placeholder(template):
    with pytest.raises(ValueError):
        split_command(template)
    v = prove_goal(P("0 = 0"), backend=External(template))
    assert isinstance(v, Unknown) and v.resource == "external-error"


def test_szs_status_parsing():
    assert szs_status("blah\n% SZS status Theorem for x\n") == "Theorem"
    assert szs_status("nothing here") is None


def test_tptp_problem_layout():
    text = tptp_problem([P("!x. x + 0 = x")], P("0 + 0 = 0"))
    assert text.splitlines() == [
        "fof(ax0, axiom, ! [X] : (plus(X, zero) = X)).",
        "fof(goal, conjecture, plus(zero, zero) = zero).",
    ]


def test_backend_from_env(monkeypatch):
    monkeypatch.delenv(ENV_COMMAND, raising=False)
    assert isinstance(backend_from_env(), Builtin)
    monkeypatch.setenv(ENV_COMMAND, "eprover {file}")
    assert backend_from_env() == External("eprover {file}")


# --------------------------------------------------------------------------
# entailments between notions


@pytest.mark.parametrize("n, phi, label, source, target", list(battery.cases()), ids=lambda v: str(v))
def test_notion_battery(n, phi, label, source, target):
    verdict = battery.summarize(battery.entail(phi, source, target))
    assert verdict != "failed"
    if verdict == "unknown":
        assert n != 1, "the n=1 cases must be proved by the built-in prover"
        pytest.skip(f"{label} on {phi}: prover gave up")


@pytest.mark.parametrize("n", [1, 2])
def test_step_implies_kind_for_schematic_predicate(n):
    _, source, target = battery.implications(n)[0]
    assert battery.summarize(battery.entail("P(x)", source, target)) == "proved"

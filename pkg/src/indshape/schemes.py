"""PA-, induction axioms of every supported shape, and inductiveness obligations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .fol import (
    ONE,
    ZERO,
    Add,
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    FormulaClass,
    Iff,
    Implies,
    Lt,
    Mul,
    Not,
    Or,
    Term,
    Var,
    all_vars,
    class_leq,
    classify,
    conj,
    forall,
    free_vars,
    fresh_name,
    le,
    numeral,
    shift,
    substitute,
    term_vars,
)

# --------------------------------------------------------------------------
# Notions of inductiveness


@dataclass(frozen=True)
class Successor:
    pass


@dataclass(frozen=True)
class LessThan:
    pass


@dataclass(frozen=True)
class StepK:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("StepK needs k >= 1")


@dataclass(frozen=True)
class KInduction:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("KInduction needs k >= 1")


@dataclass(frozen=True)
class PolyInd:
    base: int = 2

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("PolyInd needs base >= 2")


@dataclass(frozen=True)
class Generalized:
    """Walther-style scheme: base cases ``B`` and step terms ``S`` (in x, z...)."""

    B: frozenset
    S: tuple

    def __init__(self, B: Iterable[int], S: Iterable[Term]):
        steps: list[Term] = []
        for t in S:
            if t not in steps:
                steps.append(t)
        object.__setattr__(self, "B", frozenset(B))
        object.__setattr__(self, "S", tuple(steps))
        if any(b < 0 for b in self.B):
            raise ValueError("base cases are natural numbers")


CUT_KINDS = ("cut", "acut", "amcut")


@dataclass(frozen=True)
class CutKind:
    kind: str

    def __post_init__(self):
        if self.kind not in CUT_KINDS:
            raise ValueError(f"unknown cut kind {self.kind!r}")


Notion = Union[Successor, LessThan, StepK, KInduction, PolyInd, Generalized, CutKind]


def notion_name(n: Notion) -> str:
    """Short name in the CLI notion grammar."""
    if isinstance(n, Successor):
        return "succ"
    if isinstance(n, LessThan):
        return "less"
    if isinstance(n, StepK):
        return f"step:{n.k}"
    if isinstance(n, KInduction):
        return f"kind:{n.k}"
    if isinstance(n, PolyInd):
        return f"pind:{n.base}"
    if isinstance(n, CutKind):
        return n.kind
    from .printing import print_term

    bases = ",".join(str(b) for b in sorted(n.B))
    steps = ",".join(print_term(t).replace(" ", "") for t in n.S)
    return f"gen:B={bases};S={steps}"


def parse_notion(text: str) -> Notion:
    """``succ | less | step:k | kind:k | pind[:b] | cut | acut | amcut | gen:B=..;S=..``"""
    from .parsing import parse_term

    text = text.strip()
    head, _, arg = text.partition(":")
    try:
        if head == "succ" and not arg:
            return Successor()
        if head == "less" and not arg:
            return LessThan()
        if head == "step":
            return StepK(int(arg))
        if head == "kind":
            return KInduction(int(arg))
        if head == "pind":
            return PolyInd(int(arg) if arg else 2)
        if head in CUT_KINDS and not arg:
            return CutKind(head)
        if head == "gen":
            B, S = parse_walther_spec(arg, parse_term)
            return Generalized(B, S)
    except ValueError as exc:
        raise ValueError(f"bad notion {text!r}: {exc}") from None
    raise ValueError(f"bad notion {text!r}")


def parse_walther_spec(text: str, parse_term=None) -> tuple[frozenset, tuple]:
    """``B=0,1;S=x+1,x+2`` (either part may be empty or missing)."""
    if parse_term is None:
        from .parsing import parse_term
    bases: list[int] = []
    steps: list[Term] = []
    seen = set()
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, eq, value = part.partition("=")
        key = key.strip()
        if not eq or key not in ("B", "S") or key in seen:
            raise ValueError(f"expected B=... or S=..., got {part!r}")
        seen.add(key)
        items = [v.strip() for v in value.split(",") if v.strip()]
        if key == "B":
            bases = [int(v) for v in items]
        else:
            steps = [parse_term(v) for v in items]
    return frozenset(bases), tuple(steps)


# --------------------------------------------------------------------------
# PA-


def pa_minus_axioms() -> list[Formula]:
    """Axioms P1-P16 as closed formulas, in order, with <= / >= elaborated."""
    x, y, z = Var("x"), Var("y"), Var("z")
    return [
        forall("xyz", Eq(Add(Add(x, y), z), Add(x, Add(y, z)))),
        forall("xy", Eq(Add(x, y), Add(y, x))),
        forall("xyz", Eq(Mul(Mul(x, y), z), Mul(x, Mul(y, z)))),
        forall("xy", Eq(Mul(x, y), Mul(y, x))),
        forall("xyz", Eq(Mul(x, Add(y, z)), Add(Mul(x, y), Mul(x, z)))),
        forall("x", Eq(Add(x, ZERO), x)),
        forall("x", Eq(Mul(x, ZERO), ZERO)),
        forall("x", Eq(Mul(x, ONE), x)),
        forall("xyz", Implies(And(Lt(x, y), Lt(y, z)), Lt(x, z))),
        forall("x", Not(Lt(x, x))),
        forall("xy", Or(Or(Lt(x, y), Eq(x, y)), Lt(y, x))),
        forall("xyz", Implies(Lt(x, y), Lt(Add(x, z), Add(y, z)))),
        forall("xyz", Implies(And(Not(Eq(z, ZERO)), Lt(x, y)), Lt(Mul(x, z), Mul(y, z)))),
        forall("xy", Iff(Lt(x, y), Exists("z", Eq(Add(Add(x, z), ONE), y)))),
        And(Lt(ZERO, ONE), ForAll("x", Implies(Lt(ZERO, x), le(ONE, x)))),
        ForAll("x", le(ZERO, x)),
    ]


AXIOM_NAMES = [f"P{i}" for i in range(1, 17)]


# --------------------------------------------------------------------------
# Induction axioms


def _check_vars(theta: Formula, x: str, params: list[str]) -> None:
    extra = free_vars(theta) - {x} - set(params)
    if extra:
        raise ValueError(f"free variables {sorted(extra)} are neither {x!r} nor parameters")
    if x in params:
        raise ValueError("the induction variable cannot also be a parameter")


def _at(theta: Formula, x: str, t: Term) -> Formula:
    return substitute(theta, x, t)


def premise_parts(theta: Formula, x: str, n: Notion, avoid: set[str] = frozenset()) -> list[Formula]:
    """Base and step conjuncts of the induction axiom for ``theta`` (no closure)."""
    xv = Var(x)
    if isinstance(n, Successor):
        return [_at(theta, x, ZERO), ForAll(x, Implies(theta, _at(theta, x, Add(xv, ONE))))]
    if isinstance(n, LessThan):
        y = fresh_name("y", all_vars(theta) | {x} | set(avoid))
        hyp = ForAll(x, Implies(Lt(xv, Var(y)), theta))
        return [ForAll(y, Implies(hyp, _at(theta, x, Var(y))))]
    if isinstance(n, StepK):
        bases = [_at(theta, x, numeral(k)) for k in range(n.k)]
        return bases + [ForAll(x, Implies(theta, _at(theta, x, shift(xv, n.k))))]
    if isinstance(n, KInduction):
        bases = [_at(theta, x, numeral(k)) for k in range(n.k)]
        window = conj(_at(theta, x, shift(xv, k)) for k in range(n.k))
        return bases + [ForAll(x, Implies(window, _at(theta, x, shift(xv, n.k))))]
    if isinstance(n, PolyInd):
        scaled = Mul(numeral(n.base), xv)
        targets = conj(_at(theta, x, shift(scaled, k)) for k in range(n.base))
        return [_at(theta, x, ZERO), ForAll(x, Implies(theta, targets))]
    if isinstance(n, Generalized):
        bases = [_at(theta, x, numeral(k)) for k in sorted(n.B)]
        steps = [ForAll(x, Implies(theta, _at(theta, x, t))) for t in n.S]
        return bases + steps
    raise ValueError("cut kinds are obligation-only notions, not axiom templates")


def induction_axiom(theta: Formula, x: str, params: Iterable[str], n: Notion) -> Formula:
    """Closed induction axiom ``!z.(base & step -> !x. theta)`` for notion ``n``.

    ``<`` induction has no separate base conjunct.  Several conjuncts are
    joined left to right; an empty conjunction is ``0 = 0``.
    """
    params = list(params)
    if isinstance(n, CutKind):
        raise ValueError("cut kinds are obligation-only notions, not axiom templates")
    _check_vars(theta, x, params)
    if isinstance(n, Generalized):
        for t in n.S:
            stray = term_vars(t) - {x} - set(params)
            if stray:
                raise ValueError(f"step term uses unknown variables {sorted(stray)}")
    premise = conj(premise_parts(theta, x, n, set(params)))
    return forall(params, Implies(premise, ForAll(x, theta)))


# --------------------------------------------------------------------------
# Obligations


@dataclass(frozen=True)
class Obligation:
    tag: str
    hypotheses: tuple = ()
    goal: Formula = None


@dataclass
class ObligationSet:
    """Sequents ``PA- + hypotheses |- goal``; PA- itself is implicit."""

    obligations: list[Obligation] = field(default_factory=list)

    def __iter__(self):
        return iter(self.obligations)

    def __len__(self):
        return len(self.obligations)

    def tags(self) -> list[str]:
        return [o.tag for o in self.obligations]

    def __getitem__(self, tag: str) -> Obligation:
        for o in self.obligations:
            if o.tag == tag:
                return o
        raise KeyError(tag)

    def goals(self) -> list[Formula]:
        return [o.goal for o in self.obligations]


def inductiveness_obligations(phi: Formula, x: str, n: Notion) -> ObligationSet:
    """What PA- must prove for ``phi(x)`` to be inductive in the sense of ``n``."""
    extra = free_vars(phi) - {x}
    if extra:
        raise ValueError(f"phi must have no free variable besides {x!r}; found {sorted(extra)}")
    xv = Var(x)
    items: list[tuple[str, Formula]] = []
    if isinstance(n, CutKind):
        items = _successor_items(phi, x)
        y = fresh_name("y", all_vars(phi) | {x})
        down = Implies(And(Lt(xv, Var(y)), _at(phi, x, Var(y))), phi)
        items.append(("downward", ForAll(x, ForAll(y, down))))
        if n.kind in ("acut", "amcut"):
            items.append(("double", ForAll(x, Implies(phi, _at(phi, x, Add(xv, xv))))))
        if n.kind == "amcut":
            items.append(("square", ForAll(x, Implies(phi, _at(phi, x, Mul(xv, xv))))))
    elif isinstance(n, Successor):
        items = _successor_items(phi, x)
    else:
        parts = premise_parts(phi, x, n)
        if isinstance(n, LessThan):
            items = [("step", parts[0])]
        elif isinstance(n, PolyInd):
            items = [("base:0", parts[0]), ("step", parts[1])]
        elif isinstance(n, Generalized):
            bases = sorted(n.B)
            items = [(f"base:{k}", p) for k, p in zip(bases, parts)]
            steps = parts[len(bases):]
            if len(steps) == 1:
                items.append(("step", steps[0]))
            else:
                items += [(f"step:{i}", p) for i, p in enumerate(steps)]
        else:
            items = [(f"base:{k}", p) for k, p in enumerate(parts[:-1])]
            items.append(("step", parts[-1]))
    return ObligationSet([Obligation(tag, (), goal) for tag, goal in items])


def _successor_items(phi: Formula, x: str) -> list[tuple[str, Formula]]:
    base, step = premise_parts(phi, x, Successor())
    return [("base:0", base), ("step", step)]


# --------------------------------------------------------------------------
# Walther's comparison and scheme generators


def walther_subsumes(left: tuple, right: tuple) -> bool:
    """Subset test: ``B <= B'`` and ``S <= S'`` implies ``PA(B,S) |- PA(B',S')``.

    Sound but incomplete: equivalent schemes can fail the test in both
    directions (see :func:`step_scheme_offset`).
    """
    B, S = left
    B2, S2 = right
    return set(B) <= set(B2) and all(t in tuple(S2) for t in S)


def step_scheme_offset(B: Iterable[int], S: Iterable[Term], x: str = "x") -> int | None:
    """If ``(B, S)`` is ``({0..n}, {x+k})`` with ``1 <= k <= n+1``, return k.

    Such schemes are all equivalent to successor induction (the k-step
    axioms with at least k base cases), both for arbitrary and for
    quantifier-free formulas.  The step term is recognized up to the ring
    identities, so ``x+2`` and ``x+1+1`` both qualify.
    """
    from .models import nat_term

    B = sorted(set(B))
    S = list(S)
    if len(S) != 1 or not B or B != list(range(len(B))):
        return None
    t = S[0]
    if term_vars(t) - {x}:
        return None
    # t(x) = x + k as a polynomial iff it agrees at three points
    vals = [nat_term(t, {x: v}) for v in (0, 1, 2)]
    k = vals[0]
    if vals != [k, k + 1, k + 2] or not (1 <= k <= len(B)):
        return None
    # degree check: a polynomial of degree >= 2 would deviate somewhere larger
    if nat_term(t, {x: 1000}) != 1000 + k:
        return None
    return k


def scheme_instances(
    cls: FormulaClass, n: Notion, thetas: Iterable[Formula], x: str = "x"
) -> list[Formula]:
    """Induction axioms for the members of ``thetas`` lying in ``cls``.

    With ``cls`` ranging over Atomic / QuantifierFree / Bounded / SigmaK(k) /
    Unrestricted this enumerates on demand the schemes of induction for
    atomic, open, bounded, Sigma_k and arbitrary formulas.
    """
    out = []
    for theta in thetas:
        if class_leq(classify(theta), cls):
            params = sorted(free_vars(theta) - {x})
            out.append(induction_axiom(theta, x, params, n))
    return out


def step_map(n: Notion, value: int, x: str = "x") -> list[int]:
    """Successors of ``value`` under the step rule of ``n`` in N."""
    from .models import nat_term

    if isinstance(n, (Successor, CutKind)):
        return [value + 1]
    if isinstance(n, StepK):
        return [value + n.k]
    if isinstance(n, KInduction):
        return [value + n.k]
    if isinstance(n, PolyInd):
        return [n.base * value + i for i in range(n.base)]
    if isinstance(n, Generalized):
        return [nat_term(t, {x: value}) for t in n.S]
    raise ValueError("less-than induction has no step map")


def base_points(n: Notion) -> list[int]:
    if isinstance(n, (Successor, CutKind, PolyInd)):
        return [0]
    if isinstance(n, (StepK, KInduction)):
        return list(range(n.k))
    if isinstance(n, Generalized):
        return sorted(n.B)
    raise ValueError("less-than induction has no base points")


def reachable(n: Notion, bound: int, x: str = "x") -> set[int]:
    """Points ``<= bound`` that the notion certifies from its bases."""
    if isinstance(n, LessThan):
        return set(range(bound + 1))
    if isinstance(n, KInduction):
        # the window rule needs all of value..value+k-1
        seen = set(b for b in base_points(n) if b <= bound)
        v = 0
        while v + n.k <= bound and all(v + i in seen for i in range(n.k)):
            seen.add(v + n.k)
            v += 1
        return seen
    seen: set[int] = set()
    todo = [b for b in base_points(n) if b <= bound]
    while todo:
        v = todo.pop()
        if v in seen:
            continue
        seen.add(v)
        todo += [w for w in step_map(n, v, x) if w <= bound and w not in seen]
    return seen

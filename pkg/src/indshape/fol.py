"""Terms and formulas over the language {0, 1, +, *, <} of ordered rings.

All node types are frozen dataclasses, so values are hashable and can be
shared freely.  ``x <= y`` has no constructor of its own; it is always the
disjunction ``x < y | x = y``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

_IDENT = re.compile(r"[a-z_][A-Za-z0-9_]*\Z")


# --------------------------------------------------------------------------
# Terms


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __post_init__(self):
        if not _IDENT.match(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")


@dataclass(frozen=True, slots=True)
class Zero:
    pass


@dataclass(frozen=True, slots=True)
class One:
    pass


@dataclass(frozen=True, slots=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Mul:
    left: "Term"
    right: "Term"


Term = Union[Var, Zero, One, Add, Mul]

ZERO = Zero()
ONE = One()


def numeral(n: int) -> Term:
    """The closed term ``(...((0+1)+1)+...)+1`` with ``n`` ones."""
    if n < 0:
        raise ValueError("numerals are non-negative")
    t: Term = ZERO
    for _ in range(n):
        t = Add(t, ONE)
    return t


def shift(t: Term, k: int) -> Term:
    """``t + 1 + ... + 1`` (k ones, left nested); ``shift(0, k) == numeral(k)``.

    This is how ``x + k`` is spelled everywhere a notion of inductiveness
    needs an offset, so that ``x + 1`` coincides with the successor step.
    """
    for _ in range(k):
        t = Add(t, ONE)
    return t


def numeral_value(t: Term) -> int | None:
    """Return n if ``t`` is exactly ``numeral(n)``, else None."""
    n = 0
    while isinstance(t, Add) and isinstance(t.right, One):
        n += 1
        t = t.left
    return n if isinstance(t, Zero) else None


def term_vars(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.add(u.name)
        elif isinstance(u, (Add, Mul)):
            stack.append(u.left)
            stack.append(u.right)
    return out


def term_subst(t: Term, mapping: dict[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Add):
        return Add(term_subst(t.left, mapping), term_subst(t.right, mapping))
    if isinstance(t, Mul):
        return Mul(term_subst(t.left, mapping), term_subst(t.right, mapping))
    return t


def term_size(t: Term) -> int:
    if isinstance(t, (Add, Mul)):
        return 1 + term_size(t.left) + term_size(t.right)
    return 1


# --------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True, slots=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Lt:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Pred:
    """Schematic predicate atom such as ``X(t)``; never part of L_OR proper."""

    name: str
    args: tuple


@dataclass(frozen=True, slots=True)
class Not:
    body: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class ForAll:
    var: str
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Eq, Lt, Pred, Not, And, Or, Implies, Iff, ForAll, Exists]
ATOMS = (Eq, Lt, Pred)
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (ForAll, Exists)

TRUE = Eq(ZERO, ZERO)


def le(s: Term, t: Term) -> Formula:
    return Or(Lt(s, t), Eq(s, t))


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``0 = 0``."""
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    if not parts:
        return Not(TRUE)
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def forall(names: Iterable[str], body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = ForAll(name, body)
    return body


def exists(names: Iterable[str], body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = Exists(name, body)
    return body


def atom_terms(f: Formula) -> tuple:
    if isinstance(f, Pred):
        return f.args
    return (f.left, f.right)


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, ATOMS):
        out: set[str] = set()
        for t in atom_terms(f):
            out |= term_vars(t)
        return out
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def all_vars(f: Formula) -> set[str]:
    """Every variable name occurring in ``f``, free or bound."""
    if isinstance(f, ATOMS):
        return free_vars(f)
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, BINARY):
        return all_vars(f.left) | all_vars(f.right)
    return all_vars(f.body) | {f.var}


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    if base not in avoid:
        return base
    stem = base.rstrip("0123456789") or "v"
    for i in itertools.count(1):
        cand = f"{stem}{i}"
        if cand not in avoid:
            return cand
    raise AssertionError("unreachable")


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)


def map_atoms(f: Formula, fn) -> Formula:
    """Rebuild ``f`` with every atom replaced by ``fn(atom)``."""
    if isinstance(f, ATOMS):
        return fn(f)
    if isinstance(f, Not):
        return Not(map_atoms(f.body, fn))
    if isinstance(f, BINARY):
        return type(f)(map_atoms(f.left, fn), map_atoms(f.right, fn))
    return type(f)(f.var, map_atoms(f.body, fn))


# --------------------------------------------------------------------------
# Substitution


def substitute(f: Formula, v: str, t: Term) -> Formula:
    """Capture-avoiding replacement of the free occurrences of ``v`` by ``t``."""
    return substitute_many(f, {v: t})


def substitute_many(f: Formula, mapping: dict[str, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution."""
    mapping = {k: v for k, v in mapping.items() if not (isinstance(v, Var) and v.name == k)}
    if not mapping:
        return f
    return _subst(f, mapping)


def _subst(f: Formula, mapping: dict[str, Term]) -> Formula:
    if isinstance(f, (Eq, Lt)):
        return type(f)(term_subst(f.left, mapping), term_subst(f.right, mapping))
    if isinstance(f, Pred):
        return Pred(f.name, tuple(term_subst(a, mapping) for a in f.args))
    if isinstance(f, Not):
        return Not(_subst(f.body, mapping))
    if isinstance(f, BINARY):
        return type(f)(_subst(f.left, mapping), _subst(f.right, mapping))
    # quantifier
    fv = free_vars(f)
    live = {k: v for k, v in mapping.items() if k != f.var and k in fv}
    if not live:
        return f
    incoming: set[str] = set()
    for t in live.values():
        incoming |= term_vars(t)
    var, body = f.var, f.body
    if var in incoming:
        new = fresh_name(var, incoming | all_vars(body) | set(live))
        body = _subst(body, {var: Var(new)})
        var = new
    return type(f)(var, _subst(body, live))


def rename_bound(f: Formula, avoid: set[str]) -> Formula:
    """α-rename binders of ``f`` so that none of them is in ``avoid``."""
    if isinstance(f, ATOMS):
        return f
    if isinstance(f, Not):
        return Not(rename_bound(f.body, avoid))
    if isinstance(f, BINARY):
        return type(f)(rename_bound(f.left, avoid), rename_bound(f.right, avoid))
    body = rename_bound(f.body, avoid)
    var = f.var
    if var in avoid:
        new = fresh_name(var, avoid | all_vars(body))
        body = substitute(body, var, Var(new))
        var = new
    return type(f)(var, body)


# --------------------------------------------------------------------------
# Alpha equivalence


def alpha_equal(f: Formula, g: Formula) -> bool:
    return _alpha(f, g, {}, {}, 0)


def _term_alpha(s: Term, t: Term, lf: dict, rg: dict) -> bool:
    if isinstance(s, Var) and isinstance(t, Var):
        a, b = lf.get(s.name), rg.get(t.name)
        if a is None and b is None:
            return s.name == t.name
        return a == b
    if type(s) is not type(t):
        return False
    if isinstance(s, (Add, Mul)):
        return _term_alpha(s.left, t.left, lf, rg) and _term_alpha(s.right, t.right, lf, rg)
    return True


def _alpha(f, g, lf, rg, depth) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, (Eq, Lt)):
        return _term_alpha(f.left, g.left, lf, rg) and _term_alpha(f.right, g.right, lf, rg)
    if isinstance(f, Pred):
        return (
            f.name == g.name
            and len(f.args) == len(g.args)
            and all(_term_alpha(a, b, lf, rg) for a, b in zip(f.args, g.args))
        )
    if isinstance(f, Not):
        return _alpha(f.body, g.body, lf, rg, depth)
    if isinstance(f, BINARY):
        return _alpha(f.left, g.left, lf, rg, depth) and _alpha(f.right, g.right, lf, rg, depth)
    lf2 = dict(lf)
    rg2 = dict(rg)
    lf2[f.var] = depth
    rg2[g.var] = depth
    return _alpha(f.body, g.body, lf2, rg2, depth + 1)


def canonical(f: Formula) -> Formula:
    """Rename bound variables to v0, v1, ... in binder (preorder) order.

    Names already free in ``f`` are skipped, so the result is α-equal to ``f``
    and two α-equal formulas have identical canonical forms.
    """
    taken = free_vars(f)
    counter = itertools.count()

    def next_name() -> str:
        while True:
            cand = f"v{next(counter)}"
            if cand not in taken:
                return cand

    def go(h: Formula, ren: dict[str, Term]) -> Formula:
        if isinstance(h, (Eq, Lt)):
            return type(h)(term_subst(h.left, ren), term_subst(h.right, ren))
        if isinstance(h, Pred):
            return Pred(h.name, tuple(term_subst(a, ren) for a in h.args))
        if isinstance(h, Not):
            return Not(go(h.body, ren))
        if isinstance(h, BINARY):
            left = go(h.left, ren)
            return type(h)(left, go(h.right, ren))
        new = next_name()
        return type(h)(new, go(h.body, {**ren, h.var: Var(new)}))

    return go(f, {})


# --------------------------------------------------------------------------
# Classification


@dataclass(frozen=True, slots=True)
class Atomic:
    pass


@dataclass(frozen=True, slots=True)
class QuantifierFree:
    pass


@dataclass(frozen=True, slots=True)
class Bounded:
    pass


@dataclass(frozen=True, slots=True)
class SigmaK:
    k: int


@dataclass(frozen=True, slots=True)
class Unrestricted:
    pass


FormulaClass = Union[Atomic, QuantifierFree, Bounded, SigmaK, Unrestricted]


def _rank(c: FormulaClass) -> tuple[int, int]:
    if isinstance(c, Atomic):
        return (0, 0)
    if isinstance(c, QuantifierFree):
        return (1, 0)
    if isinstance(c, Bounded):
        return (2, 0)
    if isinstance(c, SigmaK):
        return (3, c.k)
    return (4, 0)


def class_leq(a: FormulaClass, b: FormulaClass) -> bool:
    """Subsumption: every formula of class ``a`` also belongs to class ``b``."""
    return _rank(a) <= _rank(b)


def is_quantifier_free(f: Formula) -> bool:
    return not any(isinstance(g, QUANTIFIERS) for g in subformulas(f))


def bounded_parts(f: Formula) -> tuple[Term, Formula] | None:
    """Recognize ``!x.(x < t -> body)`` / ``?x.(x < t & body)`` with x not in t.

    The ``<=`` spelling (``x < t | x = t`` as guard) is accepted as well.
    Returns ``(t, body)`` or None.
    """
    if isinstance(f, ForAll) and isinstance(f.body, Implies):
        guard, body = f.body.left, f.body.right
    elif isinstance(f, Exists) and isinstance(f.body, And):
        guard, body = f.body.left, f.body.right
    else:
        return None
    bound = _guard_bound(guard, f.var)
    if bound is None:
        return None
    return bound, body


def _guard_bound(guard: Formula, var: str) -> Term | None:
    if isinstance(guard, Lt) and guard.left == Var(var) and var not in term_vars(guard.right):
        return guard.right
    if (
        isinstance(guard, Or)
        and isinstance(guard.left, Lt)
        and isinstance(guard.right, Eq)
        and guard.left.left == Var(var)
        and guard.right.left == Var(var)
        and guard.left.right == guard.right.right
        and var not in term_vars(guard.left.right)
    ):
        return guard.left.right
    return None


def is_bounded(f: Formula) -> bool:
    if isinstance(f, ATOMS):
        return True
    if isinstance(f, Not):
        return is_bounded(f.body)
    if isinstance(f, BINARY):
        return is_bounded(f.left) and is_bounded(f.right)
    parts = bounded_parts(f)
    return parts is not None and is_bounded(parts[1])


def _sigma_pi(f: Formula, positive: bool = True) -> tuple[int, int]:
    """Least (sigma, pi) levels of ``f`` read with the given polarity.

    Bounded subformulas count as level 0.  Implications and biconditionals are
    read through their prenex expansions (a biconditional needs both
    polarities of each side).
    """
    if is_bounded(f):
        return (0, 0)
    if isinstance(f, Not):
        return _sigma_pi(f.body, not positive)
    if isinstance(f, (And, Or)):
        a = _sigma_pi(f.left, positive)
        b = _sigma_pi(f.right, positive)
        return (max(a[0], b[0]), max(a[1], b[1]))
    if isinstance(f, Implies):
        a = _sigma_pi(f.left, not positive)
        b = _sigma_pi(f.right, positive)
        return (max(a[0], b[0]), max(a[1], b[1]))
    if isinstance(f, Iff):
        parts = [
            _sigma_pi(f.left, True),
            _sigma_pi(f.left, False),
            _sigma_pi(f.right, True),
            _sigma_pi(f.right, False),
        ]
        return (max(p[0] for p in parts), max(p[1] for p in parts))
    # quantifier: an existential under negative polarity acts universally
    s, p = _sigma_pi(f.body, positive)
    existential = isinstance(f, Exists) == positive
    if existential:
        sig = max(1, min(s, p + 1))
        return (sig, sig + 1)
    pi = max(1, min(p, s + 1))
    return (pi + 1, pi)


def classify(f: Formula) -> FormulaClass:
    """Smallest class containing ``f``.

    Above the bounded level the result is ``SigmaK(k)`` with ``k`` the number
    of quantifier blocks in an optimal prenex form, so ``SigmaK(k)`` collects
    both the Sigma_k and the Pi_k formulas.
    """
    if isinstance(f, ATOMS):
        return Atomic()
    if is_quantifier_free(f):
        return QuantifierFree()
    if is_bounded(f):
        return Bounded()
    s, p = _sigma_pi(f)
    return SigmaK(min(s, p))


def is_lr(f: Formula) -> bool:
    """True if ``f`` is a formula of the ring language (no ``<``)."""
    return not any(isinstance(g, Lt) for g in subformulas(f))

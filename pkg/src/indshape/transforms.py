"""Syntactic constructions on induction formulas.

Normalization of an induction axiom into an inductive formula, conjunction of
several such formulas, the ``~sigma -> psi`` shape, substitution into scheme
templates, a gallery of witness formulas, and the order-free polynomial
reduction of a DNF conjunct.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .dnf import DnfConjunct
from .fol import (
    ONE,
    ZERO,
    Add,
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    Implies,
    Mul,
    Not,
    Or,
    Pred,
    Term,
    Var,
    Zero,
    all_vars,
    disj,
    forall,
    free_vars,
    fresh_name,
    le,
    map_atoms,
    numeral,
    rename_bound,
    shift,
    substitute,
)

SCHEME_PREDICATE = "X"


def axiom_to_inductive(theta: Formula, x: str, params: Iterable[str]) -> Formula:
    """``!z.(theta(0) & !y.(theta(y) -> theta(y+1)) -> theta(x))`` with y fresh."""
    params = list(params)
    if x in params:
        raise ValueError("the induction variable cannot also be a parameter")
    extra = free_vars(theta) - {x} - set(params)
    if extra:
        raise ValueError(f"free variables {sorted(extra)} are neither {x!r} nor parameters")
    y = fresh_name("y", all_vars(theta) | {x} | set(params))
    yv = Var(y)
    at_y = substitute(theta, x, yv)
    step = ForAll(y, Implies(at_y, substitute(theta, x, Add(yv, ONE))))
    body = Implies(And(substitute(theta, x, ZERO), step), theta)
    return forall(params, body)


def merge(entries: Sequence[tuple[Formula, str, Iterable[str]]]) -> Formula:
    """Left-folded conjunction of the normalized entries, all in the first entry's variable."""
    if not entries:
        raise ValueError("merge needs at least one formula")
    x0 = entries[0][1]
    out = None
    for theta, x, params in entries:
        psi = axiom_to_inductive(theta, x, params)
        if x != x0:
            psi = substitute(psi, x, Var(x0))
        out = psi if out is None else And(out, psi)
    return out


def equivalence_shape(sigma: Formula, psi: Formula) -> Formula:
    if free_vars(sigma):
        raise ValueError("sigma must be a sentence")
    return Implies(Not(sigma), psi)


# --------------------------------------------------------------------------
# Scheme templates


@dataclass(frozen=True)
class SchemeTemplate:
    """A sentence using the unary predicate ``X`` as a placeholder."""

    sentence: Formula
    arity_hint: int = 0

    def __post_init__(self):
        for f in _preds(self.sentence):
            if f.name == SCHEME_PREDICATE and len(f.args) != 1:
                raise ValueError(f"{SCHEME_PREDICATE} must be unary, found arity {len(f.args)}")


def _preds(f: Formula):
    from .fol import subformulas

    return (g for g in subformulas(f) if isinstance(g, Pred))


def scheme_substitute(S: SchemeTemplate, phi: Formula, x: str, params: Iterable[str]) -> Formula:
    params = list(params)
    extra = free_vars(phi) - {x} - set(params)
    if extra:
        raise ValueError(f"free variables {sorted(extra)} are neither {x!r} nor parameters")
    # keep S's binders from capturing the parameters of phi
    body = rename_bound(S.sentence, set(params))

    def plug(atom: Formula) -> Formula:
        if isinstance(atom, Pred) and atom.name == SCHEME_PREDICATE:
            if len(atom.args) != 1:
                raise ValueError(f"{SCHEME_PREDICATE} must be unary")
            return substitute(phi, x, atom.args[0])
        return atom

    return forall(params, map_atoms(body, plug))


# --------------------------------------------------------------------------
# Gallery of witness formulas

GALLERY = ("not_cut", "not_acut", "chi", "rho", "rho0", "square")

DEFAULT_PHI = Pred("P", (Var("x"),))
DEFAULT_DELTA = Pred("D", (Var("x"),))


def _sq(t: Term) -> Term:
    return Mul(t, t)


def gallery(
    name: str,
    phi: Formula = DEFAULT_PHI,
    delta: Formula | None = None,
    m: int | None = None,
    n: int | None = None,
    x: str = "x",
) -> Formula:
    """Witness formulas for non-implications between notions of inductiveness.

    ``phi`` and ``delta`` are formulas in ``x``; ``delta`` is only read by the
    constructions that mention a cut (not_cut, not_acut, rho, rho0).  Squares
    are written ``c * c``.
    """
    if name not in GALLERY:
        raise ValueError(f"unknown gallery formula {name!r}; expected one of {', '.join(GALLERY)}")
    needs_delta = name in ("not_cut", "not_acut", "rho", "rho0")
    if needs_delta and delta is None:
        delta = DEFAULT_DELTA
    if name == "chi" and m is None:
        raise ValueError("chi needs m")
    if name == "rho" and n is None:
        raise ValueError("rho needs n")
    used = all_vars(phi) | {x} | (all_vars(delta) if needs_delta else set())
    xv = Var(x)

    def at(f: Formula, t: Term) -> Formula:
        return substitute(f, x, t)

    if name == "square":
        return at(phi, Mul(xv, xv))
    if name == "chi":
        y = fresh_name("y", used)
        return Or(phi, Exists(y, Eq(xv, Mul(numeral(m + 1), Var(y)))))
    c = fresh_name("c", used)
    cv = Var(c)
    if name == "not_cut":
        return Or(phi, Exists(c, And(at(delta, cv), le(_sq(cv), xv))))
    if name == "not_acut":
        z = fresh_name("z", used | {c})
        zv = Var(z)
        body = And(And(at(phi, zv), at(delta, cv)), le(xv, Add(_sq(cv), zv)))
        return Exists(c, Exists(z, body))
    if name == "rho0":
        return Or(phi, ForAll(c, Implies(at(delta, cv), Eq(xv, _sq(cv)))))
    options = disj(Eq(xv, shift(_sq(cv), k)) for k in range(n + 1))
    return Or(phi, ForAll(c, Implies(at(delta, cv), options)))


# --------------------------------------------------------------------------
# Order-free reduction of a conjunct


@dataclass(frozen=True)
class KayeReduced:
    """``p = (p_L, p_R)`` and ``q = (q_L, q_R)``.

    The conjunct holds iff ``p_L = p_R`` and ``q_L != q_R``: ``p_L - p_R`` is
    the sum of the squared differences of the equations and ``q_L - q_R`` the
    product of the differences of the inequations.
    """

    p: tuple[Term, Term]
    q: tuple[Term, Term]

    def to_formula(self) -> Formula:
        return And(Eq(*self.p), Not(Eq(*self.q)))


def _sum(terms: list[Term]) -> Term:
    terms = [t for t in terms if not isinstance(t, Zero)]
    if not terms:
        return ZERO
    out = terms[0]
    for t in terms[1:]:
        out = Add(out, t)
    return out


def _prod(terms: list[Term]) -> Term:
    if any(isinstance(t, Zero) for t in terms):
        return ZERO
    if not terms:
        return ONE
    out = terms[0]
    for t in terms[1:]:
        out = Mul(out, t)
    return out


def kaye_reduce(c: DnfConjunct) -> KayeReduced:
    two = numeral(2)
    p_left: list[Term] = []
    p_right: list[Term] = []
    for s, t in c.equalities:
        p_left += [_prod([s, s]), _prod([t, t])]
        cross = _prod([s, t])
        p_right.append(ZERO if isinstance(cross, Zero) else Mul(two, cross))
    # expand prod (u_j - v_j): picking v an even number of times lands on the left
    q_left: list[Term] = []
    q_right: list[Term] = []
    for picks in product((0, 1), repeat=len(c.inequations)):
        factors = [pair[pick] for pair, pick in zip(c.inequations, picks)]
        (q_right if sum(picks) % 2 else q_left).append(_prod(factors))
    q_l = _sum(q_left) if c.inequations else ONE
    return KayeReduced((_sum(p_left), _sum(p_right)), (q_l, _sum(q_right)))

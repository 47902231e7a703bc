"""Disjunctive normal form for quantifier-free formulas of the ring language."""

from __future__ import annotations

from dataclasses import dataclass

from .fol import (
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Lt,
    Not,
    Or,
    Pred,
    Term,
    conj,
    disj,
)

DEFAULT_LITERAL_CAP = 10**6


class DnfTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class DnfConjunct:
    """``s1 = t1 & ... & u1 != v1 & ...``; both tuples may be empty."""

    equalities: tuple[tuple[Term, Term], ...] = ()
    inequations: tuple[tuple[Term, Term], ...] = ()

    @property
    def size(self) -> int:
        return len(self.equalities) + len(self.inequations)

    def to_formula(self) -> Formula:
        lits = [Eq(s, t) for s, t in self.equalities]
        lits += [Not(Eq(s, t)) for s, t in self.inequations]
        return conj(lits)


def dnf_to_formula(conjuncts: list[DnfConjunct]) -> Formula:
    return disj(c.to_formula() for c in conjuncts)


def to_dnf(f: Formula, cap: int = DEFAULT_LITERAL_CAP) -> list[DnfConjunct]:
    """Equivalent disjunction of conjunctions of (in)equations, in input order.

    Rejects ``<`` and quantifiers.  Raises :class:`DnfTooLarge` once the output
    would exceed ``cap`` literals in total.
    """
    return [DnfConjunct(tuple(e), tuple(n)) for e, n in _dnf(f, True, cap)]


def _dnf(f: Formula, positive: bool, cap: int) -> list[tuple[list, list]]:
    if isinstance(f, Eq):
        pair = (f.left, f.right)
        return [([pair], [])] if positive else [([], [pair])]
    if isinstance(f, Lt):
        raise ValueError("to_dnf requires a formula without '<'")
    if isinstance(f, (ForAll, Exists)):
        raise ValueError("to_dnf requires a quantifier-free formula")
    if isinstance(f, Pred):
        raise ValueError("to_dnf does not accept schematic predicates")
    if isinstance(f, Not):
        return _dnf(f.body, not positive, cap)
    if isinstance(f, Implies):
        f = Or(Not(f.left), f.right)
    elif isinstance(f, Iff):
        f = Or(And(f.left, f.right), And(Not(f.left), Not(f.right)))
    is_or = isinstance(f, Or) == positive
    left = _dnf(f.left, positive, cap)
    right = _dnf(f.right, positive, cap)
    if is_or:
        out = left + right
    else:
        out = []
        total = 0
        for le, ln in left:
            for re_, rn in right:
                total += len(le) + len(ln) + len(re_) + len(rn)
                if total > cap:
                    raise DnfTooLarge(f"DNF exceeds {cap} literals")
                out.append((le + re_, ln + rn))
    if sum(len(e) + len(n) for e, n in out) > cap:
        raise DnfTooLarge(f"DNF exceeds {cap} literals")
    return out

"""Random terms and formulas: hypothesis strategies plus a seeded generator
for the brute-force oracles."""

import random

from hypothesis import strategies as st

from indshape.fol import (
    ONE,
    ZERO,
    Add,
    And,
    Eq,
    Exists,
    ForAll,
    Iff,
    Implies,
    Lt,
    Mul,
    Not,
    Or,
    Var,
    numeral,
)

NAMES = ("x", "y", "z", "u")


def terms(names=NAMES, max_leaves=6):
    leaves = st.one_of(
        st.sampled_from([ZERO, ONE]),
        st.integers(0, 4).map(numeral),
        st.sampled_from(names).map(Var),
    )
    return st.recursive(
        leaves,
        lambda sub: st.one_of(st.builds(Add, sub, sub), st.builds(Mul, sub, sub)),
        max_leaves=max_leaves,
    )


def formulas(names=NAMES, quantifiers=True, order=True, max_leaves=8):
    t = terms(names, max_leaves=4)
    atom_kinds = [st.builds(Eq, t, t)]
    if order:
        atom_kinds.append(st.builds(Lt, t, t))
    atoms = st.one_of(*atom_kinds)

    def extend(sub):
        options = [
            st.builds(Not, sub),
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Implies, sub, sub),
            st.builds(Iff, sub, sub),
        ]
        if quantifiers:
            options += [
                st.builds(ForAll, st.sampled_from(names), sub),
                st.builds(Exists, st.sampled_from(names), sub),
            ]
        return st.one_of(*options)

    return st.recursive(atoms, extend, max_leaves=max_leaves)


# --------------------------------------------------------------------------
# seeded generator: quantifier-free theta(x), depth <= 4, coefficients <= 3


def random_term(rng: random.Random, names, depth: int):
    if depth == 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.5:
            return Var(rng.choice(names))
        return numeral(rng.randint(0, 3))
    op = Add if rng.random() < 0.6 else Mul
    return op(random_term(rng, names, depth - 1), random_term(rng, names, depth - 1))


def random_qf(rng: random.Random, names=("x",), depth: int = 4, order: bool = True):
    if depth == 0 or rng.random() < 0.3:
        a = random_term(rng, names, 2)
        b = random_term(rng, names, 2)
        if order and rng.random() < 0.5:
            return Lt(a, b)
        return Eq(a, b)
    r = rng.random()
    if r < 0.25:
        return Not(random_qf(rng, names, depth - 1, order))
    op = rng.choice([And, Or, Implies, Iff])
    return op(random_qf(rng, names, depth - 1, order), random_qf(rng, names, depth - 1, order))

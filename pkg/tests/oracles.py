"""Brute-force oracles shared by the unit and acceptance tests."""

import random

from indshape.dnf import DnfConjunct
from indshape.fol import And, ForAll, Var, all_vars, fresh_name, substitute
from indshape.models import PolyPlus, nat_bounded_eval, nat_term, zx_eval
from indshape.schemes import inductiveness_obligations, reachable
from strategies import random_term


def random_poly(rng: random.Random, max_degree=3, max_coeff=5) -> PolyPlus:
    """Zero, or a polynomial of degree <= max_degree with a positive leading coefficient."""
    if rng.random() < 0.1:
        return PolyPlus()
    d = rng.randint(0, max_degree)
    low = [rng.randint(-max_coeff, max_coeff) for _ in range(d)]
    return PolyPlus(low + [rng.randint(1, max_coeff)])


def strip_universals(f, taken=None):
    """Pull every universal out of ``f`` through conjunctions: (names, matrix)."""
    taken = set() if taken is None else taken
    if isinstance(f, ForAll):
        name = f.var if f.var not in taken else fresh_name(f.var, taken | all_vars(f))
        taken.add(name)
        body = f.body if name == f.var else substitute(f.body, f.var, Var(name))
        names, matrix = strip_universals(body, taken)
        return [name] + names, matrix
    if isinstance(f, And):
        left_names, left = strip_universals(f.left, taken)
        right_names, right = strip_universals(f.right, taken)
        return left_names + right_names, And(left, right)
    return [], f


def sample_axiom(axiom, rng, **bounds):
    """Evaluate ``axiom`` in Z[X]+ at a random instance of its universals."""
    names, matrix = strip_universals(axiom)
    env = {n: random_poly(rng, **bounds) for n in names}
    return zx_eval(matrix, env), env


def finite_induction_violations(theta, notion, bound):
    """None if some obligation fails on {0..bound}; otherwise the reachable
    points where ``theta`` is false (soundness demands an empty list)."""
    obls = inductiveness_obligations(theta, "x", notion)
    if not all(nat_bounded_eval(o.goal, {}, bound) for o in obls):
        return None
    return [m for m in sorted(reachable(notion, bound)) if not nat_bounded_eval(theta, {"x": m}, bound)]


def random_conjunct(rng, names=("x", "y")):
    def pair():
        return random_term(rng, names, 2), random_term(rng, names, 2)

    return DnfConjunct(
        tuple(pair() for _ in range(rng.randint(0, 2))),
        tuple(pair() for _ in range(rng.randint(0, 2))),
    )


def conjunct_holds(c: DnfConjunct, env) -> bool:
    return all(nat_term(s, env) == nat_term(t, env) for s, t in c.equalities) and all(
        nat_term(s, env) != nat_term(t, env) for s, t in c.inequations
    )


def reduced_holds(r, env) -> bool:
    return nat_term(r.p[0], env) == nat_term(r.p[1], env) and nat_term(r.q[0], env) != nat_term(r.q[1], env)

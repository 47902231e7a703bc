"""Formulas to clauses: NNF, Skolemization and CNF by distribution."""

from __future__ import annotations

from dataclasses import dataclass

from ..fol import (
    Add,
    And,
    Eq,
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
    free_vars,
)
from .terms import TRUE, register_predicate, term_vars

DEFAULT_CNF_CAP = 20000


class ClauseLimit(RuntimeError):
    """The CNF of the input would exceed the clause cap."""


@dataclass(frozen=True)
class Literal:
    positive: bool
    left: object
    right: object

    def __str__(self) -> str:
        return literal_text(self.positive, self.left, self.right)


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals; variables are implicitly universal."""

    literals: tuple
    origin: str = ""

    def __str__(self) -> str:
        return clause_text(self.literals)


# --------------------------------------------------------------------------
# rendering


def term_text(t) -> str:
    if t.__class__ is int:
        return f"X{t}"
    if len(t) == 1:
        return t[0]
    return f"{t[0]}({','.join(term_text(a) for a in t[1:])})"


def literal_text(positive: bool, left, right) -> str:
    if right == TRUE:
        return term_text(left) if positive else "~" + term_text(left)
    op = "=" if positive else "!="
    return f"{term_text(left)} {op} {term_text(right)}"


def clause_text(lits) -> str:
    if not lits:
        return "$false"
    return " | ".join(literal_text(*(lit if isinstance(lit, tuple) else (lit.positive, lit.left, lit.right))) for lit in lits)


# --------------------------------------------------------------------------
# translation


class _Translator:
    def __init__(self):
        self.next_var = 0
        self.skolems = 0
        self.skolem_arity: dict[str, int] = {}

    def term(self, t: Term, env: dict):
        if isinstance(t, Var):
            if t.name not in env:
                raise ValueError(f"free variable {t.name!r} in a prover input")
            return env[t.name]
        if isinstance(t, Zero):
            return ("zero",)
        if isinstance(t, One):
            return ("one",)
        sym = "plus" if isinstance(t, Add) else "times"
        return (sym, self.term(t.left, env), self.term(t.right, env))

    def atom(self, f: Formula, env: dict):
        if isinstance(f, Eq):
            return (self.term(f.left, env), self.term(f.right, env))
        if isinstance(f, Lt):
            return (("less", self.term(f.left, env), self.term(f.right, env)), TRUE)
        name = "p_" + f.name
        register_predicate(name)
        return ((name,) + tuple(self.term(a, env) for a in f.args), TRUE)

    def skolem(self, var: str, body: Formula, env: dict):
        name = f"sk{self.skolems}"
        self.skolems += 1
        deps: set = set()
        for n in free_vars(body) - {var}:
            term_vars(env[n], deps)
        args = tuple(sorted(deps))
        self.skolem_arity[name] = len(args)
        return (name,) + args

    def cnf(self, f: Formula, positive: bool, env: dict, cap: int) -> list[list]:
        """Clauses (lists of (sign, l, r)) of ``f`` or of its negation."""
        if isinstance(f, (Eq, Lt, Pred)):
            l, r = self.atom(f, env)
            return [[(positive, l, r)]]
        if isinstance(f, Not):
            return self.cnf(f.body, not positive, env, cap)
        if isinstance(f, Implies):
            f = Or(Not(f.left), f.right)
        elif isinstance(f, Iff):
            f = And(Or(Not(f.left), f.right), Or(f.left, Not(f.right)))
        if isinstance(f, (And, Or)):
            conjunctive = isinstance(f, And) == positive
            left = self.cnf(f.left, positive, env, cap)
            right = self.cnf(f.right, positive, env, cap)
            if conjunctive:
                out = left + right
            else:
                if len(left) * len(right) > cap:
                    raise ClauseLimit(f"CNF exceeds {cap} clauses")
                out = [a + b for a in left for b in right]
            if len(out) > cap:
                raise ClauseLimit(f"CNF exceeds {cap} clauses")
            return out
        universal = isinstance(f, ForAll) == positive
        inner = dict(env)
        if universal:
            inner[f.var] = self.next_var
            self.next_var += 1
            return self.cnf(f.body, positive, inner, cap)
        inner[f.var] = self.skolem(f.var, f.body, env)
        return self.cnf(f.body, positive, inner, cap)


def _normalize(lits: list) -> tuple:
    """Drop repeated literals and rename variables to 0, 1, ..."""
    out = []
    for lit in lits:
        if lit not in out:
            out.append(lit)
    mapping: dict = {}

    def ren(t):
        if t.__class__ is int:
            if t not in mapping:
                mapping[t] = len(mapping)
            return mapping[t]
        if len(t) == 1:
            return t
        return (t[0],) + tuple(ren(a) for a in t[1:])

    return tuple((s, ren(l), ren(r)) for s, l, r in out)


def equality_axioms(symbols: dict[str, int], predicates: dict[str, int]) -> list[tuple]:
    """Reflexivity, symmetry, transitivity and congruence clauses."""
    out = [
        ((True, 0, 0),),
        ((False, 0, 1), (True, 1, 0)),
        ((False, 0, 1), (False, 1, 2), (True, 0, 2)),
    ]
    for name, arity in sorted(symbols.items()):
        for i in range(arity):
            xs = list(range(arity))
            ys = list(xs)
            ys[i] = arity
            out.append(
                ((False, i, arity), (True, (name,) + tuple(xs), (name,) + tuple(ys)))
            )
    for name, arity in sorted(predicates.items()):
        for i in range(arity):
            xs = list(range(arity))
            ys = list(xs)
            ys[i] = arity
            out.append(
                (
                    (False, i, arity),
                    (False, (name,) + tuple(xs), TRUE),
                    (True, (name,) + tuple(ys), TRUE),
                )
            )
    return out


def _signature(clauses) -> tuple[dict, dict]:
    funcs: dict[str, int] = {}
    preds: dict[str, int] = {}

    def visit(t, top):
        if t.__class__ is int:
            return
        if top and t != TRUE:
            preds[t[0]] = len(t) - 1
        elif not top:
            funcs[t[0]] = len(t) - 1
        for a in t[1:]:
            visit(a, False)

    for c in clauses:
        for _, l, r in c:
            if r == TRUE:
                visit(l, True)
            else:
                visit(l, False)
                visit(r, False)
    return funcs, preds


def clausify_tagged(
    axioms: list[Formula],
    goal: Formula | None,
    cap: int = DEFAULT_CNF_CAP,
    equality: bool = True,
) -> list[tuple[tuple, str]]:
    """Clauses of ``axioms & ~goal`` paired with their origin label."""
    tr = _Translator()
    out: list[tuple[tuple, str]] = []
    inputs = [(f, True, f"ax{i}") for i, f in enumerate(axioms)]
    if goal is not None:
        inputs.append((goal, False, "goal"))
    for f, positive, label in inputs:
        if free_vars(f):
            raise ValueError(f"prover inputs must be sentences; {label} has free variables")
        for lits in tr.cnf(f, positive, {}, cap):
            out.append((_normalize(lits), label))
            if len(out) > cap:
                raise ClauseLimit(f"CNF exceeds {cap} clauses")
    if equality:
        funcs, preds = _signature([c for c, _ in out])
        out += [(c, "equality") for c in equality_axioms(funcs, preds)]
    return out


def clausify(
    axioms: list[Formula], goal: Formula | None, cap: int = DEFAULT_CNF_CAP, equality: bool = True
) -> list[Clause]:
    """Clauses of ``axioms & ~goal``.

    With ``equality=True`` the equality axioms (reflexivity, symmetry,
    transitivity and congruence for every function and predicate symbol) are
    appended, so plain resolution is complete for the result.
    """
    return [
        Clause(tuple(Literal(*lit) for lit in c), origin)
        for c, origin in clausify_tagged(axioms, goal, cap, equality)
    ]

"""Exact evaluation in the nonstandard model Z[X]+ and in bounded pieces of N.

Z[X]+ is the set of integer polynomials that are zero or have a positive
leading coefficient, ordered by ``p < q`` iff ``q - p`` has a positive
leading coefficient.  It satisfies every axiom of PA-, so a sentence that is
false there is not provable from PA-.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .fol import (
    Add,
    And,
    Eq,
    Exists,
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
from .printing import print_text

# --------------------------------------------------------------------------
# Integer polynomials as coefficient tuples (index i holds the X^i coefficient)

ZPoly = tuple


def ztrim(coeffs) -> ZPoly:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def zadd(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return ztrim(out)


def zneg(a: ZPoly) -> ZPoly:
    return tuple(-c for c in a)


def zsub(a: ZPoly, b: ZPoly) -> ZPoly:
    return zadd(a, zneg(b))


def zmul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ztrim(out)


def zdiv_exact(num: ZPoly, den: ZPoly) -> ZPoly | None:
    """The quotient ``num / den`` in Z[X] if it exists, else None."""
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(num)
    dd = len(den) - 1
    lead = den[-1]
    if len(rem) - 1 < dd:
        return () if not ztrim(rem) else None
    quot = [0] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        if c % lead:
            return None
        q = c // lead
        quot[k - dd] = q
        for j, dc in enumerate(den):
            rem[k - dd + j] -= q * dc
    if any(rem):
        return None
    return ztrim(quot)


def zsign(a: ZPoly) -> int:
    """Sign in the ordered ring Z[X]: the sign of the leading coefficient."""
    if not a:
        return 0
    return 1 if a[-1] > 0 else -1


def zformat(a: ZPoly) -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


@functools.total_ordering
class PolyPlus:
    """An element of Z[X]+; arbitrary-precision coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = ztrim(int(c) for c in coeffs)
        if coeffs and coeffs[-1] <= 0:
            raise ValueError(f"leading coefficient must be positive: {coeffs}")
        self.coeffs = coeffs

    @classmethod
    def const(cls, n: int) -> "PolyPlus":
        return cls((n,))

    @classmethod
    def X(cls) -> "PolyPlus":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "PolyPlus") -> "PolyPlus":
        return PolyPlus(zadd(self.coeffs, other.coeffs))

    def __mul__(self, other: "PolyPlus") -> "PolyPlus":
        return PolyPlus(zmul(self.coeffs, other.coeffs))

    def minus(self, other: "PolyPlus") -> "PolyPlus | None":
        """``self - other`` if it lies in Z[X]+, else None."""
        diff = zsub(self.coeffs, other.coeffs)
        return PolyPlus(diff) if zsign(diff) >= 0 else None

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyPlus) and self.coeffs == other.coeffs

    def __lt__(self, other: "PolyPlus") -> bool:
        return zsign(zsub(other.coeffs, self.coeffs)) > 0

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyPlus({list(self.coeffs)})"

    def __str__(self) -> str:
        return zformat(self.coeffs)


_MONO = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*(X(?:\s*\^\s*(\d+))?)?\s*")


def parse_poly(text: str) -> PolyPlus:
    """Read ``2X^2 - X + 3`` (the printed form) or a coefficient list ``[3,-1,2]``."""
    text = text.strip()
    if text.startswith("["):
        body = text.strip("[]").strip()
        return PolyPlus(int(c) for c in body.split(",")) if body else PolyPlus()
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _MONO.match(text, pos)
        sign, num, mono, exp = m.groups()
        if m.end() == pos or (num is None and mono is None) or (pos and sign is None):
            raise ValueError(f"cannot read polynomial {text!r} at position {pos}")
        deg = 0 if mono is None else int(exp or 1)
        c = int(num) if num is not None else 1
        coeffs[deg] = coeffs.get(deg, 0) + (-c if sign == "-" else c)
        pos = m.end()
    if not coeffs:
        raise ValueError("empty polynomial")
    return PolyPlus(coeffs.get(i, 0) for i in range(max(coeffs) + 1))


class UnboundVariable(KeyError):
    pass


def poly_eval(t: Term, env: dict[str, PolyPlus]) -> PolyPlus:
    return PolyPlus(_zeval(t, env))


def _zeval(t: Term, env) -> ZPoly:
    if isinstance(t, Var):
        try:
            return env[t.name].coeffs
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Zero):
        return ()
    if isinstance(t, One):
        return (1,)
    if isinstance(t, Add):
        return zadd(_zeval(t.left, env), _zeval(t.right, env))
    return zmul(_zeval(t.left, env), _zeval(t.right, env))


# --------------------------------------------------------------------------
# Three-valued evaluation


@dataclass(frozen=True)
class Unknown:
    """Neither truth value could be certified (incomplete witness search)."""

    reason: str

    def __bool__(self):
        raise TypeError("Unknown has no truth value")


ThreeVal = Union[bool, Unknown]


def t_not(a: ThreeVal) -> ThreeVal:
    return a if isinstance(a, Unknown) else not a


@dataclass(frozen=True)
class WitnessConfig:
    max_degree: int = 3
    max_coeff: int = 7
    max_assignments: int = 20000
    max_disjuncts: int = 4096


DEFAULT_CONFIG = WitnessConfig()


class CandidatePool:
    """Elements of Z[X]+ within the bounds, in canonical order, built lazily.

    Ordered by degree, then by the sum of absolute coefficients, then
    lexicographically from the leading coefficient down.  Each degree group
    is materialized only when an index reaches it.
    """

    def __init__(self, max_degree: int, max_coeff: int):
        self.max_degree = max_degree
        self.max_coeff = max_coeff
        self._items = [PolyPlus(())] + [PolyPlus((c,)) for c in range(1, max_coeff + 1)]
        self._built = 0
        width = 2 * max_coeff + 1
        self._size = 1 + max_coeff + sum(max_coeff * width**d for d in range(1, max_degree + 1))

    def __len__(self) -> int:
        return self._size

    def _grow(self) -> None:
        self._built += 1
        d, c = self._built, self.max_coeff
        group = [
            PolyPlus(tuple(reversed(low)) + (lead,))
            for lead in range(1, c + 1)
            for low in itertools.product(range(-c, c + 1), repeat=d)
        ]
        group.sort(key=lambda p: (sum(abs(x) for x in p.coeffs), tuple(reversed(p.coeffs))))
        self._items += group

    def __getitem__(self, i: int) -> PolyPlus:
        if not 0 <= i < self._size:
            raise IndexError(i)
        while i >= len(self._items):
            self._grow()
        return self._items[i]

    def __iter__(self) -> Iterator[PolyPlus]:
        for i in range(self._size):
            yield self[i]


@functools.lru_cache(maxsize=32)
def candidates(max_degree: int, max_coeff: int) -> CandidatePool:
    return CandidatePool(max_degree, max_coeff)


def zx_eval(
    f: Formula,
    env: dict[str, PolyPlus],
    cfg: WitnessConfig = DEFAULT_CONFIG,
    trace: list[str] | None = None,
) -> ThreeVal:
    """Evaluate ``f`` in Z[X]+ under ``env``.

    Quantifier-free parts are exact.  ``?y`` is decided per disjunct of its
    body: a positive equation linear in y pins the only possible witness, found
    by exact division; otherwise witnesses are enumerated within ``cfg`` and a
    failed search yields :class:`Unknown`.  ``!y`` is ``~?y~``.
    """
    return _Evaluator(cfg, trace).eval(f, env)


class _Evaluator:
    def __init__(self, cfg: WitnessConfig, trace: list[str] | None):
        self.cfg = cfg
        self.trace = trace

    def log(self, line: str):
        if self.trace is not None:
            self.trace.append(line)

    def eval(self, f: Formula, env) -> ThreeVal:
        if isinstance(f, Eq):
            return _zeval(f.left, env) == _zeval(f.right, env)
        if isinstance(f, Lt):
            return zsign(zsub(_zeval(f.right, env), _zeval(f.left, env))) > 0
        if isinstance(f, Pred):
            raise ValueError(f"cannot evaluate schematic predicate {f.name}")
        if isinstance(f, Not):
            return t_not(self.eval(f.body, env))
        if isinstance(f, And):
            a = self.eval(f.left, env)
            if a is False:
                return False
            b = self.eval(f.right, env)
            if b is False:
                return False
            return a if isinstance(a, Unknown) else b
        if isinstance(f, Or):
            a = self.eval(f.left, env)
            if a is True:
                return True
            b = self.eval(f.right, env)
            if b is True:
                return True
            return a if isinstance(a, Unknown) else b
        if isinstance(f, Implies):
            return self.eval(Or(Not(f.left), f.right), env)
        if isinstance(f, Iff):
            a = self.eval(f.left, env)
            b = self.eval(f.right, env)
            if isinstance(a, Unknown):
                return a
            if isinstance(b, Unknown):
                return b
            return a == b
        if isinstance(f, Exists):
            return self.exists(f.var, f.body, env)
        return t_not(self.exists(f.var, Not(f.body), env))

    # ----------------------------------------------------------------------
    def exists(self, y: str, body: Formula, env) -> ThreeVal:
        try:
            disjuncts = _unit_dnf(body, True, self.cfg.max_disjuncts)
        except _TooMany:
            return self.enumerate(y, [(True, body)], env, "body")
        unknown: Unknown | None = None
        for i, lits in enumerate(disjuncts, 1):
            verdict = self.disjunct(y, i, lits, env)
            if verdict is True:
                return True
            if isinstance(verdict, Unknown):
                unknown = unknown or verdict
        return unknown if unknown is not None else False

    def disjunct(self, y: str, index: int, lits, env) -> ThreeVal:
        label = f"?{y} disjunct {index}"
        # literals not mentioning y are decided first
        rest = []
        for sign, g in lits:
            if y in free_vars(g):
                rest.append((sign, g))
                continue
            v = self.eval(g, env)
            v = v if sign else t_not(v)
            if v is False:
                self.log(f"{label}: {_lit_text(sign, g)} is false -> false")
                return False
            if isinstance(v, Unknown):
                return v
        for sign, g in rest:
            if not (sign and isinstance(g, Eq)):
                continue
            poly = _expand_in(g.left, y, env)
            rhs = _expand_in(g.right, y, env)
            for k, c in rhs.items():
                poly[k] = zsub(poly.get(k, ()), c)
            poly = {k: c for k, c in poly.items() if c}
            if not poly or max(poly) != 1:
                continue
            a, b = poly[1], poly.get(0, ())
            sol = zdiv_exact(zneg(b), a)
            if zsign(a) < 0:
                a, b = zneg(a), zneg(b)
            eqn = f"({zformat(a)})*{y} = {zformat(zneg(b))}"
            if sol is None or zsign(sol) < 0:
                why = "not divisible" if sol is None else "negative quotient"
                self.log(f"{label}: pinned by {_lit_text(sign, g)}; {eqn} has no solution in Z[X]+ ({why}) -> false")
                return False
            witness = PolyPlus(sol)
            inner = {**env, y: witness}
            verdict = self.conj(rest, inner)
            self.log(f"{label}: pinned by {_lit_text(sign, g)}; {y} = {witness} -> {_verdict_text(verdict)}")
            return verdict
        return self.enumerate(y, rest, env, label)

    def conj(self, lits, env) -> ThreeVal:
        unknown = None
        for sign, g in lits:
            v = self.eval(g, env)
            v = v if sign else t_not(v)
            if v is False:
                return False
            if isinstance(v, Unknown):
                unknown = unknown or v
        return unknown if unknown is not None else True

    def enumerate(self, y: str, lits, env, label: str) -> ThreeVal:
        cfg = self.cfg
        for cand in candidates(cfg.max_degree, cfg.max_coeff):
            if self.conj(lits, {**env, y: cand}) is True:
                self.log(f"{label}: witness {y} = {cand} found by enumeration -> true")
                return True
        reason = f"no witness for {y} with degree <= {cfg.max_degree}, |coeff| <= {cfg.max_coeff}"
        self.log(f"{label}: {reason} -> unknown")
        return Unknown(reason)


class _TooMany(Exception):
    pass


def _unit_dnf(f: Formula, positive: bool, cap: int) -> list[list[tuple[bool, Formula]]]:
    """Propositional DNF treating atoms and quantified subformulas as units."""
    if isinstance(f, (Eq, Lt, Pred, ForAll, Exists)):
        return [[(positive, f)]]
    if isinstance(f, Not):
        return _unit_dnf(f.body, not positive, cap)
    if isinstance(f, Implies):
        f = Or(Not(f.left), f.right)
    elif isinstance(f, Iff):
        f = Or(And(f.left, f.right), And(Not(f.left), Not(f.right)))
    left = _unit_dnf(f.left, positive, cap)
    right = _unit_dnf(f.right, positive, cap)
    if isinstance(f, Or) == positive:
        out = left + right
    else:
        out = [a + b for a in left for b in right]
    if len(out) > cap:
        raise _TooMany
    return out


def _expand_in(t: Term, y: str, env) -> dict[int, ZPoly]:
    """``t`` as a polynomial in ``y`` with Z[X] coefficients."""
    if isinstance(t, Var):
        if t.name == y:
            return {1: (1,)}
        return {0: _zeval(t, env)}
    if isinstance(t, Zero):
        return {}
    if isinstance(t, One):
        return {0: (1,)}
    a = _expand_in(t.left, y, env)
    b = _expand_in(t.right, y, env)
    out: dict[int, ZPoly] = {}
    if isinstance(t, Add):
        for k in set(a) | set(b):
            out[k] = zadd(a.get(k, ()), b.get(k, ()))
        return out
    for i, ca in a.items():
        for j, cb in b.items():
            out[i + j] = zadd(out.get(i + j, ()), zmul(ca, cb))
    return out


def _lit_text(sign: bool, g: Formula) -> str:
    text = print_text(g)
    return text if sign else f"~({text})"


def _verdict_text(v: ThreeVal) -> str:
    if isinstance(v, Unknown):
        return "unknown"
    return "true" if v else "false"


# --------------------------------------------------------------------------
# Refutation search


@dataclass
class Refutation:
    env: dict[str, PolyPlus]
    trace: list[str] = field(default_factory=list)


def _graded(n: int) -> Iterator[tuple[int, ...]]:
    """All n-tuples of naturals by increasing sum, lexicographic within a sum."""
    if n == 0:
        yield ()
        return
    for total in itertools.count():
        yield from _compositions(total, n)


def _compositions(total: int, n: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


def universal_prefix(f: Formula) -> tuple[list[str], Formula]:
    """Split ``!x1. ... !xn. body`` (free variables count as universal)."""
    names = sorted(free_vars(f))
    while isinstance(f, ForAll):
        if f.var not in names:
            names.append(f.var)
        f = f.body
    return names, f


def refute_claim(f: Formula, cfg: WitnessConfig = DEFAULT_CONFIG) -> Refutation | None:
    """Search Z[X]+ assignments to the universal prefix of ``f`` that falsify it.

    Assignments are tried in graded lexicographic order over the canonical
    candidate list; the first one whose matrix evaluates to a certified False
    is returned.  Since Z[X]+ satisfies PA-, a result certifies that PA- does
    not prove ``f``.
    """
    names, matrix = universal_prefix(f)
    pool = candidates(cfg.max_degree, cfg.max_coeff)
    limit = len(names) * (len(pool) - 1)
    tried = 0
    for idx in _graded(len(names)):
        if sum(idx) > limit or tried >= cfg.max_assignments:
            break
        if any(i >= len(pool) for i in idx):
            continue
        tried += 1
        env = {name: pool[i] for name, i in zip(names, idx)}
        trace: list[str] = []
        verdict = zx_eval(matrix, env, cfg, trace)
        if verdict is False:
            header = ", ".join(f"{k} := {v}" for k, v in env.items()) or "(no variables)"
            return Refutation(env, [f"assignment {header} falsifies the matrix"] + trace)
    return None


# --------------------------------------------------------------------------
# Bounded natural numbers


def nat_term(t: Term, env: dict[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, Add):
        return nat_term(t.left, env) + nat_term(t.right, env)
    return nat_term(t.left, env) * nat_term(t.right, env)


def nat_bounded_eval(f: Formula, env: dict[str, int], bound: int) -> bool:
    """Truth in N with every quantifier ranging over ``0..bound``.

    Exact for quantifier-free formulas (terms are evaluated without
    truncation); for quantified formulas this is only a regression heuristic.
    """
    if isinstance(f, Eq):
        return nat_term(f.left, env) == nat_term(f.right, env)
    if isinstance(f, Lt):
        return nat_term(f.left, env) < nat_term(f.right, env)
    if isinstance(f, Pred):
        raise ValueError(f"cannot evaluate schematic predicate {f.name}")
    if isinstance(f, Not):
        return not nat_bounded_eval(f.body, env, bound)
    if isinstance(f, And):
        return nat_bounded_eval(f.left, env, bound) and nat_bounded_eval(f.right, env, bound)
    if isinstance(f, Or):
        return nat_bounded_eval(f.left, env, bound) or nat_bounded_eval(f.right, env, bound)
    if isinstance(f, Implies):
        return (not nat_bounded_eval(f.left, env, bound)) or nat_bounded_eval(f.right, env, bound)
    if isinstance(f, Iff):
        return nat_bounded_eval(f.left, env, bound) == nat_bounded_eval(f.right, env, bound)
    inner = dict(env)
    test = all if isinstance(f, ForAll) else any

    def each(v: int) -> bool:
        inner[f.var] = v
        return nat_bounded_eval(f.body, inner, bound)

    return test(each(v) for v in range(bound + 1))


"""First-order terms for the saturation prover.

A variable is an ``int``; every other term is a tuple ``(symbol, *args)``.
Predicate atoms are terms whose head is a predicate symbol; they appear only
as the left side of an equation with ``TRUE``.
"""

from __future__ import annotations

GT, LT, EQ, INC = ">", "<", "=", "?"

TRUE = ("$true",)

# symbols of sort bool; variables never range over these
BOOL_SYMBOLS = {"$true"}


def is_var(t) -> bool:
    return t.__class__ is int


def register_predicate(name: str) -> None:
    BOOL_SYMBOLS.add(name)


register_predicate("less")


def term_vars(t, out: set | None = None) -> set:
    if out is None:
        out = set()
    if t.__class__ is int:
        out.add(t)
    else:
        for a in t[1:]:
            term_vars(a, out)
    return out


def occurs(v: int, t) -> bool:
    if t.__class__ is int:
        return t == v
    for a in t[1:]:
        if occurs(v, a):
            return True
    return False


def size(t) -> int:
    if t.__class__ is int:
        return 1
    n = 1
    for a in t[1:]:
        n += size(a)
    return n


def shift_vars(t, k: int):
    if t.__class__ is int:
        return t + k
    if len(t) == 1:
        return t
    return (t[0],) + tuple(shift_vars(a, k) for a in t[1:])


def apply(t, s: dict):
    """Apply a triangular substitution."""
    if t.__class__ is int:
        u = s.get(t)
        if u is None:
            return t
        return apply(u, s)
    if len(t) == 1 or not s:
        return t
    return (t[0],) + tuple(apply(a, s) for a in t[1:])


def instantiate(t, s: dict):
    """Apply a matching substitution (its range is never rewritten again)."""
    if t.__class__ is int:
        return s.get(t, t)
    if len(t) == 1:
        return t
    return (t[0],) + tuple(instantiate(a, s) for a in t[1:])


def _deref(t, s):
    while t.__class__ is int:
        u = s.get(t)
        if u is None:
            return t
        t = u
    return t


def _occurs_deref(v, t, s) -> bool:
    t = _deref(t, s)
    if t.__class__ is int:
        return t == v
    for a in t[1:]:
        if _occurs_deref(v, a, s):
            return True
    return False


def unify(a, b, s: dict | None = None) -> dict | None:
    s = {} if s is None else dict(s)
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        x = _deref(x, s)
        y = _deref(y, s)
        if x is y or x == y:
            continue
        if x.__class__ is int:
            if y.__class__ is not int and y[0] in BOOL_SYMBOLS:
                return None
            if _occurs_deref(x, y, s):
                return None
            s[x] = y
        elif y.__class__ is int:
            if x[0] in BOOL_SYMBOLS:
                return None
            if _occurs_deref(y, x, s):
                return None
            s[y] = x
        else:
            if x[0] != y[0] or len(x) != len(y):
                return None
            stack.extend(zip(x[1:], y[1:]))
    return s


def match(pattern, target, s: dict | None = None) -> dict | None:
    """One-way matching: find ``s`` with ``apply(pattern, s) == target``."""
    s = {} if s is None else dict(s)
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if p.__class__ is int:
            bound = s.get(p)
            if bound is None:
                if t.__class__ is not int and t[0] in BOOL_SYMBOLS:
                    return None
                s[p] = t
            elif bound != t:
                return None
        elif t.__class__ is int:
            return None
        else:
            if p[0] != t[0] or len(p) != len(t):
                return None
            stack.extend(zip(p[1:], t[1:]))
    return s


def subterms(t, path=()):
    """Yield ``(subterm, path)`` for every non-variable position."""
    if t.__class__ is int:
        return
    yield t, path
    for i, a in enumerate(t[1:], 1):
        yield from subterms(a, path + (i,))


def replace_at(t, path, new):
    if not path:
        return new
    i = path[0]
    return t[:i] + (replace_at(t[i], path[1:], new),) + t[i + 1:]


# --------------------------------------------------------------------------
# Knuth-Bendix ordering, all symbol weights 1


class KBO:
    def __init__(self, precedence: dict[str, int]):
        self.prec = precedence

    def rank(self, sym: str) -> int:
        p = self.prec.get(sym)
        if p is None:
            # unseen symbols (fresh Skolem functions) go above the base signature
            p = self.prec[sym] = 1000 + len(self.prec)
        return p

    def compare(self, s, t) -> str:
        if s == t:
            return EQ
        if t.__class__ is int:
            return GT if occurs(t, s) else INC
        if s.__class__ is int:
            return LT if occurs(s, t) else INC
        balance: dict = {}
        w = _weigh(s, balance, 1) - _weigh(t, balance, -1)
        pos = all(v >= 0 for v in balance.values())
        neg = all(v <= 0 for v in balance.values())
        if w > 0:
            return GT if pos else INC
        if w < 0:
            return LT if neg else INC
        if not (pos or neg):
            return INC
        if s[0] != t[0]:
            bigger = self.rank(s[0]) > self.rank(t[0])
            if bigger:
                return GT if pos else INC
            return LT if neg else INC
        for a, b in zip(s[1:], t[1:]):
            if a == b:
                continue
            r = self.compare(a, b)
            if r == GT:
                return GT if pos else INC
            if r == LT:
                return LT if neg else INC
            return INC
        return EQ

    def greater(self, s, t) -> bool:
        return self.compare(s, t) == GT


def _weigh(t, balance: dict, sign: int) -> int:
    if t.__class__ is int:
        balance[t] = balance.get(t, 0) + sign
        return 1
    w = 1
    for a in t[1:]:
        w += _weigh(a, balance, sign)
    return w


def mset_greater(kbo: KBO, m: list, n: list) -> bool:
    """Multiset extension: ``m > n``."""
    m = list(m)
    n = list(n)
    for x in list(m):
        if x in n:
            m.remove(x)
            n.remove(x)
    if not m:
        return False
    return all(any(kbo.compare(x, y) == GT for x in m) for y in n)


# --------------------------------------------------------------------------
# Discrimination tree: retrieve stored patterns that may generalize a query

_LEAF = None
_STAR = 0


def _flatten(t, out: list) -> None:
    if t.__class__ is int:
        out.append(_STAR)
    else:
        out.append(t[0])
        for a in t[1:]:
            _flatten(a, out)


def _flatten_with_skips(t) -> tuple[list, list]:
    keys: list = []
    skips: list = []

    def walk(u):
        i = len(keys)
        keys.append(_STAR if u.__class__ is int else u[0])
        skips.append(0)
        if u.__class__ is not int:
            for a in u[1:]:
                walk(a)
        skips[i] = len(keys)

    walk(t)
    return keys, skips


class DiscTree:
    def __init__(self):
        self.root: dict = {}
        self.count = 0

    def insert(self, pattern, value) -> None:
        keys: list = []
        _flatten(pattern, keys)
        node = self.root
        for k in keys:
            node = node.setdefault(k, {})
        node.setdefault(_LEAF, []).append(value)
        self.count += 1

    def generalizations(self, query):
        """Values whose pattern might match ``query`` (matching must still be checked)."""
        if not self.count:
            return
        keys, skips = _flatten_with_skips(query)
        n = len(keys)
        stack = [(self.root, 0)]
        while stack:
            node, i = stack.pop()
            if i == n:
                leaf = node.get(_LEAF)
                if leaf:
                    yield from leaf
                continue
            star = node.get(_STAR)
            if star is not None:
                stack.append((star, skips[i]))
            k = keys[i]
            if k != _STAR:
                child = node.get(k)
                if child is not None:
                    stack.append((child, i + 1))

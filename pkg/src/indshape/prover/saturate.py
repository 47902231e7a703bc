"""Given-clause saturation.

Two calculi share the loop:

``superposition``
    ordered paramodulation with a Knuth-Bendix ordering, negative literal
    selection, equality resolution and factoring, demodulation (including
    ordered rewriting with unorientable units), simplify-reflect and
    subsumption.
``resolution``
    binary resolution and factoring over the clauses as given; equality is
    only available through the equality axioms added by clausification.

Clauses are tuples of literals ``(positive, left, right)``; a predicate atom
``P`` is the equation ``P = $true``.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from .clausify import clause_text
from .terms import (
    EQ,
    GT,
    INC,
    KBO,
    LT,
    TRUE,
    DiscTree,
    apply,
    instantiate,
    match,
    mset_greater,
    replace_at,
    shift_vars,
    size,
    subterms,
    term_vars,
    unify,
)

OFFSET = 1 << 20  # variables of the renamed given clause start here

BASE_PRECEDENCE = {"$true": 0, "zero": 1, "one": 2, "plus": 100, "times": 101, "less": 200}


@dataclass
class Limits:
    max_clauses: int = 50_000
    max_seconds: float = 10.0


@dataclass
class Options:
    calculus: str = "superposition"
    # every ``age_ratio``-th given clause is the oldest one; 0 disables
    age_ratio: int = 5
    # weight multiplier for clauses mentioning symbols of the negated goal
    goal_bias: float = 0.75
    select: str = "maxneg"
    # drop AC-tautologies when + or * has its A and C axioms
    ac_redundancy: bool = True
    # extra weight for every literal beyond the first
    literal_penalty: float = 0.0
    # weight of a variable occurrence; symbols weigh 1
    var_weight: float = 1.0


@dataclass
class Outcome:
    status: str  # "proof" | "saturated" | "timeout" | "clause-limit"
    proof: list[str] = field(default_factory=list)
    given: int = 0
    generated: int = 0
    seconds: float = 0.0


class _Clause:
    __slots__ = (
        "id", "lits", "rule", "parents", "weight", "alive", "nvars",
        "eligible", "features", "goal",
    )

    def __repr__(self):
        return f"{self.id}: {clause_text(self.lits)}"


class _Timeout(Exception):
    pass


class _ClauseLimit(Exception):
    pass


class _Found(Exception):
    def __init__(self, clause):
        self.clause = clause


def _rename(lits):
    mapping: dict = {}

    def ren(t):
        if t.__class__ is int:
            v = mapping.get(t)
            if v is None:
                v = mapping[t] = len(mapping)
            return v
        if len(t) == 1:
            return t
        return (t[0],) + tuple(ren(a) for a in t[1:])

    return tuple((s, ren(l), ren(r)) for s, l, r in lits), len(mapping)


def _lit_key(lit):
    return repr(lit)


class Saturator:
    def __init__(self, limits: Limits | None = None, options: Options | None = None):
        self.limits = limits or Limits()
        self.opts = options or Options()
        self.kbo = KBO(dict(BASE_PRECEDENCE))
        self.clauses: dict[int, _Clause] = {}
        self.next_id = 0
        self.passive: list = []
        self.passive_age: list = []
        self.active: list[_Clause] = []
        self.rewrite_tree = DiscTree()  # lhs -> (clause, l, r, oriented)
        self.pos_pairs = DiscTree()  # "="(l, r) of positive units
        self.neg_pairs = DiscTree()
        self.from_index: dict = {}  # head -> [(clause, lit_idx, l, r)]
        self.into_index: dict = {}  # head -> [(clause, lit_idx, side, path, subterm)]
        self.nf_cache: dict = {}
        self.goal_symbols: set = set()
        self.taken: set[int] = set()
        self.ac_ops: dict[str, tuple] = {}  # operator -> ids of its A and C axioms
        self.ac_protected: set[int] = set()
        self.generated = 0
        self.given = 0
        self.deadline = 0.0

    # ------------------------------------------------------------------
    # ordering helpers

    def _setup_precedence(self, inputs):
        syms: dict[str, int] = {}

        def visit(t):
            if t.__class__ is int:
                return
            syms.setdefault(t[0], len(t) - 1)
            for a in t[1:]:
                visit(a)

        for lits, _ in inputs:
            for _, l, r in lits:
                visit(l)
                visit(r)
        extra = sorted(s for s in syms if s not in BASE_PRECEDENCE)
        for i, s in enumerate(extra):
            arity = syms[s]
            if s.startswith("p_"):
                self.kbo.prec[s] = 300 + i
            elif arity == 0:
                self.kbo.prec[s] = 10 + i  # Skolem constants sit between one and plus
            else:
                self.kbo.prec[s] = 150 + i

    def _orient(self, lit):
        s, l, r = lit
        c = self.kbo.compare(l, r)
        if c == LT or (c == INC and _lit_key(r) > _lit_key(l)):
            return (s, r, l)
        return lit

    def _lit_mset(self, lit):
        s, l, r = lit
        return [l, r] if s else [l, l, r, r]

    # ------------------------------------------------------------------
    # clause creation

    def _make(self, lits, rule, parents, raw=False) -> _Clause | None:
        """Orient, deduplicate, drop trivial literals; ``None`` for tautologies.

        ``raw`` only orients, so that input clauses appear in traces as given.
        """
        out = []
        for lit in lits:
            lit = self._orient(lit)
            s, l, r = lit
            if raw:
                out.append(lit)
                continue
            if l == r:
                if s:
                    return None
                continue
            if lit in out:
                continue
            if (not s, l, r) in out:
                return None
            out.append(lit)
        lits, nvars = _rename(out)
        c = _Clause()
        c.id = -1
        c.lits = lits
        c.rule = rule
        c.parents = parents
        c.nvars = nvars
        c.alive = True
        c.goal = False
        c.features = _features(lits)
        return c

    def _register(self, c: _Clause) -> _Clause:
        c.id = self.next_id
        self.next_id += 1
        self.clauses[c.id] = c
        w = 0
        syms = set()
        vw = self.opts.var_weight
        for s, l, r in c.lits:
            w += _weight(l, vw) + (0 if r == TRUE else _weight(r, vw))
            _syms(l, syms)
            _syms(r, syms)
        c.goal = bool(syms & self.goal_symbols)
        w += self.opts.literal_penalty * max(0, len(c.lits) - 1)
        c.weight = w * (self.opts.goal_bias if c.goal else 1.0)
        c.eligible = self._eligible(c.lits)
        return c

    def _eligible(self, lits) -> tuple:
        if self.opts.calculus == "resolution":
            return tuple(range(len(lits)))
        negs = [i for i, (s, _, _) in enumerate(lits) if not s]
        if negs and self.opts.select != "none":
            if self.opts.select == "maxneg":
                best = max(negs, key=lambda i: (size(lits[i][1]) + size(lits[i][2]), -i))
            else:
                best = negs[0]
            return (best,)
        ms = [self._lit_mset(l) for l in lits]
        out = []
        for i in range(len(lits)):
            if not any(j != i and mset_greater(self.kbo, ms[j], ms[i]) for j in range(len(lits))):
                out.append(i)
        return tuple(out)

    def _push_passive(self, c: _Clause):
        self._register(c)
        self.generated += 1
        if self.generated > self.limits.max_clauses:
            raise _ClauseLimit()
        heapq.heappush(self.passive, (c.weight, c.id))
        if self.opts.age_ratio:
            heapq.heappush(self.passive_age, c.id)

    # ------------------------------------------------------------------
    # simplification

    def _normal_form(self, t, used: list):
        if t.__class__ is int:
            return t
        cached = self.nf_cache.get(t)
        if cached is not None:
            nf, rules = cached
            used.extend(rules)
            return nf
        local: list = []
        cur = t
        if len(cur) > 1:
            args = tuple(self._normal_form(a, local) for a in cur[1:])
            cur = (cur[0],) + args
        while cur.__class__ is not int:
            step = self._rewrite_top(cur)
            if step is None:
                break
            cur, rule = step
            local.append(rule)
            if cur.__class__ is not int and len(cur) > 1:
                cur = (cur[0],) + tuple(self._normal_form(a, local) for a in cur[1:])
        self.nf_cache[t] = (cur, tuple(local))
        used.extend(local)
        return cur

    def _rewrite_top(self, t):
        for c, l, r, oriented in self.rewrite_tree.generalizations(t):
            if not c.alive:
                continue
            s = match(l, t)
            if s is None:
                continue
            rr = instantiate(r, s)
            if oriented or self.kbo.compare(t, rr) == GT:
                return rr, c.id
        return None

    def _demodulate(self, c: _Clause):
        """Rewrite ``c`` with the active unit equations; returns (lits, rule ids)."""
        used: list = []
        new = []
        for s, l, r in c.lits:
            nl = self._normal_form(l, used)
            nr = r if r == TRUE else self._normal_form(r, used)
            new.append((s, nl, nr))
        return new, used

    def _unit_hit(self, positive: bool, l, r, skip=None):
        """An active unit of the given sign that has ``l = r`` as an instance."""
        tree = self.pos_pairs if positive else self.neg_pairs
        if not tree.count:
            return None
        for a, b in ((l, r), (r, l)):
            pair = ("=", a, b)
            for c, pat in tree.generalizations(pair):
                if c.alive and c is not skip and match(pat, pair) is not None:
                    return c
            if r == TRUE:
                break
        return None

    def _reflect(self, lits):
        """Simplify-reflect: drop literals contradicted by active units."""
        used = []
        out = []
        for s, l, r in lits:
            hit = self._unit_hit(not s, l, r)
            if hit is not None:
                used.append(hit.id)
            else:
                out.append((s, l, r))
        return out, used

    def _subsumed(self, c: _Clause) -> bool:
        lits = c.lits
        for s, l, r in lits:
            if self._unit_hit(s, l, r, skip=c) is not None:
                return True
        n = len(lits)
        fv = c.features
        for d in self.active:
            if d is c or not d.alive or len(d.lits) > n or len(d.lits) == 1:
                continue
            dv = d.features
            if all(fv.get(k, 0) >= v for k, v in dv.items()) and subsumes(d.lits, lits):
                return True
        return False

    def _simplify(self, c: _Clause) -> _Clause | None:
        """Forward simplification; ``None`` if ``c`` is redundant."""
        if self.opts.calculus == "resolution":
            if any(l == r for _, l, r in c.lits):
                c = self._make(c.lits, "simplify", (c.id,))
                if c is None:
                    return None
            if self._subsumed(c):
                return None
            return c
        lits, used = self._demodulate(c)
        lits, used2 = self._reflect(lits)
        used += used2
        if used or any(l == r for _, l, r in lits):
            parents = (c.id,) + tuple(dict.fromkeys(used)) if c.id >= 0 else tuple(c.parents) + tuple(dict.fromkeys(used))
            rule = "simplify" if c.id >= 0 else c.rule
            nc = self._make(lits, rule, parents)
            if nc is None:
                return None
            c = nc
        if self.ac_ops:
            c = self._ac_check(c)
            if c is None:
                return None
        if self._subsumed(c):
            return None
        return c

    def _ac_check(self, c: _Clause) -> _Clause | None:
        """Delete AC-tautologies; drop negative literals whose sides are AC-equal."""
        if c.id in self.ac_protected:
            return c
        ops = self.ac_ops
        kept = []
        dropped = False
        for s, l, r in c.lits:
            if r != TRUE and ac_norm(l, ops) == ac_norm(r, ops):
                if s:
                    return None
                dropped = True
                continue
            kept.append((s, l, r))
        if not dropped:
            return c
        axioms = tuple(i for ids in ops.values() for i in ids)
        if c.id >= 0:
            return self._make(kept, "ac-normalize", (c.id,) + axioms)
        return self._make(kept, c.rule, tuple(c.parents) + axioms)

    def _detect_ac(self):
        found: dict[str, dict] = {}
        for c in list(self.clauses.values()):
            if len(c.lits) != 1 or not c.lits[0][0]:
                continue
            _, l, r = c.lits[0]
            for a, b in ((l, r), (r, l)):
                if a.__class__ is int or len(a) != 3:
                    continue
                op = a[0]
                if a == (op, 0, 1) and b == (op, 1, 0):
                    found.setdefault(op, {})["c"] = c.id
                if a == (op, (op, 0, 1), 2) and b == (op, 0, (op, 1, 2)):
                    found.setdefault(op, {})["a"] = c.id
        self.ac_ops = {op: (d["a"], d["c"]) for op, d in found.items() if len(d) == 2}

    # ------------------------------------------------------------------
    # active set maintenance

    def _activate(self, c: _Clause):
        self.active.append(c)
        if self.opts.calculus == "resolution":
            for i in c.eligible:
                s, l, r = c.lits[i]
                self.from_index.setdefault(_res_key(s, l, r), []).append((c, i))
            return
        if len(c.lits) == 1:
            s, l, r = c.lits[0]
            pairs = self.pos_pairs if s else self.neg_pairs
            pairs.insert(("=", l, r), (c, ("=", l, r)))
            if r != TRUE:
                pairs.insert(("=", r, l), (c, ("=", r, l)))
            if s:
                oriented = self.kbo.compare(l, r) == GT
                if l.__class__ is not int and term_vars(r) <= term_vars(l):
                    self.rewrite_tree.insert(l, (c, l, r, oriented))
                if not oriented and r.__class__ is not int and term_vars(l) <= term_vars(r):
                    self.rewrite_tree.insert(r, (c, r, l, False))
                self.nf_cache.clear()
        for i in c.eligible:
            s, l, r = c.lits[i]
            for side, (a, b) in enumerate(((l, r), (r, l))):
                if a.__class__ is int or a == TRUE:
                    continue
                if side == 1 and self.kbo.compare(l, r) == GT:
                    continue
                if s:
                    self.from_index.setdefault(a[0], []).append((c, i, a, b))
                for u, path in subterms(a):
                    self.into_index.setdefault(u[0], []).append((c, i, side, path, u))

    # ------------------------------------------------------------------
    # inferences

    def _infer(self, g: _Clause):
        if self.opts.calculus == "resolution":
            self._resolution(g)
            return
        gl = tuple((s, shift_vars(l, OFFSET), shift_vars(r, OFFSET)) for s, l, r in g.lits)
        kbo = self.kbo
        # superposition from the given clause into active clauses
        for i in g.eligible:
            s, l, r = gl[i]
            if not s:
                continue
            for side, (a, b) in enumerate(((l, r), (r, l))):
                if a.__class__ is int or a == TRUE:
                    continue
                if side == 1 and kbo.compare(l, r) == GT:
                    continue
                for d, j, dside, path, u in self.into_index.get(a[0], ()):
                    if d.alive:
                        self._superpose(g, gl, i, a, b, d, d.lits, j, dside, path, u)
        # superposition from active clauses into the given clause
        for j in g.eligible:
            s, l, r = gl[j]
            for side, (a, _) in enumerate(((l, r), (r, l))):
                if a.__class__ is int or a == TRUE:
                    continue
                if side == 1 and kbo.compare(l, r) == GT:
                    continue
                for u, path in subterms(a):
                    for d, i, da, db in self.from_index.get(u[0], ()):
                        if d.alive:
                            self._superpose(d, d.lits, i, da, db, g, gl, j, side, path, u)
        # equality resolution
        for i in g.eligible:
            s, l, r = g.lits[i]
            if s:
                continue
            sub = unify(l, r)
            if sub is not None:
                rest = [(t, apply(x, sub), apply(y, sub)) for k, (t, x, y) in enumerate(g.lits) if k != i]
                self._emit(rest, "eq-resolution", (g.id,))
        # equality factoring
        for i in g.eligible:
            s, l, r = g.lits[i]
            if not s:
                continue
            for side_a, (a, b) in enumerate(((l, r), (r, l))):
                if side_a == 1 and kbo.compare(l, r) == GT:
                    continue
                for k, (t, l2, r2) in enumerate(g.lits):
                    if k == i or not t:
                        continue
                    for a2, b2 in ((l2, r2), (r2, l2)):
                        sub = unify(a, a2)
                        if sub is None:
                            continue
                        sa, sb = apply(a, sub), apply(b, sub)
                        if kbo.compare(sa, sb) in (LT, EQ):
                            continue
                        rest = [
                            (t3, apply(x, sub), apply(y, sub))
                            for m, (t3, x, y) in enumerate(g.lits)
                            if m != i
                        ]
                        rest.append((False, sb, apply(b2, sub)))
                        self._emit(rest, "eq-factoring", (g.id,))

    def _superpose(self, c, clits, i, l, r, d, dlits, j, dside, path, u):
        if path == () and dlits[j][2] == TRUE and r != TRUE:
            return  # a predicate atom is only rewritten to $true
        sub = unify(l, u)
        if sub is None:
            return
        kbo = self.kbo
        sl, sr = apply(l, sub), apply(r, sub)
        if kbo.compare(sl, sr) in (LT, EQ):
            return
        ds, dl, dr = dlits[j]
        a, b = (dl, dr) if dside == 0 else (dr, dl)
        sa, sb = apply(a, sub), apply(b, sub)
        if kbo.compare(sa, sb) == LT:
            return
        new_a = replace_at(sa, path, sr)
        rest = [(t, apply(x, sub), apply(y, sub)) for k, (t, x, y) in enumerate(clits) if k != i]
        rest += [(t, apply(x, sub), apply(y, sub)) for k, (t, x, y) in enumerate(dlits) if k != j]
        rest.append((ds, new_a, sb))
        self._emit(rest, "superposition", (c.id, d.id))

    def _resolution(self, g: _Clause):
        gl = tuple((s, shift_vars(l, OFFSET), shift_vars(r, OFFSET)) for s, l, r in g.lits)
        for i, (s, l, r) in enumerate(gl):
            for d, j in self.from_index.get(_res_key(not s, l, r), ()):
                if not d.alive:
                    continue
                _, dl, dr = d.lits[j]
                sub = unify(l, dl)
                if sub is not None:
                    sub = unify(r, dr, sub)
                if sub is None:
                    continue
                rest = [(t, apply(x, sub), apply(y, sub)) for k, (t, x, y) in enumerate(gl) if k != i]
                rest += [(t, apply(x, sub), apply(y, sub)) for k, (t, x, y) in enumerate(d.lits) if k != j]
                self._emit(rest, "resolution", (g.id, d.id))
        # factoring
        for i in range(len(g.lits)):
            for k in range(i + 1, len(g.lits)):
                (s1, l1, r1), (s2, l2, r2) = g.lits[i], g.lits[k]
                if s1 != s2:
                    continue
                sub = unify(l1, l2)
                if sub is not None:
                    sub = unify(r1, r2, sub)
                if sub is None:
                    continue
                rest = [(t, apply(x, sub), apply(y, sub)) for m, (t, x, y) in enumerate(g.lits) if m != k]
                self._emit(rest, "factoring", (g.id,))

    def _emit(self, lits, rule, parents):
        c = self._make(lits, rule, parents)
        if c is None:
            return
        c = self._simplify(c)
        if c is None:
            return
        self._push_passive(c)
        if not c.lits:
            raise _Found(c)

    # ------------------------------------------------------------------
    # main loop

    def _select(self):
        self.given += 1
        heaps = [self.passive]
        if self.opts.age_ratio and self.given % self.opts.age_ratio == 0:
            heaps.insert(0, self.passive_age)
        for heap in heaps:
            while heap:
                item = heapq.heappop(heap)
                cid = item if item.__class__ is int else item[1]
                c = self.clauses[cid]
                if c.alive and cid not in self.taken:
                    self.taken.add(cid)
                    return c
        return None

    def _retire(self, c: _Clause):
        c.alive = False

    def _backward(self, g: _Clause):
        """Re-simplify active clauses with a new unit ``g``."""
        s, l, r = g.lits[0]
        victims = []
        for d in self.active:
            if d is g or not d.alive:
                continue
            if s:
                if _rewritable(self, d, g):
                    victims.append(d)
                    continue
            if subsumes(g.lits, d.lits):
                self._retire(d)
                continue
            if _reflectable(self, d, g):
                victims.append(d)
        for d in victims:
            self._retire(d)
            nc = self._make(d.lits, "simplify", (d.id,))
            if nc is None:
                continue
            nc = self._simplify(nc)
            if nc is None:
                continue
            self._push_passive(nc)
            if not nc.lits:
                raise _Found(nc)
        self.active = [d for d in self.active if d.alive]

    def run(self, inputs: list[tuple[tuple, str]], goal_symbols=()) -> Outcome:
        start = time.monotonic()
        self.deadline = start + self.limits.max_seconds
        self.goal_symbols = set(goal_symbols)
        self._setup_precedence(inputs)
        status = "saturated"
        found = None
        try:
            for lits, origin in inputs:
                c = self._make(lits, f"input {origin}", (), raw=True)
                if c is None:
                    continue
                self._push_passive(c)
                if not c.lits:
                    raise _Found(c)
            if self.opts.calculus == "superposition" and self.opts.ac_redundancy:
                self._detect_ac()
                # left commutativity completes ordered rewriting modulo AC
                for op, ids in sorted(self.ac_ops.items()):
                    lc = ((True, (op, 0, (op, 1, 2)), (op, 1, (op, 0, 2))),)
                    c = self._make(lc, "ac-derived", ids)
                    self._push_passive(c)
                    self.ac_protected.add(c.id)
                self.ac_protected.update(i for ids in self.ac_ops.values() for i in ids)
            while True:
                if time.monotonic() > self.deadline:
                    raise _Timeout()
                g = self._select()
                if g is None:
                    break
                g.alive = False
                g2 = self._simplify(g)
                if g2 is None:
                    continue
                if g2 is not g:
                    self._register(g2)
                    if not g2.lits:
                        raise _Found(g2)
                g = g2
                g.alive = True
                self._activate(g)
                if len(g.lits) == 1 and self.opts.calculus == "superposition":
                    self._backward(g)
                self._infer(g)
        except _Found as hit:
            status = "proof"
            found = hit.clause
        except _Timeout:
            status = "timeout"
        except _ClauseLimit:
            status = "clause-limit"
        out = Outcome(status, given=self.given, generated=self.generated)
        out.seconds = time.monotonic() - start
        if found is not None:
            out.proof = self._proof_lines(found)
        return out

    def _proof_lines(self, c: _Clause) -> list[str]:
        seen = set()
        order = []
        stack = [c.id]
        while stack:
            cid = stack.pop()
            if cid in seen:
                continue
            seen.add(cid)
            order.append(cid)
            stack.extend(self.clauses[cid].parents)
        lines = []
        for cid in sorted(order):
            d = self.clauses[cid]
            ref = ",".join(str(p) for p in d.parents)
            rule = d.rule if not ref else f"{d.rule} {ref}"
            lines.append(f"{cid}. {clause_text(d.lits)} [{rule}]")
        return lines


# --------------------------------------------------------------------------
# helpers


def ac_norm(t, ops):
    """Flattened, argument-sorted form of ``t`` for the AC operators in ``ops``."""
    if t.__class__ is int or len(t) == 1:
        return t
    op = t[0]
    if op in ops:
        args: list = []
        stack = [t]
        while stack:
            u = stack.pop()
            if u.__class__ is not int and u[0] == op:
                stack.append(u[2])
                stack.append(u[1])
            else:
                args.append(ac_norm(u, ops))
        args.sort(key=_tkey)
        return (op,) + tuple(args)
    return (op,) + tuple(ac_norm(a, ops) for a in t[1:])


def _weight(t, vw: float) -> float:
    if t.__class__ is int:
        return vw
    w = 1.0
    for a in t[1:]:
        w += _weight(a, vw)
    return w


def _tkey(t):
    if t.__class__ is int:
        return (0, t)
    return (1, t[0], tuple(_tkey(a) for a in t[1:]))


def _features(lits) -> dict:
    """Symbol counts per literal sign; they can only grow under instantiation."""
    out: dict = {}
    for s, l, r in lits:
        key = "+" if s else "-"
        out[key] = out.get(key, 0) + 1
        for t in (l, r):
            stack = [t]
            while stack:
                u = stack.pop()
                if u.__class__ is int:
                    continue
                k = (s, u[0])
                out[k] = out.get(k, 0) + 1
                stack.extend(u[1:])
    return out


def _res_key(s, l, r):
    return (s, l[0] if r == TRUE else "=")


def _head(t):
    return "*" if t.__class__ is int else t[0]


def _syms(t, out):
    if t.__class__ is int:
        return
    out.add(t[0])
    for a in t[1:]:
        _syms(a, out)


def _inst(pl, pr, l, r) -> bool:
    s = match(pl, l)
    return s is not None and match(pr, r, s) is not None


def _rewritable(sat: Saturator, d: _Clause, g: _Clause) -> bool:
    s, l, r = g.lits[0]
    rules = [(l, r)]
    oriented = sat.kbo.compare(l, r) == GT
    if not oriented:
        rules.append((r, l))
    for ls, a, b in d.lits:
        for t in (a, b):
            if t == TRUE:
                continue
            for u, path in subterms(t):
                for pl, pr in rules:
                    sub = match(pl, u)
                    if sub is None:
                        continue
                    if not term_vars(pr) <= term_vars(pl):
                        continue
                    rr = instantiate(pr, sub)
                    if not oriented and sat.kbo.compare(u, rr) != GT:
                        continue
                    if len(d.lits) == 1 and ls and path == () and t is a:
                        # top of the larger side of a unit: only with a smaller rule
                        if _is_renaming(sub) and sat.kbo.compare(rr, b) != LT:
                            continue
                    return True
    return False


def _reflectable(sat: Saturator, d: _Clause, g: _Clause) -> bool:
    s, l, r = g.lits[0]
    for ds, a, b in d.lits:
        if ds == s:
            continue
        if _inst(l, r, a, b) or _inst(l, r, b, a) or _inst(r, l, a, b):
            return True
    return False


def _is_renaming(sub: dict) -> bool:
    vals = list(sub.values())
    return all(v.__class__ is int for v in vals) and len(set(vals)) == len(vals)


def subsumes(c, d) -> bool:
    """Does some instance of ``c`` map injectively into the literals of ``d``?"""
    if len(c) > len(d):
        return False
    order = sorted(range(len(c)), key=lambda i: -size(c[i][1]))
    return _subsume(c, order, 0, d, {}, 0)


def _subsume(c, order, k, d, sub, used) -> bool:
    if k == len(order):
        return True
    s, l, r = c[order[k]]
    for idx, (t, a, b) in enumerate(d):
        if t != s or used >> idx & 1:
            continue
        for x, y in ((a, b), (b, a)):
            s2 = match(l, x, sub)
            if s2 is not None:
                s2 = match(r, y, s2)
            if s2 is not None and _subsume(c, order, k + 1, d, s2, used | 1 << idx):
                return True
            if r == TRUE:
                break
    return False

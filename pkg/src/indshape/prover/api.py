"""Verdicts, backends and the obligation-discharge entry points."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from typing import Iterable, Union

from ..fol import Formula
from ..schemes import ObligationSet, pa_minus_axioms
from .clausify import ClauseLimit, clausify_tagged
from .external import ENV_COMMAND, run_external, tptp_problem
from .saturate import Limits, Options, Saturator


@dataclass(frozen=True)
class Proved:
    trace: tuple[str, ...] = ()

    @property
    def trace_hash(self) -> str:
        return hashlib.sha256("\n".join(self.trace).encode()).hexdigest()

    def __str__(self) -> str:
        return "Proved"


@dataclass(frozen=True)
class Refuted:
    saturated: bool
    detail: str = ""

    def __str__(self) -> str:
        return "Refuted (saturated)" if self.saturated else "Refuted"


@dataclass(frozen=True)
class Unknown:
    resource: str  # "timeout" | "clause-limit" | "external-error"
    detail: str = ""

    def __str__(self) -> str:
        return f"Unknown ({self.resource})"


Verdict = Union[Proved, Refuted, Unknown]


@dataclass(frozen=True)
class Builtin:
    max_clauses: int = 50_000
    max_seconds: float = 10.0
    options: Options = field(default_factory=Options)


@dataclass(frozen=True)
class External:
    command: str
    timeout: float = 60.0


Backend = Union[Builtin, External]


def backend_from_env(default: Backend | None = None) -> Backend:
    """External backend if the prover command variable is set, else ``default``."""
    cmd = os.environ.get(ENV_COMMAND)
    if cmd:
        return External(cmd)
    return default if default is not None else Builtin()


def _goal_symbols(inputs) -> set[str]:
    out: set[str] = set()
    for lits, origin in inputs:
        if origin != "goal":
            continue
        for _, l, r in lits:
            stack = [l, r]
            while stack:
                t = stack.pop()
                if t.__class__ is int:
                    continue
                if t[0].startswith("sk"):
                    out.add(t[0])
                stack.extend(t[1:])
    return out


def prove_goal(
    goal: Formula,
    hypotheses: Iterable[Formula] = (),
    backend: Backend | None = None,
    base_theory: bool = True,
) -> Verdict:
    """Try to derive ``goal`` from PA- (unless ``base_theory`` is false) and ``hypotheses``."""
    backend = backend or Builtin()
    axioms = (pa_minus_axioms() if base_theory else []) + list(hypotheses)
    if isinstance(backend, External):
        kind, detail = run_external(backend.command, tptp_problem(axioms, goal), backend.timeout)
        if kind == "proved":
            return Proved((f"external: SZS status {detail}",))
        if kind == "refuted":
            return Refuted(False, f"SZS status {detail}")
        if kind == "timeout":
            return Unknown("timeout", detail)
        return Unknown("external-error", detail)
    opts = backend.options
    try:
        inputs = clausify_tagged(axioms, goal, equality=opts.calculus == "resolution")
    except ClauseLimit as exc:
        return Unknown("clause-limit", str(exc))
    sat = Saturator(Limits(backend.max_clauses, backend.max_seconds), opts)
    out = sat.run(inputs, _goal_symbols(inputs))
    if out.status == "proof":
        return Proved(tuple(out.proof))
    if out.status == "saturated":
        return Refuted(True, f"saturated after {out.given} given clauses")
    return Unknown(out.status, f"{out.given} given, {out.generated} generated")


def prove(obls: ObligationSet, backend: Backend | None = None, base_theory: bool = True) -> dict[str, Verdict]:
    """Attempt every obligation independently; keys follow the obligation order."""
    return {
        o.tag: prove_goal(o.goal, o.hypotheses, backend, base_theory)
        for o in obls
    }

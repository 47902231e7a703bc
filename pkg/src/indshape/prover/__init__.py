from .api import (
    Backend,
    Builtin,
    External,
    Proved,
    Refuted,
    Unknown,
    Verdict,
    backend_from_env,
    prove,
    prove_goal,
)
from .clausify import Clause, ClauseLimit, Literal, clausify
from .external import ENV_COMMAND, szs_status, tptp_problem
from .saturate import Limits, Options

__all__ = [
    "Backend",
    "Builtin",
    "Clause",
    "ClauseLimit",
    "ENV_COMMAND",
    "External",
    "Limits",
    "Literal",
    "Options",
    "Proved",
    "Refuted",
    "Unknown",
    "Verdict",
    "backend_from_env",
    "clausify",
    "prove",
    "prove_goal",
    "szs_status",
    "tptp_problem",
]

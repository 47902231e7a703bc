"""Bridge to an external first-order prover over TPTP files."""

from __future__ import annotations

import os
import re
import shlex
import subprocess
import tempfile

from ..fol import Formula
from ..printing import print_tptp

ENV_COMMAND = "INDSHAPE_PROVER_CMD"
PLACEHOLDER = "{file}"

_SZS = re.compile(r"SZS status\s+([A-Za-z]+)")

PROVED_STATUSES = {"Theorem", "Unsatisfiable"}
REFUTED_STATUSES = {"CounterSatisfiable", "Satisfiable"}


def tptp_problem(axioms: list[Formula], goal: Formula, names: list[str] | None = None) -> str:
    lines = []
    for i, f in enumerate(axioms):
        name = names[i] if names else f"ax{i}"
        lines.append(print_tptp(name, "axiom", f))
    lines.append(print_tptp("goal", "conjecture", goal))
    return "\n".join(lines) + "\n"


def szs_status(output: str) -> str | None:
    """The first SZS status word in ``output``."""
    m = _SZS.search(output)
    return m.group(1) if m else None


def split_command(template: str) -> list[str]:
    """Split a command template; exactly one argument must hold ``{file}``."""
    argv = shlex.split(template)
    if not argv:
        raise ValueError("empty prover command")
    if sum(PLACEHOLDER in a for a in argv) != 1:
        raise ValueError(f"prover command needs exactly one {PLACEHOLDER} placeholder")
    return argv


def run_external(template: str, problem: str, timeout: float) -> tuple[str, str]:
    """Run the prover on ``problem``; returns (kind, detail).

    kind is ``proved``, ``refuted``, ``timeout`` or ``error``.
    """
    try:
        argv = split_command(template)
    except ValueError as exc:
        return "error", str(exc)
    with tempfile.TemporaryDirectory(prefix="indshape-") as tmp:
        path = os.path.join(tmp, "problem.p")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(problem)
        argv = [a.replace(PLACEHOLDER, path) for a in argv]
        try:
            proc = subprocess.run(
                argv, capture_output=True, text=True, timeout=timeout, check=False
            )
        except subprocess.TimeoutExpired:
            return "timeout", f"no answer within {timeout:g} s"
        except OSError as exc:
            return "error", f"cannot run {argv[0]!r}: {exc.strerror or exc}"
    status = szs_status(proc.stdout)
    if status is None:
        tail = (proc.stderr or proc.stdout).strip().splitlines()[-1:] or [""]
        return "error", f"no SZS status (exit {proc.returncode}) {tail[0]}".rstrip()
    if status in PROVED_STATUSES:
        return "proved", status
    if status in REFUTED_STATUSES:
        return "refuted", status
    if status == "Timeout":
        return "timeout", status
    return "error", status

"""Command-line front end.

Every subcommand builds a report (an ordered dict) and an exit code:
0 when every requested check came out Proved/True, 1 on any negative
answer, 2 when something stayed unknown, 3 on usage errors.  ``--json``
prints the report as JSON; otherwise a line-oriented text rendering.

Formula arguments may be given inline or as ``@path`` to read a file.
Defaults can be set in ``./indshape.conf`` (or ``--config PATH``), one
``key = value`` per line; flags win over the file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .dnf import to_dnf
from .fol import free_vars
from .models import WitnessConfig, nat_bounded_eval, parse_poly, refute_claim, zx_eval
from .models import Unknown as Undecided
from .parsing import parse_formula, parse_term
from .printing import print_term, print_text
from .prover import Builtin, External, Proved, Refuted, prove_goal
from .prover.external import ENV_COMMAND
from .schemes import (
    induction_axiom,
    inductiveness_obligations,
    notion_name,
    parse_notion,
    parse_walther_spec,
    step_scheme_offset,
    walther_subsumes,
)
from .transforms import (
    DEFAULT_DELTA,
    DEFAULT_PHI,
    GALLERY,
    SchemeTemplate,
    axiom_to_inductive,
    equivalence_shape,
    gallery,
    kaye_reduce,
    merge,
    scheme_substitute,
)

OK, NEGATIVE, UNKNOWN, USAGE = 0, 1, 2, 3

CONFIG_NAME = "indshape.conf"
CONFIG_KEYS = {
    "backend": str,
    "prover_cmd": str,
    "timeout": float,
    "max_clauses": int,
    "max_degree": int,
    "max_coeff": int,
}

CAVEAT = "incomparable by subset test; NOTE: syntactic comparison is incomplete (Thm IOpen)"

# cheap countermodel probe run before the prover on closed goals
PROBE = WitnessConfig(max_degree=1, max_coeff=2, max_assignments=64)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------
# input helpers


def read_arg(value: str) -> str:
    """Inline text, or the contents of a file for ``@path``."""
    if value.startswith("@"):
        try:
            return Path(value[1:]).read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise UsageError(f"cannot read {value[1:]}: {exc.strerror}") from None
    return value


def formula_arg(value: str):
    return parse_formula(read_arg(value))


def load_config(path: str | None) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    if path is None:
        default = Path(CONFIG_NAME)
        if not default.is_file():
            return {}
        path = str(default)
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    out = {}
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not eq or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: expected one of {', '.join(CONFIG_KEYS)} as key = value")
        try:
            out[key] = CONFIG_KEYS[key](value.strip())
        except ValueError:
            raise UsageError(f"{path}:{n}: bad value for {key}") from None
    return out


def _setting(args, cfg: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return cfg.get(key, default)


def _params(theta, x: str, given: str | None) -> list[str]:
    if given is None:
        return sorted(free_vars(theta) - {x})
    return [p.strip() for p in given.split(",") if p.strip()]


def _witness_config(args, cfg: dict) -> WitnessConfig:
    return WitnessConfig(
        max_degree=_setting(args, cfg, "max_degree", 3),
        max_coeff=_setting(args, cfg, "max_coeff", 7),
    )


def _backend(args, cfg: dict):
    kind = _setting(args, cfg, "backend", None)
    cmd = _setting(args, cfg, "prover_cmd", None)
    timeout = _setting(args, cfg, "timeout", None)
    if kind is None:
        env_cmd = os.environ.get(ENV_COMMAND)
        kind = "external" if (cmd or env_cmd) else "builtin"
        cmd = cmd or env_cmd
    if kind == "external":
        if not cmd:
            cmd = os.environ.get(ENV_COMMAND)
        if not cmd:
            raise UsageError(f"external backend needs --prover-cmd or {ENV_COMMAND}")
        return External(cmd, timeout if timeout is not None else 60.0)
    if kind != "builtin":
        raise UsageError(f"unknown backend {kind!r}")
    return Builtin(
        max_clauses=_setting(args, cfg, "max_clauses", 50_000),
        max_seconds=timeout if timeout is not None else 10.0,
    )


# --------------------------------------------------------------------------
# subcommands; each returns (report, exit code)


def _verdict_code(v) -> int:
    if isinstance(v, Proved):
        return OK
    if isinstance(v, Refuted):
        return NEGATIVE
    return UNKNOWN


def _combine(codes) -> int:
    codes = list(codes)
    if NEGATIVE in codes:
        return NEGATIVE
    if UNKNOWN in codes:
        return UNKNOWN
    return OK


def _attempt(goal, hypotheses, backend):
    """Probe for a Z[X]+ countermodel, then hand the goal to the prover."""
    if not hypotheses and not free_vars(goal):
        ref = refute_claim(goal, PROBE)
        if ref is not None:
            where = ", ".join(f"{k} := {v}" for k, v in ref.env.items()) or "closed"
            return Refuted(False, f"false in Z[X]+ ({where})")
    return prove_goal(goal, hypotheses, backend)


def cmd_check(args, cfg):
    phi = formula_arg(args.formula)
    notion = parse_notion(args.notion)
    backend = _backend(args, cfg)
    obls = inductiveness_obligations(phi, args.var, notion)
    rows = []
    codes = []
    for o in obls:
        v = _attempt(o.goal, list(o.hypotheses), backend)
        codes.append(_verdict_code(v))
        row = {"tag": o.tag, "goal": print_text(o.goal), "verdict": str(v)}
        detail = getattr(v, "detail", "")
        if detail:
            row["detail"] = detail
        if args.trace and isinstance(v, Proved):
            row["trace"] = list(v.trace)
        rows.append(row)
    code = _combine(codes)
    summary = {OK: "inductive", NEGATIVE: "not inductive", UNKNOWN: "undecided"}[code]
    report = {
        "formula": print_text(phi),
        "notion": notion_name(notion),
        "backend": "external" if isinstance(backend, External) else "builtin",
        "obligations": rows,
        "result": summary,
    }
    return report, code


def _render_check(r) -> list[str]:
    lines = [f"check {r['formula']} as {r['notion']} ({r['backend']})"]
    width = max(len(o["tag"]) for o in r["obligations"])
    for o in r["obligations"]:
        lines.append(f"{o['tag']:<{width}}  {o['verdict']}: {o['goal']}")
        if "detail" in o:
            lines.append(f"{'':<{width}}    {o['detail']}")
        for t in o.get("trace", ()):
            lines.append(f"{'':<{width}}    {t}")
    lines.append(f"result: {r['result']}")
    return lines


def cmd_scheme(args, cfg):
    theta = formula_arg(args.theta)
    notion = parse_notion(args.notion)
    params = _params(theta, args.var, args.params)
    axiom = induction_axiom(theta, args.var, params, notion)
    return {"theta": print_text(theta), "notion": notion_name(notion), "axiom": print_text(axiom)}, OK


def cmd_transform(args, cfg):
    kind = args.kind
    if kind == "normalize":
        theta = formula_arg(args.theta[0])
        out = axiom_to_inductive(theta, args.var, _params(theta, args.var, args.params))
    elif kind == "merge":
        entries = []
        for text in args.theta:
            theta = formula_arg(text)
            entries.append((theta, args.var, _params(theta, args.var, args.params)))
        out = merge(entries)
    elif kind == "equiv":
        out = equivalence_shape(formula_arg(args.sigma), formula_arg(args.psi))
    elif kind == "substitute":
        template = SchemeTemplate(formula_arg(args.template))
        phi = formula_arg(args.phi)
        out = scheme_substitute(template, phi, args.var, _params(phi, args.var, args.params))
    elif kind == "gallery":
        return cmd_gallery(args, cfg)
    else:  # kaye
        rows = []
        for c in to_dnf(formula_arg(args.formula)):
            red = kaye_reduce(c)
            rows.append({
                "p": [print_term(t) for t in red.p],
                "q": [print_term(t) for t in red.q],
                "formula": print_text(red.to_formula()),
            })
        return {"kind": kind, "conjuncts": rows}, OK
    return {"kind": kind, "result": print_text(out)}, OK


def _gallery_inputs(args):
    phi = formula_arg(args.phi) if args.phi else DEFAULT_PHI
    delta = formula_arg(args.delta) if args.delta else DEFAULT_DELTA
    return phi, delta


def cmd_gallery(args, cfg):
    phi, delta = _gallery_inputs(args)
    names = [args.name] if args.name else list(GALLERY)
    rows = []
    for name in names:
        m = args.m if args.m is not None else (1 if not args.name else None)
        n = args.n if args.n is not None else (1 if not args.name else None)
        f = gallery(name, phi, delta, m=m, n=n, x=args.var)
        rows.append({"name": name, "formula": print_text(f)})
    return {"kind": "gallery", "formulas": rows}, OK


def cmd_refute(args, cfg):
    f = formula_arg(args.formula)
    ref = refute_claim(f, _witness_config(args, cfg))
    if ref is None:
        return {"formula": print_text(f), "refuted": False, "env": {}, "trace": []}, UNKNOWN
    env = {k: str(v) for k, v in ref.env.items()}
    return {"formula": print_text(f), "refuted": True, "env": env, "trace": list(ref.trace)}, NEGATIVE


def _parse_env(text: str | None, model: str) -> dict:
    env = {}
    if not text:
        return env
    for part in text.split(";" if ";" in text else ","):
        if not part.strip():
            continue
        name, eq, value = part.partition("=")
        if not eq:
            raise UsageError(f"expected name=value in --env, got {part!r}")
        env[name.strip()] = int(value) if model == "nat" else parse_poly(value)
    return env


def cmd_eval(args, cfg):
    f = formula_arg(args.formula)
    env = _parse_env(args.env, args.model)
    missing = free_vars(f) - set(env)
    if missing:
        raise UsageError(f"no value for free variable(s) {', '.join(sorted(missing))}")
    trace: list[str] = []
    if args.model == "nat":
        value = nat_bounded_eval(f, env, args.bound)
    else:
        value = zx_eval(f, env, _witness_config(args, cfg), trace)
    if isinstance(value, Undecided):
        text, code = "unknown", UNKNOWN
        trace.append(f"reason: {value.reason}")
    else:
        text, code = ("true", OK) if value else ("false", NEGATIVE)
    report = {
        "formula": print_text(f),
        "model": args.model,
        "env": {k: str(v) for k, v in env.items()},
        "value": text,
        "trace": trace,
    }
    return report, code


def _scheme_text(B, S) -> str:
    bases = ",".join(str(b) for b in sorted(B))
    steps = ",".join(print_term(t) for t in S)
    return f"({{{bases}}},{{{steps}}})"


def cmd_walther(args, cfg):
    left = parse_walther_spec(read_arg(args.left), parse_term)
    right = parse_walther_spec(read_arg(args.right), parse_term)
    forward = walther_subsumes(left, right)
    backward = walther_subsumes(right, left)
    lines = []
    if forward:
        lines.append("left subsumes right by subset test")
    elif backward:
        lines.append("left does not subsume right; right subsumes left by subset test")
    else:
        lines.append(CAVEAT)
    ks = (step_scheme_offset(*left), step_scheme_offset(*right))
    equivalent = None not in ks
    if not forward and equivalent:
        lines.append(
            f"equivalent by Thm IOpen: {_scheme_text(*left)} and {_scheme_text(*right)} "
            f"are step-{ks[0]} and step-{ks[1]} induction with enough base cases"
        )
    report = {
        "left": _scheme_text(*left),
        "right": _scheme_text(*right),
        "left_subsumes_right": forward,
        "right_subsumes_left": backward,
        "equivalent_by_theorem": equivalent,
        "lines": lines,
    }
    return report, OK if forward else NEGATIVE


# --------------------------------------------------------------------------
# text rendering


def render(command: str, report: dict) -> list[str]:
    if command == "check":
        return _render_check(report)
    if command == "scheme":
        return [report["axiom"]]
    if command in ("transform", "gallery"):
        if "result" in report:
            return [report["result"]]
        if "formulas" in report:
            if len(report["formulas"]) == 1:
                return [report["formulas"][0]["formula"]]
            return [f"{r['name']}: {r['formula']}" for r in report["formulas"]]
        return [
            f"p: {r['p'][0]} = {r['p'][1]}; q: {r['q'][0]} != {r['q'][1]}"
            for r in report["conjuncts"]
        ]
    if command == "refute":
        if not report["refuted"]:
            return ["no counterexample found within the search bounds"]
        env = ", ".join(f"{k} := {v}" for k, v in report["env"].items()) or "(closed)"
        return [f"counterexample: {env}"] + report["trace"]
    if command == "eval":
        return [report["value"]] + report["trace"]
    if command == "walther":
        return report["lines"]
    raise AssertionError(command)


# --------------------------------------------------------------------------
# argument parsing


def _add_backend(p):
    p.add_argument("--backend", choices=("builtin", "external"))
    p.add_argument("--prover-cmd", dest="prover_cmd", help="external command template with one {file}")
    p.add_argument("--timeout", type=float, help="seconds per obligation")
    p.add_argument("--max-clauses", dest="max_clauses", type=int)


def _add_search(p):
    p.add_argument("--max-degree", dest="max_degree", type=int)
    p.add_argument("--max-coeff", dest="max_coeff", type=int)


def _add_gallery(p):
    p.add_argument("--phi", help="formula in x (default P(x))")
    p.add_argument("--delta", help="cut formula in x (default D(x))")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="indshape", description="Induction schemes over PA-.")
    parser.add_argument("--json", action="store_true", help="print the report as JSON")
    parser.add_argument("--config", help=f"key = value defaults (default ./{CONFIG_NAME})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="prove the inductiveness obligations of a formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--notion", default="succ")
    p.add_argument("--var", default="x")
    p.add_argument("--trace", action="store_true", help="show derivations of proved obligations")
    _add_backend(p)

    p = sub.add_parser("scheme", help="print an induction axiom")
    p.add_argument("--theta", required=True)
    p.add_argument("--var", default="x")
    p.add_argument("--params", help="comma-separated parameters (default: other free variables)")
    p.add_argument("--notion", default="succ")

    p = sub.add_parser("transform", help="shape transformations")
    p.add_argument("kind", choices=("normalize", "merge", "equiv", "substitute", "gallery", "kaye"))
    p.add_argument("--theta", action="append", default=[])
    p.add_argument("--var", default="x")
    p.add_argument("--params")
    p.add_argument("--sigma")
    p.add_argument("--psi")
    p.add_argument("--template")
    p.add_argument("--formula")
    p.add_argument("--name", choices=GALLERY)
    _add_gallery(p)

    p = sub.add_parser("refute", help="search Z[X]+ for a countermodel")
    p.add_argument("--formula", required=True)
    _add_search(p)

    p = sub.add_parser("eval", help="evaluate in Z[X]+ or in {0..B}")
    p.add_argument("--formula", required=True)
    p.add_argument("--env", help="x=X+1,y=2 (Z[X]+ values as polynomials in X)")
    p.add_argument("--model", choices=("zx", "nat"), default="zx")
    p.add_argument("--bound", type=int, default=16)
    _add_search(p)

    p = sub.add_parser("walther", help="compare two PA(B,S) schemes by inclusion")
    p.add_argument("--left", required=True, help="B=0;S=x+1")
    p.add_argument("--right", required=True)

    p = sub.add_parser("gallery", help="witness formulas")
    p.add_argument("name", nargs="?", choices=GALLERY)
    p.add_argument("--var", default="x")
    _add_gallery(p)
    return parser


_REQUIRED = {
    "normalize": ("theta",),
    "merge": ("theta",),
    "equiv": ("sigma", "psi"),
    "substitute": ("template", "phi"),
    "gallery": ("name",),
    "kaye": ("formula",),
}

COMMANDS = {
    "check": cmd_check,
    "scheme": cmd_scheme,
    "transform": cmd_transform,
    "refute": cmd_refute,
    "eval": cmd_eval,
    "walther": cmd_walther,
    "gallery": cmd_gallery,
}


def run(argv: list[str]) -> tuple[dict, int, bool]:
    """Parse and execute; returns (report, exit code, json flag)."""
    args = build_parser().parse_args(argv)
    if args.command == "transform":
        missing = [k for k in _REQUIRED[args.kind] if not getattr(args, k)]
        if missing:
            raise UsageError(f"transform {args.kind} needs --{', --'.join(missing)}")
    cfg = load_config(args.config)
    report, code = COMMANDS[args.command](args, cfg)
    full = {"command": args.command, "argv": list(argv)}
    full.update(report)
    full["exit_code"] = code
    return full, code, args.json


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        report, code, as_json = run(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return USAGE
    except ValueError as exc:  # includes ParseError
        print(f"indshape: error: {exc}", file=sys.stderr)
        return USAGE
    if as_json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        for line in render(report["command"], report):
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())

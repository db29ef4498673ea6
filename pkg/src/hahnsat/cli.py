"""Command-line front end.

Exit status: 0 success or an expected negative outcome, 1 a failed
assertion, 2 a usage or input error, 3 precision exhaustion.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

from . import report
from .coeff import FIELDS
from .cuts import CutProblem, classify_cut, realize_cut, sample_substructure
from .errors import (
    AmbiguousAtDepth,
    ClaimViolation,
    EqualityDetected,
    HahnError,
    NotPseudoCauchy,
    PrecisionError,
    ResidueCollision,
    SeparationFailure,
)
from .group import INF, parse_expvec, render_expvec
from .harness import SUITES, SuiteConfig, run_suite
from .pseudo import check_pseudo_cauchy, construct_pseudo_limit, is_pseudo_limit
from .series import Precision, f_valuation, residue
from .workspace import Workspace

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--dim", type=int, help="ambient dimension n")
    p.add_argument("--coeff", choices=FIELDS, help="coefficient field for parsing")
    p.add_argument("--precision", help="working truncation order, e.g. '(4, 0)'")
    p.add_argument("--workspace", help="workspace file with dim, field, precision and bindings")
    p.add_argument("--report", help="also write the structured report to this file")
    p.add_argument("--format", choices=("text", "json"), default="text", help="stdout format")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hahnsat", description="Exact Hahn series and cut realization workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a series expression")
    p.add_argument("expr")

    for name in ("classify", "realize"):
        p = sub.add_parser(name, parents=[common], help=f"{name} the cut of x0 over a sampled substructure")
        p.add_argument("--gens", default="", help="semicolon-separated generator expressions")
        p.add_argument("--x0", help="target element defining the cut")
        p.add_argument("--depth", type=int, default=1)
        p.add_argument("--sample-coeff", choices=FIELDS, default="qsqrt2",
                       help="field whose roots the sampler may take (q keeps sqrt2 out of the sample)")
        p.add_argument("--height", type=int, default=2, help="height bound of sampled rational constants")
        if name == "realize":
            p.add_argument("--retries", type=int, default=1, help="deepening attempts on ambiguity")

    p = sub.add_parser("suite", parents=[common], help="run a property suite")
    p.add_argument("name")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--kmax", type=int, default=100)
    p.add_argument("--order", choices=("lex", "q", "gamma"), default="lex", help="order for the eta0 suite")
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")

    p = sub.add_parser("pseudo", parents=[common], help="check a pseudo-Cauchy sequence")
    p.add_argument("sequence", help="semicolon-separated series expressions")
    p.add_argument("--candidate", help="test this element as a pseudo-limit")

    p = sub.add_parser("let", parents=[common], help="add a binding to the workspace file")
    p.add_argument("name")
    p.add_argument("expr")
    return parser


def _workspace(args: argparse.Namespace) -> Workspace:
    ws = Workspace.load(args.workspace) if args.workspace and Path(args.workspace).exists() else None
    dim = args.dim if args.dim is not None else (ws.dim if ws else 1)
    field = args.coeff or (ws.field if ws else "qsqrt2")
    if args.precision:
        prec = Precision(parse_expvec(args.precision))
    elif ws and ws.dim == dim:
        prec = ws.precision
    else:
        prec = Precision.default(dim)
    if prec.dim != dim:
        raise UsageError(f"precision {args.precision} does not have dimension {dim}")
    out = Workspace(dim, field, prec)
    if ws:
        if ws.dim > dim:
            raise UsageError(f"workspace has dimension {ws.dim}, larger than --dim {dim}")
        for name, s in ws.bindings.items():
            out.bind(name, s.pad(dim - ws.dim))
    return out


def _split(text: str) -> list[str]:
    return [part.strip() for part in text.split(";") if part.strip()]


def _emit(args, command: str, config: dict[str, Any], result: dict[str, Any], text: list[str]) -> None:
    rec = report.record(command, config, result)
    if args.report:
        report.write([rec], args.report)
    if args.format == "json":
        sys.stdout.write(report.dumps([rec]))
    else:
        for line in text:
            print(line)


def _config(args, ws: Workspace, **extra) -> dict[str, Any]:
    return {"dim": ws.dim, "coeff": ws.field, "precision": ws.precision, **extra}


def cmd_eval(args, ws: Workspace) -> int:
    s = ws.parse(args.expr)
    result: dict[str, Any] = {"series": s, "exact": s.exact}
    text = [str(s)]
    try:
        v = f_valuation(s)
        result["valuation"] = v
        result["sign"] = s.sign()
        text.append(f"valuation: {'inf' if v is INF else render_expvec(v)}")
        text.append(f"sign: {s.sign()}")
    except PrecisionError as exc:
        result["valuation"] = None
        text.append(f"valuation: undecidable ({exc})")
    try:
        r = residue(s)
        result["residue"] = r
        text.append(f"residue: {r}")
    except HahnError:
        result["residue"] = None
    _emit(args, "eval", _config(args, ws, expr=args.expr), result, text)
    return EXIT_OK


def _problem(args, ws: Workspace) -> CutProblem:
    if not args.x0:
        raise UsageError("--x0 is required")
    gens = [ws.parse(g) for g in _split(args.gens)]
    x0 = ws.parse(args.x0)
    sub = sample_substructure(gens, args.depth, ws.precision, field=args.sample_coeff,
                              height=args.height, dim=ws.dim)
    return CutProblem(sub, x0)


def _cut_config(args, ws):
    return _config(args, ws, gens=_split(args.gens), x0=args.x0, depth=args.depth,
                   sample_coeff=args.sample_coeff, height=args.height)


def cmd_classify(args, ws: Workspace) -> int:
    cfg = _cut_config(args, ws)
    try:
        da = classify_cut(_problem(args, ws))
    except EqualityDetected as exc:
        _emit(args, "classify", cfg, {"outcome": "EqualityDetected", "message": str(exc)}, [f"EqualityDetected: {exc}"])
        return EXIT_OK
    except AmbiguousAtDepth as exc:
        _emit(args, "classify", cfg, {"outcome": "AmbiguousAtDepth", "depth": exc.depth, "message": str(exc)},
              [f"AmbiguousAtDepth: {exc}"])
        return EXIT_OK
    res = report.analysis_result(da)
    text = [f"case: {da.case}", f"({da.note})"]
    if da.gamma is not None:
        text += [f"gamma: {render_expvec(da.gamma)}", f"d0: {da.d0}"]
    if da.a is not None:
        text.append(f"a: {da.a}")
    text.append("ladder: " + ", ".join(render_expvec(v) for v, _ in da.ladder))
    _emit(args, "classify", cfg, {"outcome": "classified", **res}, text)
    return EXIT_OK


def cmd_realize(args, ws: Workspace) -> int:
    cfg = _cut_config(args, ws)
    cfg["retries"] = args.retries
    try:
        rep = realize_cut(_problem(args, ws), retries=args.retries, ambient=ws.ambient)
    except EqualityDetected as exc:
        _emit(args, "realize", cfg, {"outcome": "EqualityDetected", "message": str(exc)}, [f"EqualityDetected: {exc}"])
        return EXIT_OK
    res = report.realization_result(rep)
    text = [f"case: {rep.case}", f"realizer: {rep.realizer}"]
    text += [f"claim: {c}" for c in rep.claims]
    text.append(f"separation checks passed: {len(rep.checks)}")
    if rep.extra.get("deepened_from"):
        text.append(f"deepened from depth {rep.extra['deepened_from'][0]} to {rep.depth}")
    _emit(args, "realize", cfg, {"outcome": "realized", **res}, text)
    return EXIT_OK


def cmd_suite(args, ws: Workspace) -> int:
    if args.name not in SUITES:
        raise UsageError(f"unknown suite {args.name!r}; known: {', '.join(SUITES)}")
    cfg = SuiteConfig(seed=args.seed, trials=args.trials, depth=args.depth, n=ws.dim if args.dim else 3,
                      k_max=args.kmax, precision=ws.precision if args.dim else None, order=args.order)
    rep = run_suite(args.name, cfg)
    result = report.suite_result(rep, timing=args.timing)
    text = [f"suite {rep.name}: {rep.passed} passed, {rep.failed} failed"]
    text += [f"  {k}: {v}" for k, v in sorted(rep.counts.items())]
    text += [f"  note: {note}" for note in rep.notes]
    for c in rep.counterexamples[:5]:
        text.append(f"  counterexample: {c}")
    _emit(args, "suite", report.suite_config(cfg) | {"name": args.name}, result, text)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_pseudo(args, ws: Workspace) -> int:
    xs = [ws.parse(e) for e in _split(args.sequence)]
    cfg = _config(args, ws, sequence=_split(args.sequence), candidate=args.candidate)
    try:
        s = check_pseudo_cauchy(xs)
    except NotPseudoCauchy as exc:
        _emit(args, "pseudo", cfg, {"valid": False, "message": str(exc), "triple": exc.triple},
              [f"not pseudo-Cauchy: {exc}"])
        return EXIT_OK
    limit = construct_pseudo_limit(s)
    result: dict[str, Any] = {"valid": True, "gammas": list(s.gammas), "limit": limit}
    text = ["pseudo-Cauchy: yes", "gammas: " + ", ".join(render_expvec(g) for g in s.gammas), f"limit: {limit}"]
    if args.candidate:
        ok = is_pseudo_limit(ws.parse(args.candidate), s)
        result["candidate_is_limit"] = ok
        text.append(f"candidate is a pseudo-limit: {ok}")
    _emit(args, "pseudo", cfg, result, text)
    return EXIT_OK


def cmd_let(args, ws: Workspace) -> int:
    if not args.workspace:
        raise UsageError("let needs --workspace")
    s = ws.bind(args.name, args.expr)
    ws.save(args.workspace)
    _emit(args, "let", _config(args, ws, name=args.name), {"value": s}, [f"{args.name} = {s}"])
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "classify": cmd_classify,
    "realize": cmd_realize,
    "suite": cmd_suite,
    "pseudo": cmd_pseudo,
    "let": cmd_let,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ws = _workspace(args)
        return COMMANDS[args.command](args, ws)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SeparationFailure, ClaimViolation, ResidueCollision) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except PrecisionError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (HahnError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

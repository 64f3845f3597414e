"""Command-line entry point.

Standard output carries data only (graph6 lines, JSON lines or one JSON
report); diagnostics go to standard error as one JSON object per line.

Exit codes: 0 success, 1 some verdict is FAIL, 2 usage or input error,
3 resources ran out (node budget, hill-climb budget, or only SKIPPED
verdicts).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence

from . import report
from .constructions import Family, FamilySpec, build
from .detectors import (
    has_k_edge_disjoint_cycles,
    has_repeated_cycle_length,
    max_fan,
    triangle_packing_stats,
)
from .enumeration import Diagnostic, enumerate_graphs, ingest
from .errors import ResourceExhausted, SpexGraphError
from .graph import Graph, canonical_form, from_graph6, to_graph6
from .parallel import WORKERS_ENV, default_workers
from .predicates import parse_predicate
from .search import SearchMode, spex, turan_number
from .spectral import (
    DEFAULT_TOL,
    TOL_ENV,
    Partition,
    char_poly,
    max_real_root,
    quotient,
    refine_equitable,
    spectral_radius,
)
from .verify import Status, TheoremId, TheoremSpec, verify, verify_graphs

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("spexgraph")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would print plain text and exit
        raise UsageError(message)


def diagnose(kind: str, message: str, **extra) -> None:
    rec = {"level": "error", "error": kind, "message": message}
    rec.update(extra)
    sys.stderr.write(json.dumps(rec, sort_keys=True) + "\n")


# argument parsing -------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, graph_input: bool = False) -> None:
    p.add_argument("--out", help="write the JSON report envelope to this file")
    p.add_argument("--csv", help="write a CSV summary to this file")
    p.add_argument("--log-level", default="WARNING",
                   choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    p.add_argument("--workers", type=int, help=f"worker processes (env {WORKERS_ENV})")
    p.add_argument("--tol", type=float, help=f"power-iteration tolerance (env {TOL_ENV})")
    if graph_input:
        p.add_argument("--in", dest="input", help="graph6 file; standard input by default")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="spexgraph", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("construct", help="print a named family member as graph6")
    p.add_argument("--family", required=True, help="|".join(f.cli_name for f in Family))
    for name in ("n", "k", "a", "b"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--embed", help="graph6 of the embedded graph (bipartite-embed)")
    p.add_argument("--side", default="floor", choices=["floor", "ceil"])
    _common(p)

    p = sub.add_parser("rho", help="spectral radius of each input graph")
    p.add_argument("--quotient", action="store_true", help="also report the quotient matrix")
    p.add_argument("--partition", default="auto", choices=["auto", "unit"])
    _common(p, graph_input=True)

    p = sub.add_parser("detect", help="run a detector on each input graph")
    p.add_argument("--what", required=True,
                   choices=["repeated-length", "edge-disjoint-cycles", "triangle-packing", "fan"])
    p.add_argument("--k", type=int, help="target count (edge-disjoint-cycles: default 2)")
    _common(p, graph_input=True)

    p = sub.add_parser("enumerate", help="one graph6 line per isomorphism class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--prune", help="keep only graphs satisfying this named predicate")
    _common(p)

    p = sub.add_parser("spex", help="spectral extremal graph under a named predicate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--predicate", required=True)
    p.add_argument("--mode", default="EXHAUSTIVE", type=str.upper, choices=[m.value for m in SearchMode])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int)
    p.add_argument("--restarts", type=int, default=20)
    _common(p)

    p = sub.add_parser("turan", help="maximum edges under a named predicate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--predicate", required=True)
    _common(p)

    p = sub.add_parser("verify", help="replay a named result over a range of orders")
    p.add_argument("--theorem", required=True, help=", ".join(t.value for t in TheoremId))
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-step", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int)
    p.add_argument("--restarts", type=int, default=20)
    _common(p, graph_input=True)
    return ap


def resolve_workers(flag: Optional[int]) -> int:
    if flag is not None:
        if flag < 1:
            raise UsageError("--workers must be >= 1")
        return flag
    env = os.environ.get(WORKERS_ENV)
    if env is not None:
        try:
            val = int(env)
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
        if val < 1:
            raise UsageError(f"{WORKERS_ENV} must be >= 1")
        return val
    return default_workers()


def resolve_tol(flag: Optional[float]) -> float:
    if flag is not None:
        if not flag > 0:
            raise UsageError("--tol must be positive")
        return flag
    env = os.environ.get(TOL_ENV)
    if env is not None:
        try:
            val = float(env)
        except ValueError:
            raise UsageError(f"{TOL_ENV} must be a number, got {env!r}") from None
        if not val > 0:
            raise UsageError(f"{TOL_ENV} must be positive")
        return val
    return DEFAULT_TOL


def _validate(args) -> None:
    """Flag-combination checks that must pass before any work starts."""
    c = args.command
    if c in ("construct", "enumerate", "spex", "turan") and getattr(args, "n", None) is not None and args.n < 1:
        raise UsageError("--n must be positive")
    if c == "construct":
        fam = Family.parse(args.family)
        if args.embed is not None and fam is not Family.BIPARTITE_EMBED:
            raise UsageError("--embed only applies to bipartite-embed")
    if c == "detect" and args.k is not None:
        if args.k < 1:
            raise UsageError("--k must be >= 1")
        if args.what == "repeated-length":
            raise UsageError("--k does not apply to repeated-length")
    if c in ("enumerate",) and args.prune:
        parse_predicate(args.prune)
    if c in ("spex", "turan"):
        parse_predicate(args.predicate)
    if c == "spex":
        if args.restarts < 1:
            raise UsageError("--restarts must be >= 1")
        if args.budget is not None and args.budget < 1:
            raise UsageError("--budget must be >= 1")
        if args.mode == SearchMode.EXHAUSTIVE.value and args.budget is not None:
            raise UsageError("--budget only applies to HILLCLIMB")
    if c == "verify":
        TheoremId.parse(args.theorem)
        if args.restarts < 1:
            raise UsageError("--restarts must be >= 1")


def _flags(args) -> Dict[str, Any]:
    skip = {"command", "out", "csv", "log_level", "workers", "tol"}
    return {k: v for k, v in vars(args).items() if k not in skip}


# input ---------------------------------------------------------------------------------

def _graphs(args, diags: List[Diagnostic]) -> Iterator[Graph]:
    if args.input:
        try:
            fh = open(args.input, "r", encoding="ascii", errors="replace")
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
        with fh:
            yield from _report_bad(ingest(fh, diags), diags)
    else:
        yield from _report_bad(ingest(sys.stdin, diags), diags)


def _report_bad(stream: Iterable[Graph], diags: List[Diagnostic]) -> Iterator[Graph]:
    seen = 0
    for g in stream:
        while seen < len(diags):
            d = diags[seen]
            diagnose(d.error, d.message, line=d.line)
            seen += 1
        yield g
    for d in diags[seen:]:
        diagnose(d.error, d.message, line=d.line)


# commands ----------------------------------------------------------------------------

class Outcome:
    """Payload plus the exit code it implies."""

    def __init__(self, payload: Any, code: int = EXIT_OK, lines: Optional[List[str]] = None):
        self.payload = payload
        self.code = code
        self.lines = lines


def cmd_construct(args, tol, workers) -> Outcome:
    embed = from_graph6(args.embed) if args.embed else None
    params = {k: getattr(args, k) for k in ("n", "k", "a", "b") if getattr(args, k) is not None}
    spec = FamilySpec.of(args.family, embed=embed, side=args.side, **params)
    built = build(spec)
    g6 = to_graph6(built.graph)
    rec = {"graph6": g6, "n": built.graph.n, "m": built.graph.m,
           "family": spec.to_dict(), "partition": built.partition.to_list()}
    return Outcome({"records": [rec], "diagnostics": []}, lines=[g6])


def _rho_record(g: Graph, args, tol: float) -> dict:
    res = spectral_radius(g, tol=tol)
    rec = {"graph6": to_graph6(g), "n": g.n, "m": g.m}
    rec.update(res.to_dict())
    rec["tol"] = tol
    if args.quotient:
        part = refine_equitable(g) if args.partition == "auto" else Partition.unit(g.n)
        q = quotient(g, part)
        poly = char_poly(q)
        rec["quotient"] = {
            "cells": part.to_list(),
            "matrix": q.to_list(),
            "charpoly": list(poly.coefficients),
            "charpolyText": str(poly),
            "root": float(f"{max_real_root(poly):.12g}"),
        }
    return rec


def _detect_record(g: Graph, args) -> dict:
    what = args.what
    nodes = None
    if what == "repeated-length":
        wit = has_repeated_cycle_length(g)
        result: Any = wit is not None
    elif what == "edge-disjoint-cycles":
        wit = has_k_edge_disjoint_cycles(g, args.k or 2)
        result = wit is not None
    elif what == "triangle-packing":
        nu, wit, nodes = triangle_packing_stats(g)
        result = nu if args.k is None else nu >= args.k
        if args.k is not None:
            wit = wit if nu >= args.k else None
            if wit is not None:
                wit.packing = wit.packing[: args.k]
    else:
        k, wit = max_fan(g)
        result = k if args.k is None else k >= args.k
        if args.k is not None:
            if k >= args.k:
                wit.matching_edges = wit.matching_edges[: args.k]
            else:
                wit = None
    return {"graph6": to_graph6(g), "what": what, "result": result,
            "witness": None if wit is None else wit.to_dict(), "nodesExplored": nodes}


def _per_graph(args, fn: Callable[[Graph], dict]) -> Outcome:
    diags: List[Diagnostic] = []
    recs, lines = [], []
    code = EXIT_OK
    for g in _graphs(args, diags):
        try:
            rec = fn(g)
        except ResourceExhausted as exc:
            diagnose(exc.code, str(exc), graph6=to_graph6(g))
            code = max(code, EXIT_RESOURCE)
            continue
        except SpexGraphError as exc:
            diagnose(exc.code, str(exc), graph6=to_graph6(g))
            code = max(code, EXIT_USAGE)
            continue
        recs.append(rec)
        lines.append(report.dumps(rec))
    if diags:
        code = max(code, EXIT_USAGE)
    payload = {"records": recs, "diagnostics": [d.to_dict() for d in diags]}
    return Outcome(payload, code, lines)


def cmd_rho(args, tol, workers) -> Outcome:
    return _per_graph(args, lambda g: _rho_record(g, args, tol))


def cmd_detect(args, tol, workers) -> Outcome:
    return _per_graph(args, lambda g: _detect_record(g, args))


def cmd_enumerate(args, tol, workers) -> Outcome:
    recs, lines = [], []
    for g in enumerate_graphs(args.n, connected_only=args.connected, prune=args.prune, workers=workers):
        g6 = canonical_form(g)
        recs.append({"graph6": g6, "n": g.n, "m": g.m})
        lines.append(g6)
    return Outcome({"records": recs, "diagnostics": []}, lines=lines)


def cmd_spex(args, tol, workers) -> Outcome:
    res = spex(args.n, args.predicate, mode=args.mode, seed=args.seed, budget=args.budget,
               restarts=args.restarts, workers=workers)
    return Outcome(res.to_dict(), EXIT_RESOURCE if res.budget_exhausted else EXIT_OK)


def cmd_turan(args, tol, workers) -> Outcome:
    return Outcome(turan_number(args.n, args.predicate, workers).to_dict())


def cmd_verify(args, tol, workers) -> Outcome:
    spec = TheoremSpec(TheoremId.parse(args.theorem), args.n_min, args.n_max, k=args.k,
                       seed=args.seed, budget=args.budget, n_step=args.n_step,
                       restarts=args.restarts, workers=workers)
    diags: List[Diagnostic] = []
    if args.input:
        rep = verify_graphs(spec, list(_graphs(args, diags)))
    else:
        rep = verify(spec)
    sts = rep.statuses()
    if Status.FAIL in sts:
        code = EXIT_FAIL
    elif all(s is Status.SKIPPED for s in sts):
        code = EXIT_RESOURCE  # also covers an empty report
    else:
        code = EXIT_OK
    if args.input and diags and code == EXIT_OK:
        code = EXIT_USAGE
    return Outcome(rep.to_dict(), code)


COMMANDS = {
    "construct": cmd_construct,
    "rho": cmd_rho,
    "detect": cmd_detect,
    "enumerate": cmd_enumerate,
    "spex": cmd_spex,
    "turan": cmd_turan,
    "verify": cmd_verify,
}
LINE_COMMANDS = ("construct", "rho", "detect", "enumerate")


# driver -------------------------------------------------------------------------------

def _emit(args, env: report.ReportEnvelope, out: Outcome) -> None:
    doc = env.to_dict()
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.command in LINE_COMMANDS:
        if not args.out:
            for line in out.lines or []:
                sys.stdout.write(line + "\n")
    elif not args.out:
        sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(report.to_csv(args.command, out.payload))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the command and return the exit code."""
    try:
        args = build_parser().parse_args(list(sys.argv[1:] if argv is None else argv))
        logging.basicConfig(level=args.log_level, stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
        log.setLevel(args.log_level)
        workers = resolve_workers(args.workers)
        tol = resolve_tol(args.tol)
        _validate(args)
    except UsageError as exc:
        diagnose("UsageError", str(exc))
        return EXIT_USAGE
    except SpexGraphError as exc:
        diagnose(exc.code, str(exc))
        return EXIT_USAGE

    config = report.RunConfig(args.command, _flags(args), tol, workers, args.out, args.csv, args.log_level)
    env = report.ReportEnvelope(args.command, config)
    log.info("running %s with %d worker(s)", args.command, workers)
    try:
        out = COMMANDS[args.command](args, tol, workers)
    except UsageError as exc:
        diagnose("UsageError", str(exc))
        return EXIT_USAGE
    except ResourceExhausted as exc:
        diagnose(exc.code, str(exc))
        return EXIT_RESOURCE
    except SpexGraphError as exc:
        diagnose(exc.code, str(exc))
        return EXIT_USAGE
    except OSError as exc:
        diagnose("IOError", str(exc))
        return EXIT_USAGE
    env.finish(out.payload)
    try:
        _emit(args, env, out)
    except OSError as exc:
        diagnose("IOError", str(exc))
        return EXIT_USAGE
    log.info("%s finished in %.3fs, exit %d", args.command, env.wall_time, out.code)
    return out.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()

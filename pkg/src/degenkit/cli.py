"""Command-line front end.

Every command prints a JSON report on stdout and a short human summary on
stderr.  Exit codes: 0 success, 1 usage or input error, 2 refusal or
undecided verdict, 3 resource cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .domaincheck import UNKNOWN, check_domain, fg_criterion
from .filtration import CoWeight, PresentedRing, WeightSystem, initial_ideal, wt_value
from .groebner import INF, Ideal, Limits, ResourceLimitError, buchberger, is_unit_ideal
from .lctmonomial import LctError, lc_places, lct
from .parsing import ParseError, parse_file, parse_int_rows, parse_polynomial
from .polyarith import GREVLEX, LEX, format_rational, weighted_order
from .rees import fiber_at, flatness_check, rees_presentation
from .toricfano import (
    BudgetExceeded,
    PolytopeError,
    A_value,
    S_closed_form,
    S_truncated,
    delta_estimate,
    parse_polytope,
    volume_and_barycenter,
)

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_REFUSED, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Refusal(Exception):
    """A mathematical refusal; carries the partial results to report."""

    def __init__(self, message: str, results: Optional[dict] = None):
        super().__init__(message)
        self.results = results or {}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- serialization -------------------------------------------------------------------

def q(x) -> str:
    if x == INF:
        return "inf"
    return format_rational(Fraction(x))


def polys(gens) -> List[str]:
    return [str(g) for g in gens]


def rows_json(rows) -> List[List[int]]:
    return [list(r) for r in rows]


# -- input helpers -----------------------------------------------------------------

def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_ring_file(text: str):
    f = parse_file(text)
    return f, Ideal(f.context, tuple(f.generators))


def _weights(args, file_weights) -> WeightSystem:
    if args.weights:
        try:
            rows = parse_int_rows(args.weights)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif file_weights:
        rows = file_weights
    else:
        raise UsageError("weights required (use --weights or a 'weights' line in the file)")
    try:
        return WeightSystem(tuple(rows))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _coweight(args, file_coweight, W: WeightSystem) -> CoWeight:
    if args.coweight:
        rows = parse_int_rows(args.coweight)
        if len(rows) != 1:
            raise UsageError("--coweight takes a single row")
        vec = rows[0]
    elif file_coweight:
        vec = file_coweight
    else:
        vec = (1,) * W.r
    try:
        return CoWeight(tuple(vec))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _ring(ideal: Ideal, W: Optional[WeightSystem]) -> PresentedRing:
    try:
        return PresentedRing(ideal, W)
    except ValueError as exc:
        raise Refusal(str(exc)) from None


def _limits(args) -> Limits:
    return Limits(max_pairs=args.max_pairs) if args.max_pairs else Limits()


# -- commands ------------------------------------------------------------------------

def cmd_gb(args, text):
    f, ideal = _load_ring_file(text)
    if args.order == "lex":
        order = LEX
    elif args.order == "weighted":
        order = weighted_order(_weights(args, f.weights).rows)
    else:
        order = GREVLEX
    gb = buchberger(ideal, order, _limits(args))
    summary = f"{len(gb)} basis elements under {args.order}"
    return {"order": args.order, "basis": polys(gb.elements)}, summary


def cmd_initial(args, text):
    f, ideal = _load_ring_file(text)
    W = _weights(args, f.weights)
    init = initial_ideal(_ring(ideal, W), W, _limits(args))
    res = {"weights": rows_json(W.rows), "initial_ideal": polys(init.generators),
           "empty_central_fiber": is_unit_ideal(init)}
    return res, f"in_W(I) = {init}"


def cmd_rees(args, text):
    f, ideal = _load_ring_file(text)
    W = _weights(args, f.weights)
    ring = _ring(ideal, W)
    rp = rees_presentation(ring, W, _limits(args))
    flat = flatness_check(ring, W, args.degree_bound, rp)
    res = {
        "variables": list(rp.context.names),
        "t_variables": list(rp.t_names),
        "weights": rows_json(W.rows),
        "generators": polys(rp.ideal.generators),
        "substitution": rp.substitution_record(),
        "fiber_at_one": polys(fiber_at(rp, (1,) * W.r).generators),
        "fiber_at_zero": polys(fiber_at(rp, (0,) * W.r).generators),
        "flatness": {"flat": flat.flat, "torsion_free": flat.torsion_free, "partial": flat.partial,
                     "degree_bound": args.degree_bound,
                     "hilbert_ring": list(flat.table_ring.values),
                     "hilbert_fiber": list(flat.table_fiber.values)},
    }
    return res, f"Rees ideal with {len(rp.ideal.generators)} generators"


def cmd_fiber(args, text):
    f, ideal = _load_ring_file(text)
    W = _weights(args, f.weights)
    rp = rees_presentation(_ring(ideal, W), W, _limits(args))
    if args.at:
        try:
            point = tuple(int(v) for v in args.at.split(","))
        except ValueError:
            raise UsageError(f"malformed fiber point {args.at!r}") from None
    else:
        point = (0,) * W.r
    try:
        fib = fiber_at(rp, point)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"point": list(point), "fiber": polys(fib.generators)}, f"fiber at {point}: {fib}"


def cmd_wt(args, text):
    f, ideal = _load_ring_file(text)
    W = _weights(args, f.weights)
    w = _coweight(args, f.coweight, W)
    if not args.poly:
        raise UsageError("wt needs --poly EXPR")
    try:
        g = parse_polynomial(args.poly, f.context)
    except ParseError as exc:
        raise UsageError(f"--poly: {exc}") from None
    ring = _ring(ideal, W)
    value = wt_value(g, ring, w, W, _limits(args))
    res = {"poly": str(g), "coweight": list(w.w), "composite": list(W.composite(w)),
           "wt": q(value)}
    return res, f"wt({g}) = {q(value)}"


def _verdict_json(v):
    return {
        "status": v.status,
        "method": v.method,
        "witness": polys(v.witness) if v.witness else None,
        "certificate": v.certificate,
        "notes": list(v.notes),
    }


def cmd_check_domain(args, text):
    f, ideal = _load_ring_file(text)
    target = ideal
    if args.weights or f.weights:
        W = _weights(args, f.weights)
        target = initial_ideal(_ring(ideal, W), W, _limits(args))
    if is_unit_ideal(target):
        raise Refusal("unit ideal: the quotient ring is zero",
                      {"ideal": polys(target.generators)})
    v = check_domain(target)
    res = {"ideal": polys(target.generators), "verdict": _verdict_json(v)}
    if v.status == UNKNOWN:
        raise Refusal("no decision", res)
    return res, f"{v.status} via {v.method}"


def cmd_fg_check(args, text):
    f, ideal = _load_ring_file(text)
    W = _weights(args, f.weights)
    rep = fg_criterion(_ring(ideal, W), W, trials=args.trials, seed=args.seed,
                       limits=_limits(args))
    res = {
        "weights": rows_json(W.rows),
        "initial_ideal": polys(rep.initial_ideal.generators),
        "verdict": _verdict_json(rep.verdict),
        "conclusion": rep.conclusion,
        "presentation": rep.presentation,
        "caveat": rep.caveat,
    }
    if rep.sampling is not None:
        s = rep.sampling
        res["sampling"] = {
            "trials": s.trials, "passed": s.passed, "seed": s.seed,
            "counterexample": None if s.ok else {
                "f": str(s.counterexample[0]), "g": str(s.counterexample[1]),
                "wt_f": q(s.counterexample[2]), "wt_g": q(s.counterexample[3]),
                "wt_fg": q(s.counterexample[4])},
        }
    if rep.status == UNKNOWN:
        raise Refusal(rep.conclusion, res)
    return res, f"{rep.status}: {rep.conclusion}"


def cmd_lct(args, text):
    _, ideal = _load_ring_file(text)
    try:
        r = lct(ideal)
    except LctError as exc:
        raise Refusal(str(exc)) from None
    return {"c": q(r.c), "rays": rows_json(r.rays), "dual_c": q(r.dual_value)}, f"lct = {q(r.c)}"


def cmd_lc_places(args, text):
    _, ideal = _load_ring_file(text)
    try:
        r = lct(ideal)
        rays = lc_places(ideal, r.c)
    except LctError as exc:
        raise Refusal(str(exc)) from None
    return {"c": q(r.c), "rays": rows_json(rays)}, f"{len(rays)} extreme lc-place rays"


def cmd_toric(args, text):
    P = parse_polytope(text)
    vol, bary = volume_and_barycenter(P)
    est = delta_estimate(P)
    res = {
        "dim": P.dim,
        "vertices": [[q(x) for x in v] for v in P.vertices],
        "fano_normalized": P.fano_normalized,
        "volume": q(vol),
        "barycenter": [q(x) for x in bary],
        "rays": [{"ray": list(u), "A": q(A_value(u, P)), "S": q(S_closed_form(u, P)),
                  "delta_AS": q(r)} for u, r in est.per_ray],
        "min_delta_AS": q(est.ratio_AS),
        "delta_SA_at_min": q(est.ratio_SA),
        "ray": list(est.ray),
    }
    if args.ray:
        try:
            w = tuple(Fraction(v) for v in args.ray.split(","))
        except ValueError:
            raise UsageError(f"malformed ray {args.ray!r}") from None
        if len(w) != P.dim:
            raise UsageError("ray dimension does not match the polytope")
        entry = {"ray": [q(x) for x in w], "A": q(A_value(w, P)), "S": q(S_closed_form(w, P))}
        if args.m:
            entry["m"] = args.m
            entry["S_truncated"] = q(S_truncated(w, P, args.m))
        res["query"] = entry
    return res, f"min A/S = {q(est.ratio_AS)} at ray {est.ray}"


COMMANDS = {
    "gb": cmd_gb,
    "initial": cmd_initial,
    "rees": cmd_rees,
    "fiber": cmd_fiber,
    "wt": cmd_wt,
    "check-domain": cmd_check_domain,
    "fg-check": cmd_fg_check,
    "lct": cmd_lct,
    "lc-places": cmd_lc_places,
    "toric": cmd_toric,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="degenkit", description="Weight degenerations, graded rings and toric invariants.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("file", help="input file (ideal format, or polytope format for 'toric')")
        sp.add_argument("--weights", help='weight rows, e.g. "3,2" or "1,0;0,1"')
        sp.add_argument("--coweight", help='coweight, e.g. "1,1"')
        sp.add_argument("--degree-bound", type=int, default=20, help="Hilbert function bound")
        sp.add_argument("--trials", type=int, default=2000)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", metavar="PATH", help="also write the report to PATH")
        sp.add_argument("--max-pairs", type=int, help="S-pair cap for Buchberger")
        if name == "gb":
            sp.add_argument("--order", choices=("grevlex", "lex", "weighted"), default="grevlex")
        if name == "fiber":
            sp.add_argument("--at", help='fiber point such as "0" or "1,0"')
        if name == "wt":
            sp.add_argument("--poly", help="polynomial to evaluate")
        if name == "toric":
            sp.add_argument("--ray", help="extra weight to evaluate")
            sp.add_argument("--m", type=int, help="truncation level for S at --ray")
    return p


def make_report(command: str, text: str, seed: int, results: dict, status: str,
                message: Optional[str], elapsed: float) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "input_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "seed": seed,
        "status": status,
        "message": message,
        "results": results,
        "timing_seconds": round(elapsed, 6),
    }


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    text = ""
    results: dict = {}
    message = None
    try:
        text = _read(args.file)
        results, summary = COMMANDS[args.command](args, text)
        code, status = EXIT_OK, "ok"
    except (UsageError, ParseError, PolytopeError) as exc:
        code, status, summary, message = EXIT_USAGE, "error", f"error: {exc}", str(exc)
    except Refusal as exc:
        code, status, summary, message = EXIT_REFUSED, "refused", f"refused: {exc}", str(exc)
        results = exc.results
    except (ResourceLimitError, BudgetExceeded) as exc:
        code, status, summary, message = EXIT_CAP, "resource-limit", f"resource cap: {exc}", str(exc)
    report = make_report(args.command, text, args.seed, results, status, message,
                         time.perf_counter() - start)
    out = render(report)
    stdout.write(out)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(out)
    stderr.write(f"{args.command}: {summary}\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

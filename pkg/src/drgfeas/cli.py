"""Command-line interface: ``drgfeas check | enumerate | qpoly | graphs``.

Exit codes: 0 success (every array feasible, no diff, every graph check
passed), 1 a negative verdict, 2 usage or input error, 3 candidate cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .arith import Interval, IsolatedRoot, QuadraticNumber
from .arrays import ArrayParseError, IntersectionArray, format_array, parse_array, read_batch
from .enumeration import (
    DEFAULT_FILTERS,
    FILTER_NAMES,
    CandidateCapExceeded,
    EnumerationQuery,
    Filter,
    enumerate_shilla,
    verify_list,
)
from .feasibility import (
    INFEASIBLE,
    FeasibilityReport,
    RulesError,
    feasibility_check,
    load_rules,
)
from .shilla import (
    InvalidParams,
    ShillaConstraintReport,
    qpoly_candidates,
    qpoly_raw_candidates,
    shilla_array,
    shilla_constraints,
    shilla_params,
)
from .spectrum import SpectrumError, q_poly_wrt_theta1, spectrum

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# exact JSON encoding
# ---------------------------------------------------------------------------

def exact(x):
    """JSON-ready exact rendering: rationals as "p/q", quadratics as {p, q, d}."""
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, QuadraticNumber):
        return {"p": str(x.p), "q": str(x.q), "d": str(x.d)}
    if isinstance(x, IsolatedRoot):
        return {"poly": [str(c) for c in x.poly], "interval": [str(x.lo), str(x.hi)]}
    if isinstance(x, Interval):
        return {"interval": [str(x.lo), str(x.hi)]}
    raise TypeError(f"no exact encoding for {type(x).__name__}")


def shilla_json(rep: ShillaConstraintReport) -> dict:
    p, sp = rep.params, rep.spectrum
    return {
        "b": str(p.b), "a3": str(p.a3), "c2": str(p.c2), "b2": str(p.b2),
        "theta2": exact(sp.theta2), "theta3": exact(sp.theta3),
        "m1": exact(sp.m1), "m2": exact(sp.m2), "m3": exact(sp.m3),
        "qpoly": rep.qpoly, "m2_eq_m3": rep.m2_eq_m3, "eq2": str(rep.eq2),
        "failures": [f"{v.name}: {v.witness}" for v in rep.failures],
    }


def report_json(rep: FeasibilityReport, shilla: ShillaConstraintReport | None) -> dict:
    out = {
        "array": format_array(rep.array),
        "verdict": rep.overall,
        "reasons": rep.reasons,
        "eigenvalues": [exact(t) for t in rep.eigenvalues],
        "multiplicities": [exact(m) for m in rep.multiplicities],
        "interval_certified": rep.interval_certified,
    }
    if rep.clique is not None:
        out["clique_coclique"] = {"verdict": rep.clique.verdict.value,
                                  "alpha": str(rep.clique.alpha),
                                  "threshold": exact(rep.clique.threshold)}
    if rep.known_result:
        out["known_result"] = rep.known_result
    if shilla is not None:
        out["shilla"] = shilla_json(shilla)
    return out


# ---------------------------------------------------------------------------
# human-readable rendering
# ---------------------------------------------------------------------------

def _clip(s: str, width: int = 100) -> str:
    return s if len(s) <= width else s[: width - 3] + "..."


def _show(x) -> str:
    if isinstance(x, Interval):
        return f"~[{float(x.lo):.10g}, {float(x.hi):.10g}]"
    if isinstance(x, IsolatedRoot):
        return f"root in ({float(x.lo):.10g}, {float(x.hi):.10g})"
    return str(x)


def render_report(rep: FeasibilityReport, shilla: ShillaConstraintReport | None,
                  verbose: bool = False) -> str:
    lines = [f"{format_array(rep.array)}  {rep.overall}"]
    row = "  {:<26}{}".format
    for v in rep.basic:
        lines.append(row(v.name, "ok" if v.passed else "FAIL  " + v.witness))
    for v in (rep.p_integrality, rep.parity, rep.multiplicity, rep.krein):
        lines.append(row(v.name, "ok" if v.passed else "FAIL  " + v.witness))
    if rep.clique is not None:
        lines.append(row("clique-coclique", str(rep.clique)))
    if rep.known_result:
        lines.append(row("known-result", rep.known_result))
    if rep.eigenvalues:
        lines.append(row("eigenvalues", _clip(", ".join(_show(t) for t in rep.eigenvalues))))
        lines.append(row("multiplicities",
                         _clip(", ".join(_show(m) for m in rep.multiplicities))))
    if rep.interval_certified:
        lines.append(row("certification", "interval arithmetic (cubic eigenvalues)"))
    if verbose and rep.eigenvalues:
        for t, seq in zip(rep.eigenvalues, spectrum(rep.array).sequences):
            lines.append(row(f"u(θ={_show(t)})", ", ".join(_show(u) for u in seq.u)))
    if shilla is not None:
        p, sp = shilla.params, shilla.spectrum
        lines.append(row("shilla", f"{p}  θ2={sp.theta2}  θ3={sp.theta3}"))
        lines.append(row("", f"m1={sp.m1}  m2={sp.m2}  m3={sp.m3}"))
        lines.append(row("", f"Q-polynomial={shilla.qpoly}  m2=m3={shilla.m2_eq_m3}"))
        for v in shilla.failures:
            lines.append(row("  " + v.name, "FAIL  " + v.witness))
    elif rep.array.D == 3 and rep.eigenvalues:
        try:
            lines.append(row("Q-polynomial (θ1)", str(q_poly_wrt_theta1(rep.array))))
        except (SpectrumError, ArithmeticError):
            pass
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _rules(args):
    return load_rules(args.rules)


def _shilla_report(arr: IntersectionArray) -> ShillaConstraintReport | None:
    if arr.D != 3:
        return None
    p = shilla_params(arr)
    if p is None:
        return None
    try:
        return shilla_constraints(p)
    except InvalidParams:
        return None


def cmd_check(args) -> int:
    rules = _rules(args)
    arrays: list[IntersectionArray] = []
    for text in args.arrays:
        arrays.append(parse_array(text))
    if args.file:
        arrays.extend(arr for _, arr in read_batch(args.file))
    if not arrays:
        raise UsageError("no arrays given (pass arrays or --file)")
    worst = EXIT_OK
    for arr in arrays:
        rep = feasibility_check(arr, rules)
        sh = _shilla_report(arr)
        if args.format == "json":
            print(json.dumps(report_json(rep, sh)))
        else:
            print(render_report(rep, sh, args.verbose))
            print()
        if rep.overall == INFEASIBLE:
            worst = EXIT_NEGATIVE
    return worst


def parse_b_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or N..M, got {text!r}") from None


def _filters(args) -> Filter:
    f = DEFAULT_FILTERS
    for name in args.skip or ():
        f &= ~FILTER_NAMES[name]
    if args.require_m2_eq_m3:
        f |= Filter.M2_EQ_M3
    if args.require_qpoly:
        f |= Filter.QPOLY
    return f


def cmd_enumerate(args) -> int:
    b_lo, b_hi = args.b
    rules = _rules(args)
    try:
        query = EnumerationQuery(b_lo, b_hi, args.a3_max, _filters(args), args.jobs,
                                 args.cap, rules)
    except ValueError as e:
        raise UsageError(str(e)) from None
    expected = None
    if args.expect:
        expected = [arr for _, arr in read_batch(args.expect)]

    def progress(visited, found):
        print(f"  visited {visited}, survivors {found}", file=sys.stderr)

    try:
        result = enumerate_shilla(query, progress if args.verbose else None)
    except CandidateCapExceeded as e:
        for s in e.partial.survivors:
            _emit_survivor(s, args.format)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    for s in result.survivors:
        _emit_survivor(s, args.format)
    pruned = ", ".join(f"{k}={v}" for k, v in sorted(result.pruned.items()))
    print(f"# {len(result.survivors)} survivors, {result.visited} candidates visited, "
          f"pruned: {pruned or 'none'}, {result.wall_time:.2f}s", file=sys.stderr)
    if expected is not None:
        diff = verify_list(result, expected)
        if not diff.empty:
            print("# diff against " + str(args.expect), file=sys.stderr)
            for line in diff.lines():
                print(line, file=sys.stderr)
            return EXIT_NEGATIVE
        print(f"# matches {args.expect}", file=sys.stderr)
    return EXIT_OK


def _emit_survivor(s, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report_json(s.feasibility, s.shilla)))
    else:
        print(f"{format_array(s.array)}  {s.params}  {s.feasibility.overall}")


def cmd_qpoly(args) -> int:
    rules = _rules(args)
    kept = qpoly_candidates(args.b, rules)
    if args.verbose:
        raw = qpoly_raw_candidates(args.b)
        kept_set = set(kept)
        for p in raw:
            if p in kept_set:
                continue
            rep = feasibility_check(shilla_array(p), rules)
            why = "; ".join(rep.reasons) or rep.overall
            print(f"# excluded {format_array(shilla_array(p))}  {p}  {why}", file=sys.stderr)
    for p in kept:
        arr = shilla_array(p)
        if args.format == "json":
            print(json.dumps(report_json(feasibility_check(arr, rules), shilla_constraints(p))))
        else:
            print(f"{format_array(arr)}  {p}")
    return EXIT_OK


def cmd_graphs(args) -> int:
    from .graphs import WITNESSES, check_witness

    if args.action == "export":
        if args.name not in WITNESSES:
            raise UsageError(f"unknown graph {args.name!r}; choose from {', '.join(WITNESSES)}")
        text = WITNESSES[args.name].build().edge_list()
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    names = [args.only] if args.only else list(WITNESSES)
    status = EXIT_OK
    for name in names:
        if name not in WITNESSES:
            raise UsageError(f"unknown graph {name!r}; choose from {', '.join(WITNESSES)}")
        rep = check_witness(name)
        g = rep.graph
        head = f"{rep.witness.title}: n={g.n}, edges={len(g.edges)}"
        if rep.ok:
            print(f"{head}, array {rep.distance.array}  ok")
            if args.verbose:
                print(f"  max co-clique in local graphs: {max(rep.coclique.max_sizes)}")
                print(f"  θ1 = {rep.interlacing.theta1:.9g}, "
                      f"bound = {rep.interlacing.local_bound:.9g}")
                print("  spectrum: " + ", ".join(f"{round(v, 9) + 0.0:.6g}^{m}" for v, m in rep.spectrum.observed))
        else:
            status = EXIT_NEGATIVE
            print(f"{head}  FAILED")
            for line in rep.failures:
                print("  " + line)
    print(f"{len(names)} graph(s) checked")
    return status


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rules", metavar="PATH",
                        help="known-results file (default: $DRGFEAS_RULES, else the shipped list)")
    common.add_argument("--format", choices=("table", "json"), default="table",
                        help="human table or JSON lines")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="drgfeas", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="feasibility of intersection arrays")
    p.add_argument("arrays", nargs="*", help='arrays such as "{42,30,12;1,6,28}"')
    p.add_argument("--file", help="batch file, one array per line, # comments")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", parents=[common], help="search Shilla parameters")
    p.add_argument("--b", type=parse_b_range, required=True, help="b or lo..hi")
    p.add_argument("--a3-max", type=int, help="default: the proven search bound for b")
    p.add_argument("--skip", action="append", choices=sorted(
        n for n, f in FILTER_NAMES.items() if f in DEFAULT_FILTERS),
        help="disable a default filter (repeatable)")
    p.add_argument("--require-m2-eq-m3", action="store_true")
    p.add_argument("--require-qpoly", action="store_true")
    p.add_argument("--expect", help="file of expected arrays; exit 1 on any difference")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int, help="stop with exit 3 after this many candidates")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("qpoly", parents=[common], help="Q-polynomial Shilla arrays for b")
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_qpoly)

    p = sub.add_parser("graphs", parents=[common], help="witness graphs")
    p.add_argument("action", choices=("verify", "export"))
    p.add_argument("--only", help="verify a single graph (hamming, johnson, odd4)")
    p.add_argument("--name", default="odd4", help="graph to export")
    p.add_argument("--output", help="write the edge list here instead of stdout")
    p.set_defaults(func=cmd_graphs)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ArrayParseError, RulesError, InvalidParams, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

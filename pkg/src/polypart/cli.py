"""Batch front-end.

    polypart partition  --input fams.json --degree 12 --seed 7 --out report.json
    polypart phi-search --input fams.json --degree 5 --budget 16 --out phi.json
    polypart dickson    --s 3 --j 2
    polypart crossing   --input lines.json --report report.json --out crossing.json

Exit codes: 0 ok, 2 parse error, 3 search failed, 4 bound violation,
5 budget exceeded.
"""

import argparse
import json
import sys
import time

from . import f2dickson, io
from .errors import ParseError, PolypartError, SearchFailed
from .hamsandwich import SearchConfig
from .partition import partition_families, partition_points, verify_bounds
from .phimap import phi, search_phi_zero
from .polyring import DEFAULT_TAU, Polynomial, product
from .schedule import PartitionParams, compute_schedule
from .varieties import Kind, crossing_count


def _params(n, families, degree):
    if degree < 1:
        raise ParseError("--degree must be at least 1")
    return PartitionParams(n=n, j=len(families), D=degree)


def _emit(report, out):
    text = io.dumps_report(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_partition(args):
    n, families = io.load_families(args.input, args.tau)
    params = _params(n, families, args.degree)
    config = SearchConfig(restarts=args.restarts, iterations=args.iterations)
    if args.raster_bbox is not None and n != 2:
        raise ParseError("--raster-bbox needs n = 2")
    started = time.perf_counter()
    report = {"command": "partition", "input": {"n": n, "j": params.j, "D": params.D,
                                                  "families": [f.name for f in families]},
              "search": config.to_record()}
    status = 0
    try:
        if all(f.is_points for f in families):
            result = partition_points(families, params, args.seed, args.tau, config)
        else:
            result = partition_families(families, params, args.seed, args.tau, config)
    except SearchFailed as exc:
        report["error"] = {"kind": "SEARCH_FAILED", "message": str(exc), "residual": exc.residual}
        if exc.partial is not None:
            report["partition"] = exc.partial.to_record()
        _emit(report, args.out)
        return exc.exit_code
    report["partition"] = result.to_record()
    bounds = verify_bounds(result, params, raise_on_violation=False)
    report["bounds"] = bounds
    if not bounds["passed"]:
        report["error"] = {"kind": "BOUND_VIOLATION"}
        status = 4
    if args.raster_bbox is not None:
        io.write_raster(args.raster_out, result.polys, args.raster_bbox, args.raster_res, args.tau)
        report["raster"] = {"prefix": args.raster_out, "resolution": args.raster_res,
                            "bbox": list(args.raster_bbox)}
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - started}
    _emit(report, args.out)
    return status


def cmd_phi_search(args):
    n, families = io.load_families(args.input, args.tau)
    params = _params(n, families, args.degree)
    started = time.perf_counter()
    y, residual, trace = search_phi_zero(families, params, seed=args.seed, budget=args.budget, tau=args.tau)
    value = phi(y, families, args.tau)
    report = {"command": "phi-search",
              "input": {"n": n, "j": params.j, "D": params.D, "families": [f.name for f in families]},
              "schedule": compute_schedule(params).to_record(), "tau": args.tau, "seed": args.seed,
              "budget": args.budget, "tuple": y.to_record(),
              "polynomials": [p.to_records() for p in y.polys()],
              "counts": value.counts.tolist(), "residual": residual, "residual_trace": trace}
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - started}
    _emit(report, args.out)
    return 0


def cmd_dickson(args):
    result = f2dickson.obstruction_check(args.s, args.j)
    print(f"nonzero={str(result.nonzero).lower()}")
    print(f"witness {f2dickson.format_monomial(result.witness)} "
          f"{'present' if result.witness_present else 'absent'}")
    print(f"surviving_terms={result.surviving_terms}")
    for term in sorted(result.remainder.terms, reverse=True):
        print("  " + f2dickson.format_monomial(term))
    if args.out:
        io.write_report({"command": "dickson", **result.to_record()}, args.out)
    return 0


def cmd_crossing(args):
    n, families = io.load_families(args.input, args.tau)
    try:
        with open(args.report) as fh:
            polys = io.polys_from_report(json.load(fh), n)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.report}: invalid JSON ({exc})") from None
    P = product(polys) if polys else Polynomial.constant(n, 1.0)
    rows = []
    for fam in families:
        for k, gamma in enumerate(fam.varieties):
            if gamma.kind is Kind.PARAMETRIC and gamma.k == 1:
                c = crossing_count(gamma, P, args.resolution, args.tau)
                rows.append({"family": fam.name, "index": k, "runs": c.count,
                             "degenerate": c.degenerate, "roots": list(c.roots)})
    report = {"command": "crossing", "product_degree": P.degree, "resolution": args.resolution,
              "tau": args.tau, "curves": rows,
              "max_runs": max((r["runs"] for r in rows), default=0),
              "within_bound": all(r["runs"] <= P.degree + 1 for r in rows)}
    _emit(report, args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="polypart", description="Colored polynomial partitioning.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree=True):
        p.add_argument("--input", required=True)
        if degree:
            p.add_argument("--degree", "-D", type=int, required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tau", type=float, default=DEFAULT_TAU)
        p.add_argument("--out")
        p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")

    p = sub.add_parser("partition", help="stagewise partition of the input families")
    common(p)
    p.add_argument("--restarts", type=int, default=SearchConfig.restarts)
    p.add_argument("--iterations", type=int, default=SearchConfig.iterations)
    p.add_argument("--raster-bbox", type=float, nargs=4, metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    p.add_argument("--raster-res", type=int, default=200)
    p.add_argument("--raster-out", default="raster")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("phi-search", help="search for a tuple balancing every family")
    common(p)
    p.add_argument("--budget", type=int, default=16)
    p.set_defaults(func=cmd_phi_search)

    p = sub.add_parser("dickson", help="check the Dickson obstruction for (s, j)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dickson)

    p = sub.add_parser("crossing", help="sign runs of curves against a report's product polynomial")
    common(p, degree=False)
    p.add_argument("--report", required=True)
    p.add_argument("--resolution", type=int, default=1024)
    p.set_defaults(func=cmd_crossing)
    return parser


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PolypartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ParseError.exit_code


def main():
    sys.exit(run())

"""Command-line front end: ingestion, dispatch, report emission.

Every number in a report is taken verbatim from a core-module operation;
this layer only arranges them.  Exit codes: 0 success, 1 metric-axiom
validation failure, 2 ingestion/parse error, 3 configuration refused.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from . import formats, interval1d, lattice, metric, segment

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INGEST = 2
EXIT_CONFIG = 3


class ConfigError(ValueError):
    pass


def jsonable(obj):
    """Reports carry Fractions, frozensets and infinities; flatten them."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return "inf" if math.isinf(obj) else obj
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(asdict(obj))
    return obj


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational number: {text!r}") from None


def parse_grid_spec(spec: str) -> lattice.TimeGrid:
    parts = spec.split(",")
    if len(parts) != 4:
        raise ConfigError("grid spec must be min,max,count,law")
    lo, hi = _parse_rational(parts[0]), _parse_rational(parts[1])
    try:
        count = int(parts[2])
    except ValueError:
        raise ConfigError(f"grid count must be an integer: {parts[2]!r}") from None
    law = parts[3].strip()
    try:
        return lattice.make_grid(lo, hi, count, law)
    except lattice.GridError as exc:
        raise ConfigError(str(exc)) from None


def build_space(args) -> metric.FiniteMetricSpace:
    backend = args.backend
    if backend == "points":
        if not args.input:
            raise ConfigError("--backend points requires --input")
        coords, labels = formats.load_points_csv(args.input)
        return metric.build_from_points(coords, labels, eta=args.eta)
    if backend == "graph":
        if not args.input:
            raise ConfigError("--backend graph requires --input")
        return metric.build_from_graph(formats.load_edges(args.input))
    if backend == "matrix":
        if not args.input:
            raise ConfigError("--backend matrix requires --input")
        return metric.build_from_matrix(formats.load_matrix_csv(args.input))
    if backend == "discrete":
        if args.n is None:
            raise ConfigError("--backend discrete requires --n")
        return metric.build_discrete(args.n)
    if backend == "segment":
        if args.samples is None:
            raise ConfigError("--backend segment requires --samples")
        return metric.build_segment_sample(args.samples,
                                           _parse_rational(args.length))
    raise ConfigError(f"backend {backend!r} is not a finite metric backend")


def resolve_grid(args, space) -> lattice.TimeGrid:
    if args.grid:
        return parse_grid_spec(args.grid)
    return lattice.default_grid(space)


def sample_spacing_note(space) -> dict:
    if space.n == 1:
        return {"min_positive_distance": None}
    return {"min_positive_distance": space.min_positive_distance()}


def emit(report: dict, args, matrix_key: str | None = None) -> None:
    """Write the report; csv format emits the named matrix, json everything."""
    if args.format == "csv":
        rows = report.get(matrix_key) if matrix_key else None
        out = sys.stdout if args.out is None else open(args.out, "w", newline="")
        try:
            w = csv.writer(out)
            if rows is None:
                for k, v in jsonable(report).items():
                    w.writerow([k, json.dumps(v)])
            else:
                for row in jsonable(rows):
                    w.writerow(row)
        finally:
            if args.out is not None:
                out.close()
    else:
        text = json.dumps(jsonable(report), indent=2, sort_keys=True)
        if args.out is None:
            print(text)
        else:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")


# ---------------------------------------------------------------------------
# Commands


def cmd_validate(args) -> int:
    try:
        space = build_space(args)
    except metric.AxiomViolation as exc:
        emit({"valid": False, "error": str(exc), "witness": list(exc.witness)}, args)
        return EXIT_VALIDATION
    emit({"valid": True, "n": space.n, "exact": space.exact,
          **sample_spacing_note(space)}, args)
    return EXIT_OK


def _verdict(space, max_defect) -> str:
    if max_defect <= 0:
        return "holds"
    if space.n > 1 and max_defect <= 2 * space.min_positive_distance():
        return "holds within sample tolerance"
    return "fails"


def cmd_conditions(args) -> int:
    space = build_space(args)
    cond2 = metric.condition2_report(space)
    report = {
        "condition1": metric.check_condition1(space),
        "condition2_defects": cond2["defects"],
        "max_defect": cond2["max_defect"],
        "verdict": _verdict(space, cond2["max_defect"]),
        **sample_spacing_note(space),
    }
    emit(report, args, matrix_key="condition2_defects")
    return EXIT_OK


def cmd_tau(args) -> int:
    space = build_space(args)
    grid = resolve_grid(args, space)
    try:
        result = lattice.wave_model(space, grid, include_brackets=True)
    except lattice.GridError as exc:
        raise ConfigError(str(exc)) from None
    report = _model_report(space, result, with_brackets=True)
    emit(report, args, matrix_key="tau")
    return EXIT_OK


def cmd_isometry(args) -> int:
    space = build_space(args)
    grid = resolve_grid(args, space)
    try:
        result = lattice.wave_model(space, grid)
    except lattice.GridError as exc:
        raise ConfigError(str(exc)) from None
    report = _model_report(space, result, with_brackets=False)
    emit(report, args, matrix_key="tau")
    return EXIT_OK


def _model_report(space, result: lattice.WaveModelResult, with_brackets: bool) -> dict:
    report = {
        "n": space.n,
        "tau": result.tau,
        "d": [list(row) for row in space.dist],
        "max_abs_tau_minus_d": result.max_abs_tau_minus_d,
        "homothety_c": result.homothety_c,
        "condition1": result.condition1,
        "max_defect": result.condition2.get("max_defect"),
        "atom_count": len({a.nucleus for a in result.atoms}),
        "warnings": list(result.warnings),
        **sample_spacing_note(space),
    }
    if with_brackets:
        report["tau_brackets"] = result.brackets
    max_defect = result.condition2.get("max_defect", 0)
    if result.max_abs_tau_minus_d > 0 and max_defect is not None and max_defect > 0:
        report["discrepancy_cause"] = (
            "two-radii separation (Condition 2) fails: max defect "
            f"{max_defect}; tau need not equal d")
    return report


def cmd_segment_demo(args) -> int:
    if args.x is None:
        raise ConfigError("segment-demo requires --x")
    x = _parse_rational(args.x)
    if not 0 < x < 1:
        raise ConfigError(f"--x must lie strictly inside (0, 1), got {x}")
    chain = segment.segment_example(x)
    report = segment.verify_four_chain(x)
    outdir = args.out or "."
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, "four_functions.json"), "w") as fh:
        json.dump([f.to_json() for f in chain.functions()], fh, indent=2)
    with open(os.path.join(outdir, "chain_report.json"), "w") as fh:
        json.dump(report.to_json(), fh, indent=2)
    trace_path = os.path.join(outdir, "traces.csv")
    with open(trace_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "function", "set"])
        for t in report.probes:
            for f in chain.functions():
                w.writerow([str(t), f.name, str(f.evaluate(t))])
    print(f"wrote four_functions.json, chain_report.json, traces.csv to {outdir}")
    if report.merged_exception:
        print("note: x = 1/2, the two exceptional radii merge")
    return EXIT_OK if report.all_pass else EXIT_VALIDATION


def cmd_nucleus_demo(args) -> int:
    if args.net in ("left-window", "right-window"):
        if args.x is None:
            raise ConfigError(f"--net {args.net} requires --x")
        x = _parse_rational(args.x)
        if not 0 < x < 1:
            raise ConfigError(f"--x must lie strictly inside (0, 1), got {x}")
        fam = (interval1d.AffineIntervalFamily.left_window(1, x)
               if args.net == "left-window"
               else interval1d.AffineIntervalFamily.right_window(1, x))
        probes = [Fraction(k, 8) for k in range(1, 12)]
        core = interval1d.iv_family_core(fam)
        trace = []
        for t in probes:
            g_t = interval1d.iv_net_limit(fam, t)
            core_t = interval1d.iv_neighborhood(core, t)
            upper = interval1d.iv_interior(interval1d.iv_closure(core_t))
            trace.append({"t": t, "limit": str(g_t),
                          "lower_ok": core_t.is_subset(g_t) or
                          interval1d.iv_intersect(core_t, g_t) == core_t,
                          "upper_ok": g_t.is_subset(upper)})
        emit({"net": args.net, "x": x, "nucleus": str(core),
              "sandwich": trace}, args)
        return EXIT_OK
    if args.net == "shrinking-ball":
        if args.center is None:
            raise ConfigError("--net shrinking-ball requires --center")
        space = build_space(args)
        if not 0 <= args.center < space.n:
            raise ConfigError(f"--center {args.center} out of range")
        grid = resolve_grid(args, space)
        eps0 = (Fraction(space.diameter()) if space.n > 1 else Fraction(1))
        net = lattice.DecreasingNet.from_family(
            lambda e: metric.open_ball(space, args.center, e), eps0=eps0)
        try:
            g = lattice.net_limit(space, net, grid)
        except lattice.NetError as exc:
            emit({"error": f"non-stabilizing net: {exc}"}, args)
            return EXIT_VALIDATION
        core = lattice.nucleus(g)
        records = lattice.sandwich_check(space, g)
        emit({"net": "shrinking-ball", "center": args.center,
              "nucleus": sorted(core),
              "limit_function": g.to_json(),
              "sandwich": [{"t": r.t, "lower_ok": r.lower_ok,
                            "upper_ok": r.upper_ok} for r in records]}, args)
        return EXIT_OK
    raise ConfigError(f"unknown net spec {args.net!r}")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wavemodel",
        description="Metric neighborhoods, nuclei, atoms and the wave distance "
                    "on finite and 1-D metric backends.")
    sub = p.add_subparsers(dest="command", required=True)
    commands = {
        "validate": cmd_validate,
        "conditions": cmd_conditions,
        "tau": cmd_tau,
        "isometry": cmd_isometry,
        "segment-demo": cmd_segment_demo,
        "nucleus-demo": cmd_nucleus_demo,
    }
    for name, fn in commands.items():
        sp = sub.add_parser(name)
        sp.set_defaults(fn=fn)
        sp.add_argument("--backend", default="segment",
                        choices=["points", "graph", "matrix", "discrete",
                                 "segment", "interval1d"])
        sp.add_argument("--input", help="input file path")
        sp.add_argument("--grid", help="time grid spec: min,max,count,law")
        sp.add_argument("--eta", type=float, default=1e-9,
                        help="comparison tolerance for float backends")
        sp.add_argument("--out", help="output path (directory for segment-demo)")
        sp.add_argument("--format", default="json", choices=["json", "csv"])
        sp.add_argument("--n", type=int, help="point count for --backend discrete")
        sp.add_argument("--samples", type=int,
                        help="sample count for --backend segment")
        sp.add_argument("--length", default="1",
                        help="segment length as a rational, e.g. 1 or 3/2")
        sp.add_argument("--x", help="rational point of (0,1) for segment demos")
        sp.add_argument("--net", default="shrinking-ball",
                        choices=["shrinking-ball", "left-window", "right-window"])
        sp.add_argument("--center", type=int,
                        help="center index for the shrinking-ball net")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except metric.AxiomViolation as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (formats.ParseError, OSError, metric.MetricError) as exc:
        if isinstance(exc, (ConfigError, lattice.GridError)):
            print(f"configuration refused: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        print(f"ingestion error: {exc}", file=sys.stderr)
        return EXIT_INGEST
    except (ConfigError, interval1d.IntervalError) as exc:
        print(f"configuration refused: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

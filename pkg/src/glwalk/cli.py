"""Command-line front end.

Subcommands:
  simulate     run a (possibly two-stage) search and emit a CSV/JSON series
  predict      print critical parameters and runtime/probability predictions
  verify-spin  check the spin-network realization of the walk on a graph
  sweep        peak summary over a grid of (n, alpha, weight)

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import analysis
from .engine import (FullBarbellModel, ReducedBarbellModel, Schedule,
                     default_time_grid, run_schedule)
from .graphs import BarbellSpec, SignedWeightedGraph, build_barbell, read_graph
from .spin import SPIN_CAP, verify_walk_equivalence

EXIT_CONFIG = 2
EXIT_NUMERIC = 3

CSV_COLUMNS = ("time", "p_a", "p_b", "p_c", "p_d", "p_e", "p_abc", "p_ab")


class ConfigError(Exception):
    pass


def _resolve_weight(token: str, n: int, alpha: float) -> float:
    if token in ("wplus", "wminus"):
        params = analysis.critical_params(n, alpha)
        w = params.w_plus if token == "wplus" else params.w_minus
        if w is None:
            raise ConfigError(f"{token} is undefined at alpha={alpha}")
        return float(w)
    try:
        return float(token)
    except ValueError:
        raise ConfigError(f"weight must be a number, 'wplus', or 'wminus': {token!r}")


def _resolve_gamma(token: str, n: int) -> float:
    if token == "critical":
        return 2.0 / n
    try:
        return float(token)
    except ValueError:
        raise ConfigError(f"gamma must be a number or 'critical': {token!r}")


def _make_model(n: int, alpha: float, gamma: float, engine: str):
    if engine == "reduced":
        return ReducedBarbellModel(n, alpha, gamma)
    if engine == "full":
        return FullBarbellModel(n, alpha, gamma)
    raise ConfigError(f"engine must be 'reduced' or 'full': {engine!r}")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_series(series, path: str | None, fmt: str, meta: dict) -> None:
    cols = series.columns()
    if fmt == "csv":
        lines = [",".join(CSV_COLUMNS)]
        arrays = [cols[c] for c in CSV_COLUMNS]
        for row in zip(*arrays):
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        payload = {"metadata": meta}
        payload.update({c: [float(v) for v in cols[c]] for c in CSV_COLUMNS})
        text = json.dumps(payload, indent=1) + "\n"
    else:
        raise ConfigError(f"format must be 'csv' or 'json': {fmt!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        # write whole file at once so a failure leaves no partial output
        Path(path).write_text(text)


def cmd_simulate(args) -> int:
    n, alpha = args.n, args.alpha
    gamma = _resolve_gamma(args.gamma, n)
    w1 = _resolve_weight(args.weight, n, alpha)
    model = _make_model(n, alpha, gamma, args.engine)
    grid = default_time_grid(n, args.t_max, args.dt)

    if args.stage2_weight is None:
        schedule = Schedule.single(w1)
        t1 = None
    else:
        w2 = _resolve_weight(args.stage2_weight, n, alpha)
        t1 = _transition_time(args.stage2_rule, model, w1, grid)
        schedule = Schedule.two_stage(w1, t1, w2)

    series = run_schedule(model, schedule, grid)
    meta = {
        "n": n, "alpha": alpha, "gamma": gamma, "weight": w1,
        "engine": args.engine, "t_max": float(grid[-1]),
        "dt": float(grid[1] - grid[0]),
    }
    if t1 is not None:
        meta["stage2_weight"] = _resolve_weight(args.stage2_weight, n, alpha)
        meta["transition_time"] = t1
    window = (t1, float(grid[-1])) if t1 is not None else None
    t_peak, p_peak = series.peak("p_a", window)
    meta["peak_time"] = t_peak
    meta["peak_p_a"] = p_peak
    _write_series(series, args.out, args.format, meta)
    print(f"peak p_a = {p_peak:.6f} at t = {t_peak:.4f}")
    return 0


def _transition_time(rule: str, model, w1: float, grid) -> float:
    if rule.startswith("at:"):
        try:
            t1 = float(rule[3:])
        except ValueError:
            raise ConfigError(f"bad transition time in rule {rule!r}")
        if not 0 < t1 < grid[-1]:
            raise ConfigError("transition time must fall inside the grid")
        return t1
    if rule in ("abc-peak", "ab-peak"):
        observable = "p_abc" if rule == "abc-peak" else "p_ab"
        stage1 = run_schedule(model, Schedule.single(w1), grid)
        t_peak, _ = stage1.peak(observable)
        return t_peak
    raise ConfigError(f"stage2 rule must be 'abc-peak', 'ab-peak', or 'at:<time>': {rule!r}")


def _weight_str(w) -> str:
    if w is None:
        return "undefined"
    if isinstance(w, Fraction):
        return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"
    return _fmt(float(w))


def cmd_predict(args) -> int:
    n = args.n
    alphas = [_parse_number(a) for a in args.alpha.split(",")]
    wp = analysis.wplus_constants()
    root = math.sqrt(n)

    print(f"N = {n}, gamma_c = {_fmt(2.0 / n)}")
    print("alpha  w_plus  w_minus")
    for alpha in alphas:
        p = analysis.critical_params(n, alpha)
        print(f"{alpha}  {_weight_str(p.w_plus)}  {_weight_str(p.w_minus)}")
    print()
    print("single-stage predictions:")
    print(f"  noncritical: p_a = 0.5 at t = {_fmt(math.pi / (2 * math.sqrt(2)) * root)}")
    print(f"  w_plus:  p_a = {wp.p_single:.4f} at t = {_fmt(wp.t_single * root)}")
    t_star = analysis.wminus_runtime(n)
    p_star = float(analysis.wminus_probabilities(n, t_star)[0])
    print(f"  w_minus: p_a = {p_star:.4f} at t = {_fmt(t_star)}")
    print()
    print("two-stage plans:")
    print(f"  w_plus then noncritical: t1 = {_fmt(wp.t1 * root)}, "
          f"t2 = {_fmt(wp.t2 * root)}, p_a = {wp.p_final:.4f}")
    for variant in ("abc", "ab"):
        plan = analysis.wminus_two_stage(variant)
        print(f"  w_minus ({variant}-peak): t1 = {_fmt(plan.t1 * root)}, "
              f"t2 = {_fmt(plan.t2 * root)}, p_a = {plan.p_final:.4f}")
    return 0


def _parse_number(token: str) -> float:
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        return float(token)


FIG2_EDGES = ((0, 1), (1, 2), (1, 3), (2, 3))


def _builtin_graph(token: str, weights, seed) -> SignedWeightedGraph:
    if token == "fig2":
        if weights is not None:
            ws = [float(x) for x in weights.split(",")]
            if len(ws) != 4:
                raise ConfigError("fig2 needs 4 weights: e01,e12,e13,e23")
        else:
            rng = np.random.default_rng(seed)
            ws = list(rng.uniform(-2.0, 2.0, 4))
            ws = [w if w != 0 else 1.0 for w in ws]
        return SignedWeightedGraph(4, [(i, j, w) for (i, j), w in zip(FIG2_EDGES, ws)])
    if token.startswith("barbell:"):
        try:
            n_str, w_str = token[len("barbell:"):].split(",")
            return build_barbell(BarbellSpec(int(n_str), float(w_str)))
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"bad barbell spec {token!r}: {exc}")
    raise ConfigError(f"builtin graph must be 'fig2' or 'barbell:n,w': {token!r}")


def cmd_verify_spin(args) -> int:
    if args.graph is not None:
        graph = read_graph(args.graph)
    elif args.builtin is not None:
        graph = _builtin_graph(args.builtin, args.weights, args.seed)
    else:
        raise ConfigError("verify-spin needs --graph or --builtin")
    if graph.n > SPIN_CAP:
        raise ConfigError(f"graph has {graph.n} vertices; spin cap is {SPIN_CAP}")
    gamma = _resolve_gamma(args.gamma, graph.n)
    report = verify_walk_equivalence(graph, args.alpha, gamma,
                                     marked=args.marked, perturb=args.perturb)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status}: max deviation {report.max_deviation:.3e} "
          f"(identity offset {report.identity_offset:.6g})")
    return 0 if report.passed else EXIT_NUMERIC


def cmd_sweep(args) -> int:
    ns = [int(x) for x in args.n.split(",")]
    alphas = [float(x) for x in args.alpha.split(",")]
    lines = ["n,alpha,weight,peak_time,peak_p_a"]
    for n in ns:
        grid = default_time_grid(n, args.t_max, args.dt)
        for alpha in alphas:
            model = _make_model(n, alpha, 2.0 / n, args.engine)
            for token in args.weights.split(","):
                w = _resolve_weight(token.strip(), n, alpha)
                series = run_schedule(model, Schedule.single(w), grid)
                t_peak, p_peak = series.peak("p_a")
                lines.append(f"{n},{_fmt(alpha)},{_fmt(w)},{_fmt(t_peak)},{_fmt(p_peak)}")
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glwalk",
        description="Quantum-walk search on weighted barbell graphs "
                    "with a generalized graph Laplacian.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a search and emit a series")
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--alpha", type=float, required=True)
    sim.add_argument("--weight", required=True,
                     help="bridge weight, or 'wplus'/'wminus'")
    sim.add_argument("--gamma", default="critical")
    sim.add_argument("--t-max", type=float, default=None)
    sim.add_argument("--dt", type=float, default=None)
    sim.add_argument("--engine", default="reduced", choices=("reduced", "full"))
    sim.add_argument("--stage2-weight", default=None)
    sim.add_argument("--stage2-rule", default="ab-peak",
                     help="'abc-peak', 'ab-peak', or 'at:<time>'")
    sim.add_argument("--format", default="csv", choices=("csv", "json"))
    sim.add_argument("--out", default=None)
    sim.set_defaults(func=cmd_simulate)

    pred = sub.add_parser("predict", help="critical parameters and predictions")
    pred.add_argument("--n", type=int, required=True)
    pred.add_argument("--alpha", default="-5,-4,-3,-2,-1,0,1,2,3,4,5",
                      help="comma-separated alpha values")
    pred.set_defaults(func=cmd_predict)

    ver = sub.add_parser("verify-spin", help="spin-network realization check")
    ver.add_argument("--graph", default=None, help="graph file (n m header)")
    ver.add_argument("--builtin", default=None, help="'fig2' or 'barbell:n,w'")
    ver.add_argument("--weights", default=None,
                     help="fig2 edge weights e01,e12,e13,e23")
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--alpha", type=float, required=True)
    ver.add_argument("--gamma", default="critical")
    ver.add_argument("--marked", type=int, default=None)
    ver.add_argument("--perturb", type=float, default=0.0,
                     help="inject a coupling error (negative control)")
    ver.set_defaults(func=cmd_verify_spin)

    sw = sub.add_parser("sweep", help="peak summary over a parameter grid")
    sw.add_argument("--n", required=True, help="comma-separated")
    sw.add_argument("--alpha", required=True, help="comma-separated")
    sw.add_argument("--weights", required=True, help="comma-separated")
    sw.add_argument("--engine", default="reduced", choices=("reduced", "full"))
    sw.add_argument("--t-max", type=float, default=None)
    sw.add_argument("--dt", type=float, default=None)
    sw.add_argument("--out", default=None)
    sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

"""balcut command line: solve, oracle, curve, check and bench.

Vertex labels are 1-based in every file and in every output, matching the
G-set convention. Exit codes: 0 success, 2 usage or input error, 3 solver
contract violation, 4 size guard, 5 invalid partition.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import ContractViolation, DomainError, GsetParseError, PartitionError, SizeGuardError
from .graph import (BinaryCut, Graph, TernaryPartition, balanced_cut_value,
                    is_discrete_local_min, load_gset, theta_cut_value)
from .oracle import brute_force_h, brute_force_h_theta, theta_curve
from .solver import CutType, InitKind, SolverConfig, multi_run
from .subgradient import SubgradientMode

EXIT_OK, EXIT_USAGE, EXIT_CONTRACT, EXIT_GUARD, EXIT_PARTITION = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _load(path: str, cut: str) -> Graph:
    try:
        return load_gset(path, CutType(cut).mu_scheme)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _labels(S) -> list[int]:
    return sorted(int(i) + 1 for i in S)


def _config(args) -> SolverConfig:
    rounds = args.theta_rounds if args.algo == "sip-perturb" else 0
    try:
        return SolverConfig(cut_type=CutType(args.cut), theta_rounds=rounds,
                            theta_min=args.theta_min, theta_max=args.theta_max, seed=args.seed,
                            subgradient_mode=SubgradientMode(args.subgradient),
                            init=InitKind(args.init))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _record(g: Graph, args, cfg: SolverConfig, agg) -> dict:
    best = agg.best
    cut = best.best_partition
    return {
        "instance": g.name,
        "cut_type": cfg.cut_type.value,
        "algorithm": args.algo,
        "seed": cfg.seed,
        "runs": [{"seed": r.seed, "value": r.best_value, "iterations": r.iterations_total,
                  "time_ms": r.wall_time * 1e3} for r in agg.reports],
        "best_value": best.best_value,
        "best_partition": {"V1": _labels(cut.S), "V2": _labels(cut.complement)},
        "config": {"theta_rounds": cfg.theta_rounds, "theta_min": cfg.theta_min,
                   "theta_max": cfg.theta_max, "eps_descent": cfg.eps_descent,
                   "max_iters_per_phase": cfg.max_iters_per_phase,
                   "subgradient": cfg.subgradient_mode.value, "init": cfg.init.value,
                   "n_runs": len(agg.reports)},
        "version": __version__,
    }


def _emit_csv(rows: list[dict], out) -> None:
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})


def cmd_solve(args, out) -> int:
    g = _load(args.input, args.cut)
    cfg = _config(args)
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    rec = _record(g, args, cfg, multi_run(g, cfg, args.runs))
    if args.format == "json":
        out.write(json.dumps(rec, indent=2) + "\n")
    else:
        rows = [{"instance": rec["instance"], "cut_type": rec["cut_type"],
                 "algorithm": rec["algorithm"], **run} for run in rec["runs"]]
        _emit_csv(rows, out)
    return EXIT_OK


def _partition_json(p) -> dict:
    if isinstance(p, BinaryCut):
        return {"V1": _labels(p.S), "V2": _labels(p.complement)}
    return {"V1": _labels(p.V1), "V2": _labels(p.V2)}


def cmd_oracle(args, out) -> int:
    g = _load(args.input, args.cut)
    res = brute_force_h(g) if args.theta is None else brute_force_h_theta(g, args.theta)
    out.write(json.dumps({"instance": g.name, "cut_type": args.cut, "theta": args.theta,
                          "value": res.value, "witness": _partition_json(res.witness),
                          "enumerated": res.enumerated}, indent=2) + "\n")
    return EXIT_OK


def theta_grid(step: float) -> list[float]:
    if not 0.0 < step <= 1.0:
        raise UsageError("--step must lie in (0, 1]")
    k = int(np.floor(1.0 / step + 1e-9))
    grid = [round(i * step, 12) for i in range(k + 1)]
    if grid[-1] < 1.0:
        grid.append(1.0)
    return grid


def cmd_curve(args, out) -> int:
    grid = theta_grid(args.step)
    g = _load(args.input, args.cut)
    out.write("theta,h_theta\n")
    for t, h in theta_curve(g, grid):
        out.write(f"{t!r},{h!r}\n")
    return EXIT_OK


def _read_partition(path: str, n: int) -> TernaryPartition:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise PartitionError("partition file must hold an object with V1/V2 or S")
    if "S" in data:
        V1 = [int(i) - 1 for i in data["S"]]
        V2 = sorted(set(range(n)) - set(V1))
    else:
        V1 = [int(i) - 1 for i in data.get("V1", [])]
        V2 = [int(i) - 1 for i in data.get("V2", [])]
    if len(set(V1)) != len(V1) or len(set(V2)) != len(V2):
        raise PartitionError("duplicate vertex in partition")
    return TernaryPartition(n, V1, V2)


def cmd_check(args, out) -> int:
    g = _load(args.input, args.cut)
    p = _read_partition(args.partition, g.n)
    rec: dict = {"instance": g.name, "cut_type": args.cut, "binary": p.is_binary}
    if p.is_binary and args.theta is None:
        cut = BinaryCut(g.n, p.V1)
        rec["value"] = balanced_cut_value(g, cut)
        rec["C_B"] = is_discrete_local_min(g, cut.indicator())
    else:
        theta = 1.0 if args.theta is None else args.theta
        rec["theta"] = theta
        rec["value"] = theta_cut_value(g, p, theta)
        if p.is_binary:
            rec["C_B"] = is_discrete_local_min(g, p.indicator())
    out.write(json.dumps(rec, indent=2) + "\n")
    return EXIT_OK


def _instances(d: str) -> list[str]:
    if not os.path.isdir(d):
        raise UsageError(f"{d} is not a directory")
    files = sorted(f for f in os.listdir(d)
                   if not f.startswith(".") and os.path.isfile(os.path.join(d, f)))
    if not files:
        raise UsageError(f"no instances in {d}")
    return [os.path.join(d, f) for f in files]


def cmd_bench(args, out) -> int:
    cfg = _config(args)
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    rows = []
    for path in _instances(args.dir):
        g = _load(path, args.cut)
        agg = multi_run(g, cfg, args.runs)
        s = agg.summary()
        err = np.array(s["rel_error_6"])
        gain = np.array(s["rel_gain"])
        rows.append({
            "instance": g.name, "cut_type": cfg.cut_type.value, "algorithm": args.algo,
            "runs": args.runs, "min": s["min"], "mean": s["mean"], "max": s["max"],
            "time_s": s["mean_time_s"],
            "rel_error6_mean": float(err.mean()), "rel_error6_p95": float(np.percentile(err, 95)),
            "rel_error6_max": float(err.max()),
            "rel_gain_mean": float(gain.mean()), "rel_gain_max": float(gain.max()),
        })
    if args.format == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        _emit_csv(rows, out)
    return EXIT_OK


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cut", choices=["cheeger", "sparsest"], default="cheeger")
    p.add_argument("--algo", choices=["sip", "sip-perturb"], default="sip-perturb")
    p.add_argument("--theta-rounds", type=int, default=200)
    p.add_argument("--theta-min", type=float, default=0.3)
    p.add_argument("--theta-max", type=float, default=0.8)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--init", choices=["spectral", "random"], default="spectral")
    p.add_argument("--subgradient", choices=["boundary", "random"], default="boundary")
    p.add_argument("--format", choices=["json", "csv"], default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="balcut", description="Balanced graph cuts by SIP.")
    ap.add_argument("--version", action="version", version=f"balcut {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run SIP or SIP-perturb on one instance")
    p.add_argument("--input", required=True)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact h(G) or h_theta(G) by enumeration")
    p.add_argument("--input", required=True)
    p.add_argument("--cut", choices=["cheeger", "sparsest"], default="cheeger")
    p.add_argument("--theta", type=float)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("curve", help="theta-balanced cut values on a grid")
    p.add_argument("--input", required=True)
    p.add_argument("--cut", choices=["cheeger", "sparsest"], default="cheeger")
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("check", help="evaluate a given partition")
    p.add_argument("--input", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--cut", choices=["cheeger", "sparsest"], default="cheeger")
    p.add_argument("--theta", type=float)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="aggregate runs over every instance in a directory")
    p.add_argument("--dir", required=True)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, GsetParseError, DomainError) as exc:
        print(f"balcut: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as exc:
        print(f"balcut: contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except SizeGuardError as exc:
        print(f"balcut: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except PartitionError as exc:
        print(f"balcut: invalid partition: {exc}", file=sys.stderr)
        return EXIT_PARTITION


if __name__ == "__main__":
    sys.exit(main())

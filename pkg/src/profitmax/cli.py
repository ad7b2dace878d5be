"""Command-line interface.

Subcommands:

    ingest-check   parse a graph and report its shape
    run            select seeds with one algorithm and evaluate them
    evaluate       evaluate a given seed set by simulation
    oracle         exact profit / exhaustive optimum on tiny instances
    thresholds     print the sample-count thresholds for a parameter point
    sweep          run one algorithm across the price grid

Reports go to stdout (or --out) as JSON; everything diagnostic goes to
stderr.  Exit code 0 means a report was produced.
"""

import argparse
import csv
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .algorithms import MemoryBudgetError, ra_s, ra_t, rpm, spm
from .baselines import BaselineConfig, high_degree, max_inf
from .bounds import (delta0, delta1, delta1_star, delta2, delta2_star, delta3,
                     search_rat_params, solve_ras_params)
from .diffusion import ProfitEstimate, estimate_profit_simulation
from .exact import OracleSizeError, best_seed_set, exact_pi, exact_profit, profit_table
from .network import (DiffusionParams, NetworkError, ParameterError, build_tc_network,
                      generate_intrinsics, ingest_edge_list, load_intrinsics,
                      load_network_config)
from .report import ReportError, build_report

ALG_CHOICES = ("spm", "rpm", "ra-t", "ra-s", "maxinf", "highdegree")

_EVAL_STREAM_TAG = 0x45564153  # keeps evaluation draws apart from selection draws


def _add_network_args(p: argparse.ArgumentParser):
    p.add_argument("--graph", required=True, help="edge list file (SNAP format)")
    p.add_argument("--undirected", action="store_true",
                   help="treat each input edge as bidirectional")
    p.add_argument("--config", help="key-value network config file")
    p.add_argument("--model", choices=["ic-cp", "ic-wc", "lt"], default=None)
    p.add_argument("--ic-p", type=float, default=None,
                   help="edge probability for ic-cp (default 0.01)")
    p.add_argument("--price", type=float, default=None, help="product price in (0,1]")
    p.add_argument("--coupon-frac", type=float, default=None,
                   help="coupon as a fraction of the price (default 0.9)")
    p.add_argument("--intrinsics-file", help="one intrinsic value per line")
    p.add_argument("--seed", type=int, default=None, help="rng seed (default 0)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker partitions (default: available cores)")


def _add_alg_args(p: argparse.ArgumentParser):
    p.add_argument("--alg", choices=ALG_CHOICES, required=True)
    p.add_argument("--eps", type=float, default=0.4)
    p.add_argument("--bigN", type=float, default=None,
                   help="confidence parameter N (default: node count)")
    p.add_argument("--k", type=int, default=5, help="doubling rounds budget (ra-s)")
    p.add_argument("--eps3", type=float, default=0.1, help="stopping slack (ra-s)")
    p.add_argument("--plateau-pct", type=float, default=2.0,
                   help="early return when the estimate drops less than this percent")
    p.add_argument("--max-ra", type=int, default=None, help="cap on RA sets")
    p.add_argument("--l-override", type=int, default=None,
                   help="fixed sample count for spm/rpm")
    p.add_argument("--fixed-size", type=int, default=None,
                   help="single seed size for maxinf instead of the sweep")


def _resolve(args):
    """Merge config file values under explicit flags, then apply defaults."""
    cfg = load_network_config(args.config) if args.config else {}
    model = args.model if args.model is not None else cfg.get("model", "ic-cp")
    price = args.price if args.price is not None else cfg.get("price", 0.5)
    frac = args.coupon_frac if args.coupon_frac is not None \
        else cfg.get("coupon-fraction", 0.9)
    ic_p = args.ic_p if args.ic_p is not None else cfg.get("ic-probability", 0.01)
    seed = args.seed if args.seed is not None else cfg.get("rng-seed", 0)
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    if not (0.0 <= frac < 1.0):
        raise ParameterError(f"coupon fraction must lie in [0, 1), got {frac}")
    return model, float(price), float(frac), float(ic_p), int(seed), max(1, int(threads))


def _build_network(args):
    model, price, frac, ic_p, seed, threads = _resolve(args)
    with open(args.graph) as fh:
        g = ingest_edge_list(fh, undirected=args.undirected)
    coupon = frac * price
    if args.intrinsics_file:
        intr = load_intrinsics(args.intrinsics_file, g.n)
    else:
        intr = generate_intrinsics(g, price, coupon, seed)
    params = DiffusionParams(model=model, ic_probability=ic_p)
    net = build_tc_network(g, params, price, coupon, intr)
    echo = {"graph": args.graph, "undirected": bool(args.undirected),
            "model": model, "price": price, "coupon_frac": frac,
            "ic_p": ic_p, "intrinsics_file": args.intrinsics_file,
            "rng_seed": seed, "threads": threads}
    return net, echo, seed, threads


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_seed_labels(text):
    if text is None or text.strip() in ("", "-"):
        return []
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ParameterError(f"seed set must be a comma list of node ids: {text!r}")


def _ids_from_labels(net, labels):
    ids = []
    for lab in labels:
        try:
            ids.append(net.graph.id_of(lab))
        except KeyError:
            raise ParameterError(
                f"node {lab} is not in the network (absent or pruned)")
    return ids


def _select(args, net, seed, threads):
    alg = args.alg
    if alg == "spm":
        return spm(net, eps=args.eps, big_n=args.bigN, l_override=args.l_override,
                   seed=seed, workers=threads)
    if alg == "rpm":
        return rpm(net, eps=args.eps, big_n=args.bigN, l_override=args.l_override,
                   seed=seed, workers=threads)
    if alg == "ra-t":
        return ra_t(net, eps=args.eps, big_n=args.bigN, max_ra=args.max_ra,
                    seed=seed, workers=threads)
    if alg == "ra-s":
        return ra_s(net, eps=args.eps, big_n=args.bigN, k=args.k, eps3=args.eps3,
                    plateau_pct=args.plateau_pct, seed=seed, workers=threads)
    if alg == "maxinf":
        cfg = BaselineConfig(eval_simulations=args.eval_sims,
                             fixed_size=args.fixed_size)
        return max_inf(net, cfg, seed=seed, workers=threads)
    if alg == "highdegree":
        cfg = BaselineConfig(eval_simulations=args.eval_sims)
        return high_degree(net, cfg, seed=seed, workers=threads)
    raise ParameterError(f"unknown algorithm {alg!r}")


def _run_once(args, net, echo, seed, threads):
    start = time.perf_counter()
    result = _select(args, net, seed, threads)
    eval_ss = np.random.SeedSequence([seed, _EVAL_STREAM_TAG])
    est = estimate_profit_simulation(net, result.members, args.eval_sims,
                                     eval_ss, threads)
    wall_ms = round((time.perf_counter() - start) * 1000.0)
    counts = dict(result.sample_counts)
    counts["simulations"] = counts.get("simulations", 0) + args.eval_sims
    parameters = dict(echo)
    parameters.update({"alg": args.alg, "eps": args.eps, "big_n": args.bigN,
                       "k": args.k, "eps3": args.eps3,
                       "plateau_pct": args.plateau_pct, "max_ra": args.max_ra,
                       "l_override": args.l_override, "eval_sims": args.eval_sims,
                       "samples_used": result.l})
    return build_report(args.alg, parameters, net, result.members, est,
                        wall_ms, counts)


def cmd_run(args) -> int:
    net, echo, seed, threads = _build_network(args)
    report = _run_once(args, net, echo, seed, threads)
    _emit(report.to_json(), args.out)
    return 0


def cmd_evaluate(args) -> int:
    net, echo, seed, threads = _build_network(args)
    ids = _ids_from_labels(net, _parse_seed_labels(args.seed_set))
    start = time.perf_counter()
    eval_ss = np.random.SeedSequence([seed, _EVAL_STREAM_TAG])
    if ids:
        est = estimate_profit_simulation(net, ids, args.eval_sims, eval_ss, threads)
    else:
        est = ProfitEstimate(0.0, 0.0, args.eval_sims, "simulation")
    wall_ms = round((time.perf_counter() - start) * 1000.0)
    parameters = dict(echo)
    parameters.update({"seed_set": args.seed_set, "eval_sims": args.eval_sims})
    report = build_report("evaluate", parameters, net, ids, est, wall_ms,
                          {"simulations": args.eval_sims})
    _emit(report.to_json(), args.out)
    return 0


def cmd_oracle(args) -> int:
    net, echo, seed, threads = _build_network(args)
    out = {"network": {"n": net.n, "m": net.m, "price": net.price,
                       "coupon": net.coupon, "model": net.params.model}}
    if args.seed_set is not None:
        ids = _ids_from_labels(net, _parse_seed_labels(args.seed_set))
        out["exact"] = {"seed_set": net.labels_of(ids),
                        "adopters": exact_pi(net, ids),
                        "profit": exact_profit(net, ids)}
    if args.optimum:
        table = profit_table(net)
        members, value = best_seed_set(net, table)
        out["optimum"] = {"seed_set": net.labels_of(members), "profit": value}
    if "exact" not in out and "optimum" not in out:
        raise ParameterError("oracle needs --seed-set and/or --optimum")
    _emit(json.dumps(out, indent=2, sort_keys=True), args.out)
    return 0


def cmd_thresholds(args) -> int:
    n, big_n, eps, r = args.n, args.bigN, args.eps, args.r
    if big_n is None:
        big_n = float(max(n, 2))
    out = {"inputs": {"n": n, "bigN": big_n, "eps": eps, "r": r,
                      "k": args.k, "eps3": args.eps3},
           "delta0": delta0(n, big_n, eps, r)}
    eps1, eps2 = search_rat_params(n, big_n, eps, r)
    out["rat"] = {"eps1": eps1, "eps2": eps2,
                  "delta1": delta1(n, big_n, eps1, r),
                  "delta2": delta2(big_n, eps2, r)}
    out["rat"]["l"] = math.ceil(max(out["rat"]["delta1"], out["rat"]["delta2"]))
    try:
        ras = solve_ras_params(n, big_n, eps, r, args.k, args.eps3)
        out["ras"] = {"eps1": ras.eps1, "eps2": ras.eps2,
                      "delta1_star": ras.delta1_star,
                      "delta2_star": ras.delta2_star,
                      "delta3": ras.delta3,
                      "l_start": math.ceil(ras.delta2_star),
                      "l_simulations": math.ceil(ras.delta3)}
    except ParameterError as exc:
        out["ras"] = {"error": str(exc)}
    if args.eps1 is not None or args.eps2 is not None:
        raw = {}
        if args.eps1 is not None:
            raw["delta1"] = delta1(n, big_n, args.eps1, r)
            raw["delta1_star"] = delta1_star(n, big_n, args.eps1, r)
            raw["delta3"] = delta3(big_n, args.eps1, r)
        if args.eps2 is not None:
            raw["delta2"] = delta2(big_n, args.eps2, r)
            raw["delta2_star"] = delta2_star(big_n, args.eps2, r)
        out["raw"] = raw
    _emit(json.dumps(out, indent=2, sort_keys=True), args.out)
    return 0


def cmd_ingest_check(args) -> int:
    with open(args.graph) as fh:
        g = ingest_edge_list(fh, undirected=args.undirected)
    out = {"nodes": g.n, "edges": g.m,
           "max_out_degree": max(g.out_degree(v) for v in range(g.n)),
           "max_in_degree": max(g.in_degree(v) for v in range(g.n))}
    if args.price is not None and args.intrinsics_file:
        frac = args.coupon_frac if args.coupon_frac is not None else 0.9
        price = args.price
        coupon = frac * price
        intr = load_intrinsics(args.intrinsics_file, g.n)
        pruned = sum(1 for v in range(g.n) if intr[v] + coupon < price)
        out["pruned_nodes"] = pruned
        out["retained_nodes"] = g.n - pruned
    _emit(json.dumps(out, indent=2, sort_keys=True), args.out)
    return 0


SWEEP_PRICES = (0.2, 0.3, 0.4, 0.5, 0.6)


def cmd_sweep(args) -> int:
    lines = []
    rows = []
    for price in SWEEP_PRICES:
        args.price = price
        net, echo, seed, threads = _build_network(args)
        report = _run_once(args, net, echo, seed, threads)
        lines.append(json.dumps(report.to_dict(), sort_keys=True))
        rows.append({"price": price, "algorithm": report.algorithm,
                     "seed_count": report.seed_count,
                     "estimated_profit": report.estimated_profit["value"],
                     "mean_adopters": report.estimated_profit["mean_adopters"],
                     "wall_time_ms": report.wall_time_ms,
                     "simulations": report.sample_counts["simulations"],
                     "realizations": report.sample_counts["realizations"],
                     "ra_sets": report.sample_counts["ra_sets"]})
    _emit("\n".join(lines), args.out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="profitmax",
        description="Seed selection for coupon-driven profit maximization")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest-check", help="parse and summarize a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--undirected", action="store_true")
    p.add_argument("--price", type=float, default=None)
    p.add_argument("--coupon-frac", type=float, default=None)
    p.add_argument("--intrinsics-file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ingest_check)

    p = sub.add_parser("run", help="run one selection algorithm")
    _add_network_args(p)
    _add_alg_args(p)
    p.add_argument("--eval-sims", type=int, default=10_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("evaluate", help="evaluate a given seed set")
    _add_network_args(p)
    p.add_argument("--seed-set", required=True,
                   help="comma-separated node ids; empty string for the empty set")
    p.add_argument("--eval-sims", type=int, default=10_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("oracle", help="exact profit on a tiny instance")
    _add_network_args(p)
    p.add_argument("--seed-set", default=None)
    p.add_argument("--optimum", action="store_true",
                   help="exhaustive search for the best seed set")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("thresholds", help="print sample-count thresholds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bigN", type=float, default=None)
    p.add_argument("--eps", type=float, default=0.4)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--eps3", type=float, default=0.1)
    p.add_argument("--eps1", type=float, default=None,
                   help="also print raw thresholds at this eps1")
    p.add_argument("--eps2", type=float, default=None,
                   help="also print raw thresholds at this eps2")
    p.add_argument("--out")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("sweep", help="run one algorithm across the price grid")
    _add_network_args(p)
    _add_alg_args(p)
    p.add_argument("--eval-sims", type=int, default=10_000)
    p.add_argument("--csv", help="also write a CSV summary here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NetworkError, ParameterError, OracleSizeError, MemoryBudgetError,
            ReportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""The four seed-selection algorithms.

All four run the same double-greedy skeleton and differ in how the profit
oracle is realized:

* spm: every marginal is estimated by a fresh batch of forward
  simulations.
* rpm: a collection of realizations is drawn once and every marginal is
  replayed against it.
* ra_t: a reverse-sample collection of precomputed size backs an exact
  incremental oracle.
* ra_s: reverse samples are grown on a doubling schedule and a simulation
  check decides when the collection is already trustworthy.

Every entry point takes an integer seed and a worker count and is
deterministic for a fixed (seed, workers) pair.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import delta0, delta1, delta2, search_rat_params, solve_ras_params
from .diffusion import (estimate_profit_simulation, replay_on_realization,
                        sample_realization, _rng_from)
from .exact import _popcount_u32, _reach_masks
from .greedy import CoverageOracle, FunctionOracle, double_greedy
from .network import ParameterError, TCNetwork
from .sampling import CollectionBuilder, generate_collection

SPM, RPM, RA_T, RA_S = "spm", "rpm", "ra-t", "ra-s"


class MemoryBudgetError(RuntimeError):
    """Predicted sample storage exceeds the configured budget."""


@dataclass
class SelectionResult:
    members: frozenset
    produced_by: str
    sample_counts: dict
    l: int
    params: dict
    internal_value: float = None
    iterations: int = 1
    extras: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.members)


def _check_eps(eps):
    if not (0.0 < eps < 0.5):
        raise ParameterError(f"eps must lie strictly between 0 and 1/2, got {eps}")


def _effective_big_n(net: TCNetwork, big_n):
    # the bound formulas need ln N > 0, so a one-node default is bumped to 2
    if big_n is None:
        return float(max(net.n, 2))
    if big_n <= 1.0:
        raise ParameterError(f"confidence parameter N must exceed 1, got {big_n}")
    return float(big_n)


def _counting_sim_oracle(net, l, eval_parent, workers):
    """Evaluator drawing l fresh simulations per call from its own stream."""
    state = {"sims": 0}

    def evaluate(s):
        child = eval_parent.spawn(1)[0]
        state["sims"] += l
        return estimate_profit_simulation(net, s, l, child, workers).mean_profit

    return evaluate, state


def spm(net: TCNetwork, eps: float = 0.4, big_n=None, l_override=None,
        seed: int = 0, workers: int = 1) -> SelectionResult:
    """Forward-sampling selection with per-inspection simulation batches."""
    _check_eps(eps)
    big_n = _effective_big_n(net, big_n)
    n, r = net.n, net.discount_ratio
    l = int(l_override) if l_override else math.ceil(delta0(n, big_n, eps, r))
    shift = 2.0 * eps * net.full_profit() / n
    ss = np.random.SeedSequence(seed)
    coin_ss, eval_parent = ss.spawn(2)
    evaluate, state = _counting_sim_oracle(net, l, eval_parent, workers)
    oracle = FunctionOracle(evaluate, range(n), shift=shift)
    members = double_greedy(oracle, range(n), _rng_from(coin_ss))
    return SelectionResult(
        members=members, produced_by=SPM,
        sample_counts={"simulations": state["sims"], "realizations": 0, "ra_sets": 0},
        l=l,
        params={"eps": eps, "big_n": big_n, "l_override": l_override,
                "seed": seed, "workers": workers})


def _estimate_realization_bytes(net: TCNetwork, l: int) -> int:
    live = 0.0
    for v in range(net.n):
        if not net.eligible[v]:
            continue
        d = net.graph.in_degree(v)
        if d == 0:
            continue
        live += 1.0 if net.params.model == "lt" else d * net.prob_in[v]
    if net.n <= 32:
        per = 4 * net.n + 32
    else:
        per = 72 * net.n + 80 * live + 160
    return int(l * per)


def _generate_reach_matrix(net: TCNetwork, l: int, ss, workers: int) -> np.ndarray:
    """Per-realization, per-node reachability bitmasks (networks up to 32
    nodes).  Row i holds, for every node, the set of nodes that adopt when
    that node alone is seeded under realization i."""
    mat = np.empty((l, net.n), dtype=np.uint32)
    q, rem = divmod(l, workers)
    row = 0
    for i, child in enumerate(ss.spawn(workers)):
        rng = _rng_from(child)
        for _ in range(q + 1 if i < rem else q):
            real = sample_realization(net, rng)
            mat[row] = _reach_masks(real.live_out, net.n)
            row += 1
    return mat


def rpm(net: TCNetwork, eps: float = 0.4, big_n=None, l_override=None,
        seed: int = 0, workers: int = 1,
        memory_budget_mb: float = 2048.0) -> SelectionResult:
    """Realization-replay selection: one fixed sample, marginals by replay.

    The whole realization collection is held in memory for the entire
    pass, so the projected footprint is checked against memory_budget_mb
    before anything is generated.
    """
    _check_eps(eps)
    big_n = _effective_big_n(net, big_n)
    n, r = net.n, net.discount_ratio
    l = int(l_override) if l_override else math.ceil(delta0(n, big_n, eps, r))
    projected = _estimate_realization_bytes(net, l)
    if projected > memory_budget_mb * (1 << 20):
        raise MemoryBudgetError(
            f"{l} realizations project to ~{projected / (1 << 20):.0f} MiB, "
            f"over the {memory_budget_mb:.0f} MiB budget; lower l or raise the budget")
    ss = np.random.SeedSequence(seed)
    coin_ss, gen_ss = ss.spawn(2)
    workers = max(1, min(workers, l))
    if n <= 32:
        mat = _generate_reach_matrix(net, l, gen_ss, workers)
        price, coupon = net.price, net.coupon

        def evaluate(s):
            if not s:
                return 0.0
            orred = np.bitwise_or.reduce(mat[:, sorted(s)], axis=1)
            mean = float(_popcount_u32(orred).astype(np.float64).mean())
            return price * mean - coupon * len(s)
    else:
        reals = []
        q, rem = divmod(l, workers)
        for i, child in enumerate(gen_ss.spawn(workers)):
            rng = _rng_from(child)
            for _ in range(q + 1 if i < rem else q):
                reals.append(sample_realization(net, rng))
        price, coupon = net.price, net.coupon

        def evaluate(s):
            if not s:
                return 0.0
            mean = sum(replay_on_realization(g, s) for g in reals) / l
            return price * mean - coupon * len(s)

    shift = 2.0 * eps * net.full_profit() / n
    oracle = FunctionOracle(evaluate, range(n), shift=shift)
    members = double_greedy(oracle, range(n), _rng_from(coin_ss))
    return SelectionResult(
        members=members, produced_by=RPM,
        sample_counts={"simulations": 0, "realizations": l, "ra_sets": 0},
        l=l,
        params={"eps": eps, "big_n": big_n, "l_override": l_override,
                "seed": seed, "workers": workers,
                "memory_budget_mb": memory_budget_mb})


def node_order(net: TCNetwork, probe_count: int, rng_seed, workers: int = 1) -> list:
    """Order nodes by estimated single-seed influence, most first.

    Scores each node by how many of probe_count RA sets contain it, which
    is proportional to an unbiased estimate of its solo adopter
    expectation.  Ties break toward the smaller node id.
    """
    if probe_count < 1:
        raise ParameterError("probe_count must be positive")
    coll = generate_collection(net, probe_count, rng_seed, workers)
    scores = coll.coverage_counts()
    order = np.lexsort((np.arange(net.n), -scores))
    return [int(v) for v in order]


def _default_probe_count(net: TCNetwork, big_n, eps, max_ra=None) -> int:
    probes = math.ceil(delta2(big_n, eps, net.discount_ratio))
    if max_ra is not None:
        probes = min(probes, int(max_ra))
    return max(probes, 1)


def ra_t(net: TCNetwork, eps: float = 0.4, big_n=None, max_ra=None,
         seed: int = 0, workers: int = 1, order_probes=None) -> SelectionResult:
    """Reverse-sampling selection with a precomputed collection size."""
    _check_eps(eps)
    big_n = _effective_big_n(net, big_n)
    n, r = net.n, net.discount_ratio
    eps1, eps2 = search_rat_params(n, big_n, eps, r, step=0.01)
    l = math.ceil(max(delta1(n, big_n, eps1, r), delta2(big_n, eps2, r)))
    if max_ra is not None:
        l = min(l, int(max_ra))
    ss = np.random.SeedSequence(seed)
    coll_ss, probe_ss, coin_ss = ss.spawn(3)
    coll = generate_collection(net, l, coll_ss, workers)
    probes = int(order_probes) if order_probes else _default_probe_count(net, big_n, eps, max_ra)
    order = node_order(net, probes, probe_ss, workers)
    oracle = CoverageOracle(coll, net.price, net.coupon)
    members = double_greedy(oracle, order, _rng_from(coin_ss))
    return SelectionResult(
        members=members, produced_by=RA_T,
        sample_counts={"simulations": 0, "realizations": 0, "ra_sets": l + probes},
        l=l, internal_value=oracle.current_value(),
        params={"eps": eps, "big_n": big_n, "eps1": eps1, "eps2": eps2,
                "max_ra": max_ra, "order_probes": probes,
                "seed": seed, "workers": workers})


def _extend_partitioned(builder: CollectionBuilder, count: int, ss, workers: int):
    if count <= 0:
        return
    workers = max(1, min(workers, count))
    q, rem = divmod(count, workers)
    for i, child in enumerate(ss.spawn(workers)):
        builder.extend(q + 1 if i < rem else q, child)


def ra_s(net: TCNetwork, eps: float = 0.4, big_n=None, k: int = 5,
         eps3: float = 0.1, plateau_pct: float = 2.0, seed: int = 0,
         workers: int = 1, order_probes=None) -> SelectionResult:
    """Reverse-sampling selection on a doubling schedule.

    The collection starts at ceil(delta2_star) sets and doubles each
    round; rounds end early when the collection's own estimate of its
    output is confirmed by an independent simulation batch, when the
    estimate has plateaued (relative drop below plateau_pct percent), or
    unconditionally once the martingale threshold delta1_star is reached.
    """
    _check_eps(eps)
    big_n = _effective_big_n(net, big_n)
    n, r = net.n, net.discount_ratio
    params = solve_ras_params(n, big_n, eps, r, k, eps3)
    l_star = math.ceil(params.delta3)
    ss = np.random.SeedSequence(seed)
    probe_ss, loop_ss = ss.spawn(2)
    probes = int(order_probes) if order_probes else _default_probe_count(net, big_n, eps)
    order = node_order(net, probes, probe_ss, workers)
    builder = CollectionBuilder(net)
    l_real = params.delta2_star
    prev_f = None
    sims = 0
    iterations = 0
    stop_reason = None
    members = frozenset()
    value = None
    while l_real <= 2.0 * params.delta1_star * (1.0 + 1e-9):
        grow_ss, coin_ss, sim_ss = loop_ss.spawn(3)
        _extend_partitioned(builder, math.ceil(l_real) - len(builder), grow_ss, workers)
        coll = builder.snapshot()
        oracle = CoverageOracle(coll, net.price, net.coupon)
        members = double_greedy(oracle, order, _rng_from(coin_ss))
        value = oracle.current_value()
        iterations += 1
        if l_real >= params.delta1_star * (1.0 - 1e-9):
            stop_reason = "threshold"
            break
        check = estimate_profit_simulation(net, members, l_star, sim_ss, workers)
        sims += l_star
        if value <= (1.0 + eps3) * check.mean_profit:
            stop_reason = "confirmed"
            break
        if prev_f is not None and (prev_f - value) < plateau_pct / 100.0 * abs(prev_f):
            stop_reason = "plateau"
            break
        prev_f = value
        l_real *= 2.0
    return SelectionResult(
        members=members, produced_by=RA_S,
        sample_counts={"simulations": sims, "realizations": 0,
                       "ra_sets": len(builder) + probes},
        l=len(builder), internal_value=value, iterations=iterations,
        extras={"stop_reason": stop_reason, "l_star": l_star,
                "eps1": params.eps1, "eps2": params.eps2,
                "delta1_star": params.delta1_star,
                "delta2_star": params.delta2_star},
        params={"eps": eps, "big_n": big_n, "k": k, "eps3": eps3,
                "plateau_pct": plateau_pct, "order_probes": probes,
                "seed": seed, "workers": workers})


ALGORITHMS = {SPM: spm, RPM: rpm, RA_T: ra_t, RA_S: ra_s}

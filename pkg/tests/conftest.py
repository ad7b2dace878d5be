import io
import random

import pytest

from profitmax import DiffusionParams, build_tc_network, ingest_edge_list


def make_graph(edge_text: str, undirected: bool = False):
    return ingest_edge_list(io.StringIO(edge_text), undirected=undirected)


def make_net(edge_text, model="ic-cp", ic_p=1.0, price=0.5, coupon=0.25,
             intrinsics=None, undirected=False):
    g = make_graph(edge_text, undirected)
    if intrinsics is None:
        intrinsics = [0.9] * g.n
    params = DiffusionParams(model=model, ic_probability=ic_p)
    return build_tc_network(g, params, price, coupon, intrinsics)


@pytest.fixture
def two_node_net():
    """One edge v1 -> v2, certain activation, everyone can afford the price.

    Exact profits: f({v1}) = 0.75, f({v1, v2}) = 0.5, f({v2}) = 0.25.
    Adding the second seed lowers profit, so this is the canonical
    non-monotonicity witness.
    """
    return make_net("1 2\n", ic_p=1.0, price=0.5, coupon=0.25)


@pytest.fixture
def lt_fork_net():
    """a -> c and b -> c under the threshold model: pi({a}) = 1.5."""
    return make_net("1 3\n2 3\n", model="lt")


def random_edge_text(rng: random.Random, n: int, m: int) -> str:
    """m distinct directed non-loop edges over nodes 1..n."""
    pairs = set()
    while len(pairs) < m:
        u = rng.randrange(1, n + 1)
        v = rng.randrange(1, n + 1)
        if u != v:
            pairs.add((u, v))
    lines = [f"{u} {v}" for u, v in sorted(pairs)]
    # keep isolated nodes present via self-descriptive comment lines
    lines.append(f"# n={n}")
    for v in range(1, n + 1):
        if not any(v in p for p in pairs):
            lines.append(f"{v} {1 if v != 1 else 2}")
    return "\n".join(lines) + "\n"


def random_small_net(rng: random.Random, n_max: int = 7, model=None):
    n = rng.randint(2, n_max)
    m = rng.randint(1, min(n * (n - 1), 2 * n))
    model = model or rng.choice(["ic-cp", "lt"])
    price = rng.uniform(0.2, 0.9)
    coupon = rng.uniform(0.0, price * 0.9)
    intr = [rng.uniform(price - coupon, 1.0) for _ in range(n)]
    return make_net(random_edge_text(rng, n, m), model=model,
                    ic_p=rng.uniform(0.1, 0.9), price=price, coupon=coupon,
                    intrinsics=intr)

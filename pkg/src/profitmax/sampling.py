"""Reverse adopted-reachable (RA) sampling.

An RA set is grown backwards from a uniformly random root: the root's
triggering set is sampled, then the triggering sets of the newly reached
nodes, and so on.  Every node in the result could have caused the root to
adopt, so the fraction of RA sets touched by a seed set S estimates the
adopter expectation: E[x(S, R)] = pi(S) / n.  The profit estimator built
on a collection of l RA sets is

    F(R_l, S) = P * n * (sum_i x(S, R_i)) / l - C * |S|
"""

import hashlib
import random
import struct
from dataclasses import dataclass

import numpy as np

from .diffusion import _rng_from, sample_triggering_set
from .network import NetworkError, TCNetwork


@dataclass(frozen=True)
class RASet:
    root: int
    members: frozenset

    def __post_init__(self):
        if self.root not in self.members:
            raise ValueError("RA set must contain its own root")


def generate_ra_set(net: TCNetwork, rng) -> RASet:
    """Grow one RA set by lazy reverse traversal.

    Triggering sets are sampled only for nodes the traversal actually
    reaches, each at most once (on first visit); the rest of the
    realization is never materialized.
    """
    rng = _rng_from(rng)
    root = rng.randrange(net.n)
    members = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for u in sample_triggering_set(net, v, rng):
            if u not in members:
                members.add(u)
                stack.append(u)
    return RASet(root, frozenset(members))


def coverage_indicator(seeds, ra: RASet) -> int:
    """1 if the seed set intersects the RA set, else 0."""
    members = ra.members
    for s in seeds:
        if s in members:
            return 1
    return 0


class RACollection:
    """A flat, append-only store of RA sets with an inverted index.

    Member lists live in one int32 array sliced by offsets, which keeps
    millions of small sets cheap.  The inverted index (node -> indices of
    sets containing it) is built on first use and reused afterwards.
    """

    def __init__(self, n: int, roots, offsets, members):
        self.n = n
        self.roots = np.asarray(roots, dtype=np.int32)
        self.offsets = np.asarray(offsets, dtype=np.int64)
        self.members = np.asarray(members, dtype=np.int32)
        self._index = None

    def __len__(self):
        return len(self.roots)

    def members_of(self, i: int) -> np.ndarray:
        return self.members[self.offsets[i]:self.offsets[i + 1]]

    def sets(self):
        for i in range(len(self)):
            yield RASet(int(self.roots[i]), frozenset(int(v) for v in self.members_of(i)))

    def sizes(self) -> np.ndarray:
        return np.diff(self.offsets)

    def index(self):
        """(idx_offsets, idx_sets): for node v, idx_sets[idx_offsets[v]:
        idx_offsets[v+1]] are the indices of RA sets containing v."""
        if self._index is None:
            counts = np.bincount(self.members, minlength=self.n)
            idx_offsets = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(counts, out=idx_offsets[1:])
            set_of_entry = np.repeat(
                np.arange(len(self), dtype=np.int64), self.sizes())
            order = np.argsort(self.members, kind="stable")
            self._index = (idx_offsets, set_of_entry[order].astype(np.int64))
        return self._index

    def sets_containing(self, v: int) -> np.ndarray:
        idx_offsets, idx_sets = self.index()
        return idx_sets[idx_offsets[v]:idx_offsets[v + 1]]

    def coverage_counts(self) -> np.ndarray:
        """How many RA sets contain each node."""
        return np.bincount(self.members, minlength=self.n)

    @classmethod
    def from_sets(cls, n: int, sets):
        roots, offsets, members = [], [0], []
        for ra in sets:
            roots.append(ra.root)
            members.extend(sorted(ra.members))
            offsets.append(len(members))
        return cls(n, roots, offsets, members)


class CollectionBuilder:
    """Accumulates RA sets across growth rounds without recopying."""

    def __init__(self, net: TCNetwork):
        self.net = net
        self.roots = []
        self.offsets = [0]
        self.members = []

    def __len__(self):
        return len(self.roots)

    def extend(self, count: int, rng):
        rng = _rng_from(rng)
        net = self.net
        for _ in range(count):
            ra = generate_ra_set(net, rng)
            self.roots.append(ra.root)
            self.members.extend(ra.members)
            self.offsets.append(len(self.members))

    def snapshot(self) -> RACollection:
        return RACollection(self.net.n, self.roots, self.offsets, self.members)


def generate_collection(net: TCNetwork, l: int, rng_seed, workers: int = 1) -> RACollection:
    """Generate l RA sets, partitioned into per-worker blocks.

    Blocks are contiguous and each uses its own derived stream, so the
    collection is reproducible for a fixed (rng_seed, workers) pair.
    """
    if l < 1:
        raise ValueError("collection needs at least one RA set")
    workers = max(1, min(workers, l))
    ss = rng_seed if isinstance(rng_seed, np.random.SeedSequence) \
        else np.random.SeedSequence(rng_seed)
    builder = CollectionBuilder(net)
    q, rem = divmod(l, workers)
    for i, child in enumerate(ss.spawn(workers)):
        builder.extend(q + 1 if i < rem else q, child)
    return builder.snapshot()


def estimate_F(coll: RACollection, seeds, net: TCNetwork) -> float:
    """Profit estimate of a seed set under a fixed RA collection."""
    l = len(coll)
    if l < 1:
        raise ValueError("empty RA collection")
    covered = covered_sets(coll, seeds)
    return net.price * net.n * covered.sum() / l - net.coupon * len(set(seeds))


def covered_sets(coll: RACollection, seeds) -> np.ndarray:
    """Boolean mask over the collection: which RA sets contain a seed."""
    covered = np.zeros(len(coll), dtype=bool)
    for v in set(seeds):
        covered[coll.sets_containing(v)] = True
    return covered


_RA_MAGIC = b"RACL"
_RA_VERSION = 1


def _model_digest(net: TCNetwork) -> bytes:
    payload = repr((net.params.model, net.params.ic_probability, net.price,
                    net.coupon, net.n, net.m, net.intrinsic)).encode()
    return hashlib.sha256(payload).digest()[:8]


def save_collection(path, coll: RACollection, net: TCNetwork):
    """Versioned binary cache: header (magic, version, model digest, n, l)
    then per set a root and a length-prefixed member list."""
    with open(path, "wb") as fh:
        fh.write(_RA_MAGIC)
        fh.write(struct.pack("<B", _RA_VERSION))
        fh.write(_model_digest(net))
        fh.write(struct.pack("<IQ", coll.n, len(coll)))
        for i in range(len(coll)):
            mem = coll.members_of(i)
            fh.write(struct.pack("<II", int(coll.roots[i]), len(mem)))
            fh.write(mem.astype("<u4").tobytes())


def load_collection(path, net: TCNetwork) -> RACollection:
    with open(path, "rb") as fh:
        if fh.read(4) != _RA_MAGIC:
            raise NetworkError("not an RA collection cache file")
        (version,) = struct.unpack("<B", fh.read(1))
        if version != _RA_VERSION:
            raise NetworkError(f"unsupported RA cache version {version}")
        digest = fh.read(8)
        if digest != _model_digest(net):
            raise NetworkError(
                "RA cache was generated for a different network or model")
        n, l = struct.unpack("<IQ", fh.read(12))
        if n != net.n:
            raise NetworkError("RA cache node count mismatch")
        roots, offsets, members = [], [0], []
        for _ in range(l):
            root, k = struct.unpack("<II", fh.read(8))
            roots.append(root)
            mem = np.frombuffer(fh.read(4 * k), dtype="<u4")
            members.extend(int(x) for x in mem)
            offsets.append(len(members))
        return RACollection(n, roots, offsets, members)

"""Discrete-time SIR spreading from a single seed node.

Round semantics: every node infected in the previous round makes one
Bernoulli(beta) attempt on each susceptible neighbor, then is removed. A
susceptible node reached by several infected neighbors in the same round is
infected if any attempt succeeds. The outbreak stops when a round produces
no new infections; its size is the number of removed nodes, seed included.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import TextIO

import numpy as np

from ripsrank.graph import Graph
from ripsrank.percolation import BudgetError, _check_beta
from ripsrank.ranking import Ranking, rank_scores
from ripsrank.streams import as_generator, stream

DEFAULT_RUNS = 10_000
# (run, node) state cells held at once by the vectorized simulator
_BATCH_CELLS = 1 << 22


@dataclass(frozen=True)
class SirConfig:
    beta: float
    runs: int = DEFAULT_RUNS
    master_seed: int = 0

    def __post_init__(self):
        _check_beta(self.beta)
        if self.runs < 1:
            raise ValueError("runs must be >= 1")


@dataclass(frozen=True)
class GroundTruth:
    mean_spread: np.ndarray
    runs_used: int
    beta: float
    # per-node sample standard deviation of the outbreak size
    std_spread: np.ndarray | None = None


def simulate_outbreaks(g: Graph, seed_node: int, beta: float, runs: int, rng: np.random.Generator) -> np.ndarray:
    """Final outbreak sizes of ``runs`` independent epidemics from ``seed_node``.

    All runs advance together: the frontier is a list of (run, node) pairs,
    expanded over the CSR adjacency each round.
    """
    g._check(seed_node)
    _check_beta(beta)
    n = g.node_count
    out = np.empty(runs, dtype=np.int64)
    step = max(1, _BATCH_CELLS // max(n, 1))
    deg = g.degrees
    for start in range(0, runs, step):
        r = min(step, runs - start)
        # True once a node has been infected (it is then infected or removed)
        touched = np.zeros(r * n, dtype=bool)
        claim = np.empty(r * n, dtype=np.int64)
        touched[np.arange(r) * n + seed_node] = True
        f_run = np.arange(r, dtype=np.int64)
        f_node = np.full(r, seed_node, dtype=np.int64)
        while len(f_run):
            counts = deg[f_node]
            total = int(counts.sum())
            if total == 0:
                break
            c_run = np.repeat(f_run, counts)
            first = np.repeat(g.indptr[f_node] - np.cumsum(counts) + counts, counts)
            c_node = g.indices[first + np.arange(total)]
            key = c_run * n + c_node
            hit = rng.random(total) < beta
            key = key[hit & ~touched[key]]
            # one frontier entry per newly infected (run, node), without sorting
            claim[key] = np.arange(len(key))
            key = key[claim[key] == np.arange(len(key))]
            touched[key] = True
            f_run, f_node = key // n, key % n
        out[start : start + r] = touched.reshape(r, n).sum(axis=1)
    return out


def sir_run(g: Graph, seed_node: int, beta: float, rng: np.random.Generator | int | None = None) -> int:
    """One epidemic from ``seed_node``; returns the number of removed nodes."""
    return int(simulate_outbreaks(g, seed_node, beta, 1, as_generator(rng))[0])


def ground_truth(g: Graph, cfg: SirConfig, workers: int = 1) -> GroundTruth:
    """Monte-Carlo mean outbreak size for every seed node.

    The runs of node ``v`` draw from the stream ``(master_seed, v)``, so the
    result does not depend on ``workers``.
    """

    def one(v: int) -> tuple[float, float]:
        sizes = simulate_outbreaks(g, v, cfg.beta, cfg.runs, stream(cfg.master_seed, v))
        return float(sizes.mean()), float(sizes.std(ddof=1)) if cfg.runs > 1 else 0.0

    nodes = range(g.node_count)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            res = list(pool.map(one, nodes))
    else:
        res = [one(v) for v in nodes]
    mean = np.array([m for m, _ in res])
    std = np.array([s for _, s in res])
    return GroundTruth(mean_spread=mean, runs_used=cfg.runs, beta=cfg.beta, std_spread=std)


def ground_truth_ranking(gt: GroundTruth, g: Graph) -> Ranking:
    if len(gt.mean_spread) != g.node_count:
        raise ValueError("ground truth does not cover the graph's nodes")
    return rank_scores(gt.mean_spread, g)


def write_ground_truth_tsv(gt: GroundTruth, g: Graph, out: TextIO) -> None:
    out.write("node\tmean_spread\truns\n")
    for v in range(g.node_count):
        out.write(f"{g.labels[v]}\t{float(gt.mean_spread[v])!r}\t{gt.runs_used}\n")


def read_ground_truth_tsv(src: TextIO, g: Graph, beta: float) -> GroundTruth:
    header = src.readline().rstrip("\n").split("\t")
    if header != ["node", "mean_spread", "runs"]:
        raise ValueError(f"not a ground-truth file, header was {header!r}")
    mean = np.full(g.node_count, np.nan)
    runs = 0
    for line in src:
        if not line.strip():
            continue
        label, val, r = line.rstrip("\n").split("\t")
        mean[g.index_of(label)] = float(val)
        runs = int(r)
    if np.isnan(mean).any():
        raise ValueError("ground-truth file does not cover every node")
    return GroundTruth(mean_spread=mean, runs_used=runs, beta=beta)


MAX_EXACT_SIR_EDGES = 12


def exact_sir_expectation(g: Graph, beta: float, source: int) -> float:
    """Exact expected outbreak size by enumerating the SIR process itself.

    Walks the Markov chain over (removed set, infected set) states: each
    round enumerates every success/failure pattern of the (infected,
    susceptible) contacts, weighting by ``beta`` per success. No edge
    subsets are involved, so this is an independent route to the value
    that percolation predicts.
    """
    _check_beta(beta)
    g._check(source)
    if g.edge_count > MAX_EXACT_SIR_EDGES:
        raise BudgetError(f"exact SIR limited to {MAX_EXACT_SIR_EDGES} edges")
    nbrs = [frozenset(g.neighbors(v).tolist()) for v in range(g.node_count)]

    @lru_cache(maxsize=None)
    def expect(done: frozenset, infected: frozenset) -> float:
        if not infected:
            return float(len(done))
        closed = done | infected
        contacts = [(i, s) for i in sorted(infected) for s in sorted(nbrs[i] - closed)]
        total = 0.0
        for outcome in product((False, True), repeat=len(contacts)):
            p = 1.0
            new = set()
            for ok, (_, s) in zip(outcome, contacts):
                if ok:
                    p *= beta
                    new.add(s)
                else:
                    p *= 1.0 - beta
            if p:
                total += p * expect(closed, frozenset(new))
        return total

    return expect(frozenset(), frozenset({source}))

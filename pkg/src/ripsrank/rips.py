"""Randomized Influence Paths Selection.

Each of ``samples`` rounds draws a beta-graph, keeps its connected components
larger than ``threshold`` and treats every kept component as a hyper-edge.
A node's influence weight is its accumulated hyper-edge weight:

* UNIFORM: +1 per hyper-edge containing the node (its hyper-graph degree);
* WEIGHTED: +``|cc| * beta * deg(u)`` per hyper-edge ``cc`` containing ``u``.

Nodes are ranked by weight. For the uniform weights, ``weight / samples``
estimates the probability that the node's percolation cluster has at least
two members, and ``n * deg_H(v) / m_H`` estimates its expected spread.

The sample-size guarantee only holds with probability ``1 - n**-k`` and
needs the true spread as an input, so :func:`sample_size_bound` is an
advisory calculator; the bound is far above the few hundred samples that
suffice in practice. A companion probability bound for a ``(1 - eps/2)``
approximation depends on per-node quantities that are unknown before
sampling (the minimum hyper-degree reaching the target and the largest
component size), and is therefore not computed here.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ripsrank.graph import Graph
from ripsrank.percolation import _block_components, _check_beta
from ripsrank.ranking import Ranking, rank_scores
from ripsrank.streams import stream

DEFAULT_SAMPLES = 200
# node-copies materialized per block; bounds memory of one block
_BLOCK_BUDGET = 1 << 21


class WeightMode(enum.Enum):
    UNIFORM = "uniform"
    WEIGHTED = "weighted"


@dataclass(frozen=True)
class RipsConfig:
    beta: float
    samples: int = DEFAULT_SAMPLES
    threshold: int = 1
    mode: WeightMode = WeightMode.WEIGHTED
    master_seed: int = 0

    def __post_init__(self):
        _check_beta(self.beta)
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.threshold < 0:
            raise ValueError("threshold must be >= 0")
        if not isinstance(self.mode, WeightMode):
            object.__setattr__(self, "mode", WeightMode(self.mode))


@dataclass(frozen=True)
class InfluenceWeights:
    weights: np.ndarray
    config: RipsConfig
    hyperedge_count: int


def block_size(g: Graph) -> int:
    """Samples per random-stream block; a function of the graph only."""
    return int(max(1, min(4096, _BLOCK_BUDGET // max(g.node_count, g.edge_count, 1))))


def _run_block(g: Graph, cfg: RipsConfig, block: int, count: int) -> tuple[np.ndarray, int]:
    rng = stream(cfg.master_seed, block)
    keep = rng.random((count, g.edge_count)) < cfg.beta
    labels, sizes = _block_components(g, keep)
    kept = (sizes >= 2) & (sizes > cfg.threshold)
    in_kept = kept[labels]
    node = np.tile(np.arange(g.node_count), count)[in_kept]
    if cfg.mode is WeightMode.UNIFORM:
        w = np.bincount(node, minlength=g.node_count).astype(float)
    else:
        contrib = sizes[labels[in_kept]] * cfg.beta * g.degrees[node]
        w = np.bincount(node, weights=contrib, minlength=g.node_count)
    return w, int(kept.sum())


def rips_weights(g: Graph, cfg: RipsConfig, workers: int = 1) -> InfluenceWeights:
    """Accumulate hyper-edge weights over ``cfg.samples`` beta-graphs.

    Samples are split into fixed blocks, each with its own random stream
    derived from ``(master_seed, block index)``; block results are summed in
    block order, so the output is identical for any ``workers``.
    """
    bs = block_size(g)
    counts = [bs] * (cfg.samples // bs)
    if cfg.samples % bs:
        counts.append(cfg.samples % bs)
    jobs = list(enumerate(counts))
    if g.edge_count == 0 or cfg.beta == 0.0:
        return InfluenceWeights(np.zeros(g.node_count), cfg, 0)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda j: _run_block(g, cfg, *j), jobs))
    else:
        parts = [_run_block(g, cfg, *j) for j in jobs]
    weights = np.zeros(g.node_count)
    hyperedges = 0
    for w, h in parts:
        weights += w
        hyperedges += h
    return InfluenceWeights(weights=weights, config=cfg, hyperedge_count=hyperedges)


def rips_rank(w: InfluenceWeights, g: Graph) -> Ranking:
    if len(w.weights) != g.node_count:
        raise ValueError("weights do not cover the graph's nodes")
    return rank_scores(w.weights, g)


def rips(g: Graph, cfg: RipsConfig, workers: int = 1) -> Ranking:
    return rips_rank(rips_weights(g, cfg, workers=workers), g)


def sample_size_bound(epsilon: float, k: float, n: int, influence_lb: float) -> int:
    """Hyper-edges sufficient for an ``epsilon/2`` additive guarantee w.p. ``1 - n**-k``.

    ``ceil((ln 2 + k ln n) / (influence_lb * epsilon**2) * (8 + 2 epsilon) * n)``
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    if k <= 0 or n < 1:
        raise ValueError("k and n must be positive")
    if influence_lb <= 0:
        raise ValueError("influence_lb must be positive")
    if influence_lb > n:
        raise ValueError("influence_lb cannot exceed n")
    return math.ceil((math.log(2) + k * math.log(n)) / (influence_lb * epsilon**2) * (8 + 2 * epsilon) * n)

"""Random beta-graph sampling (bond percolation) and an exact enumeration
of the percolation measure for small graphs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ripsrank.graph import Graph
from ripsrank.streams import as_generator

MAX_EXACT_EDGES = 22


class BudgetError(ValueError):
    """Exact enumeration requested on a graph that is too large."""


def _check_beta(beta: float) -> None:
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")


@dataclass(frozen=True)
class BetaSample:
    """Connected components of one sampled beta-graph that exceed the size threshold."""

    components: list[np.ndarray]
    beta: float
    threshold: int


def sample_beta_graph(
    g: Graph, beta: float, threshold: int = 1, rng: np.random.Generator | int | None = None
) -> BetaSample:
    """Keep every edge independently with probability ``beta`` and return the
    components of size ``> threshold`` (always at least 2 nodes)."""
    _check_beta(beta)
    rng = as_generator(rng)
    keep = rng.random(g.edge_count) < beta
    labels, sizes = _block_components(g, keep[None, :])
    retained = (sizes >= 2) & (sizes > threshold)
    comps: dict[int, list[int]] = {}
    for v in range(g.node_count):
        c = int(labels[v])
        if retained[c]:
            comps.setdefault(c, []).append(v)
    return BetaSample(
        components=[np.array(c, dtype=np.int64) for c in comps.values()],
        beta=beta,
        threshold=threshold,
    )


def _block_components(g: Graph, keep: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Label components of a stack of beta-graphs at once.

    ``keep`` is a ``(samples, m)`` boolean edge mask. The samples are laid out
    as disjoint copies of the node set (sample ``s`` owns node ids
    ``s * n .. s * n + n - 1``), so one connected-components pass labels all
    of them. Returns per-copy-node labels and per-label sizes.
    """
    n = g.node_count
    s_idx, e_idx = np.nonzero(keep)
    offset = s_idx.astype(np.int64) * n
    u = g.edges[e_idx, 0] + offset
    v = g.edges[e_idx, 1] + offset
    total = keep.shape[0] * n
    adj = coo_matrix((np.ones(len(u), dtype=np.int8), (u, v)), shape=(total, total))
    _, labels = connected_components(adj, directed=False)
    sizes = np.bincount(labels)
    return labels, sizes


@dataclass(frozen=True)
class PercolationExact:
    source: int
    beta: float
    expected_cc_size: float
    reach_prob: np.ndarray
    component_size_dist: dict[int, float]


def exact_percolation(g: Graph, beta: float, source: int) -> PercolationExact:
    """Exact law of the source's component over all ``2**m`` edge subsets.

    Reachability for every subset is propagated simultaneously as node
    bitmasks; subset ``s`` has probability ``beta**a * (1-beta)**(m-a)`` with
    ``a`` its number of active edges. The source always counts itself, so
    the component size is 1 when none of its edges is active.
    """
    _check_beta(beta)
    g._check(source)
    m = g.edge_count
    if m > MAX_EXACT_EDGES:
        raise BudgetError(f"exact percolation limited to {MAX_EXACT_EDGES} edges, graph has {m}")
    if g.node_count > 62:
        raise BudgetError("exact percolation limited to 62 nodes")

    subsets = np.arange(1 << m, dtype=np.int64)
    active = [((subsets >> e) & 1).astype(bool) for e in range(m)]
    bit = [np.int64(1) << np.int64(v) for v in range(g.node_count)]
    reach = np.full(1 << m, bit[source], dtype=np.int64)
    changed = True
    while changed:
        changed = False
        for e, (u, v) in enumerate(g.edges.tolist()):
            has_u = (reach & bit[u]) != 0
            has_v = (reach & bit[v]) != 0
            grow = active[e] & (has_u ^ has_v)
            if grow.any():
                reach[grow] |= bit[u] | bit[v]
                changed = True

    a = np.zeros(1 << m, dtype=np.int64)
    for e in range(m):
        a += active[e]
    w = np.power(beta, a) * np.power(1.0 - beta, m - a)

    member = np.stack([(reach & bit[v]) != 0 for v in range(g.node_count)])
    sizes = member.sum(axis=0)
    reach_prob = member.astype(float) @ w
    reach_prob[source] = 0.0
    dist = np.bincount(sizes, weights=w, minlength=g.node_count + 1)
    size_dist = {int(k): float(p) for k, p in enumerate(dist) if p > 0}
    return PercolationExact(
        source=source,
        beta=beta,
        expected_cc_size=float(sizes @ w),
        reach_prob=reach_prob,
        component_size_dist=size_dist,
    )

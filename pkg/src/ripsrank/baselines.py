"""Structural centrality baselines, each producing a :class:`Ranking`."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ripsrank.graph import Graph, clustering_coefficients
from ripsrank.ranking import Ranking, rank_scores

DEFAULT_MDD_LAMBDA = 0.7


@dataclass(frozen=True)
class ShellDecomposition:
    """k-shell indices plus, per node, the sweep that removed it.

    ``sweep[v]`` is the 1-based index of the simultaneous removal sweep
    within shell ``coreness[v]`` and ``sweeps[v]`` the number of sweeps that
    shell needed.
    """

    coreness: np.ndarray
    sweep: np.ndarray
    sweeps: np.ndarray


def _neighbor_lists(g: Graph) -> list[np.ndarray]:
    return [g.indices[g.indptr[v] : g.indptr[v + 1]] for v in range(g.node_count)]


def k_shell(g: Graph) -> ShellDecomposition:
    """Iterative peeling.

    For threshold k = 0, 1, 2, ... all remaining nodes with residual degree
    <= k are removed together in one sweep; sweeps repeat at the same k until
    none qualifies, then k grows by one.
    """
    n = g.node_count
    nbrs = _neighbor_lists(g)
    residual = g.degrees.astype(np.int64).copy()
    alive = np.ones(n, dtype=bool)
    coreness = np.zeros(n, dtype=np.int64)
    sweep = np.zeros(n, dtype=np.int64)
    sweeps = np.zeros(n, dtype=np.int64)
    k = 0
    remaining = n
    while remaining:
        shell: list[np.ndarray] = []
        while True:
            batch = np.flatnonzero(alive & (residual <= k))
            if not len(batch):
                break
            shell.append(batch)
            alive[batch] = False
            remaining -= len(batch)
            for v in batch:
                residual[nbrs[v]] -= 1
        for i, batch in enumerate(shell, start=1):
            coreness[batch] = k
            sweep[batch] = i
            sweeps[batch] = len(shell)
        k += 1
    return ShellDecomposition(coreness=coreness, sweep=sweep, sweeps=sweeps)


def degree_centrality(g: Graph) -> Ranking:
    return rank_scores(g.degrees.astype(float), g)


def ks(g: Graph) -> Ranking:
    return rank_scores(k_shell(g).coreness.astype(float), g)


def mixed_degree_shells(g: Graph, lam: float = DEFAULT_MDD_LAMBDA) -> np.ndarray:
    """Mixed-degree decomposition, ``k_m = k_residual + lam * k_exhausted``.

    The threshold M starts at the smallest mixed degree; nodes with
    ``k_m <= M`` are removed (score M) and mixed degrees updated until none
    qualifies, then M becomes the smallest remaining mixed degree.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    n = g.node_count
    nbrs = _neighbor_lists(g)
    kr = g.degrees.astype(np.int64).copy()
    ke = np.zeros(n, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    score = np.zeros(n)
    remaining = n
    while remaining:
        km = kr + lam * ke
        level = km[alive].min()
        while True:
            km = kr + lam * ke
            batch = np.flatnonzero(alive & (km <= level))
            if not len(batch):
                break
            score[batch] = level
            alive[batch] = False
            remaining -= len(batch)
            for v in batch:
                kr[nbrs[v]] -= 1
                ke[nbrs[v]] += 1
    return score


def mdd(g: Graph, lam: float = DEFAULT_MDD_LAMBDA) -> Ranking:
    return rank_scores(mixed_degree_shells(g, lam), g)


def cnc(g: Graph, coreness: np.ndarray | None = None) -> np.ndarray:
    """Neighborhood coreness: sum of the neighbors' shell indices."""
    if coreness is None:
        coreness = k_shell(g).coreness
    return _neighbor_sum(g, coreness.astype(float))


def cnc_plus_scores(g: Graph) -> np.ndarray:
    return _neighbor_sum(g, cnc(g))


def cnc_plus(g: Graph) -> Ranking:
    return rank_scores(cnc_plus_scores(g), g)


def _neighbor_sum(g: Graph, values: np.ndarray) -> np.ndarray:
    src = np.repeat(np.arange(g.node_count), g.degrees)
    return np.bincount(src, weights=values[g.indices], minlength=g.node_count)


def ks_if_scores(g: Graph) -> np.ndarray:
    sd = k_shell(g)
    sweeps = np.maximum(sd.sweeps, 1)
    delta = sd.coreness * (1.0 + sd.sweep / sweeps)
    dd = delta * g.degrees
    return dd + _neighbor_sum(g, dd)


def ks_if(g: Graph) -> Ranking:
    return rank_scores(ks_if_scores(g), g)


def h_index_scores(g: Graph) -> np.ndarray:
    deg = g.degrees
    out = np.zeros(g.node_count, dtype=np.int64)
    for v in range(g.node_count):
        nd = np.sort(deg[g.indices[g.indptr[v] : g.indptr[v + 1]]])[::-1]
        # largest h with nd[h-1] >= h
        ok = nd >= np.arange(1, len(nd) + 1)
        out[v] = int(ok.sum())
    return out


def h_index(g: Graph) -> Ranking:
    return rank_scores(h_index_scores(g).astype(float), g)


def cluster_rank_scores(g: Graph) -> np.ndarray:
    """``10**(-c_i) * sum_{j in N(i)} (deg(j) + 1)``."""
    c = clustering_coefficients(g)
    return np.power(10.0, -c) * _neighbor_sum(g, g.degrees + 1.0)


def cluster_rank(g: Graph) -> Ranking:
    return rank_scores(cluster_rank_scores(g), g)


BASELINES: dict[str, Callable[[Graph], Ranking]] = {
    "degree": degree_centrality,
    "ks": ks,
    "mdd": mdd,
    "cnc+": cnc_plus,
    "ksif": ks_if,
    "hindex": h_index,
    "clusterrank": cluster_rank,
}


def baseline(name: str, g: Graph) -> Ranking:
    try:
        fn = BASELINES[name]
    except KeyError:
        raise ValueError(f"unknown baseline {name!r}; choose from {', '.join(BASELINES)}") from None
    return fn(g)

"""Undirected simple graphs with dense integer indices, edge-list ingestion,
structural statistics and a few synthetic generators."""

from __future__ import annotations

import enum
import io
import logging
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

log = logging.getLogger(__name__)


class GraphError(ValueError):
    """Invalid graph input or query."""


class EdgeListParseError(GraphError):
    def __init__(self, lineno: int, line: str):
        super().__init__(f"line {lineno}: expected at least two tokens, got {line!r}")
        self.lineno = lineno


class EmptyGraphError(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    Nodes are the integers ``0 .. node_count - 1``. ``edges`` is an ``(m, 2)``
    array with ``u < v`` in each row; adjacency is stored in CSR form with
    every neighbor list sorted ascending.
    """

    node_count: int
    edges: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...]
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0
    _label_index: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[tuple[int, int]] | np.ndarray,
        labels: Iterable[str] | None = None,
    ) -> "Graph":
        """Build a graph from index pairs; self-loops and duplicates are dropped."""
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= node_count):
            raise GraphError("edge endpoint out of range")
        loops = arr[:, 0] == arr[:, 1]
        arr = np.sort(arr[~loops], axis=1)
        before = len(arr)
        if len(arr):
            # keep first occurrences in input order so serialization round-trips
            _, first = np.unique(arr, axis=0, return_index=True)
            arr = arr[np.sort(first)]
        if labels is None:
            labels = [str(i) for i in range(node_count)]
        labels = tuple(labels)
        if len(labels) != node_count or len(set(labels)) != node_count:
            raise GraphError("labels must be unique and match node_count")

        src = np.concatenate([arr[:, 0], arr[:, 1]])
        dst = np.concatenate([arr[:, 1], arr[:, 0]])
        order = np.lexsort((dst, src))
        indices = dst[order]
        indptr = np.zeros(node_count + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=node_count), out=indptr[1:])
        arr.setflags(write=False)
        indices.setflags(write=False)
        indptr.setflags(write=False)
        return cls(
            node_count=node_count,
            edges=arr,
            indptr=indptr,
            indices=indices,
            labels=labels,
            dropped_self_loops=int(loops.sum()),
            dropped_duplicates=before - len(arr),
            _label_index={lab: i for i, lab in enumerate(labels)},
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        self._check(v)
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise GraphError(f"unknown node label {label!r}") from None

    def relabel(self, perm: np.ndarray) -> "Graph":
        """Return the isomorphic graph in which node ``i`` becomes ``perm[i]``."""
        perm = np.asarray(perm)
        labels = [""] * self.node_count
        for i, p in enumerate(perm):
            labels[p] = self.labels[i]
        return Graph.from_edges(self.node_count, perm[self.edges], labels)

    def _check(self, v: int) -> None:
        if not 0 <= v < self.node_count:
            raise IndexError(f"node index {v} out of range [0, {self.node_count})")

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"


def load_edge_list(source: str | TextIO) -> Graph:
    """Parse a whitespace-separated edge list.

    Tokens are interned to dense indices in first-seen order. Lines starting
    with ``#`` and blank lines are skipped; extra tokens beyond the first two
    (weights, timestamps) are ignored.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    index: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    loops = 0
    for lineno, line in enumerate(source, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        toks = s.split()
        if len(toks) < 2:
            raise EdgeListParseError(lineno, line.rstrip("\n"))
        a, b = toks[0], toks[1]
        if a == b:
            loops += 1
            continue
        u = index.setdefault(a, len(index))
        v = index.setdefault(b, len(index))
        pairs.append((u, v))
    if not index:
        raise EmptyGraphError("edge list contains no edges")
    g = Graph.from_edges(len(index), pairs, labels=list(index))
    g = Graph(**{**g.__dict__, "dropped_self_loops": loops})
    if loops or g.dropped_duplicates:
        log.info("dropped %d self-loops and %d duplicate edges", loops, g.dropped_duplicates)
    return g


def to_edge_list(g: Graph) -> str:
    """Serialize in edge-list form; edges are written in first-seen order of their endpoints."""
    return "".join(f"{g.labels[u]} {g.labels[v]}\n" for u, v in g.edges)


def degree(g: Graph, v: int) -> int:
    g._check(v)
    return int(g.indptr[v + 1] - g.indptr[v])


class ThresholdConvention(enum.Enum):
    MEAN_OVER_MEAN_SQUARE = "mean_over_mean_square"  # <k>/<k^2>
    HMF = "hmf"  # <k>/(<k^2> - <k>)


@dataclass(frozen=True)
class GraphStats:
    node_count: int
    edge_count: int
    max_degree: int
    avg_degree: float
    beta_th: float


def graph_stats(
    g: Graph, threshold_convention: ThresholdConvention = ThresholdConvention.MEAN_OVER_MEAN_SQUARE
) -> GraphStats:
    if g.node_count == 0:
        raise EmptyGraphError("graph has no nodes")
    k = g.degrees.astype(float)
    k1, k2 = k.mean(), (k**2).mean()
    if k1 == 0:
        raise GraphError("epidemic threshold undefined for a graph without edges")
    if threshold_convention is ThresholdConvention.MEAN_OVER_MEAN_SQUARE:
        beta_th = k1 / k2
    else:
        denom = k2 - k1
        if denom <= 0:
            raise GraphError("epidemic threshold undefined: <k^2> <= <k>")
        beta_th = k1 / denom
    return GraphStats(
        node_count=g.node_count,
        edge_count=g.edge_count,
        max_degree=int(k.max()),
        avg_degree=2 * g.edge_count / g.node_count,
        beta_th=float(beta_th),
    )


def triangle_counts(g: Graph) -> np.ndarray:
    nbrs = [set(g.indices[g.indptr[v] : g.indptr[v + 1]].tolist()) for v in range(g.node_count)]
    tri = np.zeros(g.node_count, dtype=np.int64)
    for u, v in g.edges:
        common = len(nbrs[u] & nbrs[v])
        tri[u] += common
        tri[v] += common
    # each triangle at v is seen once from each of its two incident edges at v
    return tri // 2


def clustering_coefficients(g: Graph) -> np.ndarray:
    k = g.degrees
    tri = triangle_counts(g)
    out = np.zeros(g.node_count)
    ok = k >= 2
    out[ok] = 2.0 * tri[ok] / (k[ok] * (k[ok] - 1))
    return out


def clustering_coefficient(g: Graph, v: int) -> float:
    g._check(v)
    nb = g.neighbors(v)
    k = len(nb)
    if k < 2:
        return 0.0
    nbset = set(nb.tolist())
    links = sum(len(nbset.intersection(g.neighbors(int(w)).tolist())) for w in nb) // 2
    return 2.0 * links / (k * (k - 1))


def connected_components(g: Graph, active_edges: np.ndarray | None = None) -> list[np.ndarray]:
    """Components induced by a subset of edges.

    ``active_edges`` is a boolean mask over ``g.edges`` or an array of edge
    positions; ``None`` means all edges. Only nodes touched by an active edge
    appear in the output, so every component has at least two members.
    Components are returned as sorted index arrays ordered by smallest member.
    """
    if active_edges is None:
        e = g.edges
    else:
        active_edges = np.asarray(active_edges)
        e = g.edges[active_edges]
    if len(e) == 0:
        return []
    n = g.node_count
    adj = coo_matrix((np.ones(len(e), dtype=np.int8), (e[:, 0], e[:, 1])), shape=(n, n))
    _, lab = _cc(adj, directed=False)
    touched = np.zeros(n, dtype=bool)
    touched[e.ravel()] = True
    nodes = np.flatnonzero(touched)
    groups: dict[int, list[int]] = {}
    for v in nodes.tolist():
        groups.setdefault(int(lab[v]), []).append(v)
    return [np.array(c, dtype=np.int64) for c in sorted(groups.values(), key=lambda c: c[0])]


_DENSE_ER_NODES = 4000


def gen_er(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) graph, deterministic for a given seed."""
    if n <= 0:
        raise GraphError("n must be positive")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    if n <= _DENSE_ER_NODES:
        iu, ju = np.triu_indices(n, k=1)
        keep = rng.random(len(iu)) < p
        return Graph.from_edges(n, np.column_stack([iu[keep], ju[keep]]))
    # sparse route: draw the edge count, then that many distinct pair indices
    pairs = n * (n - 1) // 2
    k = np.sort(rng.choice(pairs, size=rng.binomial(pairs, p), replace=False))
    rows = np.arange(n, dtype=np.int64)
    offset = rows * (2 * n - rows - 1) // 2
    i = np.searchsorted(offset, k, side="right") - 1
    j = k - offset[i] + i + 1
    return Graph.from_edges(n, np.column_stack([i, j]))


def gen_star(leaves: int) -> Graph:
    """Star with center 0 and ``leaves`` leaves."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def gen_path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def gen_ba(n: int, m: int, seed: int) -> Graph:
    """Barabasi-Albert preferential attachment graph, used for scale tests."""
    if n <= m or m < 1:
        raise GraphError("need n > m >= 1")
    rng = np.random.default_rng(seed)
    targets = list(range(m))
    repeated: list[int] = []
    edges: list[tuple[int, int]] = []
    for src in range(m, n):
        for t in set(targets):
            edges.append((src, t))
        repeated.extend(targets)
        repeated.extend([src] * m)
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(repeated[int(rng.integers(len(repeated)))])
        targets = list(chosen)
    return Graph.from_edges(n, edges)

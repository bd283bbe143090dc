"""Naive reference implementations for tests.

Everything here is written for obviousness, not speed, and deliberately
avoids the production code paths it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class OracleBudget:
    max_edges: int = 22
    max_nodes: int = 30


class OverBudget(ValueError):
    pass


def _adjacency(n: int, edges: list[tuple[int, int]]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _edges_of(g) -> list[tuple[int, int]]:
    return [(int(u), int(v)) for u, v in g.edges]


def _reachable(n: int, edges: list[tuple[int, int]], source: int) -> set[int]:
    adj = _adjacency(n, edges)
    seen = {source}
    stack = [source]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def oracle_sir_expectation(g, beta: float, source: int, budget: OracleBudget = OracleBudget()) -> float:
    """Sum over every edge subset of its probability times the source's reachable-set size."""
    edges = _edges_of(g)
    m = len(edges)
    if m > budget.max_edges:
        raise OverBudget(f"{m} edges exceeds oracle budget of {budget.max_edges}")
    total = 0.0
    for mask in range(2**m):
        chosen = [edges[i] for i in range(m) if mask >> i & 1]
        a = len(chosen)
        p = beta**a * (1 - beta) ** (m - a)
        total += p * len(_reachable(g.node_count, chosen, source))
    return total


def oracle_cluster_probability(g, beta: float, u: int, budget: OracleBudget = OracleBudget()) -> float:
    """Probability that ``u`` has at least one other node in its percolation cluster."""
    edges = _edges_of(g)
    m = len(edges)
    if m > budget.max_edges:
        raise OverBudget(f"{m} edges exceeds oracle budget of {budget.max_edges}")
    total = 0.0
    for mask in range(2**m):
        chosen = [edges[i] for i in range(m) if mask >> i & 1]
        if any(u in e for e in chosen):
            a = len(chosen)
            total += beta**a * (1 - beta) ** (m - a)
    return total


def oracle_coreness(g, v: int, budget: OracleBudget = OracleBudget()) -> int:
    """Largest c such that ``v`` survives repeated deletion of nodes with degree < c."""
    if g.node_count > budget.max_nodes:
        raise OverBudget(f"{g.node_count} nodes exceeds oracle budget of {budget.max_nodes}")
    adj = _adjacency(g.node_count, _edges_of(g))
    for c in range(len(adj[v]), 0, -1):
        alive = set(adj)
        changed = True
        while changed:
            changed = False
            for x in list(alive):
                if len(adj[x] & alive) < c:
                    alive.discard(x)
                    changed = True
        if v in alive:
            return c
    return 0


def oracle_tau(a: list[float], b: list[float]) -> float:
    if len(a) != len(b):
        raise ValueError("sequences differ in length")
    n = len(a)
    if n < 2:
        raise ValueError("need at least two items")

    def sign(x):
        return (x > 0) - (x < 0)

    s = 0
    for i in range(n):
        for j in range(i + 1, n):
            s += sign((a[i] - a[j]) * (b[i] - b[j]))
    return 2 * s / (n * (n - 1))


def connected_graph_corpus(max_edges: int) -> list[tuple[int, list[tuple[int, int]]]]:
    """All connected simple graphs with 1..max_edges edges, one per isomorphism class.

    Returned as ``(node_count, edges)`` pairs, grown edge by edge from a
    single edge and deduplicated with networkx isomorphism tests.
    """
    import networkx as nx

    level = [nx.Graph([(0, 1)])]
    out = list(level)
    for _ in range(max_edges - 1):
        buckets: dict[str, list] = {}
        for h in level:
            n = h.number_of_nodes()
            cands = [(u, v) for u, v in combinations(range(n), 2) if not h.has_edge(u, v)]
            cands += [(u, n) for u in range(n)]
            for e in cands:
                h2 = h.copy()
                h2.add_edge(*e)
                key = nx.weisfeiler_lehman_graph_hash(h2)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h2, o) for o in bucket):
                    bucket.append(h2)
        level = [h for b in buckets.values() for h in b]
        out.extend(level)
    return [(h.number_of_nodes(), sorted(tuple(sorted(e)) for e in h.edges())) for h in out]

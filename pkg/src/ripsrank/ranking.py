"""Score-ordered node rankings with competition ranks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TextIO

import numpy as np

from ripsrank.graph import Graph


@dataclass(frozen=True, eq=False)
class Ranking:
    """Nodes ordered by non-increasing score.

    ``order[i]`` is the node at position ``i``; ``scores`` and ``ranks`` are
    indexed by node. Tied scores share a rank (1 + number of strictly larger
    scores), while ``order`` still breaks ties deterministically.
    """

    order: np.ndarray
    scores: np.ndarray
    ranks: np.ndarray

    @property
    def n(self) -> int:
        return len(self.order)

    def entries(self) -> list[tuple[int, float, int]]:
        return [(int(v), float(self.scores[v]), int(self.ranks[v])) for v in self.order]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ranking):
            return NotImplemented
        return (
            np.array_equal(self.order, other.order)
            and np.array_equal(self.scores, other.scores)
            and np.array_equal(self.ranks, other.ranks)
        )


def competition_ranks(scores: np.ndarray) -> np.ndarray:
    """1 + number of strictly greater scores, for every entry."""
    scores = np.asarray(scores, dtype=float)
    asc = np.sort(scores)
    return len(scores) - np.searchsorted(asc, scores, side="right") + 1


def rank_scores(scores: np.ndarray, g: Graph) -> Ranking:
    """Sort nodes by score descending, then degree descending, then index ascending."""
    scores = np.asarray(scores, dtype=float)
    if scores.shape != (g.node_count,):
        raise ValueError(f"expected {g.node_count} scores, got shape {scores.shape}")
    if np.isnan(scores).any():
        raise ValueError("scores contain NaN")
    idx = np.arange(g.node_count)
    order = np.lexsort((idx, -g.degrees, -scores))
    return Ranking(order=order, scores=scores, ranks=competition_ranks(scores))


def write_ranking_tsv(r: Ranking, g: Graph, out: TextIO) -> None:
    out.write("rank\tnode\tscore\n")
    for v, score, rank in r.entries():
        out.write(f"{rank}\t{g.labels[v]}\t{score:.6f}\n")


def read_ranking_tsv(src: TextIO) -> list[tuple[int, str, float]]:
    """Read ``(rank, label, score)`` rows of a ranking file, preserving file order."""
    header = src.readline().rstrip("\n").split("\t")
    if header != ["rank", "node", "score"]:
        raise ValueError(f"not a ranking file, header was {header!r}")
    rows = []
    for lineno, line in enumerate(src, start=2):
        if not line.strip():
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 columns")
        rows.append((int(parts[0]), parts[1], float(parts[2])))
    return rows

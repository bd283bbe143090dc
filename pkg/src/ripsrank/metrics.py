"""Ranking evaluation: Kendall tau, monotonicity and rank distributions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ripsrank.ranking import Ranking

# rows of the pairwise sign matrix processed per chunk
_CHUNK = 512


@dataclass(frozen=True)
class EvalReport:
    kendall_tau: float
    monotonicity: float
    rank_histogram: dict[int, float] = field(default_factory=dict)
    n: int = 0

    def to_text(self) -> str:
        lines = [f"tau: {self.kendall_tau:.6f}", f"monotonicity: {self.monotonicity:.6f}", f"n: {self.n}", "histogram:"]
        lines += [f"  {r}: {f:.6f}" for r, f in sorted(self.rank_histogram.items())]
        return "\n".join(lines) + "\n"


def _ranks(r: Ranking | np.ndarray) -> np.ndarray:
    return np.asarray(r.ranks if isinstance(r, Ranking) else r)


def tau_from_ranks(a: np.ndarray, b: np.ndarray) -> float:
    """Tau-a over two rank vectors indexed by the same items."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = len(a)
    if len(b) != n:
        raise ValueError("rank vectors differ in length")
    if n < 2:
        raise ValueError("kendall tau needs at least two items")
    s = 0
    for lo in range(0, n, _CHUNK):
        hi = min(n, lo + _CHUNK)
        da = np.sign(a[lo:hi, None] - a[None, :])
        db = np.sign(b[lo:hi, None] - b[None, :])
        s += int((da * db).sum())
    # the full matrix counts every unordered pair twice
    return s / (n * (n - 1))


def kendall_tau(reference: Ranking, candidate: Ranking) -> float:
    """Kendall tau between two rankings of the same node set, on competition ranks.

    ``2 / (n (n-1)) * sum_{i<j} sign((ref_i - ref_j) * (cand_i - cand_j))``;
    pairs tied in either ranking contribute zero.
    """
    if reference.n != candidate.n:
        raise ValueError(f"rankings cover different node counts ({reference.n} vs {candidate.n})")
    return tau_from_ranks(reference.ranks, candidate.ranks)


def monotonicity(r: Ranking | np.ndarray) -> float:
    """``(1 - sum_r n_r (n_r - 1) / (n (n - 1)))**2`` over tie groups of size ``n_r``."""
    ranks = _ranks(r)
    n = len(ranks)
    if n < 2:
        raise ValueError("monotonicity needs at least two nodes")
    _, counts = np.unique(ranks, return_counts=True)
    tied = float((counts * (counts - 1)).sum())
    return (1.0 - tied / (n * (n - 1))) ** 2


def rank_distribution(r: Ranking | np.ndarray) -> dict[int, float]:
    ranks = _ranks(r)
    n = len(ranks)
    return {int(k): c / n for k, c in sorted(Counter(ranks.tolist()).items())}


def evaluate(reference: Ranking, candidate: Ranking) -> EvalReport:
    """Compare ``candidate`` to ``reference``; monotonicity and histogram describe the candidate."""
    return EvalReport(
        kendall_tau=kendall_tau(reference, candidate),
        monotonicity=monotonicity(candidate),
        rank_histogram=rank_distribution(candidate),
        n=candidate.n,
    )

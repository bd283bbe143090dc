"""Dynamics-sensitive influential node ranking by randomized percolation sampling."""

from ripsrank.graph import Graph, GraphStats, load_edge_list, graph_stats
from ripsrank.ranking import Ranking, rank_scores
from ripsrank.rips import RipsConfig, InfluenceWeights, rips_weights, rips_rank, sample_size_bound
from ripsrank.dynamics import SirConfig, GroundTruth, ground_truth, ground_truth_ranking, sir_run
from ripsrank.metrics import EvalReport, evaluate, kendall_tau, monotonicity, rank_distribution

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphStats",
    "load_edge_list",
    "graph_stats",
    "Ranking",
    "rank_scores",
    "RipsConfig",
    "InfluenceWeights",
    "rips_weights",
    "rips_rank",
    "sample_size_bound",
    "SirConfig",
    "GroundTruth",
    "ground_truth",
    "ground_truth_ranking",
    "sir_run",
    "EvalReport",
    "evaluate",
    "kendall_tau",
    "monotonicity",
    "rank_distribution",
]

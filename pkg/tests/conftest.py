import os
from pathlib import Path

import numpy as np
import pytest

from ripsrank.graph import Graph, gen_complete, gen_cycle, gen_path, gen_star
from ripsrank.oracle import connected_graph_corpus

DATA = Path(__file__).resolve().parents[1] / "src" / "ripsrank" / "data"
DOLPHINS = Path(os.environ.get("RIPSRANK_DOLPHINS", DATA / "dolphins.txt"))


@pytest.fixture(scope="session")
def corpus() -> list[Graph]:
    """Every connected graph with at most 8 edges, up to isomorphism."""
    return [Graph.from_edges(n, e) for n, e in connected_graph_corpus(8)]


@pytest.fixture(scope="session")
def small_corpus(corpus) -> list[Graph]:
    """Connected graphs with at most 5 edges."""
    return [g for g in corpus if g.edge_count <= 5]


@pytest.fixture
def triangle() -> Graph:
    return gen_complete(3)


@pytest.fixture
def star3() -> Graph:
    return gen_star(3)


@pytest.fixture
def path3() -> Graph:
    return gen_path(3)


@pytest.fixture
def triangle_pendant() -> Graph:
    # triangle 0-1-2 with pendant 3 attached to 0
    return Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


@pytest.fixture(scope="session")
def dolphins() -> Graph:
    from ripsrank.graph import load_edge_list

    if not DOLPHINS.exists():
        pytest.skip("dolphins dataset not bundled")
    return load_edge_list(DOLPHINS.read_text())


def binom_sigma(p: float, n: int) -> float:
    return float(np.sqrt(max(p * (1 - p), 0.0) / n))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

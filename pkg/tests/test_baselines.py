import numpy as np
import pytest

from ripsrank.baselines import (
    BASELINES,
    baseline,
    cluster_rank_scores,
    cnc,
    cnc_plus_scores,
    degree_centrality,
    h_index_scores,
    k_shell,
    ks_if_scores,
    mdd,
    mixed_degree_shells,
)
from ripsrank.graph import Graph, gen_complete, gen_cycle, gen_er, gen_path, gen_star
from ripsrank.oracle import oracle_coreness


class TestKShell:
    def test_triangle(self, triangle):
        sd = k_shell(triangle)
        assert sd.coreness.tolist() == [2, 2, 2]
        assert sd.sweep.tolist() == [1, 1, 1] and sd.sweeps.tolist() == [1, 1, 1]

    def test_star(self, star3):
        sd = k_shell(star3)
        assert sd.coreness.tolist() == [1, 1, 1, 1]
        # leaves go in the first sweep at threshold 1, the center in the second
        assert sd.sweep.tolist() == [2, 1, 1, 1]
        assert sd.sweeps.tolist() == [2, 2, 2, 2]

    def test_triangle_pendant(self, triangle_pendant):
        assert k_shell(triangle_pendant).coreness.tolist() == [2, 2, 2, 1]

    def test_isolated_nodes_are_shell_zero(self):
        g = Graph.from_edges(4, [(0, 1)])
        assert k_shell(g).coreness.tolist() == [1, 1, 0, 0]

    def test_path_sweeps(self):
        sd = k_shell(gen_path(5))
        assert sd.coreness.tolist() == [1] * 5
        assert sd.sweep.tolist() == [1, 2, 3, 2, 1]
        assert (sd.sweeps == 3).all()

    def test_matches_definition_oracle(self):
        for seed in range(200):
            n = 5 + seed % 26
            g = gen_er(n, min(0.9, 3.5 / n + 0.02 * (seed % 7)), seed)
            core = k_shell(g).coreness
            for v in range(n):
                assert core[v] == oracle_coreness(g, v), (seed, v)

    def test_invariants(self):
        for seed in range(30):
            g = gen_er(25, 0.2, seed)
            sd = k_shell(g)
            assert (sd.coreness <= g.degrees).all()
            assert ((1 <= sd.sweep) & (sd.sweep <= sd.sweeps)).all()
            for c in range(1, sd.coreness.max() + 2):
                # nodes of coreness < c cannot form a subgraph of min degree >= c
                low = np.flatnonzero(sd.coreness < c)
                if len(low) == 0:
                    continue
                mask = np.isin(g.edges, low).all(axis=1)
                sub_deg = np.bincount(g.edges[mask].ravel(), minlength=g.node_count)[low]
                assert sub_deg.min() < c


class TestMDD:
    def test_lambda_zero_is_k_shell(self):
        for seed in range(20):
            g = gen_er(30, 0.15, seed)
            assert np.array_equal(mixed_degree_shells(g, 0.0), k_shell(g).coreness.astype(float))

    @pytest.mark.parametrize("lam", [0.0, 0.3, 0.7, 1.0])
    def test_triangle_tied(self, triangle, lam):
        assert (mdd(triangle, lam).ranks == 1).all()

    def test_triangle_pendant(self, triangle_pendant):
        s = mixed_degree_shells(triangle_pendant, 0.5)
        # pendant removed at level 1; then b, c at 2 and a (k_m = 0 + 0.5*3 = 1.5) at the same level
        assert s.tolist() == [2.0, 2.0, 2.0, 1.0]

    def test_lambda_range(self, triangle):
        with pytest.raises(ValueError):
            mixed_degree_shells(triangle, 1.5)


class TestCnc:
    def test_triangle(self, triangle):
        assert cnc(triangle).tolist() == [4, 4, 4]
        assert cnc_plus_scores(triangle).tolist() == [8, 8, 8]

    def test_star(self, star3):
        assert cnc(star3).tolist() == [3, 1, 1, 1]
        assert cnc_plus_scores(star3).tolist() == [3, 3, 3, 3]

    def test_ranking_ties_follow_contract(self, star3):
        r = baseline("cnc+", star3)
        assert (r.ranks == 1).all()
        # all tied: degree breaks the order
        assert r.order.tolist() == [0, 1, 2, 3]


class TestKsIf:
    def test_triangle(self, triangle):
        assert ks_if_scores(triangle).tolist() == [24.0, 24.0, 24.0]

    def test_star(self, star3):
        # delta(center) = 1 * (1 + 2/2) = 2, delta(leaf) = 1 * (1 + 1/2) = 1.5
        s = ks_if_scores(star3)
        assert s.tolist() == pytest.approx([2 * 3 + 3 * 1.5, 1.5 + 2 * 3, 1.5 + 6, 1.5 + 6])

    def test_regular_tied(self):
        for g in (gen_cycle(8), gen_complete(5)):
            s = ks_if_scores(g)
            assert np.ptp(s) == 0


class TestHIndex:
    def test_triangle(self, triangle):
        assert h_index_scores(triangle).tolist() == [2, 2, 2]

    def test_star(self, star3):
        assert h_index_scores(star3).tolist() == [1, 1, 1, 1]

    def test_sorted_threshold(self):
        # node 0 has neighbors 1..5 with degrees 5, 4, 3, 2, 1 (padding leaves give the extra degree)
        edges = [(0, i) for i in range(1, 6)]
        nxt = 6
        for node, extra in ((1, 4), (2, 3), (3, 2), (4, 1)):
            for _ in range(extra):
                edges.append((node, nxt))
                nxt += 1
        g = Graph.from_edges(nxt, edges)
        assert g.degrees[1:6].tolist() == [5, 4, 3, 2, 1]
        assert h_index_scores(g)[0] == 3

    def test_bounds(self):
        for seed in range(30):
            g = gen_er(30, 0.12, seed)
            h = h_index_scores(g)
            deg = g.degrees
            assert (h <= deg).all()
            for v in range(g.node_count):
                nb = g.neighbors(v)
                if len(nb):
                    assert h[v] <= deg[nb].max()


class TestClusterRank:
    def test_star_center(self, star3):
        assert cluster_rank_scores(star3)[0] == pytest.approx(6.0)

    def test_triangle(self, triangle):
        assert cluster_rank_scores(triangle).tolist() == pytest.approx([0.6] * 3)

    def test_isolated_edge(self):
        assert cluster_rank_scores(gen_path(2)).tolist() == pytest.approx([2.0, 2.0])


def test_degree_centrality(star3):
    r = degree_centrality(star3)
    assert r.order[0] == 0 and r.ranks.tolist() == [1, 2, 2, 2]
    assert (degree_centrality(gen_cycle(5)).ranks == 1).all()


@pytest.mark.parametrize("name", list(BASELINES))
def test_permutation_equivariance(name):
    g = gen_er(25, 0.15, 3)
    perm = np.random.default_rng(1).permutation(g.node_count)
    h = g.relabel(perm)
    a, b = baseline(name, g), baseline(name, h)
    assert np.allclose(a.scores, b.scores[perm])
    assert np.array_equal(a.ranks, b.ranks[perm])
    # deterministic
    assert baseline(name, g) == a


def test_unknown_baseline(triangle):
    with pytest.raises(ValueError, match="unknown baseline"):
        baseline("betweenness", triangle)

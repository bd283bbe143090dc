import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ripsrank.graph import Graph
from ripsrank.metrics import evaluate, kendall_tau, monotonicity, rank_distribution, tau_from_ranks
from ripsrank.oracle import oracle_tau
from ripsrank.ranking import Ranking, competition_ranks, rank_scores


def ranking_from_ranks(ranks) -> Ranking:
    ranks = np.asarray(ranks)
    return Ranking(order=np.argsort(ranks, kind="stable"), scores=-ranks.astype(float), ranks=ranks)


class TestKendallTau:
    def test_identical(self):
        r = ranking_from_ranks([1, 2, 3, 4])
        assert kendall_tau(r, r) == 1.0

    def test_reversed(self):
        assert kendall_tau(ranking_from_ranks([1, 2, 3, 4]), ranking_from_ranks([4, 3, 2, 1])) == -1.0

    def test_one_swap(self):
        assert kendall_tau(ranking_from_ranks([1, 2, 3]), ranking_from_ranks([1, 3, 2])) == pytest.approx(1 / 3)

    def test_ties_contribute_zero(self):
        # pairs (0,1) tied in candidate: only 2 of 3 pairs count
        assert kendall_tau(ranking_from_ranks([1, 2, 3]), ranking_from_ranks([1, 1, 3])) == pytest.approx(2 / 3)

    def test_errors(self):
        with pytest.raises(ValueError):
            kendall_tau(ranking_from_ranks([1, 2]), ranking_from_ranks([1, 2, 3]))
        with pytest.raises(ValueError):
            kendall_tau(ranking_from_ranks([1]), ranking_from_ranks([1]))

    def test_matches_oracle_on_random_pairs(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            n = int(rng.integers(2, 13))
            a = rng.permutation(n) + 1
            b = rng.permutation(n) + 1
            assert abs(tau_from_ranks(a, b) - oracle_tau(a.tolist(), b.tolist())) <= 1e-12

    def test_large_input_chunks_agree(self):
        rng = np.random.default_rng(1)
        a = competition_ranks(rng.integers(0, 50, 1500).astype(float))
        b = competition_ranks(rng.integers(0, 50, 1500).astype(float))
        sub = slice(0, 300)
        assert tau_from_ranks(a[sub], b[sub]) == pytest.approx(oracle_tau(a[sub].tolist(), b[sub].tolist()), abs=1e-12)
        assert -1 <= tau_from_ranks(a, b) <= 1

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=2, max_size=25), st.randoms())
    def test_symmetry_and_relabeling(self, pairs, rnd):
        a = competition_ranks(np.array([-p[0] for p in pairs], dtype=float))
        b = competition_ranks(np.array([-p[1] for p in pairs], dtype=float))
        t = tau_from_ranks(a, b)
        assert t == pytest.approx(tau_from_ranks(b, a), abs=1e-12)
        perm = list(range(len(pairs)))
        rnd.shuffle(perm)
        assert t == pytest.approx(tau_from_ranks(a[perm], b[perm]), abs=1e-12)
        assert t == pytest.approx(oracle_tau(a.tolist(), b.tolist()), abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.permutations(list(range(1, 11))), st.integers(0, 8))
    def test_adding_ties_moves_toward_zero(self, perm, i):
        ref = np.array(perm)
        cand = np.arange(1, 11)
        tied = cand.copy()
        tied[i + 1] = tied[i]
        # the contribution of each affected pair goes from +-1 to 0
        full = np.sign(ref[:, None] - ref[None, :]) * np.sign(cand[:, None] - cand[None, :])
        part = np.sign(ref[:, None] - ref[None, :]) * np.sign(tied[:, None] - tied[None, :])
        assert ((part == 0) | (part == full)).all()
        assert abs(tau_from_ranks(ref, tied) - tau_from_ranks(ref, cand)) <= 2 / 90 + 1e-12


class TestMonotonicity:
    def test_unique(self):
        assert monotonicity(ranking_from_ranks([1, 2, 3, 4])) == 1.0

    def test_all_tied(self):
        assert monotonicity(ranking_from_ranks([1, 1, 1])) == 0.0

    def test_tie_pattern(self):
        # groups {2, 1, 1} over 4 nodes: (1 - 2/12)^2
        assert monotonicity(ranking_from_ranks([1, 1, 3, 4])) == pytest.approx(25 / 36)

    def test_relabel_invariance(self):
        assert monotonicity(np.array([1, 1, 3, 4, 4, 4])) == monotonicity(np.array([7, 7, 2, 9, 9, 9]))

    def test_too_small(self):
        with pytest.raises(ValueError):
            monotonicity(np.array([1]))


class TestRankDistribution:
    def test_unique(self):
        assert rank_distribution(np.array([1, 2, 3, 4])) == {1: 0.25, 2: 0.25, 3: 0.25, 4: 0.25}

    def test_all_tied(self):
        assert rank_distribution(np.array([1, 1, 1])) == {1: 1.0}

    def test_counts(self):
        d = rank_distribution(np.array([1, 1, 3]))
        assert d == pytest.approx({1: 2 / 3, 3: 1 / 3})
        assert sum(d.values()) == pytest.approx(1.0, abs=1e-9)


class TestRanking:
    def test_competition_ranks(self):
        assert competition_ranks(np.array([3.2, 1.1, 3.2, 0.5])).tolist() == [1, 3, 1, 4]

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(0, 4), min_size=1, max_size=30))
    def test_contract(self, vals):
        g = Graph.from_edges(len(vals), [])
        r = rank_scores(np.array(vals, dtype=float), g)
        s = r.scores[r.order]
        assert (np.diff(s) <= 0).all()
        assert sorted(r.order.tolist()) == list(range(len(vals)))
        for v in range(len(vals)):
            assert r.ranks[v] == 1 + sum(x > vals[v] for x in vals)

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            rank_scores(np.array([np.nan, 1.0]), Graph.from_edges(2, []))


def test_evaluate_report():
    ref = ranking_from_ranks([1, 2, 3, 4])
    cand = ranking_from_ranks([1, 1, 3, 4])
    rep = evaluate(ref, cand)
    assert rep.kendall_tau == pytest.approx(5 / 6)
    assert rep.monotonicity == pytest.approx(25 / 36)
    assert rep.rank_histogram == {1: 0.5, 3: 0.25, 4: 0.25}
    assert rep.n == 4
    text = rep.to_text()
    assert text.startswith("tau: 0.833333\nmonotonicity: 0.694444\nn: 4\nhistogram:\n")

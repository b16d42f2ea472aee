import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rgcount.analytic import falling_factorial
from rgcount.estimators import (
    ConfigurationError,
    SampleConfig,
    embed_clique_batch,
    embed_clique_once,
    embed_cover_once,
    clique_value,
    cover_value,
    enumerate_paths,
    estimate,
    exact_expectation,
    required_samples,
    resolve_rho,
    run_samples,
    sample_plan,
)
from rgcount.graph import GenSpec, Graph, generate_gnp, sample_rng
from rgcount.oracles import count_clique_covers_exact, count_cliques_exact
from rgcount.scaled import ZERO


def gnp(n, p, seed):
    return generate_gnp(GenSpec(n, F(p), seed))


class TestCliqueKernel:
    def test_complete_graph_is_deterministic(self):
        for seed in range(5):
            t = embed_clique_once(Graph.complete(5), 3, sample_rng(seed, 0))
            assert t.success and t.factors == (5, 4, 3)
            assert clique_value(t, 3, exact=True).exact == 10

    def test_empty_graph_fails(self):
        t = embed_clique_once(Graph.empty(5), 2, sample_rng(0, 0))
        assert not t.success
        assert t.factors == (5, 0)
        assert clique_value(t, 2) == ZERO

    def test_cycle_edges_always_five(self):
        for i in range(20):
            t = embed_clique_once(Graph.cycle(5), 2, sample_rng(1, i))
            assert clique_value(t, 2, exact=True).exact == 5

    def test_k_larger_than_n(self):
        assert embed_clique_once(Graph.complete(2), 3, sample_rng(0, 0)).raw == 0

    def test_chosen_vertices_form_clique(self):
        g = gnp(15, F(2, 3), 4)
        for i in range(50):
            t = embed_clique_once(g, 4, sample_rng(2, i))
            if t.success:
                assert len(set(t.vertices)) == 4
                assert all(g.has_edge(u, v) for a, u in enumerate(t.vertices) for v in t.vertices[a + 1 :])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 200), st.integers(1, 4), st.integers(0, 10**6))
    def test_factor_product_invariant(self, gseed, k, rseed):
        g = gnp(9, F(1, 2), gseed)
        t = embed_clique_once(g, k, sample_rng(rseed, 0))
        assert math.prod(t.factors) == t.raw
        if t.success:
            assert t.factors[0] == g.n


class TestExhaustivePaths:
    def test_path_probabilities_sum_to_one(self):
        g = gnp(7, F(1, 2), 2)
        assert sum(p for p, _ in enumerate_paths(embed_clique_once, g, 3)) == 1

    @pytest.mark.parametrize("seed", range(8))
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_clique_unbiased(self, seed, k):
        g = gnp(5 + seed % 6, F(1, 2) if seed % 2 else F(3, 4), seed)
        assert exact_expectation(g, k) == count_cliques_exact(g, k)

    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("n,k", [(4, 2), (6, 2), (8, 4), (6, 3)])
    def test_cover_unbiased(self, seed, n, k):
        g = gnp(n, F(3, 4), seed)
        assert exact_expectation(g, k, "covers") == count_clique_covers_exact(g, k)

    def test_cover_examples(self):
        assert exact_expectation(Graph.complete(4), 2, "covers") == 3
        assert exact_expectation(Graph.path(4), 2, "covers") == 1
        assert exact_expectation(Graph.cycle(6), 2, "covers") == 2

    def test_independent_sets_use_complement(self):
        g = gnp(7, F(1, 2), 5)
        assert exact_expectation(g, 3, "independent-sets") == count_cliques_exact(g.complement(), 3)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_support(self, seed):
        g = gnp(7, F(2, 5), seed)
        paths = list(enumerate_paths(embed_clique_once, g, 3))
        assert any(t.success for _, t in paths) == (count_cliques_exact(g, 3) > 0)


class TestCoverKernel:
    def test_k4_matching(self):
        t = embed_cover_once(Graph.complete(4), 2, sample_rng(0, 0))
        assert t.factors == (4, 3, 2, 1)
        assert cover_value(t, 4, 2, exact=True).exact == 3

    def test_k6_triangles(self):
        t = embed_cover_once(Graph.complete(6), 3, sample_rng(3, 1))
        assert cover_value(t, 6, 3, exact=True).exact == 10

    def test_reports_original_labels(self):
        t = embed_cover_once(Graph.complete(6), 2, sample_rng(4, 0))
        assert sorted(t.vertices) == list(range(6))

    def test_failure_is_zero(self):
        t = embed_cover_once(Graph.empty(4), 2, sample_rng(0, 0))
        assert not t.success
        assert cover_value(t, 4, 2) == ZERO

    def test_divisibility(self):
        with pytest.raises(ConfigurationError):
            embed_cover_once(Graph.complete(5), 2, sample_rng(0, 0))


class TestSampleCount:
    @pytest.mark.parametrize(
        "cfg, expected",
        [
            (SampleConfig(0.5, 0.5, 1), 8),
            (SampleConfig(0.1, 0.05, 10), 20000),
            (SampleConfig(0.1, 0.05, 10, "median-of-means"), 24 * 8000),
        ],
    )
    def test_examples(self, cfg, expected):
        assert required_samples(cfg) == expected

    def test_mom_plan(self):
        assert sample_plan(SampleConfig(0.1, 0.05, 10, "median-of-means")) == (24, 8000)

    @settings(max_examples=60, deadline=None)
    @given(
        st.floats(0.01, 0.9),
        st.floats(0.01, 0.9),
        st.floats(1, 50),
        st.floats(1.0, 2.0),
        st.sampled_from(["fixed", "median-of-means"]),
    )
    def test_monotone(self, eps, delta, rho, bump, mode):
        base = required_samples(SampleConfig(eps, delta, rho, mode))
        assert required_samples(SampleConfig(min(eps * bump, 0.99), delta, rho, mode)) <= base
        assert required_samples(SampleConfig(eps, min(delta * bump, 0.99), rho, mode)) <= base
        assert required_samples(SampleConfig(eps, delta, rho * bump, mode)) >= base

    @pytest.mark.parametrize(
        "args", [(0, 0.1), (1, 0.1), (0.1, 0), (0.1, 1.5), (0.1, 0.1, 0.5), (0.1, 0.1, 2, "mean")]
    )
    def test_invalid_config(self, args):
        with pytest.raises(ConfigurationError):
            SampleConfig(*args)

    def test_rho_unset(self):
        with pytest.raises(ConfigurationError):
            required_samples(SampleConfig(0.1, 0.1))
        with pytest.raises(ConfigurationError):
            estimate(Graph.complete(4), 2, "cliques", SampleConfig(0.1, 0.1))

    def test_rho_from_model(self):
        assert resolve_rho(SampleConfig(0.1, 0.1), 4, 2, "cliques", F(1, 2)) == 4 * F(4, 3)
        assert resolve_rho(SampleConfig(0.1, 0.1, 7), 4, 2, "cliques") == 7


class TestEstimate:
    def test_complete_graph_exact(self):
        r = estimate(Graph.complete(6), 3, "cliques", SampleConfig(0.2, 0.2, 1), seed=3, exact=True)
        assert r.estimate.exact == 20
        assert r.variance == ZERO
        assert r.critical_ratio == 1
        assert r.ci_low.exact == r.ci_high.exact == 20

    def test_complement_of_complete_graph(self):
        g = Graph.complete(6).complement()
        r = estimate(g, 3, "independent-sets", SampleConfig(0.2, 0.2, 1), exact=True)
        assert r.estimate.exact == 20

    def test_covers_complete(self):
        r = estimate(Graph.complete(8), 2, "covers", SampleConfig(0.5, 0.5, 1), exact=True)
        assert r.estimate.exact == 105

    def test_covers_divisibility(self):
        with pytest.raises(ConfigurationError):
            estimate(Graph.complete(5), 2, "covers", SampleConfig(0.5, 0.5, 1))

    def test_empty_graph(self):
        r = estimate(Graph.empty(6), 3, "cliques", SampleConfig(0.5, 0.5, 1))
        assert r.estimate == ZERO
        assert r.zeros == r.samples
        assert math.isnan(r.critical_ratio)

    def test_complement_duality_sample_for_sample(self):
        g = gnp(10, F(1, 2), 8)
        a = run_samples(g, 3, "independent-sets", seed=17, count=300)
        b = run_samples(g.complement(), 3, "cliques", seed=17, count=300)
        assert a == b

    def test_deterministic_report(self):
        g = gnp(10, F(1, 2), 1)
        cfg = SampleConfig(0.3, 0.2, 3)
        assert estimate(g, 3, "cliques", cfg, seed=5) == estimate(g, 3, "cliques", cfg, seed=5)

    def test_chunked_samples_match(self):
        g = gnp(10, F(1, 2), 1)
        whole = run_samples(g, 3, "cliques", 9, 40)
        assert whole == run_samples(g, 3, "cliques", 9, 25) + run_samples(g, 3, "cliques", 9, 15, start=25)

    def test_exact_and_log_modes_agree(self):
        g = gnp(10, F(1, 2), 2)
        cfg = SampleConfig(0.3, 0.3, 2)
        a = estimate(g, 3, "cliques", cfg, seed=1, exact=True)
        b = estimate(g, 3, "cliques", cfg, seed=1)
        assert float(a.estimate) == pytest.approx(float(b.estimate), rel=1e-9)
        assert a.critical_ratio == pytest.approx(b.critical_ratio, rel=1e-9)

    def test_median_of_means_runs(self):
        g = gnp(10, F(1, 2), 2)
        r = estimate(g, 2, "cliques", SampleConfig(0.5, 0.2, 1.5, "median-of-means"), seed=1)
        assert r.samples == math.ceil(8 * math.log(5)) * math.ceil(8 * 1.5 / 0.25)
        assert r.ci_low.log <= r.estimate.log <= r.ci_high.log

    def test_large_graph_stays_finite(self):
        g = gnp(200, F(9, 10), 0)
        r = estimate(g, 20, "cliques", SampleConfig(0.9, 0.9, 1), seed=0)
        assert math.isfinite(r.estimate.log10)
        expected = math.log10(math.comb(200, 20)) + 190 * math.log10(0.9)
        assert abs(r.estimate.log10 - expected) < 3

    def test_p4_cover_mean(self):
        r = estimate(Graph.path(4), 2, "covers", SampleConfig(0.2, 0.1, 3), seed=0)
        assert float(r.ci_low) <= 1 <= float(r.ci_high)


class TestBatch:
    def test_complete_graphs(self):
        n = 7
        adj = np.broadcast_to(~np.eye(n, dtype=bool), (50, n, n))
        out = embed_clique_batch(adj, 3, np.random.default_rng(0))
        assert np.all(out == falling_factorial(n, 3))

    def test_empty_graphs(self):
        out = embed_clique_batch(np.zeros((10, 5, 5), dtype=bool), 2, np.random.default_rng(0))
        assert np.all(out == 0)

    def test_support_matches_scalar_kernel(self):
        g = gnp(8, F(1, 2), 3)
        adj = np.broadcast_to(g.to_numpy().astype(bool), (4000, 8, 8))
        out = embed_clique_batch(adj, 3, np.random.default_rng(1))
        scalar_support = {t.raw for _, t in enumerate_paths(embed_clique_once, g, 3)}
        assert set(np.unique(out).astype(int)) <= scalar_support
        assert out.mean() / 6 == pytest.approx(count_cliques_exact(g, 3), rel=0.15)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from degmix import (ModelParams, ParameterError, connection_probability,
                    pareto_quantile, sample_weights, supergraph_weights,
                    torus_distance)
from degmix.rng import stream


class TestModelParams:
    def test_sigma_range_enforced(self):
        p = ModelParams(model="tunable_chung_lu", n=100, tau=2.8, sigma=2.0,
                        target_avg_degree=5)
        with pytest.raises(ParameterError, match="sigma"):
            p.validate(strict_sigma=True)
        with pytest.warns(UserWarning, match="sigma"):
            p.validate(strict_sigma=False)

    def test_classical_sigma_pinned(self):
        p = ModelParams(model="chung_lu", n=10, tau=2.5, sigma=0.5,
                        target_avg_degree=3)
        with pytest.raises(ParameterError, match="fixed"):
            p.validate()
        assert ModelParams(model="chung_lu", n=10, tau=2.5,
                           target_avg_degree=3).effective_sigma == 1.0

    def test_tau_must_exceed_two(self):
        with pytest.raises(ParameterError, match="tau"):
            ModelParams(model="chung_lu", n=10, tau=2.0,
                        target_avg_degree=3).validate()

    def test_rgg_density_exactly_one_of(self):
        with pytest.raises(ParameterError):
            ModelParams(model="rgg", n=10, dim=1).validate()
        with pytest.raises(ParameterError):
            ModelParams(model="rgg", n=10, dim=1, rgg_radius=0.1,
                        target_avg_degree=3).validate()
        ModelParams(model="rgg", n=10, dim=1, rgg_radius=0.1).validate()

    def test_rgg_radius_bounds(self):
        with pytest.raises(ParameterError, match="radius"):
            ModelParams(model="rgg", n=10, dim=1, rgg_radius=0.7).validate()

    def test_radius_from_target(self):
        p = ModelParams(model="rgg", n=10_001, dim=1, target_avg_degree=5.0)
        r = p.resolved_rgg_radius()
        assert (10_000) * 2 * r == pytest.approx(5.0)

    def test_temperature_round_trip(self):
        p = ModelParams.from_temperature(0.7, model="tgirg", n=10, tau=2.8,
                                         sigma=1.0, dim=2, target_avg_degree=3)
        assert p.alpha == pytest.approx(1 / 0.7)
        assert p.temperature == pytest.approx(0.7)
        assert ModelParams.from_temperature(
            0.0, model="girg", n=10, tau=2.8, dim=2,
            target_avg_degree=3).alpha == math.inf


class TestTorusDistance:
    def test_zero(self):
        assert torus_distance([0.3, 0.4], [0.3, 0.4]) == 0.0

    def test_wraparound_1d(self):
        assert torus_distance([0.1], [0.9]) == pytest.approx(0.2)

    def test_max_norm_2d(self):
        assert torus_distance([0.1, 0.5], [0.9, 0.6]) == pytest.approx(0.2)

    def test_dimension_mismatch(self):
        with pytest.raises(ParameterError, match="dimension"):
            torus_distance([0.1], [0.1, 0.2])

    @given(st.lists(st.floats(0, 1, exclude_max=True), min_size=1, max_size=4),
           st.lists(st.floats(0, 1, exclude_max=True), min_size=1, max_size=4))
    @settings(max_examples=100, deadline=None)
    def test_bounded_and_symmetric(self, a, b):
        d = min(len(a), len(b))
        a, b = a[:d], b[:d]
        val = torus_distance(a, b)
        assert 0 <= val <= 0.5
        assert val == torus_distance(b, a)


class TestConnectionProbability:
    def params(self, **kw):
        defaults = dict(model="tgirg", n=1000, tau=2.8, sigma=1.0,
                        alpha=2.0, dim=2, target_avg_degree=5)
        defaults.update(kw)
        return ModelParams(**defaults)

    def test_zero_distance_is_one(self):
        p = self.params(alpha=3.0)
        assert connection_probability(5.0, 7.0, 0.0, p, 0.01, 1000.0) == 1.0
        assert connection_probability(
            5.0, 7.0, 0.0, self.params(alpha=math.inf), 0.01, 1000.0) == 1.0

    def test_girg_kernel_reduction(self):
        # sigma=1, alpha=1 reduces to min(c*w_u*w_v/(W*dist^d), 1)
        p = self.params(alpha=1.0 + 1e-12)
        wu, wv, dist, c, W = 3.0, 4.0, 0.2, 0.7, 500.0
        got = connection_probability(wu, wv, dist, p, c, W)
        assert got == pytest.approx(min(c * wu * wv / (W * dist ** 2), 1.0))

    def test_threshold_radius(self):
        # alpha=inf, c=1, unit weights, W=n: edge iff dist <= n^(-1/d)
        n = 10_000
        p = self.params(alpha=math.inf, dim=2)
        r_crit = n ** (-1 / 2)
        assert connection_probability(1.0, 1.0, r_crit * 0.999, p, 1.0, n) == 1.0
        assert connection_probability(1.0, 1.0, r_crit * 1.001, p, 1.0, n) == 0.0

    def test_non_geometric_drops_distance(self):
        p = self.params(model="tunable_chung_lu", sigma=0.5, alpha=math.inf,
                        dim=1)
        got = connection_probability(4.0, 9.0, None, p, 2.0, 100.0)
        assert got == pytest.approx(min(2.0 * (4 ** 0.5) * 9 / 100.0, 1.0))

    def test_monotone_in_weights(self, rng):
        p = self.params(sigma=1.3, alpha=2.5)
        w = np.sort(rng.uniform(1, 50, 30))
        probs = connection_probability(w, 5.0, 0.05, p, 1.0, 1e4)
        assert np.all(np.diff(probs) >= -1e-15)


class TestWeights:
    def test_quantile_examples(self):
        assert pareto_quantile(0.0, 3.0) == 1.0
        assert pareto_quantile(0.75, 3.0) == pytest.approx(2.0)
        assert pareto_quantile(0.99, 2.5) == pytest.approx(100 ** (2 / 3))

    def test_tau_guard(self):
        with pytest.raises(ParameterError):
            pareto_quantile(0.5, 2.0)

    def test_sample_distribution(self):
        w = sample_weights(20_000, 2.5, stream(42))
        assert w.min() >= 1.0
        # KS against the analytic CDF 1 - w^(1-tau)
        res = stats.kstest(w, lambda x: 1 - x ** (1 - 2.5))
        assert res.pvalue > 0.01


class TestSupergraphWeights:
    def test_identity_at_sigma_one(self, rng):
        w = rng.uniform(1, 10, 50)
        np.testing.assert_array_equal(supergraph_weights(w, 1.0), w)

    def test_sigma_below_one(self):
        np.testing.assert_allclose(supergraph_weights([4.0, 9.0], 0.5),
                                   [2.0, 4.5])

    def test_sigma_three_example(self):
        wp = supergraph_weights([1.0, 1.0, 2.0], 3.0)
        np.testing.assert_allclose(wp, [1.2071, 1.2071, 3.4142], atol=2e-4)
        # domination on the two weight pairs, per the construction's contract
        total = 4.0
        total_p = wp.sum()
        assert wp[2] * wp[0] / total_p >= 2 * 1 / total
        assert wp[0] * wp[1] / total_p >= 1 * 1 / total - 1e-12

    @pytest.mark.parametrize("sigma", [0.0, 0.2, 0.5, 1.0, 1.3, 1.7])
    def test_domination_kernel_inequality(self, sigma, rng):
        # for every pair with w_u >= w_v: p'=1 escape or kernel dominance
        for tau in (2.2, 2.9):
            w = sample_weights(300, tau, rng)
            wp = supergraph_weights(w, sigma)
            total, total_p = w.sum(), wp.sum()
            iu, iv = np.triu_indices(300, k=1)
            hi = np.maximum(w[iu], w[iv])
            lo = np.minimum(w[iu], w[iv])
            tuned = hi * lo ** sigma / total
            product = wp[iu] * wp[iv] / total_p
            ok = (product >= tuned - 1e-12) | (product >= 1.0)
            assert ok.all()

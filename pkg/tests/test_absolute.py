"""Absolute-error risks: enumeration and simulation oracles, kernel paths,
table behavior, and density-distance scalings."""

import math

import numpy as np
import pytest

from multirisk import (
    DensityScaling,
    ModelDims,
    SymmetricPrior,
    avg_l1_table,
    bayes_abs_risk,
    bayes_squared_risk,
    beta_median,
    binomial_weights,
    expected_abs_deviation,
    l2_density_distance,
    mle_abs_risk,
    posterior_median_targets,
)


def enumeration_abs_risk(theta, n, targets_for):
    """Exhaustive L1 risk over all count vectors, for tiny (k, n).

    ``targets_for(j, r)`` maps a coordinate and its count to the estimate.
    """
    from itertools import product

    theta = np.asarray(theta, dtype=float)
    k = theta.size
    total = 0.0
    for counts in product(range(n + 1), repeat=k):
        if sum(counts) != n:
            continue
        logp = math.lgamma(n + 1)
        for j, c in enumerate(counts):
            logp -= math.lgamma(c + 1)
            if theta[j] == 0.0:
                if c > 0:
                    logp = -math.inf
            else:
                logp += c * math.log(theta[j])
        if logp == -math.inf:
            continue
        prob = math.exp(logp)
        total += prob * sum(abs(targets_for(j, c) - theta[j]) for j, c in enumerate(counts))
    return total


class TestMleAbsRisk:
    def test_vertex_is_riskless(self):
        assert mle_abs_risk([1.0, 0.0, 0.0], 10) == 0.0

    def test_single_draw_symmetric(self):
        # each coordinate contributes E|r - 1/2| = 1/2
        assert mle_abs_risk([0.5, 0.5], 1) == pytest.approx(1.0, abs=1e-14)

    def test_against_enumeration(self):
        theta = [0.3, 0.45, 0.25]
        n = 4
        expect = enumeration_abs_risk(theta, n, lambda j, r: r / n)
        assert mle_abs_risk(theta, n) == pytest.approx(expect, rel=1e-12)


class TestBayesAbsRisk:
    def test_vertex_two_outcomes(self):
        # with one draw at a vertex the count vector is deterministic
        expect = abs(beta_median(1.5, 0.5) - 1.0) + beta_median(0.5, 1.5)
        assert bayes_abs_risk([1.0, 0.0], 1) == pytest.approx(expect, rel=1e-12)

    def test_single_draw_enumeration(self):
        theta = [0.35, 0.65]
        med = posterior_median_targets(2, 1)
        expect = enumeration_abs_risk(theta, 1, lambda j, r: med[r])
        assert bayes_abs_risk(theta, 1) == pytest.approx(expect, rel=1e-12)

    def test_small_case_enumeration(self):
        theta = [0.2, 0.5, 0.3]
        n = 5
        med = posterior_median_targets(3, n)
        expect = enumeration_abs_risk(theta, n, lambda j, r: med[r])
        assert bayes_abs_risk(theta, n) == pytest.approx(expect, rel=1e-12)

    def test_against_simulation_oracle(self):
        rng = np.random.default_rng(8)
        for _ in range(3):
            k = int(rng.integers(2, 6))
            n = int(rng.integers(2, 16))
            theta = rng.dirichlet(np.ones(k))
            counts = rng.multinomial(n, theta, size=100_000)
            med = posterior_median_targets(k, n)
            sampled = np.abs(med[counts] - theta[None, :]).sum(axis=1)
            se = sampled.std(ddof=1) / math.sqrt(sampled.size)
            assert abs(bayes_abs_risk(theta, n) - sampled.mean()) <= 3 * se

    def test_median_targets_increase_with_count(self):
        for k, n in [(10, 20), (500, 50)]:
            med = posterior_median_targets(k, n)
            assert med.shape == (n + 1,)
            assert np.all(np.diff(med) > 0.0)
            assert 0.0 < med[0] and med[-1] < 1.0


class TestKernelPaths:
    def test_all_paths_match_log_gamma_weights(self):
        # exercise the direct, mirrored, and fallback branches at n = 1000
        n = 1000
        p = np.array([0.0, 1e-12, 0.01, 0.4, 0.47, 0.5, 0.53, 0.9, 1.0 - 1e-12, 1.0])
        targets = [np.arange(n + 1) / n, posterior_median_targets(50, n)]
        fast = expected_abs_deviation(p, n, targets)
        for j, t in enumerate(targets):
            direct = np.array([binomial_weights(n, pi) @ np.abs(t - pi) for pi in p])
            np.testing.assert_allclose(fast[j], direct, rtol=1e-11, atol=1e-300)

    def test_blocks_and_workers_do_not_change_results(self):
        rng = np.random.default_rng(12)
        p = rng.uniform(0.0, 1.0, size=5000)
        t = [np.arange(21) / 20]
        a = expected_abs_deviation(p, 20, t, workers=1)[0]
        b = expected_abs_deviation(p, 20, t, workers=3)[0]
        np.testing.assert_array_equal(a, b)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            expected_abs_deviation(np.array([0.5, 1.5]), 10, [np.zeros(11)])
        with pytest.raises(ValueError):
            expected_abs_deviation(np.array([0.5]), 10, [np.zeros(5)])


class TestAvgL1Table:
    def test_deterministic(self):
        a = avg_l1_table([5], [10, 20], theta_samples=400, seed=7)
        b = avg_l1_table([5], [10, 20], theta_samples=400, seed=7)
        assert a == b

    def test_mean_risks_decrease_with_sample_size(self):
        cells = avg_l1_table([10], [20, 50, 100, 400], theta_samples=1000, seed=7)
        mle = [c.mle_mean for c in cells]
        bayes = [c.bayes_mean for c in cells]
        assert np.all(np.diff(mle) < 0.0)
        assert np.all(np.diff(bayes) < 0.0)

    def test_cell_matches_direct_average(self):
        from multirisk import sample_uniform_simplex_array

        (cell,) = avg_l1_table([4], [6], theta_samples=200, seed=3)
        thetas = sample_uniform_simplex_array(4, 200, seed=3)
        mle_direct = np.mean([mle_abs_risk(t, 6) for t in thetas])
        bayes_direct = np.mean([bayes_abs_risk(t, 6) for t in thetas])
        assert cell.mle_mean == pytest.approx(mle_direct, rel=1e-12)
        assert cell.bayes_mean == pytest.approx(bayes_direct, rel=1e-12)
        assert cell.samples == 200
        assert cell.mle_std_error > 0.0


class TestDensityDistance:
    def test_riskless_point_gives_zero(self):
        dims = ModelDims(3, 10)
        scaling = DensityScaling(omega_total=1.0, k=3)
        got = l2_density_distance(dims, SymmetricPrior.uniform(), [1, 0, 0], scaling, "mle")
        assert got == 0.0

    def test_cell_volume_cancels_when_omega_equals_k(self):
        dims = ModelDims(4, 12)
        prior = SymmetricPrior.uniform()
        theta = [0.4, 0.3, 0.2, 0.1]
        scaling = DensityScaling(omega_total=4.0, k=4)
        assert l2_density_distance(dims, prior, theta, scaling, "bayes") == pytest.approx(
            math.sqrt(bayes_squared_risk(theta, 12, prior)), rel=1e-14
        )

    def test_center_mass_one_prior(self):
        k, n = 4, 10
        dims = ModelDims(k, n)
        prior = SymmetricPrior.inverse_k()
        theta = np.full(k, 1 / k)
        scaling = DensityScaling(omega_total=1.0, k=k)
        expect = math.sqrt(k * n * (1 - 1 / k) / (n + 1) ** 2)
        got = l2_density_distance(dims, prior, theta, scaling, "bayes")
        assert got == pytest.approx(expect, rel=1e-13)

    def test_validates_estimator_and_dims(self):
        dims = ModelDims(3, 5)
        scaling = DensityScaling(omega_total=1.0, k=3)
        with pytest.raises(ValueError):
            l2_density_distance(dims, SymmetricPrior.uniform(), [0.5, 0.3, 0.2], scaling, "map")
        with pytest.raises(ValueError):
            l2_density_distance(
                dims, SymmetricPrior.uniform(), [0.5, 0.3, 0.2],
                DensityScaling(omega_total=1.0, k=4), "mle",
            )

import math

import numpy as np
import pytest

import oracles
from pagamma import (
    DegenerateInputError,
    DomainError,
    GrowthParams,
    RootBracketError,
    estimate_gamma,
    estimate_gamma_values,
    generate,
    hurwitz_zeta,
    sample_power_law,
)
from pagamma.estimate import log_likelihood, loglog_slope


class TestSamplePowerLaw:
    def test_support_respects_cutoff(self):
        draws = sample_power_law(2.5, 5, 10_000, seed=1)
        assert int(draws.min()) >= 5

    def test_deterministic(self):
        a = sample_power_law(2.2, 1, 5000, seed=42)
        b = sample_power_law(2.2, 1, 5000, seed=42)
        assert np.array_equal(a, b)

    def test_seed_matters(self):
        a = sample_power_law(2.2, 1, 5000, seed=42)
        b = sample_power_law(2.2, 1, 5000, seed=43)
        assert not np.array_equal(a, b)

    def test_ground_state_probability(self):
        n = 10 ** 6
        draws = sample_power_law(3.0, 1, n, seed=2024)
        p_expected = 1.0 / hurwitz_zeta(3.0, 1)
        p_observed = float(np.mean(draws == 1))
        sigma = math.sqrt(p_expected * (1.0 - p_expected) / n)
        assert abs(p_observed - p_expected) < 3.0 * sigma

    def test_second_state_probability(self):
        n = 10 ** 6
        draws = sample_power_law(2.5, 3, n, seed=7)
        p_expected = 3.0 ** -2.5 / hurwitz_zeta(2.5, 3)
        p_observed = float(np.mean(draws == 3))
        sigma = math.sqrt(p_expected * (1.0 - p_expected) / n)
        assert abs(p_observed - p_expected) < 3.0 * sigma

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            sample_power_law(1.0, 1, 10, seed=0)
        with pytest.raises(DomainError):
            sample_power_law(0.5, 1, 10, seed=0)
        with pytest.raises(DomainError):
            sample_power_law(2.5, 0, 10, seed=0)
        with pytest.raises(DomainError):
            sample_power_law(2.5, 1, 0, seed=0)


class TestEstimateGamma:
    def test_synthetic_recovery_default_case(self):
        draws = sample_power_law(2.5, 1, 10 ** 5, seed=777)
        est = estimate_gamma_values(draws, 1)
        assert 2.48 <= est.gamma_hat <= 2.52
        assert est.n_tail == 10 ** 5
        assert est.k_min == 1

    @pytest.mark.parametrize("gamma", [2.2, 2.5, 2.9])
    @pytest.mark.parametrize("k_min", [1, 3, 10])
    def test_consistency_grid(self, gamma, k_min):
        n = 10 ** 5
        draws = sample_power_law(gamma, k_min, n, seed=90_000 + int(gamma * 100) + k_min)
        est = estimate_gamma_values(draws, k_min)
        assert abs(est.gamma_hat - gamma) <= 5.0 * (gamma - 1.0) / math.sqrt(n)

    def test_two_point_sample_matches_grid_oracle(self):
        est = estimate_gamma_values(np.array([1, 2]), 1)
        grid_root = oracles.grid_mle(np.array([1, 2]), 1)
        assert abs(est.gamma_hat - grid_root) <= 1e-3

    def test_degenerate_input(self):
        with pytest.raises(DegenerateInputError):
            estimate_gamma_values(np.full(100, 7), 7)
        with pytest.raises(DegenerateInputError):
            estimate_gamma_values(np.array([3]), 1)

    def test_near_degenerate_escapes_bracket(self):
        degrees = np.full(5000, 10, dtype=np.int64)
        degrees[0] = 11
        with pytest.raises(RootBracketError):
            estimate_gamma_values(degrees, 10)

    def test_permutation_invariance(self):
        draws = sample_power_law(2.4, 2, 20_000, seed=5)
        shuffled = np.random.default_rng(0).permutation(draws)
        a = estimate_gamma_values(draws, 2)
        b = estimate_gamma_values(shuffled, 2)
        assert abs(a.gamma_hat - b.gamma_hat) < 1e-9

    def test_local_maximum(self):
        draws = sample_power_law(2.6, 1, 50_000, seed=13)
        est = estimate_gamma_values(draws, 1)
        here = log_likelihood(draws, 1, est.gamma_hat)
        assert here >= log_likelihood(draws, 1, est.gamma_hat + 0.01)
        assert here >= log_likelihood(draws, 1, est.gamma_hat - 0.01)
        assert est.log_likelihood == pytest.approx(here)

    def test_observations_below_cutoff_excluded(self):
        degrees = np.concatenate([np.array([1, 1, 2]), sample_power_law(2.5, 3, 1000, seed=3)])
        est = estimate_gamma_values(degrees, 3)
        assert est.n_tail == 1000

    def test_network_wrapper_uses_m(self):
        seq = generate(GrowthParams(n_nodes=5000, m=3, seed=11))
        est = estimate_gamma(seq)
        direct = estimate_gamma_values(seq.degrees, 3)
        assert est.gamma_hat == direct.gamma_hat
        assert est.k_min == 3


class TestLoglogSlope:
    def test_declared_biased_but_computes(self):
        draws = sample_power_law(2.5, 1, 50_000, seed=21)
        slope = loglog_slope(draws)
        assert 1.0 < slope < 4.0

    def test_needs_two_distinct(self):
        with pytest.raises(DegenerateInputError):
            loglog_slope(np.full(10, 3))

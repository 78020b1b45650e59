import numpy as np
import pytest

from pagamma import (
    ConvergenceError,
    DomainError,
    InsufficientPointsError,
    InvalidParamsError,
    eval_ansatz,
    fit_ansatz,
    gamma_curve,
    solve_gamma,
)
from pagamma.fit import FitResult, _residuals_and_jacobian

# Reference parameter values for the saturating curve fitted on m = 1..10
# (two published roundings exist for alpha; the first is the primary).
ALPHA_REF = 0.9205
ALPHA_ALT = 0.925
BETA_REF = 0.9932


class TestEvalAnsatz:
    def test_reference_point(self):
        assert eval_ansatz(1.0, ALPHA_REF, BETA_REF) == pytest.approx(2.477, abs=5e-4)

    def test_asymptote(self):
        assert eval_ansatz(1e6, 1.0, 1.0) == pytest.approx(3.0, abs=1e-5)

    def test_unit_case(self):
        assert eval_ansatz(1.0, 0.0, 1.0) == 2.0

    def test_domain(self):
        with pytest.raises(DomainError):
            eval_ansatz(1.0, -1.0, 1.0)
        with pytest.raises(DomainError):
            eval_ansatz(0.5, -0.5, 2.0)


class TestFitAnsatz:
    def test_exact_model_recovery(self):
        points = [(m, eval_ansatz(m, 1.0, 1.0)) for m in range(1, 11)]
        result = fit_ansatz(points)
        assert result.alpha == pytest.approx(1.0, abs=1e-9)
        assert result.beta == pytest.approx(1.0, abs=1e-9)
        assert result.rss < 1e-20

    def test_solved_curve_matches_reference_parameters(self):
        points = [(s.m, s.gamma) for s in gamma_curve(range(1, 11))]
        result = fit_ansatz(points)
        assert abs(result.alpha - ALPHA_REF) < 0.01
        assert abs(result.beta - BETA_REF) < 0.01

    def test_too_few_points(self):
        with pytest.raises(InsufficientPointsError):
            fit_ansatz([(1.0, 2.4), (2.0, 2.6)])

    def test_gamma_at_asymptote_rejected(self):
        with pytest.raises(DomainError):
            fit_ansatz([(1.0, 2.4), (2.0, 3.0), (3.0, 2.7)])

    def test_gradient_vanishes_at_optimum(self):
        points = [(s.m, s.gamma) for s in gamma_curve(range(1, 11))]
        result = fit_ansatz(points)
        ms = np.array([p[0] for p in points])
        gs = np.array([p[1] for p in points])
        r, jac = _residuals_and_jacobian(ms, gs, result.alpha, result.beta)
        grad = 2.0 * jac.T @ r
        assert float(np.linalg.norm(grad)) < 1e-8

    def test_rss_matches_residuals(self):
        points = [(s.m, s.gamma) for s in gamma_curve(range(1, 9))]
        result = fit_ansatz(points)
        assert result.rss == pytest.approx(sum(x * x for x in result.residuals), rel=1e-12)
        assert len(result.residuals) == 8
        assert result.iterations >= 1

    def test_extrapolation(self):
        points = [(s.m, s.gamma) for s in gamma_curve(range(1, 11))]
        result = fit_ansatz(points)
        for m in (20, 50, 100):
            predicted = eval_ansatz(float(m), result.alpha, result.beta)
            assert abs(predicted - solve_gamma(m).gamma) < 0.01

    def test_noisy_points_still_converge(self):
        rng = np.random.default_rng(6)
        points = [
            (m, eval_ansatz(m, 0.9, 1.1) + 1e-3 * rng.standard_normal())
            for m in range(1, 21)
        ]
        result = fit_ansatz(points)
        assert abs(result.alpha - 0.9) < 0.05
        assert abs(result.beta - 1.1) < 0.05


class TestJacobian:
    def test_matches_central_differences(self):
        rng = np.random.default_rng(31337)
        ms = np.array([1.0, 2.0, 5.0, 13.0])
        gs = np.array([2.4, 2.6, 2.8, 2.9])
        h = 1e-6
        for _ in range(10):
            alpha = float(rng.uniform(0.2, 2.0))
            beta = float(rng.uniform(0.5, 1.5))
            _, jac = _residuals_and_jacobian(ms, gs, alpha, beta)
            r_ap, _ = _residuals_and_jacobian(ms, gs, alpha + h, beta)
            r_am, _ = _residuals_and_jacobian(ms, gs, alpha - h, beta)
            r_bp, _ = _residuals_and_jacobian(ms, gs, alpha, beta + h)
            r_bm, _ = _residuals_and_jacobian(ms, gs, alpha, beta - h)
            fd = np.column_stack([(r_ap - r_am) / (2 * h), (r_bp - r_bm) / (2 * h)])
            assert np.allclose(jac, fd, rtol=1e-5, atol=1e-10)


class TestFitResultInvariants:
    def test_rejects_negative_beta(self):
        with pytest.raises(InvalidParamsError):
            FitResult(alpha=1.0, beta=-0.5, rss=0.0, residuals=(0.0,), iterations=1)

    def test_rejects_inconsistent_rss(self):
        with pytest.raises(InvalidParamsError):
            FitResult(alpha=1.0, beta=1.0, rss=5.0, residuals=(1.0, 1.0), iterations=1)


def test_convergence_error_is_raised_for_impossible_budget(monkeypatch):
    import pagamma.fit as fit_module

    monkeypatch.setattr(fit_module, "MAX_ITERATIONS", 0)
    with pytest.raises(ConvergenceError):
        fit_module.fit_ansatz([(m, eval_ansatz(m, 1.0, 1.0)) for m in (1.0, 2.0, 3.0, 4.0)])

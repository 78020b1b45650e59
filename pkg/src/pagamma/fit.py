"""Least-squares fit of the saturating curve gamma(m) = 3 - (m + alpha)**(-beta).

The asymptote is fixed at 3 and never fitted; only the shift alpha and
the rate beta are free. Fitting is plain Levenberg-Marquardt with the
analytic Jacobian of the residuals r_i = gamma_i - model(m_i):

    dr/dalpha = -beta * (m + alpha)**(-beta - 1)
    dr/dbeta  = -(m + alpha)**(-beta) * ln(m + alpha)

The start point comes from the log-linearization
ln(3 - gamma_i) = -beta * ln(m_i + alpha) evaluated at alpha = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, InsufficientPointsError, InvalidParamsError

ASYMPTOTE = 3.0
MAX_ITERATIONS = 200
STEP_NORM_TOL = 1e-12
_LAMBDA_UP = 10.0
_LAMBDA_DOWN = 0.1
_LAMBDA_MAX = 1e14


@dataclass(frozen=True)
class FitResult:
    """Fitted (alpha, beta) with residual diagnostics."""

    alpha: float
    beta: float
    rss: float
    residuals: tuple[float, ...]
    iterations: int

    def __post_init__(self):
        if not self.beta > 0.0:
            raise InvalidParamsError(f"beta must be positive, got {self.beta!r}")
        checksum = float(np.dot(self.residuals, self.residuals))
        if abs(checksum - self.rss) > 1e-12 * max(1.0, abs(self.rss)):
            raise InvalidParamsError("rss does not match the stored residuals")


def eval_ansatz(m: float, alpha: float, beta: float) -> float:
    """Value of 3 - (m + alpha)**(-beta); requires m + alpha > 0."""
    base = m + alpha
    if not base > 0.0:
        raise DomainError(f"m + alpha must be positive, got {base!r}")
    return ASYMPTOTE - base ** (-beta)


def _residuals_and_jacobian(ms, gammas, alpha, beta):
    """Residuals gamma_i - model(m_i) and their Jacobian, or None if the
    trial parameters leave the model's domain."""
    base = ms + alpha
    if np.any(base <= 0.0):
        return None
    powered = base ** (-beta)
    r = gammas - (ASYMPTOTE - powered)
    jac = np.column_stack([-beta * base ** (-beta - 1.0), -np.log(base) * powered])
    return r, jac


def fit_ansatz(points) -> FitResult:
    """Fit (alpha, beta) to (m, gamma) pairs by Levenberg-Marquardt.

    Needs at least 3 points, all with gamma < 3. Converges when the step
    norm drops below 1e-12; raises ConvergenceError after 200 iterations.
    """
    pts = [(float(m), float(g)) for m, g in points]
    if len(pts) < 3:
        raise InsufficientPointsError(f"need at least 3 points, got {len(pts)}")
    ms = np.array([p[0] for p in pts])
    gammas = np.array([p[1] for p in pts])
    if np.any(gammas >= ASYMPTOTE):
        raise DomainError("every gamma must lie below the asymptote 3")
    if np.any(ms <= 0.0):
        raise DomainError("every m must be positive")

    # Log-linearized start: slope of ln(3 - gamma) against ln(m + 1).
    x = np.log(ms + 1.0)
    y = np.log(ASYMPTOTE - gammas)
    beta0 = -float(x @ y) / float(x @ x)
    params = np.array([1.0, beta0])

    evaluated = _residuals_and_jacobian(ms, gammas, params[0], params[1])
    if evaluated is None:
        raise DomainError("initial parameters leave the model domain")
    r, jac = evaluated
    rss = float(r @ r)
    lam = 1e-3

    for iteration in range(1, MAX_ITERATIONS + 1):
        grad = jac.T @ r
        normal = jac.T @ jac
        damped = normal + lam * np.diag(np.diag(normal))
        try:
            step = np.linalg.solve(damped, -grad)
        except np.linalg.LinAlgError:
            lam *= _LAMBDA_UP
            continue

        trial = params + step
        trial_eval = _residuals_and_jacobian(ms, gammas, trial[0], trial[1])
        if trial_eval is not None:
            r_t, jac_t = trial_eval
            rss_t = float(r_t @ r_t)
        else:
            rss_t = np.inf

        if rss_t <= rss:
            params, r, jac, rss = trial, r_t, jac_t, rss_t
            lam = max(lam * _LAMBDA_DOWN, 1e-14)
            if float(np.linalg.norm(step)) < STEP_NORM_TOL:
                return FitResult(
                    alpha=float(params[0]),
                    beta=float(params[1]),
                    rss=rss,
                    residuals=tuple(float(v) for v in r),
                    iterations=iteration,
                )
        else:
            lam *= _LAMBDA_UP
            if lam > _LAMBDA_MAX:
                raise ConvergenceError(
                    f"damping exploded at iteration {iteration} (rss={rss:.3e})"
                )

    raise ConvergenceError(f"no convergence within {MAX_ITERATIONS} iterations")

"""Expected degree of the truncated power law and the exponent it implies.

A preferential-attachment network that adds m links per node has expected
degree 2m. If its degree distribution is modelled as a truncated power
law P(k) ~ k**(-gamma) supported on k >= m, the expected degree of the
model is zeta(gamma-1, m) / zeta(gamma, m). Equating the two pins gamma
as the root of

    F(gamma, m) = 2m * zeta(gamma, m) - zeta(gamma - 1, m)

which is the closed form of sum_{k>=m} (2m - k) * k**(-gamma). F is
negative near gamma = 2, positive at gamma = 3, and has a single root in
between for every m.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainError, InvalidParamsError, RootBracketError
from .specfun import EPS_DOMAIN, _as_index, hurwitz_zeta

# Search interval for the root; the upper end sits above the asymptote 3
# so floating-point residue can never push the root outside the bracket.
BRACKET_LO = 2.0 + 1e-6
BRACKET_HI = 3.5
BRACKET_WIDTH_TOL = 1e-12
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class GammaSolution:
    """Solved exponent for a given number of links per node.

    Attributes
    ----------
    m : links added per new node (also the minimum degree).
    gamma : root of the implicit expected-degree equation.
    residual : value of the implicit equation at ``gamma``.
    bracket : final bisection interval around the root.
    """

    m: int
    gamma: float
    residual: float
    bracket: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.bracket
        if not 2.0 < self.gamma <= 3.0:
            raise InvalidParamsError(f"gamma={self.gamma!r} outside (2, 3]")
        if not abs(self.residual) <= RESIDUAL_TOL:
            raise InvalidParamsError(f"residual {self.residual!r} exceeds {RESIDUAL_TOL:g}")
        if not hi - lo <= BRACKET_WIDTH_TOL:
            raise InvalidParamsError(f"bracket width {hi - lo!r} exceeds {BRACKET_WIDTH_TOL:g}")


def _check_gamma_m(gamma: float, m) -> tuple[float, int]:
    gamma = float(gamma)
    m = _as_index(m, "m")
    if not gamma > 2.0 + EPS_DOMAIN:
        raise DomainError(f"gamma must exceed 2 + {EPS_DOMAIN:g}, got {gamma!r}")
    if m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    return gamma, m


def implicit_residual(gamma: float, m: int) -> float:
    """F(gamma, m) = 2m*zeta(gamma, m) - zeta(gamma-1, m)."""
    gamma, m = _check_gamma_m(gamma, m)
    return 2.0 * m * hurwitz_zeta(gamma, m) - hurwitz_zeta(gamma - 1.0, m)


def expected_degree(gamma: float, m: int) -> float:
    """Mean degree of the truncated power law with exponent gamma on k >= m."""
    gamma, m = _check_gamma_m(gamma, m)
    return hurwitz_zeta(gamma - 1.0, m) / hurwitz_zeta(gamma, m)


def solve_gamma(m: int) -> GammaSolution:
    """Solve the implicit expected-degree equation for the exponent.

    Bisection narrows [BRACKET_LO, BRACKET_HI] to a width of 1e-12, then a
    Brent step inside the final bracket polishes the root.
    """
    m = _as_index(m, "m")
    if m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")

    lo, hi = BRACKET_LO, BRACKET_HI
    f_lo = implicit_residual(lo, m)
    f_hi = implicit_residual(hi, m)
    if not (f_lo < 0.0 < f_hi):
        raise RootBracketError(
            f"no sign change in [{lo}, {hi}] for m={m} "
            f"(F(lo)={f_lo!r}, F(hi)={f_hi!r}); the zeta evaluation is suspect"
        )
    while hi - lo > BRACKET_WIDTH_TOL:
        mid = 0.5 * (lo + hi)
        f_mid = implicit_residual(mid, m)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if f_mid < 0.0:
            lo = mid
        else:
            hi = mid

    if lo == hi:
        gamma = lo
    else:
        gamma = brentq(implicit_residual, lo, hi, args=(m,), xtol=1e-13, rtol=8.9e-16)
    return GammaSolution(m=m, gamma=gamma, residual=implicit_residual(gamma, m), bracket=(lo, hi))


def gamma_curve(m_values) -> list[GammaSolution]:
    """Solve for every m in order; errors are re-raised with the offending m."""
    m_values = list(m_values)
    if not m_values:
        raise InvalidParamsError("m_values must be nonempty")
    out = []
    for m in m_values:
        try:
            out.append(solve_gamma(m))
        except Exception as exc:
            raise type(exc)(f"m={m}: {exc}") from exc
    return out

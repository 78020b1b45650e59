"""Hurwitz zeta tails and truncated power sums in plain float64.

``hurwitz_zeta(s, a)`` evaluates sum_{k>=a} k**(-s) by direct summation of
the leading terms followed by an Euler-Maclaurin tail: the integral term
M**(1-s)/(s-1), the half term M**(-s)/2, and four Bernoulli correction
terms. The cut point M is chosen adaptively so that the first omitted
correction term (the standard remainder bound for completely monotone
integrands) is below 1e-14. Direct terms are accumulated with exact
compensated summation, so results are accurate to ~1e-13 absolute away
from the pole at s = 1.
"""

from __future__ import annotations

import math
import operator

from .errors import DomainError

# Pole guard: exponents must stay at least this far above 1.
EPS_DOMAIN = 1e-9

# B_{2j} / (2j)! for j = 1..4.
_EM_COEFFS = (
    (1.0 / 6.0) / 2.0,
    (-1.0 / 30.0) / 24.0,
    (1.0 / 42.0) / 720.0,
    (-1.0 / 30.0) / 40320.0,
)
# |B_10| / 10!, coefficient of the first omitted correction term.
_EM_BOUND_COEFF = (5.0 / 66.0) / 3628800.0

_TAIL_TOL = 1e-14
_MIN_DIRECT = 20


def _as_index(value, name: str) -> int:
    try:
        return operator.index(value)
    except TypeError:
        raise DomainError(f"{name} must be an integer, got {value!r}") from None


def _em_tail(s: float, start: int) -> tuple[float, float]:
    """Euler-Maclaurin tail sum_{k>=start} k**(-s) and its remainder bound."""
    tail = start ** (1.0 - s) / (s - 1.0) + 0.5 * start ** (-s)
    rising = s  # rising factorial s(s+1)...(s+2j-2)
    power = start ** (-s - 1.0)
    for j, coeff in enumerate(_EM_COEFFS, start=1):
        tail += coeff * rising * power
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= start * start
    return tail, abs(_EM_BOUND_COEFF * rising * power)


def hurwitz_zeta(s: float, a: int = 1) -> float:
    """Sum of k**(-s) over k = a, a+1, ... for s > 1.

    With a = 1 this is the Riemann zeta function; for integer a > 1 it is
    the Hurwitz zeta function zeta(s, a).

    Raises
    ------
    DomainError
        If s is within 1e-9 of the pole at 1 (or below), or a < 1.
    """
    s = float(s)
    a = _as_index(a, "a")
    if not s > 1.0 + EPS_DOMAIN:
        raise DomainError(f"s must exceed 1 + {EPS_DOMAIN:g}, got {s!r}")
    if a < 1:
        raise DomainError(f"a must be a positive integer, got {a}")

    cut = max(a, _MIN_DIRECT)
    tail, bound = _em_tail(s, cut)
    while bound > _TAIL_TOL and cut < (1 << 40):
        cut *= 2
        tail, bound = _em_tail(s, cut)
    direct = math.fsum(k ** -s for k in range(a, cut))
    return direct + tail


def truncated_power_sum(s: float, a: int, b: int) -> float:
    """Finite sum of k**(-s) over k = a..b inclusive.

    The empty sum (a == b + 1) is 0. Any real s is allowed since the sum
    is finite.
    """
    s = float(s)
    a = _as_index(a, "a")
    b = _as_index(b, "b")
    if a < 1:
        raise DomainError(f"a must be a positive integer, got {a}")
    if a > b + 1:
        raise DomainError(f"lower limit a={a} exceeds b+1={b + 1}")
    return math.fsum(k ** -s for k in range(a, b + 1))

"""Kramers-Wannier duality and the killed-walk parameters.

The supercritical inverse temperature ``beta_high`` and its subcritical dual
``beta_low`` satisfy ``sinh(2 beta_high) * sinh(2 beta_low) = 1``.  The
survival probability of the random walk attached to the pair is

    m = 2 / (sinh(2 beta_low) + sinh(2 beta_high)),

and ``lambda = -log m`` is the kill rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

SQRT2 = math.sqrt(2.0)


def critical_beta() -> float:
    """Return the self-dual inverse temperature ``log(1 + sqrt 2) / 2``."""
    return 0.5 * math.log1p(SQRT2)


BETA_C = critical_beta()


def dual_of(beta: float) -> float:
    """Kramers-Wannier dual ``arcsinh(1 / sinh(2 beta)) / 2`` of ``beta > 0``."""
    if not beta > 0:
        raise DomainError(f"inverse temperature must be positive, got {beta!r}")
    return 0.5 * math.asinh(1.0 / math.sinh(2.0 * beta))


def _sinh2_minus_one(beta: float) -> float:
    # sinh(2 beta) - 1 expanded around beta_c so it keeps full relative
    # precision when beta is close to the critical point.
    d = beta - BETA_C
    return 2.0 * math.sinh(d) ** 2 + SQRT2 * math.sinh(2.0 * d)


def rhs_excess(beta: float) -> float:
    """Return ``sinh(2b) + 1/sinh(2b) - 2 = (sinh(2b) - 1)^2 / sinh(2b)``.

    This is the right side of the surface-tension constraint minus its value
    at criticality, computed without cancellation.
    """
    u = math.sinh(2.0 * beta)
    return _sinh2_minus_one(beta) ** 2 / u


@dataclass(frozen=True)
class TemperaturePair:
    """A dual pair of inverse temperatures with the derived walk parameters.

    Attributes
    ----------
    beta_high : float
        Supercritical inverse temperature (``>= beta_c``).
    beta_low : float
        Its subcritical dual (``<= beta_c``).
    m : float
        Survival probability of the killed walk, in ``(0, 1]``.
    lam : float
        Kill rate ``-log m``.
    """

    beta_high: float
    beta_low: float
    m: float
    lam: float

    @property
    def excess(self) -> float:
        """``2/m - 2``, the constraint right side above its critical value."""
        return rhs_excess(self.beta_high)

    @property
    def is_critical(self) -> bool:
        return self.excess == 0.0

    @property
    def eps(self) -> float:
        """Distance ``beta_high - beta_c`` from the critical point."""
        return self.beta_high - BETA_C


def make_pair(beta_high: float) -> TemperaturePair:
    """Build the :class:`TemperaturePair` for a supercritical ``beta_high``.

    Raises
    ------
    DomainError
        If ``beta_high < beta_c``; the walk picture needs ``m <= 1``.
    """
    beta_high = float(beta_high)
    if not beta_high >= BETA_C:
        raise DomainError(
            f"beta_high={beta_high!r} is below the critical point {BETA_C!r}"
        )
    if beta_high == BETA_C:
        return TemperaturePair(BETA_C, BETA_C, 1.0, 0.0)
    beta_low = dual_of(beta_high)
    excess = rhs_excess(beta_high)
    # 1/m = 1 + excess/2
    lam = math.log1p(0.5 * excess)
    m = 1.0 / (1.0 + 0.5 * excess)
    return TemperaturePair(beta_high, beta_low, m, lam)


def pair_from_beta_low(beta_low: float) -> TemperaturePair:
    """Pair whose subcritical member is ``beta_low`` (``0 < beta_low <= beta_c``)."""
    if not 0 < beta_low <= BETA_C:
        raise DomainError(f"beta_low={beta_low!r} must lie in (0, beta_c]")
    if beta_low == BETA_C:
        return make_pair(BETA_C)
    return make_pair(dual_of(beta_low))


def pair_from_m(m: float) -> TemperaturePair:
    """Pair whose walk survives each step with probability ``m`` in ``(0, 1]``."""
    if not 0 < m <= 1:
        raise DomainError(f"survival probability m={m!r} must lie in (0, 1]")
    if m == 1:
        return make_pair(BETA_C)
    # sinh(2b) is the larger root of u + 1/u = 2/m
    q = 1.0 / m
    u = q + math.sqrt((q - 1.0) * (q + 1.0))
    return make_pair(0.5 * math.asinh(u))


def pair_from_lambda(lam: float) -> TemperaturePair:
    """Pair with kill rate ``lam >= 0``."""
    if not lam >= 0:
        raise DomainError(f"kill rate lambda={lam!r} must be non-negative")
    if lam == 0:
        return make_pair(BETA_C)
    # u + 1/u = 2 e^lam, u = e^lam + sqrt(e^{2 lam} - 1)
    q = math.exp(lam)
    u = q + math.sqrt(math.expm1(2.0 * lam))
    return make_pair(0.5 * math.asinh(u))


def tanh_coefficients(beta_low: float) -> tuple[float, float]:
    """Return ``(a, gamma)`` with ``a = (1 + t^2)^2``, ``gamma = 2t(1 - t^2)``.

    ``t = tanh(beta_low)``; these are the coefficients of the two-point
    function's integral representation, and ``m = 2 gamma / a``.
    """
    t = math.tanh(beta_low)
    t2 = t * t
    return (1.0 + t2) ** 2, 2.0 * t * (1.0 - t2)

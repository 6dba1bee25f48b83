"""Cramér rate function of the planar simple random walk.

``Lambda(y) = log((cosh y1 + cosh y2) / 2)`` is the log-moment generating
function of one step and ``I`` its Legendre transform.  The surface tension
is recovered from ``I`` through the one-dimensional variational problem

    tau(x) = inf_{gamma > 0} (lambda * gamma + gamma * I(x / gamma)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .tension import Direction, as_pair

LOG4 = math.log(4.0)
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _logcosh(v: float) -> float:
    a = abs(v)
    return a + math.log1p(math.exp(-2.0 * a)) - math.log(2.0)


def log_mgf(y) -> float:
    """``log((cosh y1 + cosh y2) / 2)``, stable for large tilts."""
    y1, y2 = (float(v) for v in y)
    a, b = _logcosh(y1), _logcosh(y2)
    hi, lo = max(a, b), min(a, b)
    return hi + math.log1p(math.exp(lo - hi)) - math.log(2.0)


def grad_log_mgf(y) -> np.ndarray:
    y1, y2 = (float(v) for v in y)
    # sinh(y_i) / (cosh y1 + cosh y2), scaled by exp(-max|y|) against overflow
    sh = max(abs(y1), abs(y2))
    num = np.array(
        [
            0.5 * (math.exp(y1 - sh) - math.exp(-y1 - sh)),
            0.5 * (math.exp(y2 - sh) - math.exp(-y2 - sh)),
        ]
    )
    den = 0.5 * (
        math.exp(y1 - sh) + math.exp(-y1 - sh) + math.exp(y2 - sh) + math.exp(-y2 - sh)
    )
    return num / den


def _hess_log_mgf(y) -> np.ndarray:
    y1, y2 = (float(v) for v in y)
    c = math.cosh(y1) + math.cosh(y2)
    s1, s2 = math.sinh(y1) / c, math.sinh(y2) / c
    return np.array(
        [
            [math.cosh(y1) / c - s1 * s1, -s1 * s2],
            [-s1 * s2, math.cosh(y2) / c - s2 * s2],
        ]
    )


@dataclass(frozen=True)
class RatePoint:
    """Velocity ``z``, its conjugate tilt ``y`` and the rate ``I(z)``.

    ``y`` is ``None`` on and outside the boundary ``|z1| + |z2| = 1`` of the
    reachable cone, where the supremum is not attained.
    """

    z: tuple[float, float]
    y: tuple[float, float] | None
    value: float


def _solve_inverse_c(a: float, b: float) -> float:
    # t = 1/(cosh y1 + cosh y2) solves sqrt(t^2 + a^2) + sqrt(t^2 + b^2) = 1,
    # the left side is increasing in t with value a + b < 1 at t = 0.
    def g(t):
        return math.hypot(t, a) + math.hypot(t, b) - 1.0

    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    for _ in range(2):
        if t <= 0.0:
            break
        slope = t / math.hypot(t, a) + t / math.hypot(t, b)
        step = g(t) / slope
        if not lo <= t - step <= hi:
            break
        t -= step
    return t


def cramer(z) -> RatePoint:
    """Legendre transform ``I(z) = sup_y (z . y - Lambda(y))``.

    The two-dimensional supremum reduces to the scalar equation
    ``C = sqrt(1 + z1^2 C^2) + sqrt(1 + z2^2 C^2)`` for ``C = cosh y1 + cosh y2``
    (solved in the variable ``1/C``), after which ``y_i = arcsinh(z_i C)``.
    On the boundary of the cone the entropy limit
    ``log 4 + sum |z_i| log |z_i|`` is returned; beyond it ``I = inf``.
    """
    z1, z2 = (float(v) for v in z)
    a, b = abs(z1), abs(z2)
    l1 = a + b
    if l1 > 1.0:
        return RatePoint((z1, z2), None, math.inf)
    if l1 == 1.0:
        ent = sum(v * math.log(v) for v in (a, b) if v > 0.0)
        return RatePoint((z1, z2), None, LOG4 + ent)
    if l1 == 0.0:
        return RatePoint((z1, z2), (0.0, 0.0), 0.0)
    t = _solve_inverse_c(a, b)
    y1 = math.asinh(z1 / t)
    y2 = math.asinh(z2 / t)
    # Lambda(y) = log(C / 2) = -log(2 t)
    value = z1 * y1 + z2 * y2 + math.log(2.0 * t)
    return RatePoint((z1, z2), (y1, y2), max(value, 0.0))


def _g(gamma: float, a: float, b: float, lam: float) -> float:
    return lam * gamma + gamma * cramer((a / gamma, b / gamma)).value


def tau_variational(x, pair) -> float:
    """Surface tension through the Cramér variational formula.

    Minimizes the convex function ``g(gamma) = lambda gamma + gamma I(x/gamma)``
    over ``gamma >= |x1| + |x2|`` by golden-section search, then takes one
    Newton step on ``g'(gamma) = lambda - Lambda(y(x/gamma))`` when it lowers
    ``g``.  ``pair`` is a :class:`TemperaturePair` or ``beta_high``.
    """
    d = Direction.of(x)
    pair = as_pair(pair)
    a, b = d.reduced
    if a == 0.0:
        return 0.0
    lam = pair.lam
    if lam == 0.0:
        # inf over gamma of gamma I(x/gamma) is the gamma -> inf limit
        return 0.0
    if not lam > 0:
        raise DomainError("kill rate must be positive")

    lo = a + b + 1e-9
    hi = a + b + 4.0 * d.r / math.sqrt(lam) + 1.0
    c = hi - _INVPHI * (hi - lo)
    e = lo + _INVPHI * (hi - lo)
    gc, ge = _g(c, a, b, lam), _g(e, a, b, lam)
    while hi - lo > 1e-10 * max(1.0, lo):
        if gc <= ge:
            hi, e, ge = e, c, gc
            c = hi - _INVPHI * (hi - lo)
            gc = _g(c, a, b, lam)
        else:
            lo, c, gc = c, e, ge
            e = lo + _INVPHI * (hi - lo)
            ge = _g(e, a, b, lam)
    gamma = 0.5 * (lo + hi)
    best = _g(gamma, a, b, lam)

    rp = cramer((a / gamma, b / gamma))
    if rp.y is not None:
        zv = np.array(rp.z)
        h = _hess_log_mgf(rp.y)
        curvature = float(zv @ np.linalg.solve(h, zv)) / gamma
        slope = lam - log_mgf(rp.y)
        if curvature > 0.0:
            cand = gamma - slope / curvature
            if cand > a + b:
                val = _g(cand, a, b, lam)
                if val < best:
                    best = val
    return best

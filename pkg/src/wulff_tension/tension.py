"""Exact surface tension and the Wulff shape.

For ``beta > beta_c`` and a direction ``x = (x1, x2)`` the surface tension is

    tau(x) = x1 * arcsinh(s * x1) + x2 * arcsinh(s * x2),

where ``s >= 0`` solves

    sqrt(1 + s^2 x1^2) + sqrt(1 + s^2 x2^2) = sinh(2 beta) + 1 / sinh(2 beta).

A variant of this formula with ``arcsinh(sqrt(1 + s^2 x_i^2))`` in place of
``arcsinh(s x_i)`` also circulates.  It does not reduce to Onsager's axis
value ``2 beta + log tanh beta`` and is not used here; see ``tests/test_tension.py::test_alternative_form_is_inconsistent``.

The Wulff crystal is the sublevel set ``{y : Lambda(y) <= lambda(beta)}`` of
the log-Laplace transform ``Lambda(y) = log((cosh y1 + cosh y2) / 2)`` of one
step of the simple random walk, so ``tau`` is its support function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .duality import TemperaturePair, make_pair
from .errors import DomainError


@dataclass(frozen=True)
class Direction:
    """A planar vector together with its symmetry-reduced polar form.

    ``r`` is the Euclidean norm and ``phi`` the angle of ``(max(|x1|,|x2|),
    min(|x1|,|x2|))``, which always lies in ``[0, pi/4]``.
    """

    x1: float
    x2: float
    r: float
    phi: float

    @classmethod
    def of(cls, x) -> "Direction":
        if isinstance(x, Direction):
            return x
        x1, x2 = (float(v) for v in x)
        a, b = abs(x1), abs(x2)
        if b > a:
            a, b = b, a
        return cls(x1, x2, math.hypot(x1, x2), math.atan2(b, a))

    @property
    def reduced(self) -> tuple[float, float]:
        """``(|x1|, |x2|)`` sorted in decreasing order."""
        a, b = abs(self.x1), abs(self.x2)
        return (a, b) if a >= b else (b, a)

    def __iter__(self):
        yield self.x1
        yield self.x2


@dataclass(frozen=True)
class TensionValue:
    tau: float
    s: float


def as_pair(pair) -> TemperaturePair:
    """Accept a :class:`TemperaturePair` or a supercritical ``beta_high``."""
    if isinstance(pair, TemperaturePair):
        return pair
    return make_pair(pair)


def _excess_term(s: float, c: float) -> float:
    # sqrt(1 + s^2 c^2) - 1 without cancellation
    a = s * s * c * c
    return a / (math.sqrt(1.0 + a) + 1.0)


def _constraint(s: float, a: float, b: float, excess: float) -> float:
    return _excess_term(s, a) + _excess_term(s, b) - excess


def _constraint_slope(s: float, a: float, b: float) -> float:
    return s * a * a / math.sqrt(1.0 + (s * a) ** 2) + s * b * b / math.sqrt(
        1.0 + (s * b) ** 2
    )


def solve_s(x, pair) -> float:
    """Solve the surface-tension constraint for the auxiliary root ``s``.

    The left side minus 2 is strictly increasing in ``s``; the root is
    bracketed between the small-``s`` estimate ``sqrt(2 excess) / |x|`` and the
    linear bound ``(excess + 1) / max|x_i|``, bisected, then Newton-polished.

    Raises
    ------
    DomainError
        If ``x`` is the zero vector.
    """
    d = Direction.of(x)
    pair = as_pair(pair)
    a, b = d.reduced
    if a == 0.0:
        raise DomainError("direction must be non-zero")
    excess = pair.excess
    if excess == 0.0:
        return 0.0

    lo = min(math.sqrt(2.0 * excess) / d.r, (excess + 1.0) / a)
    hi = (excess + 1.0) / a
    while _constraint(hi, a, b, excess) < 0.0:
        lo, hi = hi, 2.0 * hi
    while _constraint(lo, a, b, excess) > 0.0:
        lo *= 0.5

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= 1e-15 * hi:
            break
        if _constraint(mid, a, b, excess) < 0.0:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    for _ in range(2):
        slope = _constraint_slope(s, a, b)
        if slope <= 0.0:
            break
        step = _constraint(s, a, b, excess) / slope
        if not lo <= s - step <= hi:
            break
        s -= step
    return s


def tau(x, pair) -> TensionValue:
    """Surface tension ``tau_beta(x)`` and its auxiliary root ``s``.

    ``pair`` may be a :class:`TemperaturePair` or ``beta_high`` itself.

    >>> round(tau((1, 0), 0.6).tau, 6)
    0.578335
    """
    d = Direction.of(x)
    pair = as_pair(pair)
    a, b = d.reduced
    if a == 0.0:
        return TensionValue(0.0, 0.0)
    s = solve_s(d, pair)
    return TensionValue(a * math.asinh(s * a) + b * math.asinh(s * b), s)


def onsager_axis(beta: float) -> float:
    """Onsager's axis surface tension ``2 beta + log tanh beta``."""
    return 2.0 * beta + math.log(math.tanh(beta))


@dataclass(frozen=True)
class WulffShape:
    """Boundary points of the Wulff crystal.

    ``degenerate`` is true at the critical point, where the crystal shrinks to
    the origin and every returned point is ``(0, 0)``.
    """

    points: np.ndarray
    angles: np.ndarray
    degenerate: bool

    def __len__(self) -> int:
        return len(self.points)


def _level_excess(rho: float, c: float, s: float) -> float:
    # cosh(rho c) + cosh(rho s) - 2, written with sinh^2 of half angles
    return 2.0 * math.sinh(0.5 * rho * c) ** 2 + 2.0 * math.sinh(0.5 * rho * s) ** 2


def _radial_root(c: float, s: float, excess: float) -> float:
    # cosh z - 1 >= z^2/2, so the level curve lies inside radius sqrt(2 excess)
    lo, hi = 0.0, math.sqrt(2.0 * excess)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _level_excess(mid, c, s) < excess:
            lo = mid
        else:
            hi = mid
    rho = 0.5 * (lo + hi)
    for _ in range(2):
        slope = c * math.sinh(rho * c) + s * math.sinh(rho * s)
        if slope <= 0.0:
            break
        step = (_level_excess(rho, c, s) - excess) / slope
        if not lo <= rho - step <= hi:
            break
        rho -= step
    return rho


def wulff_boundary(pair, n_points: int = 256) -> WulffShape:
    """Sample the Wulff boundary ``{y : Lambda(y) = lambda(beta)}``.

    Points are taken at equally spaced polar angles, each found by a radial
    root solve, so the level-set equation holds pointwise.
    """
    pair = as_pair(pair)
    if n_points < 4:
        raise DomainError("n_points must be at least 4")
    angles = 2.0 * np.pi * np.arange(n_points) / n_points
    excess = pair.excess
    if excess == 0.0:
        return WulffShape(np.zeros((n_points, 2)), angles, True)
    pts = np.empty((n_points, 2))
    for i, th in enumerate(angles):
        c, s = math.cos(th), math.sin(th)
        rho = _radial_root(abs(c), abs(s), excess)
        pts[i] = rho * c, rho * s
    return WulffShape(pts, angles, False)

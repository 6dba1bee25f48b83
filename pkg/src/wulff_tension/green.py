"""Green function of the geometrically killed simple random walk.

``G_m(x) = E[V_m(x)] = sum_k m^k P(S_k = x)`` is the expected number of visits
to ``x`` by a walk that survives each step with probability ``m``.  It is
computed three independent ways:

* ``series``: the generating function with ``P(S_k = x)`` obtained by exact
  dynamic programming on the lattice;
* ``quadrature``: the periodic trapezoid rule for
  ``(2 pi)^-2 int cos(x . theta) / (1 - m (cos theta1 + cos theta2) / 2)``;
* ``bessel``: the Laplace-transform representation
  ``G_m(x) = int_0^inf e^{-t} I_{x1}(m t / 2) I_{x2}(m t / 2) dt``
  (equivalently ``r int e^{-r u} I_{x1}(m r u / 2) I_{x2}(m r u / 2) du``),
  assembled in the log domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .bessel import log_bessel_i
from .duality import BETA_C, TemperaturePair, tanh_coefficients
from .errors import DomainError

METHODS = ("series", "quadrature", "bessel")

SERIES_TAIL = 1e-13
SERIES_KMAX_CAP = 1500
QUADRATURE_M_MAX = 0.999
BESSEL_DROP = 40.0
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


@dataclass(frozen=True)
class GreenValue:
    """A Green-function evaluation.

    ``err_est`` is an absolute error estimate: the geometric tail bound for
    the series, the coarse-to-fine difference for the quadrature rules.
    """

    value: float
    method: str
    err_est: float
    params: dict = field(default_factory=dict, compare=False)


def _lattice(x) -> tuple[int, int]:
    x1, x2 = x
    if int(x1) != x1 or int(x2) != x2:
        raise DomainError(f"lattice point must have integer coordinates, got {x!r}")
    return int(x1), int(x2)


def _reduce(x1: int, x2: int) -> tuple[int, int]:
    a, b = abs(x1), abs(x2)
    return (a, b) if a >= b else (b, a)


def _check_m(m: float, upper: float = 1.0, closed: bool = False) -> float:
    m = float(m)
    ok = 0.0 <= m <= upper if closed else 0.0 <= m < upper
    if not ok:
        raise DomainError(f"survival probability m={m!r} outside the valid range")
    return m


def default_kmax(m: float, x=(0, 0)) -> int:
    """Smallest truncation whose tail bound ``m^(k+1)/(1-m)`` is below 1e-13."""
    l1 = abs(int(x[0])) + abs(int(x[1]))
    if m == 0.0:
        return l1
    k = math.ceil(math.log(SERIES_TAIL * (1.0 - m)) / math.log(m)) - 1
    return max(l1, min(max(k, 0), SERIES_KMAX_CAP))


@lru_cache(maxsize=16)
def _green_box(m: float, k_max: int) -> np.ndarray:
    box = kernels.walk_green_box(m, k_max)
    box.flags.writeable = False
    return box


def green_series(x, m: float, k_max: int | None = None) -> GreenValue:
    """Truncated generating function ``sum_{k <= k_max} m^k P(S_k = x)``.

    One dynamic-programming pass fills the whole box ``|y|_inf <= k_max`` and
    is cached, so repeated lookups at the same ``(m, k_max)`` are free.
    """
    x1, x2 = _lattice(x)
    m = _check_m(m)
    if k_max is None:
        k_max = default_kmax(m, (x1, x2))
    k_max = int(k_max)
    if k_max < abs(x1) + abs(x2):
        raise DomainError("k_max must be at least |x1| + |x2|")
    a, b = _reduce(x1, x2)
    box = _green_box(m, k_max)
    value = float(box[k_max + a, k_max + b])
    err = m ** (k_max + 1) / (1.0 - m)
    return GreenValue(value, "series", err, {"k_max": k_max})


def green_quadrature(x, m: float, n_grid: int = 256) -> GreenValue:
    """Periodic trapezoid rule on ``[-pi, pi]^2`` with ``n_grid`` nodes per axis.

    The error estimate is the difference from the rule with half the nodes.
    Refuses ``m > 0.999``, where the near-singular integrand needs a finer
    grid than this policy validates.
    """
    x1, x2 = _lattice(x)
    m = float(m)
    if m > QUADRATURE_M_MAX:
        raise DomainError(
            f"m={m!r} exceeds {QUADRATURE_M_MAX}; the integrand peak is too sharp "
            "for the fixed trapezoid grid, use the series or bessel method"
        )
    m = _check_m(m, QUADRATURE_M_MAX, closed=True)
    n_grid = int(n_grid)
    if n_grid < 16 or n_grid & (n_grid - 1):
        raise DomainError("n_grid must be a power of two >= 16")
    fine = kernels.trapezoid_green(x1, x2, m, n_grid)
    coarse = kernels.trapezoid_green(x1, x2, m, n_grid // 2)
    return GreenValue(fine, "quadrature", abs(fine - coarse), {"n_grid": n_grid})


def _log_integrand(t, a: int, b: int, m: float):
    z = 0.5 * m * np.asarray(t, dtype=float)
    return -np.asarray(t, dtype=float) + log_bessel_i(a, z) + log_bessel_i(b, z)


def _gl_panels(lo: float, hi: float, panels: int):
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    t = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return t, w


def _laplace_integral(a: int, b: int, m: float, rel_tol: float = 1e-14,
                      drop: float = BESSEL_DROP):
    """``int_0^inf exp(h(t)) dt`` with ``h = -t + log I_a + log I_b``.

    Returns ``(value, err_est, params)``.
    """
    if m == 0.0:
        return (1.0 if a == b == 0 else 0.0), 0.0, {"panels": 0}

    # scan outward on a geometric grid; stop once h is 'drop' below the max
    t = 0.25
    best_t, best_h = 0.0, float(_log_integrand(0.0, a, b, m))
    while True:
        h = float(_log_integrand(t, a, b, m))
        if h > best_h:
            best_t, best_h = t, h
        elif h < best_h - drop and t > best_t:
            upper = t
            break
        t *= 1.25
    lower = 0.0
    if a + b > 0:
        t = best_t
        while t > 1e-3:
            t *= 0.8
            if float(_log_integrand(t, a, b, m)) < best_h - drop:
                lower = t
                break

    panels = 8
    prev = None
    while True:
        nodes, weights = _gl_panels(lower, upper, panels)
        vals = np.exp(_log_integrand(nodes, a, b, m) - best_h)
        cur = float(np.dot(weights, vals))
        if prev is not None and abs(cur - prev) <= rel_tol * abs(cur):
            break
        if panels >= 1 << 14:
            break
        prev = cur
        panels *= 2
    scale = math.exp(best_h)
    err = abs(cur - prev) * scale if prev is not None else math.inf
    params = {"panels": panels, "lower": lower, "upper": upper, "nodes": 20}
    return cur * scale, err, params


def green_bessel(x, m: float, rel_tol: float = 1e-14) -> GreenValue:
    """Bessel-product representation evaluated by log-domain quadrature.

    The upper limit is cut where the log-integrand has fallen 40 units below
    its running maximum; Gauss-Legendre panels are doubled until successive
    sums agree to ``rel_tol``.

    Raises
    ------
    DomainError
        For ``x = (0, 0)`` (the representation carries a factor ``r = |x|``)
        or ``m`` outside ``(0, 1)``.
    """
    x1, x2 = _lattice(x)
    if x1 == 0 and x2 == 0:
        raise DomainError("bessel route needs x != 0; use series or quadrature")
    m = float(m)
    if not 0.0 < m < 1.0:
        raise DomainError(f"bessel route needs 0 < m < 1, got {m!r}")
    a, b = _reduce(x1, x2)
    value, err, params = _laplace_integral(a, b, m, rel_tol)
    return GreenValue(value, "bessel", err, params)


def green(x, m: float, method: str = "auto", **kw) -> GreenValue:
    """Dispatch to one of the three routes.

    ``auto`` picks ``bessel`` away from the origin and otherwise the
    quadrature (or the series when ``m`` exceeds the quadrature cap).
    """
    if method == "auto":
        x1, x2 = _lattice(x)
        if (x1, x2) != (0, 0) and 0.0 < m < 1.0:
            method = "bessel"
        elif m <= QUADRATURE_M_MAX:
            method = "quadrature"
        else:
            method = "series"
    if method == "series":
        return green_series(x, m, **kw)
    if method == "quadrature":
        return green_quadrature(x, m, **kw)
    if method == "bessel":
        return green_bessel(x, m, **kw)
    raise ValueError(f"unknown method {method!r}")


def _green_origin(m: float, method: str) -> GreenValue:
    if method == "bessel":
        m = float(m)
        if not 0.0 < m < 1.0:
            raise DomainError(f"bessel route needs 0 < m < 1, got {m!r}")
        value, err, params = _laplace_integral(0, 0, m)
        return GreenValue(value, "bessel", err, params)
    return green((0, 0), m, method)


def hitting_laplace(x, m, method: str = "series") -> GreenValue:
    """``E[exp(-lambda H(x))] = G(x) / G(0)``, the chance of reaching ``x``.

    ``m`` may be a survival probability or a :class:`TemperaturePair`.
    Relative errors of numerator and denominator are combined in quadrature.
    """
    if isinstance(m, TemperaturePair):
        m = m.m
    x1, x2 = _lattice(x)
    if x1 == 0 and x2 == 0:
        raise DomainError("hitting time of the origin is identically zero")
    m = float(m)
    if not 0.0 < m < 1.0:
        raise DomainError(f"need 0 < m < 1, got {m!r}")
    if method == "auto":
        method = "bessel"
    gx = green(x, m, method)
    g0 = _green_origin(m, method)
    ratio = gx.value / g0.value
    rel = math.hypot(
        gx.err_est / gx.value if gx.value else 0.0, g0.err_est / g0.value
    )
    return GreenValue(ratio, f"hitting/{method}", ratio * rel, dict(gx.params))


def ising_prefactor(beta_low: float) -> float:
    """``(sinh(2b)^-4 - 1)^(1/4) / (gamma a)`` for subcritical ``b``."""
    if not 0 < beta_low < BETA_C:
        raise DomainError(
            f"beta_low={beta_low!r} must lie strictly below beta_c={BETA_C!r}"
        )
    a, gam = tanh_coefficients(beta_low)
    return (math.sinh(2.0 * beta_low) ** -4 - 1.0) ** 0.25 / (gam * a)


def ising_correlation_asymptotic(x, pair: TemperaturePair,
                                 method: str = "auto") -> float:
    """Asymptotic proxy ``prefactor * G_m(x)`` for the subcritical two-point function.

    Only meaningful for large ``|x|``; no error bound is attached.
    """
    pref = ising_prefactor(pair.beta_low)
    return pref * green(x, pair.m, method).value

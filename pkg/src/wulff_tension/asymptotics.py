"""Laplace-method asymptotics of the killed-walk Green function.

Writing ``x = r (cos phi, sin phi)`` with ``phi`` in ``[0, pi/4]``, the Green
function is, up to a Stirling-type prefactor, the integral of
``exp(r f_m(u, t1, t2))`` over ``(0, inf) x (0, pi)^2`` with

    f_m = m u (cos t1 + cos t2) / 2 - u
          + cos(phi) log(m u sin(t1)^2 / (4 cos phi))
          + sin(phi) log(m u sin(t2)^2 / (4 sin phi)).

``f_m`` has a unique interior maximum in closed form, which gives the
Ornstein-Zernike law

    G_m(x) ~ C(phi, m) r^(-1/2) exp(-r * rate(phi, m)).

The closed forms are continued to ``phi = 0``, where the second angle sits on
the boundary of its range; the continued values are the ``phi -> 0`` limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .duality import TemperaturePair
from .errors import DomainError
from .green import _lattice, ising_prefactor


def reduce_angle(phi: float) -> float:
    """Map any angle to ``[0, pi/4]`` using the symmetries of the square."""
    q = math.fmod(abs(float(phi)), 0.5 * math.pi)
    return 0.5 * math.pi - q if q > 0.25 * math.pi else q


@dataclass(frozen=True)
class SaddleData:
    """Closed-form saddle point of ``f_m`` and the assembled asymptotic.

    ``prefactor`` is ``C(phi, m)``, the r-independent constant, and ``value``
    is ``C r^(-1/2) exp(-r decay_rate)`` at the requested ``r``.
    ``hess_det`` is negative.
    """

    phi: float
    m: float
    u_star: float
    theta1_star: float
    theta2_star: float
    f_star: float
    hess_det: float
    prefactor: float
    decay_rate: float
    r: float
    value: float
    grad_norm: float


def _check_m(m: float) -> float:
    m = float(m)
    if not 0.0 < m < 1.0:
        raise DomainError(f"m={m!r} must lie in (0, 1)")
    return m


def saddle_u(phi: float, m: float) -> float:
    """``u* = sqrt((1 + sqrt(1 - (1 - m^2) cos^2 2phi)) / (1 - m^2))``."""
    one_m2 = (1.0 - m) * (1.0 + m)
    inner = math.sqrt(math.sin(2 * phi) ** 2 + (m * math.cos(2 * phi)) ** 2)
    return math.sqrt((1.0 + inner) / one_m2)


def f_m(u, t1, t2, phi: float, m: float):
    """The Laplace exponent ``f_m``; the ``sin phi`` term vanishes at ``phi = 0``."""
    c, s = math.cos(phi), math.sin(phi)
    u = np.asarray(u, dtype=float)
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    out = 0.5 * m * u * (np.cos(t1) + np.cos(t2)) - u
    out = out + c * np.log(m * u * np.sin(t1) ** 2 / (4.0 * c))
    if s > 0.0:
        out = out + s * np.log(m * u * np.sin(t2) ** 2 / (4.0 * s))
    return out


def _rate_and_shape(phi: float, m: float, u: float):
    c, s = math.cos(phi), math.sin(phi)
    a1 = 2.0 * c / (m * u)
    a2 = 2.0 * s / (m * u)
    rate = c * math.asinh(a1) + s * math.asinh(a2)
    shape = c * c * math.sqrt(a2 * a2 + 1.0) + s * s * math.sqrt(a1 * a1 + 1.0)
    return a1, a2, rate, shape


def _fd_gradient(fun, p, h=1e-6):
    g = np.empty(3)
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        g[i] = (fun(p + e) - fun(p - e)) / (2 * h)
    return g


def _fd_hessian_raw(fun, p, h):
    hm = np.empty((3, 3))
    f0 = fun(p)
    for i in range(3):
        ei = np.zeros(3)
        ei[i] = h
        hm[i, i] = (fun(p + ei) - 2 * f0 + fun(p - ei)) / (h * h)
        for j in range(i + 1, 3):
            ej = np.zeros(3)
            ej[j] = h
            v = (
                fun(p + ei + ej) - fun(p + ei - ej) - fun(p - ei + ej) + fun(p - ei - ej)
            ) / (4 * h * h)
            hm[i, j] = hm[j, i] = v
    return hm


def _fd_hessian(fun, p, h=1e-3):
    # one Richardson step cancels the O(h^2) truncation term
    return (4.0 * _fd_hessian_raw(fun, p, 0.5 * h) - _fd_hessian_raw(fun, p, h)) / 3.0


def saddle(phi: float, m: float, r: float = 1.0) -> SaddleData:
    """Closed-form critical point of ``f_m`` with its value and Hessian determinant.

    ``phi`` outside ``[0, pi/4]`` is symmetry-reduced first.  The gradient at
    the closed-form point is re-checked by central differences and reported
    as ``grad_norm``.
    """
    m = _check_m(m)
    phi = reduce_angle(phi)
    u = saddle_u(phi, m)
    a1, a2, rate, shape = _rate_and_shape(phi, m, u)
    # cos(theta) = sqrt(a^2 + 1) - a = exp(-arcsinh a)
    th1 = math.acos(math.exp(-math.asinh(a1)))
    th2 = math.acos(math.exp(-math.asinh(a2)))
    c, s = math.cos(phi), math.sin(phi)
    fstar = -rate - c - s
    det = -(2.0 * m / u) * shape
    pref = math.sqrt(u / (math.pi * m)) / math.sqrt(shape)

    def fun(p):
        return float(f_m(p[0], p[1], p[2], phi, m))

    grad = _fd_gradient(fun, np.array([u, th1, th2])) if th2 > 1e-5 else None
    if grad is None:
        # theta2* = 0 at phi = 0: f_m is even in theta2 there, so only the
        # first two components carry information
        grad = _fd_gradient(fun, np.array([u, th1, 1e-5]))
        grad[2] = 0.0
    value = pref / math.sqrt(r) * math.exp(-r * rate) if r > 0 else math.inf
    return SaddleData(
        phi, m, u, th1, th2, fstar, det, pref, rate, float(r), value,
        float(np.linalg.norm(grad)),
    )


def decay_rate(x, m: float) -> float:
    """Exponential decay rate ``r * rate(phi, m)`` of ``G_m`` at ``x``."""
    x1, x2 = (abs(float(v)) for v in x)
    r = math.hypot(x1, x2)
    if r == 0.0:
        return 0.0
    phi = reduce_angle(math.atan2(x2, x1))
    u = saddle_u(phi, _check_m(m))
    return r * _rate_and_shape(phi, m, u)[2]


def _polar(x):
    x1, x2 = _lattice(x)
    a, b = abs(x1), abs(x2)
    if b > a:
        a, b = b, a
    r = math.hypot(a, b)
    if r == 0.0:
        raise DomainError("asymptotics need x != 0")
    return r, math.atan2(b, a)


def oz_visits_asymptotic(x, m: float) -> float:
    """Ornstein-Zernike asymptotic of ``E[V_m(x)]`` as ``|x| -> inf``."""
    r, phi = _polar(x)
    m = _check_m(m)
    u = saddle_u(phi, m)
    _, _, rate, shape = _rate_and_shape(phi, m, u)
    log_val = 0.5 * math.log(u / (math.pi * m * r)) - 0.5 * math.log(shape) - r * rate
    return math.exp(log_val)


def oz_correlation_asymptotic(x, pair: TemperaturePair) -> float:
    """Ornstein-Zernike asymptotic of the subcritical two-point function.

    Multiplies :func:`oz_visits_asymptotic` by the Ising prefactor at
    ``pair.beta_low``; an asymptotic proxy, not an exact correlation.
    """
    return ising_prefactor(pair.beta_low) * oz_visits_asymptotic(x, pair.m)


def ising_prefactor_tanh(beta_low: float) -> float:
    """The same prefactor written as ``(...)^(1/4) / ((1 - tanh^4 b)^2 sinh 2b)``."""
    t = math.tanh(beta_low)
    return (math.sinh(2 * beta_low) ** -4 - 1.0) ** 0.25 / (
        (1.0 - t**4) ** 2 * math.sinh(2 * beta_low)
    )


# ---------------------------------------------------------------------------
# verification harness for the Laplace method


@dataclass(frozen=True)
class LaplaceCheck:
    """Numerically located maximum of ``f_m`` and its finite-difference Hessian."""

    point: np.ndarray
    f_max: float
    hessian: np.ndarray
    hess_det: float


def numeric_saddle(phi: float, m: float, grid: int = 20) -> LaplaceCheck:
    """Maximize ``f_m`` without using the closed forms.

    A coarse grid locates the basin, Nelder-Mead refines it, and a few Newton
    steps with finite-difference derivatives polish the point.
    """
    m = _check_m(m)
    phi = reduce_angle(phi)
    if phi == 0.0:
        raise DomainError("the maximum sits on the boundary at phi = 0")
    u_hi = 3.0 * math.sqrt(2.0 / ((1 - m) * (1 + m)))
    us = np.linspace(u_hi / grid, u_hi, grid)
    ts = np.linspace(math.pi / (grid + 1), math.pi * grid / (grid + 1), grid)
    U, T1, T2 = np.meshgrid(us, ts, ts, indexing="ij")
    vals = f_m(U, T1, T2, phi, m)
    i = np.unravel_index(np.argmax(vals), vals.shape)
    start = np.array([us[i[0]], ts[i[1]], ts[i[2]]])

    def neg(p):
        if p[0] <= 0 or not (0 < p[1] < math.pi) or not (0 < p[2] < math.pi):
            return math.inf
        return -float(f_m(p[0], p[1], p[2], phi, m))

    res = optimize.minimize(
        neg, start, method="Nelder-Mead",
        options={"xatol": 1e-11, "fatol": 1e-15, "maxiter": 20000, "maxfev": 40000},
    )
    p = res.x

    def fun(q):
        return -neg(q)

    for _ in range(4):
        g = _fd_gradient(fun, p, 1e-5)
        h = _fd_hessian(fun, p)
        step = np.linalg.solve(h, g)
        if np.max(np.abs(step)) > 1e-3:
            break
        p = p - step
    hess = _fd_hessian(fun, p)
    return LaplaceCheck(p, fun(p), hess, float(np.linalg.det(hess)))


def laplace_estimate(x, m: float) -> float:
    """Laplace approximation of ``G_m(x)`` built from the numeric harness.

    Uses the exact Bessel prefactor ``(r/pi) x1^x1 x2^x2 / (Gamma(x1+1/2)
    Gamma(x2+1/2))`` rather than its Stirling limit, and the numeric maximum
    and Hessian of ``f_m`` in ``(2 pi / r)^(3/2) exp(r f*) / sqrt(det(-H))``.
    """
    r, phi = _polar(x)
    a, b = r * math.cos(phi), r * math.sin(phi)
    chk = numeric_saddle(phi, m)
    log_pref = (
        math.log(r / math.pi)
        + (a * math.log(a) if a > 0 else 0.0)
        + (b * math.log(b) if b > 0 else 0.0)
        - math.lgamma(a + 0.5)
        - math.lgamma(b + 0.5)
    )
    log_int = 1.5 * math.log(2 * math.pi / r) + r * chk.f_max - 0.5 * math.log(
        -chk.hess_det
    )
    return math.exp(log_pref + log_int)

"""Logarithm of the modified Bessel function ``I_n`` for integer order.

Two regimes:

* small argument relative to the order: the ascending series
  ``I_n(z) = sum_k (z/2)^(n+2k) / (k! (n+k)!)`` summed in the log domain;
* otherwise the exponentially scaled ``scipy.special.ive``, which stays in
  range because ``I_n(z) e^{-z}`` only underflows when ``n^2 / z`` is huge.

Whenever ``ive`` underflows the series is used instead, so the result is
always finite for ``z > 0``.
"""

from __future__ import annotations

import numpy as np
from scipy import special

_SERIES_MAX_Z = 25.0
_TINY = 1e-280


def _log_series(n: int, z: np.ndarray) -> np.ndarray:
    out = np.full(z.shape, -np.inf)
    pos = z > 0
    if not pos.any():
        return out
    zp = z[pos]
    lhalf = np.log(0.5 * zp)
    # terms peak near k* = (sqrt(n^2 + z^2) - n) / 2
    kpeak = 0.5 * (np.sqrt(n * n + zp * zp) - n)
    kmax = int(np.max(kpeak + 12.0 * np.sqrt(kpeak + 1.0) + 40.0))
    k = np.arange(kmax + 1)
    logc = -(special.gammaln(k + 1.0) + special.gammaln(n + k + 1.0))
    terms = (n + 2.0 * k)[None, :] * lhalf[:, None] + logc[None, :]
    out[pos] = special.logsumexp(terms, axis=1)
    return out


def log_bessel_i(n: int, z) -> np.ndarray:
    """Return ``log I_n(z)`` for integer ``n`` and ``z >= 0``.

    ``log I_n(0)`` is ``0`` for ``n = 0`` and ``-inf`` otherwise.
    """
    n = abs(int(n))
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(z < 0):
        raise ValueError("argument must be non-negative")
    out = np.empty(z.shape)
    use_series = z <= _SERIES_MAX_Z
    big = ~use_series
    if big.any():
        scaled = special.ive(n, z[big])
        ok = scaled > _TINY
        vals = np.empty(scaled.shape)
        vals[ok] = np.log(scaled[ok]) + z[big][ok]
        vals[~ok] = np.nan
        out[big] = vals
        idx = np.flatnonzero(big)[~ok]
        use_series[idx] = True
    if use_series.any():
        out[use_series] = _log_series(n, z[use_series])
    if n == 0:
        out[z == 0] = 0.0
    return out[0] if scalar else out

"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba versions are used when numba imports and the environment variable
``WULFF_TENSION_DISABLE_NUMBA`` is unset (or ``0``).  Both paths compute the
same quantities in the same summation order; the Monte Carlo kernels draw
from the same counter-based stream and accumulate integers, so they agree
bit for bit.

Kernels
-------
walk_green_box(m, k_max)
    ``sum_k m^k P(S_k = x)`` for every ``x`` in the box ``|x|_inf <= k_max``
    by repeated nearest-neighbour averaging.
trapezoid_green(x1, x2, m, n)
    Tensor-product periodic trapezoid rule for the Fourier integral of the
    killed-walk Green function.
mc_chunk(x1, x2, m, seed, start, count, hit_only, max_steps)
    Simulate ``count`` killed walks with sample indices ``start, ...``.
    Returns ``(sum, sum_of_squares, n_truncated)`` as integers.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _numba_requested() -> bool:
    flag = os.environ.get("WULFF_TENSION_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and _numba_requested()

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_TWO_M53 = 1.0 / 9007199254740992.0


# ---------------------------------------------------------------------------
# numpy implementations


def _walk_green_box_np(m: float, k_max: int) -> np.ndarray:
    size = 2 * k_max + 1
    p = np.zeros((size, size))
    c = k_max
    p[c, c] = 1.0
    g = p.copy()
    nxt = np.zeros_like(p)
    mk = 1.0
    for k in range(1, k_max + 1):
        # support of S_{k-1} lies in |x|_inf <= k-1; the new one in <= k
        lo, hi = c - k, c + k + 1
        nxt[lo:hi, lo:hi] = 0.0
        blk = nxt[lo:hi, lo:hi]
        blk[1:, :] += p[lo : hi - 1, lo:hi]
        blk[:-1, :] += p[lo + 1 : hi, lo:hi]
        blk[:, 1:] += p[lo:hi, lo : hi - 1]
        blk[:, :-1] += p[lo:hi, lo + 1 : hi]
        blk *= 0.25
        mk *= m
        g[lo:hi, lo:hi] += mk * blk
        p, nxt = nxt, p
    return g


def _trapezoid_green_np(x1: int, x2: int, m: float, n: int) -> float:
    theta = -np.pi + 2.0 * np.pi * np.arange(n) / n
    ct = np.cos(theta)
    denom = 1.0 - 0.5 * m * (ct[:, None] + ct[None, :])
    w1 = np.cos(x1 * theta)
    w2 = np.cos(x2 * theta)
    # the integrand is even in each angle, so only the cos*cos part survives
    return float(w1 @ (1.0 / denom) @ w2) / (n * n)


def _mix_np(z):
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _lifetimes_np(keys, m, max_steps):
    w = _mix_np(keys + _GOLDEN)
    u = (w >> np.uint64(11)).astype(np.float64) * _TWO_M53
    if m == 0.0:
        life = np.zeros(len(keys), dtype=np.int64)
        return life, 0
    # 1 - u lies in (0, 1]; P(floor(log(1-u)/log m) >= k) = m^k
    raw = np.floor(np.log1p(-u) / math.log(m))
    trunc = int(np.count_nonzero(raw > max_steps))
    life = np.minimum(raw, max_steps).astype(np.int64)
    return life, trunc


def _mc_chunk_np(x1, x2, m, seed, start, count, hit_only, max_steps):
    idx = np.arange(start, start + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        keys = _mix_np(np.uint64(seed) + _GOLDEN * (idx + np.uint64(1)))
        life, trunc = _lifetimes_np(keys, m, max_steps)
        px = np.zeros(count, dtype=np.int64)
        py = np.zeros(count, dtype=np.int64)
        hits = np.zeros(count, dtype=np.int64)
        if x1 == 0 and x2 == 0:
            hits += 1
        alive = np.arange(count)
        if hit_only:
            alive = alive[hits[alive] == 0]
        step = 0
        word = np.zeros(count, dtype=np.uint64)
        while True:
            remaining = life[alive] - step
            dist = np.abs(px[alive] - x1) + np.abs(py[alive] - x2)
            keep = (remaining > 0) & (dist <= remaining)
            alive = alive[keep]
            if alive.size == 0:
                break
            if step % 32 == 0:
                word[alive] = _mix_np(
                    keys[alive] + _GOLDEN * np.uint64(step // 32 + 2)
                )
            d = ((word[alive] >> np.uint64(2 * (step % 32))) & np.uint64(3)).astype(
                np.int64
            )
            px[alive] += (d == 0).astype(np.int64) - (d == 1)
            py[alive] += (d == 2).astype(np.int64) - (d == 3)
            step += 1
            at = (px[alive] == x1) & (py[alive] == x2)
            hits[alive[at]] += 1
            if hit_only:
                alive = alive[~at]
    total = int(hits.sum())
    total_sq = int((hits * hits).sum())
    return total, total_sq, trunc


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:
    _nb = numba.njit(cache=True, nogil=True)

    @_nb
    def _walk_green_box_nb(m, k_max):
        size = 2 * k_max + 1
        p = np.zeros((size, size))
        nxt = np.zeros((size, size))
        c = k_max
        p[c, c] = 1.0
        g = p.copy()
        mk = 1.0
        for k in range(1, k_max + 1):
            lo = c - k
            hi = c + k + 1
            mk *= m
            for i in range(lo, hi):
                for j in range(lo, hi):
                    # same association order as the numpy path
                    v = 0.0
                    if i > lo:
                        v += p[i - 1, j]
                    if i < hi - 1:
                        v += p[i + 1, j]
                    if j > lo:
                        v += p[i, j - 1]
                    if j < hi - 1:
                        v += p[i, j + 1]
                    v *= 0.25
                    nxt[i, j] = v
                    g[i, j] += mk * v
            p, nxt = nxt, p
        return g

    @_nb
    def _trapezoid_green_nb(x1, x2, m, n):
        theta = np.empty(n)
        for i in range(n):
            theta[i] = -np.pi + 2.0 * np.pi * i / n
        ct = np.cos(theta)
        w1 = np.cos(x1 * theta)
        w2 = np.cos(x2 * theta)
        total = 0.0
        for i in range(n):
            row = 0.0
            for j in range(n):
                row += w2[j] / (1.0 - 0.5 * m * (ct[i] + ct[j]))
            total += w1[i] * row
        return total / (n * n)

    @_nb
    def _mix_nb(z):
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))

    @_nb
    def _mc_chunk_nb(x1, x2, m, seed, start, count, hit_only, max_steps):
        total = 0
        total_sq = 0
        trunc = 0
        log_m = math.log(m) if m > 0.0 else 0.0
        for t in range(count):
            idx = np.uint64(start + t)
            key = _mix_nb(np.uint64(seed) + _GOLDEN * (idx + np.uint64(1)))
            w = _mix_nb(key + _GOLDEN)
            u = np.float64(w >> np.uint64(11)) * _TWO_M53
            if m == 0.0:
                life = 0
            else:
                raw = math.floor(math.log1p(-u) / log_m)
                if raw > max_steps:
                    trunc += 1
                    life = max_steps
                else:
                    life = np.int64(raw)
            px = 0
            py = 0
            hits = 1 if (x1 == 0 and x2 == 0) else 0
            step = 0
            word = np.uint64(0)
            while not (hit_only and hits > 0):
                remaining = life - step
                if remaining <= 0 or abs(px - x1) + abs(py - x2) > remaining:
                    break
                if step % 32 == 0:
                    word = _mix_nb(key + _GOLDEN * np.uint64(step // 32 + 2))
                d = (word >> np.uint64(2 * (step % 32))) & np.uint64(3)
                if d == 0:
                    px += 1
                elif d == 1:
                    px -= 1
                elif d == 2:
                    py += 1
                else:
                    py -= 1
                step += 1
                if px == x1 and py == x2:
                    hits += 1
            total += hits
            total_sq += hits * hits
        return total, total_sq, trunc


NUMPY_KERNELS = {
    "walk_green_box": _walk_green_box_np,
    "trapezoid_green": _trapezoid_green_np,
    "mc_chunk": _mc_chunk_np,
}

NUMBA_KERNELS = (
    {
        "walk_green_box": _walk_green_box_nb,
        "trapezoid_green": _trapezoid_green_nb,
        "mc_chunk": _mc_chunk_nb,
    }
    if HAVE_NUMBA
    else {}
)


def backend() -> str:
    """Name of the active backend, ``"numba"`` or ``"numpy"``."""
    return "numba" if USE_NUMBA else "numpy"


def _active():
    return NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS


def walk_green_box(m: float, k_max: int) -> np.ndarray:
    return _active()["walk_green_box"](float(m), int(k_max))


def trapezoid_green(x1: int, x2: int, m: float, n: int) -> float:
    return float(_active()["trapezoid_green"](int(x1), int(x2), float(m), int(n)))


def mc_chunk(x1, x2, m, seed, start, count, hit_only, max_steps):
    out = _active()["mc_chunk"](
        int(x1), int(x2), float(m), np.uint64(seed % 2**64), int(start), int(count),
        bool(hit_only), int(max_steps),
    )
    return int(out[0]), int(out[1]), int(out[2])

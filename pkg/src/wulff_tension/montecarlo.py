"""Direct simulation of the geometrically killed random walk.

Each sample owns a counter-based random stream keyed by ``(seed, sample
index)``: the lifetime comes from one uniform by inversion, and the steps are
read two bits at a time from further hashed words.  Per-sample statistics are
integers, so the aggregated sums do not depend on how samples are split
among workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .errors import DomainError
from .green import _lattice
from .parallel import ordered_map

CHUNK = 1 << 16
MAX_STEPS = 10**8


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo mean with its standard error.

    ``truncated`` counts walks whose lifetime exceeded the hard cap of
    ``10**8`` steps and was clipped.
    """

    mean: float
    stderr: float
    n_samples: int
    seed: int
    statistic: str
    truncated: int = 0


def _run(x, m, n_samples, seed, hit_only, workers):
    x1, x2 = _lattice(x)
    m = float(m)
    if not 0.0 <= m < 1.0:
        raise DomainError(f"survival probability m={m!r} must lie in [0, 1)")
    n_samples = int(n_samples)
    if n_samples < 1:
        raise DomainError("n_samples must be at least 1")
    seed = int(seed) % 2**64

    starts = range(0, n_samples, CHUNK)

    def one(start):
        count = min(CHUNK, n_samples - start)
        return kernels.mc_chunk(x1, x2, m, seed, start, count, hit_only, MAX_STEPS)

    parts = ordered_map(one, starts, workers)
    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    trunc = sum(p[2] for p in parts)

    n = n_samples
    mean = total / n
    if n > 1:
        # exact integer numerator for the unbiased variance
        var = (n * total_sq - total * total) / (n * (n - 1))
        stderr = math.sqrt(max(var, 0.0) / n)
    else:
        stderr = 0.0
    return McEstimate(
        mean, stderr, n, seed, "hit" if hit_only else "visits", trunc
    )


def simulate_visits(x, m: float, n_samples: int, seed: int = 0,
                    workers: int | None = None) -> McEstimate:
    """Estimate ``E[V_m(x)]``, visits to ``x`` counted from time 0."""
    return _run(x, m, n_samples, seed, False, workers)


def simulate_hit(x, m: float, n_samples: int, seed: int = 0,
                 workers: int | None = None) -> McEstimate:
    """Estimate ``P(walk reaches x before it is killed) = E[m^H(x)]``."""
    x1, x2 = _lattice(x)
    if x1 == 0 and x2 == 0:
        raise DomainError("target must differ from the starting point")
    return _run(x, m, n_samples, seed, True, workers)

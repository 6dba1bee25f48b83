"""Near-critical limits of the surface tension and of the killed walk.

Two constants are checked here:

* isotropy: ``tau_beta(x) / ((beta - beta_c) |x|) -> 4`` uniformly in the
  direction as ``beta`` decreases to ``beta_c``;
* moderate deviations: ``(n sqrt(lambda))^-1 log E[exp(-lambda H(n x))] ->
  -2 |x|`` as ``n -> inf`` and ``lambda -> 0`` with ``n^2 lambda -> inf``.

The Ising joint limit itself is not simulated; these are the two closed-form
and random-walk statements it reduces to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .duality import BETA_C, make_pair, pair_from_lambda
from .errors import DomainError
from .green import hitting_laplace
from .tension import Direction, tau


@dataclass(frozen=True)
class ScalingRow:
    eps: float
    direction: Direction
    ratio: float
    gap: float


def farey_directions(order: int) -> list[tuple[int, int]]:
    """Primitive lattice vectors ``(q, p)`` with ``p/q`` in the Farey sequence ``F_order``.

    These cover the first octant ``0 <= angle <= pi/4``.
    """
    fracs = sorted({Fraction(p, q) for q in range(1, order + 1) for p in range(q + 1)})
    return [(f.denominator, f.numerator) for f in fracs]


def direction_set(n: int) -> list[Direction]:
    """``n`` unit directions: Farey lattice directions plus uniform angles.

    About a quarter are primitive lattice directions in the first octant, the
    rest are equally spaced angles on the full circle.
    """
    if n < 8:
        raise DomainError("need at least 8 directions")
    n_lattice = n // 4
    order = 1
    while len(farey_directions(order + 1)) <= n_lattice:
        order += 1
    lattice = farey_directions(order)[:n_lattice]
    n_uniform = n - len(lattice)
    out = []
    for q, p in lattice:
        r = math.hypot(q, p)
        out.append(Direction.of((q / r, p / r)))
    for k in range(n_uniform):
        a = 2.0 * math.pi * k / n_uniform
        out.append(Direction.of((math.cos(a), math.sin(a))))
    return out


def isotropy_ratio(x, eps: float) -> float:
    """``tau_beta(x) / (eps |x|)`` at ``beta = beta_c + eps``."""
    d = Direction.of(x)
    return tau(d, make_pair(BETA_C + eps)).tau / (eps * d.r)


def isotropy_sweep(eps_list, n_directions: int = 64) -> list[ScalingRow]:
    """Isotropy ratios for each ``eps`` over a fixed direction set.

    Every row carries the spread (max minus min) of its ``eps`` block.
    """
    dirs = direction_set(n_directions)
    rows = []
    for eps in eps_list:
        eps = float(eps)
        if not eps > 0:
            raise DomainError("eps must be positive")
        ratios = [isotropy_ratio(d, eps) for d in dirs]
        gap = max(ratios) - min(ratios)
        rows.extend(ScalingRow(eps, d, r, gap) for d, r in zip(dirs, ratios))
    return rows


def max_isotropy_error(rows) -> dict[float, float]:
    """``max |ratio - 4|`` per ``eps`` block of an :func:`isotropy_sweep`."""
    out: dict[float, float] = {}
    for row in rows:
        out[row.eps] = max(out.get(row.eps, 0.0), abs(row.ratio - 4.0))
    return out


def moderate_rate(lam: float) -> float:
    """Exact per-``sqrt(lambda)`` decay rate of ``E[exp(-lambda H(n e1))]``.

    ``arcsinh(s) / sqrt(lambda)`` with ``sqrt(1 + s^2) = 2 e^lambda - 1``,
    i.e. ``arccosh(2 e^lambda - 1) / sqrt(lambda)``.
    """
    lam = float(lam)
    if not lam > 0:
        raise DomainError("lambda must be positive")
    # 2 e^lam - 1 = 1 + w with w = 2 expm1(lam); arccosh(1 + w) = log1p(w + sqrt(w (w + 2)))
    w = 2.0 * math.expm1(lam)
    return math.log1p(w + math.sqrt(w * (w + 2.0))) / math.sqrt(lam)


def md_empirical(x, lam: float, n: int, method: str = "bessel") -> float:
    """``(n sqrt(lambda))^-1 log E[exp(-lambda H(n x))]`` from exact Green values."""
    lam = float(lam)
    if not lam > 0:
        raise DomainError("lambda must be positive")
    x1, x2 = x
    target = (int(n) * int(x1), int(n) * int(x2))
    h = hitting_laplace(target, math.exp(-lam), method)
    return math.log(h.value) / (n * math.sqrt(lam))


def regime_index(n: float, beta: float) -> float:
    """``(n / log n) (beta - beta_c)``, which must diverge in the joint limit."""
    if n <= 1:
        raise DomainError("n must exceed 1")
    return n / math.log(n) * (beta - BETA_C)


def in_joint_regime(n: float, beta: float, threshold: float = 10.0) -> bool:
    """Label a schedule point as inside the joint-limit regime.

    Only a heuristic cut on :func:`regime_index`; used to annotate sweeps.
    """
    return regime_index(n, beta) >= threshold


def moderate_sweep(lams, x=(1, 0), ns=()) -> list[dict]:
    """Rows of ``moderate_rate`` and, for each ``n``, ``md_empirical``."""
    rows = []
    for lam in lams:
        base = {"lambda": float(lam), "m": pair_from_lambda(lam).m,
                "moderate_rate": moderate_rate(lam)}
        if not ns:
            rows.append(base)
        for n in ns:
            row = dict(base)
            row["n"] = int(n)
            row["n_sqrt_lambda"] = n * math.sqrt(lam)
            row["md_empirical"] = md_empirical(x, lam, n)
            rows.append(row)
    return rows


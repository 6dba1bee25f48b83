"""Command-line interface: sweeps and cross-checks emitted as CSV or JSON.

Every list-valued option spans one axis of a Cartesian grid; the command is
evaluated once per grid cell and rows are written in input order.

Exit status: 0 success, 1 usage error, 2 domain error, 3 validation failure
(independent routes disagree beyond tolerance).
"""

from __future__ import annotations

import argparse
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .asymptotics import oz_visits_asymptotic, saddle
from .duality import (
    BETA_C,
    make_pair,
    pair_from_beta_low,
    pair_from_lambda,
    pair_from_m,
)
from .errors import DomainError
from .green import (
    METHODS,
    _green_origin,
    green,
    green_bessel,
    green_series,
    hitting_laplace,
    ising_prefactor,
)
from .montecarlo import simulate_hit, simulate_visits
from .parallel import ordered_map
from .rate import log_mgf, tau_variational
from .scaling import (
    direction_set,
    md_empirical,
    moderate_rate,
    regime_index,
)
from .tension import tau, wulff_boundary

MAX_CELLS = 10**6
COMMANDS = ("tension", "wulff", "green", "mc", "asymptotics", "scaling")
TEMPERATURE_KEYS = ("beta", "beta_low", "m", "lambda")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument parsing


def _floats(text: str) -> list[float]:
    """``a,b,c`` or ``start:stop:num`` (inclusive linspace)."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"bad range {text!r}")
        lo, hi, num = float(parts[0]), float(parts[1]), int(parts[2])
        return [float(v) for v in np.linspace(lo, hi, num)]
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _points(text: str) -> list[tuple[int, int]]:
    """``a,b`` or several points separated by ``;``."""
    out = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        vals = chunk.split(",")
        if len(vals) != 2:
            raise argparse.ArgumentTypeError(f"expected a,b got {chunk!r}")
        try:
            out.append((int(vals[0]), int(vals[1])))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"lattice coordinates must be integers, got {chunk!r}"
            ) from None
    if not out:
        raise argparse.ArgumentTypeError("empty point list")
    return out


def _methods(choices):
    def parse(text):
        vals = [v.strip() for v in text.split(",") if v.strip()]
        bad = [v for v in vals if v not in choices]
        if bad or not vals:
            raise argparse.ArgumentTypeError(
                f"methods must be among {','.join(choices)}"
            )
        return vals

    return parse


def _add_common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.add_argument("--tol", type=float, default=None, help="validation tolerance")


def _add_temperature(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--beta", type=_floats, help="supercritical inverse temperature(s)")
    g.add_argument("--beta-low", type=_floats, help="subcritical inverse temperature(s)")
    g.add_argument("--m", type=_floats, help="walk survival probability(ies)")
    g.add_argument("--lambda", dest="lambda_", type=_floats, help="kill rate(s)")
    return g


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wulff-tension", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"wulff-tension {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tension", help="surface tension, closed form vs variational")
    _add_temperature(p)
    p.add_argument("--x", type=_points, default=[(1, 0)])
    _add_common(p)

    p = sub.add_parser("wulff", help="Wulff boundary points")
    _add_temperature(p)
    p.add_argument("--points", type=int, default=64)
    _add_common(p)

    p = sub.add_parser("green", help="Green function by several methods")
    _add_temperature(p)
    p.add_argument("--x", type=_points, default=[(1, 0)])
    p.add_argument("--methods", type=_methods(METHODS), default=list(METHODS))
    p.add_argument("--grid", type=int, default=256, help="quadrature nodes per axis")
    p.add_argument("--kmax", type=int, default=None, help="series truncation")
    _add_common(p)

    p = sub.add_parser("mc", help="Monte Carlo visits / hitting estimates")
    _add_temperature(p)
    p.add_argument("--x", type=_points, default=[(1, 0)])
    p.add_argument("--methods", type=_methods(("visits", "hit")), default=["visits", "hit"])
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("asymptotics", help="saddle point and Ornstein-Zernike ratio")
    _add_temperature(p)
    where = p.add_mutually_exclusive_group()
    where.add_argument("--x", type=_points)
    where.add_argument("--phi", type=_floats)
    _add_common(p)

    p = sub.add_parser("scaling", help="isotropy and moderate-deviation limits")
    g = _add_temperature(p, required=False)
    g.add_argument("--eps", type=_floats, help="beta - beta_c values")
    p.add_argument("--directions", type=int, default=64)
    p.add_argument("--n", type=_ints, default=None, help="scales for md_empirical")
    p.add_argument("--x", type=_points, default=[(1, 0)])
    _add_common(p)
    return parser


# ---------------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    command: str
    params: dict
    output_path: str = "-"
    format: str = "csv"
    seed: int | None = None
    tol: float | None = None
    echo: list = field(default_factory=list)


def _fmt_value(v) -> str:
    if isinstance(v, list):
        if v and isinstance(v[0], tuple):
            return ";".join(",".join(str(c) for c in p) for p in v)
        return ",".join(_fmt_value(u) for u in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = {
        k: v
        for k, v in vars(ns).items()
        if k not in ("command", "format", "out", "tol", "seed") and v is not None
    }
    if "lambda_" in params:
        params["lambda"] = params.pop("lambda_")
    cfg = RunConfig(
        command=ns.command,
        params=params,
        output_path=ns.out,
        format=ns.format,
        seed=getattr(ns, "seed", None),
        tol=ns.tol,
    )
    echo = [("command", ns.command)]
    echo += [(k, _fmt_value(params[k])) for k in sorted(params)]
    echo += [("format", cfg.format)]
    if cfg.seed is not None:
        echo.append(("seed", str(cfg.seed)))
    echo.append(("tol", "default" if cfg.tol is None else repr(cfg.tol)))
    cfg.echo = echo
    return cfg


def _pairs(params) -> list:
    if "beta" in params:
        return [make_pair(b) for b in params["beta"]]
    if "beta_low" in params:
        return [pair_from_beta_low(b) for b in params["beta_low"]]
    if "m" in params:
        return [pair_from_m(v) for v in params["m"]]
    if "lambda" in params:
        return [pair_from_lambda(v) for v in params["lambda"]]
    raise UsageError("a temperature parameter is required")


def _survivals(params) -> list[float]:
    # --m is taken verbatim so that m = 0 stays available
    if "m" in params:
        return list(params["m"])
    return [p.m for p in _pairs(params)]


# ---------------------------------------------------------------------------
# commands; each cell function returns (rows, failure messages)


def _cells_tension(cfg):
    tol = 1e-8 if cfg.tol is None else cfg.tol
    cols = ["beta_high", "beta_low", "m", "lambda", "x1", "x2", "s", "tau",
            "tau_variational", "abs_diff"]
    cells = list(itertools.product(_pairs(cfg.params), cfg.params["x"]))

    def run(cell):
        pair, x = cell
        tv = tau(x, pair)
        var = tau_variational(x, pair)
        diff = abs(tv.tau - var)
        fails = [f"tension mismatch at x={x}: {diff:.3g}"] if diff > tol else []
        return [[pair.beta_high, pair.beta_low, pair.m, pair.lam, x[0], x[1], tv.s,
                 tv.tau, var, diff]], fails

    return cols, cells, run


def _cells_wulff(cfg):
    tol = 1e-10 if cfg.tol is None else cfg.tol
    cols = ["beta_high", "m", "lambda", "index", "angle", "y1", "y2", "log_mgf",
            "degenerate"]
    npts = cfg.params["points"]
    if npts < 4:
        raise DomainError("--points must be at least 4")
    cells = _pairs(cfg.params)

    def run(pair):
        shape = wulff_boundary(pair, npts)
        rows, fails = [], []
        for i, (ang, (y1, y2)) in enumerate(zip(shape.angles, shape.points)):
            lv = log_mgf((y1, y2))
            if abs(lv - pair.lam) > tol:
                fails.append(f"level-set residual {lv - pair.lam:.3g} at point {i}")
            rows.append([pair.beta_high, pair.m, pair.lam, i, float(ang), float(y1),
                         float(y2), lv, int(shape.degenerate)])
        return rows, fails

    return cols, cells, run


def _cells_green(cfg):
    tol = 1e-8 if cfg.tol is None else cfg.tol
    cols = ["x1", "x2", "m", "method", "value", "err_est", "param"]
    methods = cfg.params["methods"]
    cells = list(itertools.product(_survivals(cfg.params), cfg.params["x"]))

    def run(cell):
        m, x = cell
        vals = []
        for meth in methods:
            if meth == "series":
                gv = green_series(x, m, cfg.params.get("kmax"))
            elif meth == "quadrature":
                gv = green(x, m, "quadrature", n_grid=cfg.params["grid"])
            elif x == (0, 0):
                gv = _green_origin(m, "bessel")
            else:
                gv = green_bessel(x, m)
            vals.append(gv)
        fails = []
        for a, b in itertools.combinations(vals, 2):
            bound = max(tol, 3.0 * max(a.err_est, b.err_est))
            if abs(a.value - b.value) > bound:
                fails.append(
                    f"{a.method} vs {b.method} at x={x}, m={m}: "
                    f"{abs(a.value - b.value):.3g} > {bound:.3g}"
                )
        rows = [
            [x[0], x[1], m, gv.method, gv.value, gv.err_est,
             ";".join(f"{k}={v}" for k, v in sorted(gv.params.items()))]
            for gv in vals
        ]
        return rows, fails

    return cols, cells, run


def _cell_seed(seed: int, index: int) -> int:
    # splitmix64 finalizer of (seed, index)
    z = (seed + 0x9E3779B97F4A7C15 * (index + 1)) % 2**64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) % 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) % 2**64
    return z ^ (z >> 31)


def _cells_mc(cfg):
    zmax = 4.0 if cfg.tol is None else cfg.tol
    cols = ["x1", "x2", "m", "statistic", "mean", "stderr", "n_samples", "seed",
            "truncated", "reference", "z_score"]
    seed = cfg.params["seed"] if "seed" in cfg.params else (cfg.seed or 0)
    combos = itertools.product(_survivals(cfg.params), cfg.params["x"],
                               cfg.params["methods"])
    # the hitting time of the starting point is identically zero; skip it
    combos = [c for c in combos if not (c[2] == "hit" and c[1] == (0, 0))]
    cells = list(enumerate(combos))
    n = cfg.params["samples"]
    if n < 1:
        raise DomainError("--samples must be positive")

    def run(cell):
        i, (m, x, stat) = cell
        s = _cell_seed(seed, i)
        # MC parallelism is across cells; one worker per cell keeps it simple
        if stat == "visits":
            est = simulate_visits(x, m, n, s, workers=1)
            ref = green_series(x, m).value
        else:
            est = simulate_hit(x, m, n, s, workers=1)
            ref = hitting_laplace(x, m).value if m > 0 else 0.0
        se = est.stderr
        if se == 0.0:
            # no events seen: fall back to the Poisson scale of the reference
            se = math.sqrt(max(ref, 0.0) / est.n_samples)
        if se > 0:
            z = (est.mean - ref) / se
        else:
            z = 0.0 if est.mean == ref else math.inf
        fails = [f"MC z-score {z:.3g} at x={x}, m={m}, {stat}"] if abs(z) > zmax else []
        return [[x[0], x[1], m, stat, est.mean, est.stderr, est.n_samples, est.seed,
                 est.truncated, ref, z]], fails

    return cols, cells, run


def _cells_asymptotics(cfg):
    ms = _survivals(cfg.params)
    if "phi" in cfg.params:
        cols = ["phi", "m", "u_star", "theta1_star", "theta2_star", "f_star",
                "hess_det", "decay_rate", "prefactor", "grad_norm"]
        cells = list(itertools.product(ms, cfg.params["phi"]))

        def run(cell):
            m, phi = cell
            sd = saddle(phi, m)
            return [[sd.phi, m, sd.u_star, sd.theta1_star, sd.theta2_star, sd.f_star,
                     sd.hess_det, sd.decay_rate, sd.prefactor, sd.grad_norm]], []

        return cols, cells, run

    xs = cfg.params.get("x") or [(10, 0), (20, 0), (40, 0)]
    cols = ["x1", "x2", "r", "phi", "m", "u_star", "theta1_star", "theta2_star",
            "f_star", "hess_det", "decay_rate", "oz_visits", "green_bessel", "ratio",
            "abs_ratio_error", "ising_prefactor", "oz_correlation"]
    cells = list(itertools.product(ms, xs))

    def run(cell):
        m, x = cell
        r = math.hypot(*x)
        sd = saddle(math.atan2(abs(x[1]), abs(x[0])), m, r)
        oz = oz_visits_asymptotic(x, m)
        gb = green_bessel(x, m).value
        pref = ising_prefactor(pair_from_m(m).beta_low)
        ratio = oz / gb
        return [[x[0], x[1], r, sd.phi, m, sd.u_star, sd.theta1_star, sd.theta2_star,
                 sd.f_star, sd.hess_det, sd.decay_rate, oz, gb, ratio,
                 abs(ratio - 1.0), pref, pref * oz]], []

    return cols, cells, run


def _cells_scaling(cfg):
    p = cfg.params
    if "lambda" in p or "m" in p:
        lams = [pair.lam for pair in _pairs(p)] if "m" in p else list(p["lambda"])
        ns = p.get("n") or [None]
        x = p["x"][0]
        cols = ["lambda", "m", "moderate_rate", "n", "n_sqrt_lambda", "md_empirical",
                "regime_index"]
        cells = list(itertools.product(lams, ns))

        def run(cell):
            lam, n = cell
            pair = pair_from_lambda(lam)
            rate = moderate_rate(lam)
            if n is None:
                return [[lam, pair.m, rate, "", "", "", ""]], []
            md = md_empirical(x, lam, n)
            return [[lam, pair.m, rate, n, n * math.sqrt(lam), md,
                     regime_index(n, pair.beta_high)]], []

        return cols, cells, run

    if "eps" in p:
        eps_list = list(p["eps"])
    elif any(k in p for k in ("beta", "beta_low")):
        eps_list = [pair.eps for pair in _pairs(p)]
    else:
        eps_list = [1e-2, 1e-3, 1e-4]
    dirs = direction_set(p["directions"])
    cols = ["eps", "index", "x1", "x2", "phi", "ratio", "gap", "max_err"]

    def run(eps):
        if not eps > 0:
            raise DomainError("eps must be positive")
        pair = make_pair(BETA_C + eps)
        ratios = [tau(d, pair).tau / (eps * d.r) for d in dirs]
        gap = max(ratios) - min(ratios)
        err = max(abs(r - 4.0) for r in ratios)
        return [[eps, i, d.x1, d.x2, d.phi, r, gap, err]
                for i, (d, r) in enumerate(zip(dirs, ratios))], []

    return cols, eps_list, run


_BUILDERS = {
    "tension": _cells_tension,
    "wulff": _cells_wulff,
    "green": _cells_green,
    "mc": _cells_mc,
    "asymptotics": _cells_asymptotics,
    "scaling": _cells_scaling,
}


# ---------------------------------------------------------------------------
# output


def _csv_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def render(cfg: RunConfig, columns, rows) -> str:
    header = f"wulff-tension v{__version__}"
    if cfg.format == "json":
        doc = {
            "header": header,
            "config": dict(cfg.echo),
            "columns": columns,
            "rows": [[_json_cell(v) for v in row] for row in rows],
        }
        return json.dumps(doc) + "\n"
    buf = io.StringIO()
    buf.write(f"# {header}\n")
    for k, v in cfg.echo:
        buf.write(f"# {k}={v}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_csv_cell(v) for v in row) + "\n")
    return buf.getvalue()


def _json_cell(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def run(cfg: RunConfig) -> tuple[int, str, list[str]]:
    """Execute ``cfg``; return ``(status, rendered output, messages)``."""
    try:
        columns, cells, fn = _BUILDERS[cfg.command](cfg)
        if len(cells) > MAX_CELLS:
            return 1, "", [f"grid has {len(cells)} cells, limit is {MAX_CELLS}"]
        results = ordered_map(fn, cells)
    except DomainError as exc:
        return 2, "", [f"domain error: {exc}"]
    except UsageError as exc:
        return 1, "", [str(exc)]
    rows = [row for r, _ in results for row in r]
    fails = [msg for _, f in results for msg in f]
    text = render(cfg, columns, rows)
    return (3 if fails else 0), text, fails


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = config_from_args(ns)
    status, text, messages = run(cfg)
    for msg in messages:
        print(msg, file=sys.stderr)
    if text:
        if cfg.output_path == "-":
            sys.stdout.write(text)
        else:
            with open(cfg.output_path, "w", newline="") as fh:
                fh.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

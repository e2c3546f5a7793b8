"""Command-line surface: symbol probes, kernel tables, transform inversion,
modal relaxation, diffusion runs, sensitivity sweeps, and a self-test.

Outputs are CSV (or a JSON mirror) written atomically (temp file + rename),
with a header comment block carrying version, parameters, contour size, grid
spec and metric definitions, and all floats printed with 10 significant
digits so identical configurations produce byte-identical files.

Exit codes: 0 ok, 2 usage, 3 domain, 4 convergence/accuracy, 5 I/O. The
WFRAC_THREADS environment variable caps internal parallelism (0 = auto).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass

import numpy as np

from . import __version__
from .diffusion import (
    DiffusionSetup,
    MetricConfig,
    SlopeDefinition,
    decay_metrics,
    default_sweep_grid,
    energy,
    initial_energy,
    make_energy_fn,
    project_initial,
    run_diffusion,
    sensitivity_sweep,
)
from .errors import (
    AccuracyError,
    AdmissibilityError,
    ConvergenceError,
    DomainError,
    NoCrossingError,
    UsageError,
    WfracError,
)
from .grid import SampledFunction, TimeGrid
from .kernels import eval_k, eval_w, ftc_roundtrip_residual, kernel_table
from .laplace import TalbotConfig, invert
from .resolvent import ModalProblem, initial_value_gap, solve_mode
from .special import gamma_fn, mittag_leffler
from .symbol import (
    FracParams,
    convexity_probe_at_origin,
    eval_h,
    eval_phi_real,
    low_freq_exponent_estimate,
)

__all__ = ["RunConfig", "parse_args", "run", "main"]

COMMANDS = ("symbol", "kernel", "invert", "mode", "diffuse", "sweep", "selftest")

_PAIRS = ("const", "ramp", "exp", "power", "ml")


@dataclass(frozen=True)
class RunConfig:
    """Fully validated run description; no computation happens at parse time."""

    command: str
    alphas: tuple[float, ...] = (0.5,)
    betas: tuple[float, ...] = (0.0,)
    talbot: TalbotConfig = TalbotConfig()
    grid_kind: str = "default"
    t_min: float | None = None
    t_max: float | None = None
    n_t: int | None = None
    slope_def: SlopeDefinition = SlopeDefinition.LOG10E_VS_T
    fit_window: tuple[float, float] = (0.1, 1.0)
    out: str | None = None
    fmt: str = "csv"
    # command-specific knobs
    pair: str = "exp"
    pair_a: float = 1.0
    pair_rho: float = 0.5
    lam: float = 1.0
    u0_value: float = 1.0
    u0_profile: str = "sine"
    n_modes: int | None = None
    t_single: float | None = None
    per_mode: bool = False
    allow_experimental: bool = False

    @property
    def params(self) -> FracParams:
        return FracParams(self.alphas[0], self.betas[0])


def _parse_float_list(text: str, flag: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"{flag} expects comma-separated numbers, got {text!r}") from exc
    if not vals:
        raise UsageError(f"{flag} got an empty list")
    return vals


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wfrac",
        description="two-parameter fractional operator toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp: argparse.ArgumentParser, single_ab: bool = True) -> None:
        sp.add_argument("--alpha", default=None, help="fractional order(s) in (0,1)")
        sp.add_argument("--beta", default=None, help="modulation parameter(s) >= 0")
        sp.add_argument("--n-talbot", type=int, default=24, help="Talbot nodes (even, >= 8)")
        sp.add_argument("--tmin", type=float, default=None)
        sp.add_argument("--tmax", type=float, default=None)
        sp.add_argument("--nt", type=int, default=None)
        sp.add_argument("--grid", choices=("uniform", "graded"), default=None)
        sp.add_argument("--out", default=None, help="output path (default <command>.<fmt>)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")

    sp = sub.add_parser("symbol", help="tabulate the symbol and its auxiliary factor")
    add_common(sp)

    sp = sub.add_parser("kernel", help="tabulate memory/inverse kernels as CSV")
    add_common(sp)

    sp = sub.add_parser("invert", help="invert a built-in reference transform")
    add_common(sp)
    sp.add_argument("--pair", choices=_PAIRS, default="exp")
    sp.add_argument("--a", type=float, default=1.0, help="pole for the exp pair")
    sp.add_argument("--rho", type=float, default=0.5, help="exponent for the power pair")
    sp.add_argument("--lam", type=float, default=1.0, help="eigenvalue for the ml pair")
    sp.add_argument("--t", type=float, default=None, help="single inversion time")

    sp = sub.add_parser("mode", help="solve one spectral mode")
    add_common(sp)
    sp.add_argument("--lam", type=float, default=1.0, help="eigenvalue >= 0")
    sp.add_argument("--u0", type=float, default=1.0, help="initial coefficient")
    sp.add_argument(
        "--allow-beta-gt-1",
        action="store_true",
        help="run beta > 1 anyway; results are tagged experimental",
    )

    sp = sub.add_parser("diffuse", help="run the spectral diffusion model")
    add_common(sp)
    sp.add_argument("--modes", type=int, default=None, help="spectral truncation")
    sp.add_argument("--u0", choices=("sine", "parabola"), default="sine", dest="u0_profile")
    sp.add_argument("--per-mode", action="store_true", help="emit per-mode columns")
    sp.add_argument("--slope-def", choices=[d.value for d in SlopeDefinition], default=None)
    sp.add_argument("--fit-window", default=None, help="a,b fit window for the slope")

    sp = sub.add_parser("sweep", help="(alpha, beta) sensitivity sweep")
    add_common(sp, single_ab=False)
    sp.add_argument("--slope-def", choices=[d.value for d in SlopeDefinition], default=None)
    sp.add_argument("--fit-window", default=None, help="a,b fit window for the slope")

    sub.add_parser("selftest", help="run the built-in oracle suites")
    return parser


def parse_args(argv: list[str]) -> RunConfig:
    """Deterministic parse; raises UsageError for anything malformed."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        raise UsageError("invalid command line (see usage above)") from exc

    if ns.command == "selftest":
        return RunConfig(command="selftest")

    alphas = _parse_float_list(ns.alpha, "--alpha") if ns.alpha is not None else None
    betas = _parse_float_list(ns.beta, "--beta") if ns.beta is not None else None
    if ns.command == "sweep":
        alphas = alphas or (0.3, 0.5, 0.9)
        betas = betas or (0.0, 0.3, 0.5, 0.7, 1.0)
    else:
        alphas = alphas or (0.5,)
        betas = betas or (0.0,)
        if len(alphas) != 1 or len(betas) != 1:
            raise UsageError(f"{ns.command} takes a single --alpha and --beta")

    for a in alphas:
        if not 0.0 < a < 1.0:
            raise UsageError(f"--alpha must lie in (0,1), got {a:g}")
    for b in betas:
        if b < 0.0:
            raise UsageError(f"--beta must be >= 0, got {b:g}")
        if ns.command in ("diffuse", "sweep") and b > 1.0:
            raise UsageError(f"--beta must be <= 1 for {ns.command}, got {b:g}")

    try:
        talbot = TalbotConfig(n_nodes=ns.n_talbot)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc

    for name in ("tmin", "tmax"):
        v = getattr(ns, name)
        if v is not None and v <= 0.0:
            raise UsageError(f"--{name} must be > 0, got {v:g}")
    if ns.tmin is not None and ns.tmax is not None and ns.tmin >= ns.tmax:
        raise UsageError("--tmin must be smaller than --tmax")
    if ns.nt is not None and ns.nt < 1:
        raise UsageError(f"--nt must be >= 1, got {ns.nt}")

    slope_def = SlopeDefinition.LOG10E_VS_T
    fit_window = (0.1, 1.0)
    if getattr(ns, "slope_def", None):
        slope_def = SlopeDefinition(ns.slope_def)
    if getattr(ns, "fit_window", None):
        w = _parse_float_list(ns.fit_window, "--fit-window")
        if len(w) != 2 or not 0.0 < w[0] < w[1]:
            raise UsageError(f"--fit-window expects a,b with 0 < a < b, got {ns.fit_window!r}")
        fit_window = (w[0], w[1])

    kwargs: dict = {}
    if ns.command == "invert":
        if ns.t is not None and ns.t <= 0.0:
            raise UsageError(f"--t must be > 0, got {ns.t:g}")
        if ns.pair == "power" and not 0.0 < ns.rho < 1.0:
            raise UsageError(f"--rho must lie in (0,1), got {ns.rho:g}")
        kwargs.update(pair=ns.pair, pair_a=ns.a, pair_rho=ns.rho, lam=ns.lam, t_single=ns.t)
    if ns.command == "mode":
        if ns.lam < 0.0:
            raise UsageError(f"--lam must be >= 0, got {ns.lam:g}")
        kwargs.update(
            lam=ns.lam, u0_value=ns.u0, allow_experimental=ns.allow_beta_gt_1
        )
    if ns.command == "diffuse":
        if ns.modes is not None and ns.modes < 1:
            raise UsageError(f"--modes must be >= 1, got {ns.modes}")
        kwargs.update(n_modes=ns.modes, u0_profile=ns.u0_profile, per_mode=ns.per_mode)

    return RunConfig(
        command=ns.command,
        alphas=alphas,
        betas=betas,
        talbot=talbot,
        grid_kind=ns.grid or "default",
        t_min=ns.tmin,
        t_max=ns.tmax,
        n_t=ns.nt,
        slope_def=slope_def,
        fit_window=fit_window,
        out=ns.out,
        fmt=ns.fmt,
        **kwargs,
    )


# ---------------------------------------------------------------------------
# grids, formatting, atomic output
# ---------------------------------------------------------------------------


def _make_grid(cfg: RunConfig, t_min: float, t_max: float, n: int, kind: str) -> TimeGrid:
    """Grid from explicit flags, falling back to per-command defaults."""
    t_min = cfg.t_min if cfg.t_min is not None else t_min
    t_max = cfg.t_max if cfg.t_max is not None else t_max
    n = cfg.n_t if cfg.n_t is not None else n
    kind = cfg.grid_kind if cfg.grid_kind != "default" else kind
    if t_min >= t_max:
        raise UsageError(f"empty time range [{t_min:g}, {t_max:g}]")
    if kind == "uniform":
        return TimeGrid.uniform(t_min, t_max, n)
    if kind == "graded":
        i = np.arange(1, n + 1, dtype=float)
        lo = cfg.t_min if cfg.t_min is not None else 0.0
        pts = lo + (t_max - lo) * (i / n) ** 2.0
        return TimeGrid(pts, spacing="graded", grading_exponent=2.0)
    return TimeGrid.logspaced(t_min, t_max, n)


def _fmt(x: float) -> str:
    """10 significant digits, '.' decimal separator."""
    return format(float(x), ".9e")


def _worker_count() -> int:
    raw = os.environ.get("WFRAC_THREADS", "0")
    try:
        n = int(raw)
    except ValueError as exc:
        raise UsageError(f"WFRAC_THREADS must be an integer, got {raw!r}") from exc
    if n <= 0:
        return min(os.cpu_count() or 1, 8)
    return n


def _write_atomic(path: str, payload: str) -> None:
    """Temp file + rename in the destination directory; never leaves a
    partial file at the target path."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".wfrac-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _render(
    cfg: RunConfig,
    header: dict[str, str],
    columns: list[str],
    rows: list[list],
    meta: dict | None = None,
) -> str:
    if cfg.fmt == "json":
        doc = {
            "version": __version__,
            "command": cfg.command,
            "header": header,
            "meta": meta or {},
            "columns": columns,
            "rows": rows,
        }
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"
    buf = io.StringIO()
    buf.write(f"# wfrac {__version__}\n")
    buf.write(f"# command: {cfg.command}\n")
    for key, val in header.items():
        buf.write(f"# {key}: {val}\n")
    if meta:
        buf.write(f"# meta: {json.dumps(meta, sort_keys=False)}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(x if isinstance(x, str) else _fmt(x) for x in row) + "\n")
    return buf.getvalue()


def _output_path(cfg: RunConfig) -> str:
    return cfg.out if cfg.out is not None else f"{cfg.command}.{cfg.fmt}"


def _header_common(cfg: RunConfig, grid: TimeGrid | None) -> dict[str, str]:
    head = {
        "params": "alpha=" + ",".join(f"{a:g}" for a in cfg.alphas)
        + " beta=" + ",".join(f"{b:g}" for b in cfg.betas),
        "talbot": f"N={cfg.talbot.n_nodes} shift={cfg.talbot.shift:g}",
    }
    if grid is not None:
        head["grid"] = grid.describe()
    return head


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------


def _run_symbol(cfg: RunConfig) -> str:
    p = cfg.params
    grid = _make_grid(cfg, 1e-4, 1e4, 41, "log")
    rows = [[s, eval_phi_real(p, s), eval_h(p, s)] for s in grid.points]
    head = _header_common(cfg, grid)
    exponent = low_freq_exponent_estimate(p)
    head["low_freq_exponent"] = (
        f"fitted={exponent:.6f} predicted={p.alpha + p.beta * (1 - p.alpha):.6f}"
    )
    head["convexity_probe_s0=1e-3"] = f"{convexity_probe_at_origin(p, 1e-3):.6e}"
    payload = _render(cfg, head, ["s", "phi", "h"], rows)
    path = _output_path(cfg)
    _write_atomic(path, payload)
    print(f"wrote {path}: {len(rows)} rows, low-frequency exponent {exponent:.4f}")
    return path


def _run_kernel(cfg: RunConfig) -> str:
    p = cfg.params
    grid = _make_grid(cfg, 1e-3, 10.0, 200, "graded")
    table = kernel_table(p, grid, cfg.talbot)
    cols = ["t", "w", "k", "w_caputo"]
    rows = [[table[c][i] for c in cols] for i in range(len(grid))]
    payload = _render(cfg, _header_common(cfg, grid), cols, rows)
    path = _output_path(cfg)
    _write_atomic(path, payload)
    print(f"wrote {path}: {len(rows)} rows")
    return path


def _reference_pair(cfg: RunConfig):
    a, rho, lam, alpha = cfg.pair_a, cfg.pair_rho, cfg.lam, cfg.alphas[0]
    if cfg.pair == "const":
        return (lambda s: 1.0 / s), (lambda t: 1.0)
    if cfg.pair == "ramp":
        return (lambda s: 1.0 / s**2), (lambda t: t)
    if cfg.pair == "exp":
        return (lambda s: 1.0 / (s + a)), (lambda t: math.exp(-a * t))
    if cfg.pair == "power":
        return (lambda s: s**-rho), (lambda t: t ** (rho - 1.0) / gamma_fn(rho))
    # ml: the scalar Caputo resolvent transform
    return (
        lambda s: s ** (alpha - 1.0) / (s**alpha + lam),
        lambda t: mittag_leffler(alpha, -lam * t**alpha),
    )


def _run_invert(cfg: RunConfig) -> str:
    transform, truth = _reference_pair(cfg)
    if cfg.t_single is not None:
        grid = TimeGrid(np.array([cfg.t_single]))
    else:
        grid = _make_grid(cfg, 0.05, 10.0, 25, "log")
    rows = []
    max_rel = 0.0
    for t in grid.points:
        val = invert(cfg.talbot, transform, float(t))
        exact = truth(float(t))
        rel = abs(val - exact) / max(abs(exact), 1e-300)
        max_rel = max(max_rel, rel)
        rows.append([t, val, exact, rel])
    head = _header_common(cfg, grid)
    head["pair"] = cfg.pair
    payload = _render(cfg, head, ["t", "value", "exact", "rel_err"], rows)
    path = _output_path(cfg)
    _write_atomic(path, payload)
    print(f"wrote {path}: {len(rows)} rows, max relative error {max_rel:.3e}")
    return path


def _run_mode(cfg: RunConfig) -> str:
    p = cfg.params
    mp = ModalProblem(params=p, lam=cfg.lam, u0=cfg.u0_value)
    grid = _make_grid(cfg, 1e-3, 5.0, 100, "graded")
    u = solve_mode(mp, grid, cfg.talbot, allow_nonadmissible=cfg.allow_experimental)
    gap = initial_value_gap(mp, cfg.talbot)
    meta = {
        "alpha": p.alpha,
        "beta": p.beta,
        "lambda": cfg.lam,
        "u0": cfg.u0_value,
        "n_talbot": cfg.talbot.n_nodes,
        "contour": "fixed-talbot r=2N/(5t)",
        "evolution_admissible": p.evolution_admissible,
        "experimental": bool(p.beta > 1.0),
        "initial_value_gap": gap,
    }
    rows = [[t, v] for t, v in zip(grid.points, u.values)]
    payload = _render(cfg, _header_common(cfg, grid), ["t", "u"], rows, meta=meta)
    path = _output_path(cfg)
    _write_atomic(path, payload)
    print(f"wrote {path}: {len(rows)} rows, |u(0+)-u0| <= {gap:.3e}")
    return path


_PROFILES = {
    "sine": lambda x: math.sin(math.pi * x),
    "parabola": lambda x: x * (1.0 - x),
}


def _diffusion_setup(cfg: RunConfig) -> DiffusionSetup:
    profile = _PROFILES[cfg.u0_profile]
    n_modes = cfg.n_modes
    if n_modes is None:
        # sin(pi x) has a single active mode; general data default to 64
        n_modes = 1 if cfg.u0_profile == "sine" else 64
    coeffs = project_initial(profile, n_modes)
    return DiffusionSetup(
        params=cfg.params,
        n_modes=n_modes,
        initial_coeffs=coeffs,
        talbot=cfg.talbot,
    )


def _run_diffuse(cfg: RunConfig) -> str:
    setup = _diffusion_setup(cfg)
    grid = _make_grid(cfg, 1e-3, 5.0, 200, "log")
    series = run_diffusion(setup, grid)
    e = energy(series, grid)
    e0 = initial_energy(setup)
    metric = MetricConfig(
        slope_definition=cfg.slope_def,
        fit_window=cfg.fit_window,
        e0=e0,
        energy_fn=make_energy_fn(setup),
    )
    summary = ""
    try:
        dm = decay_metrics(e, grid, metric)
        summary = f", slope {dm.slope:.4f}, half-life {dm.half_life:.4f}"
        metrics_head = {
            "metrics": f"slope_def={dm.slope_definition.value} "
            f"fit_window=[{dm.fit_window[0]:g},{dm.fit_window[1]:g}] "
            f"slope={dm.slope:.6f} half_life={dm.half_life:.6f}"
        }
    except NoCrossingError as exc:
        metrics_head = {"metrics": f"no-crossing: {exc}"}

    cols = ["t", "E", "E_over_E0"]
    if cfg.per_mode:
        cols += [f"u{k}" for k in range(1, setup.n_modes + 1)]
    rows: list[list] = []
    first: list = [0.0, e0, 1.0]
    if cfg.per_mode:
        first += list(setup.initial_coeffs)
    rows.append(first)
    for i, t in enumerate(grid.points):
        row: list = [t, e[i], e[i] / e0]
        if cfg.per_mode:
            row += [series[k, i] for k in range(setup.n_modes)]
        rows.append(row)

    head = _header_common(cfg, grid)
    head["modes"] = str(setup.n_modes)
    head["tail_energy_bound"] = _fmt(_tail_energy(cfg, setup))
    head.update(metrics_head)
    payload = _render(cfg, head, cols, rows)
    path = _output_path(cfg)
    _write_atomic(path, payload)
    print(f"wrote {path}: {len(rows)} rows, E(0) = {e0:.6f}{summary}")
    return path


def _tail_energy(cfg: RunConfig, setup: DiffusionSetup) -> float:
    # energy of the truncated modes, reported so truncation error is visible
    probe = project_initial(_PROFILES[cfg.u0_profile], setup.n_modes + 64)
    return float(np.sum(probe[setup.n_modes :] ** 2))


def _run_sweep(cfg: RunConfig) -> str:
    base = DiffusionSetup(
        params=FracParams(cfg.alphas[0], min(cfg.betas[0], 1.0)),
        n_modes=1,
        initial_coeffs=project_initial(_PROFILES["sine"], 1),
        talbot=cfg.talbot,
    )
    if cfg.grid_kind == "default" and cfg.t_min is None and cfg.t_max is None and cfg.n_t is None:
        grid = default_sweep_grid()
    else:
        grid = _make_grid(cfg, 1e-3, 5.0, 200, "log")
    metric = MetricConfig(slope_definition=cfg.slope_def, fit_window=cfg.fit_window)
    cells = sensitivity_sweep(
        cfg.alphas, cfg.betas, base, grid, metric, max_workers=_worker_count()
    )

    cols = [
        "alpha", "beta", "slope", "half_life",
        "slope_definition", "fit_tmin", "fit_tmax", "n_talbot",
    ]
    rows: list[list] = []
    head = _header_common(cfg, grid)
    head["metrics"] = (
        f"slope_def={cfg.slope_def.value} "
        f"fit_window=[{cfg.fit_window[0]:g},{cfg.fit_window[1]:g}]"
    )
    n_err = 0
    for c in cells:
        if c.metrics is None:
            n_err += 1
            head[f"cell_error alpha={c.alpha:g} beta={c.beta:g}"] = c.error or "unknown"
            rows.append([c.alpha, c.beta, "nan", "nan",
                         cfg.slope_def.value, cfg.fit_window[0], cfg.fit_window[1],
                         str(cfg.talbot.n_nodes)])
        else:
            m = c.metrics
            rows.append([c.alpha, c.beta, m.slope, m.half_life,
                         m.slope_definition.value, m.fit_window[0], m.fit_window[1],
                         str(cfg.talbot.n_nodes)])
    payload = _render(cfg, head, cols, rows)
    path = _output_path(cfg)
    _write_atomic(path, payload)

    print(f"{'alpha':>7s} {'beta':>7s} {'slope':>12s} {'half_life':>12s}")
    for c in cells:
        if c.metrics is None:
            print(f"{c.alpha:7.2f} {c.beta:7.2f} {'error':>12s} {'error':>12s}")
        else:
            print(f"{c.alpha:7.2f} {c.beta:7.2f} {c.metrics.slope:12.4f} "
                  f"{c.metrics.half_life:12.4f}")
    print(f"wrote {path}: {len(rows)} rows, {n_err} cell errors")
    return path


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------


def _suite_reference_pairs() -> tuple[bool, str]:
    cfg = TalbotConfig()
    ts = np.logspace(math.log10(0.05), 1.0, 10)
    worst = 0.0
    smooth = {
        "1/s": (lambda s: 1.0 / s, lambda t: 1.0),
        "1/(s+1)": (lambda s: 1.0 / (s + 1.0), lambda t: math.exp(-t)),
        "1/(s+5)": (lambda s: 1.0 / (s + 5.0), lambda t: math.exp(-5.0 * t)),
    }
    hard = {
        "1/s^2": (lambda s: 1.0 / s**2, lambda t: t),
        "s^-0.5": (lambda s: s**-0.5, lambda t: t**-0.5 / gamma_fn(0.5)),
        "caputo": (
            lambda s: s**-0.5 / (s**0.5 + 1.0),
            lambda t: mittag_leffler(0.5, -(t**0.5)),
        ),
    }
    ok = True
    for name, (fhat, f) in {**smooth, **hard}.items():
        tol = 1e-8 if name in smooth else 1e-6
        err = max(abs(invert(cfg, fhat, t) - f(t)) / abs(f(t)) for t in ts)
        worst = max(worst, err)
        ok = ok and err <= tol
    return ok, f"max relative error {worst:.2e}"


def _suite_beta0_reductions() -> tuple[bool, str]:
    worst = 0.0
    ok = True
    for alpha in (0.3, 0.5, 0.7, 0.9):
        p = FracParams(alpha, 0.0)
        for t in np.logspace(-3, 2, 15):
            t = float(t)
            w_ref = t**-alpha / gamma_fn(1.0 - alpha)
            k_ref = t ** (alpha - 1.0) / gamma_fn(alpha)
            z = (1.0 - alpha) * t ** (1.0 - alpha)
            tol = 1e-9 if z <= 5.0 else 1e-6
            err = max(
                abs(eval_w(p, t) - w_ref) / w_ref,
                abs(eval_k(p, t) - k_ref) / k_ref,
            )
            worst = max(worst, err)
            ok = ok and err <= tol
    return ok, f"max relative error {worst:.2e}"


def _suite_ftc() -> tuple[bool, str]:
    grid = TimeGrid.graded(1.0, 128)
    worst = 0.0
    for alpha, beta in ((0.5, 0.0), (0.5, 1.0)):
        p = FracParams(alpha, beta)
        for f in (lambda t: 1.0, math.sin):
            sf = SampledFunction.from_callable(f, grid)
            worst = max(worst, ftc_roundtrip_residual(p, sf))
    return worst <= 5e-3, f"max residual {worst:.2e}"


def _suite_trends() -> tuple[bool, str]:
    coeffs = project_initial(_PROFILES["sine"], 1)
    grid = TimeGrid.logspaced(1e-3, 5.0, 100)
    halves, slopes = [], []
    for beta in (0.0, 1.0):
        setup = DiffusionSetup(
            params=FracParams(0.3, beta), n_modes=1, initial_coeffs=coeffs
        )
        series = run_diffusion(setup, grid)
        e = energy(series, grid)
        if np.any(np.diff(e) > 1e-9):
            return False, f"energy not monotone at beta={beta:g}"
        cfg = MetricConfig(e0=initial_energy(setup), energy_fn=make_energy_fn(setup))
        dm = decay_metrics(e, grid, cfg)
        halves.append(dm.half_life)
        slopes.append(abs(dm.slope))
    ok = halves[1] < halves[0] and slopes[1] > slopes[0]
    return ok, (
        f"half-life {halves[0]:.3f} -> {halves[1]:.3f}, "
        f"|slope| {slopes[0]:.3f} -> {slopes[1]:.3f} as beta 0 -> 1"
    )


def _run_selftest() -> int:
    suites = [
        ("reference-pairs", _suite_reference_pairs),
        ("beta0-reductions", _suite_beta0_reductions),
        ("ftc-roundtrip", _suite_ftc),
        ("decay-trends", _suite_trends),
    ]
    all_ok = True
    for name, fn in suites:
        ok, detail = fn()
        all_ok = all_ok and ok
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return 0 if all_ok else 4


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def run(config: RunConfig) -> int:
    """Execute a validated run; returns the process exit status."""
    try:
        if config.command == "selftest":
            return _run_selftest()
        dispatch = {
            "symbol": _run_symbol,
            "kernel": _run_kernel,
            "invert": _run_invert,
            "mode": _run_mode,
            "diffuse": _run_diffuse,
            "sweep": _run_sweep,
        }
        dispatch[config.command](config)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (AdmissibilityError, DomainError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except (ConvergenceError, AccuracyError, NoCrossingError) as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 5


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

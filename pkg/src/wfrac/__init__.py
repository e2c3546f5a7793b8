"""Numerical toolkit for a two-parameter fractional time operator with
Volterra structure: its Laplace symbol, Prabhakar memory kernels, inverse
Volterra operator, scalar resolvent solver, and a 1D spectral diffusion
application.
"""

__version__ = "0.1.0"

from .errors import (
    AccuracyError,
    AdmissibilityError,
    ConvergenceError,
    DomainError,
    GammaOverflowError,
    GridError,
    NoCrossingError,
    PoleError,
    UsageError,
    WfracError,
)
from .grid import SampledFunction, TimeGrid
from .symbol import (
    FracParams,
    convexity_probe_at_origin,
    eval_h,
    eval_h_derivative,
    eval_phi,
    eval_phi_real,
    low_freq_exponent_estimate,
)
from .special import PrabhakarArgs, Z_SERIES, gamma_fn, mittag_leffler, prabhakar
from .laplace import TalbotConfig, invert, invert_batch, talbot_nodes
from .kernels import (
    caputo_kernel,
    eval_k,
    eval_w,
    ftc_roundtrip_residual,
    kernel_table,
    w_derivative,
    w_integral,
)
from .resolvent import (
    ModalProblem,
    initial_value_gap,
    mode_transform,
    resolvent_kernel,
    smoothing_probe,
    solve_mode,
)
from .diffusion import (
    DecayMetrics,
    DiffusionSetup,
    MetricConfig,
    SlopeDefinition,
    SweepCell,
    decay_metrics,
    default_sweep_grid,
    energy,
    eigenvalue,
    initial_energy,
    make_energy_fn,
    project_initial,
    run_diffusion,
    sensitivity_sweep,
)

__all__ = [
    "__version__",
    # errors
    "WfracError", "DomainError", "AdmissibilityError", "PoleError",
    "GammaOverflowError", "GridError", "ConvergenceError", "AccuracyError",
    "NoCrossingError", "UsageError",
    # grids
    "TimeGrid", "SampledFunction",
    # symbol
    "FracParams", "eval_phi", "eval_phi_real", "eval_h", "eval_h_derivative",
    "low_freq_exponent_estimate", "convexity_probe_at_origin",
    # special
    "PrabhakarArgs", "Z_SERIES", "gamma_fn", "prabhakar", "mittag_leffler",
    # laplace
    "TalbotConfig", "talbot_nodes", "invert", "invert_batch",
    # kernels
    "eval_w", "eval_k", "caputo_kernel", "w_derivative", "w_integral",
    "ftc_roundtrip_residual", "kernel_table",
    # resolvent
    "ModalProblem", "mode_transform", "solve_mode", "resolvent_kernel",
    "smoothing_probe", "initial_value_gap",
    # diffusion
    "eigenvalue", "project_initial", "DiffusionSetup", "run_diffusion",
    "energy", "initial_energy", "make_energy_fn", "SlopeDefinition",
    "MetricConfig", "DecayMetrics", "decay_metrics", "SweepCell",
    "sensitivity_sweep", "default_sweep_grid",
]

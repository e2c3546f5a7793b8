"""Numerical inverse Laplace transform on a fixed Talbot contour.

The contour is the classical fixed-Talbot parameterization, rebuilt per
output time t:

    r = 2 N / (5 t),   theta_k = k pi / N  (k = 0..N-1),
    s(theta) = r * theta * (cot(theta) + i),   s(0) = r,

with endpoint weight 1/2 at theta = 0 and interior weights
1 + i*(theta + (theta*cot(theta) - 1)*cot(theta)); the inverse value is the
real part of the weighted sum of e^{s t} F(s), times r/N. The transform must
be analytic to the right of the contour (caller's contract). No automatic
refinement of N: reproducibility of tabulated outputs demands a fixed rule.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .grid import TimeGrid

__all__ = ["TalbotConfig", "TransformFn", "talbot_nodes", "invert", "invert_batch"]

TransformFn = Callable[[complex], complex]


@dataclass(frozen=True)
class TalbotConfig:
    """Fixed-Talbot contour parameters.

    n_nodes must be even and >= 8 (halves of the symmetric contour pair up).
    shift moves the contour right by a fixed amount for transforms whose
    abscissa of convergence is nonnegative: the inverse of F is recovered as
    e^{shift*t} times the inverse of F(. + shift).
    """

    n_nodes: int = 24
    shift: float = 0.0

    def __post_init__(self) -> None:
        if self.n_nodes < 8 or self.n_nodes % 2 != 0:
            raise DomainError(f"n_nodes must be even and >= 8, got {self.n_nodes}")
        if self.shift < 0.0:
            raise DomainError(f"shift must be >= 0, got {self.shift}")


def talbot_nodes(cfg: TalbotConfig, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Contour nodes s_k and quadrature weights w_k for output time t.

    The returned nodes do not include the shift; invert() applies it when
    evaluating the transform.
    """
    if t <= 0.0:
        raise DomainError(f"inversion time must be > 0, got {t}")
    n = cfg.n_nodes
    r = 2.0 * n / (5.0 * t)
    nodes = np.empty(n, dtype=complex)
    weights = np.empty(n, dtype=complex)
    nodes[0] = r
    weights[0] = 0.5
    for k in range(1, n):
        theta = k * math.pi / n
        cot = math.cos(theta) / math.sin(theta)
        nodes[k] = r * theta * complex(cot, 1.0)
        weights[k] = complex(1.0, theta + (theta * cot - 1.0) * cot)
    return nodes, weights


def invert(cfg: TalbotConfig, transform: TransformFn, t: float) -> float:
    """Invert a Laplace transform at a single time t > 0.

    Deterministic for fixed (cfg, transform, t); evaluation failures of the
    transform propagate unchanged.
    """
    nodes, weights = talbot_nodes(cfg, t)
    n = cfg.n_nodes
    r = 2.0 * n / (5.0 * t)
    total = 0.0
    for s, w in zip(nodes, weights):
        total += (cmath.exp(s * t) * transform(s + cfg.shift) * w).real
    value = total * r / n
    if cfg.shift:
        value *= math.exp(cfg.shift * t)
    return value


def invert_batch(cfg: TalbotConfig, transform: TransformFn, grid: TimeGrid) -> np.ndarray:
    """invert() at every grid point, order preserved."""
    return np.array([invert(cfg, transform, t) for t in grid.points])

"""Full metric blocks, the flat chart at infinity, and the decay-rate scan.

In action-angle coordinates a radial-family metric is the block matrix
``h = diag(G, G^{-1})`` with compatible complex structure
``J = [[0, -G^{-1}], [G, 0]]``.  The flat chart
``lambda_i = sqrt(2 x_i) cos y_i, mu_i = sqrt(2 x_i) sin y_i`` turns the
euclidean metric into the identity, so the operator-norm distance of the
transformed ``h`` from the identity measures how fast a metric flattens out.
For the scalar-flat blow-up metric that deviation falls off like ``u^(1-n)``
in the squared radius ``u``, and :func:`decay_scan` fits that exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DecayFitError, DomainError
from .curvature import hessian_t_family, HessianEval
from .potentials import TPotential

__all__ = [
    "MetricBlocks",
    "DecayReport",
    "metric_blocks",
    "flat_chart",
    "chart_deviation",
    "decay_scan",
    "DEVIATION_FLOOR",
]

#: Deviations below this are indistinguishable from roundoff in the assembly.
DEVIATION_FLOOR = 1e-14


@dataclass(frozen=True)
class MetricBlocks:
    """Metric and complex-structure blocks at one action point."""

    x: np.ndarray
    hessian: HessianEval
    h: np.ndarray
    J: np.ndarray


@dataclass(frozen=True)
class DecayReport:
    """Log-log decay fit of the deviation from the euclidean metric."""

    n: int
    potential: str
    samples: tuple[tuple[float, float], ...]
    fitted_slope: float
    expected_slope: float

    def __post_init__(self) -> None:
        us = [u for u, _ in self.samples]
        if any(b <= a for a, b in zip(us, us[1:])):
            raise ValueError("scan points must be strictly increasing in u")


def metric_blocks(pot: TPotential, x: Sequence[float]) -> MetricBlocks:
    """h = diag(G, G^{-1}) and J = [[0, -G^{-1}], [G, 0]] at an interior point."""
    hess = hessian_t_family(pot, x)
    n = hess.x.size
    h = np.zeros((2 * n, 2 * n))
    h[:n, :n] = hess.G
    h[n:, n:] = hess.G_inv
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = -hess.G_inv
    J[n:, :n] = hess.G
    return MetricBlocks(x=hess.x, hessian=hess, h=h, J=J)


def flat_chart(x: Sequence[float], y: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """(lambda, mu) = (sqrt(2x) cos y, sqrt(2x) sin y); needs x >= 0."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DomainError("x and y must have the same length")
    if np.any(x < 0.0):
        raise DomainError("the chart needs x >= 0")
    r = np.sqrt(2.0 * x)
    return r * np.cos(y), r * np.sin(y)


def _chart_jacobian(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """d(lambda, mu) / d(x, y); block-diagonal in each coordinate pair."""
    n = x.size
    r = np.sqrt(2.0 * x)
    M = np.zeros((2 * n, 2 * n))
    M[:n, :n] = np.diag(np.cos(y) / r)
    M[:n, n:] = np.diag(-r * np.sin(y))
    M[n:, :n] = np.diag(np.sin(y) / r)
    M[n:, n:] = np.diag(r * np.cos(y))
    return M


def _jacobi_eigenvalues(matrix: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    A = np.array(matrix, dtype=float, copy=True)
    m = A.shape[0]
    scale = max(1.0, float(np.linalg.norm(A)))
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.square(A - np.diag(np.diag(A))))))
        if off <= tol * scale:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rotation = np.eye(m)
                rotation[p, p] = rotation[q, q] = c
                rotation[p, q] = s
                rotation[q, p] = -s
                A = rotation.T @ A @ rotation
    return np.diag(A)


def _sym_opnorm(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(_jacobi_eigenvalues(matrix))))


def chart_deviation(pot: TPotential, x: Sequence[float], y: Sequence[float] | None = None) -> float:
    """Operator-norm distance of the metric from the identity in the flat chart."""
    x = np.asarray(x, dtype=float)
    y = np.zeros_like(x) if y is None else np.asarray(y, dtype=float)
    blocks = metric_blocks(pot, x)
    M = _chart_jacobian(x, y)
    M_inv = np.linalg.inv(M)
    h_chart = M_inv.T @ blocks.h @ M_inv
    return _sym_opnorm(h_chart - np.eye(h_chart.shape[0]))


def decay_scan(
    n: int,
    u_min: float,
    u_max: float,
    samples: int,
    pot: TPotential | None = None,
) -> DecayReport:
    """Measure the deviation from euclidean at log-spaced u and fit its decay.

    Deviations are taken along the diagonal ray x = (u/n)(1, ..., 1), y = 0;
    for radial-family metrics the deviation at fixed u is direction
    independent, so one ray suffices.  The fit drops the first decade of u
    (transient constants) and anything at the roundoff floor.  If everything
    sits at the floor the metric is euclidean to working precision and the
    slope is reported as NaN; having fewer than three usable points otherwise
    is an error.
    """
    if u_min <= 1.0:
        raise ValueError("u_min must exceed 1")
    if u_max <= u_min:
        raise ValueError("u_max must exceed u_min")
    if samples < 8:
        raise ValueError("need at least 8 samples")
    if pot is None:
        from .scalarflat import burns_simanca_potential

        pot = burns_simanca_potential(n)

    us = np.geomspace(u_min, u_max, samples)
    scan = []
    for u in us:
        x = (float(u) / n) * np.ones(n)
        scan.append((float(u), chart_deviation(pot, x)))

    fit_points = [
        (u, d) for u, d in scan if u >= 10.0 * u_min and d > DEVIATION_FLOOR
    ]
    if len(fit_points) >= 3:
        log_u = np.log([u for u, _ in fit_points])
        log_d = np.log([d for _, d in fit_points])
        slope = float(np.polyfit(log_u, log_d, 1)[0])
    elif all(d <= DEVIATION_FLOOR for _, d in scan):
        slope = math.nan
    else:
        raise DecayFitError(
            f"only {len(fit_points)} usable samples above the roundoff floor; cannot fit a slope"
        )

    return DecayReport(
        n=n,
        potential=pot.label,
        samples=tuple(scan),
        fitted_slope=slope,
        expected_slope=float(1 - n),
    )

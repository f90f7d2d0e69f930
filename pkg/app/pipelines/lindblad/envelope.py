"""
Envelope curves f_M(r), f_m(r) over a radius grid.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence
import logging

import numpy as np

from app.config.settings import settings
from app.models.envelope import EnvelopePoint, RateEnvelope
from app.models.quantum import ProjectedSystem
from app.pipelines.lindblad.extremal import ExtremalSolver
from app.utils.errors import EnvelopeMismatchError

logger = logging.getLogger(__name__)

CROSSCHECK_TOL = 1e-10


def uniform_grid(size: int) -> np.ndarray:
    """Grid r_i = i / N, i = 1..N."""
    if size < 1:
        raise ValueError(f"Grid size must be positive, got {size}")
    return np.arange(1, size + 1, dtype=float) / size


def _validate_grid(grid: np.ndarray) -> np.ndarray:
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size == 0:
        raise ValueError("Radius grid is empty")
    if grid[0] <= 0.0 or grid[-1] > 1.0:
        raise ValueError(f"Radius grid must lie in (0, 1], got [{grid[0]}, {grid[-1]}]")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("Radius grid must be strictly increasing")
    return grid


def _crosscheck_indices(size: int, fraction: float) -> List[int]:
    stride = max(1, int(round(1.0 / fraction))) if fraction > 0 else size
    indices = list(range(0, size, stride))
    if indices[-1] != size - 1:
        indices.append(size - 1)
    return indices


def _evaluate(points_fn, grid: Sequence[float], workers: int) -> List[EnvelopePoint]:
    if workers > 1 and len(grid) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(points_fn, grid))
    return [points_fn(r) for r in grid]


def envelope_curve(
    p: ProjectedSystem,
    grid: Optional[np.ndarray] = None,
    workers: Optional[int] = None,
) -> RateEnvelope:
    """
    Sample f_M and f_m on a grid (default i/N with N = settings.DEFAULT_GRID_SIZE).

    Axially symmetric systems take the closed form; a deterministic subsample
    is re-solved numerically and any disagreement beyond 1e-10 raises
    EnvelopeMismatchError.
    """
    grid = uniform_grid(settings.DEFAULT_GRID_SIZE) if grid is None else _validate_grid(grid)
    workers = workers or settings.ENVELOPE_WORKERS
    grid_values = [float(r) for r in grid]
    analytic = ExtremalSolver.is_axial(p)

    if analytic:
        points = [ExtremalSolver.analytic_axial_point(p, r) for r in grid_values]
        indices = _crosscheck_indices(len(grid_values), settings.ANALYTIC_CROSSCHECK_FRACTION)
        for i in indices:
            numeric = ExtremalSolver.envelope_at(grid_values[i], p)
            tol = CROSSCHECK_TOL * max(1.0, p.scale)
            if (abs(numeric.f_max - points[i].f_max) > tol
                    or abs(numeric.f_min - points[i].f_min) > tol):
                logger.error(
                    f"Closed form disagrees with stationary points at r={grid_values[i]:.6g}: "
                    f"({points[i].f_max:.12g}, {points[i].f_min:.12g}) vs "
                    f"({numeric.f_max:.12g}, {numeric.f_min:.12g})"
                )
                raise EnvelopeMismatchError(
                    f"Analytic and numeric envelopes disagree at r={grid_values[i]:.6g}"
                )
        logger.debug(f"Closed-form envelope cross-checked at {len(indices)} radii")
    else:
        points = _evaluate(lambda r: ExtremalSolver.envelope_at(r, p), grid_values, workers)

    logger.info(
        f"Envelope on {len(grid_values)} radii ({'analytic' if analytic else 'stationary points'})"
    )
    return RateEnvelope(
        r_grid=grid,
        f_max=np.array([pt.f_max for pt in points]),
        f_min=np.array([pt.f_min for pt in points]),
        argmax_dirs=np.array([pt.argmax for pt in points]),
        argmin_dirs=np.array([pt.argmin for pt in points]),
        analytic=analytic,
    )


def zero_radius_limits(p: ProjectedSystem) -> tuple:
    """
    Limits of f_M and f_m as r -> 0+: +|b| and -|b|.

    The rate tends to b.n uniformly on the sphere.
    """
    return p.b_norm, -p.b_norm

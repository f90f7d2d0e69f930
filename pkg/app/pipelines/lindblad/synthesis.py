"""
Control synthesis: controls that move the Bloch vector along a prescribed
direction path while the radius follows the projected equation.
"""

from typing import List, Optional, Sequence
import logging

import numpy as np

from app.config.settings import settings
from app.models.quantum import ProjectedSystem
from app.models.trajectory import ControlSchedule
from app.utils.errors import RadiusUnderflowError

logger = logging.getLogger(__name__)

KINK_REL_TOL = 0.25
KINK_ABS_TOL = 1e-6


def detect_breakpoints(times: np.ndarray, path: np.ndarray) -> List[float]:
    """
    Times where the sampled path has a kink (one-sided velocities disagree).

    Always includes the first and last sample time.
    """
    times = np.asarray(times, dtype=float)
    breakpoints = [float(times[0])]
    if len(times) > 2:
        velocity = np.diff(path, axis=0) / np.diff(times)[:, None]
        jump = np.linalg.norm(np.diff(velocity, axis=0), axis=1)
        speed = np.linalg.norm(velocity, axis=1)
        bound = KINK_REL_TOL * (speed[1:] + speed[:-1]) + KINK_ABS_TOL
        for i in np.nonzero(jump > bound)[0]:
            breakpoints.append(float(times[i + 1]))
    breakpoints.append(float(times[-1]))
    return sorted(set(breakpoints))


def _path_derivative(times: np.ndarray, path: np.ndarray, breakpoints: Sequence[float]) -> np.ndarray:
    """Central differences inside segments, one-sided at their ends."""
    derivative = np.zeros_like(path)
    idx = [int(np.searchsorted(times, t)) for t in breakpoints]
    idx[0], idx[-1] = 0, len(times) - 1
    for i0, i1 in zip(idx[:-1], idx[1:]):
        if i1 <= i0:
            continue
        seg = slice(i0, i1 + 1)
        grad = np.gradient(path[seg], times[seg], axis=0)
        # samples shared with the previous segment keep their left-sided value
        start = 1 if i0 > 0 else 0
        derivative[i0 + start:i1 + 1] = grad[start:]
    return derivative


def controls_for_path(
    times: np.ndarray,
    path: np.ndarray,
    radius: np.ndarray,
    p: ProjectedSystem,
    derivative: Optional[np.ndarray] = None,
    breakpoints: Optional[Sequence[float]] = None,
    floor: Optional[float] = None,
) -> ControlSchedule:
    """
    u = (n_hat x dn_hat/dt - (n_hat x b)/r - n_hat x (A^S n_hat)) / 2.

    Args:
        times: sample times of the path
        path: (N, 3) unit directions n_hat(t) in the intrinsic frame
        radius: (N,) planned radius r(t) in (0, 1]
        p: projected system
        derivative: dn_hat/dt samples; finite differences when omitted
        breakpoints: segment boundaries; detected from kinks when omitted
        floor: minimum admissible radius (defaults to settings.RADIUS_FLOOR)

    Raises:
        RadiusUnderflowError: if the planned radius drops below the floor,
            where the prescription is unbounded.
    """
    times = np.asarray(times, dtype=float)
    path = np.asarray(path, dtype=float)
    radius = np.asarray(radius, dtype=float)
    floor = settings.RADIUS_FLOOR if floor is None else floor

    if np.min(radius) < floor:
        raise RadiusUnderflowError(
            f"Planned radius {np.min(radius):.3e} below floor {floor:.1e}; controls unbounded"
        )

    if breakpoints is None:
        breakpoints = detect_breakpoints(times, path) if len(times) > 1 else [float(times[0])]
    if derivative is None:
        derivative = _path_derivative(times, path, breakpoints) if len(times) > 1 else np.zeros_like(path)

    a_n = path * p.a
    controls = 0.5 * (
        np.cross(path, derivative)
        - np.cross(path, p.b) / radius[:, None]
        - np.cross(path, a_n)
    )

    logger.debug(
        f"Synthesized {len(times)} control samples over {len(breakpoints) - 1} segment(s), "
        f"max |u| = {np.max(np.linalg.norm(controls, axis=1)):.4g}"
    )
    return ControlSchedule(
        times=times,
        controls=controls,
        planned_path=path,
        planned_radius=radius,
        breakpoints=list(breakpoints),
    )

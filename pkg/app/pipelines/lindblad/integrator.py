"""
Fixed-step classical Runge-Kutta integration of the Bloch and radial equations.
"""

from typing import Callable, Optional
import logging

import numpy as np
from scipy.optimize import brentq

from app.config.settings import settings
from app.models.quantum import BlochState, ProjectedSystem
from app.models.trajectory import TRAJECTORY_BALL_TOL, RadialCurve, Trajectory
from app.pipelines.lindblad.dynamics import BlochDynamics, rate_unchecked
from app.utils.errors import BallViolationError, ZeroRadiusError

logger = logging.getLogger(__name__)

ControlFn = Callable[[float], np.ndarray]
DirectionPolicy = Callable[[float, float], np.ndarray]


def rk4_step(f, t: float, y, h: float):
    """Classic 4th order step for y' = f(t, y)."""
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def time_grid(duration: float, dt: float) -> np.ndarray:
    """Uniform grid with spacing dt and a shortened last step to land on duration."""
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if duration < 0:
        raise ValueError(f"duration must be non-negative, got {duration}")
    full_steps = int(np.floor(duration / dt + 1e-9))
    times = dt * np.arange(full_steps + 1)
    if duration - times[-1] > 1e-12 * max(dt, 1.0):
        times = np.append(times, duration)
    elif full_steps:
        times[-1] = duration
    return times


def integrate_bloch(
    n0: BlochState,
    control: Optional[ControlFn],
    p: ProjectedSystem,
    duration: float,
    dt: Optional[float] = None,
) -> Trajectory:
    """
    Integrate dn/dt = b + 2 u(t) x n + (A^S - tr A^S) n from n0.

    Args:
        n0: initial Bloch state (intrinsic frame)
        control: u(t), or None for zero controls
        p: projected system
        duration: total time T >= 0
        dt: step size (defaults to settings.DEFAULT_DT)

    Raises:
        BallViolationError: if |n| exceeds 1 + 1e-6 at any step
    """
    dt = settings.DEFAULT_DT if dt is None else dt
    zero = np.zeros(3)
    u_of_t = control if control is not None else (lambda t: zero)

    def rhs(t, n):
        return BlochDynamics.bloch_rhs(n, u_of_t(t), p)

    times = time_grid(duration, dt)
    states = np.empty((len(times), 3))
    controls = np.empty((len(times), 3))
    states[0] = n0.n
    controls[0] = u_of_t(times[0])

    for i in range(1, len(times)):
        h = times[i] - times[i - 1]
        states[i] = rk4_step(rhs, times[i - 1], states[i - 1], h)
        controls[i] = u_of_t(times[i])
        radius = np.linalg.norm(states[i])
        if radius > 1.0 + TRAJECTORY_BALL_TOL:
            raise BallViolationError(
                f"|n| = {radius:.9f} at t = {times[i]:.6g}; model invalid or step too coarse"
            )

    logger.debug(f"Integrated {len(times) - 1} steps to t={times[-1]:.6g}, r={np.linalg.norm(states[-1]):.9f}")
    return Trajectory(times=times, states=states, controls=controls)


def _crossing(rhs, t: float, r: float, h: float, level: float) -> float:
    """Step length in [0, h] at which one RK4 step from (t, r) lands on level."""
    return brentq(lambda s: rk4_step(rhs, t, r, s) - level, 0.0, h, xtol=1e-15)


def integrate_radial(
    r0: float,
    policy: DirectionPolicy,
    p: ProjectedSystem,
    duration: float,
    dt: Optional[float] = None,
    floor: Optional[float] = None,
    target: Optional[float] = None,
) -> RadialCurve:
    """
    Integrate dr/dt = rate(r, n_hat(t, r)) with the direction as the control.

    Stops early (flagged) when r reaches the floor or the target radius; the
    final step is shortened so that radius is hit exactly and the curve never
    holds r < floor.
    """
    if r0 <= 0 or r0 > 1.0 + TRAJECTORY_BALL_TOL:
        raise ZeroRadiusError(f"Initial radius must lie in (0, 1], got {r0}")
    dt = settings.DEFAULT_DT if dt is None else dt
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    floor = settings.RADIUS_FLOOR if floor is None else floor

    def rhs(t, r):
        return rate_unchecked(r, policy(t, r), p)

    times = [0.0]
    radii = [float(r0)]
    directions = [np.asarray(policy(0.0, r0), dtype=float)]
    floor_hit = False
    target_hit = target is not None and r0 == target

    t, r = 0.0, float(r0)
    while not target_hit and t < duration - 1e-12 * max(dt, 1.0):
        h = min(dt, duration - t)
        r_next = rk4_step(rhs, t, r, h)

        if target is not None and (r_next - target) * (r - target) <= 0:
            h = _crossing(rhs, t, r, h, target)
            target_hit = True
            if h <= 0.0:
                radii[-1] = target
                break
            r_next = target
        elif r_next < floor:
            logger.warning(f"Radius {r_next:.3e} fell below floor {floor:.1e} after t={t:.6g}")
            h = _crossing(rhs, t, r, h, floor) if r > floor else 0.0
            floor_hit = True
            if h <= 0.0:
                radii[-1] = floor
                break
            r_next = floor

        t, r = t + h, float(r_next)
        times.append(t)
        radii.append(r)
        directions.append(np.asarray(policy(t, r), dtype=float))

        if floor_hit:
            break

    return RadialCurve(
        times=np.array(times),
        radii=np.array(radii),
        directions=np.array(directions),
        floor_hit=floor_hit,
        target_hit=target_hit,
    )

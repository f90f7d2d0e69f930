"""
End-to-end workflows behind the CLI commands and HTTP endpoints.

Vectors exchanged here (initial states, controls, trajectories) are in the
intrinsic frame of the projected system.
"""

from typing import Dict, Optional, Tuple
import logging

import numpy as np

from app.config.settings import settings
from app.models.envelope import RateEnvelope
from app.models.quantum import BlochState
from app.models.trajectory import Trajectory
from app.pipelines.lindblad.analysis import classify_purifiable, reachable, trap_radius
from app.pipelines.lindblad.envelope import envelope_curve, uniform_grid, zero_radius_limits
from app.pipelines.lindblad.extremal import ExtremalSolver
from app.pipelines.lindblad.integrator import integrate_bloch, integrate_radial
from app.pipelines.lindblad.synthesis import controls_for_path
from app.services.model_service import LoadedModel
from app.utils.errors import (
    BallViolationError,
    InfeasibleSteeringError,
    InvalidDensityError,
    RadiusUnderflowError,
)

logger = logging.getLogger(__name__)

STEER_TOLERANCE = 1e-4  # |r(T) - r_f| accepted at the end of a steering run


class LindbladPipeline:

    @staticmethod
    def project(model: LoadedModel) -> Dict:
        """Projected system summary with its validity flags."""
        p = model.system
        summary = {
            "kind": model.kind.value,
            "label": model.label,
            **p.to_dict(),
            "inequality_ok": model.inequality_ok,
            "physical": model.physical,
        }
        if model.ops is not None:
            summary["lindblad_ops"] = [op.to_dict() for op in model.ops]
        if model.gks is not None:
            summary.update(model.gks.to_dict())
        if model.control_offset is not None:
            summary["control_offset"] = model.control_offset.tolist()
        return summary

    @staticmethod
    def trap(model: LoadedModel) -> Dict:
        p = model.require_physical().system
        report = trap_radius(p)
        logger.info(f"Trap radius r_T = {report.r_t:.15g} ({report.method.value})")
        return report.to_dict()

    @classmethod
    def envelope(
        cls,
        model: LoadedModel,
        grid_size: Optional[int] = None,
        oracle_check: int = 0,
        seed: Optional[int] = None,
        oracle_count: Optional[int] = None,
    ) -> Tuple[RateEnvelope, Dict]:
        """Envelope curve on i/N plus its summary (trap, endpoints, r -> 0+ limits)."""
        p = model.require_physical().system
        grid_size = grid_size or settings.DEFAULT_GRID_SIZE
        if grid_size < 2:
            raise ValueError(f"Grid must have at least 2 points, got {grid_size}")

        curve = envelope_curve(p, uniform_grid(grid_size))
        report = trap_radius(p)
        f_max_zero, f_min_zero = zero_radius_limits(p)
        summary = {
            "label": model.label,
            "grid_size": grid_size,
            "analytic": curve.analytic,
            "trap": report.to_dict(),
            "f_max_at_1": float(curve.f_max[-1]),
            "f_min_at_1": float(curve.f_min[-1]),
            "limit_r0": {"f_max": f_max_zero, "f_min": f_min_zero},
            "monotone": curve.is_monotone(),
        }
        if oracle_check:
            summary["oracle"] = cls.oracle_check(curve, model, oracle_check, seed, oracle_count)
        return curve, summary

    @staticmethod
    def oracle_check(
        curve: RateEnvelope,
        model: LoadedModel,
        rows: int,
        seed: Optional[int] = None,
        count: Optional[int] = None,
    ) -> Dict:
        """Re-evaluate random rows with the sphere-sampling oracle."""
        count = count or settings.ORACLE_SAMPLE_COUNT
        seed = settings.ORACLE_SEED if seed is None else seed
        rng = np.random.default_rng(seed)
        picked = np.sort(rng.choice(len(curve), size=min(rows, len(curve)), replace=False))
        deviation = 0.0
        for i in picked:
            oracle = ExtremalSolver.brute_force_envelope(float(curve.r_grid[i]), model.system, count)
            deviation = max(
                deviation,
                abs(oracle.f_max - curve.f_max[i]),
                abs(oracle.f_min - curve.f_min[i]),
            )
        logger.info(f"Oracle check on {len(picked)} rows: max deviation {deviation:.3e}")
        return {
            "rows": [int(i) for i in picked],
            "sample_count": count,
            "max_deviation": deviation,
        }

    @staticmethod
    def classify(model: LoadedModel) -> Dict:
        verdict = classify_purifiable(model.require_ops())
        logger.info(f"Classification: {verdict.category.value}")
        return verdict.to_dict()

    @staticmethod
    def steer(
        model: LoadedModel,
        r_from: float,
        r_to: float,
        dt: Optional[float] = None,
        max_duration: Optional[float] = None,
    ) -> Tuple[Trajectory, Dict]:
        """
        Drive the radius from r_from to r_to along the extremal direction.

        The radius follows f_M (increasing) or f_m (decreasing); the
        direction path of that policy is turned into controls and the full
        Bloch equation is integrated on the same time grid. The initial
        direction is the policy direction at r_from, reachable instantly on
        the unitary orbit.

        Raises:
            InfeasibleSteeringError: r_to not reachable from r_from.
            RadiusUnderflowError: the radius fell below the floor.
        """
        p = model.require_physical().system
        dt = settings.DEFAULT_DT if dt is None else dt
        max_duration = max_duration or settings.STEER_MAX_DURATION
        report = trap_radius(p)

        if not reachable(r_from, r_to, p, trap=report):
            raise InfeasibleSteeringError(
                f"target above trap radius: r_f={r_to} cannot be reached from r_i={r_from} "
                f"(r_T={report.r_t:.15g}); outside the trap the radius can only decrease"
            )

        increasing = r_to > r_from

        def policy(t: float, r: float) -> np.ndarray:
            point = ExtremalSolver.envelope_at(r, p)
            return point.argmax if increasing else point.argmin

        if r_to == r_from:
            n0 = r_from * policy(0.0, r_from)
            trajectory = Trajectory(times=np.zeros(1), states=n0[None, :], controls=np.zeros((1, 3)))
            return trajectory, {
                "feasible": True,
                "duration": 0.0,
                "max_control_norm": 0.0,
                "r_T": report.r_t,
                "policy": "hold",
                "final_radius": r_from,
                "terminal_error": 0.0,
                "breakpoints": [0.0],
                "samples": 1,
            }

        curve = integrate_radial(r_from, policy, p, max_duration, dt=dt, target=r_to)
        if curve.floor_hit:
            raise RadiusUnderflowError(f"Radius fell below {settings.RADIUS_FLOOR:.1e} while steering")
        if not curve.target_hit:
            raise InfeasibleSteeringError(
                f"r={curve.final_radius:.6g} after {max_duration} time units; "
                f"target {r_to} not reached (r_T={report.r_t:.15g})"
            )

        schedule = controls_for_path(curve.times, curve.directions, curve.radii, p)
        n0 = BlochState(n=r_from * curve.directions[0])
        trajectory = integrate_bloch(n0, schedule.control_at, p, float(curve.times[-1]), dt=dt)

        final_radius = float(trajectory.radii[-1])
        terminal_error = abs(final_radius - r_to)
        if terminal_error > STEER_TOLERANCE:
            logger.warning(f"Steering ended at r={final_radius:.9f}, {terminal_error:.2e} from target")
        logger.info(
            f"Steered r {r_from} -> {r_to} in {trajectory.duration:.6g} "
            f"({'f_M' if increasing else 'f_m'} policy)"
        )
        return trajectory, {
            "feasible": True,
            "duration": trajectory.duration,
            "r_T": report.r_t,
            "policy": "argmax" if increasing else "argmin",
            "final_radius": final_radius,
            "terminal_error": terminal_error,
            **schedule.to_dict(),
        }

    @staticmethod
    def simulate(
        model: LoadedModel,
        n0: np.ndarray,
        duration: float,
        controls: Optional[np.ndarray] = None,
        dt: Optional[float] = None,
    ) -> Tuple[Trajectory, Dict]:
        """
        Integrate the Bloch equation from n0.

        Args:
            controls: optional (N, 4) samples t, u1, u2, u3, linearly
                interpolated and held constant outside their time range
        """
        p = model.require_physical().system
        state = BlochState(n=np.asarray(n0, dtype=float))

        control_fn = None
        if controls is not None:
            t_samples = controls[:, 0]
            u_samples = controls[:, 1:]

            def control_fn(t: float) -> np.ndarray:
                return np.array([np.interp(t, t_samples, u_samples[:, j]) for j in range(3)])

        trajectory = integrate_bloch(state, control_fn, p, duration, dt=dt)
        try:
            BlochState(n=trajectory.final_state)
        except InvalidDensityError as e:
            raise BallViolationError(f"Final state left the Bloch ball: {e}") from e

        return trajectory, {
            "duration": trajectory.duration,
            "steps": len(trajectory.times) - 1,
            "final_state": trajectory.final_state.tolist(),
            "final_radius": float(trajectory.radii[-1]),
            "final_purity": BlochState(n=trajectory.final_state).purity,
        }

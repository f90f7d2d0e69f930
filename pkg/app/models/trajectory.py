"""
Time-series types produced by the integrators and the control synthesizer.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional
import logging

import numpy as np
from scipy.interpolate import CubicSpline

logger = logging.getLogger(__name__)

TRAJECTORY_BALL_TOL = 1e-6
UNIT_TOL = 1e-10


def as_control(u) -> np.ndarray:
    """Validate a control triple (u_x, u_y, u_z)."""
    u = np.asarray(u, dtype=float)
    if u.shape != (3,) or not np.all(np.isfinite(u)):
        raise ValueError(f"Control must be a finite 3-vector, got {u!r}")
    return u


@dataclass
class Trajectory:
    """Time-stamped Bloch vectors, optionally with the controls applied."""
    times: np.ndarray
    states: np.ndarray                  # shape (N, 3), Bloch vectors
    controls: Optional[np.ndarray] = None  # shape (N, 3)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=float)
        if self.states.shape != (len(self.times), 3):
            raise ValueError("times and states lengths disagree")
        if len(self.times) > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        if self.controls is not None:
            self.controls = np.asarray(self.controls, dtype=float)
            if self.controls.shape != self.states.shape:
                raise ValueError("controls and states lengths disagree")

    @property
    def radii(self) -> np.ndarray:
        return np.linalg.norm(self.states, axis=1)

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])

    def rows(self) -> np.ndarray:
        """Columns t, n1, n2, n3, r, u1, u2, u3 (controls zero when absent)."""
        controls = self.controls if self.controls is not None else np.zeros_like(self.states)
        return np.column_stack([self.times, self.states, self.radii, controls])


@dataclass
class RadialCurve:
    """Radius history of the projected equation under a direction policy."""
    times: np.ndarray
    radii: np.ndarray
    directions: np.ndarray              # shape (N, 3), policy output at each sample
    floor_hit: bool = False
    target_hit: bool = False

    @property
    def final_radius(self) -> float:
        return float(self.radii[-1])


@dataclass
class ControlSchedule:
    """
    Piecewise-continuous controls with the path they were planned for.

    Each segment between consecutive breakpoints is interpolated by a cubic
    spline; controls may jump at breakpoints.
    """
    times: np.ndarray
    controls: np.ndarray                # shape (N, 3)
    planned_path: np.ndarray            # shape (N, 3), unit vectors
    planned_radius: np.ndarray          # shape (N,)
    breakpoints: List[float] = field(default_factory=list)
    _splines: List[CubicSpline] = field(default_factory=list, init=False, repr=False)
    _edges: np.ndarray = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.controls = np.asarray(self.controls, dtype=float)
        self.planned_path = np.asarray(self.planned_path, dtype=float)
        self.planned_radius = np.asarray(self.planned_radius, dtype=float)

        norms = np.linalg.norm(self.planned_path, axis=1)
        if np.max(np.abs(norms - 1.0)) > UNIT_TOL:
            raise ValueError("planned path must consist of unit vectors")
        if np.any(self.planned_radius <= 0) or np.any(self.planned_radius > 1.0 + TRAJECTORY_BALL_TOL):
            raise ValueError("planned radius must lie in (0, 1]")

        if not self.breakpoints:
            self.breakpoints = [float(self.times[0]), float(self.times[-1])]
        self._build_splines()

    def _segment_slices(self) -> List[slice]:
        """Index ranges of each segment; breakpoint samples belong to both sides."""
        idx = [int(np.searchsorted(self.times, t)) for t in self.breakpoints]
        idx[0], idx[-1] = 0, len(self.times) - 1
        return [slice(i0, i1 + 1) for i0, i1 in zip(idx[:-1], idx[1:]) if i1 > i0]

    def _build_splines(self):
        self._splines = []
        edges = []
        for seg in self._segment_slices():
            t = self.times[seg]
            if len(t) >= 2:
                self._splines.append(CubicSpline(t, self.controls[seg], axis=0))
                edges.append(t[0])
        self._edges = np.array(edges)

    def control_at(self, t: float) -> np.ndarray:
        if len(self.times) == 1 or not self._splines:
            return self.controls[0].copy()
        k = int(np.searchsorted(self._edges, t, side="right")) - 1
        k = min(max(k, 0), len(self._splines) - 1)
        return self._splines[k](t)

    @property
    def max_control_norm(self) -> float:
        return float(np.max(np.linalg.norm(self.controls, axis=1)))

    def to_dict(self) -> Dict:
        return {
            "breakpoints": list(self.breakpoints),
            "max_control_norm": self.max_control_norm,
            "samples": int(len(self.times)),
        }

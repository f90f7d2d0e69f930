from dataclasses import dataclass

import numpy as np

from app.utils.enums import CandidateBranch


@dataclass(frozen=True, eq=False)
class StationaryCandidate:
    """A solution of the Lagrange conditions for the radial rate on the unit sphere."""
    direction: np.ndarray
    multiplier: float
    rate: float
    branch: CandidateBranch
    ring: bool = False  # one representative of a continuous family


@dataclass(frozen=True, eq=False)
class EnvelopePoint:
    """Extremal radial rates at one radius and the directions achieving them."""
    r: float
    f_max: float
    f_min: float
    argmax: np.ndarray
    argmin: np.ndarray


@dataclass
class RateEnvelope:
    """Sampled curves f_M(r), f_m(r) on an increasing grid in (0, 1]."""
    r_grid: np.ndarray
    f_max: np.ndarray
    f_min: np.ndarray
    argmax_dirs: np.ndarray  # shape (N, 3)
    argmin_dirs: np.ndarray  # shape (N, 3)
    analytic: bool = False

    def __len__(self) -> int:
        return len(self.r_grid)

    def rows(self) -> np.ndarray:
        """Columns r, f_max, f_min, nmax1..3, nmin1..3."""
        return np.column_stack([
            self.r_grid, self.f_max, self.f_min, self.argmax_dirs, self.argmin_dirs,
        ])

    def is_monotone(self, slack: float = 1e-9) -> bool:
        """Both curves non-increasing along the grid, up to slack."""
        return bool(
            np.all(np.diff(self.f_max) <= slack) and np.all(np.diff(self.f_min) <= slack)
        )

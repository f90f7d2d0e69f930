"""
Domain types for two-level Lindblad systems.

All types are immutable after construction and validate their invariants in
``__post_init__``. Matrices are stored as numpy arrays with writeable=False.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple
import logging

import numpy as np

from app.utils.errors import InvalidDensityError, NonTracelessError, NotPsdError

logger = logging.getLogger(__name__)


# Tolerances shared by the validity checks
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-12
TRACE_TOL = 1e-12
BALL_TOL = 1e-9
INEQUALITY_TOL = 1e-9


def _frozen(array: np.ndarray, dtype) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def _scaled_tol(tol: float, matrix: np.ndarray) -> float:
    """Absolute tolerance, scaled by the matrix norm above unit scale."""
    return tol * max(1.0, float(np.linalg.norm(matrix)))


def complex_to_pair(z: complex) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def matrix_to_pairs(m: np.ndarray) -> list:
    return [[complex_to_pair(z) for z in row] for row in np.asarray(m)]


@dataclass(frozen=True, eq=False)
class LindbladOp:
    """A traceless 2x2 Lindblad operator (rate^1/2 units)."""
    entries: np.ndarray

    def __post_init__(self):
        m = _frozen(self.entries, complex)
        if m.shape != (2, 2):
            raise ValueError(f"Lindblad operator must be 2x2, got shape {m.shape}")
        if abs(np.trace(m)) > _scaled_tol(TRACE_TOL, m):
            raise NonTracelessError(
                f"Lindblad operator has trace {np.trace(m):.3e}; use LindbladOp.canonical()"
            )
        object.__setattr__(self, "entries", m)

    @classmethod
    def canonical(cls, matrix) -> "LindbladOp":
        """Remove the identity component; it only renormalizes the Hamiltonian."""
        m = np.asarray(matrix, dtype=complex)
        m = m - 0.5 * np.trace(m) * np.eye(2)
        return cls(m)

    def to_dict(self) -> Dict:
        return {"entries": matrix_to_pairs(self.entries)}


@dataclass(frozen=True, eq=False)
class GksModel:
    """
    Gorini-Kossakowski-Sudarshan coefficient matrix in the Pauli basis.

    Uses the convention of the control system with raw Pauli matrices and a 1/2
    prefactor on the dissipator, so a single operator L = sum c_j sigma_j gives
    a_jk = 2 c_j conj(c_k).
    """
    a: np.ndarray
    source_ops: Optional[Tuple[LindbladOp, ...]] = None

    def __post_init__(self):
        a = _frozen(self.a, complex)
        if a.shape != (3, 3):
            raise ValueError(f"GKS matrix must be 3x3, got shape {a.shape}")
        tol = _scaled_tol(HERMITIAN_TOL, a)
        if np.max(np.abs(a - a.conj().T)) > tol:
            raise NotPsdError("GKS matrix is not Hermitian")
        eigenvalues = np.linalg.eigvalsh(0.5 * (a + a.conj().T))
        if eigenvalues.min() < -_scaled_tol(PSD_TOL, a):
            raise NotPsdError(
                f"GKS matrix is not positive semidefinite (min eigenvalue {eigenvalues.min():.3e})"
            )
        object.__setattr__(self, "a", a)
        if self.source_ops is not None:
            object.__setattr__(self, "source_ops", tuple(self.source_ops))

    @property
    def symmetric_part(self) -> np.ndarray:
        """A^S = (A + A^T)/2, real for a Hermitian A."""
        return np.real(0.5 * (self.a + self.a.T))

    def to_dict(self) -> Dict:
        return {"gks": matrix_to_pairs(self.a)}


@dataclass(frozen=True, eq=False)
class ProjectedSystem:
    """
    Six-parameter description of the radial dynamics.

    ``a`` holds the eigenvalues of A^S in descending order, ``b`` the axial
    vector of the antisymmetric part, both in the intrinsic frame. ``frame``
    rows are the intrinsic axes in Pauli coordinates: intrinsic = frame @ pauli.
    """
    a: np.ndarray
    b: np.ndarray
    frame: np.ndarray = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        a = _frozen(self.a, float)
        b = _frozen(self.b, float)
        frame = _frozen(self.frame, float)
        if a.shape != (3,) or b.shape != (3,) or frame.shape != (3, 3):
            raise ValueError("ProjectedSystem needs a, b of length 3 and a 3x3 frame")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("ProjectedSystem parameters must be finite")

        scale = max(1.0, float(np.max(np.abs(a))))
        if a[0] < a[1] - PSD_TOL * scale or a[1] < a[2] - PSD_TOL * scale:
            raise ValueError(f"a must be sorted descending, got {a.tolist()}")
        if a[2] < -PSD_TOL * scale:
            raise NotPsdError(f"Symmetric part has negative eigenvalue {a[2]:.3e}")

        if np.max(np.abs(frame @ frame.T - np.eye(3))) > 1e-12 or np.linalg.det(frame) < 0:
            raise ValueError("frame must be a proper rotation")

        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "frame", frame)

    @classmethod
    def from_params(cls, a, b) -> "ProjectedSystem":
        """
        Build from possibly unsorted (a, b) given on a common set of axes.

        The axes are permuted into descending order of a; an odd permutation is
        made proper by reversing the third axis, which also flips its b component.
        """
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        order = np.argsort(-a, kind="stable")
        frame = np.eye(3)[order]
        if np.linalg.det(frame) < 0:
            frame[2] *= -1.0
        return cls(a=a[order], b=frame @ b, frame=frame)

    @property
    def trace(self) -> float:
        return float(np.sum(self.a))

    @property
    def b_norm(self) -> float:
        return float(np.linalg.norm(self.b))

    @property
    def scale(self) -> float:
        """Characteristic rate of the system, used to scale tolerances."""
        return max(float(self.a[0]), self.b_norm)

    @property
    def is_trivial(self) -> bool:
        return self.scale == 0.0

    def to_gks(self) -> np.ndarray:
        """Hermitian coefficient matrix diag(a) - (i/2)[b]_x in the intrinsic frame."""
        b1, b2, b3 = self.b
        cross = np.array([
            [0.0, b3, -b2],
            [-b3, 0.0, b1],
            [b2, -b1, 0.0],
        ])
        return np.diag(self.a).astype(complex) - 0.5j * cross

    def to_dict(self) -> Dict:
        return {
            "a": self.a.tolist(),
            "b": self.b.tolist(),
            "frame": self.frame.tolist(),
        }


@dataclass(frozen=True, eq=False)
class BlochState:
    """Bloch vector n with |n| <= 1."""
    n: np.ndarray

    def __post_init__(self):
        n = _frozen(self.n, float)
        if n.shape != (3,) or not np.all(np.isfinite(n)):
            raise InvalidDensityError(f"Bloch vector must be a finite 3-vector, got {n!r}")
        if np.linalg.norm(n) > 1.0 + BALL_TOL:
            raise InvalidDensityError(f"Bloch vector outside the unit ball (|n|={np.linalg.norm(n):.12f})")
        object.__setattr__(self, "n", n)

    @property
    def radius(self) -> float:
        return float(np.linalg.norm(self.n))

    @property
    def direction(self) -> np.ndarray:
        r = self.radius
        if r == 0.0:
            raise InvalidDensityError("Direction undefined at the completely mixed state")
        return self.n / r

    @property
    def purity(self) -> float:
        """sqrt(tr rho^2) = sqrt((1 + r^2)/2)."""
        return float(np.sqrt(0.5 * (1.0 + self.radius ** 2)))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite 2x2 matrix."""
    entries: np.ndarray

    def __post_init__(self):
        rho = _frozen(self.entries, complex)
        if rho.shape != (2, 2):
            raise InvalidDensityError(f"Density matrix must be 2x2, got shape {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
            raise InvalidDensityError("Density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > TRACE_TOL:
            raise InvalidDensityError(f"Density matrix trace is {np.trace(rho).real:.15f}")
        if np.linalg.eigvalsh(rho).min() < -PSD_TOL:
            raise InvalidDensityError("Density matrix has a negative eigenvalue")
        object.__setattr__(self, "entries", rho)

"""
Bloch-vector, radial and unit-vector equations in the intrinsic frame.

Controls enter through the Hamiltonian sum_j u_j sigma_j, which rotates the
Bloch vector as 2 u x n.
"""

from typing import Tuple
import math

import numpy as np

from app.models.quantum import BlochState, ProjectedSystem
from app.models.trajectory import UNIT_TOL, as_control
from app.utils.errors import DegenerateStateError, NotUnitError, ZeroRadiusError

# Rotation rate of the Bloch vector per unit control amplitude
CONTROL_COUPLING = 2.0


def _check_unit(n_hat: np.ndarray) -> np.ndarray:
    n_hat = np.asarray(n_hat, dtype=float)
    if abs(np.linalg.norm(n_hat) - 1.0) > UNIT_TOL:
        raise NotUnitError(f"Direction has norm {np.linalg.norm(n_hat):.12f}")
    return n_hat


class BlochDynamics:
    """Right-hand sides of the projected Lindblad control system."""

    @staticmethod
    def bloch_rhs(n: np.ndarray, u: np.ndarray, p: ProjectedSystem) -> np.ndarray:
        """dn/dt = b + 2 u x n + (A^S - tr(A^S) I) n."""
        n = np.asarray(n, dtype=float)
        u = as_control(u)
        return p.b + CONTROL_COUPLING * np.cross(u, n) + (p.a - p.trace) * n

    @staticmethod
    def radial_rate(r: float, n_hat: np.ndarray, p: ProjectedSystem) -> float:
        """dr/dt = sum_j b_j n_j - r sum_j a_j (1 - n_j^2); independent of the controls."""
        n_hat = _check_unit(n_hat)
        if r < 0:
            raise ZeroRadiusError(f"Radius must be non-negative, got {r}")
        return rate_unchecked(r, n_hat, p)

    @staticmethod
    def radial_rate_batch(r: float, directions: np.ndarray, p: ProjectedSystem) -> np.ndarray:
        """Vectorized radial rate over an (N, 3) array of unit directions."""
        directions = np.asarray(directions, dtype=float)
        return directions @ p.b - r * ((1.0 - directions ** 2) @ p.a)

    @staticmethod
    def unit_rhs(n_hat: np.ndarray, r: float, u: np.ndarray, p: ProjectedSystem) -> np.ndarray:
        """
        dn_hat/dt = 2 u x n_hat + (b - (b.n_hat) n_hat)/r + (A^S - n_hat.A^S n_hat) n_hat.

        The result is tangent to the sphere at n_hat.
        """
        if r <= 0:
            raise ZeroRadiusError(f"Unit-vector equation undefined at r={r}")
        n_hat = _check_unit(n_hat)
        u = as_control(u)
        a_n = p.a * n_hat
        return (
            CONTROL_COUPLING * np.cross(u, n_hat)
            + (p.b - np.dot(p.b, n_hat) * n_hat) / r
            + a_n - np.dot(n_hat, a_n) * n_hat
        )

    @staticmethod
    def eigenpair(state: BlochState) -> Tuple[float, float, np.ndarray, np.ndarray]:
        """
        Eigenvalues (1 +- r)/2 and orthonormal eigenvectors of rho(n).

        psi_+ uses the chart centred on the +z pole and switches to the -z
        chart near the south pole; psi_- is the orthogonal complement.
        """
        r = state.radius
        if r < 1e-12:
            raise DegenerateStateError("Eigenvectors undefined at the completely mixed state")
        nx, ny, nz = state.n / r
        if nz > -0.5:
            psi_plus = np.array([
                math.sqrt((1.0 + nz) / 2.0),
                (nx + 1j * ny) / math.sqrt(2.0 * (1.0 + nz)),
            ])
        else:
            psi_plus = np.array([
                (nx - 1j * ny) / math.sqrt(2.0 * (1.0 - nz)),
                math.sqrt((1.0 - nz) / 2.0),
            ])
        psi_minus = orthogonal_complement(psi_plus)
        return (1.0 + r) / 2.0, (1.0 - r) / 2.0, psi_plus, psi_minus


def orthogonal_complement(psi: np.ndarray) -> np.ndarray:
    """Unit vector orthogonal to a unit 2-vector psi."""
    return np.array([-np.conj(psi[1]), np.conj(psi[0])])


def rate_unchecked(r: float, n_hat, p: ProjectedSystem) -> float:
    """Radial rate without argument validation, for inner loops."""
    a1, a2, a3 = p.a
    b1, b2, b3 = p.b
    n1, n2, n3 = n_hat
    return (b1 * n1 + b2 * n2 + b3 * n3) - r * (
        a1 * (1.0 - n1 * n1) + a2 * (1.0 - n2 * n2) + a3 * (1.0 - n3 * n3)
    )


def bloch_direction(psi: np.ndarray) -> np.ndarray:
    """Bloch vector <psi|sigma|psi> of a unit 2-vector."""
    psi = np.asarray(psi, dtype=complex)
    rho = np.outer(psi, psi.conj())
    return np.array([
        2.0 * rho[0, 1].real,
        -2.0 * rho[0, 1].imag,
        (rho[0, 0] - rho[1, 1]).real,
    ])

"""
Conversions between Lindblad operator lists, the GKS matrix and the
six-parameter projected form, plus the Bloch-vector <-> density-matrix map.
"""

from typing import Iterable, List, Optional, Sequence
import logging

import numpy as np
from scipy.linalg import eigh

from app.models.quantum import (
    BlochState,
    DensityMatrix,
    GksModel,
    LindbladOp,
    ProjectedSystem,
    INEQUALITY_TOL,
)
from app.pipelines.lindblad.pauli import (
    IDENTITY,
    LEVI_CIVITA,
    PAULI,
    SIGMA_MINUS,
    SIGMA_PLUS,
    gks_dissipator,
    hamiltonian_generator,
    pauli_expand,
)
from app.utils.errors import NotPsdError

logger = logging.getLogger(__name__)


def gks_from_lindblad(ops: Sequence[LindbladOp]) -> GksModel:
    """a_jk = 2 sum_m c_j^(m) conj(c_k^(m)) with c^(m) the Pauli coefficients of L_m."""
    a = np.zeros((3, 3), dtype=complex)
    for op in ops:
        c = pauli_expand(op.entries)
        a += 2.0 * np.outer(c, c.conj())
    # remove round-off anti-Hermitian part
    a = 0.5 * (a + a.conj().T)
    return GksModel(a=a, source_ops=tuple(ops))


def antisymmetric_vector(a: np.ndarray) -> np.ndarray:
    """b_l = sum_jk i a_jk eps_jkl, real for a Hermitian a."""
    b = 1j * np.einsum("jk,jkl->l", a, LEVI_CIVITA)
    return np.real(b)


def _align_degenerate(eigenvalues: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """
    Replace the solver's arbitrary basis of each degenerate eigenspace by the
    Gram-Schmidt projection of the Pauli axes onto that eigenspace.
    """
    vectors = vectors.copy()
    tol = 1e-10 * max(1.0, float(np.max(np.abs(eigenvalues))))
    start = 0
    while start < 3:
        stop = start + 1
        while stop < 3 and abs(eigenvalues[stop] - eigenvalues[start]) <= tol:
            stop += 1
        size = stop - start
        if size > 1:
            block = vectors[:, start:stop]
            projector = block @ block.T
            basis: List[np.ndarray] = []
            for axis in np.eye(3):
                v = projector @ axis
                for w in basis:
                    v = v - np.dot(w, v) * w
                norm = np.linalg.norm(v)
                if norm > 1e-6:
                    basis.append(v / norm)
                if len(basis) == size:
                    break
            vectors[:, start:stop] = np.column_stack(basis)
        start = stop
    return vectors


def _canonical_frame(vectors: np.ndarray) -> np.ndarray:
    """Make each column's largest-magnitude entry positive, then make the frame proper."""
    vectors = vectors.copy()
    for col in range(3):
        pivot = int(np.argmax(np.abs(vectors[:, col])))
        if vectors[pivot, col] < 0:
            vectors[:, col] *= -1.0
    if np.linalg.det(vectors) < 0:
        vectors[:, 2] *= -1.0
    return vectors


def project_to_six_params(g: GksModel) -> ProjectedSystem:
    """
    Eigen-decompose A^S and express b in its eigenbasis.

    Args:
        g: validated GKS model in the Pauli basis

    Returns:
        ProjectedSystem with a sorted descending and frame rows equal to the
        canonicalized eigenvectors of A^S.
    """
    a_sym = g.symmetric_part
    eigenvalues, vectors = eigh(a_sym)
    eigenvalues = eigenvalues[::-1]
    vectors = _align_degenerate(eigenvalues, vectors[:, ::-1])
    vectors = _canonical_frame(vectors)

    if eigenvalues[-1] < -1e-12 * max(1.0, float(eigenvalues[0])):
        raise NotPsdError(f"A^S has negative eigenvalue {eigenvalues[-1]:.3e}")
    eigenvalues = np.maximum(eigenvalues, 0.0)

    frame = vectors.T
    b = frame @ antisymmetric_vector(g.a)
    return ProjectedSystem(a=eigenvalues, b=b, frame=frame)


def validate_inequality(p: ProjectedSystem) -> bool:
    """a1 b1^2 + a2 b2^2 + a3 b3^2 <= 4 a1 a2 a3 (up to a scaled tolerance)."""
    lhs = float(np.dot(p.a, p.b ** 2))
    rhs = 4.0 * float(np.prod(p.a))
    return lhs <= rhs + INEQUALITY_TOL * max(1.0, p.scale) ** 3


def is_physical(p: ProjectedSystem) -> bool:
    """Full positive semidefiniteness of the rebuilt GKS matrix."""
    try:
        GksModel(a=p.to_gks())
    except NotPsdError:
        return False
    return True


def bloch_from_density(rho: DensityMatrix) -> BlochState:
    """n_j = tr(sigma_j rho)."""
    n = np.real(np.einsum("jab,ba->j", PAULI, rho.entries))
    return BlochState(n=n)


def density_from_bloch(state: BlochState) -> DensityMatrix:
    """rho = (I + sum_j n_j sigma_j)/2."""
    rho = 0.5 * (IDENTITY + np.einsum("j,jab->ab", state.n, PAULI))
    return DensityMatrix(entries=rho)


def generator_bloch_velocity(n: np.ndarray, u: np.ndarray, g: GksModel) -> np.ndarray:
    """
    Bloch velocity obtained by applying the full controlled generator to rho(n).

    Works on the matrix level, in the Pauli frame; used to pin conventions of
    the vector equations.
    """
    rho = 0.5 * (IDENTITY + np.einsum("j,jab->ab", np.asarray(n, dtype=float), PAULI))
    rho_dot = hamiltonian_generator(u, rho) + gks_dissipator(g.a, rho)
    return np.real(np.einsum("jab,ba->j", PAULI, rho_dot))


def discard_drift(hamiltonian: Optional[np.ndarray]) -> Optional[np.ndarray]:
    """
    Drop a drift Hamiltonian, returning the control offset it implies.

    The identity part has no effect and the Pauli part is absorbed by
    shifting the unbounded controls, u_j -> u_j - c_j.
    """
    if hamiltonian is None:
        return None
    h = np.asarray(hamiltonian, dtype=complex)
    h = h - 0.5 * np.trace(h) * IDENTITY
    offset = np.real(pauli_expand(h))
    logger.warning(
        f"Drift Hamiltonian discarded; equivalent to shifting controls by {offset.tolist()}"
    )
    return offset


def raising_lowering_ops(alpha_plus: float, alpha_minus: float) -> List[LindbladOp]:
    """Operators sqrt(alpha_+) sigma_+ and sqrt(alpha_-) sigma_-."""
    return [
        LindbladOp(np.sqrt(alpha_plus) * SIGMA_PLUS),
        LindbladOp(np.sqrt(alpha_minus) * SIGMA_MINUS),
    ]


def raising_lowering_system(alpha_plus: float, alpha_minus: float) -> ProjectedSystem:
    """Projected system of competing raising/lowering at the given rates."""
    return project_to_six_params(gks_from_lindblad(raising_lowering_ops(alpha_plus, alpha_minus)))


def project_operators(ops: Iterable[LindbladOp]) -> ProjectedSystem:
    return project_to_six_params(gks_from_lindblad(list(ops)))

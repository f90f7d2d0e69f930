"""
Pauli algebra and two-level superoperators.

The superoperators here are the direct matrix forms of the Lindblad and
Lindblad-Kossakowski generators; the rest of the package works on Bloch
vectors and uses these only as an oracle.
"""

from typing import Iterable

import numpy as np

from app.utils.errors import NonTracelessError

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

# sigma_- maps |1> to |2>; |1> is the +1 eigenvector of sigma_z
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)

LEVI_CIVITA = np.zeros((3, 3, 3))
LEVI_CIVITA[0, 1, 2] = LEVI_CIVITA[1, 2, 0] = LEVI_CIVITA[2, 0, 1] = 1.0
LEVI_CIVITA[0, 2, 1] = LEVI_CIVITA[2, 1, 0] = LEVI_CIVITA[1, 0, 2] = -1.0

TRACELESS_TOL = 1e-10


def pauli_expand(m: np.ndarray) -> np.ndarray:
    """Coefficients c with m = sum_j c_j sigma_j, c_j = tr(sigma_j m)/2."""
    m = np.asarray(m, dtype=complex)
    if abs(np.trace(m)) > TRACELESS_TOL * max(float(np.linalg.norm(m)), 1e-300):
        raise NonTracelessError(f"Matrix has trace {np.trace(m):.3e}")
    return 0.5 * np.einsum("jab,ba->j", PAULI, m)


def pauli_combine(c: Iterable[complex]) -> np.ndarray:
    return np.einsum("j,jab->ab", np.asarray(c, dtype=complex), PAULI)


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def anticommutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y + y @ x


def lindblad_dissipator(ops: Iterable[np.ndarray], rho: np.ndarray) -> np.ndarray:
    """sum_j L rho L^+ - {L^+ L, rho}/2."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((2, 2), dtype=complex)
    for op in ops:
        op = np.asarray(op, dtype=complex)
        op_dag = op.conj().T
        out += op @ rho @ op_dag - 0.5 * anticommutator(op_dag @ op, rho)
    return out


def gks_dissipator(a: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """(1/2) sum_jk a_jk (sigma_j rho sigma_k - {sigma_k sigma_j, rho}/2)."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((2, 2), dtype=complex)
    for j in range(3):
        for k in range(3):
            if a[j, k] == 0:
                continue
            sj, sk = PAULI[j], PAULI[k]
            out += a[j, k] * (sj @ rho @ sk - 0.5 * anticommutator(sk @ sj, rho))
    return 0.5 * out


def hamiltonian_generator(u: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """[-i sum_j u_j sigma_j, rho]."""
    h = pauli_combine(np.asarray(u, dtype=float))
    return -1j * commutator(h, np.asarray(rho, dtype=complex))

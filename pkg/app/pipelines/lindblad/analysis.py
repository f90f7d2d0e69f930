"""
Trap radius, reachability, pure-state decay rate and purifiability.
"""

from typing import List, Optional, Sequence, Union
import logging

import numpy as np
from scipy.optimize import brentq

from app.models.analysis import PurifiabilityVerdict, TrapReport
from app.models.quantum import LindbladOp, ProjectedSystem
from app.pipelines.lindblad.core_model import is_physical, project_operators
from app.pipelines.lindblad.dynamics import orthogonal_complement
from app.pipelines.lindblad.extremal import ExtremalSolver
from app.utils.enums import PurifiabilityCategory, TrapMethod
from app.utils.errors import EmptyModelError, NotPsdError, NotUnitError, ZeroRadiusError

logger = logging.getLogger(__name__)

OperatorLike = Union[LindbladOp, np.ndarray]

ZERO_OP_TOL = 1e-12        # operators with smaller Frobenius norm are dropped
MULTIPLE_REL_TOL = 1e-10   # ||L_k - c L_j|| below this (relative) merges L_k into L_j
SINGULAR_REL_TOL = 1e-12   # |det L| / ||L||^2 below this is singular
EIGEN_REL_TOL = 1e-10      # eigenvector residual tolerance
TRAP_EDGE_TOL = 1e-12      # f_M(1) >= -tol * scale means r_T = 1
PURE_A2_TOL = 1e-12
CROSSCHECK_TOL = 1e-9


def _matrix(op: OperatorLike) -> np.ndarray:
    return op.entries if isinstance(op, LindbladOp) else np.asarray(op, dtype=complex)


def _f_max(r: float, p: ProjectedSystem) -> float:
    return ExtremalSolver.envelope_at(r, p).f_max


def trap_radius(p: ProjectedSystem) -> TrapReport:
    """
    Unique zero r_T of f_M on (0, 1].

    A system without an anti-symmetric part has f_M < 0 everywhere and no
    trap; r_T is reported as 0. When f_M(1) vanishes the whole open ball
    is controllable and r_T = 1.

    Raises:
        NotPsdError: the system is not a physical dissipator.
    """
    if not is_physical(p):
        raise NotPsdError(f"No trap radius for an unphysical system (a={p.a.tolist()}, b={p.b.tolist()})")
    scale = max(1.0, p.scale)
    if p.b_norm <= 1e-15 * scale:
        return TrapReport(r_t=0.0, trap_exists=False, method=TrapMethod.NONE, residual=0.0)

    if ExtremalSolver.is_axial(p):
        r_t = min(1.0, abs(float(p.b[2])) / (2.0 * float(p.a[0])))
        f_max, _ = ExtremalSolver.analytic_axial_envelope(p, r_t)
        return TrapReport(r_t=r_t, trap_exists=True, method=TrapMethod.ANALYTIC, residual=abs(f_max))

    f_one = _f_max(1.0, p)
    if f_one >= -TRAP_EDGE_TOL * scale:
        return TrapReport(r_t=1.0, trap_exists=True, method=TrapMethod.BISECTION, residual=abs(f_one))

    # f_M(r) -> |b| > 0 as r -> 0+, so a small enough left end is positive
    lo = 1e-3
    while _f_max(lo, p) <= 0.0:
        lo *= 1e-3
        if lo < 1e-300:
            raise ArithmeticError("Could not bracket the trap radius")
    r_t = brentq(_f_max, lo, 1.0, args=(p,), xtol=1e-16, rtol=4 * np.finfo(float).eps)
    residual = abs(_f_max(r_t, p))
    logger.debug(f"Trap radius {r_t:.15f} (residual {residual:.2e})")
    return TrapReport(r_t=float(r_t), trap_exists=True, method=TrapMethod.BISECTION, residual=residual)


def reachable(r_i: float, r_f: float, p: ProjectedSystem, trap: Optional[TrapReport] = None) -> bool:
    """r_i steers to r_f in finite time iff r_f <= r_i or both lie inside the trap."""
    for name, value in (("r_i", r_i), ("r_f", r_f)):
        if not 0.0 < value <= 1.0:
            raise ZeroRadiusError(f"{name} must lie in (0, 1], got {value}")
    if r_f <= r_i:
        return True
    trap = trap or trap_radius(p)
    return trap.trap_exists and r_i < trap.r_t and r_f < trap.r_t


def pure_state_rate(ops: Sequence[OperatorLike], psi_plus: np.ndarray) -> float:
    """dr/dt at the pure state psi_+: -2 sum_j |<psi_-|L_j|psi_+>|^2."""
    psi_plus = np.asarray(psi_plus, dtype=complex)
    if abs(np.linalg.norm(psi_plus) - 1.0) > 1e-10:
        raise NotUnitError(f"State has norm {np.linalg.norm(psi_plus):.12f}")
    psi_minus = orthogonal_complement(psi_plus)
    total = 0.0
    for op in ops:
        total += abs(np.vdot(psi_minus, _matrix(op) @ psi_plus)) ** 2
    return -2.0 * total


def _drop_zero(ops: Sequence[OperatorLike]) -> List[np.ndarray]:
    kept = [_matrix(op) for op in ops if np.linalg.norm(_matrix(op)) >= ZERO_OP_TOL]
    if not kept:
        raise EmptyModelError("All Lindblad operators are zero")
    return kept


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    k = int(np.argmax(np.abs(v)))
    return v * (abs(v[k]) / v[k])


def is_eigenvector(op: np.ndarray, v: np.ndarray) -> bool:
    value = np.vdot(v, op @ v)
    residual = np.linalg.norm(op @ v - value * v)
    return bool(residual <= EIGEN_REL_TOL * max(1.0, np.linalg.norm(op)))


def common_eigenvector(ops: Sequence[OperatorLike]) -> Optional[np.ndarray]:
    """
    A unit vector that every operator maps to a multiple of itself, or None.

    Candidates are the eigenvectors of the first nonzero operator. The
    returned vector has its largest component real and positive.
    """
    matrices = _drop_zero(ops)
    _, vectors = np.linalg.eig(matrices[0])
    for k in range(vectors.shape[1]):
        v = _canonical_phase(vectors[:, k])
        if all(is_eigenvector(m, v) for m in matrices):
            return v
    return None


def merge_multiples(ops: Sequence[OperatorLike]) -> List[np.ndarray]:
    """
    Combine operators that are scalar multiples of an earlier one.

    L_k = c L_j contributes (1 + |c|^2) D[L_j], so the pair becomes
    sqrt(1 + |c|^2) L_j.
    """
    merged: List[np.ndarray] = []
    for m in ops:
        m = np.asarray(m, dtype=complex)
        for i, base in enumerate(merged):
            c = np.vdot(base, m) / np.vdot(base, base)
            if np.linalg.norm(m - c * base) < MULTIPLE_REL_TOL * np.linalg.norm(m):
                merged[i] = np.sqrt(1.0 + abs(c) ** 2) * base
                break
        else:
            merged.append(m)
    return merged


def is_singular(op: np.ndarray) -> bool:
    return bool(abs(np.linalg.det(op)) < SINGULAR_REL_TOL * np.linalg.norm(op) ** 2)


def classify_purifiable(ops: Sequence[OperatorLike]) -> PurifiabilityVerdict:
    """
    Decide whether every mixed state can be steered arbitrarily close to a
    pure state.

    Purifiable iff the operators share an eigenvector and the projected
    system has a2 > 0; the latter rules out a single operator with
    orthogonal eigenvectors. The category names the structural case. The
    verdict is cross-checked against r_T == 1 and a disagreement is logged.
    """
    canonical = [LindbladOp.canonical(_matrix(op)).entries for op in ops]
    merged = merge_multiples(_drop_zero(canonical))
    lindblad_ops = [LindbladOp(m) for m in merged]
    p = project_operators(lindblad_ops)
    shared = common_eigenvector(merged)
    singular = [is_singular(m) for m in merged]
    has_dissipative_plane = float(p.a[1]) > PURE_A2_TOL * max(1.0, p.scale)

    if shared is None:
        purifiable = False
        category = PurifiabilityCategory.NOT_PURIFIABLE
        reason = "operators share no eigenvector"
    elif not has_dissipative_plane:
        purifiable = False
        category = PurifiabilityCategory.NOT_PURIFIABLE
        reason = "single non-singular operator with orthogonal eigenvectors"
    elif len(merged) == 1:
        purifiable = True
        if singular[0]:
            category = PurifiabilityCategory.SINGLE_SINGULAR
            reason = "single singular operator"
        else:
            category = PurifiabilityCategory.SINGLE_NONSINGULAR_NONORTHOGONAL
            reason = "single non-singular operator with non-orthogonal eigenvectors"
    elif any(singular):
        purifiable = True
        category = PurifiabilityCategory.MIXED_SHARED_EIGENVECTOR
        reason = f"{sum(singular)} singular of {len(merged)} operators, shared eigenvector"
    else:
        purifiable = True
        category = PurifiabilityCategory.NONSINGULAR_SHARED_EIGENVECTOR
        reason = f"{len(merged)} non-singular operators with a shared eigenvector"

    trap = trap_radius(p)
    numeric = trap.trap_exists and trap.r_t >= 1.0 - CROSSCHECK_TOL
    if numeric != purifiable:
        logger.warning(
            f"Structural verdict purifiable={purifiable} disagrees with r_T={trap.r_t:.12f}"
        )

    return PurifiabilityVerdict(
        purifiable=purifiable,
        category=category,
        shared_eigenvector=shared,
        reason=reason,
        operator_count=len(merged),
        trap_radius=trap.r_t,
        cross_check_ok=numeric == purifiable,
    )

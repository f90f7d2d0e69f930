"""
Maximum and minimum of the radial rate over unit directions.

For fixed r the rate F(n) = b.n - r sum_j a_j (1 - n_j^2) is a quadratic on
the sphere. Its stationary points satisfy b_j = 2 (lambda - r a_j) n_j with
a Lagrange multiplier lambda, so every candidate falls into one of two
branches:

  * interior roots: lambda avoids every r a_j and is a root of
    sum_j b_j^2 / (lambda - r a_j)^2 = 4 (see roots.SecularEquation);
  * axis branch: lambda = r a_j on an axis with b_j = 0, leaving the
    component n_j free to close the unit-norm condition.

The envelope picks the best of a finite candidate list, which is both exact
and fast enough for dense grids. Axially symmetric systems also have their
candidates in closed form.
"""

from functools import lru_cache
from typing import List, Optional, Tuple
import logging
import math

import numpy as np

from app.models.envelope import EnvelopePoint, StationaryCandidate
from app.models.quantum import ProjectedSystem
from app.pipelines.lindblad.dynamics import BlochDynamics
from app.pipelines.lindblad.roots import SecularEquation, merge_poles
from app.utils.enums import CandidateBranch
from app.utils.errors import NotApplicableError, ZeroRadiusError

logger = logging.getLogger(__name__)

ZERO_B_REL = 1e-10        # |b_j| below this (relative) counts as zero
POLE_MERGE_REL = 1e-10    # poles r a_j closer than this (relative) coincide
NORM_SLACK = 1e-12        # tolerance on 1 - sum n_k^2 for the axis branch
TIE_REL = 1e-12           # rates within this (relative) are ties
AXIAL_REL = 1e-12         # tolerance for the axial-symmetry test

_AXES = (
    (-1.0, 0.0, 0.0), (1.0, 0.0, 0.0),
    (0.0, -1.0, 0.0), (0.0, 1.0, 0.0),
    (0.0, 0.0, -1.0), (0.0, 0.0, 1.0),
)


@lru_cache(maxsize=8)
def fibonacci_sphere(count: int) -> np.ndarray:
    """Deterministic, nearly uniform (count, 3) lattice of unit vectors."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    i = np.arange(count, dtype=float)
    y = i * (2.0 / count) - 1.0 + 1.0 / count
    rho = np.sqrt(np.clip(1.0 - y * y, 0.0, None))
    phi = i * math.pi * (3.0 - math.sqrt(5.0))
    points = np.column_stack([np.cos(phi) * rho, y, np.sin(phi) * rho])
    points /= np.linalg.norm(points, axis=1)[:, None]
    points.setflags(write=False)
    return points


def _pick(candidates: List[StationaryCandidate], best: float, tie: float) -> np.ndarray:
    """Lexicographically smallest direction among candidates tied with best."""
    tied = [c.direction for c in candidates if abs(c.rate - best) <= tie]
    return min(tied, key=lambda d: tuple(d))


class ExtremalSolver:
    """Stationary points and extremal values of the radial rate."""

    @staticmethod
    def stationary_candidates(r: float, p: ProjectedSystem) -> List[StationaryCandidate]:
        """
        Every stationary point of the radial rate on the unit sphere.

        Continuous families (rings) are represented by their intersections
        with the coordinate planes. A system with a = b = 0 has a constant
        rate; the six coordinate axes are returned tagged DEGENERATE.

        Raises:
            ZeroRadiusError: if r <= 0.
        """
        if r <= 0:
            raise ZeroRadiusError(f"Candidates require r > 0, got {r}")
        a = [float(x) for x in p.a]
        b = [float(x) for x in p.b]
        scale = max(math.sqrt(b[0] ** 2 + b[1] ** 2 + b[2] ** 2), r * a[0])
        if scale == 0.0:
            logger.debug("a = b = 0: every direction is stationary, returning the six axes")
            return [
                StationaryCandidate(np.array(d), 0.0, 0.0, CandidateBranch.DEGENERATE)
                for d in _AXES
            ]

        zero_b = [abs(bj) <= ZERO_B_REL * scale for bj in b]
        pole_tol = POLE_MERGE_REL * scale
        poles = [r * aj for aj in a]

        def rate(n) -> float:
            return (b[0] * n[0] + b[1] * n[1] + b[2] * n[2]) - r * (
                a[0] * (1.0 - n[0] ** 2) + a[1] * (1.0 - n[1] ** 2) + a[2] * (1.0 - n[2] ** 2)
            )

        candidates: List[StationaryCandidate] = []

        # interior roots
        merged = merge_poles([(poles[j], b[j] ** 2) for j in range(3) if not zero_b[j]], pole_tol)
        equation = SecularEquation(merged)
        for lam in equation.roots():
            n = [0.0, 0.0, 0.0]
            for j in range(3):
                if zero_b[j]:
                    continue
                loc = min(merged, key=lambda m: abs(m[0] - poles[j]))[0]
                n[j] = b[j] / (2.0 * (lam - loc))
            norm = math.sqrt(n[0] ** 2 + n[1] ** 2 + n[2] ** 2)
            n = [x / norm for x in n]
            candidates.append(
                StationaryCandidate(np.array(n), lam, rate(n), CandidateBranch.INTERIOR_ROOT)
            )

        # axis branch
        seen: List[float] = []
        for j in range(3):
            if not zero_b[j] or any(abs(poles[j] - s) <= pole_tol for s in seen):
                continue
            seen.append(poles[j])
            lam = poles[j]
            cluster = [k for k in range(3) if abs(poles[k] - lam) <= pole_tol]
            if any(not zero_b[k] for k in cluster):
                continue
            fixed = [0.0, 0.0, 0.0]
            for k in range(3):
                if k not in cluster and not zero_b[k]:
                    fixed[k] = b[k] / (2.0 * (lam - poles[k]))
            slack = 1.0 - (fixed[0] ** 2 + fixed[1] ** 2 + fixed[2] ** 2)
            if slack < -NORM_SLACK:
                continue
            if slack <= NORM_SLACK:
                norm = math.sqrt(1.0 - slack)
                n = [x / norm for x in fixed]
                candidates.append(
                    StationaryCandidate(np.array(n), lam, rate(n), CandidateBranch.AXIS_BRANCH)
                )
                continue
            free = math.sqrt(slack)
            for k in cluster:
                for sign in (-1.0, 1.0):
                    n = list(fixed)
                    n[k] = sign * free
                    candidates.append(
                        StationaryCandidate(
                            np.array(n), lam, rate(n), CandidateBranch.AXIS_BRANCH, len(cluster) > 1
                        )
                    )

        return candidates

    @classmethod
    def envelope_at(cls, r: float, p: ProjectedSystem) -> EnvelopePoint:
        """
        f_M(r) and f_m(r) with their directions.

        Ties (rings, symmetric pairs) resolve to the lexicographically
        smallest direction.
        """
        candidates = cls.stationary_candidates(r, p)
        rates = [c.rate for c in candidates]
        f_max, f_min = max(rates), min(rates)
        tie = TIE_REL * max(1.0, p.b_norm, r * float(p.a[0]))
        return EnvelopePoint(
            r=r,
            f_max=f_max,
            f_min=f_min,
            argmax=_pick(candidates, f_max, tie),
            argmin=_pick(candidates, f_min, tie),
        )

    @staticmethod
    def is_axial(p: ProjectedSystem) -> bool:
        """b along the third axis, a1 == a2 > 0 and a3 == 0."""
        tol = AXIAL_REL * max(1.0, p.scale)
        a1, a2, a3 = (float(x) for x in p.a)
        return bool(
            a1 > tol
            and abs(a1 - a2) <= tol
            and abs(a3) <= tol
            and abs(p.b[0]) <= tol
            and abs(p.b[1]) <= tol
        )

    @classmethod
    def analytic_axial_envelope(cls, p: ProjectedSystem, r: float) -> Tuple[float, float]:
        """
        Closed-form envelope for b = (0, 0, b3), a = (a1, a1, 0):

            f_M = |b3| - 2 a1 r                   for r <  |b3| / (2 a1)
            f_M = b3^2 / (4 a1 r) - a1 r          otherwise
            f_m = -|b3| - 2 a1 r

        Raises:
            NotApplicableError: if the system is not of this shape.
        """
        if not cls.is_axial(p):
            raise NotApplicableError("System is not axially symmetric with a3 = 0")
        if r <= 0:
            raise ZeroRadiusError(f"Envelope requires r > 0, got {r}")
        a1 = float(p.a[0])
        b3 = abs(float(p.b[2]))
        r_s = b3 / (2.0 * a1)
        f_max = b3 - 2.0 * a1 * r if r < r_s else b3 * b3 / (4.0 * a1 * r) - a1 * r
        f_min = -b3 - 2.0 * a1 * r
        return f_max, f_min

    @classmethod
    def analytic_axial_candidates(cls, p: ProjectedSystem, r: float) -> List[StationaryCandidate]:
        """
        Closed-form stationary points of the axial case: the poles n3 = -1, +1
        and, when |b3| / (2 a1 r) < 1, the ring n3 = b3 / (2 a1 r) represented
        by its point with n2 = 0 and n1 < 0.
        """
        cls.analytic_axial_envelope(p, r)
        a1 = float(p.a[0])
        b3 = float(p.b[2])

        def rate(n3: float) -> float:
            return b3 * n3 - r * a1 * (1.0 + n3 * n3)

        candidates = [
            StationaryCandidate(np.array([0.0, 0.0, s]), s * b3 / 2.0, rate(s), CandidateBranch.ANALYTIC)
            for s in (-1.0, 1.0)
        ]
        n3 = b3 / (2.0 * a1 * r)
        if abs(n3) < 1.0:
            candidates.append(
                StationaryCandidate(
                    np.array([-math.sqrt(1.0 - n3 * n3), 0.0, n3]),
                    r * a1,
                    rate(n3),
                    CandidateBranch.ANALYTIC,
                    ring=True,
                )
            )
        return candidates

    @classmethod
    def analytic_axial_point(cls, p: ProjectedSystem, r: float) -> EnvelopePoint:
        """Closed-form envelope with the same tie-breaking as envelope_at."""
        f_max, f_min = cls.analytic_axial_envelope(p, r)
        candidates = cls.analytic_axial_candidates(p, r)
        best = max(candidates, key=lambda c: c.rate)
        worst = min(candidates, key=lambda c: c.rate)
        return EnvelopePoint(r=r, f_max=f_max, f_min=f_min, argmax=best.direction, argmin=worst.direction)

    @staticmethod
    def axial_branch_rates(p: ProjectedSystem, r: float) -> List[Tuple[int, Optional[float]]]:
        """
        For each intrinsic axis j with b_j = 0, the rate on the ring where
        lambda = r a_j, or None when that ring does not exist at this r.
        """
        if r <= 0:
            raise ZeroRadiusError(f"Rates require r > 0, got {r}")
        a = [float(x) for x in p.a]
        b = [float(x) for x in p.b]
        scale = max(p.b_norm, r * a[0])
        tol = ZERO_B_REL * scale
        out: List[Tuple[int, Optional[float]]] = []
        for j in range(3):
            if abs(b[j]) > tol:
                continue
            n = [0.0, 0.0, 0.0]
            exists = True
            for k in range(3):
                if k == j or abs(b[k]) <= tol:
                    continue
                gap = r * (a[j] - a[k])
                if abs(gap) <= POLE_MERGE_REL * scale:
                    exists = False
                    break
                n[k] = b[k] / (2.0 * gap)
            slack = 1.0 - (n[0] ** 2 + n[1] ** 2 + n[2] ** 2)
            if not exists or slack < -NORM_SLACK:
                out.append((j, None))
                continue
            n[j] = math.sqrt(max(slack, 0.0))
            out.append((j, float(BlochDynamics.radial_rate_batch(r, np.array([n]), p)[0])))
        return out

    @staticmethod
    def unbiased_rate_bounds(p: ProjectedSystem, r: float) -> Tuple[float, float]:
        """With b = 0 the rate stays in [-r (a1 + a2), -r (a2 + a3)]."""
        if r < 0:
            raise ZeroRadiusError(f"Rates require r >= 0, got {r}")
        a1, a2, a3 = (float(x) for x in p.a)
        return -r * (a1 + a2), -r * (a2 + a3)

    @staticmethod
    def brute_force_envelope(r: float, p: ProjectedSystem, count: int = 1_000_000) -> EnvelopePoint:
        """Sampling oracle on a Fibonacci lattice of at least 1000 directions."""
        if count < 1000:
            raise ValueError(f"Oracle needs at least 1000 samples, got {count}")
        directions = fibonacci_sphere(count)
        rates = BlochDynamics.radial_rate_batch(r, directions, p)
        i_max, i_min = int(np.argmax(rates)), int(np.argmin(rates))
        return EnvelopePoint(
            r=r,
            f_max=float(rates[i_max]),
            f_min=float(rates[i_min]),
            argmax=directions[i_max].copy(),
            argmin=directions[i_min].copy(),
        )

"""
Real roots of the secular equation

    g(lambda) = sum_i w_i / (lambda - p_i)^2 - c = 0,   w_i > 0, c > 0.

Instead of expanding into a polynomial, the poles split the real line into
intervals on which g is smooth and convex: the two outer intervals hold
exactly one root each, and an inner interval holds 0, 1 (tangent) or 2 roots
on either side of the unique minimum of g. Every root is therefore isolated
by a guaranteed sign change and polished with Brent's method.
"""

from typing import List, Sequence, Tuple
import math

import numpy as np
from scipy.optimize import brentq

XTOL = 1e-15
RTOL = 4 * np.finfo(float).eps
TANGENT_TOL = 1e-10


def merge_poles(poles: Sequence[Tuple[float, float]], tol: float) -> List[Tuple[float, float]]:
    """Sort (location, weight) pairs and merge locations closer than tol, summing weights."""
    merged: List[Tuple[float, float]] = []
    for loc, weight in sorted(poles):
        if merged and loc - merged[-1][0] <= tol:
            prev_loc, prev_weight = merged[-1]
            total = prev_weight + weight
            merged[-1] = ((prev_loc * prev_weight + loc * weight) / total, total)
        else:
            merged.append((loc, weight))
    return merged


class SecularEquation:
    """g(lambda) for fixed poles; poles must be distinct and sorted."""

    def __init__(self, poles: Sequence[Tuple[float, float]], level: float = 4.0):
        self.locations = [float(p) for p, _ in poles]
        self.weights = [float(w) for _, w in poles]
        self.level = level

    def __call__(self, lam: float) -> float:
        total = 0.0
        for p, w in zip(self.locations, self.weights):
            d = lam - p
            total += w / (d * d)
        return total - self.level

    def derivative(self, lam: float) -> float:
        total = 0.0
        for p, w in zip(self.locations, self.weights):
            d = lam - p
            total -= 2.0 * w / (d * d * d)
        return total

    def _inner_offset(self, i: int, toward: int) -> float:
        """
        Distance from pole i, toward neighbour pole i+toward, at which the
        pole's own term dominates the sign of g'.
        """
        p_i, w_i = self.locations[i], self.weights[i]
        gap = abs(self.locations[i + toward] - p_i)
        far = range(i + 1, len(self.locations)) if toward > 0 else range(0, i)
        competing = sum(8.0 * self.weights[j] / abs(self.locations[j] - p_i) ** 3 for j in far)
        return min(0.5 * gap, 0.5 * (w_i / competing) ** (1.0 / 3.0))

    def roots(self) -> List[float]:
        n = len(self.locations)
        if n == 0:
            return []
        total_weight = sum(self.weights)
        reach = math.sqrt(total_weight / self.level) * 2.0
        found: List[float] = []

        # left outer interval: g rises from -c to +inf
        p0, w0 = self.locations[0], self.weights[0]
        found.append(brentq(self, p0 - reach, p0 - math.sqrt(w0 / self.level) / 2.0,
                            xtol=XTOL, rtol=RTOL))

        for i in range(n - 1):
            lo = self.locations[i] + self._inner_offset(i, +1)
            hi = self.locations[i + 1] - self._inner_offset(i + 1, -1)
            lam_min = brentq(self.derivative, lo, hi, xtol=XTOL, rtol=RTOL)
            g_min = self(lam_min)
            if g_min > TANGENT_TOL:
                continue
            if g_min >= -TANGENT_TOL:
                found.append(lam_min)
                continue
            left = self.locations[i] + math.sqrt(self.weights[i] / self.level) / 2.0
            right = self.locations[i + 1] - math.sqrt(self.weights[i + 1] / self.level) / 2.0
            found.append(brentq(self, left, lam_min, xtol=XTOL, rtol=RTOL))
            found.append(brentq(self, lam_min, right, xtol=XTOL, rtol=RTOL))

        # right outer interval: g falls from +inf to -c
        pn, wn = self.locations[-1], self.weights[-1]
        found.append(brentq(self, pn + math.sqrt(wn / self.level) / 2.0, pn + reach,
                            xtol=XTOL, rtol=RTOL))
        return found

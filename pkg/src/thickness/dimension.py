"""Hausdorff-dimension lower bounds from thickness, and sanity oracles.

Transcendental formulas are evaluated in double precision; all comparisons
against them in this package use a 1e-9 tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core1d import CutOutSet1D, HomotheticIFS
from .errors import DegenerateError, DomainError
from .exact import INF, Q

TOL = 1e-9


@dataclass(frozen=True)
class DimBound:
    value: float
    formula: str  # "one_dim" or "r_d"
    tau: Fraction
    d: int = 1
    M0: int | None = None


@dataclass(frozen=True)
class RegionSample:
    x: float
    y: float


def _beta(tau) -> float:
    if tau == INF:
        return 1.0
    return math.log(2) / math.log(2 + 1 / float(tau))


def dim_lower_bound_1d(tau) -> DimBound:
    """``log 2 / log(2 + 1/tau)``, a lower bound for dim_H of a set of thickness tau."""
    tau = tau if tau == INF else Q(tau)
    if tau <= 0:
        raise DomainError("thickness must be positive")
    return DimBound(_beta(tau), "one_dim", tau)


def dim_lower_bound_rd(tau, d: int, M0: int) -> DimBound:
    """``d / (1 + log(1 + 1/tau) / log M0)`` for cube systems with >= M0 children."""
    tau = tau if tau == INF else Q(tau)
    if tau <= 0 or d < 1 or M0 < 2:
        raise DomainError("need tau > 0, d >= 1, M0 >= 2")
    inv = 0.0 if tau == INF else 1 / float(tau)
    value = d / (1 + math.log1p(inv) / math.log(M0))
    return DimBound(value, "r_d", tau, d, M0)


def region_boundary(tau, samples: int) -> list[RegionSample]:
    """Samples of the oblique side ``y = 1 - (1 + 1/tau) x`` and its mirror."""
    tau = Q(tau)
    if tau <= 0 or samples < 2:
        raise DomainError("need tau > 0 and samples >= 2")
    k = 1 + 1 / tau
    xmax = 1 / (2 + 1 / tau)
    out = []
    for i in range(samples):
        x = xmax * Fraction(i, samples - 1)
        y = 1 - k * x
        out.append(RegionSample(float(x), float(y)))
        out.append(RegionSample(float(y), float(x)))
    return out


def verify_region_claim(tau, samples: int = 10_000) -> float:
    """Observed minimum of ``x**beta + y**beta`` over the region's oblique sides.

    Should equal 1 to within 1e-9, attained at ``x = 0`` and at the corner
    where both sides meet.
    """
    beta = dim_lower_bound_1d(tau).value
    return min(p.x ** beta + p.y ** beta for p in region_boundary(tau, samples))


def box_dimension_estimate(C: CutOutSet1D, depth: int = 10) -> float:
    """Least-squares box-counting slope for a self-similar set.

    At scale ``delta_k = rmin**k`` the set is covered by the construction
    intervals of ratio at most ``delta_k`` whose parent is larger; the slope of
    ``log N`` against ``log(1/delta)`` over ``k <= depth`` is returned.
    """
    if depth < 2:
        raise DomainError("depth must be >= 2")
    if not isinstance(C, HomotheticIFS) or len(C.maps) < 2:
        raise DegenerateError("box-counting needs a self-similar set with >= 2 maps")
    ratios = [r for r, _ in C.maps]
    rmin = min(ratios)
    logs_n, logs_inv = [], []
    for k in range(1, depth + 1):
        delta = rmin ** k
        count = _stopping_count(ratios, Fraction(1), delta, {})
        logs_n.append(math.log(count))
        logs_inv.append(-math.log(float(delta)))
    slope, _ = np.polyfit(logs_inv, logs_n, 1)
    return float(slope)


def _stopping_count(ratios, scale, delta, memo) -> int:
    if scale <= delta:
        return 1
    if scale not in memo:
        memo[scale] = sum(_stopping_count(ratios, scale * r, delta, memo) for r in ratios)
    return memo[scale]

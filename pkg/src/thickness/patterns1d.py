"""Distance sets, progressions and homothetic copies in thick Cantor sets.

Capacity formulas use the natural logarithm throughout and are evaluated
with mpmath at 50 significant digits, so the floors they return are not at
the mercy of double rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .core1d import CutOutSet1D, restrict
from .errors import DomainError, NotFoundError
from .exact import Interval, Q
from .gaplemma1d import IntersectionWitness, find_intersection, linked_gap_iteration

_DPS = 50


@dataclass(frozen=True)
class Pattern:
    points: tuple

    def __post_init__(self):
        pts = tuple(sorted(Q(p) for p in self.points))
        if not pts:
            raise DomainError("pattern needs at least one point")
        if len(set(pts)) != len(pts):
            raise DomainError("pattern points must be distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class APWitness:
    start: Fraction
    step: Fraction
    length: int
    # distance of the terms from the set; 0 when every term is exactly in it
    error_bound: Fraction = Fraction(0)

    def __post_init__(self):
        if self.step <= 0 or self.length < 3:
            raise ValueError("need step > 0 and length >= 3")

    @property
    def terms(self) -> list[Fraction]:
        return [self.start + j * self.step for j in range(self.length)]


@dataclass(frozen=True)
class CapacityParams:
    tau: float
    c: float
    alpha: float
    n: int
    beta: float = 0.25

    @classmethod
    def for_tau(cls, tau, n: int = 1, beta=0.25) -> "CapacityParams":
        alpha = 1 / (float(tau) * beta)
        return cls(float(tau), 1 - 1 / math.log(1 / alpha), alpha, n, beta)


def _require_thick(C: CutOutSet1D):
    if C.thickness().lo < 1:
        raise DomainError(f"need thickness >= 1, got {C.thickness()}")


def distance_contains(C: CutOutSet1D, t, tol, cover_depth: int | None = None) -> IntersectionWitness:
    """A point ``x`` with ``x`` and ``x + t`` in ``C`` (to ``error_bound``).

    ``x`` is exactly in ``C``; with ``cover_depth`` set, ``x + t`` is inside
    that stage's cover.
    """
    t = Q(t)
    if C.hull != Interval(0, 1):
        raise DomainError(f"hull must be [0, 1], got {C.hull!r}")
    _require_thick(C)
    if not 0 <= t <= 1:
        raise DomainError("t must lie in [0, 1]")
    if t in (0, 1):
        return IntersectionWitness(Fraction(0), Fraction(0), [])
    return find_intersection(C, C.homothety(1, -t), tol, cover_depth=cover_depth)


def find_3ap(C: CutOutSet1D, tol, cover_depth: int | None = None) -> APWitness:
    """A three-term progression in ``C`` built from two overlapping halves.

    With ``(a1, a2)`` the largest gap of the normalized set, ``A`` and ``B``
    the parts left and right of it, the Gap Lemma gives ``x`` in
    ``(-A) ∩ (B - 2*a2)``, and ``-x, a2, x + 2*a2`` is the progression.
    ``cover_depth`` asks for terms inside that stage's cover of ``C``.
    """
    _require_thick(C)
    h = C.hull
    if h.length == 0:
        raise DomainError("a single point holds no progression")
    first = C.enumerate_gaps(1, strict=False)
    if not first:
        return APWitness(h.left, h.length / 2, 3)

    scale, shift = 1 / h.length, -h.left / h.length
    N = C.homothety(scale, shift)
    a1, a2 = first[0].left * scale + shift, first[0].right * scale + shift
    flipped = a1 > 1 - a2
    if flipped:
        N = N.homothety(-1, 1)
        a1, a2 = 1 - a2, 1 - a1
    A = restrict(N, Interval(0, a1))
    B = restrict(N, Interval(a2, 1))
    w = linked_gap_iteration(A.homothety(-1, 0), B.homothety(1, -2 * a2), Q(tol),
                             cover_depth=cover_depth)
    x = w.point
    terms = [-x, a2, x + 2 * a2]
    if flipped:
        terms = [1 - v for v in terms]
    terms = sorted((v - shift) / scale for v in terms)
    return APWitness(terms[0], terms[1] - terms[0], 3, w.error_bound * h.length)


def ap_upper_bound_middle(epsilon) -> int:
    """Longest progression length possible in the middle-epsilon Cantor set."""
    eps = Q(epsilon)
    if not 0 < eps < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    return math.floor(1 / eps) + 1


def longest_ap_truncated(C: CutOutSet1D, depth: int, max_len: int) -> APWitness:
    """Exhaustive search over the endpoints of the stage-``depth`` intervals.

    Ties in length go to the coarsest progression (largest step), then to
    the smallest start.
    """
    if depth < 1 or max_len < 3:
        raise DomainError("need depth >= 1 and max_len >= 3")
    pts = C.endpoints(depth)
    members = set(pts)
    best = None  # (length, step, -start) maximized
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            step = b - a
            if a - step in members:
                continue  # not the first term of its maximal run
            n = 2
            while n < max_len and a + n * step in members:
                n += 1
            if n >= 3:
                cand = (n, step, -a)
                if best is None or cand > best:
                    best = cand
    if best is None:
        raise NotFoundError("no 3-term progression among the endpoints")
    n, step, start = best
    return APWitness(-start, step, n)


def find_homothetic_copy_truncated(C: CutOutSet1D, P: Pattern, depth: int):
    """``(lam, x)`` with ``x + lam*P`` inside the stage-``depth`` endpoint set.

    Candidate ratios map the pattern's extreme points onto endpoint pairs,
    scanned by decreasing ``lam`` then increasing ``x``. Copies that are not
    aligned with the endpoint grid are missed, so a miss says nothing about
    ``C`` itself.
    """
    if not isinstance(P, Pattern):
        P = Pattern(tuple(P))
    if len(P) < 2 or depth < 1:
        raise DomainError("need |P| >= 2 and depth >= 1")
    pts = C.endpoints(depth)
    members = set(pts)
    p0, span = P.points[0], P.points[-1] - P.points[0]
    cands = set()
    for e in pts:
        for f in pts:
            if e != f:
                lam = (f - e) / span
                cands.add((-lam, e - lam * p0))
    for neg_lam, x in sorted(cands):
        lam = -neg_lam
        if all(x + lam * p in members for p in P.points):
            return lam, x
    raise NotFoundError("no homothetic copy in the endpoint grid")


def bfs_lower_bound(epsilon: float, c: float = 1.0) -> float:
    """``c * (1/eps) / log(1/eps)``."""
    if not 0 < epsilon < math.exp(-1) or c <= 0:
        raise DomainError("need 0 < epsilon < 1/e and c > 0")
    return c * (1 / epsilon) / math.log(1 / epsilon)


def _capacity_constant():
    return mpmath.log(4) / (4 * mpmath.e * 720**2)


def pattern_capacity(tau) -> int:
    """``floor(log 4 / (4e * 720**2) * tau / log tau)``, natural logarithm."""
    with mpmath.workdps(_DPS):
        t = mpmath.mpf(_to_mp(tau))
        if t <= mpmath.e:
            raise DomainError("need tau > e")
        return int(mpmath.floor(_capacity_constant() * t / mpmath.log(t)))


def pattern_condition(n: int, tau) -> bool:
    """``n * alpha**c <= (1 - beta**(1-c)) / 720**2`` with alpha = 4/tau, beta = 1/4."""
    if n < 1:
        raise DomainError("n must be >= 1")
    with mpmath.workdps(_DPS):
        t = mpmath.mpf(_to_mp(tau))
        if t <= 4 * mpmath.e:
            raise DomainError("need tau > 4e")
        lhs, rhs = _condition_sides(n, t)
        return bool(lhs <= rhs)


def _condition_sides(n, t):
    alpha = 4 / t
    beta = mpmath.mpf(1) / 4
    c = 1 - 1 / mpmath.log(1 / alpha)
    return n * alpha**c, (1 - beta ** (1 - c)) / 720**2


def max_pattern_condition(tau) -> int:
    """Largest ``n`` satisfying :func:`pattern_condition` (0 if none)."""
    with mpmath.workdps(_DPS):
        t = mpmath.mpf(_to_mp(tau))
        if t <= 4 * mpmath.e:
            raise DomainError("need tau > 4e")
        one, rhs = _condition_sides(1, t)
        return int(mpmath.floor(rhs / one))


def _to_mp(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, str):
        return mpmath.mpf(value)
    return value

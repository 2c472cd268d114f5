"""Hypotheses of the Gap Lemma for cube systems, and directional distances.

Nothing here constructs a certified common point. Intersections are checked
through the level-k covers, which must meet at every level whenever the
generated sets do.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, HypothesisError, InconclusiveError
from .exact import Enclosure, Q
from .setsrd import (CornerCantor, CubeRd, CubeSystem, thickness_rd,
                     uniform_dense_check)


@dataclass(frozen=True)
class RdGapLemmaReport:
    thickness_product_ok: bool
    dense1_ok: bool
    dense2_ok: bool
    anchor_ok: bool
    r: Fraction
    product_enclosure: Enclosure | None = None

    @property
    def passed(self) -> bool:
        return self.thickness_product_ok and self.dense1_ok and self.dense2_ok and self.anchor_ok


@dataclass(frozen=True)
class DirectionalQuery:
    v: tuple
    t: Fraction

    def __post_init__(self):
        v = tuple(Q(x) for x in self.v)
        if not v or all(x == 0 for x in v):
            raise DomainError("direction must be nonzero")
        t = Q(self.t)
        if t < 0:
            raise DomainError("t must be >= 0")
        m = max(abs(x) for x in v)
        object.__setattr__(self, "v", tuple(x / m for x in v))
        object.__setattr__(self, "t", t)

    @property
    def shift(self) -> tuple:
        return tuple(self.t * x for x in self.v)


def _anchor(S1: CubeSystem, target: CubeRd, depth: int) -> bool:
    """Some node of ``S1`` of level <= depth inside ``target``.

    Every node holds points of the generated set, so this certifies that
    the set meets ``target``.
    """
    level = [()]
    for k in range(depth + 1):
        cubes = [(w, S1.cube(w)) for w in level]
        if any(target.contains_cube(c) for _, c in cubes):
            return True
        if k == depth:
            break
        level = [u for w, c in cubes if c.meets(target) for u in S1.child_words(w)]
    return False


def check_gap_lemma_rd(S1: CubeSystem, S2: CubeSystem, r, depth: int = 6) -> RdGapLemmaReport:
    """Evaluate thickness product, uniform denseness and the anchor condition.

    The anchor uses the cube concentric with the root of ``S2`` and radius
    ``(1 - 2r)`` times its radius.
    """
    r = Q(r)
    if not 0 < r < Fraction(1, 2):
        raise DomainError("r must lie in (0, 1/2)")
    if S1.d != S2.d:
        raise DomainError("systems live in different dimensions")
    need = 1 / (1 - 2 * r) ** 2
    prod = thickness_rd(S1, depth) * thickness_rd(S2, depth)
    if prod.lo < need <= prod.hi and not prod.exact:
        raise InconclusiveError(f"thickness product in {prod} straddles {need}")
    dense1 = uniform_dense_check(S1, r, depth)[0]
    dense2 = uniform_dense_check(S2, r, depth)[0]
    anchor = (S1.root.radius >= r * S2.root.radius
              and _anchor(S1, S2.root.shrink(1 - 2 * r), depth))
    return RdGapLemmaReport(prod.lo >= need, dense1, dense2, anchor, r, prod)


def _first_meeting_pair(S1: CubeSystem, S2: CubeSystem, depth: int):
    stack = [((), S1.root, (), S2.root)]
    while stack:
        a, ca, b, cb = stack.pop()
        if len(a) == depth:
            return ca, cb
        kids2 = list(zip(S2.child_words(b), S2.children(b)))
        nxt = []
        for u, cu in zip(S1.child_words(a), S1.children(a)):
            nxt.extend((u, cu, v, cv) for v, cv in kids2 if cu.meets(cv))
        stack.extend(reversed(nxt))
    return None


def intersect_truncated_rd(S1: CubeSystem, S2: CubeSystem, depth: int):
    """``(True, (Q1, Q2))`` if some level-``depth`` cubes meet, else ``(False, None)``.

    Two corner Cantor systems are products of one-dimensional systems and so
    are their covers; the covers meet iff they meet along every axis.
    """
    if depth < 0:
        raise DomainError("depth must be >= 0")
    if S1.d != S2.d:
        raise DomainError("systems live in different dimensions")
    if not S1.root.meets(S2.root):
        return False, None
    if isinstance(S1, CornerCantor) and isinstance(S2, CornerCantor) and S1.d > 1:
        c1, c2, rad1, rad2 = [], [], None, None
        for i in range(S1.d):
            got = _first_meeting_pair(S1.axis_system(i), S2.axis_system(i), depth)
            if got is None:
                return False, None
            q1, q2 = got
            c1.append(q1.center[0])
            c2.append(q2.center[0])
            rad1, rad2 = q1.radius, q2.radius
        return True, (CubeRd(tuple(c1), rad1), CubeRd(tuple(c2), rad2))
    got = _first_meeting_pair(S1, S2, depth)
    return (got is not None), got


def directional_interval(system: CubeSystem, r, depth: int = 6) -> Fraction:
    """``a = 2r / (1 - 2r)`` once the corollary's hypotheses are checked."""
    r = Q(r)
    failed = []
    if system.root != CubeRd((0,) * system.d, 1):
        failed.append("root must be B[0, 1]")
    if not 0 < r <= Fraction(1, 3):
        failed.append("r must lie in (0, 1/3]")
    else:
        tau = thickness_rd(system, depth)
        if tau.lo < 1 / (1 - 2 * r):
            failed.append(f"thickness {tau} below 1/(1-2r) = {1 / (1 - 2 * r)}")
        if not uniform_dense_check(system, r, depth)[0]:
            failed.append(f"not {r}-uniformly dense")
    if failed:
        raise HypothesisError("; ".join(failed))
    return 2 * r / (1 - 2 * r)


def verify_directional(system: CubeSystem, q: DirectionalQuery, depth: int = 5):
    """Whether the level-``depth`` covers of ``C`` and ``C + t v`` meet.

    ``v`` is scaled to sup-norm 1, the scaling under which the corollary's
    containment ``(1-2r)(B[0,1] + tv) ⊆ B[0,1]`` is exactly ``t <= 2r/(1-2r)``.
    """
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if q.t == 0:
        return True, (system.root, system.root)
    return intersect_truncated_rd(system, system.translate(q.shift), depth)

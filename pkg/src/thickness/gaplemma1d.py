"""Newhouse's Gap Lemma on the line: hypothesis checks and intersection points.

``find_intersection`` follows the linked-gap induction. The state is a pair
of linked gaps ``(X, Y)`` from different sets where one endpoint of ``X`` sits
inside ``Y`` (so its bridge does too). The other endpoint ``u`` of ``X`` lies
in the convex hull of ``Y``'s set; locating ``u`` there either shows ``u`` is a
common point or yields the next gap, which is linked to ``X``. Gap lengths
shrink along the way, and the left endpoint of the current gap of ``C1`` is
within ``|G1| + |G2|`` of ``C2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core1d import CutOutSet1D, ExplicitCutout, Gap
from .errors import (DomainError, HypothesisError, InconclusiveError,
                     NonterminationError)
from .exact import Enclosure, Interval, Q

DEFAULT_MAX_ITER = 10**6


@dataclass(frozen=True)
class GapLemmaReport:
    hulls_intersect: bool
    neither_in_gap: bool
    thickness_product_ok: bool
    product_enclosure: Enclosure
    offending_witness: Interval | None = None

    @property
    def passed(self) -> bool:
        return self.hulls_intersect and self.neither_in_gap and self.thickness_product_ok


@dataclass(frozen=True)
class LinkedPair:
    gap1: Gap
    gap2: Gap
    # which set (1 or 2) owns the gap with an endpoint bridge inside the other
    bridge_containment: int


@dataclass
class IntersectionWitness:
    point: Fraction
    error_bound: Fraction
    trail: list[LinkedPair] = field(default_factory=list)


def is_linked(a: Interval, b: Interval) -> bool:
    """Open intervals each containing exactly one endpoint of the other."""
    ina = a.contains_open(b.left) + a.contains_open(b.right)
    inb = b.contains_open(a.left) + b.contains_open(a.right)
    return ina == 1 and inb == 1


def _gap_holding(C: CutOutSet1D, hull: Interval) -> Gap | None:
    """The gap of ``C`` whose open interval contains ``hull``, if any."""
    if not C.hull.contains(hull.left):
        return None
    g = C.locate(hull.left)
    if g is not None and g.contains(hull.left) and hull.right < g.right:
        return g
    return None


def check_gap_lemma(C1: CutOutSet1D, C2: CutOutSet1D, depth: int = 20) -> GapLemmaReport:
    """Evaluate the three hypotheses of the Gap Lemma.

    Raises :class:`InconclusiveError` when the thickness product enclosure
    straddles 1.
    """
    witness = None
    common = C1.hull.intersect(C2.hull)
    hulls_ok = common is not None
    if not hulls_ok:
        lo, hi = sorted([C1.hull, C2.hull])
        witness = Interval(lo.right, hi.left)

    in_gap = None
    for A, B in ((C1, C2), (C2, C1)):
        g = _gap_holding(A, B.hull)
        if g is not None:
            in_gap = g
            break
    neither = in_gap is None
    if witness is None and in_gap is not None:
        witness = in_gap.interval

    prod = C1.thickness(depth) * C2.thickness(depth)
    if prod.lo < 1 <= prod.hi and not prod.exact:
        raise InconclusiveError(f"thickness product in {prod}; increase depth")
    prod_ok = prod.lo >= 1
    if witness is None and not prod_ok:
        thin = min((C for C in (C1, C2) if C.thinnest_gap() is not None),
                   key=lambda C: C.thickness(depth).lo, default=None)
        witness = thin.thinnest_gap().interval if thin is not None else C1.hull
    return GapLemmaReport(hulls_ok, neither, prod_ok, prod, witness)


def find_intersection(C1: CutOutSet1D, C2: CutOutSet1D, tol,
                      max_iter: int = DEFAULT_MAX_ITER, depth: int = 20,
                      cover_depth: int | None = None) -> IntersectionWitness:
    """A point of ``C1`` within ``error_bound <= tol`` of ``C2``.

    ``error_bound`` is 0 when an exact common point is reached. With
    ``cover_depth`` set, the point also lies in the stage-``cover_depth``
    cover of ``C2`` (see :func:`linked_gap_iteration`).
    """
    report = check_gap_lemma(C1, C2, depth)
    if not report.passed:
        raise HypothesisError(f"Gap Lemma hypotheses fail: {report}")
    return linked_gap_iteration(C1, C2, tol, max_iter, cover_depth)


# finer resolutions tried before giving up on a cover_depth request
_REFINE_STEPS = 16


def linked_gap_iteration(C1: CutOutSet1D, C2: CutOutSet1D, tol,
                         max_iter: int = DEFAULT_MAX_ITER,
                         cover_depth: int | None = None) -> IntersectionWitness:
    """Run the construction without re-checking hypotheses.

    Callers must know the hypotheses hold; otherwise the iteration may fail
    with :class:`HypothesisError` when it meets a configuration the proof
    rules out.

    Gaps shrink below any stage's gap sizes as the resolution goes to 0, so
    with ``cover_depth`` the run is repeated at finer resolutions until the
    point lies in the stage-``cover_depth`` cover of ``C2``.
    """
    tol = Q(tol)
    if cover_depth is None:
        return _iterate(C1, C2, tol, max_iter)
    res = tol
    for _ in range(_REFINE_STEPS):
        w = _iterate(C1, C2, res, max_iter)
        if C2.distance_to_truncation(w.point, cover_depth) == 0:
            return w
        res /= 2**16
    raise NonterminationError(f"witness not inside the stage-{cover_depth} cover")


def _iterate(C1, C2, tol, max_iter):
    sets = {1: C1, 2: C2}
    trail: list[LinkedPair] = []

    def probe(label, x):
        # classify x against set `label`; stop refining below tol
        return sets[label].locate(x, resolution=tol)

    def done(x, member_of, where):
        """Witness from x (a member of set ``member_of``) and its probe."""
        if where is None:
            return IntersectionWitness(x, Fraction(0), trail)
        # a construction interval shorter than tol holds x; its endpoints
        # belong to the probed set
        if member_of == 1:
            return IntersectionWitness(x, where.length, trail)
        return IntersectionWitness(where.left, where.length, trail)

    # first step: an endpoint of one hull inside the other hull
    start = None
    for owner, other in ((2, 1), (1, 2)):
        for e in (sets[owner].hull.left, sets[owner].hull.right):
            if sets[other].hull.contains(e):
                start = (owner, other, e)
                break
        if start:
            break
    if start is None:
        raise HypothesisError("convex hulls are disjoint")
    owner, other, e = start
    where = probe(other, e)
    if not isinstance(where, Gap):
        return done(e, owner, where)
    gp = where
    ends_in = [v for v in (gp.left, gp.right) if sets[owner].hull.contains(v)]
    if len(ends_in) != 1:
        raise HypothesisError("a set lies in a gap of the other")
    q = ends_in[0]
    where = probe(owner, q)
    if not isinstance(where, Gap):
        return done(q, other, where)
    X, xs, Y, ys = where, owner, gp, other

    for _ in range(max_iter):
        g1, g2 = (X, Y) if xs == 1 else (Y, X)
        trail.append(LinkedPair(g1, g2, xs))
        if not is_linked(X.interval, Y.interval):
            raise HypothesisError("linked-gap invariant broken; hypotheses do not hold")
        if g1.length + g2.length < tol:
            return IntersectionWitness(g1.left, g1.length + g2.length, trail)
        u = X.right if Y.contains(X.left) else X.left
        if not sets[ys].hull.contains(u):
            raise HypothesisError("iteration left the convex hull; hypotheses do not hold")
        where = probe(ys, u)
        if not isinstance(where, Gap):
            return done(u, xs, where)
        X, xs, Y, ys = where, ys, X, xs
    raise NonterminationError(f"no witness after {max_iter} linked pairs")


def intersect_truncated(C1: CutOutSet1D, C2: CutOutSet1D, depth: int) -> list[Interval]:
    """Exact intersection of the two depth-``depth`` interval covers."""
    if depth < 0:
        raise DomainError("depth must be >= 0")
    a, b = sorted(C1.truncate(depth)), sorted(C2.truncate(depth))
    out, i, j = [], 0, 0
    while i < len(a) and j < len(b):
        common = a[i].intersect(b[j])
        if common is not None:
            out.append(common)
        if a[i].right < b[j].right:
            i += 1
        else:
            j += 1
    return out


def sharpness_counterexample(tau1, tau2) -> tuple[ExplicitCutout, ExplicitCutout]:
    """Disjoint two-interval sets of thickness ``tau1`` and ``tau2``.

    Valid whenever ``tau1 * tau2 < 1``; the other two hypotheses hold.
    """
    tau1, tau2 = Q(tau1), Q(tau2)
    if tau1 <= 0 or tau2 <= 0:
        raise DomainError("thicknesses must be positive")
    if tau1 * tau2 >= 1:
        raise DomainError("need tau1 * tau2 < 1")
    a = 1 / tau1
    # solve (a - 2e) / (1 + 2e) = tau2
    eps = (a - tau2) / (2 * (1 + tau2))
    C1 = ExplicitCutout(Interval(0, 2 + a), [Interval(1, 1 + a)])
    C2 = ExplicitCutout(Interval(-a + eps, 1 + a - eps), [Interval(-eps, 1 + eps)])
    assert C1.thickness().value == tau1
    assert C2.thickness().value == tau2
    assert not intersect_truncated(C1, C2, 0)
    rep = check_gap_lemma(C1, C2)
    assert rep.hulls_intersect and rep.neither_in_gap and not rep.thickness_product_ok
    return C1, C2

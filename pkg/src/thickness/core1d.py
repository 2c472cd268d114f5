"""Compact subsets of the line as cut-out programs, and Newhouse thickness.

A set is described by its convex hull and the stream of bounded gaps removed
from it. Three generators are supported:

* ``ExplicitCutout`` -- finitely many gaps;
* ``HomotheticIFS`` -- attractor of orientation-preserving contractions
  ``x -> r*x + b`` whose images are disjoint and span the hull;
* ``MiddleCantor`` -- the middle-epsilon Cantor set on ``[0, 1]``.

Gaps are exposed in canonical order: non-increasing length, ties broken by
the left endpoint. Thickness is order independent for any non-increasing
order, so the canonical choice only makes outputs deterministic.
"""

from __future__ import annotations

import bisect
import heapq
import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import (ContainmentError, DomainError, ExhaustedError,
                     NonterminationError, OverlapError, UnknownError)
from .exact import INF, Enclosure, Interval, Q

LOCATE_CAP = 100_000


@dataclass(frozen=True)
class Gap:
    """A bounded open interval removed at construction stage ``depth``."""

    interval: Interval
    depth: int = 0
    address: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.interval.left >= self.interval.right:
            raise ValueError("gaps are nonempty open intervals")

    @property
    def left(self) -> Fraction:
        return self.interval.left

    @property
    def right(self) -> Fraction:
        return self.interval.right

    @property
    def length(self) -> Fraction:
        return self.interval.length

    @property
    def key(self):
        """Sort key of the canonical order."""
        return (-self.length, self.left)

    def contains(self, x) -> bool:
        return self.left < x < self.right

    def meets(self, iv: Interval) -> bool:
        """Whether the open gap meets the closed interval ``iv``."""
        return self.left < iv.right and iv.left < self.right

    def __repr__(self):
        return f"Gap({self.interval!r}, depth={self.depth})"


class CutOutSet1D:
    """Base class. Subclasses provide the gap stream and point location."""

    kind = "abstract"
    hull: Interval

    def __init__(self):
        self._prefix: list[Gap] = []
        self._stream = None
        self._lock = threading.Lock()

    # -- gap stream -------------------------------------------------------
    def _gap_stream(self) -> Iterator[Gap]:
        raise NotImplementedError

    def gaps(self) -> Iterator[Gap]:
        """All gaps in canonical order (possibly infinite)."""
        for i in itertools.count():
            got = self.enumerate_gaps(i + 1, strict=False)
            if len(got) <= i:
                return
            yield got[i]

    def enumerate_gaps(self, count: int, strict: bool = True) -> list[Gap]:
        """First ``count`` gaps in canonical order.

        With ``strict`` an :class:`ExhaustedError` is raised when the set has
        fewer gaps; otherwise the available ones are returned.
        """
        if count < 1:
            raise DomainError("count must be >= 1")
        with self._lock:
            if self._stream is None:
                self._stream = self._gap_stream()
            while len(self._prefix) < count:
                nxt = next(self._stream, None)
                if nxt is None:
                    break
                self._prefix.append(nxt)
            out = self._prefix[:count]
        if strict and len(out) < count:
            raise ExhaustedError(f"set has only {len(out)} gaps, asked for {count}")
        return out

    @property
    def is_finite(self) -> bool:
        return False

    # -- geometry -----------------------------------------------------------
    def locate(self, x, resolution=None):
        """Classify ``x`` (which must lie in the hull).

        Returns ``None`` if ``x`` belongs to the set and the :class:`Gap`
        containing it otherwise. With ``resolution`` set, lazy sets may stop
        early and return the construction interval (an :class:`Interval`
        of length below ``resolution``) that contains ``x``.
        """
        raise NotImplementedError

    def contains(self, x) -> bool:
        x = Q(x)
        if not self.hull.contains(x):
            return False
        try:
            return self.locate(x) is None
        except NonterminationError as exc:
            raise UnknownError(str(exc)) from exc

    def meets(self, iv: Interval) -> bool:
        """Exact test of ``iv`` (closed) against the set."""
        piece = iv.intersect(self.hull)
        if piece is None:
            return False
        try:
            where = self.locate(piece.left)
        except NonterminationError as exc:
            raise UnknownError(str(exc)) from exc
        return where is None or piece.right >= where.right

    def bridges(self, gap: Gap) -> tuple[Interval, Interval]:
        """Left and right bridges of ``gap`` in the canonical order."""
        raise NotImplementedError

    def gaps_meeting(self, iv: Interval) -> Iterator[Gap]:
        """Gaps meeting the closed interval ``iv``, in canonical order."""
        return (g for g in self.gaps() if g.meets(iv))

    def truncate(self, depth: int) -> list[Interval]:
        raise NotImplementedError

    def distance_to_truncation(self, x, depth: int) -> Fraction:
        raise NotImplementedError

    def endpoints(self, depth: int) -> list[Fraction]:
        pts = set()
        for iv in self.truncate(depth):
            pts.add(iv.left)
            pts.add(iv.right)
        return sorted(pts)

    def homothety(self, a, b) -> "CutOutSet1D":
        raise NotImplementedError

    def thickness(self, depth: int = 20) -> Enclosure:
        raise NotImplementedError

    def thinnest_gap(self) -> Gap | None:
        """A gap attaining the infimum in the thickness definition."""
        raise NotImplementedError

    def _ratio(self, gap: Gap) -> Fraction:
        lb, rb = self.bridges(gap)
        return min(lb.length, rb.length) / gap.length


# ---------------------------------------------------------------------------
# finite cut-outs
# ---------------------------------------------------------------------------

class ExplicitCutout(CutOutSet1D):
    """Hull minus finitely many disjoint open gaps."""

    kind = "cutout"

    def __init__(self, hull: Interval, gaps):
        super().__init__()
        self.hull = hull
        ivs = [g.interval if isinstance(g, Gap) else g for g in gaps]
        by_left = sorted(ivs, key=lambda iv: iv.left)
        for iv in by_left:
            if iv.left >= iv.right:
                raise OverlapError(f"gap {iv!r} is empty")
            # a gap may end at a hull endpoint: that endpoint is then isolated
            if iv.left < hull.left or iv.right > hull.right:
                raise ContainmentError(f"gap {iv!r} leaves hull {hull!r}")
        for a, b in zip(by_left, by_left[1:]):
            if b.left < a.right:
                raise OverlapError(f"gaps {a!r} and {b!r} overlap")
        canon = sorted(by_left, key=lambda iv: (-iv.length, iv.left))
        self._canon = [Gap(iv, 0, (i,)) for i, iv in enumerate(canon)]
        self._by_left = sorted(self._canon, key=lambda g: g.left)
        self._lefts = [g.left for g in self._by_left]
        self._bridges = self._sequential_bridges()

    def _sequential_bridges(self):
        # remove gaps one at a time in canonical order
        comps = [self.hull]
        lefts = [self.hull.left]
        out = []
        for g in self._canon:
            k = bisect.bisect_right(lefts, g.left) - 1
            comp = comps[k]
            lb = Interval(comp.left, g.left)
            rb = Interval(g.right, comp.right)
            comps[k:k + 1] = [lb, rb]
            lefts[k:k + 1] = [lb.left, rb.left]
            out.append((lb, rb))
        return out

    @property
    def is_finite(self) -> bool:
        return True

    def _gap_stream(self):
        return iter(self._canon)

    def components(self) -> list[Interval]:
        out, cur = [], self.hull.left
        for g in self._by_left:
            out.append(Interval(cur, g.left))
            cur = g.right
        out.append(Interval(cur, self.hull.right))
        return out

    def locate(self, x, resolution=None):
        x = Q(x)
        if not self.hull.contains(x):
            raise DomainError(f"{x} outside hull {self.hull!r}")
        k = bisect.bisect_right(self._lefts, x) - 1
        if k >= 0 and self._by_left[k].contains(x):
            return self._by_left[k]
        return None

    def bridges(self, gap: Gap):
        return self._bridges[gap.address[0]]

    def gaps_meeting(self, iv):
        return (g for g in self._canon if g.meets(iv))

    def truncate(self, depth: int) -> list[Interval]:
        if depth < 0:
            raise DomainError("depth must be >= 0")
        return self.components()

    def distance_to_truncation(self, x, depth: int) -> Fraction:
        return min(iv.distance_to(Q(x)) for iv in self.components())

    def homothety(self, a, b) -> "ExplicitCutout":
        a, b = Q(a), Q(b)
        if a == 0:
            raise DomainError("homothety ratio must be nonzero")
        if a == 1 and b == 0:
            return self
        return ExplicitCutout(self.hull.map(a, b),
                              [g.interval.map(a, b) for g in self._canon])

    def thickness(self, depth: int = 20) -> Enclosure:
        if depth < 1:
            raise DomainError("depth must be >= 1")
        if not self._canon:
            return Enclosure.point(INF if self.hull.length > 0 else Fraction(0))
        return Enclosure.point(min(self._ratio(g) for g in self._canon))

    def thinnest_gap(self):
        if not self._canon:
            return None
        return min(self._canon, key=lambda g: (self._ratio(g), g.key))

    def __repr__(self):
        return f"ExplicitCutout(hull={self.hull!r}, gaps={[g.interval for g in self._canon]!r})"


# ---------------------------------------------------------------------------
# self-similar sets
# ---------------------------------------------------------------------------

class HomotheticIFS(CutOutSet1D):
    """Attractor of maps ``x -> r_i*x + b_i`` listed in left-to-right order.

    The images of the hull must be pairwise disjoint, the first must start at
    the hull's left end and the last end at its right end, so the hull is the
    convex hull of the attractor. Gaps of stage ``k`` are the images, under
    compositions of ``k-1`` maps, of the ``m-1`` gaps between consecutive
    first-stage images. A single map of ratio 1 describes the solid hull.
    """

    kind = "ifs"

    def __init__(self, hull: Interval, maps):
        super().__init__()
        self.hull = hull
        self.maps = tuple((Q(r), Q(b)) for r, b in maps)
        if not self.maps:
            raise DomainError("an IFS needs at least one map")
        if hull.length <= 0:
            raise DomainError("IFS hull must have positive length")
        imgs = [hull.map(r, b) for r, b in self.maps]
        if len(self.maps) == 1:
            if self.maps[0][0] != 1 or imgs[0] != hull:
                raise DomainError("a single map must be the identity on the hull")
        else:
            for r, _ in self.maps:
                if not 0 < r < 1:
                    raise DomainError(f"ratio {r} not in (0, 1)")
            for a, b in zip(imgs, imgs[1:]):
                if not a.right < b.left:
                    raise DomainError("map images must be disjoint and left-to-right")
            if imgs[0].left != hull.left or imgs[-1].right != hull.right:
                raise DomainError("map images must reach both hull endpoints")
        self._images = imgs
        self._g1 = [Interval(a.right, b.left) for a, b in zip(imgs, imgs[1:])]
        self._gmax = max((g.length for g in self._g1), default=Fraction(0))

    # affine of a word: x -> s*x + t
    def _affine(self, word):
        s, t = Fraction(1), Fraction(0)
        for i in word:
            r, b = self.maps[i]
            s, t = s * r, s * b + t
        return s, t

    def _gap_at(self, word, j, s=None, t=None) -> Gap:
        if s is None:
            s, t = self._affine(word)
        return Gap(self._g1[j].map(s, t), len(word) + 1, (tuple(word), j))

    def _gap_stream(self):
        if not self._g1:
            return
        tick = itertools.count()
        # (-length bound, kind, left, tiebreak, payload); pieces sort before
        # gaps of equal bound so every gap of that length is seen first
        heap = [(-self._gmax, 0, self.hull.left, next(tick), ((), Fraction(1), Fraction(0)))]
        while heap:
            negkey, kind, _, _, payload = heapq.heappop(heap)
            if kind == 1:
                yield payload
                continue
            word, s, t = payload
            for j in range(len(self._g1)):
                g = self._gap_at(word, j, s, t)
                heapq.heappush(heap, (-g.length, 1, g.left, next(tick), g))
            for i, (r, b) in enumerate(self.maps):
                cs, ct = s * r, s * b + t
                heapq.heappush(heap, (-cs * self._gmax, 0, cs * self.hull.left + ct,
                                      next(tick), (word + (i,), cs, ct)))

    def gaps_meeting(self, iv: Interval):
        if not self._g1:
            return
        tick = itertools.count()
        heap = [(-self._gmax, 0, self.hull.left, next(tick), ((), Fraction(1), Fraction(0)))]
        while heap:
            _, kind, _, _, payload = heapq.heappop(heap)
            if kind == 1:
                yield payload
                continue
            word, s, t = payload
            for j in range(len(self._g1)):
                g = self._gap_at(word, j, s, t)
                if g.meets(iv):
                    heapq.heappush(heap, (-g.length, 1, g.left, next(tick), g))
            for i, (r, b) in enumerate(self.maps):
                cs, ct = s * r, s * b + t
                piece = self.hull.map(cs, ct)
                common = piece.intersect(iv)
                if common is None or common.length == 0:
                    continue
                heapq.heappush(heap, (-cs * self._gmax, 0, piece.left, next(tick),
                                      (word + (i,), cs, ct)))

    def locate(self, x, resolution=None):
        x = Q(x)
        if not self.hull.contains(x):
            raise DomainError(f"{x} outside hull {self.hull!r}")
        if not self._g1:
            return None
        word = []
        s, t = Fraction(1), Fraction(0)
        y = x
        seen = set()
        for _ in range(LOCATE_CAP):
            if resolution is not None and s * self.hull.length < resolution:
                return self.hull.map(s, t)
            if y in seen:
                return None  # eventually periodic address
            seen.add(y)
            for i, img in enumerate(self._images):
                if img.contains(y):
                    if y == img.left or y == img.right:
                        return None
                    r, b = self.maps[i]
                    word.append(i)
                    s, t = s * r, s * b + t
                    y = (y - b) / r
                    break
                if i < len(self._g1) and self._g1[i].contains_open(y):
                    return self._gap_at(word, i, s, t)
            else:  # pragma: no cover - hull covers images and gaps
                raise AssertionError("point fell outside the construction")
        raise NonterminationError(f"could not classify {x} within {LOCATE_CAP} stages")

    # -- bridges ------------------------------------------------------------
    def _extreme_gap(self, s, t, bound, strict, from_right):
        """Outermost gap (from one side) of a piece with length >= bound."""
        ok = (lambda v: v > bound) if strict else (lambda v: v >= bound)
        if not ok(s * self._gmax):
            return None
        m = len(self.maps)
        items = []
        for i in range(m):
            items.append(("img", i))
            if i < m - 1:
                items.append(("gap", i))
        if from_right:
            items.reverse()
        for what, i in items:
            if what == "gap":
                if ok(s * self._g1[i].length):
                    return self._g1[i].map(s, t)
            else:
                r, b = self.maps[i]
                hit = self._extreme_gap(s * r, s * b + t, bound, strict, from_right)
                if hit is not None:
                    return hit
        return None  # pragma: no cover - the max gap of the piece qualifies

    def _barrier(self, word, j, bound, side):
        """Nearest gap on ``side`` of gap ``(word, j)`` that precedes it."""
        strict = side == "right"
        prefixes = [(Fraction(1), Fraction(0))]
        for i in word:
            s, t = prefixes[-1]
            r, b = self.maps[i]
            prefixes.append((s * r, s * b + t))
        m = len(self.maps)
        # items of a piece's layout: images 0..m-1 interleaved with gaps 0..m-2;
        # positions: image i -> 2i, gap i -> 2i+1
        level = len(word)
        pos = 2 * j + 1
        while level >= 0:
            s, t = prefixes[level]
            rng = range(pos - 1, -1, -1) if side == "left" else range(pos + 1, 2 * m - 1)
            for p in rng:
                i = p // 2
                if p % 2:
                    length = s * self._g1[i].length
                    if (length > bound) if strict else (length >= bound):
                        return self._g1[i].map(s, t)
                else:
                    r, b = self.maps[i]
                    hit = self._extreme_gap(s * r, s * b + t, bound, strict,
                                            from_right=(side == "left"))
                    if hit is not None:
                        return hit
            if level == 0:
                break
            pos = 2 * word[level - 1]
            level -= 1
        return None

    def bridges(self, gap: Gap):
        word, j = gap.address
        lb = self._barrier(word, j, gap.length, "left")
        rb = self._barrier(word, j, gap.length, "right")
        left = Interval(self.hull.left if lb is None else lb.right, gap.left)
        right = Interval(gap.right, self.hull.right if rb is None else rb.left)
        return left, right

    def thickness(self, depth: int = 20) -> Enclosure:
        # f_w(G_j) has bridges at least r_w times those of G_j, so first-stage
        # gaps attain the infimum
        if depth < 1:
            raise DomainError("depth must be >= 1")
        if not self._g1:
            return Enclosure.point(INF)
        return Enclosure.point(min(self._ratio(self._gap_at((), j))
                                   for j in range(len(self._g1))))

    def thinnest_gap(self):
        if not self._g1:
            return None
        return min((self._gap_at((), j) for j in range(len(self._g1))),
                   key=lambda g: (self._ratio(g), g.key))

    # -- truncations ----------------------------------------------------------
    def truncate(self, depth: int) -> list[Interval]:
        if depth < 0:
            raise DomainError("depth must be >= 0")
        if not self._g1:
            return [self.hull]
        pieces = [(Fraction(1), Fraction(0))]
        for _ in range(depth):
            pieces = [(s * r, s * b + t) for s, t in pieces for r, b in self.maps]
        return [self.hull.map(s, t) for s, t in pieces]

    def distance_to_truncation(self, x, depth: int) -> Fraction:
        x = Q(x)
        if not self.hull.contains(x):
            return self.hull.distance_to(x)
        if not self._g1:
            return Fraction(0)
        s, t = Fraction(1), Fraction(0)
        for _ in range(depth):
            y = (x - t) / s
            for i, img in enumerate(self._images):
                if img.contains(y):
                    r, b = self.maps[i]
                    s, t = s * r, s * b + t
                    break
                if i < len(self._g1) and self._g1[i].contains_open(y):
                    g = self._g1[i].map(s, t)
                    return min(x - g.left, g.right - x)
        return Fraction(0)

    def homothety(self, a, b) -> "HomotheticIFS":
        a, b = Q(a), Q(b)
        if a == 0:
            raise DomainError("homothety ratio must be nonzero")
        if a == 1 and b == 0:
            return self
        maps = [(r, a * off + b - r * b) for r, off in self.maps]
        if a < 0:
            maps.reverse()
        return HomotheticIFS(self.hull.map(a, b), maps)

    def __repr__(self):
        return f"HomotheticIFS(hull={self.hull!r}, maps={self.maps!r})"


class MiddleCantor(HomotheticIFS):
    """Middle-epsilon Cantor set on [0, 1]."""

    kind = "middle_cantor"

    def __init__(self, epsilon):
        epsilon = Q(epsilon)
        if not 0 < epsilon < 1:
            raise DomainError(f"epsilon={epsilon} not in (0, 1)")
        self.epsilon = epsilon
        lam = (1 - epsilon) / 2
        self.lam = lam
        super().__init__(Interval(0, 1), [(lam, 0), (lam, 1 - lam)])

    def thickness(self, depth: int = 20) -> Enclosure:
        if depth < 1:
            raise DomainError("depth must be >= 1")
        return Enclosure.point((1 - self.epsilon) / (2 * self.epsilon))

    def __repr__(self):
        return f"MiddleCantor({self.epsilon})"


class _Restriction(CutOutSet1D):
    """``C`` intersected with a closed interval whose endpoints lie in ``C``.

    Only the operations needed by the linked-gap iteration are provided.
    """

    kind = "restriction"

    def __init__(self, parent: CutOutSet1D, hull: Interval):
        super().__init__()
        self.parent = parent
        self.hull = hull

    def _gap_stream(self):
        return (g for g in self.parent.gaps()
                if self.hull.left <= g.left and g.right <= self.hull.right)

    def locate(self, x, resolution=None):
        x = Q(x)
        if not self.hull.contains(x):
            raise DomainError(f"{x} outside hull {self.hull!r}")
        return self.parent.locate(x, resolution)

    def distance_to_truncation(self, x, depth):
        return self.parent.distance_to_truncation(x, depth)

    def homothety(self, a, b):
        return _Restriction(self.parent.homothety(a, b), self.hull.map(Q(a), Q(b)))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def make_middle_cantor(epsilon) -> MiddleCantor:
    return MiddleCantor(epsilon)


def make_explicit_cutout(hull: Interval, gaps) -> ExplicitCutout:
    return ExplicitCutout(hull, gaps)


def make_ifs(hull: Interval, maps) -> HomotheticIFS:
    return HomotheticIFS(hull, maps)


def enumerate_gaps(C: CutOutSet1D, count: int) -> list[Gap]:
    return C.enumerate_gaps(count)


def thickness(C: CutOutSet1D, depth: int = 20) -> Enclosure:
    """Newhouse thickness ``inf_n min(|L_n|, |R_n|) / |G_n|`` as an enclosure."""
    return C.thickness(depth)


def homothety(C: CutOutSet1D, a, b) -> CutOutSet1D:
    return C.homothety(a, b)


def truncate_to_intervals(C: CutOutSet1D, depth: int) -> list[Interval]:
    return C.truncate(depth)


def restrict(C: CutOutSet1D, iv: Interval) -> CutOutSet1D:
    """``C`` cut down to ``iv``; both endpoints of ``iv`` must lie in ``C``."""
    for end in (iv.left, iv.right):
        if not C.contains(end):
            raise DomainError(f"restriction endpoint {end} is not in the set")
    if isinstance(C, ExplicitCutout):
        inner = [g.interval for g in C.enumerate_gaps(len(C._canon), strict=False)
                 if iv.left <= g.left and g.right <= iv.right] if C._canon else []
        return ExplicitCutout(iv, inner)
    return _Restriction(C, iv)


def upper_thickness_lower_bound(C: CutOutSet1D) -> Fraction | float:
    """Heuristic lower bound for the upper thickness (sup over compact subsets).

    Any nondegenerate component of a finite cut-out is a compact subset of
    infinite thickness; a finite cut-out made only of points has upper
    thickness 0. Lazy sets report their own thickness.
    """
    if isinstance(C, ExplicitCutout):
        comps = C.components()
        if any(iv.length > 0 for iv in comps):
            return INF
        return Fraction(0)
    return C.thickness().lo

"""Cube systems in (R^d, sup-norm): thickness, uniform denseness, cut-outs.

A system is a tree of closed sup-norm cubes (axis-aligned, side ``2*radius``)
whose branches shrink to points. Two kinds are provided:

* :class:`CornerCantor` -- ``n`` equally spaced children per axis, flush
  with the parent's faces, relative side ``ell``;
* :class:`ExplicitTree` -- a finite tree; every leaf continues as the chain
  of concentric half-size cubes, so the generated set is the finite set of
  leaf centers.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import ContainmentError, DomainError, OverlapError
from .exact import INF, Enclosure, Interval, Q


@dataclass(frozen=True)
class CubeRd:
    """Closed ball ``B[center, radius]`` of the sup norm."""

    center: tuple
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(Q(c) for c in self.center))
        object.__setattr__(self, "radius", Q(self.radius))
        if not self.center:
            raise DomainError("cube needs at least one coordinate")
        if self.radius < 0:
            raise DomainError("cube radius must be nonnegative")

    @property
    def d(self) -> int:
        return len(self.center)

    def axis(self, i: int) -> Interval:
        return Interval(self.center[i] - self.radius, self.center[i] + self.radius)

    def contains_cube(self, other: "CubeRd") -> bool:
        return all(abs(a - b) <= self.radius - other.radius
                   for a, b in zip(self.center, other.center))

    def contains_point(self, p) -> bool:
        return all(abs(a - b) <= self.radius for a, b in zip(self.center, p))

    def meets(self, other: "CubeRd") -> bool:
        return all(abs(a - b) <= self.radius + other.radius
                   for a, b in zip(self.center, other.center))

    def translate(self, v) -> "CubeRd":
        return CubeRd(tuple(c + Q(x) for c, x in zip(self.center, v)), self.radius)

    def shrink(self, factor) -> "CubeRd":
        """Concentric cube with radius scaled by ``factor``."""
        return CubeRd(self.center, self.radius * Q(factor))

    def dist_to_point(self, p) -> Fraction:
        return max(max(abs(a - b) - self.radius, 0) for a, b in zip(self.center, p))

    def __repr__(self):
        from .exact import fmt
        return f"B[({', '.join(fmt(c) for c in self.center)}), {fmt(self.radius)}]"


class CubeSystem:
    """Base class: a root cube and a child rule, addressed by index words."""

    kind = "abstract"
    root: CubeRd

    def __init__(self):
        self._memo: dict = {}
        self._lock = threading.Lock()

    @property
    def d(self) -> int:
        return self.root.d

    def cube(self, word=()) -> CubeRd:
        raise NotImplementedError

    def children(self, word=()) -> list[CubeRd]:
        raise NotImplementedError

    def child_words(self, word=()) -> list[tuple]:
        return [word + (i,) for i in range(len(self.children(word)))]

    def nodes(self, depth: int) -> Iterator[tuple]:
        """Words of all nodes of level ``< depth``."""
        level = [()]
        for _ in range(depth):
            yield from level
            level = [w for u in level for w in self.child_words(u)]

    def translate(self, v) -> "CubeSystem":
        raise NotImplementedError


class CornerCantor(CubeSystem):
    kind = "corner_cantor"

    def __init__(self, d: int, n: int, ell, root: CubeRd | None = None):
        super().__init__()
        ell = Q(ell)
        if d < 1 or n < 2 or not 0 < ell < Fraction(2, n):
            raise DomainError("need d >= 1, n >= 2 and 0 < ell < 2/n")
        self.n, self.ell = n, ell
        self.root = root if root is not None else CubeRd((0,) * d, 1)
        if self.root.d != d:
            raise DomainError("root dimension does not match d")
        if self.root.radius <= 0:
            raise DomainError("root radius must be positive")
        self.g = (2 - n * ell) / (n - 1)
        self.tau = ell / self.g
        self.r = ell + (2 - n * ell) / (2 * (n - 1))

    def _offsets(self, radius):
        # child centers relative to the parent center, along one axis
        step = (self.ell + self.g) * radius
        first = -radius + self.ell * radius / 2
        return [first + k * step for k in range(self.n)]

    def cube(self, word=()) -> CubeRd:
        word = tuple(word)
        with self._lock:
            hit = self._memo.get(word)
        if hit is not None:
            return hit
        out = self._cube(word)
        with self._lock:
            if len(self._memo) < 200_000:
                self._memo[word] = out
        return out

    def _cube(self, word) -> CubeRd:
        if word:
            parent = self.cube(word[:-1])
            offs = self._offsets(parent.radius)
            digits = _digits(word[-1], self.n, self.d)
            return CubeRd(tuple(ci + offs[k] for ci, k in zip(parent.center, digits)),
                          parent.radius * self.ell / 2)
        return self.root

    def children(self, word=()) -> list[CubeRd]:
        parent = self.cube(word)
        offs = self._offsets(parent.radius)
        rad = parent.radius * self.ell / 2
        out = []
        for digits in itertools.product(range(self.n), repeat=self.d):
            out.append(CubeRd(tuple(c + offs[k] for c, k in zip(parent.center, digits)), rad))
        return out

    def axis_system(self, i: int) -> "CornerCantor":
        """The one-dimensional factor along axis ``i``."""
        return CornerCantor(1, self.n, self.ell, CubeRd((self.root.center[i],), self.root.radius))

    def translate(self, v) -> "CornerCantor":
        return CornerCantor(self.d, self.n, self.ell, self.root.translate(v))

    def __repr__(self):
        return f"CornerCantor(d={self.d}, n={self.n}, ell={self.ell})"


def _digits(idx, n, d):
    out = []
    for _ in range(d):
        idx, k = divmod(idx, n)
        out.append(k)
    return out[::-1]


class ExplicitTree(CubeSystem):
    """Finite tree of cubes. ``tree`` is ``(cube, [subtrees])``."""

    kind = "cube_tree"

    def __init__(self, tree):
        super().__init__()
        self._tree = _check_tree(tree)
        self.root = self._tree[0]
        self._leaves = None

    def _node(self, word):
        node = self._tree
        for i, idx in enumerate(word):
            if not node[1]:
                # past a leaf: the concentric half-size chain
                c = node[0]
                return (c.shrink(Fraction(1, 2**(len(word) - i))), [])
            node = node[1][idx]
        return node

    def cube(self, word=()) -> CubeRd:
        return self._node(word)[0]

    def children(self, word=()) -> list[CubeRd]:
        cube, kids = self._node(word)
        if not kids:
            return [cube.shrink(Fraction(1, 2))]
        return [k[0] for k in kids]

    def is_leaf(self, word) -> bool:
        return not self._node(word)[1]

    def internal_words(self) -> list[tuple]:
        out, stack = [], [((), self._tree)]
        while stack:
            w, (c, kids) = stack.pop()
            if kids:
                out.append(w)
                stack.extend((w + (i,), k) for i, k in enumerate(kids))
        return sorted(out)

    def leaf_words(self) -> list[tuple]:
        out, stack = [], [((), self._tree)]
        while stack:
            w, (c, kids) = stack.pop()
            if not kids:
                out.append(w)
            stack.extend((w + (i,), k) for i, k in enumerate(kids))
        return sorted(out)

    def points(self) -> list[tuple]:
        """The generated set: leaf centers, deduplicated and sorted."""
        with self._lock:
            if self._leaves is None:
                self._leaves = sorted({self.cube(w).center for w in self.leaf_words()})
            return self._leaves

    def translate(self, v) -> "ExplicitTree":
        def move(node):
            return (node[0].translate(v), [move(k) for k in node[1]])
        return ExplicitTree(move(self._tree))

    def to_nested(self):
        return self._tree

    def __repr__(self):
        return f"ExplicitTree(root={self.root!r}, leaves={len(self.leaf_words())})"


def _check_tree(tree):
    cube, kids = tree
    if not isinstance(cube, CubeRd):
        raise DomainError("tree nodes must be CubeRd")
    if cube.radius <= 0:
        raise DomainError("tree cubes must have positive radius")
    out = []
    for k in kids:
        k = _check_tree(k)
        if k[0].d != cube.d:
            raise DomainError("mixed dimensions in cube tree")
        if not cube.contains_cube(k[0]):
            raise ContainmentError(f"child {k[0]!r} not inside {cube!r}")
        out.append(k)
    return (cube, out)


def make_corner_cantor(d: int, n: int, ell) -> CornerCantor:
    return CornerCantor(d, n, ell)


def rasterize(system: CubeSystem, depth: int) -> list[CubeRd]:
    """All level-``depth`` cubes."""
    if depth < 0:
        raise DomainError("depth must be >= 0")
    level = [()]
    for _ in range(depth):
        level = [w for u in level for w in system.child_words(u)]
    return [system.cube(w) for w in level]


# -- h and thickness -----------------------------------------------------------

def _escapes(box: CubeRd, points, s) -> bool:
    """Whether some point of ``box`` is at sup-distance >= s from all ``points``.

    The open cubes ``B(p, s)`` cut each axis into points and open pieces;
    membership is constant on every product of those, so one representative
    per piece decides.
    """
    axes = []
    for i in range(box.d):
        lo, hi = box.center[i] - box.radius, box.center[i] + box.radius
        cuts = {lo, hi}
        for p in points:
            for v in (p[i] - s, p[i] + s):
                if lo < v < hi:
                    cuts.add(v)
        cuts = sorted(cuts)
        axes.append(cuts + [(a + b) / 2 for a, b in zip(cuts, cuts[1:])])
    for x in itertools.product(*axes):
        if all(max(abs(a - b) for a, b in zip(x, p)) >= s for p in points):
            return True
    return False


def _max_min_dist(box: CubeRd, points) -> Fraction:
    """``max over x in box of min_p |x - p|_inf``, exactly.

    The free region shrinks as the radius grows and only changes shape when
    two cut coordinates meet, i.e. at half a coordinate difference of two
    points or at a point's distance to a face; the answer is the largest
    such candidate that still leaves room.
    """
    cands = {Fraction(0)}
    for i in range(box.d):
        lo, hi = box.center[i] - box.radius, box.center[i] + box.radius
        for p in points:
            cands.update((abs(p[i] - lo), abs(p[i] - hi)))
        for p, q in itertools.combinations(points, 2):
            cands.add(abs(p[i] - q[i]) / 2)
    cands = sorted(cands)
    lo, hi = 0, len(cands) - 1  # cands[lo] feasible
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _escapes(box, points, cands[mid]):
            lo = mid
        else:
            hi = mid - 1
    return cands[lo]


def h_value(system: CubeSystem, node=(), depth: int = 10) -> Enclosure:
    """``h_I = max over x in S_I of dist_inf(x, C)``.

    Exact for corner Cantor sets (the sup-norm distance to a product set is
    the largest per-axis distance, and along an axis the widest hole in a
    node is its first-stage gap, of width ``g * R``). Exact for explicit
    trees too, whose generated set is finite; ``depth`` is then unused.
    """
    cube = system.cube(tuple(node))
    if isinstance(system, CornerCantor):
        return Enclosure.point(system.g * cube.radius / 2)
    if isinstance(system, ExplicitTree):
        return Enclosure.point(_max_min_dist(cube, system.points()))
    raise DomainError(f"no h oracle for {system!r}")


def thickness_rd(system: CubeSystem, depth: int = 6) -> Enclosure:
    """``inf over nodes I of min_i rad(S_{I,i}) / h_I`` as an enclosure.

    Corner Cantor nodes are all similar, so the root ratio is the answer.
    For explicit trees every internal node is evaluated; each leaf chain
    contributes exactly 1/2 (its ratios are at least 1/2 and reach 1/2
    once the chain is isolated from the rest of the set).
    """
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if isinstance(system, CornerCantor):
        kid = system.children(())[0].radius
        h = h_value(system, ())
        return Enclosure.point(kid / h.value)
    if isinstance(system, ExplicitTree):
        best = Fraction(1, 2)
        for w in system.internal_words():
            kid = min(c.radius for c in system.children(w))
            best = min(best, kid / h_value(system, w).value)
        return Enclosure.point(best)
    raise DomainError(f"no thickness rule for {system!r}")


# -- uniform denseness ----------------------------------------------------------

def _union_covers(target: list[Interval], boxes: list[list[Interval]]):
    """First point of the box ``target`` outside the union of closed ``boxes``.

    Returns ``None`` when covered. Coordinates are compressed per axis;
    every cell of the induced grid is either inside or disjoint from each
    box's interior, so a cell midpoint represents its cell.
    """
    axes = []
    for i, t in enumerate(target):
        cuts = {t.left, t.right}
        for b in boxes:
            for v in (b[i].left, b[i].right):
                if t.left < v < t.right:
                    cuts.add(v)
        cuts = sorted(cuts)
        if len(cuts) == 1:
            axes.append(cuts)
        else:
            axes.append([(a + b) / 2 for a, b in zip(cuts, cuts[1:])] + cuts)
    for p in itertools.product(*axes):
        if not any(all(b[i].contains(x) for i, x in enumerate(p)) for b in boxes):
            return p
    return None


def _dense_at(parent: CubeRd, kids: list[CubeRd], r):
    """Counterexample window for one node, or ``None``."""
    rho = r * parent.radius
    # window centers keeping the window inside the parent
    target = [Interval(c - parent.radius + rho, c + parent.radius - rho) for c in parent.center]
    boxes = []
    for k in kids:
        slack = rho - k.radius
        if slack >= 0:
            boxes.append([Interval(q - slack, q + slack) for q in k.center])
    p = _union_covers(target, boxes)
    return None if p is None else CubeRd(p, rho)


def uniform_dense_check(system: CubeSystem, r, depth: int = 6):
    """``(True, None)`` if every node of level < depth is r-uniformly dense.

    It suffices to test windows of radius exactly ``r * rad(S_I)``: a larger
    window contains one of those. A child ``Q`` fits in the window centered
    at ``z`` iff ``|z_i - q_i| <= rho - rad(Q)`` on every axis, so the test
    is whether these boxes cover all admissible window centers. On failure
    the uncovered window is returned.
    """
    r = Q(r)
    if not 0 < r < 1 or depth < 1:
        raise DomainError("need 0 < r < 1 and depth >= 1")
    if isinstance(system, CornerCantor):
        # all nodes are similar and the child grid is a product, so one
        # axis of the root decides
        axis = system.axis_system(0)
        bad = _dense_at(axis.root, axis.children(()), r)
        if bad is None:
            return True, None
        c = list(system.root.center)
        c[0] = bad.center[0]
        return False, CubeRd(tuple(c), bad.radius)
    seen = set()
    for w in system.nodes(depth):
        if isinstance(system, ExplicitTree) and system.is_leaf(w):
            # the rest of a leaf chain is similar to its first step
            if any(w[:k] in seen for k in range(len(w))):
                continue
            seen.add(w)
        bad = _dense_at(system.cube(w), system.children(w), r)
        if bad is not None:
            return False, bad
    return True, None


# -- box cut-outs ------------------------------------------------------------------

@dataclass(frozen=True)
class Box:
    """Open axis-aligned box, given by its closure's per-axis intervals."""

    sides: tuple

    def __post_init__(self):
        sides = tuple(s if isinstance(s, Interval) else Interval(*s) for s in self.sides)
        if not sides or any(s.length == 0 for s in sides):
            raise OverlapError("gap boxes must be nonempty open boxes")
        object.__setattr__(self, "sides", sides)

    @property
    def diam(self) -> Fraction:
        return max(s.length for s in self.sides)

    @property
    def center(self) -> tuple:
        return tuple(s.midpoint for s in self.sides)

    def overlaps(self, other: "Box") -> bool:
        return all(a.left < b.right and b.left < a.right for a, b in zip(self.sides, other.sides))

    def dist(self, other: "Box") -> Fraction:
        return max(max(b.left - a.right, a.left - b.right, 0)
                   for a, b in zip(self.sides, other.sides))

    def map(self, a, b) -> "Box":
        return Box(tuple(s.map(a, bb) for s, bb in zip(self.sides, b)))


@dataclass(frozen=True)
class FYCutOutSpec:
    hull: tuple  # per-axis closed intervals
    gaps: tuple

    def __post_init__(self):
        hull = tuple(s if isinstance(s, Interval) else Interval(*s) for s in self.hull)
        gaps = [g if isinstance(g, Box) else Box(tuple(g)) for g in self.gaps]
        for g in gaps:
            if len(g.sides) != len(hull):
                raise DomainError("gap dimension does not match hull")
            if not all(h.left <= s.left and s.right <= h.right for h, s in zip(hull, g.sides)):
                raise ContainmentError(f"gap {g} leaves the hull")
        for a, b in itertools.combinations(gaps, 2):
            if a.overlaps(b):
                raise OverlapError(f"gaps {a} and {b} overlap")
        gaps.sort(key=lambda g: (-g.diam, g.center))
        object.__setattr__(self, "hull", hull)
        object.__setattr__(self, "gaps", tuple(gaps))

    def dist_to_exterior(self, g: Box) -> Fraction:
        return min(min(s.left - h.left, h.right - s.right) for h, s in zip(self.hull, g.sides))

    def homothety(self, a, b) -> "FYCutOutSpec":
        """Image under ``x -> a*x + b`` with ``a > 0`` and ``b`` a vector."""
        a = Q(a)
        if a <= 0:
            raise DomainError("scale must be positive")
        b = tuple(Q(x) for x in b)
        return FYCutOutSpec(tuple(h.map(a, bb) for h, bb in zip(self.hull, b)),
                            tuple(g.map(a, b) for g in self.gaps))


def fy_thickness(spec: FYCutOutSpec):
    """``inf_n dist(G_n, E ∪ G_1 ∪ ... ∪ G_{n-1}) / diam(G_n)`` in the sup norm."""
    if not spec.gaps:
        return INF if all(h.length > 0 for h in spec.hull) else Fraction(0)
    best = None
    for n, g in enumerate(spec.gaps):
        dist = spec.dist_to_exterior(g)
        for prev in spec.gaps[:n]:
            dist = min(dist, g.dist(prev))
        ratio = dist / g.diam
        best = ratio if best is None else min(best, ratio)
    return best


def carpet_spec(stages: int) -> FYCutOutSpec:
    """Sierpinski carpet on ``[0,1]^2`` with ``stages`` rounds of gaps."""
    gaps, squares = [], [(Fraction(0), Fraction(0), Fraction(1))]
    for _ in range(stages):
        nxt = []
        for x, y, s in squares:
            t = s / 3
            for i in range(3):
                for j in range(3):
                    if i == j == 1:
                        gaps.append(Box(((x + t, x + 2 * t), (y + t, y + 2 * t))))
                    else:
                        nxt.append((x + i * t, y + j * t, t))
        squares = nxt
    return FYCutOutSpec(((0, 1), (0, 1)), tuple(gaps))

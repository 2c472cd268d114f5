"""Exact rational plumbing: parsing, formatting, intervals and enclosures.

Every endpoint, length and ratio in the package is a :class:`fractions.Fraction`.
The only non-rational value admitted is ``INF`` (``math.inf``), used as the
thickness of a set with nonempty interior and no gaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

Rational = Fraction
INF = math.inf


def Q(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions, and strings such as ``"3"``, ``"-2/7"`` or
    ``"1e-9"``. Floats are rejected unless they are integral, since a binary
    float is almost never the rational the caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value.is_integer():
            return Fraction(int(value))
        raise ParseError(f"refusing inexact float {value!r}; pass a string")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    raise ParseError(f"not a rational: {value!r}")


def fmt(value) -> str:
    """Render a rational as ``"p/q"`` (or ``"p"``); INF as ``"inf"``."""
    if value == INF:
        return "inf"
    if isinstance(value, float):
        return f"{value:.12g}"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval ``[left, right]``; a singleton when ``left == right``.

    Gaps reuse this type and are read as open intervals by their owners.
    """

    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", Q(self.left))
        object.__setattr__(self, "right", Q(self.right))
        if self.left > self.right:
            raise ValueError(f"empty interval [{self.left}, {self.right}]")

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    @property
    def midpoint(self) -> Fraction:
        return (self.left + self.right) / 2

    def contains(self, x) -> bool:
        return self.left <= x <= self.right

    def contains_open(self, x) -> bool:
        return self.left < x < self.right

    def intersect(self, other: "Interval") -> "Interval | None":
        lo = max(self.left, other.left)
        hi = min(self.right, other.right)
        return Interval(lo, hi) if lo <= hi else None

    def map(self, a, b) -> "Interval":
        """Image under ``x -> a*x + b``."""
        p, q = a * self.left + b, a * self.right + b
        return Interval(min(p, q), max(p, q))

    def distance_to(self, x) -> Fraction:
        if x < self.left:
            return self.left - x
        if x > self.right:
            return x - self.right
        return Fraction(0)

    def __repr__(self):
        return f"[{fmt(self.left)}, {fmt(self.right)}]"


@dataclass(frozen=True)
class Enclosure:
    """Certified bracket ``lo <= value <= hi`` of an infimum-type quantity."""

    lo: Fraction | float
    hi: Fraction | float
    exact: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("enclosure with lo > hi")
        if self.exact and self.lo != self.hi:
            raise ValueError("exact enclosure must have lo == hi")

    @classmethod
    def point(cls, value) -> "Enclosure":
        return cls(value, value, True)

    @property
    def value(self):
        """The exact value; only meaningful when ``exact``."""
        if not self.exact:
            raise ValueError("enclosure is not exact")
        return self.lo

    @property
    def width(self):
        if self.lo == self.hi:
            return Fraction(0)
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __mul__(self, other: "Enclosure") -> "Enclosure":
        # only nonnegative quantities are multiplied here
        return Enclosure(_mul(self.lo, other.lo), _mul(self.hi, other.hi),
                         self.exact and other.exact)

    def __str__(self):
        if self.exact:
            return f"{fmt(self.lo)} (exact)"
        return f"[{fmt(self.lo)}, {fmt(self.hi)}]"


def _mul(a, b):
    if a == 0 or b == 0:
        return Fraction(0)
    return a * b

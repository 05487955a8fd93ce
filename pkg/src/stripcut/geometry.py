"""Exact planar predicates shared by validation, decomposition, and the oracle."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Tuple

Point = Tuple[Fraction, Fraction]


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def on_segment(a: Point, b: Point, p: Point) -> bool:
    """True if p lies on the closed segment ab (collinearity included)."""
    if orient(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True if closed segments ab and cd share at least one point."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and on_segment(a, b, c):
        return True
    if o2 == 0 and on_segment(a, b, d):
        return True
    if o3 == 0 and on_segment(c, d, a):
        return True
    if o4 == 0 and on_segment(c, d, b):
        return True
    return False


def signed_area2(points: Sequence[Point]) -> Fraction:
    """Twice the signed area of the closed polygon through points."""
    total = Fraction(0)
    n = len(points)
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total


def y_on_segment_at(a: Point, b: Point, x: Fraction) -> Fraction:
    """y of the non-vertical segment ab at abscissa x (x must be in range)."""
    if a[0] == b[0]:
        raise ValueError("vertical segment has no unique y at x")
    t = (x - a[0]) / (b[0] - a[0])
    return a[1] + t * (b[1] - a[1])


def x_range(a: Point, b: Point) -> Tuple[Fraction, Fraction]:
    return (min(a[0], b[0]), max(a[0], b[0]))


def point_in_polygon(points: Sequence[Point], p: Point) -> Optional[bool]:
    """True/False for strict interior/exterior, None if p is on the boundary.

    Exact even-odd ray test with a vertical upward ray and careful handling
    of vertices and vertical edges.
    """
    n = len(points)
    px, py = p
    crossings = 0
    for i in range(n):
        a = points[i]
        b = points[(i + 1) % n]
        if on_segment(a, b, p):
            return None
        if a[0] == b[0]:
            continue
        lo, hi = (a, b) if a[0] < b[0] else (b, a)
        # Half-open rule: count the edge over [lo.x, hi.x).
        if not (lo[0] <= px < hi[0]):
            continue
        if y_on_segment_at(a, b, px) > py:
            crossings += 1
    return crossings % 2 == 1

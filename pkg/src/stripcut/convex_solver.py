"""Logarithmic-probe extremes, value, and hybrid-encoded reporting for
convex polygons.

The x-extremes are located by bisection over the cyclically bitonic
x-sequence of a counterclockwise vertex array.  One probe inspects a vertex
and its successor (a constant amount of coordinate access); the counter
exposed to tests counts these inspection steps.  Degenerate plateaus from
collinear vertical chains fall back to a short local walk.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from stripcut.errors import StripcutError
from stripcut.exact_coords import EpsCoord, ceil_diff
from stripcut.polygon_model import (
    Codeword,
    CutDescriptor,
    LiteralRecord,
    Polygon,
    RunRecord,
)


@dataclass
class HullExtremes:
    left_index: int
    right_index: int
    width: Fraction
    probes: int


class _ProbeCounter:
    __slots__ = ("count",)

    def __init__(self):
        self.count = 0


def _bitonic_extreme(xs, n: int, sign: int, probes: _ProbeCounter) -> int:
    """Index of a maximal vertex of the cyclic sequence sign*xs, assuming the
    sequence is cyclically bitonic (true for convex polygons); plateaus are
    resolved by a local walk afterwards."""

    def val(i):
        return sign * xs[i % n]

    def rising(i):
        # direction leaving vertex i; skips plateau steps conservatively
        probes.count += 1
        a, b = val(i), val(i + 1)
        if a == b:
            return None
        return b > a

    lo, hi = 0, n - 1
    dl = rising(lo)
    steps = 0
    while lo < hi and steps <= 2 * n + 4:
        steps += 1
        if hi - lo == 1:
            lo = lo if val(lo) >= val(hi) else hi
            break
        mid = (lo + hi) // 2
        dm = rising(mid)
        if dm is None:
            # plateau: resolve by walking off it (degenerate inputs only)
            j = mid
            while j < hi and val(j + 1) == val(mid):
                probes.count += 1
                j += 1
            dm = val(j + 1) > val(mid) if j < hi else False
            if dm:
                lo, dl = j + 1, None
                continue
            hi = mid
            continue
        if dl is None:
            dl = val(lo + 1) > val(lo) if val(lo + 1) != val(lo) else dm
        if dl:
            if dm and val(mid) >= val(lo):
                lo, dl = mid, dm
            else:
                hi = mid
        else:
            if not dm and val(mid) <= val(lo):
                lo, dl = mid, dm
            else:
                hi = mid
    best = lo % n
    # tie rule: smallest index on the plateau of equal extreme values
    start = best
    while True:
        probes.count += 1
        prev = (start - 1) % n
        if prev == best or val(prev) != val(best):
            break
        start = prev
    end = best
    while True:
        probes.count += 1
        nxt = (end + 1) % n
        if nxt == start or val(nxt) != val(best):
            break
        end = nxt
    if start <= end:
        return start
    return 0  # plateau wraps through index 0


def convex_extremes(poly: Polygon) -> HullExtremes:
    """Leftmost and rightmost vertex indices (ties toward the smaller index)
    plus the horizontal width, via two bitonic bisections."""
    if poly.declared_class != "convex":
        raise StripcutError("BAD_CLASS", "convex_extremes requires a convex polygon")
    xs = [p[0] for p in poly.vertices]
    n = len(xs)
    probes = _ProbeCounter()
    if n <= 8:
        probes.count += n
        left = min(range(n), key=lambda i: (xs[i], i))
        right = max(range(n), key=lambda i: (xs[i], -i))
        right = min((i for i in range(n) if xs[i] == xs[right]))
        return HullExtremes(left, right, xs[right] - xs[left], probes.count)
    right = _bitonic_extreme(xs, n, 1, probes)
    left = _bitonic_extreme(xs, n, -1, probes)
    return HullExtremes(left, right, xs[right] - xs[left], probes.count)


def convex_value(poly: Polygon) -> int:
    """The minimum strip count of a convex polygon: the width rounded up,
    never less than one."""
    ext = convex_extremes(poly)
    k = ceil_diff(EpsCoord(ext.width), EpsCoord(0))
    return max(1, k)


def _chain_edge_rightward(poly: Polygon, edge: int, x: Fraction, lower: bool) -> int:
    """Boundary edge of the lower or upper chain whose half-open x-interval
    (left-exclusive, right-inclusive) contains x, walking rightward."""
    pts = poly.vertices
    n = len(pts)
    e = edge
    for _ in range(n + 1):
        a, b = pts[e], pts[(e + 1) % n]
        if lower:
            if a[0] < x <= b[0]:
                return e
            e = (e + 1) % n
        else:
            if b[0] < x <= a[0]:
                return e
            e = (e - 1) % n
    raise StripcutError("STRUCTURE_VIOLATION", f"no chain edge at x={x}")


def convex_report(poly: Polygon) -> Codeword:
    """Cut descriptors at unit spacing from the leftmost vertex, literal when
    the cut count is below the vertex count and run-length otherwise."""
    ext = convex_extremes(poly)
    opt = max(1, ceil_diff(EpsCoord(ext.width), EpsCoord(0)))
    n = poly.n
    pts = poly.vertices
    x_left = pts[ext.left_index][0]
    cuts: List[CutDescriptor] = []
    bottom = ext.left_index
    top = (ext.left_index - 1) % n
    for j in range(1, opt):
        x = x_left + j
        bottom = _chain_edge_rightward(poly, bottom, x, lower=True)
        top = _chain_edge_rightward(poly, top, x, lower=False)
        cuts.append(CutDescriptor(top, bottom, EpsCoord(x)))
    if opt < n:
        return Codeword([LiteralRecord(d) for d in cuts])
    records = []
    i = 0
    while i < len(cuts):
        j = i
        while (
            j + 1 < len(cuts)
            and cuts[j + 1].top_edge == cuts[i].top_edge
            and cuts[j + 1].bottom_edge == cuts[i].bottom_edge
        ):
            j += 1
        records.append(RunRecord(cuts[i], j - i + 1))
        i = j + 1
    return Codeword(records)

"""Instance generators with known optima, and an independent brute-force
oracle.

The generators realize interval families as thin rectilinear assemblies
(staircase rectangles, corridors, spines) or as glued triangle models; the
constructions pin their optima through interval arithmetic on the realized
families, with margins keeping every width comparison safely away from
boundary ties.

The oracle enumerates partitions over the candidate cut set x(p)+m together
with midpoints (which stand in for cuts placed just beside an interface),
recursing over connected regions of a naive trapezoid complex built without
any of the solver's machinery.  It is exponential in the worst case and is
meant for desk-scale cross-checks only.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from stripcut.errors import StripcutError
from stripcut.exact_coords import rational
from stripcut.geometry import Point, orient, segments_intersect, y_on_segment_at
from stripcut.polygon_model import GluingModel, Polygon


@dataclass
class GeneratedInstance:
    region: Union[Polygon, GluingModel]
    expected_opt: Optional[int]
    provenance: str
    meta: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Rectilinear assembly: axis-aligned rectangles glued along openings, traced
# into a single simple polygon boundary.

_OPPOSITE = {"L": "R", "R": "L", "T": "B", "B": "T"}


class RectPiece:
    def __init__(self, x0, y0, x1, y1):
        if not (x0 < x1 and y0 < y1):
            raise ValueError("degenerate rectangle")
        self.x0, self.y0, self.x1, self.y1 = x0, y0, x1, y1
        self.openings = {s: [] for s in "BRTL"}  # side -> [(lo, hi, child|None)]

    def attach(self, side: str, lo, hi, child: "RectPiece") -> "RectPiece":
        """Glue child beyond this piece's side along the interval [lo, hi]
        (x-interval for horizontal sides, y-interval for vertical)."""
        if lo >= hi:
            raise ValueError("empty opening")
        self.openings[side].append((lo, hi, child))
        child.openings[_OPPOSITE[side]].append((lo, hi, None))  # parent link
        return child


def _ring(piece: RectPiece):
    """Token ring: corner points and opening tokens in CCW travel order.
    Opening tokens carry (first-hit point, second point, child-or-None)."""
    x0, y0, x1, y1 = piece.x0, piece.y0, piece.x1, piece.y1
    ring = []
    ring.append(("pt", (x0, y0)))
    for lo, hi, child in sorted(piece.openings["B"]):
        ring.append(("open", (lo, y0), (hi, y0), child))
    ring.append(("pt", (x1, y0)))
    for lo, hi, child in sorted(piece.openings["R"]):
        ring.append(("open", (x1, lo), (x1, hi), child))
    ring.append(("pt", (x1, y1)))
    for lo, hi, child in sorted(piece.openings["T"], key=lambda t: -t[1]):
        ring.append(("open", (hi, y1), (lo, y1), child))
    ring.append(("pt", (x0, y1)))
    for lo, hi, child in sorted(piece.openings["L"], key=lambda t: -t[1]):
        ring.append(("open", (x0, hi), (x0, lo), child))
    return ring


def _emit(piece: RectPiece, out: List[Point], entry_first=None):
    """Append the boundary walk of this piece (and its subtree) to out.  For
    a child, the walk starts after its parent-link token, identified by the
    link's first-hit point in the child's own travel direction."""
    ring = _ring(piece)
    if entry_first is None:
        order = range(len(ring))
    else:
        start = None
        for idx, tok in enumerate(ring):
            if tok[0] == "open" and tok[3] is None and tok[1] == entry_first:
                start = idx
                break
        if start is None:
            raise StripcutError("STRUCTURE_VIOLATION", "child missing parent link")
        out.append(ring[start][2])  # the link's far corner in child travel
        order = [(start + k) % len(ring) for k in range(1, len(ring))]
    for idx in order:
        tok = ring[idx]
        if tok[0] == "pt":
            out.append(tok[1])
        else:
            _, pf, ps, child = tok
            if child is None:
                if entry_first is None:
                    raise StripcutError("STRUCTURE_VIOLATION", "dangling parent link")
                out.append(pf)  # closing side of the entry link
                continue
            out.append(pf)
            # the child's travel hits the shared segment in opposite order
            _emit(child, out, entry_first=ps)
            out.append(ps)


def assemble_polygon(root: RectPiece, declared_class: str = "simple") -> Polygon:
    raw: List[Point] = []
    _emit(root, raw)
    pts: List[Point] = []
    for p in raw:
        if not pts or pts[-1] != p:
            pts.append(p)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    return Polygon(pts, declared_class)


# ---------------------------------------------------------------------------
# Generators


def gen_comb(k: int, tooth_width: Fraction = Fraction(5, 4)) -> GeneratedInstance:
    """Rectilinear comb: k teeth pointing left from a thin vertical spine,
    so the refined tree chains k bridge nodes along the spine's side.

    With the default tooth width each tooth takes one deterministic cut and
    leaves a sliver that merges across the spine: opt = k + 1.
    """
    if k < 1:
        raise ValueError("k >= 1")
    w = rational(tooth_width)
    sw = Fraction(1, 4)
    spine = RectPiece(Fraction(0), Fraction(0), sw, Fraction(k) + Fraction(1, 2))
    for i in range(k):
        lo = Fraction(1, 2) + i
        hi = lo + Fraction(1, 2)
        spine.attach("L", lo, hi, RectPiece(-w, lo, Fraction(0), hi))
    poly = assemble_polygon(spine)
    whole = w.numerator // w.denominator  # cuts per tooth is floor(w + eps)
    frac = w - whole
    if frac == 0:
        expected = k * whole + 1
    elif frac + sw <= 1:
        expected = k * whole + 1  # slivers merge with the spine strip
    else:
        expected = k * whole + 2  # slivers merge together, spine separate
    return GeneratedInstance(
        poly, expected, "comb", {"k": k, "tooth_width": w, "n": poly.n}
    )


def gen_staircase(xs: Sequence[Fraction]) -> GeneratedInstance:
    """Zig-zag chain p_i = (x_i, i) closed by a vertical left side; one strip
    exactly when every x_i is at most one."""
    xs = [rational(x) for x in xs]
    if not xs or not all(0 < x < 2 for x in xs):
        raise ValueError("staircase coordinates must lie in (0, 2)")
    n = len(xs)
    pts = [(Fraction(0), Fraction(0))]
    pts += [(xs[i], Fraction(i + 1)) for i in range(n)]
    pts.append((Fraction(0), Fraction(n)))
    # drop a collinear final vertex when x_n collides with the closing edge
    if pts[-1] == pts[-2]:
        pts.pop()
    poly = Polygon(pts, "simple")
    expected = 1 if max(xs) <= 1 else None
    return GeneratedInstance(poly, expected, "staircase", {"xs": xs})


def gen_no_greedy(
    n: int, a: Sequence[Fraction], b: Fraction, strict: bool = True
) -> GeneratedInstance:
    """Staircase of near-unit intervals joined to a thin spine, plus one
    floating interval: the optimum drops by one exactly when the floating
    value is 1/(4n)-close to a staircase value.

    ``a`` may have fewer than n entries; thresholds always use the parameter
    n.  With ``strict`` the parameters must respect the generator's margins
    (distances clear of the 1/(4n) boundary; for two or more staircase
    intervals a close pair at index 1 must be accompanied by another one).
    """
    a = [rational(v) for v in a]
    b = rational(b)
    m = len(a)
    if m > n:
        raise ValueError("at most n staircase values")
    quarter = Fraction(1, 4 * n)
    L = 1 - quarter
    margin = Fraction(1, 32 * n)
    for i, ai in enumerate(a, start=1):
        if not (Fraction(i, 2 * n) - quarter < ai < Fraction(i, 2 * n)):
            raise ValueError(f"a_{i} outside its staircase window")
    b_lo = Fraction(1, 2 * n) if n >= 2 else Fraction(1, 8)
    if not (b_lo < b < Fraction(1, 2) - Fraction(1, 8 * n)):
        raise ValueError("b outside its window")
    close = [i for i in range(m) if abs(a[i] - b) <= quarter]
    if strict:
        for i in range(m):
            d = abs(a[i] - b)
            if quarter - margin < d < quarter + margin:
                raise ValueError("floating distance too near the threshold")
        for i in range(m - 1):
            if a[i + 1] - a[i] < quarter + margin:
                raise ValueError("staircase gap too near the threshold")
        if m >= 2 and close == [0]:
            raise ValueError("a close pair only at index 1 is not supported")

    u = Fraction(1, 32 * n)
    cw = Fraction(1, 128 * n)
    tw = Fraction(1, 128 * n)
    nu = Fraction(1, 256 * n)
    wall_l = Fraction(1, 2) - tw
    wall_r = Fraction(1, 2) + tw

    # layers bottom to top: staircase rectangles; their runner corridors
    # (lower index higher, so risers from upper-left corners stay clear);
    # the left arm; the floating runner; the floating rectangle on top
    rb = 3 * (m + 1) * u
    sp_y = rb + 3 * m * u
    rp = sp_y + 2 * u
    spine = RectPiece(wall_l, rb, wall_r, rp + 2 * u)

    # the left arm owns the leftmost cell, rooting the subproblem tree just
    # beside the spine so the whole interval family assembles at its chain
    spx = (a[0] if m else b) - nu
    spine.attach("L", sp_y, sp_y + u, RectPiece(spx, sp_y, wall_l, sp_y + u))
    for i in range(m):
        yr = rb + 3 * (m - 1 - i) * u
        runner = spine.attach("L", yr, yr + u, RectPiece(a[i], yr, wall_l, yr + u))
        r_top = 3 * (i + 1) * u + u
        riser = runner.attach(
            "B", a[i], a[i] + cw, RectPiece(a[i], r_top, a[i] + cw, yr)
        )
        riser.attach(
            "B", a[i], a[i] + cw, RectPiece(a[i], r_top - u, a[i] + L, r_top)
        )
    runner2 = spine.attach("L", rp, rp + u, RectPiece(b, rp, wall_l, rp + u))
    riser2 = runner2.attach(
        "T", b, b + cw, RectPiece(b, rp + u, b + cw, rp + 3 * u)
    )
    riser2.attach("T", b, b + cw, RectPiece(b, rp + 3 * u, b + L, rp + 4 * u))

    poly = assemble_polygon(spine)
    expected = m + 1 - (1 if close else 0)
    return GeneratedInstance(
        poly, expected, "no_greedy",
        {"n": n, "a": a, "b": b, "close": bool(close), "family_size": m + 1},
    )


def gen_delta_gadget(xs: Sequence[Fraction], delta: Fraction) -> GeneratedInstance:
    """Glued-triangle model whose optimum is 2n exactly when no two of the
    x-values are delta-close: each value contributes two overlapping sheets
    whose merge would need a strip wider than one."""
    xs = [rational(x) for x in xs]
    delta = rational(delta)
    n = len(xs)
    if n < 1:
        raise ValueError("need at least one value")
    if not (0 < delta < Fraction(1, 5)):
        raise ValueError("delta must lie in (0, 1/5)")
    for x in xs:
        if not (delta < x < Fraction(1, 2) - delta / 2):
            raise ValueError(f"value {x} outside the normalized window")
    s = delta / (16 * n)
    g = pw = s

    triangles: List[Tuple[Point, Point, Point]] = []
    edges: List[Tuple[int, int, Tuple[Point, Point]]] = []

    def add_rect(x0, y0, x1, y1) -> Tuple[int, int]:
        """Two CCW triangles glued along the ll-ur diagonal; returns their
        indices (lower, upper)."""
        ll, lr, ur, ul = (x0, y0), (x1, y0), (x1, y1), (x0, y1)
        lo = len(triangles)
        triangles.append((ll, lr, ur))
        triangles.append((ll, ur, ul))
        edges.append((lo, lo + 1, (ll, ur)))
        return lo, lo + 1

    spine_y0 = Fraction(1, 2)
    spine_y1 = Fraction(2 * n) + Fraction(3, 2)
    sp_lo, sp_up = add_rect(Fraction(0), spine_y0, delta / 2, spine_y1)

    close = any(
        abs(xs[i] - xs[j]) <= delta for i in range(n) for j in range(i + 1, n)
    )

    mouths = []
    block = 0
    for i, x in enumerate(xs):
        for lo_hi in (
            (-(x - delta / 2), 1 - delta / 2 - x),  # A_i
            (-(1 - delta / 2 - x), x - delta / 2),  # B_i
        ):
            lo, hi = lo_hi
            yb = Fraction(1 + block)
            j = lo + g
            r_lo, r_up = add_rect(lo, yb, hi, yb + Fraction(1, 4))
            v_lo, v_up = add_rect(j, yb + Fraction(1, 4), j + pw, yb + Fraction(1, 2))
            h_lo, h_up = add_rect(j, yb + Fraction(1, 2), Fraction(0), yb + Fraction(3, 4))
            # rectangle top edge lives on its upper triangle, etc.
            edges.append((r_up, v_lo, ((j, yb + Fraction(1, 4)), (j + pw, yb + Fraction(1, 4)))))
            edges.append((v_up, h_lo, ((j, yb + Fraction(1, 2)), (j + pw, yb + Fraction(1, 2)))))
            mouth = ((Fraction(0), yb + Fraction(1, 2)), (Fraction(0), yb + Fraction(3, 4)))
            edges.append((h_lo, sp_up, mouth))
            mouths.append(mouth)
            block += 1

    model = GluingModel(triangles, edges)
    expected = 2 * n if not close else None
    return GeneratedInstance(
        model, expected, "delta_gadget",
        {"xs": xs, "delta": delta, "close": close, "mouths": mouths, "n": n},
    )


def gen_random_simple(n: int, seed: int, width: Optional[Fraction] = None) -> Polygon:
    """Random simple polygon from grid points uncrossed by 2-opt moves,
    optionally rescaled to a target horizontal width."""
    if n < 3:
        raise ValueError("n >= 3")
    master = random.Random(seed)
    for attempt in range(400):
        rng = random.Random(master.randrange(1 << 30) + attempt)
        poly = _try_random_simple(n, rng)
        if poly is None:
            continue
        if width is not None:
            xs = [p[0] for p in poly]
            span = max(xs) - min(xs)
            scale = rational(width) / span
            poly = [((p[0] - min(xs)) * scale, p[1]) for p in poly]
        try:
            return Polygon(poly, "simple")
        except StripcutError:
            continue
    raise StripcutError("GENERATION_FAILED", f"no simple polygon after many tries (n={n})")


def _try_random_simple(n: int, rng: random.Random):
    grid = 4 * n
    pts = set()
    while len(pts) < n:
        pts.add((Fraction(rng.randint(0, grid)), Fraction(rng.randint(0, grid))))
    pts = list(pts)
    cx = sum(p[0] for p in pts) / n
    cy = sum(p[1] for p in pts) / n
    pts.sort(key=lambda p: (math.atan2(p[1] - cy, p[0] - cx), p[0], p[1]))
    for _ in range(20 * n * n):
        cross = _first_crossing(pts)
        if cross is None:
            break
        i, j = cross
        pts[i + 1 : j + 1] = reversed(pts[i + 1 : j + 1])
    else:
        return None
    if _first_crossing(pts) is not None:
        return None
    from stripcut.geometry import signed_area2

    if signed_area2(pts) < 0:
        pts.reverse()
    try:
        Polygon(list(pts), "simple")
    except StripcutError:
        return None
    return list(pts)


def _first_crossing(pts):
    n = len(pts)
    for i in range(n):
        a1, b1 = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            if segments_intersect(a1, b1, pts[j], pts[(j + 1) % n]):
                return (i, j)
    return None


def gen_random_convex(n: int, width: Fraction, seed: int) -> Polygon:
    """Random convex polygon with close to n vertices (Valtr's construction
    on a rational grid), rescaled to the given horizontal width."""
    rng = random.Random(seed)
    grid = 16 * n
    for _ in range(64):
        xs = sorted(Fraction(rng.randint(0, grid)) for _ in range(n))
        ys = sorted(Fraction(rng.randint(0, grid)) for _ in range(n))
        vx = _valtr_components(xs, rng)
        vy = _valtr_components(ys, rng)
        rng.shuffle(vy)
        vecs = [(vx[i], vy[i]) for i in range(n)]
        vecs = [v for v in vecs if v != (0, 0)]
        vecs.sort(key=_angle_key)
        merged = []
        for v in vecs:
            if merged and orient((0, 0), merged[-1], v) == 0 and _same_dir(merged[-1], v):
                merged[-1] = (merged[-1][0] + v[0], merged[-1][1] + v[1])
            else:
                merged.append(v)
        if len(merged) < 3:
            continue
        pts = [(Fraction(0), Fraction(0))]
        for v in merged[:-1]:
            pts.append((pts[-1][0] + v[0], pts[-1][1] + v[1]))
        span = max(p[0] for p in pts) - min(p[0] for p in pts)
        if span == 0:
            continue
        scale = rational(width) / span
        pts = [(p[0] * scale, p[1]) for p in pts]
        try:
            return Polygon(pts, "convex")
        except StripcutError:
            continue
    raise StripcutError("GENERATION_FAILED", "no convex polygon generated")


def _valtr_components(vals, rng):
    lo, hi = vals[0], vals[-1]
    inner = vals[1:-1]
    rng.shuffle(inner)
    half = len(inner) // 2
    up = sorted([lo] + inner[:half] + [hi])
    down = sorted([lo] + inner[half:] + [hi], reverse=True)
    comps = [b - a for a, b in zip(up, up[1:])]
    comps += [b - a for a, b in zip(down, down[1:])]
    return comps


def _angle_key(v):
    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    return (half, _AngleToken(v))


class _AngleToken:
    """Orders vectors within one halfplane by angle via exact cross products."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        ax, ay = self.v
        bx, by = other.v
        return ax * by - ay * bx > 0

    def __eq__(self, other):
        ax, ay = self.v
        bx, by = other.v
        return ax * by - ay * bx == 0


def _same_dir(u, v):
    return u[0] * v[0] + u[1] * v[1] > 0


# ---------------------------------------------------------------------------
# Naive decomposition and the brute-force oracle


def candidate_cut_xs(poly: Polygon) -> List[Fraction]:
    xs = sorted({p[0] for p in poly.vertices})
    xmin, xmax = xs[0], xs[-1]
    base = set()
    for xv in xs:
        m = math.ceil(xmin - xv)
        while xv + m <= xmax:
            if xmin < xv + m < xmax:
                base.add(xv + m)
            m += 1
    ordered = sorted(base | {xmin, xmax})
    mids = [(a + b) / 2 for a, b in zip(ordered, ordered[1:])]
    return sorted(base | set(mids))


def naive_atoms(poly: Polygon, interior_xs: Sequence[Fraction]):
    """Trapezoid atoms between consecutive column abscissas, with adjacency
    edges labelled by the maximal chord a cut there would sever.  Built by
    direct midpoint scans, independent of the sweep decomposition."""
    pts = poly.vertices
    n = len(pts)
    xs_all = sorted({p[0] for p in pts} | set(interior_xs))
    slabs = list(zip(xs_all, xs_all[1:]))
    atoms = []  # (a, b, ybot_mid, ytop_mid, bottom_edge, top_edge)
    by_slab: List[List[int]] = []
    for a, b in slabs:
        mid = (a + b) / 2
        crossing = []
        for e in range(n):
            p, q = pts[e], pts[(e + 1) % n]
            if p[0] == q[0]:
                continue
            lo, hi = (p[0], q[0]) if p[0] < q[0] else (q[0], p[0])
            if lo <= mid <= hi:
                crossing.append((y_on_segment_at(p, q, mid), e))
        crossing.sort()
        ids = []
        for t in range(0, len(crossing), 2):
            ids.append(len(atoms))
            atoms.append((a, b, crossing[t][0], crossing[t + 1][0], crossing[t][1], crossing[t + 1][1]))
        by_slab.append(ids)
    edges = []  # (atom_left, atom_right, x)
    for s in range(len(slabs) - 1):
        x = slabs[s][1]
        blockers = []
        for e in range(n):
            p, q = pts[e], pts[(e + 1) % n]
            if p[0] == q[0] == x:
                blockers.append((min(p[1], q[1]), max(p[1], q[1])))
        for p in pts:
            if p[0] == x:
                blockers.append((p[1], p[1]))
        blockers.sort()
        for li in by_slab[s]:
            for ri in by_slab[s + 1]:
                lo = max(_edge_y(pts, atoms[li][4], x), _edge_y(pts, atoms[ri][4], x))
                hi = min(_edge_y(pts, atoms[li][5], x), _edge_y(pts, atoms[ri][5], x))
                if lo >= hi:
                    continue
                pieces = [(lo, hi)]
                for b0, b1 in blockers:
                    nxt = []
                    for p0, p1 in pieces:
                        if b1 <= p0 or b0 >= p1:
                            nxt.append((p0, p1))
                            continue
                        if p0 < b0:
                            nxt.append((p0, b0))
                        if b1 < p1:
                            nxt.append((b1, p1))
                    pieces = nxt
                for p0, p1 in pieces:
                    if p0 < p1:
                        edges.append((li, ri, x))
    return atoms, edges


def _edge_y(pts, e, x):
    p, q = pts[e], pts[(e + 1) % len(pts)]
    return y_on_segment_at(p, q, x)


def naive_cell_count(poly: Polygon) -> int:
    """Trapezoid count of the vertical decomposition by the naive method:
    atoms merge across a column when they share both bounding edges and no
    vertex ray can land between them."""
    atoms, edges = naive_atoms(poly, [])
    pts = poly.vertices
    parent = list(range(len(atoms)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for li, ri, x in edges:
        if atoms[li][4] != atoms[ri][4] or atoms[li][5] != atoms[ri][5]:
            continue
        lo = _edge_y(pts, atoms[li][4], x)
        hi = _edge_y(pts, atoms[li][5], x)
        if any(p[0] == x and lo <= p[1] <= hi for p in pts):
            continue
        a, b = find(li), find(ri)
        if a != b:
            parent[a] = b
    return len({find(i) for i in range(len(atoms))})


def oracle_value(poly: Polygon, max_cuts: int = 220) -> int:
    """Minimum piece count over all partitions whose cuts lie on the
    candidate set, by exhaustive region splitting with memoization."""
    xs = candidate_cut_xs(poly)
    atoms, edges = naive_atoms(poly, xs)
    if len(edges) > max_cuts:
        raise StripcutError("TOO_LARGE", f"{len(edges)} candidate cuts exceed {max_cuts}")
    if len(atoms) > 500:
        raise StripcutError("TOO_LARGE", f"{len(atoms)} atoms")
    neighbors: Dict[int, List[Tuple[int, int]]] = {i: [] for i in range(len(atoms))}
    for eid, (li, ri, x) in enumerate(edges):
        neighbors[li].append((ri, eid))
        neighbors[ri].append((li, eid))
    full = (1 << len(atoms)) - 1
    ext_lo = [a[0] for a in atoms]
    ext_hi = [a[1] for a in atoms]
    memo: Dict[int, int] = {}

    def bits(mask):
        while mask:
            lsb = mask & -mask
            yield lsb.bit_length() - 1
            mask ^= lsb

    def component(mask, start, banned_edge):
        seen = 1 << start
        stack = [start]
        while stack:
            v = stack.pop()
            for w, eid in neighbors[v]:
                if eid == banned_edge or not (mask >> w) & 1 or (seen >> w) & 1:
                    continue
                seen |= 1 << w
                stack.append(w)
        return seen

    def rec(mask) -> int:
        got = memo.get(mask)
        if got is not None:
            return got
        if len(memo) > 400_000:
            raise StripcutError("TOO_LARGE", "oracle state space too large")
        members = list(bits(mask))
        lo = min(ext_lo[i] for i in members)
        hi = max(ext_hi[i] for i in members)
        if hi - lo <= 1:
            memo[mask] = 1
            return 1
        width = hi - lo
        bound = -((-width.numerator) // width.denominator)  # ceil, best possible
        window = lo + 1
        best = None
        seen_splits = set()
        for eid, (li, ri, x) in enumerate(edges):
            if x > window:
                continue
            if not ((mask >> li) & 1 and (mask >> ri) & 1):
                continue
            left = component(mask, li, eid)
            if (left >> ri) & 1:
                continue  # does not separate inside this region
            if left in seen_splits:
                continue
            seen_splits.add(left)
            right = mask ^ left
            cand = rec(left) + rec(right)
            if best is None or cand < best:
                best = cand
                if best == bound:
                    break
        if best is None:
            # every piece containing the leftmost atom must end within unit
            # width, so a feasible partition needs a cut in this window
            raise StripcutError("ORACLE_STUCK", "region wider than 1 with no cut")
        memo[mask] = best
        return best

    return rec(full)

"""Polygon and gluing-model inputs, cut descriptors, and the codeword schema.

File formats
------------
Polygon file::

    polygon <convex|simple> <n>
    x y            (n lines, decimal or p/q literals, CCW order)

Gluing file::

    gluing <m>
    x1 y1 x2 y2 x3 y3          (m triangle lines)
    edge i j ax ay bx by       (m-1 lines, shared segment ab)

Codeword file, one record per line::

    run topEdge bottomEdge x count
    lit topEdge bottomEdge x
    bridge nodeId side x[+eps|-eps] topEdge bottomEdge

The x field of run/lit records accepts the same +eps/-eps suffix; the solver
emits it whenever a deterministic cut position carries an infinitesimal
offset.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from stripcut.errors import StripcutError, format_error
from stripcut.exact_coords import EpsCoord, format_rational, rational
from stripcut.geometry import (
    Point,
    on_segment,
    orient,
    segments_intersect,
    signed_area2,
    x_range,
    y_on_segment_at,
)

SIMPLICITY_CHECK_LIMIT = 10_000


# ---------------------------------------------------------------------------
# Boundary chains


class Boundary:
    """A closed chain of directed boundary edges, interior to the left.

    Edge ids are positions in the chain; for polygons this is the index of
    the edge's source vertex in CCW order.
    """

    def __init__(self, edges: Sequence[Tuple[Point, Point]]):
        self.edges: List[Tuple[Point, Point]] = list(edges)

    def __len__(self) -> int:
        return len(self.edges)

    def points(self, edge_id: int) -> Tuple[Point, Point]:
        return self.edges[edge_id]

    def x_span(self, edge_id: int) -> Tuple[Fraction, Fraction]:
        a, b = self.edges[edge_id]
        return x_range(a, b)

    def is_vertical(self, edge_id: int) -> bool:
        a, b = self.edges[edge_id]
        return a[0] == b[0]

    def y_at(self, edge_id: int, x: Fraction) -> Fraction:
        a, b = self.edges[edge_id]
        return y_on_segment_at(a, b, x)

    def walk_right(self, edge_id: int, x: Fraction) -> int:
        """Follow the chain from edge_id toward increasing x until reaching
        the edge containing abscissa x; at a vertex hit, stays on the left
        incident edge."""
        eid = edge_id
        for _ in range(2 * len(self.edges) + 2):
            a, b = self.edges[eid]
            lo, hi = x_range(a, b)
            if lo <= x <= hi and not (a[0] == b[0] and a[0] != x):
                return eid
            # step in the direction of travel along the same chain side
            eid = (eid + 1) % len(self.edges) if b[0] >= a[0] else (eid - 1) % len(self.edges)
        raise StripcutError("CORRUPT_CODEWORD", f"no boundary edge reaches x={x}")


# ---------------------------------------------------------------------------
# Polygon


@dataclass
class Polygon:
    vertices: List[Point]
    declared_class: str  # "convex" | "simple"

    def __post_init__(self):
        self.validate()

    @property
    def n(self) -> int:
        return len(self.vertices)

    def boundary(self) -> Boundary:
        pts = self.vertices
        return Boundary([(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))])

    def x_extent(self) -> Tuple[Fraction, Fraction]:
        xs = [p[0] for p in self.vertices]
        return min(xs), max(xs)

    def validate(self) -> None:
        if self.declared_class not in ("convex", "simple"):
            raise format_error("BAD_CLASS", f"unknown class {self.declared_class!r}")
        pts = self.vertices
        n = len(pts)
        if n < 3:
            raise StripcutError("TOO_FEW_VERTICES", f"need at least 3 vertices, got {n}")
        for i in range(n):
            if pts[i] == pts[(i + 1) % n]:
                raise StripcutError("DUPLICATE_VERTEX", f"vertices {i} and {(i + 1) % n} coincide")
        if signed_area2(pts) <= 0:
            raise StripcutError("NOT_CCW", "vertices must be in counterclockwise order")
        if self.declared_class == "convex":
            self._validate_convex()
        else:
            self._validate_simple()

    def _validate_convex(self) -> None:
        pts = self.vertices
        n = len(pts)
        for i in range(n):
            if orient(pts[i - 1], pts[i], pts[(i + 1) % n]) < 0:
                raise StripcutError("CONVEXITY_VIOLATION", f"right turn at vertex {i}")
        # All-left-turn chains can still wind more than once; a convex cycle
        # changes x-direction and y-direction exactly twice each.
        for axis in (0, 1):
            signs = []
            for i in range(n):
                d = pts[(i + 1) % n][axis] - pts[i][axis]
                s = (d > 0) - (d < 0)
                if s != 0 and (not signs or signs[-1] != s):
                    signs.append(s)
            if len(signs) >= 2 and signs[0] == signs[-1]:
                signs.pop()
            if len(signs) > 2:
                raise StripcutError("CONVEXITY_VIOLATION", "boundary winds more than once")

    def _validate_simple(self) -> None:
        pts = self.vertices
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if orient(a, b, c) == 0:
                dot = (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1])
                if dot > 0:
                    raise StripcutError("SIMPLICITY_VIOLATION", f"boundary folds back at vertex {i}")
        if n > SIMPLICITY_CHECK_LIMIT:
            warnings.warn(
                f"skipping O(n^2) simplicity check for n={n} > {SIMPLICITY_CHECK_LIMIT}",
                stacklevel=3,
            )
            return
        for i in range(n):
            a1, b1 = pts[i], pts[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                if segments_intersect(a1, b1, pts[j], pts[(j + 1) % n]):
                    raise StripcutError(
                        "SIMPLICITY_VIOLATION", f"edges {i} and {j} intersect"
                    )


# ---------------------------------------------------------------------------
# Gluing model


@dataclass
class GluingModel:
    triangles: List[Tuple[Point, Point, Point]]
    tree_edges: List[Tuple[int, int, Tuple[Point, Point]]]
    _boundary: Optional[Boundary] = field(default=None, repr=False)
    _boundary_pieces: Optional[list] = field(default=None, repr=False)
    _side_pieces: Optional[dict] = field(default=None, repr=False)

    def __post_init__(self):
        tris = []
        for t in self.triangles:
            if signed_area2(list(t)) == 0:
                raise StripcutError("DEGENERATE_TRIANGLE", f"zero-area triangle {t}")
            if signed_area2(list(t)) < 0:
                t = (t[0], t[2], t[1])
            tris.append(tuple(t))
        self.triangles = tris
        validate_gluing(self)

    @property
    def n(self) -> int:
        return len(self.boundary())

    def boundary(self) -> Boundary:
        if self._boundary is None:
            self._boundary, self._boundary_pieces, self._side_pieces = _trace_boundary(self)
        return self._boundary

    def boundary_pieces(self) -> list:
        self.boundary()
        return self._boundary_pieces

    def side_pieces(self) -> dict:
        self.boundary()
        return self._side_pieces

    def x_extent(self) -> Tuple[Fraction, Fraction]:
        xs = [p[0] for t in self.triangles for p in t]
        return min(xs), max(xs)


def _tri_edge_containing(tri, a: Point, b: Point) -> Optional[int]:
    """Index of the triangle side whose closed segment contains both a and b."""
    for k in range(3):
        u, w = tri[k], tri[(k + 1) % 3]
        if on_segment(u, w, a) and on_segment(u, w, b):
            return k
    return None


def validate_gluing(model: GluingModel) -> None:
    """Confirm tree structure and shared-segment geometry.

    The immersed-disk condition is not verified; a tree gluing of triangles
    is always simply connected, and the solver is well defined on any such
    surface.
    """
    m = len(model.triangles)
    if m == 0:
        raise StripcutError("TOO_FEW_TRIANGLES", "need at least one triangle")
    if len(model.tree_edges) != m - 1:
        raise StripcutError(
            "NOT_A_TREE",
            f"{len(model.tree_edges)} gluing edges for {m} triangles (need m-1)",
        )
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    per_edge_segments: Dict[Tuple[int, int], List[Tuple[Point, Point]]] = {}
    for idx, (i, j, (a, b)) in enumerate(model.tree_edges):
        if not (0 <= i < m and 0 <= j < m) or i == j:
            raise StripcutError("NOT_A_TREE", f"bad triangle pair in gluing edge {idx}")
        if a == b:
            raise StripcutError("BAD_SHARED_SEGMENT", f"zero-length segment in edge {idx}")
        sides = []
        for t in (i, j):
            k = _tri_edge_containing(model.triangles[t], a, b)
            if k is None:
                raise StripcutError(
                    "BAD_SHARED_SEGMENT",
                    f"segment of gluing edge {idx} not on boundary of triangle {t}",
                )
            sides.append(k)
            per_edge_segments.setdefault((t, k), []).append((a, b))
        oi = _side_sign(model.triangles[i], a, b)
        oj = _side_sign(model.triangles[j], a, b)
        if oi == 0 or oj == 0 or oi == oj:
            raise StripcutError(
                "BAD_SHARED_SEGMENT",
                f"triangles of gluing edge {idx} are not interior-disjoint across it",
            )
        ri, rj = find(i), find(j)
        if ri == rj:
            raise StripcutError("NOT_A_TREE", "gluing edges contain a cycle")
        parent[ri] = rj
    roots = {find(i) for i in range(m)}
    if len(roots) != 1:
        raise StripcutError("NOT_A_TREE", "gluing graph is not connected")
    # glued segments sharing a triangle side must be interior-disjoint
    for (t, k), segs in per_edge_segments.items():
        for p in range(len(segs)):
            for q in range(p + 1, len(segs)):
                if _open_segments_overlap(segs[p], segs[q]):
                    raise StripcutError(
                        "BAD_SHARED_SEGMENT",
                        f"overlapping glued segments on triangle {t} side {k}",
                    )


def _side_sign(tri, a: Point, b: Point) -> int:
    for v in tri:
        s = orient(a, b, v)
        if s != 0:
            return s
    return 0


def _open_segments_overlap(s1: Tuple[Point, Point], s2: Tuple[Point, Point]) -> bool:
    """True if two collinear segments share more than a point."""
    key = lambda p: (p[0], p[1])
    a1, b1 = sorted(s1, key=key)
    a2, b2 = sorted(s2, key=key)
    lo = max(a1, a2, key=key)
    hi = min(b1, b2, key=key)
    return key(lo) < key(hi)


# ---------------------------------------------------------------------------
# Boundary tracing for gluing models


class _Piece:
    __slots__ = ("tri", "side", "start", "end", "partner", "boundary_id")

    def __init__(self, tri, side, start, end):
        self.tri = tri
        self.side = side
        self.start = start
        self.end = end
        self.partner = None  # (tri, side, index) of the glued twin, or None
        self.boundary_id = None

    def __repr__(self):
        tag = "glued" if self.partner else "bdry"
        return f"Piece(T{self.tri}.s{self.side} {self.start}->{self.end} {tag})"


def _trace_boundary(model: GluingModel):
    """Subdivide triangle sides at glue endpoints and walk the boundary cycle."""
    tris = model.triangles
    cuts: Dict[Tuple[int, int], set] = {}
    for i, j, (a, b) in model.tree_edges:
        for t in (i, j):
            k = _tri_edge_containing(tris[t], a, b)
            cuts.setdefault((t, k), set()).update([a, b])
    pieces: Dict[Tuple[int, int], List[_Piece]] = {}
    for t in range(len(tris)):
        for k in range(3):
            u, w = tris[t][k], tris[t][(k + 1) % 3]
            pts = [u] + sorted(
                cuts.get((t, k), ()) - {u, w},
                key=lambda p: ((p[0] - u[0]) ** 2 + (p[1] - u[1]) ** 2),
            ) + [w]
            pieces[(t, k)] = [_Piece(t, k, pts[i], pts[i + 1]) for i in range(len(pts) - 1)]

    def piece_covering(t, k, a, b):
        for idx, pc in enumerate(pieces[(t, k)]):
            if {pc.start, pc.end} == {a, b}:
                return idx
        raise StripcutError("BAD_SHARED_SEGMENT", "glued segment does not align with subdivision")

    for i, j, (a, b) in model.tree_edges:
        ki = _tri_edge_containing(tris[i], a, b)
        kj = _tri_edge_containing(tris[j], a, b)
        pi = piece_covering(i, ki, a, b)
        pj = piece_covering(j, kj, a, b)
        pieces[(i, ki)][pi].partner = (j, kj, pj)
        pieces[(j, kj)][pj].partner = (i, ki, pi)

    def successor(pc: _Piece) -> _Piece:
        # Rotate around p = pc.end through the interior fan (state: arrived at
        # p along side k of triangle t, CCW) until an unglued piece leaves p.
        t, k, p = pc.tri, pc.side, pc.end
        for _ in range(4 * sum(len(v) for v in pieces.values()) + 4):
            if tris[t][(k + 1) % 3] == p:
                k = (k + 1) % 3
                cand = pieces[(t, k)][0]
            else:
                cand = next(c for c in pieces[(t, k)] if c.start == p)
            if cand.start != p:
                raise StripcutError("GLUING_INCONSISTENT", "boundary orientation broken")
            if cand.partner is None:
                return cand
            # cross the glued piece; CCW sides of interior-disjoint triangles
            # traverse the shared segment in opposite directions, so the twin
            # ends at p and the fan continues inside the partner triangle
            t2, k2, i2 = cand.partner
            twin = pieces[(t2, k2)][i2]
            if twin.end != p:
                raise StripcutError("GLUING_INCONSISTENT", "glue endpoint mismatch")
            t, k = t2, k2
        raise StripcutError("GLUING_INCONSISTENT", "boundary walk does not close")

    all_pieces = [pc for lst in pieces.values() for pc in lst]
    start = next((pc for pc in all_pieces if pc.partner is None), None)
    if start is None:
        raise StripcutError("GLUING_INCONSISTENT", "surface has no boundary")
    chain = [start]
    cur = start
    nb = sum(1 for pc in all_pieces if pc.partner is None)
    for _ in range(nb):
        cur = successor(cur)
        if cur is start:
            break
        chain.append(cur)
    if len(chain) != nb or successor(chain[-1]) is not start:
        raise StripcutError("GLUING_INCONSISTENT", "boundary is not a single cycle")
    for idx, pc in enumerate(chain):
        pc.boundary_id = idx
    return Boundary([(pc.start, pc.end) for pc in chain]), chain, pieces


# ---------------------------------------------------------------------------
# Cut descriptors and codewords


@dataclass(frozen=True)
class CutDescriptor:
    top_edge: int
    bottom_edge: int
    x: EpsCoord

    def __repr__(self):
        return f"Cut(top={self.top_edge}, bottom={self.bottom_edge}, x={self.x})"


@dataclass(frozen=True)
class RunRecord:
    first: CutDescriptor
    count: int
    spacing: Fraction = Fraction(1)


@dataclass(frozen=True)
class LiteralRecord:
    descriptor: CutDescriptor


@dataclass(frozen=True)
class BridgeCutRecord:
    node_id: int
    side: str  # "low" | "high" | "inner"
    x: EpsCoord
    top_edge: int
    bottom_edge: int


CodewordRecord = Union[RunRecord, LiteralRecord, BridgeCutRecord]


@dataclass
class Codeword:
    records: List[CodewordRecord] = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


# ---------------------------------------------------------------------------
# Parsing and serialization


def _parse_eps_coord(token: str) -> EpsCoord:
    eps = 0
    if token.endswith("+eps"):
        eps, token = 1, token[:-4]
    elif token.endswith("-eps"):
        eps, token = -1, token[:-4]
    try:
        return EpsCoord(rational(token), eps)
    except ValueError as exc:
        raise format_error("MALFORMED_LINE", str(exc)) from exc


def _format_eps_coord(x: EpsCoord) -> str:
    suffix = {0: "", 1: "+eps", -1: "-eps"}[x.eps]
    return format_rational(x.base) + suffix


def parse_polygon(text: str) -> Polygon:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise format_error("MALFORMED_LINE", "empty polygon file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "polygon":
        raise format_error("MALFORMED_LINE", f"bad header {lines[0]!r}")
    cls = head[1]
    try:
        n = int(head[2])
    except ValueError:
        raise format_error("MALFORMED_LINE", f"bad vertex count {head[2]!r}")
    if n < 3:
        raise StripcutError("TOO_FEW_VERTICES", f"header declares n={n}")
    if len(lines) - 1 != n:
        raise format_error("MALFORMED_LINE", f"expected {n} vertex lines, found {len(lines) - 1}")
    verts: List[Point] = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise format_error("MALFORMED_LINE", f"bad vertex line {ln!r}")
        try:
            verts.append((rational(parts[0]), rational(parts[1])))
        except ValueError as exc:
            raise format_error("MALFORMED_LINE", str(exc)) from exc
    return Polygon(verts, cls)


def serialize_polygon(poly: Polygon) -> str:
    lines = [f"polygon {poly.declared_class} {poly.n}"]
    for x, y in poly.vertices:
        lines.append(f"{format_rational(x)} {format_rational(y)}")
    return "\n".join(lines) + "\n"


def parse_gluing(text: str) -> GluingModel:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise format_error("MALFORMED_LINE", "empty gluing file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "gluing":
        raise format_error("MALFORMED_LINE", f"bad header {lines[0]!r}")
    try:
        m = int(head[1])
    except ValueError:
        raise format_error("MALFORMED_LINE", f"bad triangle count {head[1]!r}")
    if len(lines) != 1 + m + max(0, m - 1):
        raise format_error(
            "MALFORMED_LINE", f"expected {m} triangle and {m - 1} edge lines"
        )
    tris = []
    for ln in lines[1 : 1 + m]:
        parts = ln.split()
        if len(parts) != 6:
            raise format_error("MALFORMED_LINE", f"bad triangle line {ln!r}")
        c = [rational(p) for p in parts]
        tris.append(((c[0], c[1]), (c[2], c[3]), (c[4], c[5])))
    edges = []
    for ln in lines[1 + m :]:
        parts = ln.split()
        if len(parts) != 7 or parts[0] != "edge":
            raise format_error("MALFORMED_LINE", f"bad edge line {ln!r}")
        i, j = int(parts[1]), int(parts[2])
        c = [rational(p) for p in parts[3:]]
        edges.append((i, j, ((c[0], c[1]), (c[2], c[3]))))
    return GluingModel(tris, edges)


def serialize_gluing(model: GluingModel) -> str:
    lines = [f"gluing {len(model.triangles)}"]
    for t in model.triangles:
        lines.append(" ".join(format_rational(c) for p in t for c in p))
    for i, j, (a, b) in model.tree_edges:
        coords = " ".join(format_rational(c) for p in (a, b) for c in p)
        lines.append(f"edge {i} {j} {coords}")
    return "\n".join(lines) + "\n"


def parse_region(text: str) -> Union[Polygon, GluingModel]:
    stripped = text.lstrip()
    if stripped.startswith("gluing"):
        return parse_gluing(text)
    return parse_polygon(text)


def parse_codeword(text: str) -> Codeword:
    records: List[CodewordRecord] = []
    for raw in text.splitlines():
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        kind = parts[0]
        try:
            if kind == "run" and len(parts) == 5:
                records.append(
                    RunRecord(
                        CutDescriptor(int(parts[1]), int(parts[2]), _parse_eps_coord(parts[3])),
                        int(parts[4]),
                    )
                )
            elif kind == "lit" and len(parts) == 4:
                records.append(
                    LiteralRecord(
                        CutDescriptor(int(parts[1]), int(parts[2]), _parse_eps_coord(parts[3]))
                    )
                )
            elif kind == "bridge" and len(parts) == 6:
                records.append(
                    BridgeCutRecord(
                        int(parts[1]), parts[2], _parse_eps_coord(parts[3]),
                        int(parts[4]), int(parts[5]),
                    )
                )
            else:
                raise format_error("MALFORMED_LINE", f"bad codeword line {ln!r}")
        except ValueError as exc:
            raise format_error("MALFORMED_LINE", f"bad codeword line {ln!r}") from exc
    return Codeword(records)


def serialize_codeword(cw: Codeword) -> str:
    lines = []
    for rec in cw.records:
        if isinstance(rec, RunRecord):
            d = rec.first
            lines.append(
                f"run {d.top_edge} {d.bottom_edge} {_format_eps_coord(d.x)} {rec.count}"
            )
        elif isinstance(rec, LiteralRecord):
            d = rec.descriptor
            lines.append(f"lit {d.top_edge} {d.bottom_edge} {_format_eps_coord(d.x)}")
        else:
            lines.append(
                f"bridge {rec.node_id} {rec.side} {_format_eps_coord(rec.x)} "
                f"{rec.top_edge} {rec.bottom_edge}"
            )
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Codeword decoding


def pick_eps_value(region, cw: Codeword) -> Fraction:
    """A concrete positive value for eps, below half the smallest positive gap
    between base coordinates occurring in the codeword and the region."""
    bases = set()
    if isinstance(region, Polygon):
        bases.update(p[0] for p in region.vertices)
    else:
        bases.update(p[0] for t in region.triangles for p in t)
    for rec in cw.records:
        if isinstance(rec, RunRecord):
            for j in range(rec.count):
                bases.add(rec.first.x.base + j * rec.spacing)
        elif isinstance(rec, LiteralRecord):
            bases.add(rec.descriptor.x.base)
        else:
            bases.add(rec.x.base)
    ordered = sorted(bases)
    gaps = [b - a for a, b in zip(ordered, ordered[1:]) if b > a]
    gap = min(gaps) if gaps else Fraction(1)
    return gap / 4


def _materialize(x: EpsCoord, eps_value: Fraction) -> Fraction:
    return x.base + x.eps * eps_value


def decode_codeword(region, cw: Codeword) -> List[CutDescriptor]:
    """Expand a codeword into explicit cut descriptors with concrete
    x-coordinates (any eps offsets replaced by a sufficiently small rational).
    """
    boundary = region.boundary()
    eps_value = pick_eps_value(region, cw)
    out: List[CutDescriptor] = []
    for rec in cw.records:
        if isinstance(rec, LiteralRecord):
            d = rec.descriptor
            out.append(_concrete_descriptor(boundary, d, eps_value))
        elif isinstance(rec, BridgeCutRecord):
            d = CutDescriptor(rec.top_edge, rec.bottom_edge, rec.x)
            out.append(_concrete_descriptor(boundary, d, eps_value))
        else:
            top, bottom = rec.first.top_edge, rec.first.bottom_edge
            for j in range(rec.count):
                x = _materialize(rec.first.x, eps_value) + j * rec.spacing
                top = boundary.walk_right(top, x)
                bottom = boundary.walk_right(bottom, x)
                _check_span(boundary, top, x)
                _check_span(boundary, bottom, x)
                out.append(CutDescriptor(top, bottom, EpsCoord(x)))
    return out


def _concrete_descriptor(boundary, d: CutDescriptor, eps_value: Fraction) -> CutDescriptor:
    x = _materialize(d.x, eps_value)
    _check_span(boundary, d.top_edge, x)
    _check_span(boundary, d.bottom_edge, x)
    return CutDescriptor(d.top_edge, d.bottom_edge, EpsCoord(x))


def _check_span(boundary, edge_id: int, x: Fraction) -> None:
    if not (0 <= edge_id < len(boundary)):
        raise StripcutError("CORRUPT_CODEWORD", f"edge id {edge_id} out of range")
    lo, hi = boundary.x_span(edge_id)
    if not (lo <= x <= hi):
        raise StripcutError(
            "CORRUPT_CODEWORD", f"cut x={x} outside span of edge {edge_id}"
        )

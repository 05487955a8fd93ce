"""Vertical trapezoidal decomposition of simple polygons and gluing models,
the dual tree, and its refinement into a rooted binary tree of subproblems.

Simple polygons are decomposed by an exact left-to-right plane sweep whose
active structure is a treap ordered by y at the sweep line.  Gluing models
are decomposed by shooting vertical rays from every vertex (triangle corners
and glued-segment endpoints) through the glued surface, so rays stay on
their own sheet.

Cells are trapezoids with vertical sides; interfaces are the vertical
openings between adjacent cells.  Interfaces sharing one maximal vertical
chord of the region are grouped; the chord carries the boundary-edge pair
used by cut descriptors.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from stripcut.errors import StripcutError
from stripcut.geometry import Point, on_segment, orient, y_on_segment_at
from stripcut.polygon_model import Boundary, GluingModel, Polygon

LEFT = -1
RIGHT = 1


class Cell:
    __slots__ = ("id", "a", "b", "top_edge", "bottom_edge", "ifaces_left", "ifaces_right")

    def __init__(self, id: int, a: Fraction, b: Fraction, top_edge: int, bottom_edge: int):
        self.id = id
        self.a = a
        self.b = b
        self.top_edge = top_edge
        self.bottom_edge = bottom_edge
        self.ifaces_left: List[int] = []
        self.ifaces_right: List[int] = []

    def __repr__(self):
        return (
            f"Cell({self.id}, x=[{self.a},{self.b}], top=e{self.top_edge},"
            f" bottom=e{self.bottom_edge})"
        )


class Interface:
    __slots__ = ("id", "x", "y0", "y1", "left_cell", "right_cell", "chord_id")

    def __init__(self, id, x, y0, y1, left_cell, right_cell, chord_id):
        self.id = id
        self.x = x
        self.y0 = y0
        self.y1 = y1
        self.left_cell = left_cell
        self.right_cell = right_cell
        self.chord_id = chord_id

    def __repr__(self):
        return f"Iface({self.id}, x={self.x}, y=[{self.y0},{self.y1}], {self.left_cell}|{self.right_cell})"


class Chord:
    """A maximal vertical cut of the region: the unit a reported bridge cut
    refers to.  One chord may span several interfaces on overlapping sheets
    of a gluing model; for polygons chords and interfaces coincide."""

    __slots__ = ("id", "x", "y0", "y1", "top_edge", "bottom_edge", "interfaces")

    def __init__(self, id, x, y0, y1, top_edge, bottom_edge):
        self.id = id
        self.x = x
        self.y0 = y0
        self.y1 = y1
        self.top_edge = top_edge
        self.bottom_edge = bottom_edge
        self.interfaces: List[int] = []


class Decomposition:
    def __init__(self, region, boundary: Boundary):
        self.region = region
        self.boundary = boundary
        self.cells: List[Cell] = []
        self.interfaces: List[Interface] = []
        self.chords: List[Chord] = []

    def new_cell(self, a, b, top_edge, bottom_edge) -> Cell:
        c = Cell(len(self.cells), a, b, top_edge, bottom_edge)
        self.cells.append(c)
        return c

    def new_chord(self, x, y0, y1, top_edge, bottom_edge) -> Chord:
        ch = Chord(len(self.chords), x, y0, y1, top_edge, bottom_edge)
        self.chords.append(ch)
        return ch

    def new_interface(self, x, y0, y1, left_cell, right_cell, chord_id) -> Interface:
        if left_cell == right_cell:
            raise StripcutError("NOT_A_TREE", "interface joins a cell to itself")
        iface = Interface(len(self.interfaces), x, y0, y1, left_cell, right_cell, chord_id)
        self.interfaces.append(iface)
        self.chords[chord_id].interfaces.append(iface.id)
        self.cells[left_cell].ifaces_right.append(iface.id)
        self.cells[right_cell].ifaces_left.append(iface.id)
        return iface

    def check_dual_tree(self) -> None:
        n = len(self.cells)
        if len(self.interfaces) != n - 1:
            raise StripcutError(
                "NOT_A_TREE",
                f"{len(self.interfaces)} interfaces for {n} cells",
            )
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for iface in self.interfaces:
            a, b = find(iface.left_cell), find(iface.right_cell)
            if a == b:
                raise StripcutError("NOT_A_TREE", "dual graph has a cycle")
            parent[a] = b

    def cell_y_span(self, cell: Cell, x: Fraction) -> Tuple[Fraction, Fraction]:
        return (
            self.boundary.y_at(cell.bottom_edge, x),
            self.boundary.y_at(cell.top_edge, x),
        )

    def total_area2(self) -> Fraction:
        total = Fraction(0)
        for c in self.cells:
            yb0, yt0 = self.cell_y_span(c, c.a)
            yb1, yt1 = self.cell_y_span(c, c.b)
            total += ((yt0 - yb0) + (yt1 - yb1)) * (c.b - c.a)
        return total


# ---------------------------------------------------------------------------
# Treap over active edges, ordered by y at the current sweep column


class _Treap:
    """Active-edge structure ordered by y at the current sweep column.

    y values are evaluated lazily per column (edges never cross while
    co-active, so the order is consistent between updates).  Ties occur only
    among edges meeting at a column vertex: starting edges order by ascending
    slope, ending edges by descending slope.
    """

    __slots__ = ("root", "rng", "y_of", "slope_of", "starting", "_x", "_ycache")

    class Node:
        __slots__ = ("edge", "prio", "left", "right", "size")

        def __init__(self, edge, prio):
            self.edge = edge
            self.prio = prio
            self.left = None
            self.right = None
            self.size = 1

    def __init__(self, y_of, slope_of, seed: int = 0x5EED):
        self.root = None
        self.rng = random.Random(seed)
        self.y_of = y_of
        self.slope_of = slope_of
        self.starting = set()
        self._x = None
        self._ycache: Dict[int, Fraction] = {}

    def set_column(self, x: Fraction) -> None:
        self._x = x
        self._ycache = {}

    def _y(self, e: int) -> Fraction:
        y = self._ycache.get(e)
        if y is None:
            y = self.y_of(e, self._x)
            self._ycache[e] = y
        return y

    @staticmethod
    def _size(node):
        return node.size if node else 0

    def _update(self, node):
        node.size = 1 + self._size(node.left) + self._size(node.right)

    def _cmp_edges(self, e: int, f: int) -> int:
        if e == f:
            return 0
        ye, yf = self._y(e), self._y(f)
        if ye != yf:
            return -1 if ye < yf else 1
        se, sf = self.slope_of(e), self.slope_of(f)
        if (e in self.starting) and (f in self.starting):
            if se != sf:
                return -1 if se < sf else 1
        else:
            if se != sf:
                return -1 if se > sf else 1
        return -1 if e < f else 1

    def insert(self, edge: int) -> None:
        node = self.Node(edge, self.rng.random())

        def _ins(root):
            if root is None:
                return node
            if self._cmp_edges(edge, root.edge) < 0:
                root.left = _ins(root.left)
                if root.left.prio > root.prio:
                    root = self._rot_right(root)
            else:
                root.right = _ins(root.right)
                if root.right.prio > root.prio:
                    root = self._rot_left(root)
            self._update(root)
            return root

        self.root = _ins(self.root)

    def remove(self, edge: int) -> None:
        def _rem(root):
            if root is None:
                raise KeyError(edge)
            c = self._cmp_edges(edge, root.edge)
            if c == 0:
                if root.left is None:
                    return root.right
                if root.right is None:
                    return root.left
                if root.left.prio > root.right.prio:
                    root = self._rot_right(root)
                    root.right = _rem(root.right)
                else:
                    root = self._rot_left(root)
                    root.left = _rem(root.left)
            elif c < 0:
                root.left = _rem(root.left)
            else:
                root.right = _rem(root.right)
            self._update(root)
            return root

        self.root = _rem(self.root)

    def _rot_right(self, node):
        l = node.left
        node.left = l.right
        l.right = node
        self._update(node)
        self._update(l)
        return l

    def _rot_left(self, node):
        r = node.right
        node.right = r.left
        r.left = node
        self._update(node)
        self._update(r)
        return r

    def rank_of_edge(self, edge: int) -> int:
        node = self.root
        rank = 0
        while node is not None:
            c = self._cmp_edges(edge, node.edge)
            if c == 0:
                return rank + self._size(node.left)
            if c < 0:
                node = node.left
            else:
                rank += self._size(node.left) + 1
                node = node.right
        raise KeyError(edge)

    def rank_of_y(self, y: Fraction) -> int:
        """Number of active edges strictly below y (no active edge may pass
        through the probe point)."""
        node = self.root
        rank = 0
        while node is not None:
            ye = self._y(node.edge)
            if ye == y:
                raise StripcutError("SIMPLICITY_VIOLATION", "probe point on an active edge")
            if ye < y:
                rank += self._size(node.left) + 1
                node = node.right
            else:
                node = node.left
        return rank

    def kth(self, k: int) -> int:
        node = self.root
        while node is not None:
            ls = self._size(node.left)
            if k < ls:
                node = node.left
            elif k == ls:
                return node.edge
            else:
                k -= ls + 1
                node = node.right
        raise IndexError(k)

    def __len__(self):
        return self._size(self.root)


# ---------------------------------------------------------------------------
# Simple-polygon sweep


def _edge_slope(pts, i, n) -> Fraction:
    a, b = pts[i], pts[(i + 1) % n]
    return (b[1] - a[1]) / (b[0] - a[0])


def trapezoidalize_polygon(poly: Polygon) -> Decomposition:
    pts = poly.vertices
    n = len(pts)
    boundary = poly.boundary()
    dec = Decomposition(poly, boundary)

    def lexlt(p, q):
        return p[0] < q[0] or (p[0] == q[0] and p[1] < q[1])

    left_pt = [pts[i] if lexlt(pts[i], pts[(i + 1) % n]) else pts[(i + 1) % n] for i in range(n)]
    right_pt = [pts[(i + 1) % n] if lexlt(pts[i], pts[(i + 1) % n]) else pts[i] for i in range(n)]
    vertical = [pts[i][0] == pts[(i + 1) % n][0] for i in range(n)]

    columns: Dict[Fraction, List[int]] = {}
    for v in range(n):
        columns.setdefault(pts[v][0], []).append(v)

    slopes: Dict[int, Fraction] = {}

    def slope_of(e: int) -> Fraction:
        s = slopes.get(e)
        if s is None:
            s = _edge_slope(pts, e, n)
            slopes[e] = s
        return s

    def y_at_edge(e: int, x: Fraction) -> Fraction:
        return boundary.y_at(e, x)

    treap = _Treap(y_at_edge, slope_of)
    open_cells: Dict[Tuple[int, int], Cell] = {}  # (bottom_edge, top_edge) -> cell

    for x in sorted(columns):
        treap.set_column(x)
        col = columns[x]
        col_ys = sorted(pts[v][1] for v in col)
        ending: List[int] = []
        starting: List[int] = []
        verticals: List[int] = []
        for v in col:
            for e in (v, (v - 1) % n):
                if vertical[e]:
                    if e not in verticals:
                        verticals.append(e)
                elif right_pt[e][0] == x:
                    if e not in ending:
                        ending.append(e)
                elif left_pt[e][0] == x:
                    if e not in starting:
                        starting.append(e)

        treap.starting = set()

        # vertices that may split a cell from strict inside: none of their
        # incident edges is active before the update
        probe_vertices = [
            v
            for v in col
            if all(vertical[e] or left_pt[e][0] == x for e in (v, (v - 1) % n))
        ]

        # collect affected cells before updating the structure
        affected: Dict[Tuple[int, int], Cell] = {}

        def cell_pair_at_rank(r: int) -> Optional[Tuple[int, int]]:
            if r % 2 == 0:
                return None
            lo = treap.kth(r - 1)
            hi = treap.kth(r)
            return (lo, hi)

        for e in ending:
            r = treap.rank_of_edge(e)
            if r % 2 == 0:
                lo, hi = e, treap.kth(r + 1)
            else:
                lo, hi = treap.kth(r - 1), e
            pair = (lo, hi)
            affected[pair] = open_cells[pair]
        for v in probe_vertices:
            r = treap.rank_of_y(pts[v][1])
            pair = cell_pair_at_rank(r)
            if pair is not None:
                affected[pair] = open_cells[pair]

        closed_bands = []
        for (lo, hi), cell in affected.items():
            del open_cells[(lo, hi)]
            cell.b = x
            closed_bands.append((y_at_edge(lo, x), y_at_edge(hi, x), cell))
        closed_bands.sort(key=lambda t: t[0])

        # structural update
        dirty_ys: List[Fraction] = [pts[v][1] for v in col]
        for e in ending:
            treap.remove(e)
        treap.starting = set(starting)
        for e in starting:
            treap.insert(e)

        # candidate reopening sites
        cand_ranks = set()
        for e in starting:
            r = treap.rank_of_edge(e)
            cand_ranks.update({r - 1, r, r + 1})
        for y in dirty_ys:
            try:
                r = treap.rank_of_y(y)
            except StripcutError:
                # y now lies on a freshly inserted edge endpoint; neighbors
                # are already covered through that edge
                continue
            cand_ranks.update({r - 1, r})

        opened_bands = []
        m = len(treap)
        seen_pairs = set()
        for r in sorted(cand_ranks):
            if r < 0 or r >= m:
                continue
            t = r if r % 2 == 0 else r - 1
            if t + 1 >= m or t in seen_pairs:
                continue
            seen_pairs.add(t)
            lo, hi = treap.kth(t), treap.kth(t + 1)
            if (lo, hi) in open_cells:
                continue
            cell = dec.new_cell(x, None, hi, lo)
            open_cells[(lo, hi)] = cell
            opened_bands.append((y_at_edge(lo, x), y_at_edge(hi, x), cell))
        opened_bands.sort(key=lambda t: t[0])

        # interfaces between closed and opened cells, blocked by vertical
        # boundary edges and split at column vertices
        blockers: List[Tuple[Fraction, Fraction]] = []
        for e in verticals:
            ys = sorted((pts[e][1], pts[(e + 1) % n][1]))
            blockers.append((ys[0], ys[1]))
        for y in col_ys:
            blockers.append((y, y))
        blockers.sort()
        merged_blockers: List[List[Fraction]] = []
        for b0, b1 in blockers:
            if merged_blockers and b0 <= merged_blockers[-1][1]:
                merged_blockers[-1][1] = max(merged_blockers[-1][1], b1)
            else:
                merged_blockers.append([b0, b1])

        for c0, c1, ccell in closed_bands:
            for o0, o1, ocell in opened_bands:
                lo_y = max(c0, o0)
                hi_y = min(c1, o1)
                if lo_y >= hi_y:
                    continue
                pieces = _subtract_blockers(lo_y, hi_y, merged_blockers)
                for p0, p1 in pieces:
                    top_e = _endpoint_edge(poly, boundary, x, p1, (ccell.top_edge, ocell.top_edge), True, col, c1, o1)
                    bot_e = _endpoint_edge(poly, boundary, x, p0, (ccell.bottom_edge, ocell.bottom_edge), False, col, c0, o0)
                    chord = dec.new_chord(x, p0, p1, top_e, bot_e)
                    dec.new_interface(x, p0, p1, ccell.id, ocell.id, chord.id)

    if open_cells:
        raise StripcutError("SIMPLICITY_VIOLATION", "sweep left unclosed cells")
    dec.check_dual_tree()
    return dec


def _subtract_blockers(lo, hi, blockers):
    pieces = []
    cur = lo
    for b0, b1 in blockers:
        if b1 <= cur:
            continue
        if b0 >= hi:
            break
        if b0 > cur:
            pieces.append((cur, b0))
        cur = max(cur, b1)
        if cur >= hi:
            break
    if cur < hi:
        pieces.append((cur, hi))
    return [(p0, p1) for p0, p1 in pieces if p0 < p1]


def left_incident_edge(boundary: Boundary, candidates: Sequence[int], point: Point) -> int:
    """Deterministic descriptor edge for a cut endpoint lying at a vertex:
    prefer the incident edge extending to smaller x, then the smaller id."""
    best = None
    for eid in candidates:
        a, b = boundary.points(eid)
        other = b if a == point else a
        key = (other[0] >= point[0], eid)
        if best is None or key < best[0]:
            best = (key, eid)
    return best[1]


def _endpoint_edge(poly, boundary, x, y, edge_candidates, is_top, col_vertices, c_bound, o_bound):
    pts = poly.vertices
    n = len(pts)
    for v in col_vertices:
        if pts[v] == (x, y):
            return left_incident_edge(boundary, [v, (v - 1) % n], (x, y))
    ccell_edge, ocell_edge = edge_candidates
    if y == c_bound:
        return ccell_edge
    return ocell_edge


# ---------------------------------------------------------------------------
# Gluing-model decomposition by per-sheet ray shooting


def trapezoidalize_gluing(model: GluingModel) -> Decomposition:
    boundary = model.boundary()
    chain = model.boundary_pieces()
    side_pieces = model.side_pieces()
    tris = model.triangles
    dec = Decomposition(model, boundary)

    # ray sources: triangle corners plus glued-segment endpoints
    sources = set()
    for t in range(len(tris)):
        for c in range(3):
            sources.add((tris[t][c], t))
    for i, j, (a, b) in model.tree_edges:
        for t in (i, j):
            sources.add((a, t))
            sources.add((b, t))

    rays = []  # (x, origin point, origin tri, segs [(tri, y0, y1)], stop piece, dy)
    cut_xs: Dict[int, set] = {t: set() for t in range(len(tris))}
    for p, t in sorted(sources, key=lambda s: (s[0][0], s[0][1], s[1])):
        for dy in (1, -1):
            if not _ray_enters(tris[t], p, dy):
                continue
            segs, stop_piece, stop_y = _shoot_ray(model, side_pieces, p, t, dy)
            rays.append((p[0], p, t, segs, stop_piece, dy, stop_y))
            for st, _, _ in segs:
                cut_xs[st].add(p[0])

    # per-triangle slabs
    atoms: List[Tuple[int, Fraction, Fraction]] = []  # (tri, a, b)
    atom_ids: Dict[int, List[Tuple[Fraction, Fraction, int]]] = {}
    atom_sides: List[Tuple[Tuple[int, int], Tuple[int, int]]] = []  # (top (t,k), bottom (t,k))
    for t in range(len(tris)):
        xs = sorted({p[0] for p in tris[t]} | cut_xs[t])
        slabs = []
        for x0, x1 in zip(xs, xs[1:]):
            if x0 == x1:
                continue
            mx = (x0 + x1) / 2
            crossing = []
            for k in range(3):
                u, w = tris[t][k], tris[t][(k + 1) % 3]
                if u[0] == w[0]:
                    continue
                lo, hi = (u[0], w[0]) if u[0] < w[0] else (w[0], u[0])
                if lo <= mx <= hi:
                    crossing.append((y_on_segment_at(u, w, mx), k))
            if len(crossing) != 2:
                raise StripcutError("GLUING_INCONSISTENT", "bad triangle slab")
            crossing.sort()
            aid = len(atoms)
            atoms.append((t, x0, x1))
            atom_sides.append(((t, crossing[1][1]), (t, crossing[0][1])))
            slabs.append((x0, x1, aid))
        atom_ids[t] = slabs

    # union-find over atoms, merging across non-vertical glued segments
    parent = list(range(len(atoms)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    top_of = {i: atom_sides[i][0] for i in range(len(atoms))}
    bottom_of = {i: atom_sides[i][1] for i in range(len(atoms))}

    vertical_glues = []
    for i, j, (a, b) in model.tree_edges:
        if a[0] == b[0]:
            vertical_glues.append((i, j, (a, b)))
            continue
        g0, g1 = (a[0], b[0]) if a[0] < b[0] else (b[0], a[0])
        si = [s for s in atom_ids[i] if s[0] >= g0 and s[1] <= g1]
        sj = [s for s in atom_ids[j] if s[0] >= g0 and s[1] <= g1]
        if [s[:2] for s in si] != [s[:2] for s in sj]:
            raise StripcutError("GLUING_INCONSISTENT", "glued slabs misaligned")
        ki = _tri_side_of(tris[i], a, b)
        i_above = _interior_above(tris[i], ki)
        for (x0, x1, ai), (_, _, aj) in zip(si, sj):
            ra, rb = find(ai), find(aj)
            if ra == rb:
                raise StripcutError("GLUING_INCONSISTENT", "glued surface is not a disk")
            upper, lower = (ra, rb) if i_above else (rb, ra)
            parent[lower] = upper
            bottom_of[upper] = bottom_of[lower]

    # final cells
    cell_of_root: Dict[int, Cell] = {}
    for aid, (t, x0, x1) in enumerate(atoms):
        r = find(aid)
        if r in cell_of_root:
            continue
        rt, rx0, rx1 = atoms[r]
        top_e = _side_boundary_edge(side_pieces, top_of[r], rx0, rx1)
        bot_e = _side_boundary_edge(side_pieces, bottom_of[r], rx0, rx1)
        cell_of_root[r] = dec.new_cell(rx0, rx1, top_e, bot_e)

    def cell_of_atom(aid: int) -> Cell:
        return cell_of_root[find(aid)]

    def atom_at(t: int, x: Fraction, side: int) -> int:
        # atom of triangle t with slab ending (side<0) or starting (side>0) at x
        for x0, x1, aid in atom_ids[t]:
            if side < 0 and x1 == x:
                return aid
            if side > 0 and x0 == x:
                return aid
        raise StripcutError("GLUING_INCONSISTENT", f"no slab of triangle {t} at x={x}")

    # interfaces from rays
    for x, p, t0, segs, stop_piece, dy, stop_y in rays:
        y_origin, y_stop = p[1], stop_y
        y0, y1 = (y_origin, y_stop) if y_origin < y_stop else (y_stop, y_origin)
        top_pt = (x, y1)
        bot_pt = (x, y0)
        if dy > 0:
            top_edge = stop_piece.boundary_id
            bot_edge = _vertex_edge(chain, tris, p, t0)
        else:
            top_edge = _vertex_edge(chain, tris, p, t0)
            bot_edge = stop_piece.boundary_id
        chord = dec.new_chord(x, y0, y1, top_edge, bot_edge)
        for st, sy0, sy1 in segs:
            left_atom = atom_at(st, x, -1)
            right_atom = atom_at(st, x, +1)
            dec.new_interface(
                x, sy0, sy1, cell_of_atom(left_atom).id, cell_of_atom(right_atom).id, chord.id
            )

    # interfaces from vertical glued segments
    for i, j, (a, b) in vertical_glues:
        x = a[0]
        y0, y1 = (a[1], b[1]) if a[1] < b[1] else (b[1], a[1])
        left_tri, right_tri = (i, j) if _tri_is_left_of(tris[i], x) else (j, i)
        la = atom_at(left_tri, x, -1)
        ra = atom_at(right_tri, x, +1)
        top_edge = _vertex_edge(chain, tris, (x, y1), left_tri)
        bot_edge = _vertex_edge(chain, tris, (x, y0), left_tri)
        chord = dec.new_chord(x, y0, y1, top_edge, bot_edge)
        dec.new_interface(x, y0, y1, cell_of_atom(la).id, cell_of_atom(ra).id, chord.id)

    dec.check_dual_tree()
    return dec


def _tri_side_of(tri, a: Point, b: Point) -> int:
    from stripcut.polygon_model import _tri_edge_containing

    k = _tri_edge_containing(tri, a, b)
    if k is None:
        raise StripcutError("BAD_SHARED_SEGMENT", "segment not on triangle")
    return k


def _interior_above(tri, k: int) -> bool:
    u, w = tri[k], tri[(k + 1) % 3]
    return u[0] < w[0]  # interior is left of the CCW side


def _tri_is_left_of(tri, x: Fraction) -> bool:
    return max(p[0] for p in tri) <= x


def _ray_enters(tri, p: Point, dy: int) -> bool:
    q = (p[0], p[1] + dy)
    for c in range(3):
        if tri[c] == p:
            return (
                orient(tri[(c - 1) % 3], tri[c], q) > 0
                and orient(tri[c], tri[(c + 1) % 3], q) > 0
            )
    for k in range(3):
        u, w = tri[k], tri[(k + 1) % 3]
        if on_segment(u, w, p) and p != u and p != w:
            return orient(u, w, q) > 0
    return False


def _shoot_ray(model: GluingModel, side_pieces, p: Point, t: int, dy: int):
    tris = model.triangles
    x = p[0]
    cur_y = p[1]
    cur_t = t
    segs = []
    for _ in range(len(tris) + 1):
        exit_y = None
        exit_side = None
        for k in range(3):
            u, w = tris[cur_t][k], tris[cur_t][(k + 1) % 3]
            if u[0] == w[0]:
                continue
            lo, hi = (u[0], w[0]) if u[0] < w[0] else (w[0], u[0])
            if not (lo <= x <= hi):
                continue
            ycross = y_on_segment_at(u, w, x)
            if dy > 0 and ycross > cur_y and (exit_y is None or ycross < exit_y):
                exit_y, exit_side = ycross, k
            if dy < 0 and ycross < cur_y and (exit_y is None or ycross > exit_y):
                exit_y, exit_side = ycross, k
        if exit_y is None:
            raise StripcutError("GLUING_INCONSISTENT", "ray found no exit")
        q = (x, exit_y)
        if q in tris[cur_t]:
            raise StripcutError("DEGENERATE_RAY", f"ray through triangle corner {q}")
        lo_y, hi_y = (cur_y, exit_y) if cur_y < exit_y else (exit_y, cur_y)
        segs.append((cur_t, lo_y, hi_y))
        piece = None
        for pc in side_pieces[(cur_t, exit_side)]:
            s, e = pc.start, pc.end
            lo, hi = (s, e) if (s[0], s[1]) < (e[0], e[1]) else (e, s)
            if (lo[0], lo[1]) < (q[0], q[1]) < (hi[0], hi[1]):
                piece = pc
                break
            if q == s or q == e:
                raise StripcutError("DEGENERATE_RAY", f"ray through gluing endpoint {q}")
        if piece is None:
            raise StripcutError("GLUING_INCONSISTENT", "exit point not on any piece")
        if piece.partner is None:
            return segs, piece, exit_y
        t2, k2, i2 = piece.partner
        cur_t = t2
        cur_y = exit_y
    raise StripcutError("GLUING_INCONSISTENT", "ray did not terminate")


def _side_boundary_edge(side_pieces, side: Tuple[int, int], x0: Fraction, x1: Fraction) -> int:
    for pc in side_pieces[side]:
        lo = min(pc.start[0], pc.end[0])
        hi = max(pc.start[0], pc.end[0])
        if lo <= x0 and x1 <= hi:
            if pc.boundary_id is None:
                raise StripcutError("GLUING_INCONSISTENT", "cell side is glued")
            return pc.boundary_id
    raise StripcutError("GLUING_INCONSISTENT", "cell side has no covering piece")


def _vertex_edge(chain, tris, p: Point, prefer_tri: int) -> int:
    """Descriptor edge for a chord endpoint at a surface vertex: prefer
    pieces of the originating triangle, extending leftward, then smallest id."""
    best = None
    for pc in chain:
        if pc.start != p and pc.end != p:
            continue
        other = pc.end if pc.start == p else pc.start
        key = (pc.tri != prefer_tri, other[0] >= p[0], pc.boundary_id)
        if best is None or key < best[0]:
            best = (key, pc.boundary_id)
    if best is None:
        raise StripcutError("GLUING_INCONSISTENT", f"no boundary piece at vertex {p}")
    return best[1]


# ---------------------------------------------------------------------------
# Refinement into the rooted binary subproblem tree

TRAP = "trap"
SAME_BRIDGE = "same"
CROSS_BRIDGE = "cross"


class RNode:
    __slots__ = (
        "id",
        "kind",
        "cell",
        "children",
        "eta",
        "x_line",
        "span",
        "frontier_src",
        "frontier_end",
        "tin",
        "tout",
    )

    def __init__(self, id, kind, cell, children, eta, x_line, span, frontier_src, frontier_end):
        self.id = id
        self.kind = kind
        self.cell = cell
        self.children = children
        self.eta = eta
        self.x_line = x_line
        self.span = span
        self.frontier_src = frontier_src
        self.frontier_end = frontier_end
        self.tin = -1
        self.tout = -1

    def frontier(self) -> List[int]:
        return self.frontier_src[: self.frontier_end]

    def __repr__(self):
        return f"RNode({self.id}, {self.kind}, eta={self.eta:+d}, x={self.x_line})"


class RefinedTree:
    def __init__(self, dec: Decomposition):
        self.dec = dec
        self.nodes: List[RNode] = []
        self.root: Optional[int] = None

    def new_node(self, kind, cell, children, eta, x_line, span, fsrc, fend) -> RNode:
        node = RNode(len(self.nodes), kind, cell, children, eta, x_line, span, fsrc, fend)
        self.nodes.append(node)
        return node

    def postorder(self):
        # nodes are created children-first
        return self.nodes

    def number_subtrees(self):
        timer = 0
        stack = [(self.nodes[self.root], False)]
        while stack:
            node, done = stack.pop()
            if done:
                node.tout = timer
                continue
            node.tin = timer
            timer += 1
            stack.append((node, True))
            for c in node.children:
                stack.append((self.nodes[c], False))

    def in_subtree(self, node_id: int, ancestor_id: int) -> bool:
        a, b = self.nodes[node_id], self.nodes[ancestor_id]
        return b.tin <= a.tin < b.tout


def classify_bridge(span_v, eta_v, span_w, eta_w):
    """Combine two collinear subproblem edges: same-side spans merge, a
    cross-side pair requires proper containment and yields the difference."""
    if eta_v == eta_w:
        span = (min(span_v[0], span_w[0]), max(span_v[1], span_w[1]))
        return SAME_BRIDGE, span, eta_v
    v_in_w = span_w[0] <= span_v[0] and span_v[1] <= span_w[1] and span_v != span_w
    w_in_v = span_v[0] <= span_w[0] and span_w[1] <= span_v[1] and span_v != span_w
    if not v_in_w and not w_in_v:
        raise StripcutError(
            "STRUCTURE_VIOLATION", "cross-side bridge without proper containment"
        )
    inner, outer, eta = (
        (span_v, span_w, eta_w) if v_in_w else (span_w, span_v, eta_v)
    )
    if inner[0] > outer[0]:
        span = (outer[0], inner[0])
    else:
        span = (inner[1], outer[1])
    return CROSS_BRIDGE, span, eta


def refine(dec: Decomposition) -> RefinedTree:
    cells = dec.cells
    ifaces = dec.interfaces
    tree = RefinedTree(dec)
    if not cells:
        raise StripcutError("NOT_A_TREE", "empty decomposition")

    deg = [len(c.ifaces_left) + len(c.ifaces_right) for c in cells]
    leaves = [c for c in cells if deg[c.id] <= 1]
    root_cell = min(leaves, key=lambda c: (c.a, c.bottom_edge)).id

    # orient the dual tree
    parent_iface: List[Optional[int]] = [None] * len(cells)
    order: List[int] = []
    seen = [False] * len(cells)
    stack = [root_cell]
    seen[root_cell] = True
    while stack:
        cid = stack.pop()
        order.append(cid)
        for iid in cells[cid].ifaces_left + cells[cid].ifaces_right:
            iface = ifaces[iid]
            other = iface.right_cell if iface.left_cell == cid else iface.left_cell
            if not seen[other]:
                seen[other] = True
                parent_iface[other] = iid
                stack.append(other)
    if not all(seen):
        raise StripcutError("NOT_A_TREE", "dual graph is disconnected")

    top_node: Dict[int, int] = {}

    def build_chain(members: List[Tuple[Interface, int]], fsrc: List[int]) -> int:
        """Fold child subtrees (sorted by interface height) into a chain of
        same-side bridge nodes; returns the chain root node id."""
        cur = members[0][1]
        cur_span = (members[0][0].y0, members[0][0].y1)
        for t in range(1, len(members)):
            iface, node_id = members[t]
            kind, span, eta = classify_bridge(
                cur_span,
                tree.nodes[cur].eta,
                (iface.y0, iface.y1),
                tree.nodes[node_id].eta,
            )
            if kind != SAME_BRIDGE:
                raise StripcutError("STRUCTURE_VIOLATION", "chain bridge is not same-side")
            node = tree.new_node(
                SAME_BRIDGE,
                None,
                [cur, node_id],
                eta,
                iface.x,
                span,
                fsrc,
                t + 1,
            )
            cur = node.id
            cur_span = span
        return cur

    for cid in reversed(order):
        cell = cells[cid]
        p_if = parent_iface[cid]
        if p_if is None:
            if not cell.ifaces_right:
                parent_side = RIGHT
            elif not cell.ifaces_left:
                parent_side = LEFT
            else:
                raise StripcutError("STRUCTURE_VIOLATION", "root cell has no free side")
        else:
            parent_side = LEFT if p_if in cell.ifaces_left else RIGHT
        eta = 1 if parent_side == RIGHT else -1
        x_line = cell.b if parent_side == RIGHT else cell.a

        side_left = [ifaces[i] for i in cell.ifaces_left]
        side_right = [ifaces[i] for i in cell.ifaces_right]
        parent_list = side_right if parent_side == RIGHT else side_left
        opp_list = side_left if parent_side == RIGHT else side_right
        parent_list = sorted(parent_list, key=lambda f: f.y0)
        opp_list = sorted(opp_list, key=lambda f: f.y0)

        same_children = [f for f in parent_list if f.id != p_if]
        frontier_ids = [f.id for f in parent_list]

        children: List[int] = []
        if opp_list:
            members = [(f, top_node[_other_cell(f, cid)]) for f in opp_list]
            children = [build_chain(members, [f.id for f in opp_list])]

        yb = dec.boundary.y_at(cell.bottom_edge, x_line)
        yt = dec.boundary.y_at(cell.top_edge, x_line)
        trap = tree.new_node(
            TRAP, cell, children, eta, x_line, (yb, yt), frontier_ids, len(frontier_ids)
        )

        if same_children:
            if p_if is None:
                raise StripcutError("STRUCTURE_VIOLATION", "root cell has same-side children")
            members = [(f, top_node[_other_cell(f, cid)]) for f in same_children]
            chain_root = build_chain(members, [f.id for f in same_children])
            pf = ifaces[p_if]
            w = tree.new_node(
                CROSS_BRIDGE,
                None,
                [chain_root, trap.id],
                eta,
                x_line,
                (pf.y0, pf.y1),
                [p_if],
                1,
            )
            top_node[cid] = w.id
        else:
            top_node[cid] = trap.id

    tree.root = top_node[root_cell]
    tree.number_subtrees()
    return tree


def _other_cell(iface: Interface, cid: int) -> int:
    return iface.right_cell if iface.left_cell == cid else iface.left_cell


def trapezoidalize(region: Union[Polygon, GluingModel]) -> Decomposition:
    if isinstance(region, Polygon):
        return trapezoidalize_polygon(region)
    return trapezoidalize_gluing(region)


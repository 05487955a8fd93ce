"""Lossless cut reporting: the top-down reconstruction walk over the solved
tree, codeword assembly, and geometric validation of decoded partitions.

The dynamic program leaves deterministic cut runs at trapezoid nodes and, at
every bridge resolved by a join, the obligation to separate one child from
the cap.  Which child gets sealed depends on where the strip covering the
cap comes from, so the walk carries one interval per region piece downward,
translating it through the recorded provenance: at a merge bridge it splits
into the two contributing intervals, at a join bridge the other child
restarts from its stored surviving interval.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from stripcut.ccb_lattice import Interval
from stripcut.decomposition import (
    CROSS_BRIDGE,
    Decomposition,
    SAME_BRIDGE,
    TRAP,
    trapezoidalize,
)
from stripcut.dp_engine import Solution, interval_key, solve
from stripcut.errors import StripcutError
from stripcut.exact_coords import EpsCoord
from stripcut.polygon_model import (
    BridgeCutRecord,
    Codeword,
    CutDescriptor,
    GluingModel,
    Polygon,
    RunRecord,
    decode_codeword,
)


class WalkResult:
    def __init__(self):
        self.runs: Dict[int, Tuple[EpsCoord, int]] = {}  # node -> (first_x, count)
        self.bridge_cuts: List[BridgeCutRecord] = []
        self.node_touches = 0


def _pick_root_interval(sol: Solution):
    """The strip interval seeding the walk at the root; any interval longer
    than the cap artifact qualifies."""
    for iv in sol.root_state.antichain:
        if iv.hi.base > iv.lo.base:
            return iv
    return sol.root_state.antichain[0]


def reconstruct_walk(sol: Solution) -> WalkResult:
    tree, ann, dec = sol.tree, sol.ann, sol.dec
    nodes = tree.nodes
    out = WalkResult()
    out.runs = {nid: (run.first_x, run.count) for nid, run in ann.cut_runs.items()}

    discount = sol.opt == sol.root_state.value - 1
    root = nodes[tree.root]
    stack: List[Tuple[int, Interval]] = []
    if discount and root.id in ann.cut_runs:
        # the last strip of the root run is the cap artifact: drop the cut
        # bordering it and continue below with the anchoring child interval
        run = ann.cut_runs[root.id]
        if run.count == 1:
            del out.runs[root.id]
        elif run.eta > 0:
            out.runs[root.id] = (run.first_x, run.count - 1)
        else:
            out.runs[root.id] = (run.first_x.shifted(1), run.count - 1)
        if root.children:
            stack.append((root.children[0], run.chosen))
    else:
        stack.append((root.id, _pick_root_interval(sol)))

    seen_chords = set()
    seen_inner = set()

    def seal(node_id: int, other_id: int, bridge_node) -> None:
        other = nodes[other_id]
        if bridge_node.kind == CROSS_BRIDGE and other_id == bridge_node.children[1]:
            # the sealed child owns the interface edge: block its cell just
            # inside the line, leaving the sliver to the surviving strip
            cell = other.cell
            eps = -1 if bridge_node.x_line == cell.b else 1
            key = (cell.id, bridge_node.x_line, eps)
            if key in seen_inner:
                return
            seen_inner.add(key)
            out.bridge_cuts.append(
                BridgeCutRecord(
                    node_id,
                    "inner",
                    EpsCoord(bridge_node.x_line, eps),
                    cell.top_edge,
                    cell.bottom_edge,
                )
            )
            return
        side = "low" if other_id == bridge_node.children[0] else "high"
        for iid in other.frontier():
            chord = dec.chords[dec.interfaces[iid].chord_id]
            if chord.id in seen_chords:
                continue
            seen_chords.add(chord.id)
            out.bridge_cuts.append(
                BridgeCutRecord(
                    node_id, side, EpsCoord(chord.x, 0), chord.top_edge, chord.bottom_edge
                )
            )

    while stack:
        nid, iv = stack.pop()
        out.node_touches += 1
        node = nodes[nid]
        if node.kind == TRAP:
            if not node.children:
                continue
            run = ann.cut_runs.get(nid)
            if run is not None:
                stack.append((node.children[0], run.chosen))
                continue
            prov = ann.trap_prov.get(nid, {})
            child_iv = prov.get(interval_key(iv))
            if child_iv is None:
                raise StripcutError(
                    "INCONSISTENT_ANNOTATION",
                    f"no provenance for {iv} at trapezoid node {nid}",
                )
            stack.append((node.children[0], child_iv))
            continue
        key = interval_key(iv)
        mp = ann.meet_prov.get(nid)
        if mp is not None:
            pair = mp.get(key)
            if pair is None:
                raise StripcutError(
                    "INCONSISTENT_ANNOTATION",
                    f"no merge provenance for {iv} at bridge node {nid}",
                )
            stack.append((node.children[0], pair[0]))
            stack.append((node.children[1], pair[1]))
            continue
        # join case: the strip comes from the side its endpoint was born in
        birth = ann.items[iv.lo_item][0]
        side = 0 if tree.in_subtree(birth, node.children[0]) else 1
        other = 1 - side
        seal(nid, node.children[other], node)
        samples = ann.join_samples[nid]
        stack.append((node.children[side], iv))
        stack.append((node.children[other], samples[other]))
    return out


def encode(sol: Solution) -> Codeword:
    """Codeword for one optimal partition: a run record per cut-bearing
    trapezoid node plus the bridge cuts chosen by the reconstruction walk."""
    walk = reconstruct_walk(sol)
    records = []
    for nid in sorted(walk.runs):
        first_x, count = walk.runs[nid]
        cell = sol.tree.nodes[nid].cell
        records.append(
            RunRecord(CutDescriptor(cell.top_edge, cell.bottom_edge, first_x), count)
        )
    records.extend(walk.bridge_cuts)
    return Codeword(records)


def reconstruct(sol: Solution) -> List[CutDescriptor]:
    """Explicit descriptors of all cuts of one optimal partition, with eps
    offsets kept symbolic."""
    walk = reconstruct_walk(sol)
    out = []
    for nid in sorted(walk.runs):
        first_x, count = walk.runs[nid]
        cell = sol.tree.nodes[nid].cell
        for j in range(count):
            out.append(
                CutDescriptor(cell.top_edge, cell.bottom_edge, first_x.shifted(j))
            )
    for rec in walk.bridge_cuts:
        out.append(CutDescriptor(rec.top_edge, rec.bottom_edge, rec.x))
    return out


# ---------------------------------------------------------------------------
# Partition validation


class PartitionReport:
    def __init__(self, ok, piece_count, violations, piece_of_subcell, subcells):
        self.ok = ok
        self.piece_count = piece_count
        self.violations = violations
        self.piece_of_subcell = piece_of_subcell
        self.subcells = subcells  # (cell_id, x0, x1)

    def __repr__(self):
        state = "ok" if self.ok else "violation"
        return f"PartitionReport({state}, pieces={self.piece_count}, {self.violations})"


def validate_partition(
    region_or_dec: Union[Polygon, GluingModel, Decomposition],
    cuts: List[CutDescriptor],
) -> PartitionReport:
    """Split the trapezoid complex along the cuts and check that every piece
    is connected with horizontal extent at most one."""
    if isinstance(region_or_dec, Decomposition):
        dec = region_or_dec
    else:
        dec = trapezoidalize(region_or_dec)
    boundary = dec.boundary
    violations: List[str] = []

    chord_index = {}
    for ch in dec.chords:
        chord_index[(ch.x, ch.top_edge, ch.bottom_edge)] = ch

    splits: Dict[int, set] = {}
    blocked: set = set()

    cells_by_bottom: Dict[int, List] = {}
    for c in dec.cells:
        cells_by_bottom.setdefault(c.bottom_edge, []).append(c)

    iface_at: Dict[Fraction, List] = {}
    for f in dec.interfaces:
        iface_at.setdefault(f.x, []).append(f)

    for cut in cuts:
        if cut.x.eps != 0:
            violations.append(f"cut {cut} has an unresolved eps offset")
            continue
        x = cut.x.base
        chord = chord_index.get((x, cut.top_edge, cut.bottom_edge))
        if chord is not None:
            blocked.update(chord.interfaces)
            continue
        placed = False
        for c in cells_by_bottom.get(cut.bottom_edge, []):
            if c.top_edge != cut.top_edge or not (c.a <= x <= c.b):
                continue
            if c.a < x < c.b:
                splits.setdefault(c.id, set()).add(x)
                placed = True
                break
            # cut along a cell side: block the openings it covers
            try:
                y_lo = boundary.y_at(cut.bottom_edge, x)
                y_hi = boundary.y_at(cut.top_edge, x)
            except ValueError:
                y_lo, y_hi = None, None
            incident = c.ifaces_left if x == c.a else c.ifaces_right
            for iid in incident:
                f = dec.interfaces[iid]
                if y_lo is None or (y_lo <= f.y0 and f.y1 <= y_hi):
                    blocked.add(iid)
                    placed = True
            if placed:
                break
        if not placed:
            violations.append(f"cut {cut} does not match the decomposition")

    # build sub-cells
    subcells: List[Tuple[int, Fraction, Fraction]] = []
    first_sub: Dict[int, int] = {}
    last_sub: Dict[int, int] = {}
    for c in dec.cells:
        xs = sorted({c.a, c.b} | splits.get(c.id, set()))
        first_sub[c.id] = len(subcells)
        for x0, x1 in zip(xs, xs[1:]):
            subcells.append((c.id, x0, x1))
        last_sub[c.id] = len(subcells) - 1

    parent = list(range(len(subcells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    for f in dec.interfaces:
        if f.id in blocked:
            continue
        union(last_sub[f.left_cell], first_sub[f.right_cell])

    roots: Dict[int, int] = {}
    extent: Dict[int, List[Fraction]] = {}
    piece_of = []
    for sid, (cid, x0, x1) in enumerate(subcells):
        r = find(sid)
        if r not in roots:
            roots[r] = len(roots)
        pid = roots[r]
        piece_of.append(pid)
        if pid in extent:
            lo, hi = extent[pid]
            extent[pid] = [min(lo, x0), max(hi, x1)]
        else:
            extent[pid] = [x0, x1]

    for pid, (lo, hi) in sorted(extent.items()):
        if hi - lo > 1:
            violations.append(f"piece {pid} has width {hi - lo} > 1")

    return PartitionReport(not violations, len(roots), violations, piece_of, subcells)


def report_codeword(region, **solve_kwargs) -> Tuple[Solution, Codeword]:
    sol = solve(region, **solve_kwargs)
    return sol, encode(sol)


def check_roundtrip(region, sol: Optional[Solution] = None):
    """Solve, encode, decode, validate; raises on any mismatch.  Returns
    (solution, codeword, report, walk node touches)."""
    if sol is None:
        sol = solve(region)
    cw = encode(sol)
    walk = reconstruct_walk(sol)
    cuts = decode_codeword(sol.region, cw)
    report = validate_partition(sol.dec, cuts)
    if not report.ok:
        raise StripcutError(
            "PARTITION_INVALID", f"decoded partition invalid: {report.violations}"
        )
    if report.piece_count != sol.opt:
        raise StripcutError(
            "PARTITION_INVALID",
            f"decoded piece count {report.piece_count} != opt {sol.opt}",
        )
    return sol, cw, report, walk.node_touches

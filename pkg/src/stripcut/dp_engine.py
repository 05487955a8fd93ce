"""Bottom-up dynamic program over the refined trapezoid tree.

Each node carries a state (value, antichain): the minimum strip count of its
capped subregion and the inclusion-minimal x-intervals of strips incident to
the cap apex over all optimal partitions.  Trapezoid nodes extend strips
through their cell and insert a run of unit-spaced cuts when no extension
survives the width filter; bridge nodes either merge one strip pair across
the interface (filtered meet nonempty) or keep both families separate
(join).  The root value turns into opt(P) after the cap correction.

Endpoint bookkeeping for the reporting walk rides along: every interval
endpoint has an identity (birth trapezoid node, base coordinate with the
eps offset erased), and each node records deaths, merge provenance, and cut
runs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from stripcut import ccb_lattice as lat
from stripcut.ccb_lattice import Antichain, Interval, counters
from stripcut.decomposition import (
    CROSS_BRIDGE,
    Decomposition,
    RefinedTree,
    RNode,
    TRAP,
    refine,
    trapezoidalize,
)
from stripcut.errors import StripcutError
from stripcut.exact_coords import EpsCoord
from stripcut.polygon_model import GluingModel, Polygon


class DPState:
    __slots__ = ("value", "antichain")

    def __init__(self, value: int, antichain: Antichain):
        self.value = value
        self.antichain = antichain

    def __repr__(self):
        return f"DPState({self.value}, {self.antichain})"


class CutRun:
    """Deterministic cuts inserted at a trapezoid node: count cuts starting
    at first_x with unit spacing; chosen is the child interval whose extreme
    endpoint anchored the run."""

    __slots__ = ("node", "first_x", "count", "chosen", "eta")

    def __init__(self, node, first_x, count, chosen, eta):
        self.node = node
        self.first_x = first_x
        self.count = count
        self.chosen = chosen
        self.eta = eta


class Annotations:
    def __init__(self):
        self.items: List[Tuple[int, Fraction]] = []  # item id -> (birth node, base)
        self._intern: Dict[Tuple[int, Fraction], int] = {}
        self.deaths: Dict[int, List[Tuple[int, int, int]]] = {}  # node -> [(item, partner, side)]
        self.dead: Dict[int, int] = {}  # item -> node where it died
        self.meet_prov: Dict[int, Dict] = {}  # node -> {interval key: (I1, I2)}
        self.trap_prov: Dict[int, Dict] = {}  # node -> {interval key: child interval}
        self.join_samples: Dict[int, Tuple[Interval, Interval]] = {}
        self.cut_runs: Dict[int, CutRun] = {}

    def intern(self, node: int, base: Fraction) -> int:
        key = (node, base)
        item = self._intern.get(key)
        if item is None:
            item = len(self.items)
            self.items.append(key)
            self._intern[key] = item
        return item

    def record_deaths(self, node: int, olds: List[Antichain], result: Antichain, sides):
        present = set()
        for iv in result:
            present.add(iv.lo_item)
            present.add(iv.hi_item)
        rows = self.deaths.setdefault(node, [])
        for side, old in zip(sides, olds):
            for iv in old:
                for item, partner in ((iv.lo_item, iv.hi_item), (iv.hi_item, iv.lo_item)):
                    if item in present or item in self.dead:
                        continue
                    self.dead[item] = node
                    rows.append((item, partner, side))


def interval_key(iv: Interval):
    return (iv.lo_item, iv.hi_item, iv.key())


class Solution:
    def __init__(self, region, dec, tree, opt, root_state, ann, states, counters_snapshot):
        self.region = region
        self.dec = dec
        self.tree = tree
        self.opt = opt
        self.root_state = root_state
        self.ann = ann
        self.states = states  # node id -> DPState (kept for tracing/tests)
        self.counters = counters_snapshot

    @property
    def value(self) -> int:
        return self.root_state.value


def _virtual_leaf(node: RNode, ann: Annotations) -> DPState:
    cell = node.cell
    opp_x = cell.a if node.eta > 0 else cell.b
    item = ann.intern(node.id, opp_x)
    if node.eta > 0:
        iv = Interval(EpsCoord(opp_x, 0), EpsCoord(opp_x, 1), item, item)
    else:
        iv = Interval(EpsCoord(opp_x, -1), EpsCoord(opp_x, 0), item, item)
    return DPState(1, [iv])


def _filter_with_pairs(hulls, pairs):
    kept_h, kept_p = [], []
    for iv, pr in zip(hulls, pairs):
        if lat._le_one(iv):
            kept_h.append(iv)
            kept_p.append(pr)
    return kept_h, kept_p


def trapezoid_update(node: RNode, child: DPState, ann: Annotations) -> DPState:
    cell = node.cell
    if node.eta > 0:
        lo_it = ann.intern(node.id, cell.a)
        hi_it = ann.intern(node.id, cell.b)
        ext = Interval(EpsCoord(cell.a, 0), EpsCoord(cell.b, 1), lo_it, hi_it)
    else:
        lo_it = ann.intern(node.id, cell.a)
        hi_it = ann.intern(node.id, cell.b)
        ext = Interval(EpsCoord(cell.a, -1), EpsCoord(cell.b, 0), lo_it, hi_it)
    hulls, pairs = lat.meet_naive(child.antichain, [ext], with_pairs=True)
    kept, kept_pairs = _filter_with_pairs(hulls, pairs)
    if kept:
        prov = ann.trap_prov.setdefault(node.id, {})
        for iv, (child_iv, _) in zip(kept, kept_pairs):
            prov[interval_key(iv)] = child_iv
        ann.record_deaths(node.id, [child.antichain], kept, [-1])
        return DPState(child.value, kept)
    # no extension fits: insert unit-spaced cuts through the cell
    if node.eta > 0:
        chosen = child.antichain[-1]  # maximum left endpoint
        k = lat.floor_diff_counted(ext.hi, chosen.lo)
        new_lo = ann.intern(node.id, chosen.lo.base + k)
        result = Interval(chosen.lo.shifted(k), ext.hi, new_lo, hi_it)
        first = chosen.lo.shifted(1)
    else:
        chosen = child.antichain[0]  # minimum right endpoint
        k = lat.floor_diff_counted(chosen.hi, ext.lo)
        new_hi = ann.intern(node.id, chosen.hi.base - k)
        result = Interval(ext.lo, chosen.hi.shifted(-k), lo_it, new_hi)
        first = chosen.hi.shifted(-k)
    if k < 1:
        raise StripcutError("STRUCTURE_VIOLATION", "cut case with no room for a cut")
    ann.cut_runs[node.id] = CutRun(node.id, first, k, chosen, node.eta)
    out = [result]
    ann.record_deaths(node.id, [child.antichain], out, [-1])
    return DPState(child.value + k, out)


def bridge_update(
    node: RNode, sv: DPState, sw: DPState, ann: Annotations, use_fast: bool
) -> DPState:
    a, b = sv.antichain, sw.antichain
    swapped = False
    small, large = a, b
    if len(small) > len(large):
        small, large = large, small
        swapped = True
    fast_ok = use_fast and 4 * len(small) <= len(large)
    if fast_ok:
        ranks = lat.insertion_ranks(small, large)
        kept, pairs = lat.filtered_meet_fast(small, large, ranks, with_pairs=True)
    else:
        ranks = None
        hulls, raw_pairs = lat.meet_naive(small, large, with_pairs=True)
        kept, pairs = _filter_with_pairs(hulls, raw_pairs)
    if kept:
        prov = ann.meet_prov.setdefault(node.id, {})
        for iv, (i_small, i_large) in zip(kept, pairs):
            i_v, i_w = (i_large, i_small) if swapped else (i_small, i_large)
            prov[interval_key(iv)] = (i_v, i_w)
        ann.record_deaths(node.id, [a, b], kept, [0, 1])
        return DPState(sv.value + sw.value - 1, kept)
    if fast_ok:
        joined = lat.join_fast(small, large, ranks)
    else:
        joined = lat.join_naive(small, large)
    ann.join_samples[node.id] = (a[0], b[0])
    ann.record_deaths(node.id, [a, b], joined, [0, 1])
    return DPState(sv.value + sw.value, joined)


def cap_interval(node: RNode) -> Interval:
    x = node.x_line
    if node.eta > 0:
        return Interval(EpsCoord(x, 0), EpsCoord(x, 1))
    return Interval(EpsCoord(x, -1), EpsCoord(x, 0))


def finalize_root(state: DPState, root: RNode) -> int:
    cap = cap_interval(root)
    if len(state.antichain) == 1 and state.antichain[0].key() == cap.key():
        return state.value - 1
    return state.value


def _check_state(node: RNode, st: DPState):
    if not st.antichain:
        raise StripcutError("STRUCTURE_VIOLATION", f"empty antichain at node {node.id}")
    if not lat.antichain_ok(st.antichain):
        raise StripcutError("STRUCTURE_VIOLATION", f"antichain invariants broken at {node.id}")
    lo_probe = EpsCoord(node.x_line, 1)
    hi_probe = EpsCoord(node.x_line, -1)
    for iv in st.antichain:
        if iv.lo > lo_probe or iv.hi < hi_probe:
            raise StripcutError(
                "STRUCTURE_VIOLATION", f"interval {iv} misses x(e) at node {node.id}"
            )


def solve(
    region: Union[Polygon, GluingModel, Decomposition],
    use_fast: bool = True,
    check: bool = False,
    keep_states: bool = False,
) -> Solution:
    """Decompose, refine, and run the DP; returns opt plus everything the
    reporting walk needs."""
    counters.reset()
    if isinstance(region, Decomposition):
        dec = region
        region = dec.region
    else:
        dec = trapezoidalize(region)
    tree = refine(dec)
    ann = Annotations()
    states: Dict[int, DPState] = {}
    kept: Dict[int, DPState] = {}
    for node in tree.postorder():
        if node.kind == TRAP:
            if node.children:
                child = states[node.children[0]]
            else:
                child = _virtual_leaf(node, ann)
            st = trapezoid_update(node, child, ann)
        else:
            st = bridge_update(
                node, states[node.children[0]], states[node.children[1]], ann, use_fast
            )
        if check:
            _check_state(node, st)
        states[node.id] = st
        if keep_states:
            kept[node.id] = DPState(st.value, list(st.antichain))
    root_state = states[tree.root]
    opt = finalize_root(root_state, tree.nodes[tree.root])
    return Solution(
        region, dec, tree, opt, root_state, ann,
        kept if keep_states else {tree.root: root_state},
        counters.snapshot(),
    )

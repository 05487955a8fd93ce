"""Interval antichains over eps-augmented coordinates: order test, meet, join,
and the unit-length low-pass filter.

An antichain is a list of closed intervals sorted with strictly increasing
left endpoints, equivalently strictly increasing right endpoints, with no
interval containing another.  Meet takes inclusion-minimal hulls of cross
pairs; join takes inclusion-minimal elements of the union.

Two implementations are provided for the filtered meet and the join: a naive
one-pass merge, and a rank-accelerated variant that touches only the smaller
antichain after a blocked binary search computes insertion ranks.  The pair
is an internal cross-check; the fast variant's survivor rules are subtle.

Every endpoint comparison performed here goes through the module counters so
complexity claims can be checked on operation counts.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from stripcut.errors import StripcutError
from stripcut.exact_coords import EpsCoord, floor_diff, length_cmp_one


class Interval:
    """Closed interval [lo, hi]; lo_item/hi_item are opaque endpoint identities
    used by the reporting machinery (they ride along through the lattice ops)."""

    __slots__ = ("lo", "hi", "lo_item", "hi_item")

    def __init__(self, lo: EpsCoord, hi: EpsCoord, lo_item: int = -1, hi_item: int = -1):
        self.lo = lo
        self.hi = hi
        self.lo_item = lo_item
        self.hi_item = hi_item

    def key(self):
        return (self.lo.base, self.lo.eps, self.hi.base, self.hi.eps)

    def coords(self):
        return (self.lo, self.hi)

    def __eq__(self, other):
        return isinstance(other, Interval) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


Antichain = List[Interval]


class OpCounters:
    """Monotone per-run counters for lattice work."""

    __slots__ = ("comparisons", "meets", "joins", "rank_queries")

    def __init__(self):
        self.reset()

    def reset(self):
        self.comparisons = 0
        self.meets = 0
        self.joins = 0
        self.rank_queries = 0

    def snapshot(self):
        return {
            "comparisons": self.comparisons,
            "meets": self.meets,
            "joins": self.joins,
            "rank_queries": self.rank_queries,
        }


counters = OpCounters()


def _cmp(a: EpsCoord, b: EpsCoord) -> int:
    counters.comparisons += 1
    if a.base != b.base:
        return -1 if a.base < b.base else 1
    if a.eps != b.eps:
        return -1 if a.eps < b.eps else 1
    return 0


def _le_one(iv: Interval) -> bool:
    counters.comparisons += 1
    return length_cmp_one(iv.lo, iv.hi) <= 0


def floor_diff_counted(a: EpsCoord, b: EpsCoord) -> int:
    counters.comparisons += 1
    return floor_diff(a, b)


def antichain_ok(items: Sequence[Interval]) -> bool:
    """Check the antichain invariants (sortedness, strictness, no containment)."""
    for iv in items:
        if iv.lo > iv.hi:
            return False
    for a, b in zip(items, items[1:]):
        if not (a.lo < b.lo and a.hi < b.hi):
            return False
    return True


def filter1(items: Antichain) -> Antichain:
    """Drop intervals of length strictly greater than one."""
    return [iv for iv in items if _le_one(iv)]


def precedes(a: Antichain, b: Antichain) -> bool:
    """True iff every interval of a contains at least one interval of b."""
    j = 0
    m = len(b)
    for iv in a:
        while j < m and _cmp(b[j].lo, iv.lo) < 0:
            j += 1
        if j == m or _cmp(b[j].hi, iv.hi) > 0:
            return False
    return True


def _minimize(stream: List[Tuple[Interval, object]]) -> Tuple[Antichain, List[object]]:
    """Inclusion-minimal subsequence of a stream sorted by (lo, hi).

    Returns the surviving intervals and their parallel payloads.
    """
    out: List[Interval] = []
    pay: List[object] = []
    for iv, p in stream:
        if out:
            c = _cmp(out[-1].lo, iv.lo)
            if c == 0:
                # previous has hi <= iv.hi by sort order, so iv is redundant
                continue
            while out and _cmp(out[-1].hi, iv.hi) >= 0:
                out.pop()
                pay.pop()
        out.append(iv)
        pay.append(p)
    return out, pay


def _merged_stream(a: Antichain, b: Antichain):
    i = j = 0
    k, m = len(a), len(b)
    while i < k and j < m:
        c = _cmp(a[i].lo, b[j].lo)
        if c < 0 or (c == 0 and _cmp(a[i].hi, b[j].hi) <= 0):
            yield a[i], None
            i += 1
        else:
            yield b[j], None
            j += 1
    while i < k:
        yield a[i], None
        i += 1
    while j < m:
        yield b[j], None
        j += 1


def join_naive(a: Antichain, b: Antichain) -> Antichain:
    """Inclusion-minimal elements of the union, by a sorted merge."""
    counters.joins += 1
    out, _ = _minimize(list(_merged_stream(a, b)))
    return out


def meet_naive(
    a: Antichain, b: Antichain, with_pairs: bool = False
):
    """Inclusion-minimal hulls of all cross pairs, by a lazy two-pointer walk.

    The walk advances the pointer with the smaller right endpoint; the hulls
    it produces are nondecreasing in both endpoints and include every minimal
    hull.  With ``with_pairs`` the contributing (a-interval, b-interval) pair
    of each surviving hull is returned alongside.
    """
    counters.meets += 1
    if not a or not b:
        return ([], []) if with_pairs else []
    stream = []
    i = j = 0
    k, m = len(a), len(b)
    while True:
        ai, bj = a[i], b[j]
        lo = ai.lo if _cmp(ai.lo, bj.lo) <= 0 else bj.lo
        lo_item = ai.lo_item if lo is ai.lo else bj.lo_item
        hi = ai.hi if _cmp(ai.hi, bj.hi) >= 0 else bj.hi
        hi_item = ai.hi_item if hi is ai.hi else bj.hi_item
        stream.append((Interval(lo, hi, lo_item, hi_item), (ai, bj)))
        advance_a = _cmp(ai.hi, bj.hi) <= 0
        if advance_a:
            i += 1
            if i == k:
                break
        else:
            j += 1
            if j == m:
                break
    out, pay = _minimize(stream)
    return (out, pay) if with_pairs else out


# ---------------------------------------------------------------------------
# Rank-accelerated variants


class Ranks:
    """Insertion ranks of a's endpoints among b's, one row per interval of a.

    lo_le[i] = #{ intervals of b with lo <= a[i].lo }, lo_eq[i] marks an exact
    tie; hi_le / hi_eq likewise for right endpoints.
    """

    __slots__ = ("lo_le", "lo_eq", "hi_le", "hi_eq")

    def __init__(self, lo_le, lo_eq, hi_le, hi_eq):
        self.lo_le = lo_le
        self.lo_eq = lo_eq
        self.hi_le = hi_le
        self.hi_eq = hi_eq


def _block_size(m: int, k: int) -> int:
    """Largest power of two at most m // (4k), found by doubling."""
    target = m // (4 * k) if k else m
    size = 1
    while size * 2 <= target:
        size *= 2
    return max(size, 1)


def _ranks_one_side(keys_a: List[EpsCoord], keys_b: List[EpsCoord]):
    """Counts of keys_b <= x for each x in keys_a (both sorted ascending)."""
    k, m = len(keys_a), len(keys_b)
    le = [0] * k
    eq = [False] * k
    if m == 0:
        return le, eq
    if m < 4 * max(k, 1):
        j = 0
        for i, x in enumerate(keys_a):
            while j < m and _cmp(keys_b[j], x) <= 0:
                j += 1
            le[i] = j
            eq[i] = j > 0 and _cmp(keys_b[j - 1], x) == 0
        return le, eq
    block = _block_size(m, k)
    cur = 0  # current block index
    nblocks = (m + block - 1) // block
    for i, x in enumerate(keys_a):
        while cur + 1 < nblocks and _cmp(keys_b[(cur + 1) * block], x) <= 0:
            cur += 1
        lo = cur * block
        hi = min(lo + block, m)
        # rightmost position with key <= x inside the block
        while lo < hi:
            mid = (lo + hi) // 2
            if _cmp(keys_b[mid], x) <= 0:
                lo = mid + 1
            else:
                hi = mid
        le[i] = lo
        eq[i] = lo > 0 and _cmp(keys_b[lo - 1], x) == 0
    return le, eq


def insertion_ranks(a: Antichain, b: Antichain) -> Ranks:
    counters.rank_queries += len(a)
    lo_le, lo_eq = _ranks_one_side([iv.lo for iv in a], [iv.lo for iv in b])
    hi_le, hi_eq = _ranks_one_side([iv.hi for iv in a], [iv.hi for iv in b])
    return Ranks(lo_le, lo_eq, hi_le, hi_eq)


def join_fast(a: Antichain, b: Antichain, ranks: Optional[Ranks] = None) -> Antichain:
    """Join using precomputed ranks; touches each interval of a once and kept
    runs of b wholesale."""
    counters.joins += 1
    if not a:
        return list(b)
    if not b:
        return list(a)
    if ranks is None:
        ranks = insertion_ranks(a, b)
    keep_a: List[Interval] = []
    del_ranges: List[List[int]] = []  # half-open [start, stop) indices into b
    for i, iv in enumerate(a):
        strict_lo = ranks.lo_le[i] - (1 if ranks.lo_eq[i] else 0)
        inside = ranks.hi_le[i] - strict_lo  # count of b contained in iv
        if inside <= 0:
            keep_a.append(iv)
        elif inside == 1 and b[strict_lo].key() == iv.key():
            pass  # exact duplicate: the b copy represents it
        # else iv properly contains some b interval: drop iv
        strict_hi = ranks.hi_le[i] - (1 if ranks.hi_eq[i] else 0)
        top = ranks.lo_le[i]
        if top > strict_hi:
            # b[strict_hi:top] contain iv; spare an exact duplicate at the top
            stop = top
            if ranks.lo_eq[i] and b[top - 1].key() == iv.key():
                stop = top - 1
            if stop > strict_hi:
                if del_ranges and del_ranges[-1][1] >= strict_hi:
                    del_ranges[-1][1] = max(del_ranges[-1][1], stop)
                else:
                    del_ranges.append([strict_hi, stop])
    kept_b: List[Interval] = []
    pos = 0
    for start, stop in del_ranges:
        kept_b.extend(b[pos:start])
        pos = max(pos, stop)
    kept_b.extend(b[pos:])
    # merge the two sorted survivor lists; no containments remain
    out: List[Interval] = []
    i = j = 0
    while i < len(keep_a) and j < len(kept_b):
        if _cmp(keep_a[i].lo, kept_b[j].lo) < 0:
            out.append(keep_a[i]); i += 1
        else:
            out.append(kept_b[j]); j += 1
    out.extend(keep_a[i:])
    out.extend(kept_b[j:])
    return out


def _mirror_interval(iv: Interval) -> Interval:
    return Interval(
        EpsCoord(-iv.hi.base, -iv.hi.eps),
        EpsCoord(-iv.lo.base, -iv.lo.eps),
        iv.hi_item,
        iv.lo_item,
    )


def _mirror(items: Antichain) -> Antichain:
    """Reflect an antichain through x -> -x (stays a sorted antichain)."""
    return [_mirror_interval(iv) for iv in reversed(items)]


def _left_pass(a: Antichain, b: Antichain, ranks: Ranks):
    """Meet members whose left endpoint comes from a.

    Processes a in runs of equal left-endpoint insertion rank; within a run
    the middle part (right rank equal to the left rank) hulls with the next
    interval of b, and only the candidate with the largest left endpoint
    survives.  Candidates longer than one are discarded here, which is the
    only place the low-pass filter can trigger.  Returns (interval, (i, j))
    with witness indices into a and b.
    """
    out: List[Tuple[Interval, Tuple[int, int]]] = []
    k, m = len(a), len(b)
    i = 0
    while i < k:
        alpha = ranks.lo_le[i]
        run_end = i
        while run_end + 1 < k and ranks.lo_le[run_end + 1] == alpha:
            run_end += 1
        middle_best = None
        for t in range(i, run_end + 1):
            beta = ranks.hi_le[t]
            if beta < alpha:
                continue
            if beta > alpha:
                if middle_best is not None:
                    out.append(middle_best)
                    middle_best = None
                out.append((a[t], (t, alpha)))
            elif alpha < m:
                cand = Interval(a[t].lo, b[alpha].hi, a[t].lo_item, b[alpha].hi_item)
                if _le_one(cand):
                    middle_best = (cand, (t, alpha))
        if middle_best is not None:
            out.append(middle_best)
        i = run_end + 1
    return out


def filtered_meet_fast(
    a: Antichain, b: Antichain, ranks: Optional[Ranks] = None, with_pairs: bool = False
):
    """filter1(meet(a, b)) via insertion ranks; work is proportional to the
    smaller antichain (plus the output), not to both.

    Requires every interval of a and b to have length at most one (the
    dynamic program maintains this for all bridge operands).
    """
    counters.meets += 1
    if not a or not b:
        return ([], []) if with_pairs else []
    if ranks is None:
        ranks = insertion_ranks(a, b)
    k, m = len(a), len(b)

    # members coinciding with intervals of b, each assigned to the smallest
    # witness index of a; the index ranges are disjoint by construction
    b_members: List[Tuple[Interval, Tuple[int, int]]] = []
    assigned = 0
    for i in range(k):
        strict_hi = ranks.hi_le[i] - (1 if ranks.hi_eq[i] else 0)
        top = ranks.lo_le[i]
        start = max(strict_hi, assigned)
        for j in range(start, top):
            b_members.append((b[j], (i, j)))
        assigned = max(assigned, top)

    left = _left_pass(a, b, ranks)
    ma, mb = _mirror(a), _mirror(b)
    mleft = _left_pass(ma, mb, insertion_ranks(ma, mb))
    right = [
        (_mirror_interval(iv), (k - 1 - mi, m - 1 - mj))
        for iv, (mi, mj) in reversed(mleft)
    ]

    stream = _merge_index_streams(_merge_index_streams(left, right), b_members)
    out, pay = _minimize(stream)
    pairs = [(a[i], b[j]) for i, j in pay]
    return (out, pairs) if with_pairs else out


def _merge_index_streams(s1, s2):
    """Merge two streams sorted by interval key, collapsing exact duplicates."""
    out = []
    i = j = 0
    while i < len(s1) and j < len(s2):
        k1, k2 = s1[i][0].key(), s2[j][0].key()
        if k1 == k2:
            out.append(s1[i])
            i += 1
            j += 1
        elif k1 < k2:
            out.append(s1[i])
            i += 1
        else:
            out.append(s2[j])
            j += 1
    out.extend(s1[i:])
    out.extend(s2[j:])
    return out

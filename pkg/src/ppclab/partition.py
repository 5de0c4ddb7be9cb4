"""Maximal low-gap blocks, the greedy budgeted partition, and its cross-term bounds.

The greedy partition repeatedly removes a maximum-length subinterval whose
gap sum fits the budget.  Selection, reported sums, and every verifier here
use the same canonical prefix-sum differences, so the structural guarantees
(engulfing, the three-case pair classification, the cross-pair lower bounds)
hold exactly in binary64 arithmetic, not merely up to rounding.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from dataclasses import dataclass
from typing import NamedTuple

from .correlation import IndexInterval
from .sequences import GapSequence


@dataclass(frozen=True)
class BlockSet:
    """The maximal runs of indices whose gaps are all <= threshold.

    A run is maximal: the gap immediately before and after each block (when
    inside 1..n) exceeds the threshold.
    """

    blocks: tuple[IndexInterval, ...]
    threshold: float
    n: int

    @property
    def total_length(self) -> int:
        return sum(b.length for b in self.blocks)


class PairClass(enum.Enum):
    """Where an index pair with small window sum can live relative to the parts."""

    SAME_BLOCK = "same_block"
    ADJACENT = "adjacent"
    SANDWICH_SKIP = "sandwich_skip"
    OUTSIDE = "outside"


class BoundCheck(NamedTuple):
    lhs: int
    rhs: float
    ok: bool


@dataclass(frozen=True)
class GreedyPartition:
    """Result of the greedy budgeted decomposition of one parent block.

    ``parts`` are in left-to-right order; ``selection_rank[k-1]`` is the
    1-based pick order of part k (rank 1 was chosen first). ``sums`` are the
    canonical gap sums actually compared against the budget during selection.
    Earlier picks are never shorter than later ones.
    """

    parent: IndexInterval
    parts: tuple[IndexInterval, ...]
    selection_rank: tuple[int, ...]
    sums: tuple[float, ...]
    budget: float

    def __post_init__(self):
        s = len(self.parts)
        if s == 0 or len(self.selection_rank) != s or len(self.sums) != s:
            raise ValueError("parts, selection_rank, and sums must be non-empty and aligned")
        pos = self.parent.left
        for part in self.parts:
            if part.left != pos:
                raise ValueError(f"parts do not tile the parent: gap or overlap at {pos}")
            pos = part.right + 1
        if pos != self.parent.right + 1:
            raise ValueError("parts do not cover the parent")
        if sorted(self.selection_rank) != list(range(1, s + 1)):
            raise ValueError("selection_rank must be a bijection onto 1..s")

    @property
    def size(self) -> int:
        return len(self.parts)

    def part_containing(self, index: int) -> int:
        """1-based part number holding the given gap index."""
        if not self.parent.left <= index <= self.parent.right:
            raise ValueError(f"index {index} outside parent {self.parent}")
        lefts = [p.left for p in self.parts]
        return bisect_right(lefts, index)

    def rank(self, k: int) -> int:
        return self.selection_rank[k - 1]


def maximal_blocks(g: GapSequence, n: int, threshold: float) -> BlockSet:
    """Single left-to-right pass extracting the maximal runs with gaps <= threshold."""
    if not threshold > 0:
        raise ValueError("threshold must be positive")
    if n < 0 or n > g.length:
        raise ValueError(f"n={n} out of range 0..{g.length}")
    gaps = g.gaps[:n].tolist()
    blocks = []
    start = None
    for i, gap in enumerate(gaps, start=1):
        if gap <= threshold:
            if start is None:
                start = i
        else:
            if start is not None:
                blocks.append(IndexInterval(start, i - 1))
                start = None
    if start is not None:
        blocks.append(IndexInterval(start, n))
    return BlockSet(tuple(blocks), threshold, n)


def _longest_fit(prefix, a: int, b: int, budget: float):
    """Longest window [s, e] within [a, b] with canonical sum <= budget.

    Ties go to the smallest left endpoint.  Returns (length, s, e) with
    length 0 when not even a singleton fits.
    """
    best_len = 0
    best_s = best_e = 0
    e = a - 1
    for s in range(a, b + 1):
        base = prefix[s - 1]
        if e < s - 1:
            e = s - 1
        while e < b and prefix[e + 1] - base <= budget:
            e += 1
        if e - s + 1 > best_len:
            best_len = e - s + 1
            best_s, best_e = s, e
    return best_len, best_s, best_e


def greedy_partition(g: GapSequence, parent: IndexInterval, budget: float) -> GreedyPartition:
    """Decompose ``parent`` by repeatedly removing the longest budget-respecting subinterval.

    At each step the chosen part is a maximum-length subinterval of the
    remaining index set with gap sum <= budget; among maximum-length
    candidates the one with the smallest left endpoint wins, which makes the
    procedure deterministic.  Every single gap in the parent must fit the
    budget on its own, otherwise no decomposition exists.
    """
    if not budget > 0:
        raise ValueError("budget must be positive")
    if parent.right > g.length:
        raise ValueError(f"parent {parent} exceeds gap count {g.length}")
    prefix = g.prefix_list()
    for s in range(parent.left, parent.right + 1):
        if prefix[s] - prefix[s - 1] > budget:
            raise ValueError(
                f"unpartitionable singleton: gap at index {s} exceeds budget {budget}"
            )

    fragments = [(parent.left, parent.right)]
    picks: list[tuple[int, int]] = []
    while fragments:
        best = (0, 0, 0)  # (length, s, e)
        best_frag = -1
        for idx, (a, b) in enumerate(fragments):
            length, s, e = _longest_fit(prefix, a, b, budget)
            if length > best[0]:
                best = (length, s, e)
                best_frag = idx
        length, s, e = best
        a, b = fragments.pop(best_frag)
        if e < b:
            fragments.insert(best_frag, (e + 1, b))
        if s > a:
            fragments.insert(best_frag, (a, s - 1))
        picks.append((s, e))

    by_position = sorted(range(len(picks)), key=lambda i: picks[i][0])
    parts = tuple(IndexInterval(*picks[i]) for i in by_position)
    selection_rank = tuple(i + 1 for i in by_position)  # pick order is append order
    sums = tuple(float(prefix[p.right] - prefix[p.left - 1]) for p in parts)
    return GreedyPartition(parent, parts, selection_rank, sums, budget)


def sandwiched_indices(p: GreedyPartition) -> set[int]:
    """Parts chosen after both neighbors: {k in [2, s-1] : rank k > ranks of k-1 and k+1}."""
    s = p.size
    return {
        k
        for k in range(2, s)
        if p.rank(k) > p.rank(k - 1) and p.rank(k) > p.rank(k + 1)
    }


def classify_pair(
    p: GreedyPartition, g: GapSequence, n: int, n2: int, budget: float
) -> PairClass:
    """Locate an index pair n <= n2 relative to the parts.

    A pair whose window sum exceeds the budget is OUTSIDE.  A pair within
    budget always lands in one part, in adjacent parts, or skips exactly one
    part whose middle is sandwiched; the greedy construction rules out every
    other placement, so anything else raises.
    """
    if n > n2:
        raise ValueError(f"need n <= n2, got {n} > {n2}")
    if not (p.parent.left <= n and n2 <= p.parent.right):
        raise ValueError(f"pair ({n}, {n2}) outside parent {p.parent}")
    total = float(g.prefix[n2] - g.prefix[n - 1])
    if total > budget:
        return PairClass.OUTSIDE
    k1 = p.part_containing(n)
    k2 = p.part_containing(n2)
    if k1 == k2:
        return PairClass.SAME_BLOCK
    if k2 == k1 + 1:
        return PairClass.ADJACENT
    if k2 == k1 + 2 and (k1 + 1) in sandwiched_indices(p):
        return PairClass.SANDWICH_SKIP
    raise RuntimeError(
        f"pair ({n}, {n2}) with in-budget sum {total} falls outside the three "
        f"admissible placements; greedy invariants violated"
    )


def _cross_pairs_above(prefix, j1: IndexInterval, j2: IndexInterval, budget: float) -> int:
    """#{(n, n') in J1 x J2 : canonical window sum > budget}."""
    total = 0
    e = j2.left  # first end index with sum > budget for the current start
    # sums shrink as the start moves right, so the boundary only moves right
    for s in range(j1.left, j1.right + 1):
        base = prefix[s - 1]
        while e <= j2.right and prefix[e] - base <= budget:
            e += 1
        total += j2.right - e + 1
    return total


def verify_adjacent_bound(
    p: GreedyPartition, g: GapSequence, k: int, budget: float
) -> BoundCheck:
    """Check that J_k x J_{k+1} has at least |later-picked part|^2 / 2 over-budget pairs."""
    if not 1 <= k <= p.size - 1:
        raise ValueError(f"k={k} out of range 1..{p.size - 1}")
    jk, jk1 = p.parts[k - 1], p.parts[k]
    prefix = g.prefix_list()
    lhs = _cross_pairs_above(prefix, jk, jk1, budget)
    later = k if p.rank(k) > p.rank(k + 1) else k + 1
    rhs = 0.5 * p.parts[later - 1].length ** 2
    return BoundCheck(lhs, rhs, lhs >= rhs)


def verify_sandwich_bound(
    p: GreedyPartition, g: GapSequence, k: int, budget: float
) -> BoundCheck:
    """Check the skip-one analogue of :func:`verify_adjacent_bound` for a sandwiched k."""
    if k not in sandwiched_indices(p):
        raise ValueError(f"part {k} is not sandwiched")
    jprev, jnext = p.parts[k - 2], p.parts[k]
    prefix = g.prefix_list()
    lhs = _cross_pairs_above(prefix, jprev, jnext, budget)
    later = k - 1 if p.rank(k - 1) > p.rank(k + 1) else k + 1
    rhs = 0.5 * p.parts[later - 1].length ** 2
    return BoundCheck(lhs, rhs, lhs >= rhs)

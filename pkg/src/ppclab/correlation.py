"""Counting statistics: pair correlation, gap CDF, and windowed gap-sum counts.

All window sums are canonical prefix-sum differences (see
:class:`~ppclab.sequences.GapSequence`), and all boundary comparisons are
exact binary64 comparisons with no tolerance.  Counts are integers; the
block/cross decomposition identity holds exactly because every operation
evaluates the same window with the same float.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sequences import GapSequence, RealSequence


@dataclass(frozen=True)
class Interval:
    """Bounded real interval with explicit endpoint closedness.

    The default is half-open [lo, hi).  A degenerate interval with lo == hi
    is the single point when both ends are closed and empty otherwise.
    """

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        if not (self.lo == self.lo and self.hi == self.hi):  # NaN guard
            raise ValueError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def half_open(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, True, False)

    @property
    def is_empty(self) -> bool:
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x):
        """Membership test; works elementwise on numpy arrays."""
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above & below if hasattr(x, "__len__") else bool(above and below)

    def reflected(self) -> "Interval":
        """The interval -I; closedness flags swap ends."""
        return Interval(-self.hi, -self.lo, self.hi_closed, self.lo_closed)

    def scaled(self, c: float) -> "Interval":
        if not c > 0:
            raise ValueError("scale factor must be positive")
        return Interval(c * self.lo, c * self.hi, self.lo_closed, self.hi_closed)


@dataclass(frozen=True, order=True)
class IndexInterval:
    """Inclusive 1-based index block [left, right] into a gap sequence."""

    left: int
    right: int

    def __post_init__(self):
        if not 1 <= self.left <= self.right:
            raise ValueError(f"need 1 <= left <= right, got [{self.left}, {self.right}]")

    @property
    def length(self) -> int:
        return self.right - self.left + 1

    def indices(self) -> range:
        return range(self.left, self.right + 1)


@dataclass(frozen=True)
class CorrelationReport:
    """Result of a pair-correlation query: the raw count and its 1/n scaling."""

    interval: Interval
    n: int
    pair_count: int
    r_value: float


def pair_correlation(seq: RealSequence, interval: Interval, n: int) -> CorrelationReport:
    """Count ordered pairs (i, j), i != j, i,j <= n with values[j] - values[i] in I.

    Two-pointer sliding window over the sorted values: for each i the
    admissible j form a contiguous run whose ends move only forward, so the
    count is aggregated per window in O(n) without enumerating pairs.  The
    comparisons are applied to the difference values[j] - values[i] itself,
    the same expression a brute-force enumerator would use.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    if n > seq.n:
        raise ValueError(f"n={n} exceeds sequence length {seq.n}")
    if interval.is_empty:
        return CorrelationReport(interval, n, 0, 0.0)

    values = seq.values[:n].tolist()
    lo, hi = interval.lo, interval.hi
    lo_closed, hi_closed = interval.lo_closed, interval.hi_closed
    count = 0
    lo_ptr = 0  # first j whose difference passes the lower bound
    hi_ptr = 0  # first j whose difference fails the upper bound
    for i in range(n):
        vi = values[i]
        while lo_ptr < n:
            d = values[lo_ptr] - vi
            if d > lo or (lo_closed and d == lo):
                break
            lo_ptr += 1
        if hi_ptr < lo_ptr:
            hi_ptr = lo_ptr
        while hi_ptr < n:
            d = values[hi_ptr] - vi
            if d < hi or (hi_closed and d == hi):
                hi_ptr += 1
            else:
                break
        c = hi_ptr - lo_ptr
        if lo_ptr <= i < hi_ptr:  # drop the i == j self pair
            c -= 1
        count += c
    return CorrelationReport(interval, n, count, count / n)


def gap_cdf(g: GapSequence, x: float, n: int) -> float:
    """Empirical distribution function of the first n gaps: (1/n) #{m <= n : g_m <= x}."""
    if n <= 0:
        raise ValueError("n must be positive")
    if n > g.length:
        raise ValueError(f"n={n} exceeds gap count {g.length}")
    return int(np.count_nonzero(g.gaps[:n] <= x)) / n


def multi_gap_count(g: GapSequence, interval: Interval, n: int, m_min: int = 1) -> int:
    """Count windows (start, m) with m >= m_min, start+m-1 <= n, and gap-sum in I.

    Prefix sums make each window's sum an O(1) lookup; because gaps are
    non-negative the admissible window ends form a contiguous run per start
    and both run boundaries move only forward, giving O(n) total.
    """
    if m_min < 1:
        raise ValueError("m_min must be >= 1")
    if n < 0 or n > g.length:
        raise ValueError(f"n={n} out of range 0..{g.length}")
    if interval.is_empty or n == 0 or m_min > n:
        return 0

    prefix = g.prefix_list()
    lo, hi = interval.lo, interval.hi
    lo_closed, hi_closed = interval.lo_closed, interval.hi_closed
    total = 0
    lo_ptr = 1  # first end index whose sum passes the lower bound
    hi_ptr = 1  # first end index whose sum fails the upper bound
    for s in range(1, n - m_min + 2):
        base = prefix[s - 1]
        if lo_ptr < s:
            lo_ptr = s
        while lo_ptr <= n:
            d = prefix[lo_ptr] - base
            if d > lo or (lo_closed and d == lo):
                break
            lo_ptr += 1
        if hi_ptr < lo_ptr:
            hi_ptr = lo_ptr
        while hi_ptr <= n:
            d = prefix[hi_ptr] - base
            if d < hi or (hi_closed and d == hi):
                hi_ptr += 1
            else:
                break
        e_min = s + m_min - 1
        lo_eff = lo_ptr if lo_ptr > e_min else e_min
        if hi_ptr > lo_eff:
            total += hi_ptr - lo_eff
    return total


def ppc_block(g: GapSequence, block: IndexInterval, a: float) -> int:
    """Count pairs n <= n' inside ``block`` with window sum strictly below ``a``."""
    if block.right > g.length:
        raise ValueError(f"block {block} exceeds gap count {g.length}")
    prefix = g.prefix_list()
    total = 0
    e = block.left  # first end index with sum >= a for the current start
    for s in range(block.left, block.right + 1):
        base = prefix[s - 1]
        if e < s:
            e = s
        while e <= block.right and prefix[e] - base < a:
            e += 1
        total += e - s
    return total


def ppc_cross(g: GapSequence, j1: IndexInterval, j2: IndexInterval, a: float) -> int:
    """Count pairs (n, n') in J1 x J2 with window sum g_n + ... + g_{n'} strictly below ``a``.

    J1 must lie strictly left of J2; the window spans every gap from n
    through n', including the ones between the two blocks.
    """
    if j1.right >= j2.left:
        raise ValueError(f"blocks must be disjoint and ordered: {j1} vs {j2}")
    if j2.right > g.length:
        raise ValueError(f"block {j2} exceeds gap count {g.length}")
    prefix = g.prefix_list()
    total = 0
    e = j2.left
    for s in range(j1.left, j1.right + 1):
        base = prefix[s - 1]
        while e <= j2.right and prefix[e] - base < a:
            e += 1
        total += e - j2.left
    return total

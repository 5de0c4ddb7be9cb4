#!/usr/bin/env python3
"""Why the budgeted partition must be greedy-by-length, shown on three gap patterns.

A block of consecutive small gaps has to be cut into parts whose gap sums
stay within a budget (1/2 here), while keeping the count of cross-part pairs
with small window sums negligible.  Three instructive patterns:

  pattern A: a large gap, a run of zeros, a middle gap, more zeros, a large gap
  pattern B: light runs separated by a wall of exactly-budget gaps
  pattern C: two interior spikes inside long zero runs

Pattern A defeats two natural strategies (cut-before-overflow, and letting
the big gaps claim the longest stretches), while the max-length greedy
produces the right cut.  Afterwards we verify the structural guarantees on
random blocks: the three-case pair classification and the cross-pair lower
bounds that make the leakage quantifiable.
"""

import numpy as np

import ppclab as pl
from ppclab import IndexInterval, PairClass


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def show_partition(g, p):
    print(f"  parts:  {[(x.left, x.right) for x in p.parts]}")
    print(f"  ranks:  {list(p.selection_rank)}  (1 = picked first)")
    print(f"  sums:   {[round(s, 6) for s in p.sums]}")
    sand = sorted(pl.sandwiched_indices(p))
    print(f"  sandwiched parts: {sand or 'none'}")


def main():
    budget = 0.5

    banner("Pattern A: 2/5, 0,0,0, 1/3, 0,0,0, 2/5")
    g = pl.GapSequence([2 / 5] + [0.0] * 3 + [1 / 3] + [0.0] * 3 + [2 / 5])
    parent = IndexInterval(1, 9)

    print("cut-before-overflow divides as [1,4] [5,8] [9,9]:")
    leak = pl.ppc_cross(g, IndexInterval(1, 4), IndexInterval(5, 8), budget)
    print(f"  cross pairs under the budget between the first two parts: {leak} (quadratic leakage)")

    print("letting the large gaps claim the longest stretches gives [1,4] [5,5] [6,9]:")
    leak = pl.ppc_cross(g, IndexInterval(1, 4), IndexInterval(6, 9), budget)
    print(f"  cross pairs under the budget between the outer parts:     {leak} (still quadratic)")

    print("max-length greedy instead picks the long middle run first:")
    p = pl.greedy_partition(g, parent, budget)
    show_partition(g, p)
    for k in range(1, p.size):
        c = pl.ppc_cross(g, p.parts[k - 1], p.parts[k], budget)
        print(f"  adjacent cross pairs ({k},{k+1}) under budget: {c} (linear in the run length)")

    banner("Pattern B: 1/4, zeros, five gaps of exactly 1/2, zeros, 1/4")
    k = 5
    g = pl.GapSequence([0.25] + [0.0] * k + [0.5] * k + [0.0] * k + [0.25])
    p = pl.greedy_partition(g, IndexInterval(1, g.length), budget)
    show_partition(g, p)
    print("  the wall of exact-budget gaps forces singleton parts in the middle;")
    print("  the two light runs are claimed first and the cross terms all exceed the budget.")

    banner("Pattern C: zeros, 1/3, zeros, 1/3, zeros")
    k = 4
    g = pl.GapSequence([0.0] * k + [1 / 3] + [0.0] * k + [1 / 3] + [0.0] * k)
    p = pl.greedy_partition(g, IndexInterval(1, g.length), budget)
    show_partition(g, p)
    leak = pl.ppc_cross(g, p.parts[0], p.parts[1], budget)
    check = pl.verify_adjacent_bound(p, g, 1, budget)
    print(f"  cross pairs under budget: {leak} -- unavoidable here, every division leaks")
    print(f"  but the over-budget count {check.lhs} >= {check.rhs} bounds the damage:")
    print("  heavy leakage forces heavy mass in the wider window range, which the")
    print("  pair-correlation constraint caps globally.")

    banner("Random blocks: classification totality and the cross bounds")
    rng = np.random.default_rng(42)
    counts = {c: 0 for c in PairClass}
    checked_bounds = 0
    for _ in range(2000):
        length = int(rng.integers(1, 65))
        gaps = rng.uniform(0.0, budget * float(rng.choice([1.0, 0.15])), length)
        g = pl.GapSequence(gaps)
        p = pl.greedy_partition(g, IndexInterval(1, length), budget)
        for n in range(1, length + 1):
            for n2 in range(n, min(n + 12, length) + 1):
                counts[pl.classify_pair(p, g, n, n2, budget)] += 1
        for k in range(1, p.size):
            assert pl.verify_adjacent_bound(p, g, k, budget).ok
            checked_bounds += 1
        for k in sorted(pl.sandwiched_indices(p)):
            assert pl.verify_sandwich_bound(p, g, k, budget).ok
            checked_bounds += 1
    print("  pair classifications over 2000 random blocks (windows up to 12 long):")
    for c, v in counts.items():
        print(f"    {c.value:14s} {v}")
    print(f"  cross-pair lower bounds verified: {checked_bounds}, zero violations")


if __name__ == "__main__":
    main()

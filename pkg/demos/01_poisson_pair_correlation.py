#!/usr/bin/env python3
"""Pair correlations of a Poisson-process sequence converge to interval length.

For an increasing sequence with mean gap 1, the pair correlation statistic
R(I, N) counts ordered pairs whose difference lands in the interval I,
scaled by 1/N.  A sequence built from i.i.d. exponential gaps behaves like a
Poisson point process, so R(I, N) should approach |I| for every bounded
interval.  This script watches that convergence as N grows, for several
intervals, and contrasts it with the capped generator whose gap distribution
is deliberately truncated.
"""

import ppclab as pl

INTERVALS = [
    pl.Interval.half_open(0.0, 1.0),
    pl.Interval.half_open(0.25, 0.75),
    pl.Interval.half_open(-0.5, 0.5),   # both signs: symmetric pairs counted twice
    pl.Interval.half_open(1.0, 3.0),
]


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    banner("Poisson sequence: R(I, N) vs |I| as N grows")
    seq = pl.generate(pl.GeneratorConfig("poisson", 200_000, seed=7))
    header = "N".rjust(8) + "".join(
        f"   [{i.lo:+.2f},{i.hi:+.2f}) -> {i.length:.2f}".rjust(24) for i in INTERVALS
    )
    print(header)
    for n in (1_000, 10_000, 100_000, 200_000):
        row = f"{n:8d}"
        for interval in INTERVALS:
            r = pl.pair_correlation(seq, interval, n).r_value
            row += f"{r:24.4f}"
        print(row)
    print("\nNote the [-0.5, 0.5) column: a symmetric interval of length 1 reports")
    print("R close to 1 even though only positive differences exist, because each")
    print("unordered pair is counted in both orientations.")

    banner("Capped generator: same counting machinery, visibly non-Poisson statistics")
    capped = pl.generate(pl.GeneratorConfig("capped", 100_000, seed=7, cap=1.5))
    for interval in INTERVALS[:2]:
        r = pl.pair_correlation(capped, interval, capped.n).r_value
        print(f"  R({interval.lo:+.2f},{interval.hi:+.2f}) = {r:.4f}  (|I| = {interval.length:.2f})")
    print("\nTruncating the gap distribution and rescaling back to mean gap 1 shifts")
    print("pair mass away from these intervals: R stays well below |I|, so the capped")
    print("sequence makes a useful non-Poisson stress fixture for the audit.")


if __name__ == "__main__":
    main()

"""Executable inequality checks: the seven-term quadratic lower bound, the
small-window bias bound, the closing epsilon inequality, and the end-to-end
finite-N audit of the whole chain.

The quadratic-bound sweep is exact: integer tuples are compared via
12*LHS >= 5L^2 + 2L - 7 in int64, with no floating point anywhere.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .correlation import Interval, gap_cdf, multi_gap_count
from .partition import greedy_partition, maximal_blocks
from .sequences import GapSequence, RealSequence, gaps_of

REAL_FUZZ_TOLERANCE = 1e-9  # binary64 rounding headroom only


@dataclass(frozen=True)
class LemmaPoint:
    """An admissible tuple 1 <= a <= b <= c <= l; integer or real coordinates."""

    a: float
    b: float
    c: float
    l: float

    def __post_init__(self):
        if not 1 <= self.a <= self.b <= self.c <= self.l:
            raise ValueError(
                f"need 1 <= a <= b <= c <= l, got ({self.a}, {self.b}, {self.c}, {self.l})"
            )


def lemma512_lhs(p: LemmaPoint):
    """The seven-term sum; exact (int) when all coordinates are ints."""
    a, b, c, l = p.a, p.b, p.c, p.l
    return (
        (a - 1) * a
        + (b - a) * (b - a + 1)
        + (c - b) * (c - b + 1)
        + (l - c) * (l - c + 1)
        + (a - 1) * (b - a)
        + (b - a) * (c - b)
        + (c - b) * (l - c)
    )


def lemma512_rhs(l):
    """(5/12) l^2 + (1/6) l - 7/12; an exact Fraction for integer l."""
    if isinstance(l, int):
        return Fraction(5 * l * l + 2 * l - 7, 12)
    if not l >= 1:
        raise ValueError("l must be >= 1")
    return (5.0 / 12.0) * l * l + l / 6.0 - 7.0 / 12.0


class ExhaustiveResult(NamedTuple):
    checked: int
    counterexamples: list


def _scan_l_values(l_values) -> ExhaustiveResult:
    checked = 0
    counterexamples = []
    for l in l_values:
        rhs12 = 5 * l * l + 2 * l - 7
        for a in range(1, l + 1):
            b = np.arange(a, l + 1, dtype=np.int64)[:, None]
            c = np.arange(a, l + 1, dtype=np.int64)[None, :]
            valid = b <= c
            lhs12 = 12 * (
                (a - 1) * a
                + (b - a) * (b - a + 1)
                + (c - b) * (c - b + 1)
                + (l - c) * (l - c + 1)
                + (a - 1) * (b - a)
                + (b - a) * (c - b)
                + (c - b) * (l - c)
            )
            bad = valid & (lhs12 < rhs12)
            checked += int(np.count_nonzero(valid))
            if np.any(bad):
                bi, ci = np.nonzero(bad)
                counterexamples.extend(
                    (a, int(b[i, 0]), int(c[0, j]), l) for i, j in zip(bi, ci)
                )
    return ExhaustiveResult(checked, counterexamples)


def lemma512_exhaustive(l_max: int, workers: int = 1) -> ExhaustiveResult:
    """Sweep every integer tuple 1 <= a <= b <= c <= L <= l_max exactly.

    Uses int64 throughout (safe for l_max up to ~10^4, far beyond practical
    sweeps); the comparison is 12*LHS < 5L^2 + 2L - 7 so no division occurs.
    The L-range is striped across workers and results merged; the outcome is
    independent of the worker count.
    """
    if l_max < 1:
        raise ValueError("l_max must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if l_max > 20000:
        raise ValueError("l_max too large for int64-exact arithmetic margin")
    stripes = [list(range(1 + r, l_max + 1, workers)) for r in range(workers)]
    stripes = [s for s in stripes if s]
    if len(stripes) == 1:
        result = _scan_l_values(stripes[0])
        return ExhaustiveResult(result.checked, sorted(result.counterexamples))
    with ProcessPoolExecutor(max_workers=len(stripes)) as pool:
        results = list(pool.map(_scan_l_values, stripes))
    checked = sum(r.checked for r in results)
    counterexamples = sorted(x for r in results for x in r.counterexamples)
    return ExhaustiveResult(checked, counterexamples)


class RealViolation(NamedTuple):
    a: float
    b: float
    c: float
    l: float
    gap: float


def lemma512_random_real(samples: int, l_max: float, seed: int) -> list[RealViolation]:
    """Fuzz the bound over real tuples drawn uniformly under the ordering constraint.

    Draws L ~ U(1, l_max) and (a, b, c) as the sorted triple of U(1, L)
    draws, then reports every point where LHS - RHS < -1e-9.  The tolerance
    absorbs polynomial-evaluation rounding only; anything beyond it is a
    genuine counterexample candidate, returned at full precision.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not l_max >= 1:
        raise ValueError("l_max must be >= 1")
    rng = np.random.default_rng(seed)
    violations: list[RealViolation] = []
    remaining = samples
    while remaining > 0:
        batch = min(remaining, 1_000_000)
        remaining -= batch
        l = rng.uniform(1.0, l_max, batch)
        abc = np.sort(rng.uniform(1.0, l[:, None], (batch, 3)), axis=1)
        a, b, c = abc[:, 0], abc[:, 1], abc[:, 2]
        lhs = (
            (a - 1) * a
            + (b - a) * (b - a + 1)
            + (c - b) * (c - b + 1)
            + (l - c) * (l - c + 1)
            + (a - 1) * (b - a)
            + (b - a) * (c - b)
            + (c - b) * (l - c)
        )
        rhs = (5.0 / 12.0) * l * l + l / 6.0 - 7.0 / 12.0
        gap = lhs - rhs
        bad = gap < -REAL_FUZZ_TOLERANCE
        for i in np.nonzero(bad)[0]:
            violations.append(
                RealViolation(float(a[i]), float(b[i]), float(c[i]), float(l[i]), float(gap[i]))
            )
    return violations


class BiasCheck(NamedTuple):
    lhs: int
    rhs: float
    ok: bool


def bias_check(g: GapSequence, strict_scale: bool = False) -> BiasCheck:
    """Check the small-window bias bound on one block with total gap <= 1/2.

    lhs counts every window (all lengths m >= 1) with sum <= 1/4, plus every
    window with sum <= 1/8; rhs is (5/6) L(L+1)/2 - (5/6) L.  The thresholds
    are exact dyadics, so the comparisons are exact.  With ``strict_scale``
    the gaps are first rescaled so they total 1/2, the hardest admissible
    case.
    """
    total = float(g.prefix[-1])
    if total > 0.5:
        raise ValueError(f"total gap sum {total} exceeds 1/2")
    if strict_scale and 0.0 < total < 0.5:
        g = GapSequence(g.gaps * (0.5 / total))
    prefix = g.prefix_list()
    length = g.length
    lhs = 0
    f_eighth = 1  # first end index with sum > 1/8 for the current start
    f_quarter = 1
    for s in range(1, length + 1):
        base = prefix[s - 1]
        if f_eighth < s:
            f_eighth = s
        while f_eighth <= length and prefix[f_eighth] - base <= 0.125:
            f_eighth += 1
        if f_quarter < f_eighth:
            f_quarter = f_eighth
        while f_quarter <= length and prefix[f_quarter] - base <= 0.25:
            f_quarter += 1
        lhs += (f_quarter - s) + (f_eighth - s)
    rhs = (5.0 / 6.0) * (length * (length + 1) / 2.0) - (5.0 / 6.0) * length
    return BiasCheck(lhs, rhs, lhs >= rhs)


def final_inequality(epsilon: float) -> float:
    """(10*sqrt(2)/3) eps^(1/4) + (5/3) sqrt(eps) - 1/24.

    Negative values mean the closing inequality fails at this epsilon, i.e.
    the contradiction argument goes through; the sign flips between 1e-9 and
    1e-8.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return (10.0 * math.sqrt(2.0) / 3.0) * epsilon**0.25 + (5.0 / 3.0) * math.sqrt(epsilon) - 1.0 / 24.0


@dataclass(frozen=True)
class AuditConfig:
    """Knobs for :func:`audit`: epsilon, the gap-count prefix, and the block budget."""

    epsilon: float
    n: int
    budget: float = 0.5

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if not self.budget > 0:
            raise ValueError("budget must be positive")


class AuditStep(NamedTuple):
    name: str
    lhs: float
    rhs: float
    direction: str  # "<=" or ">=": the asymptotic statement's direction
    holds: bool


@dataclass(frozen=True)
class AuditReport:
    """Every quantitative step of the gap-bound argument, evaluated at finite N.

    Nothing here is asserted: the underlying statements are asymptotic, so a
    finite sequence may violate any of them.  Each step records its measured
    side, its theoretical side, the direction the asymptotic claim points,
    and whether it holds at this N.
    """

    epsilon: float
    budget: float
    n_used: int
    max_gap: float
    max_gap_ok: bool
    density_lhs: float
    density_rhs: float
    multigap_lhs: float
    multigap_rhs: float
    partition_mass: float
    partition_mass_rhs: float
    bias_lhs: float
    bias_rhs: float
    final_ineq_value: float
    block_count: int
    part_count: int
    total_block_length: int
    steps: tuple[AuditStep, ...]

    @property
    def flags(self) -> dict[str, bool]:
        return {step.name: step.holds for step in self.steps}

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "budget": self.budget,
            "n_used": self.n_used,
            "max_gap": self.max_gap,
            "max_gap_ok": self.max_gap_ok,
            "density_lhs": self.density_lhs,
            "density_rhs": self.density_rhs,
            "multigap_lhs": self.multigap_lhs,
            "multigap_rhs": self.multigap_rhs,
            "partition_mass": self.partition_mass,
            "partition_mass_rhs": self.partition_mass_rhs,
            "bias_lhs": self.bias_lhs,
            "bias_rhs": self.bias_rhs,
            "final_ineq_value": self.final_ineq_value,
            "block_count": self.block_count,
            "part_count": self.part_count,
            "total_block_length": self.total_block_length,
            "steps": [
                {
                    "name": s.name,
                    "lhs": s.lhs,
                    "rhs": s.rhs,
                    "direction": s.direction,
                    "holds": s.holds,
                }
                for s in self.steps
            ],
        }


def audit(seq: RealSequence, cfg: AuditConfig) -> AuditReport:
    """Evaluate the whole proof chain on the first ``cfg.n`` gaps of ``seq``.

    Measured quantities (per N): the density of gaps <= budget, the density
    of multi-gap windows landing in (budget, 3/2 + eps), the partition mass
    sum of C(|J|+1, 2) over greedy parts of all maximal blocks, and the
    near-zero window counts against their partition-derived lower bound.
    The report also evaluates the closing epsilon inequality.  Deterministic:
    equal inputs give bit-identical reports.
    """
    if cfg.n > seq.n:
        raise ValueError(f"cfg.n={cfg.n} exceeds sequence length {seq.n}")
    g = gaps_of(seq)
    n = min(cfg.n, g.length)  # N indexes gaps; a prefix of N points carries N-1 of them
    eps = cfg.epsilon
    budget = cfg.budget
    gap_bound = 1.5 + eps

    max_gap = float(np.max(g.gaps[:n]))
    max_gap_ok = max_gap <= gap_bound

    density_lhs = gap_cdf(g, budget, n)
    density_rhs = 2.0 * math.sqrt(eps)

    multigap_lhs = multi_gap_count(g, Interval.open(budget, gap_bound), n, 2) / n
    multigap_rhs = 2.0 * math.sqrt(eps)

    blocks = maximal_blocks(g, n, budget)
    parts_binom = 0
    parts_len = 0
    part_count = 0
    for block in blocks.blocks:
        p = greedy_partition(g, block, budget)
        part_count += p.size
        for part in p.parts:
            m = part.length
            parts_binom += m * (m + 1) // 2
            parts_len += m
    partition_mass = parts_binom / n
    partition_mass_rhs = 0.5 - 4.0 * math.sqrt(2.0) * eps**0.25

    ppc_eighth = multi_gap_count(g, Interval.half_open(0.0, 0.125), n, 1)
    ppc_quarter = multi_gap_count(g, Interval.half_open(0.0, 0.25), n, 1)
    bias_lhs = (ppc_eighth + ppc_quarter) / n
    bias_rhs = (5.0 / 6.0) * partition_mass - (5.0 / 3.0) * (parts_len / n)

    final_value = final_inequality(eps)

    steps = (
        AuditStep("density", density_lhs, density_rhs, "<=", density_lhs <= density_rhs),
        AuditStep("multigap", multigap_lhs, multigap_rhs, "<=", multigap_lhs <= multigap_rhs),
        AuditStep(
            "partition_mass",
            partition_mass,
            partition_mass_rhs,
            ">=",
            partition_mass >= partition_mass_rhs,
        ),
        AuditStep("bias", bias_lhs, bias_rhs, ">=", bias_lhs >= bias_rhs),
        AuditStep("final_inequality", final_value, 0.0, ">=", final_value >= 0.0),
    )
    return AuditReport(
        epsilon=eps,
        budget=budget,
        n_used=n,
        max_gap=max_gap,
        max_gap_ok=max_gap_ok,
        density_lhs=density_lhs,
        density_rhs=density_rhs,
        multigap_lhs=multigap_lhs,
        multigap_rhs=multigap_rhs,
        partition_mass=partition_mass,
        partition_mass_rhs=partition_mass_rhs,
        bias_lhs=bias_lhs,
        bias_rhs=bias_rhs,
        final_ineq_value=final_value,
        block_count=len(blocks.blocks),
        part_count=part_count,
        total_block_length=parts_len,
        steps=steps,
    )

"""The quadratic lower bound, the bias bound, the closing inequality, and the audit."""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

import ppclab as pl


def lhs_direct(a, b, c, l):
    """Direct term-by-term evaluation, kept separate from the library path."""
    return (
        (a - 1) * a
        + (b - a) * (b - a + 1)
        + (c - b) * (c - b + 1)
        + (l - c) * (l - c + 1)
        + (a - 1) * (b - a)
        + (b - a) * (c - b)
        + (c - b) * (l - c)
    )


def test_lemma_point_validation():
    pl.LemmaPoint(1, 1, 1, 1)
    pl.LemmaPoint(1.5, 2.0, 2.0, 3.0)
    with pytest.raises(ValueError):
        pl.LemmaPoint(0.5, 1, 1, 1)
    with pytest.raises(ValueError):
        pl.LemmaPoint(2, 1, 3, 4)


def test_lhs_examples_exact():
    assert pl.lemma512_lhs(pl.LemmaPoint(1, 1, 1, 1)) == 0
    assert pl.lemma512_lhs(pl.LemmaPoint(1, 1, 1, 2)) == 2
    assert pl.lemma512_lhs(pl.LemmaPoint(2, 3, 5, 8)) == 31


def test_rhs_exact_rationals():
    assert pl.lemma512_rhs(1) == 0
    assert pl.lemma512_rhs(2) == Fraction(17, 12)
    assert pl.lemma512_rhs(8) == Fraction(329, 12)
    assert pl.lemma512_rhs(2.0) == pytest.approx(17 / 12)


def test_equality_witness_at_origin_corner():
    assert pl.lemma512_lhs(pl.LemmaPoint(1, 1, 1, 1)) - pl.lemma512_rhs(1) == 0


def test_degenerate_diagonal_gap_value():
    # at a = b = c = L the seven-term sum collapses to L(L-1) and the gap
    # factors as (7/12)(L-1)^2; direct evaluation confirms it
    for l_val in (1, 2, 5, 9, 30):
        gap = pl.lemma512_lhs(pl.LemmaPoint(l_val, l_val, l_val, l_val)) - pl.lemma512_rhs(l_val)
        assert gap == Fraction(7, 12) * (l_val - 1) ** 2
        assert lhs_direct(l_val, l_val, l_val, l_val) == l_val * (l_val - 1)


def test_interior_critical_point_is_tight():
    # with a=(L+2)/3 and c=(2L+1)/3 the gap is the perfect square
    # (b-(L+1)/2)^2, so the bound is achieved exactly at b=(L+1)/2
    for l_val in (4, 7, 10, 100):
        a, b, c = (l_val + 2) / 3, (l_val + 1) / 2, (2 * l_val + 1) / 3
        gap = pl.lemma512_lhs(pl.LemmaPoint(a, b, c, l_val)) - pl.lemma512_rhs(float(l_val))
        assert abs(gap) <= 1e-9
        for offset in (0.25, 1.0, 2.0):
            if b + offset <= c:
                shifted = pl.lemma512_lhs(pl.LemmaPoint(a, b + offset, c, l_val)) - pl.lemma512_rhs(
                    float(l_val)
                )
                assert shifted == pytest.approx(offset**2, rel=1e-9, abs=1e-9)


def test_exhaustive_matches_fraction_oracle():
    l_max = 20
    checked = 0
    worst = None
    for l_val in range(1, l_max + 1):
        rhs = pl.lemma512_rhs(l_val)
        for a, b, c in itertools.combinations_with_replacement(range(1, l_val + 1), 3):
            gap = Fraction(lhs_direct(a, b, c, l_val)) - rhs
            assert gap >= 0, (a, b, c, l_val)
            checked += 1
            if worst is None or gap < worst:
                worst = gap
    result = pl.lemma512_exhaustive(l_max)
    assert result.checked == checked == math.comb(l_max + 3, 4)
    assert result.counterexamples == []
    assert worst == 0  # the bound is tight


def test_exhaustive_counts_small_cases():
    assert pl.lemma512_exhaustive(1) == (1, [])
    assert pl.lemma512_exhaustive(4).checked == 1 + 4 + 10 + 20


def test_exhaustive_worker_independence():
    serial = pl.lemma512_exhaustive(40)
    for workers in (2, 3):
        assert pl.lemma512_exhaustive(40, workers=workers) == serial


def test_exhaustive_validation():
    with pytest.raises(ValueError):
        pl.lemma512_exhaustive(0)
    with pytest.raises(ValueError):
        pl.lemma512_exhaustive(10, workers=0)


def test_random_real_fuzz_finds_nothing():
    assert pl.lemma512_random_real(100_000, 50.0, seed=1234) == []


def test_random_real_validation():
    with pytest.raises(ValueError):
        pl.lemma512_random_real(0, 50.0, 1)
    with pytest.raises(ValueError):
        pl.lemma512_random_real(10, 0.5, 1)


def test_bias_check_trivial_length_one():
    check = pl.bias_check(pl.GapSequence([0.4]))
    assert check.rhs == 0.0 and check.ok


def test_bias_check_small_example():
    check = pl.bias_check(pl.GapSequence([0.1, 0.1]))
    assert check.lhs == 5  # windows .1, .1, .2: three <= 1/4 plus two <= 1/8
    assert check.rhs == pytest.approx(5 / 6)
    assert check.ok


def test_bias_check_strict_scale():
    check = pl.bias_check(pl.GapSequence([0.1, 0.1]), strict_scale=True)
    # scaled to (.25, .25): windows .25, .25, .5 -> two <= 1/4, none <= 1/8
    assert check.lhs == 2
    assert check.ok


def test_bias_check_equal_gaps_closed_form():
    length = 64
    check = pl.bias_check(pl.GapSequence(np.full(length, 1 / 128)))
    # window of m gaps sums to m/128 exactly; m <= 32 fits 1/4, m <= 16 fits 1/8
    expected = sum(length - m + 1 for m in range(1, 33)) + sum(
        length - m + 1 for m in range(1, 17)
    )
    assert check.lhs == expected == 2456
    assert check.rhs == pytest.approx((5 / 6) * (length * (length + 1) / 2 - length))
    assert check.ok


def test_bias_check_rejects_heavy_blocks():
    with pytest.raises(ValueError, match="exceeds 1/2"):
        pl.bias_check(pl.GapSequence([0.3, 0.3]))


def test_bias_check_zero_total_is_fine():
    check = pl.bias_check(pl.GapSequence([0.0, 0.0, 0.0]), strict_scale=True)
    assert check.lhs == 12  # every window counted under both thresholds
    assert check.ok


def test_bias_check_random_property():
    rng = np.random.default_rng(99)
    for _ in range(10_000):
        length = int(rng.integers(1, 65))
        raw = rng.uniform(0.0, 1.0, length)
        target = 0.5 * (1.0 - rng.random())
        gaps = raw * (target / raw.sum())
        assert pl.bias_check(pl.GapSequence(gaps)).ok


def test_final_inequality_signs_and_values():
    f9 = pl.final_inequality(1e-9)
    f8 = pl.final_inequality(1e-8)
    assert f9 < 0 < f8
    # frozen from direct evaluation of the closed form
    assert f9 == pytest.approx(-0.015104937746762168, abs=1e-12)
    assert f8 == pytest.approx(0.005640452079103173, abs=1e-12)
    assert f8 == pytest.approx(0.005640, abs=1e-5)


def test_final_inequality_monotone_and_limit():
    eps_grid = np.logspace(-12, -0.1, 200)
    values = [pl.final_inequality(float(e)) for e in eps_grid]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert pl.final_inequality(1e-12) < 0
    assert pl.final_inequality(1e-30) == pytest.approx(-1 / 24, abs=1e-6)
    with pytest.raises(ValueError):
        pl.final_inequality(0.0)


def test_audit_config_validation():
    with pytest.raises(ValueError):
        pl.AuditConfig(epsilon=0.0, n=10)
    with pytest.raises(ValueError):
        pl.AuditConfig(epsilon=1e-9, n=1)
    with pytest.raises(ValueError):
        pl.AuditConfig(epsilon=1e-9, n=10, budget=0.0)


def test_audit_unit_lattice_is_all_zero():
    seq = pl.RealSequence(np.arange(1000, dtype=float))
    report = pl.audit(seq, pl.AuditConfig(epsilon=1e-9, n=999))
    assert report.density_lhs == 0.0
    assert report.multigap_lhs == 0.0
    assert report.partition_mass == 0.0
    assert report.bias_lhs == 0.0
    assert report.block_count == 0
    assert report.max_gap == 1.0 and report.max_gap_ok
    assert report.flags["density"] and report.flags["multigap"]
    assert not report.flags["final_inequality"]  # the closing inequality fails at 1e-9


def test_audit_poisson_density_matches_exponential_cdf():
    seq = pl.generate(pl.GeneratorConfig("poisson", 100_000, seed=3))
    report = pl.audit(seq, pl.AuditConfig(epsilon=1e-9, n=99_999))
    assert report.density_lhs == pytest.approx(1 - math.exp(-0.5), abs=0.01)
    assert not report.flags["density"]  # a Poisson sequence is nowhere near capped


def test_audit_is_deterministic():
    seq = pl.generate(pl.GeneratorConfig("capped", 2000, seed=8, cap=1.5))
    cfg = pl.AuditConfig(epsilon=1e-9, n=1999)
    a = pl.audit(seq, cfg).to_dict()
    b = pl.audit(seq, cfg).to_dict()
    assert a == b  # exact float equality throughout


def test_audit_clamps_n_to_gap_count():
    seq = pl.RealSequence(np.arange(100, dtype=float))
    report = pl.audit(seq, pl.AuditConfig(epsilon=1e-9, n=100))
    assert report.n_used == 99
    with pytest.raises(ValueError):
        pl.audit(seq, pl.AuditConfig(epsilon=1e-9, n=101))


def test_audit_report_structure():
    seq = pl.generate(pl.GeneratorConfig("capped", 500, seed=4, cap=1.5))
    report = pl.audit(seq, pl.AuditConfig(epsilon=1e-9, n=499))
    d = report.to_dict()
    for key in (
        "density_lhs",
        "density_rhs",
        "multigap_lhs",
        "multigap_rhs",
        "partition_mass",
        "partition_mass_rhs",
        "bias_lhs",
        "bias_rhs",
        "final_ineq_value",
        "steps",
    ):
        assert key in d
    assert {s["name"] for s in d["steps"]} == {
        "density",
        "multigap",
        "partition_mass",
        "bias",
        "final_inequality",
    }
    for step in d["steps"]:
        assert step["direction"] in ("<=", ">=")
        assert math.isfinite(step["lhs"]) and math.isfinite(step["rhs"])

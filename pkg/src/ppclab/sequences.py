"""Sequence and gap containers, generators, file ingestion, and mean-gap normalization."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

TWO_PI = 2.0 * math.pi

GENERATOR_KINDS = ("poisson", "capped", "quadratic_form")
INGEST_MODES = ("raw", "zeta_unfold")


class SequenceFormatError(ValueError):
    """Malformed sequence file; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, eq=False)
class RealSequence:
    """Finite, strictly increasing sequence of reals.

    All statistics in this package are computed over (prefixes of) one of
    these.  ``values`` is stored as a read-only float64 array; ``metadata``
    carries generator provenance (e.g. tie-perturbation counts) and does not
    affect any computation.
    """

    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("sequence must be a non-empty 1-d array of reals")
        if not np.all(np.isfinite(v)):
            raise ValueError("sequence values must be finite")
        if v.size > 1:
            diffs = np.diff(v)
            if not np.all(diffs > 0):
                pos = int(np.argmax(~(diffs > 0)))
                raise ValueError(
                    f"sequence not strictly increasing at position {pos + 2} "
                    f"(value {v[pos + 1]!r} after {v[pos]!r})"
                )
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True, eq=False)
class GapSequence:
    """Consecutive differences g_n of a sequence, plus their prefix sums.

    Gaps must be non-negative; gaps derived from a :class:`RealSequence` via
    :func:`gaps_of` are strictly positive.  Zero gaps are permitted so the
    partition machinery can run on pedagogical fixtures that contain them.

    ``prefix[k]`` is the running sum of the first ``k`` gaps (``prefix[0] = 0``).
    Every window sum in this package is the *canonical* difference
    ``prefix[e] - prefix[s-1]``; using one summation path everywhere is what
    makes the counting decompositions and greedy-partition invariants exact
    in binary64, not just up to rounding.
    """

    gaps: np.ndarray
    prefix: np.ndarray = field(init=False)

    def __post_init__(self):
        g = np.asarray(self.gaps, dtype=float)
        if g.ndim != 1 or g.size < 1:
            raise ValueError("gap sequence must be a non-empty 1-d array")
        if not np.all(np.isfinite(g)):
            raise ValueError("gaps must be finite")
        if np.any(g < 0):
            pos = int(np.argmax(g < 0))
            raise ValueError(f"negative gap {g[pos]!r} at position {pos + 1}")
        g = g.copy()
        g.flags.writeable = False
        prefix = np.concatenate(([0.0], np.cumsum(g)))
        prefix.flags.writeable = False
        object.__setattr__(self, "gaps", g)
        object.__setattr__(self, "prefix", prefix)

    @property
    def length(self) -> int:
        return int(self.gaps.size)

    def prefix_list(self) -> list:
        """The prefix sums as a plain list, cached; hot counting loops use this."""
        cached = self.__dict__.get("_prefix_list")
        if cached is None:
            cached = self.prefix.tolist()
            object.__setattr__(self, "_prefix_list", cached)
        return cached

    def window_sum(self, start: int, end: int) -> float:
        """Canonical sum of gaps ``start..end`` (1-based, inclusive)."""
        if not 1 <= start <= end <= self.length:
            raise ValueError(f"window [{start},{end}] out of range 1..{self.length}")
        return float(self.prefix[end] - self.prefix[start - 1])


@dataclass(frozen=True)
class GeneratorConfig:
    """Configuration for :func:`generate`; equal configs give bit-identical output.

    ``cap`` is required for the capped kind (units of mean gap).  ``alpha`` is
    the quadratic-form coefficient in x^2 + alpha*y^2.  ``cutoff`` optionally
    fixes the enumeration cutoff for the quadratic form; by default it grows
    until at least ``n_points`` values are available.
    """

    kind: str
    n_points: int
    seed: int = 0
    cap: float | None = None
    alpha: float = math.sqrt(2.0)
    cutoff: float | None = None

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {GENERATOR_KINDS}")
        if self.n_points < 1:
            raise ValueError("n_points must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.kind == "capped":
            if self.cap is None or not self.cap > 0:
                raise ValueError("capped generator requires cap > 0")
        if self.kind == "quadratic_form":
            if not self.alpha > 0:
                raise ValueError("quadratic_form generator requires alpha > 0")
            if self.cutoff is not None and not self.cutoff > 0:
                raise ValueError("cutoff must be positive when given")


def gaps_of(seq: RealSequence) -> GapSequence:
    """Consecutive differences of ``seq``; requires at least two points."""
    if seq.n < 2:
        raise ValueError("sequence too short: need at least 2 points to form gaps")
    return GapSequence(np.diff(seq.values))


def mean_gap(seq: RealSequence) -> float:
    """Average consecutive gap, (last - first)/(N - 1)."""
    if seq.n < 2:
        raise ValueError("sequence too short: mean gap needs at least 2 points")
    return float((seq.values[-1] - seq.values[0]) / (seq.n - 1))


def normalize_mean_gap(seq: RealSequence) -> RealSequence:
    """Translate to start at 0 and rescale so the mean gap is 1.

    Idempotent up to 1e-12 and order-preserving; the first output value is
    exactly 0.
    """
    if seq.n < 2:
        raise ValueError("sequence too short: cannot normalize fewer than 2 points")
    shifted = seq.values - seq.values[0]
    span = float(shifted[-1])
    if span <= 0:
        raise ValueError("degenerate sequence: zero span")
    scale = (seq.n - 1) / span
    return RealSequence(shifted * scale, metadata=dict(seq.metadata))


def sequence_from_gaps(gaps, start: float = 0.0) -> RealSequence:
    """Sequence with the given consecutive gaps, beginning at ``start``."""
    g = np.asarray(gaps, dtype=float)
    return RealSequence(start + np.concatenate(([0.0], np.cumsum(g))))


def quadratic_form_values(n_points: int, alpha: float = math.sqrt(2.0),
                          cutoff: float | None = None) -> tuple[np.ndarray, float]:
    """Smallest ``n_points`` values of {x^2 + alpha*y^2 : x, y >= 1 integers}.

    Returns the sorted raw values (duplicates kept, no normalization) and the
    enumeration cutoff actually used.  With an explicit ``cutoff`` that yields
    fewer than ``n_points`` values, raises instead of guessing.
    """
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    # Density heuristic: #{(x,y): x^2+alpha*y^2 <= C} ~ (pi/4) C / sqrt(alpha).
    c = cutoff if cutoff is not None else max(1.0 + alpha, 4.0 * math.sqrt(alpha) * n_points / math.pi) * 1.25
    while True:
        mx = int(math.floor(math.sqrt(max(c - alpha, 0.0))))
        my = int(math.floor(math.sqrt(max((c - 1.0) / alpha, 0.0))))
        if mx >= 1 and my >= 1:
            xs = np.arange(1, mx + 1, dtype=float) ** 2
            ys = alpha * np.arange(1, my + 1, dtype=float) ** 2
            vals = (xs[:, None] + ys[None, :]).ravel()
            vals = vals[vals <= c]
            if vals.size >= n_points:
                vals.sort(kind="stable")
                return vals[:n_points], c
        if cutoff is not None:
            raise ValueError(
                f"cutoff {cutoff} yields only {0 if mx < 1 or my < 1 else vals.size} "
                f"values, need {n_points}"
            )
        c *= 2.0


def generate(cfg: GeneratorConfig) -> RealSequence:
    """Deterministic sequence generator; see :class:`GeneratorConfig`.

    Kinds:

    * ``poisson`` — gaps i.i.d. exponential(mean 1); the first point equals
      the first gap.  Models a Poisson point process on the half-line.
    * ``capped`` — exponential gaps rejection-resampled into (0, cap], then
      the whole sequence renormalized to mean gap 1;
      ``metadata['renorm_factor']`` records the applied scale, which bounds
      every output gap by cap * renorm_factor.
    * ``quadratic_form`` — the smallest values of x^2 + alpha*y^2, sorted,
      exact ties perturbed up by one representable step (strictness), then
      renormalized to mean gap 1.  ``metadata['perturbed_ties']`` records how
      many ties were adjusted.
    """
    n = cfg.n_points
    if cfg.kind == "poisson":
        rng = np.random.default_rng(cfg.seed)
        return RealSequence(np.cumsum(rng.exponential(1.0, n)))

    if cfg.kind == "capped":
        rng = np.random.default_rng(cfg.seed)
        gaps = rng.exponential(1.0, n)
        while True:
            oversized = gaps > cfg.cap
            k = int(np.count_nonzero(oversized))
            if k == 0:
                break
            gaps[oversized] = rng.exponential(1.0, k)
        values = np.cumsum(gaps)
        if n == 1:
            return RealSequence(values)
        # after renormalization the gaps are raw*factor, so raw <= cap bounds
        # every output gap by cap*factor; record the factor for callers
        span = float(values[-1] - values[0])
        seq = RealSequence(values, metadata={"renorm_factor": (n - 1) / span})
        return normalize_mean_gap(seq)

    # quadratic_form; deterministic, seed unused
    vals, used_cutoff = quadratic_form_values(n, cfg.alpha, cfg.cutoff)
    perturbed = 0
    for i in range(1, vals.size):
        if vals[i] <= vals[i - 1]:
            vals[i] = np.nextafter(vals[i - 1], math.inf)
            perturbed += 1
    meta = {"perturbed_ties": perturbed, "cutoff": used_cutoff}
    seq = RealSequence(vals, metadata=meta)
    return normalize_mean_gap(seq) if n >= 2 else seq


def ingest_and_unfold(path, mode: str = "raw") -> RealSequence:
    """Read a sequence file, optionally unfolding a zeta-zero-style table.

    The file holds one decimal number per line (UTF-8, ``#`` comment lines and
    blank lines ignored) and must be strictly increasing.  ``zeta_unfold``
    maps each value t to t*ln(t)/(2*pi), the rescaling under which a sequence
    counted by ~ T*log(T)/(2*pi) acquires asymptotic mean gap 1; it requires
    every value > 1.
    """
    if mode not in INGEST_MODES:
        raise ValueError(f"unknown ingest mode {mode!r}; expected one of {INGEST_MODES}")
    values = []
    prev = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                val = float(line)
            except ValueError:
                raise SequenceFormatError(f"could not parse {line!r} as a number", lineno) from None
            if not math.isfinite(val):
                raise SequenceFormatError(f"non-finite value {line!r}", lineno)
            if prev is not None and val <= prev:
                raise SequenceFormatError(
                    f"not strictly increasing: {val!r} after {prev!r}", lineno
                )
            if mode == "zeta_unfold" and val <= 1.0:
                raise SequenceFormatError(
                    f"zeta_unfold requires values > 1, got {val!r}", lineno
                )
            prev = val
            values.append(val)
    if not values:
        raise SequenceFormatError("file contains no data lines", 1)
    arr = np.asarray(values, dtype=float)
    if mode == "zeta_unfold":
        arr = arr * np.log(arr) / TWO_PI
    return RealSequence(arr)


def write_sequence(path, seq: RealSequence, comment: str | None = None) -> None:
    """Write ``seq`` in the text format read by :func:`ingest_and_unfold`.

    Values are printed with 17 significant digits, so a read-back round-trips
    bit-exactly.
    """
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"# {part}")
    lines.extend(format(v, ".17g") for v in seq.values.tolist())
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

"""ppclab: pair-correlation statistics, gap distributions, greedy block
partitions, and executable inequality audits for increasing real sequences."""

__version__ = "0.1.0"

from .correlation import (
    CorrelationReport,
    IndexInterval,
    Interval,
    gap_cdf,
    multi_gap_count,
    pair_correlation,
    ppc_block,
    ppc_cross,
)
from .partition import (
    BlockSet,
    BoundCheck,
    GreedyPartition,
    PairClass,
    classify_pair,
    greedy_partition,
    maximal_blocks,
    sandwiched_indices,
    verify_adjacent_bound,
    verify_sandwich_bound,
)
from .sequences import (
    GapSequence,
    GeneratorConfig,
    RealSequence,
    SequenceFormatError,
    gaps_of,
    generate,
    ingest_and_unfold,
    mean_gap,
    normalize_mean_gap,
    quadratic_form_values,
    sequence_from_gaps,
    write_sequence,
)
from .verifier import (
    AuditConfig,
    AuditReport,
    AuditStep,
    BiasCheck,
    ExhaustiveResult,
    LemmaPoint,
    RealViolation,
    audit,
    bias_check,
    final_inequality,
    lemma512_exhaustive,
    lemma512_lhs,
    lemma512_random_real,
    lemma512_rhs,
)

__all__ = [
    "__version__",
    "AuditConfig",
    "AuditReport",
    "AuditStep",
    "BiasCheck",
    "BlockSet",
    "BoundCheck",
    "CorrelationReport",
    "ExhaustiveResult",
    "GapSequence",
    "GeneratorConfig",
    "GreedyPartition",
    "IndexInterval",
    "Interval",
    "LemmaPoint",
    "PairClass",
    "RealSequence",
    "RealViolation",
    "SequenceFormatError",
    "audit",
    "bias_check",
    "classify_pair",
    "final_inequality",
    "gap_cdf",
    "gaps_of",
    "generate",
    "greedy_partition",
    "ingest_and_unfold",
    "lemma512_exhaustive",
    "lemma512_lhs",
    "lemma512_random_real",
    "lemma512_rhs",
    "maximal_blocks",
    "mean_gap",
    "multi_gap_count",
    "normalize_mean_gap",
    "pair_correlation",
    "ppc_block",
    "ppc_cross",
    "quadratic_form_values",
    "sandwiched_indices",
    "sequence_from_gaps",
    "verify_adjacent_bound",
    "verify_sandwich_bound",
    "write_sequence",
]

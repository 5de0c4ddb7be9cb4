"""Command-line front end: generation, analysis, partitioning, verification, audit.

Exit codes: 0 success / no violation, 1 verified violation or failed check,
2 usage or input error.  Every JSON document embeds a run manifest from which
the run can be replayed byte-identically.  Floats are printed with 17
significant digits, so every value round-trips.

Pair counts follow the ordered-pair convention: an interval containing both
signs counts each unordered pair twice (once per orientation).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .correlation import Interval, gap_cdf, pair_correlation
from .partition import (
    greedy_partition,
    maximal_blocks,
    sandwiched_indices,
    verify_adjacent_bound,
    verify_sandwich_bound,
)
from .sequences import (
    GapSequence,
    GeneratorConfig,
    SequenceFormatError,
    gaps_of,
    generate,
    ingest_and_unfold,
    normalize_mean_gap,
    write_sequence,
)
from .verifier import (
    AuditConfig,
    audit,
    bias_check,
    final_inequality,
    lemma512_exhaustive,
    lemma512_random_real,
)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _dumps(obj) -> str:
    """Deterministic one-line JSON with 17-significant-digit floats."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{_dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _file_hash(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _manifest(command: str, parameters: dict, seed=None, input_path=None) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "input_hash": _file_hash(input_path) if input_path else None,
        "tool_version": __version__,
    }


def _worker_count() -> int:
    raw = os.environ.get("PPC_LAB_THREADS")
    if raw:
        count = int(raw)
        if count < 1:
            raise ValueError("PPC_LAB_THREADS must be a positive integer")
        return count
    return os.cpu_count() or 1


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"interval must be 'lo,hi', got {text!r}")
    return float(parts[0]), float(parts[1])


def _interval_flags(args) -> tuple[bool, bool]:
    if args.closed:
        return True, True
    if args.open:
        return False, False
    return True, False  # default half-open [lo, hi)


def cmd_generate(args) -> int:
    cfg = GeneratorConfig(
        kind=args.kind,
        n_points=args.n,
        seed=args.seed,
        cap=args.cap,
        alpha=args.alpha,
        cutoff=args.cutoff,
    )
    seq = generate(cfg)
    write_sequence(args.output, seq)
    params = {
        "kind": args.kind,
        "n": args.n,
        "cap": args.cap,
        "alpha": args.alpha,
        "cutoff": args.cutoff,
        "output": str(args.output),
    }
    manifest = _manifest("generate", params, seed=args.seed)
    sidecar = {
        "written": str(args.output),
        "n_points": seq.n,
        "metadata": {k: (float(v) if isinstance(v, float) else v) for k, v in seq.metadata.items()},
        "manifest": manifest,
    }
    with open(str(args.output) + ".manifest.json", "w", encoding="utf-8") as fh:
        fh.write(_dumps(sidecar) + "\n")
    print(_dumps(sidecar))
    return 0


def cmd_analyze(args) -> int:
    if not args.interval and not args.cdf_grid:
        raise ValueError("nothing to do: give --interval and/or --cdf-grid")
    seq = ingest_and_unfold(args.input, "raw")
    n = args.n if args.n is not None else seq.n
    lo_closed, hi_closed = _interval_flags(args)
    params = {
        "input": str(args.input),
        "n": n,
        "intervals": list(args.interval or []),
        "closed": bool(args.closed),
        "open": bool(args.open),
        "cdf_grid": args.cdf_grid,
    }
    manifest = _manifest("analyze", params, input_path=args.input)
    for text in args.interval or []:
        lo, hi = _parse_interval(text)
        report = pair_correlation(seq, Interval(lo, hi, lo_closed, hi_closed), n)
        doc = {
            "lo": lo,
            "hi": hi,
            "lo_closed": lo_closed,
            "hi_closed": hi_closed,
            "n": report.n,
            "pair_count": report.pair_count,
            "r_value": report.r_value,
            "manifest": manifest,
        }
        print(_dumps(doc))
    if args.cdf_grid:
        g = gaps_of(seq)
        m = min(n, g.length)
        pieces = args.cdf_grid.split(":")
        if len(pieces) != 3:
            raise ValueError(f"--cdf-grid must be 'lo:hi:step', got {args.cdf_grid!r}")
        lo, hi, step = (float(p) for p in pieces)
        if not step > 0:
            raise ValueError("--cdf-grid step must be positive")
        lines = ["x,F"]
        k = 0
        x = lo
        while x <= hi * (1 + 1e-15) + 1e-300:
            lines.append(f"{_fmt(x)},{_fmt(gap_cdf(g, x, m))}")
            k += 1
            x = lo + k * step
        text = "\n".join(lines) + "\n"
        if args.cdf_out:
            with open(args.cdf_out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


def cmd_partition(args) -> int:
    seq = ingest_and_unfold(args.input, "raw")
    g = gaps_of(seq)
    n = args.n if args.n is not None else g.length
    threshold = args.threshold
    budget = args.budget if args.budget is not None else threshold
    params = {
        "input": str(args.input),
        "n": n,
        "threshold": threshold,
        "budget": budget,
        "check": bool(args.check),
    }
    manifest = _manifest("partition", params, input_path=args.input)
    blocks = maximal_blocks(g, n, threshold)
    any_violation = False
    for block in blocks.blocks:
        p = greedy_partition(g, block, budget)
        sandwiched = sorted(sandwiched_indices(p))
        doc = {
            "parent": [block.left, block.right],
            "parts": [[part.left, part.right] for part in p.parts],
            "ranks": list(p.selection_rank),
            "sums": [float(s) for s in p.sums],
            "sandwiched": sandwiched,
            "manifest": manifest,
        }
        if args.check:
            adjacent_ok = all(
                verify_adjacent_bound(p, g, k, budget).ok for k in range(1, p.size)
            )
            sandwich_ok = all(
                verify_sandwich_bound(p, g, k, budget).ok for k in sandwiched
            )
            doc["check"] = {"adjacent_ok": adjacent_ok, "sandwich_ok": sandwich_ok}
            if not (adjacent_ok and sandwich_ok):
                any_violation = True
        print(_dumps(doc))
    return 1 if any_violation else 0


def cmd_verify_lemma512(args) -> int:
    workers = _worker_count()
    result = lemma512_exhaustive(args.lmax, workers=workers)
    expected = math.comb(args.lmax + 3, 4)
    doc = {
        "lmax": args.lmax,
        "checked": result.checked,
        "expected_checked": expected,
        "counterexamples": [list(c) for c in result.counterexamples],
    }
    failed = bool(result.counterexamples) or result.checked != expected
    if args.real_samples:
        violations = lemma512_random_real(args.real_samples, float(args.lmax), args.seed)
        doc["real_samples"] = args.real_samples
        doc["real_violations"] = [
            {"a": v.a, "b": v.b, "c": v.c, "l": v.l, "gap": v.gap} for v in violations
        ]
        failed = failed or bool(violations)
    doc["manifest"] = _manifest(
        "verify lemma512",
        {"lmax": args.lmax, "real_samples": args.real_samples, "workers": workers},
        seed=args.seed,
    )
    print(_dumps(doc))
    return 1 if failed else 0


def cmd_verify_bias(args) -> int:
    rng = np.random.default_rng(args.seed)
    violations = []
    for _ in range(args.samples):
        length = int(rng.integers(1, args.max_len + 1))
        raw = rng.uniform(0.0, 1.0, length)
        total = 0.5 * (1.0 - rng.random())  # target sum in (0, 1/2]
        raw_sum = float(raw.sum())
        if raw_sum == 0.0:
            continue
        gaps = raw * (total / raw_sum)
        check = bias_check(GapSequence(gaps))
        if not check.ok:
            violations.append(
                {"gaps": [float(x) for x in gaps], "lhs": check.lhs, "rhs": check.rhs}
            )
    doc = {
        "samples": args.samples,
        "max_len": args.max_len,
        "violation_count": len(violations),
        "violations": violations[:10],
        "manifest": _manifest(
            "verify bias", {"samples": args.samples, "max_len": args.max_len}, seed=args.seed
        ),
    }
    print(_dumps(doc))
    return 1 if violations else 0


def cmd_verify_final_ineq(args) -> int:
    value = final_inequality(args.epsilon)
    verdict = (
        "inequality fails; contradiction stands"
        if value < 0
        else "inequality holds; no contradiction at this epsilon"
    )
    doc = {
        "epsilon": args.epsilon,
        "value": value,
        "verdict": verdict,
        "manifest": _manifest("verify final-ineq", {"epsilon": args.epsilon}),
    }
    print(_dumps(doc))
    return 0


def cmd_audit(args) -> int:
    seq = ingest_and_unfold(args.input, "raw")
    report = audit(seq, AuditConfig(epsilon=args.epsilon, n=args.n, budget=args.budget))
    doc = report.to_dict()
    doc["manifest"] = _manifest(
        "audit",
        {
            "input": str(args.input),
            "epsilon": args.epsilon,
            "n": args.n,
            "budget": args.budget,
        },
        input_path=args.input,
    )
    print(_dumps(doc))
    return 0


def cmd_ingest(args) -> int:
    seq = ingest_and_unfold(args.input, args.mode)
    if args.normalize:
        seq = normalize_mean_gap(seq)
    write_sequence(args.output, seq)
    params = {
        "input": str(args.input),
        "mode": args.mode,
        "normalize": bool(args.normalize),
        "output": str(args.output),
    }
    doc = {
        "written": str(args.output),
        "n_points": seq.n,
        "manifest": _manifest("ingest", params, input_path=args.input),
    }
    with open(str(args.output) + ".manifest.json", "w", encoding="utf-8") as fh:
        fh.write(_dumps(doc) + "\n")
    print(_dumps(doc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppclab",
        description="Pair-correlation statistics, gap partitions, and inequality audits.",
        epilog="Exit codes: 0 ok, 1 verified violation or failed check, 2 usage/input error.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated sequence file plus manifest sidecar")
    p.add_argument("--kind", required=True, choices=["poisson", "capped", "quadratic_form"])
    p.add_argument("--n", required=True, type=int, help="number of points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=float, default=None, help="gap cap for the capped kind")
    p.add_argument("--alpha", type=float, default=math.sqrt(2.0), help="quadratic form coefficient")
    p.add_argument("--cutoff", type=float, default=None, help="quadratic form enumeration cutoff")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser(
        "analyze",
        help="pair-correlation reports (JSON) and gap CDF samples (CSV)",
        description="Counting uses ordered pairs: intervals containing both signs "
        "count each unordered pair twice. Intervals default to half-open [lo, hi).",
    )
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, default=None, help="prefix length (default: all points)")
    p.add_argument(
        "--interval",
        action="append",
        metavar="LO,HI",
        help="repeatable; use --interval=-1.5,-0.5 for negative endpoints",
    )
    group = p.add_mutually_exclusive_group()
    group.add_argument("--closed", action="store_true", help="treat intervals as closed on both ends")
    group.add_argument("--open", action="store_true", help="treat intervals as open on both ends")
    p.add_argument("--cdf-grid", metavar="LO:HI:STEP", help="emit gap CDF samples on this grid")
    p.add_argument("--cdf-out", default=None, help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("partition", help="greedy partition of each maximal low-gap block (JSON per block)")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, default=None, help="number of gaps to use (default: all)")
    p.add_argument("--threshold", type=float, default=0.5, help="block membership threshold")
    p.add_argument("--budget", type=float, default=None, help="per-part sum budget (default: threshold)")
    p.add_argument("--check", action="store_true", help="verify cross-pair lower bounds; exit 1 on violation")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("verify", help="inequality verifiers")
    vsub = p.add_subparsers(dest="verify_command", required=True)

    v = vsub.add_parser("lemma512", help="exhaustive integer sweep of the quadratic lower bound")
    v.add_argument("--lmax", required=True, type=int)
    v.add_argument("--real-samples", type=int, default=0, help="additional random real-tuple fuzzing")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify_lemma512)

    v = vsub.add_parser("bias", help="randomized check of the small-window bias bound")
    v.add_argument("--samples", required=True, type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-len", type=int, default=64)
    v.set_defaults(func=cmd_verify_bias)

    v = vsub.add_parser("final-ineq", help="evaluate the closing epsilon inequality")
    v.add_argument("--epsilon", required=True, type=float)
    v.set_defaults(func=cmd_verify_final_ineq)

    p = sub.add_parser("audit", help="finite-N evaluation of the whole inequality chain (JSON)")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", required=True, type=float)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--budget", type=float, default=0.5)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("ingest", help="read, validate, optionally unfold, and rewrite a sequence file")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=["raw", "zeta_unfold"], default="raw")
    p.add_argument("--normalize", action="store_true", help="rescale to mean gap 1 after ingestion")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_ingest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream consumer (e.g. head) closed the pipe; not an input error
        try:
            sys.stdout.close()
        except OSError:
            pass
        return 0
    except SequenceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: sampling, synthetic suites, and evaluation.

Subcommands:

    sample  select keyframes from a feature file (ISF or CSV) and write the
            selection as JSON
    synth   write a synthetic benchmark suite (ISF + truth JSON + manifest)
    eval    run samplers over a suite manifest and report R/ER/CR/Dist

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error. The
INFOSHOT_LOG environment variable (error|warn|info|debug) controls log
verbosity. All commands are deterministic given their flags and seeds.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .baselines import load_score_track, medoid_sample, topk_by_score, uniform_sample
from .errors import InfoShotError, LengthMismatchError
from .evaluator import evaluate_suite
from .features import BudgetSpec, load_features, resolve_budget
from .keyframer import KeyframerConfig, sample_with_partition
from .segmenter import SegmenterConfig
from .synthgen import (
    BENCHMARK_DIM,
    BENCHMARK_FPS,
    BENCHMARK_FRAMES,
    BENCHMARK_MIN_SHOT,
    BENCHMARK_WALK_SIGMA,
    DEFAULT_BENCHMARK_COUNT,
    SyntheticTruth,
    benchmark_spec,
    generate,
)
from .features import save_features

logger = logging.getLogger("infoshot")

METHODS = ("infoshot", "uniform", "topk", "medoid")

# Shape of the JSON written by `infoshot eval --report`.
REPORT_SCHEMA = {
    "type": "object",
    "required": ["budget", "methods"],
    "additionalProperties": False,
    "properties": {
        "budget": {
            "type": "object",
            "required": ["mode", "rate", "count"],
            "properties": {
                "mode": {"enum": ["rate", "count"]},
                "rate": {"type": ["number", "null"]},
                "count": {"type": ["integer", "null"]},
            },
        },
        "methods": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": {
                "type": "object",
                "required": [
                    "frame_recall",
                    "event_recall",
                    "complete_coverage",
                    "distortion",
                    "per_video",
                ],
                "properties": {
                    "frame_recall": {"type": ["number", "null"]},
                    "event_recall": {"type": ["number", "null"]},
                    "complete_coverage": {"type": ["number", "null"]},
                    "distortion": {"type": "number"},
                    "per_video": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": [
                                "video_id", "K", "hit",
                                "events_total", "events_hit", "dist",
                            ],
                            "properties": {
                                "video_id": {"type": "string"},
                                "K": {"type": "integer", "minimum": 1},
                                "hit": {"type": "boolean"},
                                "events_total": {"type": "integer", "minimum": 0},
                                "events_hit": {"type": "integer", "minimum": 0},
                                "dist": {"type": "number"},
                            },
                        },
                    },
                },
            },
        },
    },
}

_LOG_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infoshot", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sample = sub.add_parser("sample", help="select keyframes from a feature file")
    p_sample.add_argument("--features", required=True, help="ISF or CSV feature file")
    p_sample.add_argument("--fps", type=float, default=None,
                          help="sampling grid fps for CSV inputs (ISF carries its own)")
    p_sample.add_argument("--rate", type=float, default=None,
                          help="budget as sampled frames per second")
    p_sample.add_argument("--count", type=int, default=None, help="budget as a frame count")
    p_sample.add_argument("--method", choices=METHODS, default="infoshot")
    p_sample.add_argument("--scores", default=None, help="score track for --method topk")
    p_sample.add_argument("--seed", type=int, default=0, help="seed for --method medoid")
    p_sample.add_argument("--lambda", dest="common_weight", type=float, default=0.7,
                          help="common-frame weight")
    p_sample.add_argument("--alpha", dest="unique_weight", type=float, default=0.5,
                          help="unique-frame weight")
    p_sample.add_argument("--neighborhood", type=int, default=1)
    p_sample.add_argument("--window-min", type=int, default=3)
    p_sample.add_argument("--window-max", type=int, default=15)
    p_sample.add_argument("--shot-min", type=int, default=3)
    p_sample.add_argument("--shot-max", type=int, default=300)
    p_sample.add_argument("--block-size", type=int, default=600)
    p_sample.add_argument("--out", default=None, help="keyframe JSON path (default: stdout)")
    p_sample.add_argument("--partition-out", default=None,
                          help="also dump the shot partition as JSON (infoshot only)")

    p_synth = sub.add_parser("synth", help="generate a synthetic benchmark suite")
    p_synth.add_argument("--out-dir", required=True)
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--count", type=int, default=DEFAULT_BENCHMARK_COUNT)
    p_synth.add_argument("--frames", type=int, default=BENCHMARK_FRAMES)
    p_synth.add_argument("--dim", type=int, default=BENCHMARK_DIM)
    p_synth.add_argument("--shots", type=int, default=3)
    p_synth.add_argument("--fps", type=float, default=BENCHMARK_FPS)
    p_synth.add_argument("--walk-sigma", type=float, default=BENCHMARK_WALK_SIGMA)
    p_synth.add_argument("--anomaly-scale", type=float, default=None,
                         help="default: 10x walk sigma")
    p_synth.add_argument("--mode", choices=("heavy_tail", "high_variance"),
                         default="heavy_tail")

    p_eval = sub.add_parser("eval", help="evaluate samplers over a suite manifest")
    p_eval.add_argument("--manifest", required=True)
    p_eval.add_argument("--rate", type=float, default=None)
    p_eval.add_argument("--count", type=int, default=None)
    p_eval.add_argument("--methods", required=True, help="comma-separated method names")
    p_eval.add_argument("--report", default=None,
                        help="JSON report path; per-method CSVs land next to it")
    p_eval.add_argument("--jobs", type=int, default=1)
    p_eval.add_argument("--seed", type=int, default=0, help="seed for the medoid method")
    p_eval.add_argument("--scores-dir", default=None,
                        help="directory of <id>.csv score tracks for the topk method")
    return parser


def _budget_from_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> BudgetSpec:
    if (args.rate is None) == (args.count is None):
        parser.error("exactly one of --rate or --count is required")
    if args.rate is not None:
        if args.rate <= 0:
            parser.error("budget must be positive (--rate > 0)")
        return BudgetSpec.from_rate(args.rate)
    if args.count <= 0:
        parser.error("budget must be positive (--count > 0)")
    return BudgetSpec.from_count(args.count)


def _write_json(path: str | Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_sample(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    budget = _budget_from_args(parser, args)
    if args.method == "topk" and not args.scores:
        parser.error("--method topk requires --scores")
    seq = load_features(args.features, fps=args.fps)
    k = resolve_budget(budget, seq)
    shots = 0
    if args.method == "infoshot":
        seg_cfg = SegmenterConfig(args.window_min, args.window_max,
                                  args.shot_min, args.shot_max)
        key_cfg = KeyframerConfig(args.common_weight, args.unique_weight,
                                  args.neighborhood)
        selected, partition = sample_with_partition(
            seq, budget, seg_cfg, key_cfg, block_size=args.block_size
        )
        shots = partition.realized_shots
        payload = selected.to_json()
        if args.partition_out:
            _write_json(args.partition_out, partition.to_json())
        count = len(selected.entries)
    else:
        if args.method == "uniform":
            indices = uniform_sample(seq.frame_count, k)
            scores = [0.0] * len(indices)
        elif args.method == "topk":
            track = load_score_track(args.scores)
            if len(track) != seq.frame_count:
                raise LengthMismatchError(
                    f"score track length {len(track)} != frame count {seq.frame_count}"
                )
            indices = topk_by_score(track, k)
            scores = [float(track.scores[i]) for i in indices]
        else:
            indices = medoid_sample(seq, k, seed=args.seed)
            scores = [0.0] * len(indices)
        payload = {
            "budget": k,
            "frames": [
                {"index": int(i), "role": "common", "shot": -1, "score": s}
                for i, s in zip(indices, scores)
            ],
        }
        count = len(indices)
    summary = f"T={seq.frame_count} K={k} shots={shots} selected={count}"
    if args.out:
        _write_json(args.out, payload)
        print(summary)
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
        print(summary, file=sys.stderr)
    return 0


def _cmd_synth(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    if args.count < 1 or args.frames < 1 or args.dim < 1 or args.shots < 1:
        parser.error("--count, --frames, --dim and --shots must be positive")
    if args.shots > args.frames:
        parser.error("--shots cannot exceed --frames")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    min_shot = max(1, min(BENCHMARK_MIN_SHOT, args.frames // args.shots))
    ids = []
    for i in range(args.count):
        spec = benchmark_spec(
            args.seed, i, frames=args.frames, dim=args.dim, shots=args.shots,
            min_shot=min_shot, walk_sigma=args.walk_sigma,
            anomaly_scale=args.anomaly_scale, anomaly_mode=args.mode, fps=args.fps,
        )
        seq, truth = generate(spec)
        video_id = f"seq_{i:04d}"
        save_features(seq, out_dir / f"{video_id}.isf")
        _write_json(out_dir / f"{video_id}.truth.json", truth.to_json())
        ids.append(video_id)
        logger.info("wrote %s (T=%d)", video_id, seq.frame_count)
    _write_json(
        out_dir / "manifest.json",
        {
            "ids": ids,
            "spec": {
                "seed": args.seed,
                "count": args.count,
                "frames": args.frames,
                "dim": args.dim,
                "shots": args.shots,
                "min_shot": min_shot,
                "fps": args.fps,
                "walk_sigma": args.walk_sigma,
                "anomaly_scale": (
                    10.0 * args.walk_sigma if args.anomaly_scale is None else args.anomaly_scale
                ),
                "mode": args.mode,
            },
        },
    )
    print(f"wrote {len(ids)} sequences to {out_dir}")
    return 0


def _method_samples(method, seq, k, args):
    if method == "infoshot":
        selected, _ = sample_with_partition(seq, BudgetSpec.from_count(k))
        return selected.indices
    if method == "uniform":
        return uniform_sample(seq.frame_count, k)
    if method == "medoid":
        return medoid_sample(seq, k, seed=args.seed)
    raise AssertionError(method)


def _cmd_eval(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    budget = _budget_from_args(parser, args)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not methods:
        parser.error("--methods must name at least one method")
    for m in methods:
        if m not in METHODS:
            parser.error(f"unknown method {m!r} (choose from {', '.join(METHODS)})")
    if "topk" in methods and not args.scores_dir:
        parser.error("method topk requires --scores-dir")
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")

    manifest_path = Path(args.manifest)
    with open(manifest_path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    suite_dir = manifest_path.parent
    ids = manifest["ids"]

    def run_video(video_id: str):
        seq = load_features(suite_dir / f"{video_id}.isf")
        with open(suite_dir / f"{video_id}.truth.json", "r", encoding="utf-8") as fh:
            truth = SyntheticTruth.from_json(json.load(fh))
        k = resolve_budget(budget, seq)
        samples = {}
        for method in methods:
            if method == "topk":
                track = load_score_track(Path(args.scores_dir) / f"{video_id}.csv")
                samples[method] = topk_by_score(track, k)
            else:
                samples[method] = _method_samples(method, seq, k, args)
        return seq, truth, k, samples

    if args.jobs == 1:
        results = [run_video(v) for v in ids]
    else:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_video, ids))

    reports = {}
    for method in methods:
        videos = [(seq, truth, samples[method]) for seq, truth, _, samples in results]
        budgets = [k for _, _, k, _ in results]
        reports[method] = evaluate_suite(videos, budgets=budgets, video_ids=ids)

    _print_table(methods, reports)
    if args.report:
        report_path = Path(args.report)
        payload = {
            "budget": {"mode": budget.mode, "rate": budget.rate, "count": budget.count},
            "methods": {m: reports[m].to_json() for m in methods},
        }
        _write_json(report_path, payload)
        for method in methods:
            csv_path = report_path.with_name(report_path.stem + f".{method}.csv")
            with open(csv_path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["video_id", "K", "hit", "events_total", "events_hit", "dist"])
                for row in reports[method].per_video:
                    writer.writerow([
                        row["video_id"], row["K"], int(row["hit"]),
                        row["events_total"], row["events_hit"], repr(row["dist"]),
                    ])
    return 0


def _print_table(methods, reports) -> None:
    def fmt(value) -> str:
        return "   -  " if value is None else f"{value:6.4f}"

    print(f"{'method':<10} {'R':>6} {'ER':>6} {'CR':>6} {'Dist':>8}")
    for method in methods:
        rep = reports[method]
        print(
            f"{method:<10} {fmt(rep.frame_recall)} {fmt(rep.event_recall)} "
            f"{fmt(rep.complete_coverage)} {rep.distortion:8.6f}"
        )


def main(argv: list[str] | None = None) -> int:
    level = _LOG_LEVELS.get(os.environ.get("INFOSHOT_LOG", "warn").lower(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sample":
            return _cmd_sample(parser, args)
        if args.command == "synth":
            return _cmd_synth(parser, args)
        return _cmd_eval(parser, args)
    except (InfoShotError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

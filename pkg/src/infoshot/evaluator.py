"""Sampler-quality metrics: frame recall, event recall, coverage, distortion.

Frame recall marks a video as hit when the sampled set intersects its
anomaly frames; the suite-level value averages hits over videos that have
anomalies at all. Event recall counts annotated intervals containing at
least one sample; complete coverage counts videos whose every event is hit.
Distortion measures feature-space coverage: one minus the mean, over all
frames, of each frame's best affinity to any sampled frame (lower is
better, 0 when the samples cover every distinct feature value).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptySampleSetError,
    EmptySuiteError,
    IndexOutOfRangeError,
    MissingFpsError,
)
from .features import FeatureSequence
from .synthgen import SyntheticTruth

UNIT_SECONDS = "seconds"
UNIT_FRAMES = "frames"


@dataclass(frozen=True)
class EventAnnotation:
    """Annotated event intervals, in seconds (with fps) or directly in frames."""

    intervals: tuple[tuple[float, float], ...]
    fps: float | None = None
    unit: str = UNIT_SECONDS

    def __post_init__(self) -> None:
        if self.unit not in (UNIT_SECONDS, UNIT_FRAMES):
            raise ValueError(f"unknown interval unit {self.unit!r}")
        intervals = tuple((float(a), float(b)) for a, b in self.intervals)
        if any(a > b or a < 0 for a, b in intervals):
            raise ValueError("event intervals need 0 <= start <= end")
        object.__setattr__(self, "intervals", intervals)

    def frame_windows(self) -> tuple[tuple[int, int], ...]:
        """Inclusive [first, last] frame windows for each event.

        Second-valued intervals map through floor/ceil so a sub-frame event
        still defines a non-empty window.
        """
        if self.unit == UNIT_FRAMES:
            return tuple((int(a), int(b)) for a, b in self.intervals)
        if self.fps is None:
            raise MissingFpsError("intervals are in seconds but fps is unknown")
        return tuple(
            (math.floor(a * self.fps), math.ceil(b * self.fps)) for a, b in self.intervals
        )


@dataclass(frozen=True)
class EvalReport:
    """Aggregate metrics plus one row per (video, method-run).

    Metrics that have an empty denominator (e.g. frame recall on a suite
    without any anomalies) are None.
    """

    frame_recall: float | None
    event_recall: float | None
    complete_coverage: float | None
    distortion: float
    per_video: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "frame_recall": self.frame_recall,
            "event_recall": self.event_recall,
            "complete_coverage": self.complete_coverage,
            "distortion": self.distortion,
            "per_video": list(self.per_video),
        }


def frame_recall(samples: Iterable[int], anomaly_frames: Iterable[int]) -> bool:
    """True when at least one sampled index is an anomaly frame."""
    return bool(set(samples) & set(anomaly_frames))


def event_metrics(
    samples: Iterable[int], annotation: EventAnnotation
) -> tuple[tuple[bool, ...], bool]:
    """Per-event hit flags and whether every event was hit.

    An event is hit when some sampled index lies inside its inclusive frame
    window. A video without events vacuously reports all_hit=True; suite
    aggregation excludes such videos from the coverage denominator.
    """
    sampled = sorted(set(int(s) for s in samples))
    hits = tuple(
        any(first <= s <= last for s in sampled)
        for first, last in annotation.frame_windows()
    )
    return hits, all(hits)


def distortion(seq: FeatureSequence, samples: Iterable[int]) -> float:
    """1 - mean over frames of the best affinity to any sampled frame.

    Requires a normalized sequence and a non-empty sample set. Computed in
    row blocks so memory stays O(block * |samples|).
    """
    if not seq.normalized:
        raise ValueError("distortion requires a normalized sequence")
    sampled = sorted(set(int(s) for s in samples))
    if not sampled:
        raise EmptySampleSetError("distortion is undefined for an empty sample set")
    t = seq.frame_count
    if sampled[0] < 0 or sampled[-1] >= t:
        raise IndexOutOfRangeError(f"sample indices outside [0, {t})")
    frames = np.ascontiguousarray(seq.frames, dtype=np.float64)
    anchors = np.ascontiguousarray(frames[sampled])
    best = np.empty(t, dtype=np.float64)
    step = 600
    for lo in range(0, t, step):
        hi = min(lo + step, t)
        sims = np.einsum("ij,kj->ik", frames[lo:hi], anchors)
        best[lo:hi] = sims.max(axis=1)
    return float(1.0 - best.mean())


def evaluate_suite(
    videos: Sequence[tuple[FeatureSequence, SyntheticTruth, Iterable[int]]],
    budgets: Sequence[int] | None = None,
    video_ids: Sequence[str] | None = None,
) -> EvalReport:
    """Aggregate metrics over (sequence, truth, samples) triples.

    Frame recall averages over videos with anomalies; event recall pools
    events across the suite; complete coverage averages over videos with at
    least one event; distortion averages over every video. ``budgets``
    records the K each run was allowed (defaults to the sample count).
    """
    if len(videos) == 0:
        raise EmptySuiteError("cannot evaluate an empty suite")
    if budgets is not None and len(budgets) != len(videos):
        raise ValueError("budgets must align with videos")
    if video_ids is not None and len(video_ids) != len(videos):
        raise ValueError("video_ids must align with videos")

    rows = []
    recall_hits: list[bool] = []
    events_hit_total = 0
    events_total = 0
    covered: list[bool] = []
    distortions: list[float] = []
    for i, (seq, truth, samples) in enumerate(videos):
        seq_n = seq
        if not seq_n.normalized:
            from .features import l2_normalize

            seq_n = l2_normalize(seq)
        sampled = sorted(set(int(s) for s in samples))
        annotation = EventAnnotation(
            truth.event_intervals, fps=truth.fps, unit=UNIT_FRAMES
        )
        hits, all_hit = event_metrics(sampled, annotation)
        hit = frame_recall(sampled, truth.anomaly_frames)
        dist = distortion(seq_n, sampled)
        if truth.anomaly_frames:
            recall_hits.append(hit)
        if hits:
            events_total += len(hits)
            events_hit_total += sum(hits)
            covered.append(all_hit)
        distortions.append(dist)
        rows.append(
            {
                "video_id": video_ids[i] if video_ids else f"video_{i:04d}",
                "K": int(budgets[i]) if budgets is not None else len(sampled),
                "hit": bool(hit),
                "events_total": len(hits),
                "events_hit": int(sum(hits)),
                "dist": dist,
            }
        )

    return EvalReport(
        frame_recall=float(np.mean(recall_hits)) if recall_hits else None,
        event_recall=events_hit_total / events_total if events_total else None,
        complete_coverage=float(np.mean(covered)) if covered else None,
        distortion=float(np.mean(distortions)),
        per_video=tuple(rows),
    )

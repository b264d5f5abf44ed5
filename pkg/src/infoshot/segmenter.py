"""Boundary scoring and greedy splitting of the timeline into shots.

A candidate boundary t inside a segment is scored by comparing two adjacent
windows, {t-k, ..., t-1} before the cut and {t, ..., t+k-1} after it:

    score = (cohesion_after + cohesion_before) / 2 - cross

where a window's cohesion is the exact mean affinity over ordered pairs of
distinct frames in the window (1.0 for a single-frame window) and cross is
the mean affinity over all pairs straddling the cut. High scores mean the
two sides are each self-consistent but dissimilar to one another.

Splitting is greedy: always cut the segment whose best admissible candidate
scores highest, until the target shot count is reached, then keep cutting
any segment that exceeds the maximum shot length while a cut is admissible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .affinity import AffinityView, block_affinity, shot_affinity
from .errors import WindowOutOfSegmentError

IndexRange = tuple[int, int]


@dataclass(frozen=True)
class SegmenterConfig:
    """Window and shot-length constraints for boundary search."""

    window_min: int = 3
    window_max: int = 15
    min_shot_len: int = 3
    max_shot_len: int = 300

    def __post_init__(self) -> None:
        if not 1 <= self.window_min <= self.window_max:
            raise ValueError("need 1 <= window_min <= window_max")
        if not 1 <= self.min_shot_len <= self.max_shot_len:
            raise ValueError("need 1 <= min_shot_len <= max_shot_len")

    def window_size(self, segment_len: int) -> int:
        """Window for a segment: len // 20 clamped to [window_min, window_max].

        Reaches window_max at segment length 20 * window_max (300 with the
        defaults) and stays at window_min for short segments.
        """
        return min(max(segment_len // 20, self.window_min), self.window_max)


@dataclass(frozen=True)
class ShotPartition:
    """Ordered, contiguous, non-overlapping segments tiling [0, T).

    scores holds the boundary score of each realized split, in split order
    (one entry per cut performed).
    """

    segments: tuple[IndexRange, ...]
    scores: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        segs = tuple((int(a), int(b)) for a, b in self.segments)
        if not segs:
            raise ValueError("partition needs at least one segment")
        if segs[0][0] != 0:
            raise ValueError("first segment must start at 0")
        for (a, b), (c, _) in zip(segs, segs[1:]):
            if b != c:
                raise ValueError(f"segments not contiguous at {b} != {c}")
        if any(a >= b for a, b in segs):
            raise ValueError("every segment must be non-empty")
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "scores", tuple(float(s) for s in self.scores))

    @property
    def realized_shots(self) -> int:
        return len(self.segments)

    @property
    def frame_count(self) -> int:
        return self.segments[-1][1]

    def boundaries(self) -> tuple[int, ...]:
        """Start indices of all segments except the first."""
        return tuple(a for a, _ in self.segments[1:])

    def to_json(self) -> dict:
        return {
            "segments": [[a, b] for a, b in self.segments],
            "scores": list(self.scores),
            "realized_shots": self.realized_shots,
        }


def _window_stats(gram: np.ndarray, mid: int, ke: int) -> float:
    """Boundary score from a dense affinity block; mid is the cut's local row."""
    before = gram[mid - ke : mid, mid - ke : mid]
    after = gram[mid : mid + ke, mid : mid + ke]
    cross = gram[mid : mid + ke, mid - ke : mid]
    if ke == 1:
        coh_before = coh_after = 1.0
    else:
        pairs = ke * (ke - 1)
        coh_before = (before.sum() - np.trace(before)) / pairs
        coh_after = (after.sum() - np.trace(after)) / pairs
    return float(0.5 * (coh_after + coh_before) - cross.mean())


def boundary_score(view: AffinityView, t: int, k: int, segment: IndexRange) -> float:
    """Score a candidate boundary at t inside segment with window size k.

    Near segment edges the window is shrunk symmetrically; it never drops
    below one frame per side, so t must leave at least one frame on each
    side of the cut (otherwise WindowOutOfSegmentError).
    """
    a, b = int(segment[0]), int(segment[1])
    if k < 1:
        raise ValueError(f"window size must be >= 1, got {k}")
    if not (a + 1 <= t <= b - 1):
        raise WindowOutOfSegmentError(
            f"cut at {t} leaves an empty window inside segment [{a}, {b})"
        )
    ke = min(k, t - a, b - t)
    gram = block_affinity(view, (t - ke, t + ke), (t - ke, t + ke))
    return _window_stats(gram, ke, ke)


def best_split(
    view: AffinityView, segment: IndexRange, cfg: SegmenterConfig
) -> tuple[int, float] | None:
    """Best admissible cut of a segment, or None when no cut is admissible.

    Candidates leave both children at least min_shot_len long; the window is
    window_size(len). Ties break to the smallest t.
    """
    a, b = int(segment[0]), int(segment[1])
    lo = a + cfg.min_shot_len
    hi = b - cfg.min_shot_len
    if lo > hi:
        return None
    k = cfg.window_size(b - a)
    # Fast path: when the segment fits in one block, compute its dense
    # affinity once and slice window sums out of it. Entry bits and the sums
    # over same-shape views match the per-candidate path exactly.
    if b - a <= view.block_size:
        gram = shot_affinity(view, (a, b), max_len=b - a)
        scores = [
            _window_stats(gram, t - a, min(k, t - a, b - t)) for t in range(lo, hi + 1)
        ]
    else:
        scores = [boundary_score(view, t, k, (a, b)) for t in range(lo, hi + 1)]
    best = int(np.argmax(scores))
    return lo + best, float(scores[best])


def greedy_segment(view: AffinityView, target_shots: int, cfg: SegmenterConfig) -> ShotPartition:
    """Greedily split [0, T) toward target_shots segments.

    Each round cuts the segment whose best admissible split scores highest
    (ties: earliest segment start). The loop stops at target_shots or when
    nothing is splittable; afterwards, any segment longer than max_shot_len
    that still admits a split keeps being cut (largest segment first), so the
    realized shot count may exceed the target. All tie-breaking is "smallest
    index / earliest segment" so results are deterministic.
    """
    if target_shots < 1:
        raise ValueError(f"target shot count must be >= 1, got {target_shots}")
    segments: list[IndexRange] = [(0, view.frame_count)]
    scores: list[float] = []
    memo: dict[IndexRange, tuple[int, float] | None] = {}

    def lookup(seg: IndexRange) -> tuple[int, float] | None:
        if seg not in memo:
            memo[seg] = best_split(view, seg, cfg)
        return memo[seg]

    def cut(idx: int, t: int, score: float) -> None:
        a, b = segments[idx]
        segments[idx : idx + 1] = [(a, t), (t, b)]
        scores.append(score)

    while len(segments) < target_shots:
        candidates = [
            (split[1], a, i, split[0])
            for i, (a, b) in enumerate(segments)
            if (split := lookup((a, b))) is not None
        ]
        if not candidates:
            break
        score, _, idx, t = max(candidates, key=lambda c: (c[0], -c[1]))
        cut(idx, t, score)

    while True:
        oversize = [
            (b - a, a, i)
            for i, (a, b) in enumerate(segments)
            if b - a > cfg.max_shot_len and lookup((a, b)) is not None
        ]
        if not oversize:
            break
        _, _, idx = max(oversize, key=lambda c: (c[0], -c[1]))
        t, score = lookup(segments[idx])  # type: ignore[misc]
        cut(idx, t, score)

    return ShotPartition(tuple(segments), tuple(scores))

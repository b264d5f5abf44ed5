"""Synthetic feature sequences with planted boundaries and transient anomalies.

Frames follow a piecewise random walk: at each shot start the state is drawn
fresh from an isotropic Gaussian of scale shot_mean_scale; within a shot the
state takes Gaussian steps of scale walk_sigma. During a planted anomaly
interval the *observation* is replaced by an outlier draw (heavy-tailed or
high-variance Gaussian) while the underlying walk continues untouched, so
the shot resumes where it left off once the event ends — anomalies are
transient, they do not teleport the shot. With renormalize on (the default)
the walk lives on the unit sphere and every emitted frame is unit length.

Ground truth (boundary indices, anomaly frames, event intervals) is recorded
from the generative draws themselves, never inferred.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpecError
from .features import FeatureSequence

DEFAULT_BENCHMARK_COUNT = 200
BENCHMARK_FRAMES = 300
BENCHMARK_FPS = 10.0
BENCHMARK_DIM = 256
BENCHMARK_MIN_SHOT = 60
BENCHMARK_WALK_SIGMA = 5e-4

Seed = int | tuple[int, ...]


@dataclass(frozen=True)
class SyntheticSpec:
    """Generation parameters; fully determines the output together with seed."""

    dim: int
    shots: tuple[int, ...]
    shot_mean_scale: float = 1.0
    walk_sigma: float = 1e-3
    anomaly_intervals: tuple[tuple[int, int], ...] = ()
    anomaly_mode: str = "heavy_tail"
    anomaly_scale: float = 1e-2
    seed: Seed = 0
    renormalize: bool = True
    fps: float = 24.0

    def __post_init__(self) -> None:
        shots = tuple(int(s) for s in self.shots)
        intervals = tuple((int(a), int(n)) for a, n in self.anomaly_intervals)
        object.__setattr__(self, "shots", shots)
        object.__setattr__(self, "anomaly_intervals", intervals)
        if self.dim < 1:
            raise InvalidSpecError(f"dim must be >= 1, got {self.dim}")
        if not shots or any(s < 1 for s in shots):
            raise InvalidSpecError("need at least one shot, every length >= 1")
        if self.anomaly_mode not in ("heavy_tail", "high_variance"):
            raise InvalidSpecError(f"unknown anomaly mode {self.anomaly_mode!r}")
        if self.shot_mean_scale < 0 or self.walk_sigma < 0 or self.anomaly_scale < 0:
            raise InvalidSpecError("scales must be non-negative")
        total = sum(shots)
        last_end = -1
        for start, length in sorted(intervals):
            if length < 1:
                raise InvalidSpecError(f"anomaly interval length {length} < 1")
            if start < 0 or start + length > total:
                raise InvalidSpecError(
                    f"anomaly interval ({start}, {length}) outside [0, {total})"
                )
            if start <= last_end:
                raise InvalidSpecError("anomaly intervals overlap")
            last_end = start + length - 1

    @property
    def frame_count(self) -> int:
        return sum(self.shots)


@dataclass(frozen=True)
class SyntheticTruth:
    """Exact frame-level ground truth for one generated sequence."""

    boundary_indices: tuple[int, ...]
    event_intervals: tuple[tuple[int, int], ...]  # inclusive [a, b] frame pairs
    fps: float
    anomaly_frames: frozenset[int] = field(init=False)

    def __post_init__(self) -> None:
        frames = frozenset(
            t for a, b in self.event_intervals for t in range(a, b + 1)
        )
        object.__setattr__(self, "anomaly_frames", frames)

    def to_json(self) -> dict:
        return {
            "boundaries": list(self.boundary_indices),
            "events": [[a, b] for a, b in self.event_intervals],
            "fps": self.fps,
        }

    @classmethod
    def from_json(cls, payload: dict) -> "SyntheticTruth":
        return cls(
            tuple(int(b) for b in payload["boundaries"]),
            tuple((int(a), int(b)) for a, b in payload["events"]),
            float(payload["fps"]),
        )


def _unit(vec: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        out = np.zeros_like(vec)
        out[0] = 1.0
        return out
    return vec / norm


def generate(spec: SyntheticSpec) -> tuple[FeatureSequence, SyntheticTruth]:
    """Generate one sequence and its ground truth; pure function of the spec."""
    rng = np.random.default_rng(spec.seed)
    total = spec.frame_count
    starts = set(np.cumsum(spec.shots)[:-1].tolist()) | {0}
    anomalous = np.zeros(total, dtype=bool)
    for a, length in spec.anomaly_intervals:
        anomalous[a : a + length] = True

    frames = np.empty((total, spec.dim), dtype=np.float64)
    state = np.zeros(spec.dim)
    for t in range(total):
        if t in starts:
            state = rng.normal(size=spec.dim) * spec.shot_mean_scale
            if spec.renormalize:
                state = _unit(state)
        else:
            step = rng.normal(size=spec.dim) * spec.walk_sigma
            # skip the no-op update so a zero-sigma walk stays bit-constant
            if step.any():
                state = state + step
                if spec.renormalize:
                    state = _unit(state)
        if anomalous[t]:
            if spec.anomaly_mode == "heavy_tail":
                outlier = rng.standard_t(2, size=spec.dim) * spec.anomaly_scale
            else:
                outlier = rng.normal(size=spec.dim) * spec.anomaly_scale
            frames[t] = _unit(outlier) if spec.renormalize else outlier
        else:
            frames[t] = state

    seq = FeatureSequence(frames, fps=spec.fps, normalized=spec.renormalize)
    truth = SyntheticTruth(
        boundary_indices=tuple(int(b) for b in np.cumsum(spec.shots)[:-1]),
        event_intervals=tuple((a, a + n - 1) for a, n in spec.anomaly_intervals),
        fps=spec.fps,
    )
    return seq, truth


def _benchmark_layout(rng: np.random.Generator, frames: int, shots: int, min_shot: int) -> tuple[int, ...]:
    """Random shot lengths >= min_shot summing to ``frames``."""
    lengths = []
    remaining = frames
    for i in range(shots - 1):
        hi = remaining - min_shot * (shots - 1 - i)
        lengths.append(int(rng.integers(min_shot, hi + 1)))
        remaining -= lengths[-1]
    lengths.append(remaining)
    return tuple(lengths)


def _plant_anomaly(
    rng: np.random.Generator, lengths: tuple[int, ...], max_len: int = 5
) -> tuple[tuple[int, int], ...]:
    """One 2..max_len frame interval uniformly inside a random shot."""
    candidates = [i for i, n in enumerate(lengths) if n >= 3]
    if not candidates:
        return ()
    shot = candidates[int(rng.integers(0, len(candidates)))]
    shot_start = int(sum(lengths[:shot]))
    length = int(rng.integers(2, min(max_len, lengths[shot] - 1) + 1))
    start = shot_start + int(rng.integers(0, lengths[shot] - length + 1))
    return ((start, length),)


def benchmark_spec(seed: int, index: int, *, frames: int = BENCHMARK_FRAMES,
                   dim: int = BENCHMARK_DIM, shots: int = 3,
                   min_shot: int = BENCHMARK_MIN_SHOT,
                   walk_sigma: float = BENCHMARK_WALK_SIGMA,
                   anomaly_scale: float | None = None,
                   anomaly_mode: str = "heavy_tail",
                   fps: float = BENCHMARK_FPS) -> SyntheticSpec:
    """Spec of one benchmark sequence.

    Seed splitting rule: layout draws (shot lengths, anomaly placement) use
    rng seed (seed, index, 0); the feature draws inside generate() use
    (seed, index, 1). Sequences are therefore independent and may be
    generated in parallel.
    """
    layout_rng = np.random.default_rng((seed, index, 0))
    lengths = _benchmark_layout(layout_rng, frames, shots, min_shot)
    intervals = _plant_anomaly(layout_rng, lengths)
    return SyntheticSpec(
        dim=dim,
        shots=lengths,
        shot_mean_scale=1.0,
        walk_sigma=walk_sigma,
        anomaly_intervals=intervals,
        anomaly_mode=anomaly_mode,
        anomaly_scale=10.0 * walk_sigma if anomaly_scale is None else anomaly_scale,
        seed=(seed, index, 1),
        renormalize=True,
        fps=fps,
    )


def default_benchmark(
    seed: int, count: int = DEFAULT_BENCHMARK_COUNT
) -> list[tuple[FeatureSequence, SyntheticTruth]]:
    """The stock synthetic suite: 30 s sequences on the 10 fps feature grid.

    Each sequence has T=300 frames, n=256, three shots of random lengths
    >= 60, and one planted anomaly interval of 2-5 frames placed uniformly
    inside a shot, with anomaly scale 10x the walk scale. Deterministic
    given the seed.
    """
    return [generate(benchmark_spec(seed, i)) for i in range(count)]

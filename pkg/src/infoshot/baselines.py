"""Reference samplers run under the same budget: uniform, top-K, medoid.

All three return exactly min(K, T) distinct ascending frame indices.
Uniform ignores content entirely; top-K ranks an externally supplied
per-frame score track; the medoid sampler clusters the normalized features
(seeded k-means++) and maps each centroid to its nearest frame by cosine.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    InvalidBudgetError,
    LengthMismatchError,
    NonFiniteValueError,
)
from .features import FeatureSequence, l2_normalize, load_features

KMEANS_MAX_ITER = 100
KMEANS_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class ScoreTrack:
    """Per-frame real scores from an external source (length T, finite)."""

    scores: np.ndarray
    source: str = "external"

    def __post_init__(self) -> None:
        scores = np.ascontiguousarray(self.scores, dtype=np.float64).reshape(-1)
        if scores.size < 1:
            raise ValueError("score track must hold at least one score")
        if not np.all(np.isfinite(scores)):
            raise NonFiniteValueError("score track contains non-finite values")
        scores.setflags(write=False)
        object.__setattr__(self, "scores", scores)

    def __len__(self) -> int:
        return len(self.scores)


def load_score_track(path: str | Path) -> ScoreTrack:
    """Read a score track: CSV with one score per line, or ISF with n=1."""
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(4)
    if head == b"ISF1":
        seq = load_features(path)
        if seq.dim != 1:
            raise LengthMismatchError(f"{path}: score track ISF must have n=1, got n={seq.dim}")
        return ScoreTrack(seq.frames[:, 0], source=str(path))
    values = [
        float(line.strip())
        for line in path.read_text().splitlines()
        if line.strip()
    ]
    return ScoreTrack(np.asarray(values), source=str(path))


def uniform_sample(frame_count: int, budget: int) -> tuple[int, ...]:
    """Midpoint-uniform indices: round_half_up((i + 0.5) * T / K) for each i.

    Rounding is round-half-up, evaluated in exact integer arithmetic so the
    rule reproduces across languages. Clamp collisions (only possible at the
    upper edge) are refilled with the nearest unused indices, ties to the
    smaller index.
    """
    if not 1 <= budget <= frame_count:
        raise InvalidBudgetError(f"budget must satisfy 1 <= K <= T, got K={budget}, T={frame_count}")
    chosen: list[int] = []
    seen = set()
    for i in range(budget):
        p = (2 * i + 1) * frame_count  # position = p / (2K)
        q = 2 * budget
        idx = min((2 * p + q) // (2 * q), frame_count - 1)  # floor(p/q + 1/2), clamped
        if idx not in seen:
            seen.add(idx)
            chosen.append(idx)
    missing = budget - len(chosen)
    if missing:
        unused = [i for i in range(frame_count) if i not in seen]
        unused.sort(key=lambda i: (min(abs(i - c) for c in chosen), i))
        chosen.extend(unused[:missing])
    return tuple(sorted(chosen))


def topk_by_score(track: ScoreTrack, budget: int) -> tuple[int, ...]:
    """Indices of the K largest scores, ties to the smaller index, ascending."""
    if not 1 <= budget <= len(track):
        raise InvalidBudgetError(f"budget must satisfy 1 <= K <= T, got K={budget}, T={len(track)}")
    order = sorted(range(len(track)), key=lambda i: (-track.scores[i], i))
    return tuple(sorted(order[:budget]))


def _kmeans_pp_init(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded k-means++ centroid initialization (returns k rows of x)."""
    t = x.shape[0]
    centers = [int(rng.integers(0, t))]
    d2 = np.sum((x - x[centers[0]]) ** 2, axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total == 0.0:
            centers.append(int(rng.integers(0, t)))
        else:
            centers.append(int(rng.choice(t, p=d2 / total)))
        d2 = np.minimum(d2, np.sum((x - x[centers[-1]]) ** 2, axis=1))
    return x[centers].copy()


def medoid_sample(seq: FeatureSequence, budget: int, seed: int = 0) -> tuple[int, ...]:
    """Cluster-representative sampling on normalized features.

    Runs k-means (k-means++ init seeded by ``seed``, at most 100 Lloyd
    iterations, stopping when no centroid moves more than 1e-6), then maps
    each centroid to its nearest frame by cosine, skipping frames already
    taken so the result holds exactly min(K, T) distinct indices.
    """
    t = seq.frame_count
    if not 1 <= budget <= t:
        raise InvalidBudgetError(f"budget must satisfy 1 <= K <= T, got K={budget}, T={t}")
    if not seq.normalized:
        seq = l2_normalize(seq)
    x = np.ascontiguousarray(seq.frames, dtype=np.float64)
    rng = np.random.default_rng(seed)
    centroids = _kmeans_pp_init(x, budget, rng)
    for _ in range(KMEANS_MAX_ITER):
        # unit rows: ||x - c||^2 = 1 + ||c||^2 - 2 x.c
        sims = np.einsum("ij,kj->ik", x, centroids)
        d2 = 1.0 + np.sum(centroids**2, axis=1)[None, :] - 2.0 * sims
        labels = np.argmin(d2, axis=1)
        moved = 0.0
        new_centroids = centroids.copy()
        for c in range(budget):
            members = x[labels == c]
            if len(members):  # empty clusters keep their previous centroid
                new_centroids[c] = members.mean(axis=0)
                moved = max(moved, float(np.linalg.norm(new_centroids[c] - centroids[c])))
        centroids = new_centroids
        if moved <= KMEANS_TOL:
            break
    # nearest frame by cosine == largest dot (centroid norm is constant per column)
    sims = np.einsum("ij,kj->ik", x, centroids)
    chosen: list[int] = []
    taken = set()
    for c in range(budget):
        order = sorted(range(t), key=lambda i: (-sims[i, c], i))
        pick = next(i for i in order if i not in taken)
        taken.add(pick)
        chosen.append(pick)
    return tuple(sorted(chosen))

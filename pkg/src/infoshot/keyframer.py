"""Per-shot frame scoring, dual-keyframe selection, and budget assembly.

Within a shot of length L, each frame i gets two scores:

    typicality  = mean affinity of frame i to every other frame in the shot
                  (1.0 when the shot is a single frame)
    volatility  = 1 - mean affinity of frame i to its temporal neighborhood
                  {i-k, ..., i-1, i+1, ..., i+k} clipped to the shot
                  (0.0 when the shot is a single frame)

Both are min-max normalized within the shot (a constant score normalizes to
all zeros). The *common* frame maximizes
``w * typ_norm - (1 - w) * vol_norm`` and stands for the shot's dominant
content; the *unique* frame maximizes
``u * (1 - typ_norm) + (1 - u) * vol_norm`` over the remaining frames and
targets within-shot deviations. The union over shots is truncated to the
budget by dropping the weakest unique frames first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .affinity import DEFAULT_BLOCK_SIZE, AffinityView, shot_affinity
from .features import BudgetSpec, FeatureSequence, l2_normalize, resolve_budget
from .segmenter import SegmenterConfig, ShotPartition, greedy_segment

IndexRange = tuple[int, int]

ROLE_COMMON = "common"
ROLE_UNIQUE = "unique"


@dataclass(frozen=True)
class KeyframerConfig:
    """Weights of the two selection objectives and the neighborhood width."""

    common_weight: float = 0.7
    unique_weight: float = 0.5
    neighborhood: int = 1

    def __post_init__(self) -> None:
        if not 0.0 <= self.common_weight <= 1.0:
            raise ValueError("common_weight must lie in [0, 1]")
        if not 0.0 <= self.unique_weight <= 1.0:
            raise ValueError("unique_weight must lie in [0, 1]")
        if self.neighborhood < 1:
            raise ValueError("neighborhood must be >= 1")


@dataclass(frozen=True, eq=False)
class FrameScores:
    """Raw and min-max-normalized typicality/volatility for one shot."""

    typicality: np.ndarray
    volatility: np.ndarray
    typ_norm: np.ndarray
    vol_norm: np.ndarray

    def __post_init__(self) -> None:
        for name in ("typicality", "volatility", "typ_norm", "vol_norm"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (
            len(self.typicality) == len(self.volatility)
            == len(self.typ_norm) == len(self.vol_norm) >= 1
        ):
            raise ValueError("score arrays must share one length >= 1")

    def __len__(self) -> int:
        return len(self.typicality)

    @classmethod
    def from_raw(cls, typicality: np.ndarray, volatility: np.ndarray) -> "FrameScores":
        return cls(
            typicality,
            volatility,
            minmax_normalize(np.asarray(typicality, dtype=np.float64)),
            minmax_normalize(np.asarray(volatility, dtype=np.float64)),
        )


def minmax_normalize(values: np.ndarray) -> np.ndarray:
    """Min-max normalize to [0, 1]; a constant input normalizes to all zeros."""
    lo = values.min()
    hi = values.max()
    if hi == lo:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)


@dataclass(frozen=True)
class KeyframePair:
    """Selected local indices of one shot plus their selection scores."""

    common: int
    common_score: float
    unique: int | None = None
    unique_score: float | None = None


@dataclass(frozen=True)
class KeyframeEntry:
    """One selected frame: global index, role, owning shot, selection score."""

    index: int
    role: str
    shot: int
    score: float


@dataclass(frozen=True)
class KeyframeSet:
    """Final selection: strictly increasing frame indices, at most budget many."""

    entries: tuple[KeyframeEntry, ...]
    budget: int

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        if len(entries) > self.budget:
            raise ValueError(f"{len(entries)} entries exceed budget {self.budget}")
        indices = [e.index for e in entries]
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValueError("entries must be sorted by strictly increasing index")
        if any(e.role not in (ROLE_COMMON, ROLE_UNIQUE) for e in entries):
            raise ValueError("entry roles must be 'common' or 'unique'")
        object.__setattr__(self, "entries", entries)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(e.index for e in self.entries)

    def to_json(self) -> dict:
        return {
            "budget": self.budget,
            "frames": [
                {"index": e.index, "role": e.role, "shot": e.shot, "score": e.score}
                for e in self.entries
            ],
        }


def shot_scores(view: AffinityView, segment: IndexRange, cfg: KeyframerConfig) -> FrameScores:
    """Typicality and volatility (raw and normalized) for one segment."""
    a, b = int(segment[0]), int(segment[1])
    length = b - a
    if length == 1:
        return FrameScores.from_raw(np.ones(1), np.zeros(1))
    # A partition may legally contain a segment above the nominal cap when no
    # admissible split existed, so size the dense matrix to this segment.
    gram = shot_affinity(view, (a, b), max_len=length)
    diag = np.diagonal(gram)
    typicality = (gram.sum(axis=1) - diag) / (length - 1)
    k = cfg.neighborhood
    volatility = np.empty(length, dtype=np.float64)
    for i in range(length):
        lo = max(0, i - k)
        hi = min(length, i + k + 1)
        row = gram[i, lo:hi]
        volatility[i] = 1.0 - (row.sum() - gram[i, i]) / (hi - lo - 1)
    return FrameScores.from_raw(typicality, volatility)


def _objectives(scores: FrameScores, cfg: KeyframerConfig) -> tuple[np.ndarray, np.ndarray]:
    w = cfg.common_weight
    u = cfg.unique_weight
    common = w * scores.typ_norm - (1.0 - w) * scores.vol_norm
    unique = u * (1.0 - scores.typ_norm) + (1.0 - u) * scores.vol_norm
    return common, unique


def select_pair(scores: FrameScores, cfg: KeyframerConfig) -> tuple[int, int | None]:
    """Local indices of the common and unique frames; unique is None for L=1.

    The unique frame is always distinct from the common one; argmax ties
    break to the smallest index.
    """
    common_obj, unique_obj = _objectives(scores, cfg)
    t_com = int(np.argmax(common_obj))
    if len(scores) == 1:
        return t_com, None
    masked = unique_obj.copy()
    masked[t_com] = -np.inf
    return t_com, int(np.argmax(masked))


def _select_shot(view: AffinityView, segment: IndexRange, cfg: KeyframerConfig) -> KeyframePair:
    scores = shot_scores(view, segment, cfg)
    common_obj, unique_obj = _objectives(scores, cfg)
    t_com, t_uni = select_pair(scores, cfg)
    if t_uni is None:
        return KeyframePair(t_com, float(common_obj[t_com]))
    return KeyframePair(
        t_com, float(common_obj[t_com]), t_uni, float(unique_obj[t_uni])
    )


def assemble(partition: ShotPartition, per_shot: list[KeyframePair], budget: int) -> KeyframeSet:
    """Collect per-shot picks into one set of at most ``budget`` frames.

    Over budget, unique frames are dropped first in increasing order of their
    selection score (ties: largest frame index first); common frames are only
    dropped once no unique frame is left, shortest shots first (ties: latest
    shot first). No filler frames are ever added.
    """
    if len(per_shot) != partition.realized_shots:
        raise ValueError("per_shot must align with the partition")
    by_index: dict[int, KeyframeEntry] = {}
    for shot, ((a, b), pair) in enumerate(zip(partition.segments, per_shot)):
        if not (0 <= pair.common < b - a):
            raise ValueError(f"common index {pair.common} outside shot {shot}")
        common_global = a + pair.common
        if common_global not in by_index:
            by_index[common_global] = KeyframeEntry(
                common_global, ROLE_COMMON, shot, pair.common_score
            )
        if pair.unique is None:
            continue
        if pair.unique == pair.common:
            raise ValueError(f"shot {shot}: unique frame must differ from common")
        if not (0 <= pair.unique < b - a):
            raise ValueError(f"unique index {pair.unique} outside shot {shot}")
        unique_global = a + pair.unique
        if unique_global not in by_index:
            score = pair.unique_score if pair.unique_score is not None else 0.0
            by_index[unique_global] = KeyframeEntry(unique_global, ROLE_UNIQUE, shot, score)
    entries = list(by_index.values())
    if len(entries) > budget:
        shot_lengths = [b - a for a, b in partition.segments]
        uniques = sorted(
            (e for e in entries if e.role == ROLE_UNIQUE),
            key=lambda e: (e.score, -e.index),
        )
        commons = sorted(
            (e for e in entries if e.role == ROLE_COMMON),
            key=lambda e: (shot_lengths[e.shot], -partition.segments[e.shot][0]),
        )
        drop = len(entries) - budget
        dropped = {e.index for e in (uniques + commons)[:drop]}
        entries = [e for e in entries if e.index not in dropped]
    entries.sort(key=lambda e: e.index)
    return KeyframeSet(tuple(entries), budget)


def sample_with_partition(
    seq: FeatureSequence,
    budget: BudgetSpec,
    seg_cfg: SegmenterConfig | None = None,
    key_cfg: KeyframerConfig | None = None,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> tuple[KeyframeSet, ShotPartition]:
    """Full pipeline, also returning the shot partition it used.

    Normalizes the input if needed, targets max(1, K // 2) shots (two frames
    per shot), scores and selects within each realized shot, and truncates to
    the budget. Deterministic for fixed inputs.
    """
    seg_cfg = seg_cfg or SegmenterConfig()
    key_cfg = key_cfg or KeyframerConfig()
    if not seq.normalized:
        seq = l2_normalize(seq)
    k_budget = resolve_budget(budget, seq)
    target_shots = max(1, k_budget // 2)
    view = AffinityView(seq, block_size=block_size)
    partition = greedy_segment(view, target_shots, seg_cfg)
    per_shot = [_select_shot(view, seg, key_cfg) for seg in partition.segments]
    return assemble(partition, per_shot, k_budget), partition


def sample(
    seq: FeatureSequence,
    budget: BudgetSpec,
    seg_cfg: SegmenterConfig | None = None,
    key_cfg: KeyframerConfig | None = None,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> KeyframeSet:
    """Select up to K budget-resolved keyframes from a feature sequence."""
    selected, _ = sample_with_partition(seq, budget, seg_cfg, key_cfg, block_size)
    return selected

"""Shot-aware keyframe sampling for videos represented as feature sequences.

The pipeline: load or generate a sequence of per-frame feature vectors,
split the timeline into content-consistent shots by greedy boundary search
on cosine affinities, then pick two complementary frames per shot (a
representative "common" frame and a high-deviation "unique" frame) under a
global frame budget. Synthetic benchmarks, evaluation metrics, and baseline
samplers are included.
"""

from .affinity import AffinityView, block_affinity, pair_affinity, shot_affinity
from .baselines import (
    ScoreTrack,
    load_score_track,
    medoid_sample,
    topk_by_score,
    uniform_sample,
)
from .evaluator import (
    EvalReport,
    EventAnnotation,
    distortion,
    evaluate_suite,
    event_metrics,
    frame_recall,
)
from .features import (
    BudgetSpec,
    FeatureSequence,
    l2_normalize,
    load_features,
    resolve_budget,
    save_features,
)
from .keyframer import (
    FrameScores,
    KeyframeEntry,
    KeyframePair,
    KeyframeSet,
    KeyframerConfig,
    assemble,
    minmax_normalize,
    sample,
    sample_with_partition,
    select_pair,
    shot_scores,
)
from .segmenter import (
    SegmenterConfig,
    ShotPartition,
    best_split,
    boundary_score,
    greedy_segment,
)
from .synthgen import (
    SyntheticSpec,
    SyntheticTruth,
    benchmark_spec,
    default_benchmark,
    generate,
)

__version__ = "0.1.0"

__all__ = [
    "AffinityView",
    "BudgetSpec",
    "EvalReport",
    "EventAnnotation",
    "FeatureSequence",
    "FrameScores",
    "KeyframeEntry",
    "KeyframePair",
    "KeyframeSet",
    "KeyframerConfig",
    "ScoreTrack",
    "SegmenterConfig",
    "ShotPartition",
    "SyntheticSpec",
    "SyntheticTruth",
    "assemble",
    "benchmark_spec",
    "best_split",
    "block_affinity",
    "boundary_score",
    "default_benchmark",
    "distortion",
    "evaluate_suite",
    "event_metrics",
    "frame_recall",
    "generate",
    "greedy_segment",
    "l2_normalize",
    "load_features",
    "load_score_track",
    "medoid_sample",
    "minmax_normalize",
    "pair_affinity",
    "resolve_budget",
    "sample",
    "sample_with_partition",
    "save_features",
    "select_pair",
    "shot_affinity",
    "shot_scores",
    "topk_by_score",
    "uniform_sample",
]

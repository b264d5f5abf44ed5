import numpy as np
import pytest

from infoshot import (
    AffinityView,
    BudgetSpec,
    FeatureSequence,
    FrameScores,
    KeyframePair,
    KeyframeSet,
    KeyframerConfig,
    ShotPartition,
    assemble,
    sample,
    sample_with_partition,
    select_pair,
    shot_scores,
)
from infoshot.keyframer import KeyframeEntry
from infoshot.synthgen import SyntheticSpec, generate

from .conftest import random_unit_seq
from .oracles import exhaustive_pair, naive_shot_scores


def e_basis_shot():
    """Five frames: e1 everywhere except e2 at local index 2."""
    frames = np.zeros((5, 4))
    frames[:, 0] = 1.0
    frames[2] = [0.0, 1.0, 0.0, 0.0]
    return FeatureSequence(frames, fps=1.0, normalized=True)


def test_shot_scores_hand_example():
    view = AffinityView(e_basis_shot())
    scores = shot_scores(view, (0, 5), KeyframerConfig())
    np.testing.assert_allclose(scores.typicality, [0.75, 0.75, 0.0, 0.75, 0.75], atol=1e-12)
    np.testing.assert_allclose(scores.volatility, [0.0, 0.5, 1.0, 0.5, 0.0], atol=1e-12)
    np.testing.assert_allclose(scores.typ_norm, [1, 1, 0, 1, 1], atol=1e-12)
    np.testing.assert_allclose(scores.vol_norm, [0, 0.5, 1, 0.5, 0], atol=1e-12)


def test_shot_scores_constant_policy():
    frames = np.tile([0.0, 1.0, 0.0], (6, 1))
    view = AffinityView(FeatureSequence(frames, fps=1.0, normalized=True))
    scores = shot_scores(view, (0, 6), KeyframerConfig())
    np.testing.assert_allclose(scores.typicality, 1.0, atol=1e-12)
    np.testing.assert_allclose(scores.volatility, 0.0, atol=1e-12)
    assert np.all(scores.typ_norm == 0.0)
    assert np.all(scores.vol_norm == 0.0)


def test_shot_scores_singleton(rng):
    view = AffinityView(random_unit_seq(rng, 4, 3))
    scores = shot_scores(view, (2, 3), KeyframerConfig())
    assert scores.typicality.tolist() == [1.0]
    assert scores.volatility.tolist() == [0.0]
    assert scores.typ_norm.tolist() == [0.0]
    assert scores.vol_norm.tolist() == [0.0]


def test_shot_scores_match_oracle(rng):
    seq = random_unit_seq(rng, 25, 6)
    view = AffinityView(seq)
    for segment, k in (((3, 17), 1), ((0, 25), 2), ((20, 25), 3)):
        scores = shot_scores(view, segment, KeyframerConfig(neighborhood=k))
        typ, vol, typ_n, vol_n = naive_shot_scores(seq, segment, k)
        np.testing.assert_allclose(scores.typicality, typ, atol=1e-9)
        np.testing.assert_allclose(scores.volatility, vol, atol=1e-9)
        np.testing.assert_allclose(scores.typ_norm, typ_n, atol=1e-9)
        np.testing.assert_allclose(scores.vol_norm, vol_n, atol=1e-9)


def test_select_pair_hand_example():
    view = AffinityView(e_basis_shot())
    scores = shot_scores(view, (0, 5), KeyframerConfig())
    t_com, t_uni = select_pair(scores, KeyframerConfig())
    assert (t_com, t_uni) == (0, 2)


def test_select_pair_constant_shot_tiebreak():
    scores = FrameScores.from_raw(np.ones(4), np.zeros(4))
    assert select_pair(scores, KeyframerConfig()) == (0, 1)


def test_select_pair_singleton():
    scores = FrameScores.from_raw(np.ones(1), np.zeros(1))
    assert select_pair(scores, KeyframerConfig()) == (0, None)


def test_select_pair_matches_exhaustive(rng):
    cfgs = [KeyframerConfig(), KeyframerConfig(0.3, 0.9), KeyframerConfig(1.0, 0.0)]
    for case in range(1000):
        length = int(rng.integers(1, 12))
        scores = FrameScores.from_raw(
            rng.normal(size=length), rng.normal(size=length)
        )
        cfg = cfgs[case % len(cfgs)]
        assert select_pair(scores, cfg) == exhaustive_pair(scores, cfg)


def test_select_pair_argmax_scale_invariance(rng):
    for _ in range(50):
        length = int(rng.integers(2, 15))
        typ = rng.normal(size=length)
        vol = rng.normal(size=length)
        base = select_pair(FrameScores.from_raw(typ, vol), KeyframerConfig())
        for c in (2.0, 0.5, 3.0):
            scaled = select_pair(FrameScores.from_raw(typ * c, vol), KeyframerConfig())
            assert scaled == base
            scaled = select_pair(FrameScores.from_raw(typ, vol * c), KeyframerConfig())
            assert scaled == base


def test_planted_outlier_capture_all_lengths():
    cfg = KeyframerConfig()
    for length in range(3, 51):
        for pos in range(length):
            frames = np.zeros((length, 4))
            angles = 0.1 * np.arange(length) / max(1, length - 1)
            frames[:, 0] = np.cos(angles)
            frames[:, 1] = np.sin(angles)
            frames[pos] = [0.0, 0.0, 1.0, 0.0]
            seq = FeatureSequence(frames, fps=1.0, normalized=True)
            view = AffinityView(seq)
            scores = shot_scores(view, (0, length), cfg)
            _, t_uni = select_pair(scores, cfg)
            assert t_uni == pos, f"L={length}, outlier at {pos} missed"


def two_shot_partition():
    return ShotPartition(((0, 4), (4, 10)), (1.0,))


def test_assemble_under_budget():
    pairs = [KeyframePair(0, 0.7, 2, 0.9), KeyframePair(1, 0.6, 4, 0.8)]
    ks = assemble(two_shot_partition(), pairs, budget=6)
    assert ks.indices == (0, 2, 5, 8)
    roles = [e.role for e in ks.entries]
    assert roles == ["common", "unique", "common", "unique"]
    assert [e.shot for e in ks.entries] == [0, 0, 1, 1]


def test_assemble_truncates_weak_uniques_first():
    pairs = [KeyframePair(0, 0.7, 2, 0.2), KeyframePair(1, 0.6, 4, 0.8)]
    ks = assemble(two_shot_partition(), pairs, budget=3)
    # unique with score 0.2 (frame 2) is dropped first
    assert ks.indices == (0, 5, 8)
    ks = assemble(two_shot_partition(), pairs, budget=2)
    assert ks.indices == (0, 5)
    assert all(e.role == "common" for e in ks.entries)


def test_assemble_drops_commons_of_shortest_shots_last():
    pairs = [KeyframePair(0, 0.7, 2, 0.2), KeyframePair(1, 0.6, 4, 0.8)]
    ks = assemble(two_shot_partition(), pairs, budget=1)
    # all uniques gone, then the common of the shorter shot [0,4) goes
    assert ks.indices == (5,)
    assert ks.entries[0].role == "common" and ks.entries[0].shot == 1


def test_assemble_unique_drop_tie_breaks_to_largest_index():
    pairs = [KeyframePair(0, 0.7, 2, 0.5), KeyframePair(1, 0.6, 4, 0.5)]
    ks = assemble(two_shot_partition(), pairs, budget=3)
    # equal unique scores: the larger frame index (8) is dropped first
    assert ks.indices == (0, 2, 5)


def test_assemble_rejects_misaligned_input():
    with pytest.raises(ValueError):
        assemble(two_shot_partition(), [KeyframePair(0, 0.5)], budget=4)
    with pytest.raises(ValueError):
        assemble(two_shot_partition(), [KeyframePair(0, 0.5, 0, 0.5), KeyframePair(0, 0.5)], budget=4)


def test_keyframe_set_invariants():
    with pytest.raises(ValueError):
        KeyframeSet((KeyframeEntry(3, "common", 0, 0.0), KeyframeEntry(3, "unique", 0, 0.0)), 4)
    with pytest.raises(ValueError):
        KeyframeSet((KeyframeEntry(0, "common", 0, 0.0),) * 2, 1)
    with pytest.raises(ValueError):
        KeyframeSet((KeyframeEntry(0, "zebra", 0, 0.0),), 2)


def test_keyframe_set_json_sorted():
    ks = KeyframeSet(
        (KeyframeEntry(1, "common", 0, 0.5), KeyframeEntry(7, "unique", 1, 0.25)), 4
    )
    payload = ks.to_json()
    assert payload["budget"] == 4
    assert payload["frames"] == [
        {"index": 1, "role": "common", "shot": 0, "score": 0.5},
        {"index": 7, "role": "unique", "shot": 1, "score": 0.25},
    ]


def test_sample_two_shots_with_outlier():
    spec = SyntheticSpec(
        dim=256, shots=(20, 20), walk_sigma=0.0,
        anomaly_intervals=((30, 1),), anomaly_scale=1.0, seed=11,
    )
    seq, truth = generate(spec)
    ks, partition = sample_with_partition(seq, BudgetSpec.from_count(4))
    assert partition.segments == ((0, 20), (20, 40))
    assert len(ks.entries) == 4
    assert 30 in ks.indices  # the planted outlier frame is selected
    commons = [e.index for e in ks.entries if e.role == "common"]
    assert [e.shot for e in ks.entries if e.role == "common"] == [0, 1]
    # each common is a medoid-like clean frame, not the outlier or its neighbors
    assert all(abs(c - 30) > 1 for c in commons)


def test_sample_k1_single_common():
    rng = np.random.default_rng(5)
    seq = random_unit_seq(rng, 40, 8)
    ks = sample(seq, BudgetSpec.from_count(1))
    assert len(ks.entries) == 1
    assert ks.entries[0].role == "common"


def test_sample_saturation():
    rng = np.random.default_rng(6)
    seq = random_unit_seq(rng, 12, 4)
    ks = sample(seq, BudgetSpec.from_count(1000))
    assert len(ks.entries) <= 12
    assert len(set(ks.indices)) == len(ks.indices)


def test_sample_odd_budget_leaves_one_unspent():
    # M = K // 2 shots, two picks each: K odd means exactly K-1 frames
    rng = np.random.default_rng(7)
    seq = random_unit_seq(rng, 60, 6)
    ks = sample(seq, BudgetSpec.from_count(7), key_cfg=KeyframerConfig())
    assert len(ks.entries) == 6


def test_sample_normalizes_unnormalized_input(rng):
    frames = np.random.default_rng(8).normal(size=(30, 5)) * 3.0
    seq = FeatureSequence(frames, fps=10.0)
    ks = sample(seq, BudgetSpec.from_count(4))
    assert len(ks.entries) <= 4
    assert all(0 <= e.index < 30 for e in ks.entries)

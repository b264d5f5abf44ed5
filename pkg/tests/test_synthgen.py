import numpy as np
import pytest

from infoshot import SyntheticSpec, SyntheticTruth, default_benchmark, generate
from infoshot.errors import InvalidSpecError


def test_degenerate_walk_constant_frames():
    spec = SyntheticSpec(dim=8, shots=(12,), walk_sigma=0.0, seed=3)
    seq, truth = generate(spec)
    assert truth.boundary_indices == ()
    assert np.all(seq.frames == seq.frames[0])


def test_two_shots_near_orthogonal_means():
    spec = SyntheticSpec(dim=128, shots=(30, 30), walk_sigma=1e-4, seed=1)
    seq, truth = generate(spec)
    assert truth.boundary_indices == (30,)
    mean_a = seq.frames[:30].mean(axis=0)
    mean_b = seq.frames[30:].mean(axis=0)
    cos = mean_a @ mean_b / (np.linalg.norm(mean_a) * np.linalg.norm(mean_b))
    assert abs(cos) < 0.3


def test_anomaly_interval_flagged_and_separated():
    # anomaly frames should sit below the shot's typical affinity level
    passes = 0
    for seed in range(100):
        spec = SyntheticSpec(
            dim=64, shots=(30,), walk_sigma=1e-3, anomaly_scale=1e-2,
            anomaly_intervals=((10, 3),), seed=seed,
        )
        seq, truth = generate(spec)
        assert truth.anomaly_frames == {10, 11, 12}
        assert truth.event_intervals == ((10, 12),)
        frames = seq.frames
        clean = [t for t in range(30) if t not in truth.anomaly_frames]
        gram = frames @ frames.T
        anom_mean = np.mean([gram[a, c] for a in (10, 11, 12) for c in clean])
        tri = gram[np.triu_indices(30, k=1)]
        if anom_mean < np.median(tri):
            passes += 1
    assert passes >= 99


def test_walk_resumes_after_anomaly():
    # the anomaly replaces observations; it must not teleport the shot
    spec = SyntheticSpec(
        dim=16, shots=(20,), walk_sigma=0.0, anomaly_scale=5.0,
        anomaly_intervals=((5, 3),), seed=9,
    )
    seq, _ = generate(spec)
    assert np.array_equal(seq.frames[4], seq.frames[8])
    assert not np.array_equal(seq.frames[5], seq.frames[4])


def test_renormalize_unit_frames():
    spec = SyntheticSpec(dim=32, shots=(10, 10), walk_sigma=1e-2, seed=2,
                         anomaly_intervals=((3, 2),))
    seq, _ = generate(spec)
    assert seq.normalized
    np.testing.assert_allclose(np.linalg.norm(seq.frames, axis=1), 1.0, atol=1e-12)
    raw, _ = generate(SyntheticSpec(dim=32, shots=(10, 10), walk_sigma=1e-2, seed=2,
                                    anomaly_intervals=((3, 2),), renormalize=False))
    assert not raw.normalized


def test_generate_is_pure():
    spec = SyntheticSpec(dim=16, shots=(8, 9), walk_sigma=1e-3, seed=42,
                         anomaly_intervals=((10, 2),))
    a, truth_a = generate(spec)
    b, truth_b = generate(spec)
    assert np.array_equal(a.frames, b.frames)
    assert truth_a.boundary_indices == truth_b.boundary_indices
    assert truth_a.event_intervals == truth_b.event_intervals


def test_heavy_tail_vs_high_variance_differ():
    base = dict(dim=16, shots=(10,), walk_sigma=0.0, anomaly_scale=1.0,
                anomaly_intervals=((4, 2),), seed=5)
    ht, _ = generate(SyntheticSpec(anomaly_mode="heavy_tail", **base))
    hv, _ = generate(SyntheticSpec(anomaly_mode="high_variance", **base))
    assert not np.array_equal(ht.frames[4], hv.frames[4])


def test_spec_validation():
    with pytest.raises(InvalidSpecError):
        SyntheticSpec(dim=0, shots=(5,))
    with pytest.raises(InvalidSpecError):
        SyntheticSpec(dim=4, shots=())
    with pytest.raises(InvalidSpecError):
        SyntheticSpec(dim=4, shots=(5, 0))
    with pytest.raises(InvalidSpecError):
        SyntheticSpec(dim=4, shots=(5,), anomaly_intervals=((4, 3),))
    with pytest.raises(InvalidSpecError):
        SyntheticSpec(dim=4, shots=(10,), anomaly_intervals=((2, 2), (3, 2)))
    with pytest.raises(InvalidSpecError):
        SyntheticSpec(dim=4, shots=(5,), anomaly_mode="bogus")


def test_truth_json_round_trip():
    truth = SyntheticTruth((40, 90), ((60, 62),), 10.0)
    payload = truth.to_json()
    assert payload == {"boundaries": [40, 90], "events": [[60, 62]], "fps": 10.0}
    again = SyntheticTruth.from_json(payload)
    assert again.boundary_indices == truth.boundary_indices
    assert again.anomaly_frames == {60, 61, 62}


def test_default_benchmark_shape_and_determinism():
    suite = default_benchmark(0, count=6)
    assert len(suite) == 6
    for seq, truth in suite:
        assert seq.frame_count == 300
        assert seq.dim == 256
        assert seq.fps == 10.0
        assert seq.normalized
        assert len(truth.boundary_indices) == 2
        assert len(truth.event_intervals) == 1
        a, b = truth.event_intervals[0]
        assert 2 <= b - a + 1 <= 5
        # anomaly lies strictly inside one shot
        bounds = (0,) + truth.boundary_indices + (300,)
        assert any(lo <= a and b < hi for lo, hi in zip(bounds, bounds[1:]))
        lengths = np.diff(bounds)
        assert np.all(lengths >= 60)
    again = default_benchmark(0, count=6)
    for (s1, t1), (s2, t2) in zip(suite, again):
        assert np.array_equal(s1.frames, s2.frames)
        assert t1.event_intervals == t2.event_intervals


def test_default_benchmark_seed_sensitivity():
    a = default_benchmark(0, count=4)
    b = default_benchmark(1, count=4)
    assert any(
        t1.event_intervals != t2.event_intervals or not np.array_equal(s1.frames, s2.frames)
        for (s1, t1), (s2, t2) in zip(a, b)
    )

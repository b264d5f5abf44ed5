import numpy as np
import pytest

from infoshot import FeatureSequence, l2_normalize


def random_unit_seq(rng: np.random.Generator, frame_count: int, dim: int,
                    fps: float = 24.0) -> FeatureSequence:
    raw = FeatureSequence(rng.normal(size=(frame_count, dim)), fps=fps)
    return l2_normalize(raw)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)

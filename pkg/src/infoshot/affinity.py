"""Blocked cosine affinity between frames of a normalized sequence.

The full T x T matrix is never materialized: callers request entries, blocks
of bounded size, or the dense matrix of a single (length-capped) segment.
Every entry is computed by one canonical kernel whose per-entry reduction
order does not depend on the requested block shape, so assembling blocks of
any size reproduces a direct computation bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BlockTooLargeError, IndexOutOfRangeError, SegmentTooLongError
from .features import FeatureSequence

DEFAULT_BLOCK_SIZE = 600
DEFAULT_MAX_SHOT_LEN = 300

IndexRange = tuple[int, int]


def _dot_block(rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    # einsum (unlike BLAS matmul) reduces each entry in an order that depends
    # only on the contracted axis, so entries are bit-identical regardless of
    # the block shape they are computed in. It is also single-threaded, which
    # keeps results independent of thread counts.
    return np.einsum("ij,kj->ik", rows, cols)


@dataclass(eq=False)
class AffinityView:
    """Read-only, on-demand cosine affinity over a normalized sequence.

    Peak additional memory per request is O(block_size^2), independent of T.
    The view is safe to share across threads.
    """

    source: FeatureSequence
    block_size: int = DEFAULT_BLOCK_SIZE
    _unit_rows: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.source.normalized:
            raise ValueError("AffinityView requires a normalized FeatureSequence")
        if self.block_size < 1:
            raise ValueError(f"block_size must be >= 1, got {self.block_size}")
        rows = np.ascontiguousarray(self.source.frames, dtype=np.float64)
        rows.setflags(write=False)
        self._unit_rows = rows

    @property
    def frame_count(self) -> int:
        return self._unit_rows.shape[0]

    def _check_range(self, rng: IndexRange) -> IndexRange:
        start, stop = int(rng[0]), int(rng[1])
        if not (0 <= start < stop <= self.frame_count):
            raise IndexOutOfRangeError(
                f"range [{start}, {stop}) outside frames [0, {self.frame_count})"
            )
        return start, stop


def pair_affinity(view: AffinityView, i: int, j: int) -> float:
    """Cosine affinity between frames i and j; symmetric, 1.0 on the diagonal."""
    t = view.frame_count
    if not (0 <= i < t and 0 <= j < t):
        raise IndexOutOfRangeError(f"indices ({i}, {j}) outside frames [0, {t})")
    rows = view._unit_rows
    return float(_dot_block(rows[i : i + 1], rows[j : j + 1])[0, 0])


def block_affinity(view: AffinityView, rows: IndexRange, cols: IndexRange) -> np.ndarray:
    """Dense affinity block for two index ranges, each at most block_size long.

    Entry (a, b) equals pair_affinity(rows[0] + a, cols[0] + b) bit-exactly.
    """
    r0, r1 = view._check_range(rows)
    c0, c1 = view._check_range(cols)
    if r1 - r0 > view.block_size or c1 - c0 > view.block_size:
        raise BlockTooLargeError(
            f"block {(r1 - r0)}x{(c1 - c0)} exceeds block_size {view.block_size}"
        )
    base = view._unit_rows
    return _dot_block(base[r0:r1], base[c0:c1])


def shot_affinity(
    view: AffinityView, segment: IndexRange, max_len: int = DEFAULT_MAX_SHOT_LEN
) -> np.ndarray:
    """Dense L x L affinity matrix over one segment, L capped at max_len.

    Assembled from blocks when L exceeds the view's block size; by the
    kernel's shape stability the result equals a direct computation.
    """
    a, b = view._check_range(segment)
    length = b - a
    if length > max_len:
        raise SegmentTooLongError(f"segment of {length} frames exceeds max_len {max_len}")
    step = view.block_size
    if length <= step:
        return block_affinity(view, (a, b), (a, b))
    out = np.empty((length, length), dtype=np.float64)
    for r in range(a, b, step):
        r1 = min(r + step, b)
        for c in range(a, b, step):
            c1 = min(c + step, b)
            out[r - a : r1 - a, c - a : c1 - a] = block_affinity(view, (r, r1), (c, c1))
    return out

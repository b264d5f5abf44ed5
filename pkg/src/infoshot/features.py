"""Frame-feature sequences: validation, normalization, budgets, and file I/O.

The on-disk container is ISF, a little-endian binary format:

    magic "ISF1" (4 bytes) | version u16 = 1 | reserved u16 = 0 |
    frame count T u64 | dimension n u32 | dtype code u8 (1 = float32) |
    3 zero padding bytes | fps float32 | T*n float32 payload, frame-major

There is no checksum in version 1. A CSV fallback (one frame per row, n
comma-separated decimals) is accepted on load so fixtures can be written by
hand; CSV carries no fps, so the caller supplies one.
"""

from __future__ import annotations

import logging
import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidBudgetError,
    IoFailureError,
    MalformedHeaderError,
    NonFiniteValueError,
)

logger = logging.getLogger("infoshot")

ISF_MAGIC = b"ISF1"
ISF_VERSION = 1
_DTYPE_FLOAT32 = 1
# magic, version, reserved, T, n, dtype code, 3 pad bytes, fps
_HEADER = struct.Struct("<4sHHQIB3xf")

UNIT_NORM_TOL = 1e-5


@dataclass(frozen=True, eq=False)
class FeatureSequence:
    """T per-frame feature vectors of dimension n on a fixed sampling grid.

    frames: (T, n) float32 or float64 array, one row per frame; made
        read-only at construction.
    fps: frames per second of the sampling grid, positive.
    normalized: True when every row has unit L2 norm within 1e-5.
    """

    frames: np.ndarray
    fps: float
    normalized: bool = False

    def __post_init__(self) -> None:
        frames = np.asarray(self.frames)
        if frames.dtype not in (np.float32, np.float64):
            frames = frames.astype(np.float64)
        if frames.ndim != 2:
            raise ValueError(f"frames must be 2-D (T, n), got ndim={frames.ndim}")
        if frames.shape[0] < 1 or frames.shape[1] < 1:
            raise ValueError(f"need T >= 1 and n >= 1, got shape {frames.shape}")
        if not np.all(np.isfinite(frames)):
            raise NonFiniteValueError("feature sequence contains non-finite components")
        fps = float(self.fps)
        if not math.isfinite(fps) or fps <= 0.0:
            raise ValueError(f"fps must be a positive real, got {self.fps!r}")
        frames = np.ascontiguousarray(frames)
        frames.setflags(write=False)
        if self.normalized:
            norms = np.linalg.norm(frames.astype(np.float64, copy=False), axis=1)
            if np.max(np.abs(norms - 1.0)) > UNIT_NORM_TOL:
                raise ValueError("normalized=True but some frame is not unit length")
        object.__setattr__(self, "frames", frames)
        object.__setattr__(self, "fps", fps)

    @property
    def frame_count(self) -> int:
        return self.frames.shape[0]

    @property
    def dim(self) -> int:
        return self.frames.shape[1]

    @property
    def duration_seconds(self) -> float:
        return self.frame_count / self.fps


@dataclass(frozen=True)
class BudgetSpec:
    """Sampling budget: either a rate in sampled frames per second or a count."""

    mode: str
    rate: float | None = None
    count: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("rate", "count"):
            raise InvalidBudgetError(f"unknown budget mode {self.mode!r}")

    @classmethod
    def from_rate(cls, rate: float) -> "BudgetSpec":
        return cls("rate", rate=rate)

    @classmethod
    def from_count(cls, count: int) -> "BudgetSpec":
        return cls("count", count=count)


def resolve_budget(spec: BudgetSpec, seq: FeatureSequence) -> int:
    """Resolve a budget spec against a sequence to a frame count K.

    rate mode: K = ceil(rate * duration_seconds), clamped to [1, T].
    count mode: K = min(count, T).

    Raises InvalidBudgetError when rate or count is not positive.
    """
    t = seq.frame_count
    if spec.mode == "rate":
        if spec.rate is None or not math.isfinite(spec.rate) or spec.rate <= 0.0:
            raise InvalidBudgetError("budget must be positive (rate <= 0)")
        # ceil with a small epsilon so that e.g. 0.1 * 30 (which floats round
        # up to 3.0000000000000004) resolves to 3, not 4.
        k = math.ceil(spec.rate * seq.duration_seconds - 1e-9)
        return max(1, min(k, t))
    if spec.count is None or spec.count <= 0:
        raise InvalidBudgetError("budget must be positive (count <= 0)")
    return min(int(spec.count), t)


def l2_normalize(seq: FeatureSequence) -> FeatureSequence:
    """Project every frame onto the unit sphere (computed in float64).

    A zero-norm frame cannot be normalized; it is replaced by the first unit
    basis vector and a warning is logged, keeping the pipeline deterministic
    (cosine similarity is undefined at zero).
    """
    frames = seq.frames.astype(np.float64)
    norms = np.linalg.norm(frames, axis=1)
    zero_rows = np.flatnonzero(norms == 0.0)
    for i in zero_rows:
        logger.warning("zero-norm frame at index %d replaced with unit basis vector", i)
        frames[i, 0] = 1.0
        norms[i] = 1.0
    frames /= norms[:, None]
    return FeatureSequence(frames, fps=seq.fps, normalized=True)


def save_features(seq: FeatureSequence, path: str | Path) -> None:
    """Write a sequence to an ISF file.

    Storage is float32; a float32-valued sequence round-trips bit-exactly
    through load_features. fps is likewise stored as float32.
    """
    payload = np.ascontiguousarray(seq.frames, dtype="<f4")
    header = _HEADER.pack(
        ISF_MAGIC, ISF_VERSION, 0, seq.frame_count, seq.dim, _DTYPE_FLOAT32, seq.fps
    )
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(payload.tobytes())
    except OSError as exc:
        raise IoFailureError(f"cannot write {path}: {exc}") from exc


def load_features(path: str | Path, fps: float | None = None) -> FeatureSequence:
    """Read a feature sequence from an ISF file or the CSV fallback.

    Dispatch is on the magic bytes: files starting with "ISF1" are parsed as
    ISF (the fps argument is ignored; the header carries it), anything else
    is parsed as CSV with one frame per row and ``fps`` (default 1.0) as the
    sampling grid. Returns a sequence with normalized=False.
    """
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise IoFailureError(f"cannot read {path}: {exc}") from exc
    if raw[:4] == ISF_MAGIC:
        return _parse_isf(raw, path)
    return _parse_csv(raw, path, fps=1.0 if fps is None else fps)


def _parse_isf(raw: bytes, path: str | Path) -> FeatureSequence:
    if len(raw) < _HEADER.size:
        raise MalformedHeaderError(f"{path}: truncated ISF header")
    magic, version, reserved, t, n, dtype_code, fps = _HEADER.unpack_from(raw)
    if magic != ISF_MAGIC:
        raise MalformedHeaderError(f"{path}: bad magic {magic!r}")
    if version != ISF_VERSION or reserved != 0:
        raise MalformedHeaderError(f"{path}: unsupported ISF version {version}")
    if dtype_code != _DTYPE_FLOAT32:
        raise MalformedHeaderError(f"{path}: unsupported dtype code {dtype_code}")
    if t < 1 or n < 1:
        raise MalformedHeaderError(f"{path}: header declares T={t}, n={n}")
    if not math.isfinite(fps) or fps <= 0.0:
        raise MalformedHeaderError(f"{path}: header declares fps={fps}")
    payload = raw[_HEADER.size:]
    expected = t * n * 4
    if len(payload) != expected:
        raise DimensionMismatchError(
            f"{path}: payload holds {len(payload)} bytes, header implies {expected}"
        )
    frames = np.frombuffer(payload, dtype="<f4").reshape(t, n)
    if not np.all(np.isfinite(frames)):
        raise NonFiniteValueError(f"{path}: payload contains non-finite values")
    return FeatureSequence(frames, fps=fps, normalized=False)


def _parse_csv(raw: bytes, path: str | Path, fps: float) -> FeatureSequence:
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedHeaderError(f"{path}: neither ISF nor text") from exc
    rows: list[list[float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            rows.append([float(cell) for cell in line.split(",")])
        except ValueError as exc:
            raise MalformedHeaderError(f"{path}:{lineno}: not a CSV of decimals") from exc
    if not rows:
        raise MalformedHeaderError(f"{path}: empty feature file")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise DimensionMismatchError(f"{path}: ragged CSV rows")
    frames = np.asarray(rows, dtype=np.float32)
    if not np.all(np.isfinite(frames)):
        raise NonFiniteValueError(f"{path}: CSV contains non-finite values")
    return FeatureSequence(frames, fps=fps, normalized=False)

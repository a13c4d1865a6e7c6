"""Time intervals, sliding-window segmentation and utterance-to-segment mapping."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

# Absorbs float drift from repeated shift arithmetic (e.g. 3 * 0.3).
_EPS = 1e-9


@dataclass(frozen=True)
class TimeInterval:
    """Half-open span ``[start, end)`` in seconds."""

    start: float
    end: float

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.end)):
            raise ValueError(f"non-finite interval bounds: {self.start}, {self.end}")
        if self.end <= self.start:
            raise ValueError(f"interval end must exceed start: [{self.start}, {self.end}]")

    @property
    def duration(self) -> float:
        return self.end - self.start

    @property
    def center(self) -> float:
        return 0.5 * (self.start + self.end)


@dataclass(frozen=True)
class Segment:
    index: int
    interval: TimeInterval

    @property
    def start(self) -> float:
        return self.interval.start

    @property
    def end(self) -> float:
        return self.interval.end

    @property
    def duration(self) -> float:
        return self.interval.duration


def _region_starts(region: TimeInterval, window: float, shift: float) -> list[float]:
    if region.duration <= window + _EPS:
        return [region.start]
    n_strides = math.floor((region.duration - window) / shift + _EPS)
    starts = [round(region.start + i * shift, 9) for i in range(n_strides + 1)]
    if starts[-1] + window < region.end - _EPS:
        starts.append(round(region.end - window, 9))
    return starts


def uniform_segments(
    speech_regions: Sequence[TimeInterval], window: float = 1.0, shift: float = 0.3
) -> list[Segment]:
    """Cut speech regions into fixed-length overlapping windows.

    Windows start at ``region.start + i * shift``. When the last stride-aligned
    window stops short of the region end, one more window anchored at
    ``region.end - window`` is appended. A region shorter than ``window``
    produces a single segment covering the whole region.

    Parameters
    ----------
    speech_regions : sequence of TimeInterval
        Sorted, non-overlapping speech regions.
    window, shift : float
        Window length and hop in seconds.

    Returns
    -------
    list of Segment
        Segments with global indices ``0..M-1`` in time order.
    """
    if window <= 0 or shift <= 0:
        raise ValueError("window and shift must be positive")
    segments: list[Segment] = []
    prev_end = -math.inf
    for region in speech_regions:
        if region.duration <= 0:
            raise ValueError(f"empty speech region {region}")
        if region.start < prev_end - _EPS:
            raise ValueError("speech regions must be sorted and non-overlapping")
        prev_end = region.end
        for s in _region_starts(region, window, shift):
            end = min(s + window, region.end)
            segments.append(Segment(len(segments), TimeInterval(s, end)))
    return segments


def overlap_duration(a: TimeInterval, b: TimeInterval) -> float:
    return max(0.0, min(a.end, b.end) - max(a.start, b.start))


def segment_bounds(segments: Sequence[Segment]) -> tuple[np.ndarray, np.ndarray]:
    """Start and end arrays for vectorised overlap queries."""
    starts = np.fromiter((s.start for s in segments), dtype=float, count=len(segments))
    ends = np.fromiter((s.end for s in segments), dtype=float, count=len(segments))
    return starts, ends


def qualifying_span(
    starts: np.ndarray,
    ends: np.ndarray,
    utt: TimeInterval,
    min_overlap_fraction: float = 0.75,
) -> Optional[tuple[int, int]]:
    """Array form of :func:`segments_in_utterance`."""
    overlap = np.minimum(ends, utt.end) - np.maximum(starts, utt.start)
    inside = (starts >= utt.start - _EPS) & (ends <= utt.end + _EPS)
    ok = (overlap >= min_overlap_fraction * (ends - starts) - _EPS) | inside
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    return int(hits[0]), int(hits[-1])


def segments_in_utterance(
    segments: Sequence[Segment],
    utt: TimeInterval,
    min_overlap_fraction: float = 0.75,
) -> Optional[tuple[int, int]]:
    """First and last segment index falling inside an utterance boundary.

    A segment falls inside when its overlap with ``utt`` is at least
    ``min_overlap_fraction`` of its own length, or when it lies entirely
    within ``utt``. Returns ``None`` if no segment qualifies.
    """
    if not 0 < min_overlap_fraction <= 1:
        raise ValueError("min_overlap_fraction must lie in (0, 1]")
    if not segments:
        return None
    starts, ends = segment_bounds(segments)
    return qualifying_span(starts, ends, utt, min_overlap_fraction)

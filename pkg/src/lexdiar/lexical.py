"""Lexical adjacency from word-level speaker-turn probabilities.

Pipeline: pick turn words above a threshold, cut the word stream in front of
each of them, drop one-word utterances, split what is left into chunks of at
most ``nu`` words, then mark every segment pair inside a chunk's segment span.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .timeline import Segment, TimeInterval, qualifying_span, segment_bounds


@dataclass(frozen=True)
class Word:
    text: str
    interval: TimeInterval
    turn_prob: float

    def __post_init__(self):
        if not 0.0 <= self.turn_prob <= 1.0:
            raise ValueError(f"turn_prob outside [0, 1]: {self.turn_prob}")


@dataclass(frozen=True)
class Utterance:
    first: int
    last: int  # inclusive
    interval: TimeInterval

    @property
    def n_words(self) -> int:
        return self.last - self.first + 1


def _hull(words: Sequence[Word], first: int, last: int) -> TimeInterval:
    return TimeInterval(words[first].interval.start, words[last].interval.end)


def pick_turn_words(words: Sequence[Word], c: float) -> list[int]:
    return [i for i, w in enumerate(words) if w.turn_prob > c]


def cut_into_utterances(words: Sequence[Word], turn_indices: Sequence[int]) -> list[Utterance]:
    """Start a new utterance at every turn word."""
    if not words:
        return []
    cuts = sorted({i for i in turn_indices if 0 < i < len(words)})
    bounds = [0, *cuts, len(words)]
    return [
        Utterance(lo, hi - 1, _hull(words, lo, hi - 1))
        for lo, hi in zip(bounds[:-1], bounds[1:])
    ]


def filter_single_word(utts: Sequence[Utterance]) -> list[Utterance]:
    return [u for u in utts if u.n_words > 1]


def oversegment(utts: Sequence[Utterance], words: Sequence[Word], nu: int = 3) -> list[Utterance]:
    """Greedy left-to-right split into chunks of at most ``nu`` words."""
    if nu < 2:
        raise ValueError(f"max utterance length nu must be >= 2, got {nu}")
    out = []
    for u in utts:
        for lo in range(u.first, u.last + 1, nu):
            hi = min(lo + nu - 1, u.last)
            out.append(Utterance(lo, hi, _hull(words, lo, hi)))
    return out


def lexical_utterances(words: Sequence[Word], c: float, nu: int = 3) -> list[Utterance]:
    """Utterances used for the lexical matrix at threshold ``c``."""
    utts = cut_into_utterances(words, pick_turn_words(words, c))
    return oversegment(filter_single_word(utts), words, nu)


def build_q(
    utts: Sequence[Utterance],
    segments: Sequence[Segment],
    min_overlap_fraction: float = 0.75,
) -> np.ndarray:
    """Binary segment adjacency: ones on the ``m..n`` square of every utterance."""
    m_total = len(segments)
    if m_total == 0:
        raise ValueError("no segments")
    q = np.zeros((m_total, m_total))
    starts, ends = segment_bounds(segments)
    for u in utts:
        span = qualifying_span(starts, ends, u.interval, min_overlap_fraction)
        if span is not None:
            m, n = span
            q[m : n + 1, m : n + 1] = 1.0
    return q


def lexical_affinity(
    words: Sequence[Word],
    segments: Sequence[Segment],
    c: float,
    nu: int = 3,
    min_overlap_fraction: float = 0.75,
) -> np.ndarray:
    if math.isnan(c):
        raise ValueError("threshold c is NaN")
    return build_q(lexical_utterances(words, c, nu), segments, min_overlap_fraction)

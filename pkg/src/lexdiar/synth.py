"""Seeded synthetic conversations: speaker turns, segment embeddings and scored word streams."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lexical import Word
from .scoring import RttmEntry
from .timeline import Segment, TimeInterval, uniform_segments

PROB_STD = 0.05
WORD_FILL = 0.8  # fraction of the word slot a word occupies


@dataclass
class SynthSpec:
    seed: int = 0
    num_speakers: int = 2
    duration: float = 300.0
    embedding_dim: int = 16
    cluster_separation: float = 10.0
    embedding_noise_std: float = 0.1
    turn_prob_hit: float = 0.9
    turn_prob_miss: float = 0.05
    words_per_second: float = 2.5
    mean_turn_length: float = 8.0
    window: float = 1.0
    shift: float = 0.3
    recording_id: str = "synth"

    def validate(self):
        if self.num_speakers < 1:
            raise ValueError("num_speakers must be >= 1")
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if not 0 <= self.turn_prob_miss < self.turn_prob_hit <= 1:
            raise ValueError("need 0 <= turn_prob_miss < turn_prob_hit <= 1")
        if self.embedding_dim < 1 or self.embedding_noise_std < 0 or self.cluster_separation < 0:
            raise ValueError("invalid embedding geometry parameters")
        if self.num_speakers - 1 > self.embedding_dim:
            raise ValueError(
                f"{self.num_speakers} equidistant means need embedding_dim >= {self.num_speakers - 1}"
            )
        if self.words_per_second <= 0 or self.mean_turn_length <= 0:
            raise ValueError("words_per_second and mean_turn_length must be positive")


@dataclass
class Conversation:
    spec: SynthSpec
    turns: list  # (start, end, speaker index), consecutive speakers differ
    segments: list[Segment]
    segment_speakers: np.ndarray
    embeddings: np.ndarray
    words: list[Word]
    turn_word_indices: list[int] = field(default_factory=list)

    def reference(self) -> list[RttmEntry]:
        rec = self.spec.recording_id
        out = []
        for start, end, spk in self.turns:
            onset = round(start, 3)
            out.append(RttmEntry(rec, onset, round(round(end, 3) - onset, 3), f"spk{spk}"))
        return out


def simplex_means(k: int, dim: int, distance: float) -> np.ndarray:
    """``k`` points in ``dim`` dimensions with all pairwise distances equal to ``distance``."""
    if k == 1:
        return np.zeros((1, dim))
    centred = np.eye(k) - 1.0 / k
    # Orthonormal basis of the (k-1)-dim subspace the centred vertices span.
    u, _, _ = np.linalg.svd(centred)
    coords = centred @ u[:, : k - 1] * (distance / np.sqrt(2.0))
    means = np.zeros((k, dim))
    means[:, : k - 1] = coords
    return means


def _draw_turns(rng: np.random.Generator, spec: SynthSpec) -> list:
    k = spec.num_speakers
    if k == 1:
        return [(0.0, spec.duration, 0)]
    turns = []
    t = 0.0
    spk = int(rng.integers(k))
    while t < spec.duration:
        end = min(t + rng.exponential(spec.mean_turn_length), spec.duration)
        # Turns that would vanish after millisecond rounding are absorbed by the next.
        if round(end, 3) > round(t, 3) or end >= spec.duration:
            turns.append((t, end, spk))
            t = end
            spk = (spk + 1 + int(rng.integers(k - 1))) % k
    if turns and round(turns[-1][1], 3) <= round(turns[-1][0], 3) and len(turns) > 1:
        s0, _, sp = turns[-2]
        turns[-2:] = [(s0, spec.duration, sp)]
    return turns


def _majority_speaker(seg: Segment, turns: list, k: int) -> int:
    owned = np.zeros(k)
    for start, end, spk in turns:
        owned[spk] += max(0.0, min(end, seg.end) - max(start, seg.start))
    return int(np.argmax(owned))


def generate(spec: SynthSpec) -> Conversation:
    """Draw one conversation. Identical specs give identical outputs."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    k = spec.num_speakers

    turns = _draw_turns(rng, spec)

    segments = uniform_segments([TimeInterval(0.0, spec.duration)], spec.window, spec.shift)
    labels = np.array([_majority_speaker(s, turns, k) for s in segments], dtype=int)
    means = simplex_means(k, spec.embedding_dim, spec.cluster_separation * spec.embedding_noise_std)
    noise = rng.normal(0.0, spec.embedding_noise_std, size=(len(segments), spec.embedding_dim))
    embeddings = means[labels] + noise

    slot = 1.0 / spec.words_per_second
    n_words = int(np.floor(spec.duration / slot + 1e-9))
    starts = np.arange(n_words) * slot
    boundaries = [start for start, _, _ in turns[1:]]
    first_after = np.searchsorted(starts, boundaries, side="left")
    turn_idx = sorted({int(i) for i in first_after if i < n_words})
    is_turn = np.zeros(n_words, dtype=bool)
    is_turn[turn_idx] = True
    mean_prob = np.where(is_turn, spec.turn_prob_hit, spec.turn_prob_miss)
    probs = np.clip(rng.normal(mean_prob, PROB_STD), 0.0, 1.0)
    words = [
        Word(f"w{i}", TimeInterval(float(s), float(s + WORD_FILL * slot)), float(p))
        for i, (s, p) in enumerate(zip(starts, probs))
    ]
    return Conversation(spec, turns, segments, labels, embeddings, words, turn_idx)

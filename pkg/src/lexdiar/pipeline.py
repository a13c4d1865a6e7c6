"""End-to-end clustering: acoustic (M1) or acoustic + lexical ("full") adjacency."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .acoustic import acoustic_affinity
from .lexical import Word
from .scoring import RttmEntry
from .spectral import (
    EigengapReport,
    eigengap_report,
    laplacian,
    select_threshold,
    spectral_cluster,
)
from .timeline import Segment

MODES = ("m1", "full")


def default_c_grid() -> list[float]:
    return [round(0.05 * i, 2) for i in range(1, 20)]


@dataclass
class PipelineConfig:
    mode: str = "full"
    window: float = 1.0
    shift: float = 0.3
    knn: int = 25
    nu: int = 3
    c_grid: list = field(default_factory=default_c_grid)
    min_overlap_fraction: float = 0.75
    k_max: int = 10
    num_speakers: Optional[int] = None
    seed: int = 42
    collar: float = 0.25

    def validate(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.window <= 0 or self.shift <= 0:
            raise ValueError("window and shift must be positive")
        if self.knn < 1:
            raise ValueError("knn must be >= 1")
        if self.nu < 2:
            raise ValueError("nu must be >= 2")
        if not self.c_grid or any(not 0 <= c <= 1 for c in self.c_grid):
            raise ValueError("c_grid must be a non-empty list of values in [0, 1]")
        if not 0 < self.min_overlap_fraction <= 1:
            raise ValueError("min_overlap_fraction must lie in (0, 1]")
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if self.num_speakers is not None and self.num_speakers < 1:
            raise ValueError("num_speakers must be >= 1")
        if self.collar < 0:
            raise ValueError("collar must be >= 0")


@dataclass
class DiarizationResult:
    labels: np.ndarray
    entries: list[RttmEntry]
    num_speakers: int
    report: EigengapReport
    acoustic_report: EigengapReport
    threshold: Optional[float] = None
    ratios: dict = field(default_factory=dict)

    def summary(self) -> dict:
        sizes = np.bincount(self.labels, minlength=self.num_speakers)
        return {
            "threshold": self.threshold,
            "estimated_speakers": int(self.report.estimated_speakers),
            "num_speakers": int(self.num_speakers),
            "cluster_sizes": [int(s) for s in sizes],
        }

    def diagnostics(self) -> dict:
        return {
            "n_segments": int(self.labels.size),
            "acoustic": self.acoustic_report.to_dict(),
            "grid": [
                {"c": c, "r": None if math.isnan(r) else r} for c, r in sorted(self.ratios.items())
            ],
            "selected": self.report.to_dict(),
            **self.summary(),
        }


def relabel_by_appearance(labels: np.ndarray) -> np.ndarray:
    """Rename clusters 0, 1, ... in order of first occurrence."""
    mapping: dict = {}
    for lab in labels:
        mapping.setdefault(int(lab), len(mapping))
    return np.array([mapping[int(lab)] for lab in labels], dtype=int)


def resolve_timeline(
    segments: Sequence[Segment], labels: Sequence[int], recording_id: str, prefix: str = "spk"
) -> list[RttmEntry]:
    """Turn overlapping labelled segments into non-overlapping speaker intervals.

    Each instant covered by some segment goes to the segment whose centre is
    nearest (the earlier segment on a tie); runs of one speaker are merged.
    """
    if len(segments) != len(labels):
        raise ValueError("one label per segment required")
    if not segments:
        return []
    # Connected pieces of the union of segment spans.
    union = []
    for seg in sorted(segments, key=lambda s: s.start):
        if union and seg.start <= union[-1][1]:
            union[-1][1] = max(union[-1][1], seg.end)
        else:
            union.append([seg.start, seg.end])

    centers = [s.interval.center for s in segments]
    cuts = [-math.inf] + [0.5 * (a + b) for a, b in zip(centers[:-1], centers[1:])] + [math.inf]
    pieces = []  # (start, end, label)
    for i, lab in enumerate(labels):
        lo, hi = cuts[i], cuts[i + 1]
        for u0, u1 in union:
            a, b = max(lo, u0), min(hi, u1)
            if b > a:
                pieces.append((a, b, int(lab)))
    pieces.sort()

    merged: list[list] = []
    for a, b, lab in pieces:
        if merged and merged[-1][2] == lab and abs(merged[-1][1] - a) < 1e-9:
            merged[-1][1] = b
        else:
            merged.append([a, b, lab])
    out = []
    for a, b, lab in merged:
        onset = round(a, 3)
        dur = round(round(b, 3) - onset, 3)
        if dur > 0:
            out.append(RttmEntry(recording_id, onset, dur, f"{prefix}{lab}"))
    return out


def diarize(
    config: PipelineConfig,
    segments: Sequence[Segment],
    embeddings: np.ndarray,
    words: Optional[Sequence[Word]] = None,
    recording_id: str = "rec",
) -> DiarizationResult:
    config.validate()
    if len(segments) != len(embeddings):
        raise ValueError(f"{len(segments)} segments but {len(embeddings)} embeddings")
    p_ud = acoustic_affinity(embeddings, config.knn)
    acoustic_rep = eigengap_report(laplacian(p_ud), k_max=config.k_max)

    threshold, ratios = None, {}
    affinity, report = p_ud, acoustic_rep
    if config.mode == "full":
        sel = select_threshold(
            p_ud,
            words or [],
            segments,
            config.c_grid,
            nu=config.nu,
            min_overlap_fraction=config.min_overlap_fraction,
            k_max=config.k_max,
        )
        threshold, ratios = sel.threshold, sel.ratios
        affinity, report = sel.affinity, sel.report

    k = config.num_speakers if config.num_speakers is not None else report.estimated_speakers
    k = min(k, len(segments))
    labels = relabel_by_appearance(spectral_cluster(affinity, k, seed=config.seed))
    entries = resolve_timeline(segments, labels, recording_id)
    return DiarizationResult(labels, entries, k, report, acoustic_rep, threshold, ratios)

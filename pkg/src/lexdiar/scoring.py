"""RTTM reading/writing and md-eval style diarization error rate."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment


class RttmParseError(ValueError):
    pass


class UndefinedDerError(ValueError):
    pass


@dataclass(frozen=True)
class RttmEntry:
    recording_id: str
    onset: float
    duration: float
    speaker: str

    @property
    def offset(self) -> float:
        return self.onset + self.duration


def parse_rttm(text: str) -> list[RttmEntry]:
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields or fields[0] != "SPEAKER":
            continue
        if len(fields) < 8:
            raise RttmParseError(f"line {lineno}: expected >= 8 fields, got {len(fields)}")
        try:
            onset, duration = float(fields[3]), float(fields[4])
        except ValueError:
            raise RttmParseError(f"line {lineno}: bad onset/duration {fields[3]!r} {fields[4]!r}") from None
        if not (np.isfinite(onset) and np.isfinite(duration)) or onset < 0 or duration <= 0:
            raise RttmParseError(f"line {lineno}: invalid onset/duration {onset} {duration}")
        entries.append(RttmEntry(fields[1], onset, duration, fields[7]))
    return entries


def format_rttm(entries: Iterable[RttmEntry]) -> str:
    return "".join(
        f"SPEAKER {e.recording_id} 1 {e.onset:.3f} {e.duration:.3f} <NA> <NA> {e.speaker} <NA> <NA>\n"
        for e in entries
    )


@dataclass
class DerBreakdown:
    missed: float = 0.0
    false_alarm: float = 0.0
    speaker_error: float = 0.0
    scored_speech: float = 0.0

    @property
    def der(self) -> float:
        if self.scored_speech <= 0:
            raise UndefinedDerError("no scored reference speech")
        return (self.missed + self.false_alarm + self.speaker_error) / self.scored_speech

    def __add__(self, other: "DerBreakdown") -> "DerBreakdown":
        return DerBreakdown(*(a + b for a, b in zip(asdict(self).values(), asdict(other).values())))

    def to_dict(self) -> dict:
        return {
            "missed_s": round(self.missed, 6),
            "falarm_s": round(self.false_alarm, 6),
            "spkerr_s": round(self.speaker_error, 6),
            "scored_s": round(self.scored_speech, 6),
            "der": round(self.der, 6),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_table(self) -> str:
        rows = [
            ("SCORED SPEAKER TIME", self.scored_speech),
            ("MISSED SPEAKER TIME", self.missed),
            ("FALARM SPEAKER TIME", self.false_alarm),
            ("SPEAKER ERROR TIME", self.speaker_error),
        ]
        lines = [f"{name:<22}{sec:>12.3f} s" for name, sec in rows]
        lines.append(f"{'DER':<22}{100 * self.der:>12.2f} %")
        return "\n".join(lines)


def _no_score_zones(ref: Sequence[RttmEntry], collar: float) -> list[tuple[float, float]]:
    if collar <= 0 or not ref:
        return []
    zones = sorted(
        (max(0.0, t - collar), t + collar) for e in ref for t in (e.onset, e.offset)
    )
    merged = [list(zones[0])]
    for lo, hi in zones[1:]:
        if lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [tuple(z) for z in merged]


def _score_recording(ref: Sequence[RttmEntry], hyp: Sequence[RttmEntry], collar: float) -> DerBreakdown:
    zones = _no_score_zones(ref, collar)
    ref_spk = sorted({e.speaker for e in ref})
    hyp_spk = sorted({e.speaker for e in hyp})
    r_idx = {s: i for i, s in enumerate(ref_spk)}
    h_idx = {s: i for i, s in enumerate(hyp_spk)}

    points = {t for e in (*ref, *hyp) for t in (e.onset, e.offset)}
    points.update(t for z in zones for t in z)
    edges = np.array(sorted(points))
    if edges.size < 2:
        return DerBreakdown()
    lo, hi = edges[:-1], edges[1:]
    dur = hi - lo
    mid = 0.5 * (lo + hi)

    def activity(entries, index, n):
        act = np.zeros((n, mid.size), dtype=bool)
        for e in entries:
            act[index[e.speaker]] |= (mid > e.onset) & (mid < e.offset)
        return act

    r_act = activity(ref, r_idx, len(ref_spk))
    h_act = activity(hyp, h_idx, len(hyp_spk))
    scored = np.ones(mid.size, dtype=bool)
    for z_lo, z_hi in zones:
        scored &= ~((mid > z_lo) & (mid < z_hi))
    w = dur * scored

    # Optimal one-to-one mapping on scored overlap time.
    overlap = (r_act * w) @ h_act.T.astype(float)
    correct = np.zeros(mid.size)
    if overlap.size:
        rows, cols = linear_sum_assignment(overlap, maximize=True)
        for r, h in zip(rows, cols):
            correct += r_act[r] & h_act[h]

    n_ref = r_act.sum(axis=0)
    n_hyp = h_act.sum(axis=0)
    return DerBreakdown(
        missed=float(np.sum(w * np.maximum(n_ref - n_hyp, 0))),
        false_alarm=float(np.sum(w * np.maximum(n_hyp - n_ref, 0))),
        speaker_error=float(np.sum(w * (np.minimum(n_ref, n_hyp) - correct))),
        scored_speech=float(np.sum(w * n_ref)),
    )


def compute_der(
    ref: Sequence[RttmEntry], hyp: Sequence[RttmEntry], collar: float = 0.25
) -> DerBreakdown:
    """Missed, false-alarm and speaker-confusion time summed over recordings.

    A ``collar`` on each side of every reference speaker boundary is left
    unscored. Overlapping reference speech counts once per active speaker.
    Hypothesis speakers are mapped to reference speakers one-to-one so as to
    maximise the jointly-attributed scored time.
    """
    if collar < 0:
        raise ValueError("collar must be >= 0")
    by_rec_ref = defaultdict(list)
    by_rec_hyp = defaultdict(list)
    for e in ref:
        by_rec_ref[e.recording_id].append(e)
    for e in hyp:
        by_rec_hyp[e.recording_id].append(e)
    total = DerBreakdown()
    for rec in sorted(set(by_rec_ref) | set(by_rec_hyp)):
        total = total + _score_recording(by_rec_ref[rec], by_rec_hyp[rec], collar)
    if total.scored_speech <= 0:
        raise UndefinedDerError("no scored reference speech")
    return total

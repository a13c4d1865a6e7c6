"""Artifact file formats: embeddings CSV, words JSON Lines, RTTM, atomic writes."""
from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .lexical import Word
from .scoring import RttmEntry, format_rttm, parse_rttm
from .timeline import Segment, TimeInterval


class FormatError(ValueError):
    pass


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_embeddings(path) -> tuple[list[Segment], np.ndarray]:
    """Read ``start,end,v1..vd`` rows under a ``start,end,dim=<d>`` header."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise FormatError(f"{path}: empty file")
    header = [h.strip() for h in lines[0].split(",")]
    if len(header) != 3 or header[:2] != ["start", "end"] or not header[2].startswith("dim="):
        raise FormatError(f"{path}: bad header {lines[0]!r}, expected 'start,end,dim=<d>'")
    try:
        dim = int(header[2][4:])
    except ValueError:
        raise FormatError(f"{path}: bad dimension in header {lines[0]!r}") from None
    if dim < 1:
        raise FormatError(f"{path}: dimension must be positive")

    segments, vectors = [], []
    prev_start = -math.inf
    for row, line in enumerate(lines[1:], start=1):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != dim + 2:
            raise FormatError(f"{path}: row {row}: expected {dim + 2} values, got {len(fields)}")
        try:
            values = [float(f) for f in fields]
        except ValueError:
            raise FormatError(f"{path}: row {row}: non-numeric value") from None
        if not all(math.isfinite(v) for v in values):
            raise FormatError(f"{path}: row {row}: non-finite value")
        start, end = values[0], values[1]
        if start < prev_start:
            raise FormatError(f"{path}: row {row}: rows not sorted by start")
        try:
            interval = TimeInterval(start, end)
        except ValueError as exc:
            raise FormatError(f"{path}: row {row}: {exc}") from None
        prev_start = start
        segments.append(Segment(len(segments), interval))
        vectors.append(values[2:])
    if len(segments) < 2:
        raise FormatError(f"{path}: need at least 2 segments, got {len(segments)}")
    return segments, np.array(vectors, dtype=float)


def format_embeddings(segments: Sequence[Segment], embeddings: np.ndarray) -> str:
    embeddings = np.asarray(embeddings, dtype=float)
    out = [f"start,end,dim={embeddings.shape[1]}"]
    for seg, vec in zip(segments, embeddings):
        out.append(",".join(repr(float(x)) for x in (seg.start, seg.end, *vec)))
    return "\n".join(out) + "\n"


def write_embeddings(path, segments: Sequence[Segment], embeddings: np.ndarray) -> None:
    atomic_write_text(path, format_embeddings(segments, embeddings))


def read_words(path) -> list[Word]:
    words: list[Word] = []
    prev_line = None
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            text, start, end, prob = obj["word"], float(obj["start"]), float(obj["end"]), float(obj["turn_prob"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"{path}: line {lineno}: malformed word record ({exc})") from None
        if not 0.0 <= prob <= 1.0:
            raise FormatError(f"{path}: line {lineno}: turn_prob {prob} outside [0, 1]")
        if not (math.isfinite(start) and math.isfinite(end)) or end <= start:
            raise FormatError(f"{path}: line {lineno}: word end {end} must exceed start {start}")
        if words and start < words[-1].interval.start:
            raise FormatError(
                f"{path}: line {lineno}: start {start} precedes line {prev_line} "
                f"start {words[-1].interval.start}"
            )
        words.append(Word(str(text), TimeInterval(start, end), prob))
        prev_line = lineno
    return words


def format_words(words: Iterable[Word]) -> str:
    return "".join(
        json.dumps({"word": w.text, "start": w.interval.start, "end": w.interval.end, "turn_prob": w.turn_prob})
        + "\n"
        for w in words
    )


def write_words(path, words: Iterable[Word]) -> None:
    atomic_write_text(path, format_words(words))


def read_rttm(path) -> list[RttmEntry]:
    return parse_rttm(Path(path).read_text(encoding="utf-8"))


def write_rttm(path, entries: Iterable[RttmEntry]) -> None:
    atomic_write_text(path, format_rttm(entries))

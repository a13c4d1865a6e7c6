"""Unnormalised graph Laplacian, eigengap analysis and spectral clustering."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import linalg
from sklearn.cluster import KMeans

from .fusion import combine_max
from .lexical import Word, lexical_affinity
from .timeline import Segment

log = logging.getLogger(__name__)

RATIO_FLOOR = 1e-10
SYMMETRY_TOL = 1e-12


class NumericalError(RuntimeError):
    """Eigendecomposition failed; message carries matrix diagnostics."""


def _diagnostics(mat: np.ndarray) -> str:
    return (
        f"shape={mat.shape} finite={bool(np.all(np.isfinite(mat)))} "
        f"min={np.nanmin(mat):.3g} max={np.nanmax(mat):.3g} "
        f"asym={np.nanmax(np.abs(mat - mat.T)):.3g}"
    )


def laplacian(affinity: np.ndarray) -> np.ndarray:
    """``L = D - A`` with ``D`` the diagonal of row sums."""
    a = np.asarray(affinity, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"affinity must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("affinity contains non-finite values")
    asym = np.max(np.abs(a - a.T)) if a.size else 0.0
    if asym > SYMMETRY_TOL:
        raise ValueError(f"affinity is not symmetric (max |A - A^T| = {asym:.3g})")
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    # Self-loops cancel (d_i - a_ii); summing only off-diagonal weights makes that exact.
    lap = -off
    np.fill_diagonal(lap, off.sum(axis=1))
    return lap


@dataclass
class EigengapReport:
    eigenvalues: np.ndarray
    eigengaps: np.ndarray
    ratio: float
    estimated_speakers: int
    threshold: Optional[float] = None

    def zero_multiplicity(self, rel_tol: float = 1e-8) -> int:
        """Number of eigenvalues within ``rel_tol * lambda_max`` of zero."""
        tol = rel_tol * max(float(self.eigenvalues[-1]), 0.0)
        return int(np.sum(np.abs(self.eigenvalues) <= tol))

    def to_dict(self, head: int = 10) -> dict:
        return {
            "threshold": self.threshold,
            "ratio": float(self.ratio),
            "estimated_speakers": int(self.estimated_speakers),
            "eigenvalues_head": [float(x) for x in self.eigenvalues[:head]],
            "eigengaps_head": [float(x) for x in self.eigengaps[:head]],
        }


def laplacian_eigenvalues(lap: np.ndarray) -> np.ndarray:
    try:
        vals = linalg.eigvalsh(lap, check_finite=True)
    except (linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}; {_diagnostics(lap)}") from exc
    return np.sort(vals)


def eigengap_report(lap: np.ndarray, threshold: Optional[float] = None, k_max: int = 10) -> EigengapReport:
    """Eigengaps of ``lap``, their max/min ratio and the argmax speaker count.

    The speaker count is ``n`` where gap ``lambda_{n+1} - lambda_n`` is the
    largest among the first ``k_max`` gaps; the first maximum wins ties.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    vals = laplacian_eigenvalues(lap)
    if vals.size < 2:
        raise ValueError("need at least 2 segments for an eigengap")
    gaps = np.diff(vals)
    ratio = float(gaps.max() / max(gaps.min(), RATIO_FLOOR))
    n_hat = int(np.argmax(gaps[: min(k_max, gaps.size)])) + 1
    return EigengapReport(vals, gaps, ratio, n_hat, threshold)


@dataclass
class ThresholdSelection:
    threshold: float
    affinity: np.ndarray
    report: EigengapReport
    ratios: dict = field(default_factory=dict)  # c -> r, NaN where the grid point failed


def select_threshold(
    p_ud: np.ndarray,
    words: Sequence[Word],
    segments: Sequence[Segment],
    c_grid: Sequence[float],
    nu: int = 3,
    min_overlap_fraction: float = 0.75,
    k_max: int = 10,
) -> ThresholdSelection:
    """Pick the turn threshold whose fused adjacency has the largest eigengap ratio.

    Ties go to the smallest threshold. A grid point whose eigendecomposition
    fails is skipped; if every point fails the last error is raised.
    """
    grid = sorted(set(float(c) for c in c_grid))
    if not grid:
        raise ValueError("empty threshold grid")
    best: Optional[ThresholdSelection] = None
    ratios = {}
    last_error: Optional[NumericalError] = None
    for c in grid:
        a = combine_max(p_ud, lexical_affinity(words, segments, c, nu, min_overlap_fraction))
        try:
            rep = eigengap_report(laplacian(a), threshold=c, k_max=k_max)
        except NumericalError as exc:
            log.warning("threshold %.3f disqualified: %s", c, exc)
            ratios[c] = float("nan")
            last_error = exc
            continue
        ratios[c] = rep.ratio
        if best is None or rep.ratio > best.report.ratio:
            best = ThresholdSelection(c, a, rep)
    if best is None:
        raise last_error
    best.ratios = ratios
    return best


def spectral_embedding(affinity: np.ndarray, k: int) -> np.ndarray:
    """Eigenvectors of the ``k`` smallest Laplacian eigenvalues, one row per segment."""
    lap = laplacian(affinity)
    try:
        _, vecs = linalg.eigh(lap, subset_by_index=[0, k - 1])
    except (linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}; {_diagnostics(lap)}") from exc
    return vecs


def spectral_cluster(affinity: np.ndarray, k: int, seed: int = 42) -> np.ndarray:
    """k-means (k-means++, 10 restarts, 300 iterations) on the spectral embedding."""
    m = np.asarray(affinity).shape[0]
    if not 1 <= k <= m:
        raise ValueError(f"number of clusters must lie in [1, {m}], got {k}")
    if k == 1:
        laplacian(affinity)  # still validate the input
        return np.zeros(m, dtype=int)
    emb = spectral_embedding(affinity, k)
    km = KMeans(n_clusters=k, init="k-means++", n_init=10, max_iter=300, random_state=seed)
    return km.fit_predict(emb).astype(int)

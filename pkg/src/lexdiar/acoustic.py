"""Speaker-embedding adjacency: L2 distances, N-nearest-neighbour binarisation, symmetrisation."""
from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist


def as_embeddings(vectors) -> np.ndarray:
    emb = np.asarray(vectors, dtype=float)
    if emb.ndim != 2:
        raise ValueError(f"embeddings must be 2-D (segments x dim), got shape {emb.shape}")
    if not np.all(np.isfinite(emb)):
        raise ValueError("embeddings contain non-finite values")
    return emb


def pairwise_distance_matrix(embeddings) -> np.ndarray:
    """Euclidean distance between every pair of segment embeddings."""
    emb = as_embeddings(embeddings)
    if emb.shape[0] < 2:
        raise ValueError(f"need at least 2 segments to cluster, got {emb.shape[0]}")
    dist = cdist(emb, emb, metric="euclidean")
    np.fill_diagonal(dist, 0.0)
    return dist


def binarize_knn(dist: np.ndarray, n_neighbors: int = 25) -> np.ndarray:
    """Keep, per row, every entry no larger than the row's N-th smallest value.

    The diagonal takes part in the ranking, so a row always keeps itself.
    Ties at the threshold are all kept, so a row can end up with more than
    ``n_neighbors`` ones. If ``n_neighbors >= M`` the result is all ones.
    """
    if n_neighbors < 1:
        raise ValueError("n_neighbors must be >= 1")
    dist = np.asarray(dist, dtype=float)
    m = dist.shape[0]
    if n_neighbors >= m:
        return np.ones_like(dist)
    kth = np.partition(dist, n_neighbors - 1, axis=1)[:, n_neighbors - 1]
    return (dist <= kth[:, None]).astype(float)


def symmetrize(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    return 0.5 * (mat + mat.T)


def acoustic_affinity(embeddings, n_neighbors: int = 25) -> np.ndarray:
    """Undirected N-NN adjacency of the embeddings (``P_ud``)."""
    return symmetrize(binarize_knn(pairwise_distance_matrix(embeddings), n_neighbors))

import numpy as np


def combine_max(p_ud: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Element-wise maximum of the acoustic and lexical adjacency matrices."""
    p_ud = np.asarray(p_ud, dtype=float)
    q = np.asarray(q, dtype=float)
    if p_ud.shape != q.shape:
        raise ValueError(f"adjacency size mismatch: {p_ud.shape} vs {q.shape}")
    return np.maximum(p_ud, q)

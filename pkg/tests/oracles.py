"""Slow, independent reference implementations used only by the tests.

None of these import from ``lexdiar`` beyond plain data classes, so they can
check the package without sharing its code paths.
"""
import itertools
import math
from collections import deque

import numpy as np


def jacobi_eigenvalues(sym, tol=1e-12, max_sweeps=100):
    """Cyclic Jacobi rotations on a symmetric matrix; returns ascending eigenvalues."""
    a = np.array(sym, dtype=float)
    n = a.shape[0]
    scale = max(1.0, float(np.max(np.abs(a)))) if n else 1.0
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, float(np.sum(np.triu(a, 1) ** 2))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-15 * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                if abs(theta) > 1e100:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * ap - s * aq, s * ap + c * aq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * rp - s * rq, s * rp + c * rq
    return np.sort(np.diag(a))


def laplacian_loops(adj):
    """``D - A`` by explicit loops."""
    n = len(adj)
    lap = [[0.0] * n for _ in range(n)]
    for i in range(n):
        d = sum(adj[i][k] for k in range(n))
        for j in range(n):
            lap[i][j] = (d if i == j else 0.0) - adj[i][j]
    return np.array(lap)


def connected_components(adj):
    """Breadth-first component count over non-zero off-diagonal entries."""
    adj = np.asarray(adj)
    n = adj.shape[0]
    seen = [False] * n
    count = 0
    for root in range(n):
        if seen[root]:
            continue
        count += 1
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in range(n):
                if v != u and not seen[v] and (adj[u, v] != 0 or adj[v, u] != 0):
                    seen[v] = True
                    queue.append(v)
    return count


def random_block_adjacency(rng, max_blocks=5, size_range=(1, 10), density_range=(0.5, 1.0)):
    """Block-diagonal symmetric non-negative matrix plus its block sizes."""
    k = int(rng.integers(1, max_blocks + 1))
    sizes = rng.integers(size_range[0], size_range[1] + 1, size=k)
    if sizes.sum() < 2:
        sizes[0] = 2
    m = int(sizes.sum())
    adj = np.zeros((m, m))
    offset = 0
    for s in sizes:
        p = rng.uniform(*density_range)
        block = (rng.random((s, s)) < p) * rng.uniform(0.5, 1.0, size=(s, s))
        block = np.triu(block, 1)
        adj[offset : offset + s, offset : offset + s] = block + block.T
        offset += s
    return adj, [int(s) for s in sizes]


def brute_force_q(words, seg_bounds, c, nu, frac=0.75):
    """Lexical matrix by direct word and segment loops.

    ``words`` is a list of (start, end, prob); ``seg_bounds`` a list of (start, end).
    """
    n_words = len(words)
    utts, cur = [], []
    for i, (_, _, p) in enumerate(words):
        if p > c and cur:
            utts.append(cur)
            cur = []
        cur.append(i)
    if cur:
        utts.append(cur)
    chunks = []
    for u in utts:
        if len(u) < 2:
            continue
        for k in range(0, len(u), nu):
            chunks.append(u[k : k + nu])
    assert sum(len(ch) for ch in chunks) <= n_words
    m = len(seg_bounds)
    q = [[0.0] * m for _ in range(m)]
    for ch in chunks:
        u0, u1 = words[ch[0]][0], words[ch[-1]][1]
        hits = []
        for idx, (s0, s1) in enumerate(seg_bounds):
            ov = max(0.0, min(s1, u1) - max(s0, u0))
            if ov >= frac * (s1 - s0) - 1e-9 or (s0 >= u0 - 1e-9 and s1 <= u1 + 1e-9):
                hits.append(idx)
        if hits:
            for i in range(hits[0], hits[-1] + 1):
                for j in range(hits[0], hits[-1] + 1):
                    q[i][j] = 1.0
    return np.array(q)


def reference_ratio(adj):
    """Max/min eigengap ratio via Jacobi eigenvalues."""
    vals = jacobi_eigenvalues(laplacian_loops(np.asarray(adj).tolist()))
    gaps = np.diff(vals)
    return gaps.max() / max(gaps.min(), 1e-10)


def frame_der(ref, hyp, collar=0.0, step=0.01):
    """Frame-level DER with exhaustive speaker mapping.

    ``ref``/``hyp`` are lists of (onset, offset, speaker) for one recording.
    Returns (missed, false_alarm, speaker_error, scored) in seconds.
    """
    end = max([e for _, e, _ in ref] + [e for _, e, _ in hyp])
    n = int(math.ceil(end / step)) + 1
    centers = (np.arange(n) + 0.5) * step
    ref_spk = sorted({s for *_, s in ref})
    hyp_spk = sorted({s for *_, s in hyp})
    r_act = {s: np.zeros(n, bool) for s in ref_spk}
    h_act = {s: np.zeros(n, bool) for s in hyp_spk}
    for on, off, s in ref:
        r_act[s] |= (centers > on) & (centers < off)
    for on, off, s in hyp:
        h_act[s] |= (centers > on) & (centers < off)
    scored = np.ones(n, bool)
    if collar > 0:
        for on, off, _ in ref:
            for t in (on, off):
                scored &= np.abs(centers - t) >= collar
    n_ref = sum((r_act[s].astype(int) for s in ref_spk), np.zeros(n, int))
    n_hyp = sum((h_act[s].astype(int) for s in hyp_spk), np.zeros(n, int))

    best = 0
    small, large = (hyp_spk, ref_spk) if len(hyp_spk) <= len(ref_spk) else (ref_spk, hyp_spk)
    for perm in itertools.permutations(large, len(small)):
        pairs = zip(small, perm) if small is hyp_spk else zip(perm, small)
        total = 0
        for h, r in pairs:
            total += int(np.sum(h_act[h] & r_act[r] & scored))
        best = max(best, total)
    missed = np.sum(np.maximum(n_ref - n_hyp, 0) * scored)
    falarm = np.sum(np.maximum(n_hyp - n_ref, 0) * scored)
    err = np.sum(np.minimum(n_ref, n_hyp) * scored) - best
    return missed * step, falarm * step, err * step, np.sum(n_ref * scored) * step


def random_turns(rng, speakers, duration, overlap_prob=0.0, gap_prob=0.0):
    """Random (onset, offset, speaker) triples at millisecond resolution."""
    out = []
    t = 0.0
    while t < duration - 0.1:
        length = float(rng.uniform(0.3, 4.0))
        end = round(min(t + length, duration), 3)
        spk = speakers[int(rng.integers(len(speakers)))]
        if end > t:
            out.append((round(t, 3), end, spk))
        if rng.random() < overlap_prob and len(speakers) > 1:
            other = speakers[(speakers.index(spk) + 1) % len(speakers)]
            o_on = round(float(rng.uniform(t, end)), 3)
            o_off = round(min(o_on + float(rng.uniform(0.2, 2.0)), duration), 3)
            if o_off > o_on:
                out.append((o_on, o_off, other))
        t = end + (round(float(rng.uniform(0.1, 1.5)), 3) if rng.random() < gap_prob else 0.0)
    return out


def random_rttm_pair(rng, duration=30.0):
    n_ref = int(rng.integers(1, 4))
    n_hyp = int(rng.integers(1, 5))
    ref = random_turns(rng, [f"r{i}" for i in range(n_ref)], duration, overlap_prob=0.2, gap_prob=0.3)
    hyp = random_turns(rng, [f"h{i}" for i in range(n_hyp)], duration, overlap_prob=0.1, gap_prob=0.3)
    return ref, hyp

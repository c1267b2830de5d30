"""Pure-numpy search kernels; fallback for the compiled extension.

Both backends share the same contract: candidates are indexed lexicographically
(first point most significant) and matching indices are returned in increasing
order, so results are identical whichever backend runs. Candidates are
evaluated in contiguous chunks.
"""

import numpy as np

CHUNK = 1 << 12


def _decode(indices, n, q):
    """Exponent rows for lexicographic candidate indices (first point most significant)."""
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (indices[:, None] // weights) % q


def balanced_derivative_search(act, q, tol_abs):
    """Indices of exponent vectors over Z_q whose derivative sums all vanish.

    ``act`` holds one permutation row per nontrivial group element; a
    candidate e survives when | sum_x w^(e[row[x]] - e[x]) | <= tol_abs for
    every row, with w = exp(2 pi i / q).
    """
    act = np.asarray(act, dtype=np.int64)
    rows, n = act.shape
    total = q**n
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    hits = []
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        F = roots[_decode(idx, n, q)]
        ok = np.ones(len(idx), dtype=bool)
        for r in range(rows):
            sums = (F[:, act[r]] * np.conj(F)).sum(axis=1)
            ok &= np.abs(sums) <= tol_abs
            if not ok.any():
                break
        hits.append(idx[ok])
    return np.concatenate(hits) if hits else np.empty(0, dtype=np.int64)


def evenly_balanced_search(act, diff_table, h_order):
    """Indices of codomain-valued vectors whose derivatives hit every value n/|H| times.

    ``diff_table[i, j]`` is the codomain index of h_i * h_j^{-1}. Returns no
    candidates when |H| does not divide n.
    """
    act = np.asarray(act, dtype=np.int64)
    diff_table = np.asarray(diff_table, dtype=np.int64)
    rows, n = act.shape
    total = h_order**n
    if n % h_order != 0:
        return np.empty(0, dtype=np.int64)
    quota = n // h_order
    hits = []
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        V = _decode(idx, n, h_order)
        ok = np.ones(len(idx), dtype=bool)
        for r in range(rows):
            d = diff_table[V[:, act[r]], V]
            for value in range(h_order):
                ok &= (d == value).sum(axis=1) == quota
            if not ok.any():
                break
        hits.append(idx[ok])
    return np.concatenate(hits) if hits else np.empty(0, dtype=np.int64)

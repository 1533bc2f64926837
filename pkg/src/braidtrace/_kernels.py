"""Hot loops: bracket state-sum enumeration and Hadamard-test shot accumulation.

Every kernel has a numba ``@njit`` version and a vectorized numpy version with
the same contract.  Set ``BRAIDTRACE_DISABLE_NUMBA=1`` (or uninstall numba) to
run the numpy path; ``BACKEND`` records which one is active.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_DISABLED = os.environ.get("BRAIDTRACE_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")
BACKEND = "numba" if HAVE_NUMBA and not _DISABLED else "numpy"


# ---------------------------------------------------------------------------
# State sum
#
# A word of c letters on n strands has c levels of n points; letter j joins
# level j to level (j + 1) mod c, the wrap-around being the braid closure.
# State bit j set means the cup-cap smoothing of letter j.  For every state
# the kernels record the A-exponent of its weight and its closed-loop count:
# hist[e + c, loops] counts states of weight A^e with `loops` loops.
# ---------------------------------------------------------------------------

def _find(parent, k):
    while parent[k] != k:
        parent[k] = parent[parent[k]]
        k = parent[k]
    return k


def _union(parent, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra != rb:
        if ra < rb:
            parent[rb] = ra
        else:
            parent[ra] = rb


def _state_sum_loop(gens, signs, n, start, stop):
    c = gens.shape[0]
    size = c * n
    hist = np.zeros((2 * c + 1, size + 1), dtype=np.int64)
    parent = np.empty(size, dtype=np.int64)
    for s in range(start, stop):
        for k in range(size):
            parent[k] = k
        e = 0
        for j in range(c):
            i = gens[j]
            lo = j * n
            hi = ((j + 1) % c) * n
            if (s >> j) & 1:
                e -= signs[j]
                for t in range(n):
                    if t != i and t != i + 1:
                        _union(parent, lo + t, hi + t)
                _union(parent, lo + i, lo + i + 1)
                _union(parent, hi + i, hi + i + 1)
            else:
                e += signs[j]
                for t in range(n):
                    _union(parent, lo + t, hi + t)
        loops = 0
        for k in range(size):
            if _find(parent, k) == k:
                loops += 1
        hist[e + c, loops] += 1
    return hist


def _letter_edges(gens, n):
    """Per-letter (identity, cup-cap) edge lists, each of shape (c, n, 2)."""
    c = len(gens)
    ident = np.empty((c, n, 2), dtype=np.int64)
    cupcap = np.empty((c, n, 2), dtype=np.int64)
    for j, i in enumerate(gens):
        lo, hi = j * n, ((j + 1) % c) * n
        for t in range(n):
            ident[j, t] = (lo + t, hi + t)
        rows = [(lo + t, hi + t) for t in range(n) if t not in (i, i + 1)]
        rows += [(lo + i, lo + i + 1), (hi + i, hi + i + 1)]
        cupcap[j] = rows
    return ident, cupcap


def numpy_state_sum_histogram(gens, signs, n, start, stop, block=1 << 14):
    """Vectorized label propagation over blocks of states."""
    gens = np.asarray(gens, dtype=np.int64)
    signs = np.asarray(signs, dtype=np.int64)
    c = gens.shape[0]
    size = c * n
    hist = np.zeros((2 * c + 1, size + 1), dtype=np.int64)
    ident, cupcap = _letter_edges(gens, n)
    shifts = np.arange(c, dtype=np.int64)
    for b0 in range(start, stop, block):
        states = np.arange(b0, min(b0 + block, stop), dtype=np.int64)
        m = states.shape[0]
        bits = ((states[:, None] >> shifts) & 1).astype(bool)
        edges = np.where(bits[:, :, None, None], cupcap[None], ident[None])
        edges = edges.reshape(m, c * n, 2)
        u, v = edges[..., 0], edges[..., 1]
        labels = np.broadcast_to(np.arange(size, dtype=np.int64), (m, size)).copy()
        offset = (np.arange(m, dtype=np.int64) * size)[:, None]
        fu, fv = (u + offset).ravel(), (v + offset).ravel()
        while True:
            flat = labels.ravel()
            lu, lv = flat[fu], flat[fv]
            if np.array_equal(lu, lv):
                break
            low = np.minimum(lu, lv)
            np.minimum.at(flat, fu, low)
            np.minimum.at(flat, fv, low)
            labels = np.take_along_axis(labels, labels, axis=1)
        ordered = np.sort(labels, axis=1)
        loops = 1 + np.count_nonzero(np.diff(ordered, axis=1), axis=1)
        exps = np.where(bits, -signs, signs).sum(axis=1)
        np.add.at(hist, (exps + c, loops), 1)
    return hist


# ---------------------------------------------------------------------------
# Hadamard-test shots
#
# Shot t reads only the diagonal amplitude diag[idx[t]]: the ancilla reads 0
# with probability (1 + Re(phase * amp)) / 2, and the shot contributes
# X = dim * weight[idx] * (+1 or -1).  Returns (sum X, sum X^2, per-index sums).
# ---------------------------------------------------------------------------

def _shot_loop(diag, weights, idx, u, phase):
    dim = diag.shape[0]
    total = 0.0
    total_sq = 0.0
    per_index = np.zeros(dim, dtype=np.float64)
    for t in range(idx.shape[0]):
        p = idx[t]
        p0 = 0.5 * (1.0 + (phase * diag[p]).real)
        x = dim * weights[p]
        if u[t] >= p0:
            x = -x
        total += x
        total_sq += x * x
        per_index[p] += x
    return total, total_sq, per_index


def numpy_shot_accumulate(diag, weights, idx, u, phase):
    dim = diag.shape[0]
    p0 = 0.5 * (1.0 + (phase * diag[idx]).real)
    x = dim * weights[idx] * np.where(u < p0, 1.0, -1.0)
    return float(x.sum()), float(x @ x), np.bincount(idx, weights=x, minlength=dim)


if HAVE_NUMBA:
    _find = njit(cache=True)(_find)
    _union = njit(cache=True)(_union)
    numba_state_sum_histogram = njit(cache=True, nogil=True)(_state_sum_loop)
    numba_shot_accumulate = njit(cache=True, nogil=True)(_shot_loop)
else:  # pragma: no cover
    numba_state_sum_histogram = None
    numba_shot_accumulate = None


def state_sum_histogram(gens, signs, n, start, stop):
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    signs = np.ascontiguousarray(signs, dtype=np.int64)
    if BACKEND == "numba":
        return numba_state_sum_histogram(gens, signs, n, start, stop)
    return numpy_state_sum_histogram(gens, signs, n, start, stop)


def shot_accumulate(diag, weights, idx, u, phase):
    diag = np.ascontiguousarray(diag, dtype=np.complex128)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    idx = np.ascontiguousarray(idx, dtype=np.int64)
    u = np.ascontiguousarray(u, dtype=np.float64)
    if BACKEND == "numba":
        s, s2, per = numba_shot_accumulate(diag, weights, idx, u, complex(phase))
        return float(s), float(s2), per
    return numpy_shot_accumulate(diag, weights, idx, u, complex(phase))

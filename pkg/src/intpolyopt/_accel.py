"""Fixed-width integer scan kernels.

Two inner loops in the package are plain int64 work over boxes of lattice
points: the brute-force membership scan behind the oracle and the search for a
short vector in a cone's fundamental parallelepiped. Both have a numba kernel
and a vectorised numpy fallback that return identical results.

Set ``INTPOLYOPT_DISABLE_NUMBA=1`` to force the numpy path. Inputs whose
intermediate values could overflow int64 go through a pure-Python loop
regardless of the flag.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLED = os.environ.get("INTPOLYOPT_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")
NUMBA_ENABLED = numba is not None and not _DISABLED

_INT64_SAFE = 1 << 62
_CHUNK = 1 << 18


def backend() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


# -- membership scan ---------------------------------------------------------


def _scan_members_numpy(A, b, lo, hi):
    shape = tuple(int(h - l + 1) for l, h in zip(lo, hi))
    total = int(np.prod(shape, dtype=np.int64))
    keep = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        pts = np.stack(np.unravel_index(idx, shape), axis=1).astype(np.int64) + lo
        ok = np.all(pts @ A.T <= b, axis=1)
        keep.append(pts[ok])
    if not keep:
        return np.zeros((0, len(lo)), dtype=np.int64)
    return np.concatenate(keep)


def _scan_members_loop(A, b, lo, hi):
    # mirrors the numba kernel; compiled when numba is present
    d = lo.shape[0]
    m = A.shape[0]
    total = 1
    for j in range(d):
        total *= hi[j] - lo[j] + 1
    mask = np.zeros(total, dtype=np.bool_)
    x = lo.copy()
    for t in range(total):
        ok = True
        for i in range(m):
            s = 0
            for j in range(d):
                s += A[i, j] * x[j]
            if s > b[i]:
                ok = False
                break
        mask[t] = ok
        # odometer, last coordinate fastest (lexicographic order)
        j = d - 1
        while j >= 0:
            x[j] += 1
            if x[j] <= hi[j]:
                break
            x[j] = lo[j]
            j -= 1
    n = 0
    for t in range(total):
        if mask[t]:
            n += 1
    out = np.empty((n, d), dtype=np.int64)
    x = lo.copy()
    r = 0
    for t in range(total):
        if mask[t]:
            for j in range(d):
                out[r, j] = x[j]
            r += 1
        j = d - 1
        while j >= 0:
            x[j] += 1
            if x[j] <= hi[j]:
                break
            x[j] = lo[j]
            j -= 1
    return out


# -- short vector search ------------------------------------------------------


def _short_vector_numpy(adj, bounds, threshold):
    d = bounds.shape[0]
    shape = tuple(int(2 * bnd + 1) for bnd in bounds)
    total = int(np.prod(shape, dtype=np.int64))
    best_key = -1
    best_w = None
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        w = np.stack(np.unravel_index(idx, shape), axis=1).astype(np.int64) - bounds
        a = w @ adj.T
        amax = np.max(np.abs(a), axis=1)
        nnz = np.count_nonzero(a, axis=1)
        ok = (amax <= threshold) & np.any(w != 0, axis=1)
        if not ok.any():
            continue
        key = np.where(ok, amax * (d + 1) + nnz, np.iinfo(np.int64).max)
        i = int(np.argmin(key))
        if best_key < 0 or key[i] < best_key:
            best_key = int(key[i])
            best_w = w[i].copy()
    return best_w, best_key


def _short_vector_loop(adj, bounds, threshold):
    d = bounds.shape[0]
    w = -bounds.copy()
    best_key = -1
    best_w = np.zeros(d, dtype=np.int64)
    total = 1
    for j in range(d):
        total *= 2 * bounds[j] + 1
    for t in range(total):
        nonzero = False
        for j in range(d):
            if w[j] != 0:
                nonzero = True
                break
        if nonzero:
            amax = 0
            nnz = 0
            for i in range(d):
                s = 0
                for j in range(d):
                    s += adj[i, j] * w[j]
                if s < 0:
                    s = -s
                if s > amax:
                    amax = s
                if s != 0:
                    nnz += 1
            if amax <= threshold:
                key = amax * (d + 1) + nnz
                if best_key < 0 or key < best_key:
                    best_key = key
                    for j in range(d):
                        best_w[j] = w[j]
        j = d - 1
        while j >= 0:
            w[j] += 1
            if w[j] <= bounds[j]:
                break
            w[j] = -bounds[j]
            j -= 1
    return best_w, best_key


if numba is not None:
    _scan_members_numba = numba.njit(cache=True, nogil=True)(_scan_members_loop)
    _short_vector_numba = numba.njit(cache=True, nogil=True)(_short_vector_loop)
else:  # pragma: no cover
    _scan_members_numba = _short_vector_numba = None


def _fits_int64(*magnitudes) -> bool:
    return sum(magnitudes) < _INT64_SAFE


def scan_members(A, b, lo, hi, use_numba: bool | None = None) -> list[tuple[int, ...]]:
    """Lattice points ``x`` with ``lo <= x <= hi`` and ``A x <= b``, lexicographic."""
    d = len(lo)
    if any(h < l for l, h in zip(lo, hi)):
        return []
    amax = max((abs(v) for row in A for v in row), default=0)
    cmax = max([abs(v) for v in lo] + [abs(v) for v in hi] + [0])
    bmax = max((abs(v) for v in b), default=0)
    if not _fits_int64(amax * cmax * d, bmax, cmax):
        return [
            x
            for x in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi)))
            if all(sum(a * v for a, v in zip(row, x)) <= r for row, r in zip(A, b))
        ]
    An = np.asarray(A, dtype=np.int64).reshape(len(A), d)
    bn = np.asarray(b, dtype=np.int64)
    lon = np.asarray(lo, dtype=np.int64)
    hin = np.asarray(hi, dtype=np.int64)
    if use_numba is None:
        use_numba = NUMBA_ENABLED
    if use_numba:
        pts = _scan_members_numba(An, bn, lon, hin)
    else:
        pts = _scan_members_numpy(An, bn, lon, hin)
    return [tuple(int(v) for v in row) for row in pts]


def short_vector(adj, bounds, threshold: int, use_numba: bool | None = None):
    """Nonzero ``w`` in the box ``|w_j| <= bounds[j]`` with ``max|adj @ w| <= threshold``.

    Among candidates, minimises ``max|adj @ w|`` and then the number of nonzero
    entries; ties go to the lexicographically first ``w``. Returns ``None``
    when the box holds no candidate.
    """
    d = len(bounds)
    amax = max(abs(v) for row in adj for v in row)
    if not _fits_int64(amax * sum(bounds) * d, threshold * (d + 1) + d):
        return _short_vector_python(adj, bounds, threshold)
    adjn = np.asarray(adj, dtype=np.int64).reshape(d, d)
    bn = np.asarray(bounds, dtype=np.int64)
    if use_numba is None:
        use_numba = NUMBA_ENABLED
    if use_numba:
        w, key = _short_vector_numba(adjn, bn, np.int64(threshold))
    else:
        w, key = _short_vector_numpy(adjn, bn, threshold)
    if key < 0:
        return None
    return tuple(int(v) for v in w)


def _short_vector_python(adj, bounds, threshold):
    d = len(bounds)
    best = None
    best_key = None
    for w in itertools.product(*(range(-b, b + 1) for b in bounds)):
        if not any(w):
            continue
        a = [abs(sum(x * y for x, y in zip(row, w))) for row in adj]
        amax = max(a)
        if amax > threshold:
            continue
        key = amax * (d + 1) + sum(1 for v in a if v)
        if best_key is None or key < best_key:
            best, best_key = w, key
    return best

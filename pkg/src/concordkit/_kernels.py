"""Hot numeric kernels with a numba path and a pure-numpy path.

The numba path is used when numba imports and ``CONCORDKIT_NUMBA`` is not
``0``.  Both paths must agree bit for bit on integer input; the benchmark in
``benchmarks/bench_kernels.py`` times them against each other.

Truncated Magnus arrays: an element of Z<<X_0..X_{r-1}>> / (degree > c) is a
flat array holding the degree-0 coefficient, then the r degree-1
coefficients, then r^2 degree-2 coefficients, and so on.  Inside degree d
a monomial X_{i1}...X_{id} sits at offset(d) + sum_k i_k r^(d-k).
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("CONCORDKIT_NUMBA", "1") != "0"

# products whose coefficients could leave int64 fall back to Python ints
_INT_LIMIT = 2 ** 62


def offsets(r: int, c: int) -> np.ndarray:
    off = np.zeros(c + 2, dtype=np.int64)
    for d in range(c + 1):
        off[d + 1] = off[d] + r ** d
    return off


# ---------------------------------------------------------------------------
# numpy reference path (works for int64 and object arrays)


def _mul_numpy(a, b, r, c, off):
    out = np.zeros_like(a) if a.dtype == b.dtype else np.zeros(a.shape, dtype=object)
    for d in range(c + 1):
        acc = None
        for k in range(d + 1):
            ak = a[off[k]:off[k + 1]]
            bk = b[off[d - k]:off[d - k + 1]]
            term = np.outer(ak, bk).ravel()
            acc = term if acc is None else acc + term
        out[off[d]:off[d + 1]] = acc
    return out


def _signatures_numpy(V, thetas):
    V = np.asarray(V, dtype=np.float64)
    n = V.shape[0]
    if n == 0:
        return np.zeros(len(thetas), dtype=np.int64)
    w = np.exp(1j * np.asarray(thetas))[:, None, None]
    A = (1 - w) * V[None] + (1 - np.conj(w)) * V.T[None]
    ev = np.linalg.eigvalsh(A)
    return (ev > 1e-9).sum(axis=1) - (ev < -1e-9).sum(axis=1)


# ---------------------------------------------------------------------------
# numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _mul_nb(a, b, r, c, off):
        out = np.zeros(a.shape[0], dtype=np.int64)
        for d in range(c + 1):
            base = off[d]
            size = off[d + 1] - off[d]
            for code in range(size):
                acc = 0
                for k in range(d + 1):
                    # prefix of length k, suffix of length d - k
                    span_s = r ** (d - k)
                    p = code // span_s
                    s = code - p * span_s
                    acc += a[off[k] + p] * b[off[d - k] + s]
                out[base + code] = acc
        return out

    @njit(cache=True)
    def _signatures_nb(V, thetas):
        n = V.shape[0]
        out = np.zeros(thetas.shape[0], dtype=np.int64)
        if n == 0:
            return out
        A = np.empty((n, n), dtype=np.complex128)
        for t in range(thetas.shape[0]):
            w = np.exp(1j * thetas[t])
            for i in range(n):
                for j in range(n):
                    A[i, j] = (1 - w) * V[i, j] + (1 - np.conj(w)) * V[j, i]
            ev = np.linalg.eigvalsh(A)
            s = 0
            for e in ev:
                if e > 1e-9:
                    s += 1
                elif e < -1e-9:
                    s -= 1
            out[t] = s
        return out


# ---------------------------------------------------------------------------
# public entry points


def _max_abs(a) -> int:
    if a.dtype == object:
        return max((abs(int(x)) for x in a), default=0)
    return int(np.abs(a).max()) if a.size else 0


def magnus_mul(a: np.ndarray, b: np.ndarray, r: int, c: int, off: np.ndarray, use_numba: bool | None = None):
    """Product of two truncated Magnus arrays."""
    use = USE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    if a.dtype == object or b.dtype == object or (c + 1) * _max_abs(a) * _max_abs(b) >= _INT_LIMIT:
        return _mul_numpy(a.astype(object), b.astype(object), r, c, off)
    if use:
        return _mul_nb(a, b, r, c, off)
    return _mul_numpy(a, b, r, c, off)


def lt_signature_samples(V, thetas, use_numba: bool | None = None) -> np.ndarray:
    """Floating-point signatures of (1-w)V + (1-conj w)V^T at w = exp(i theta).

    Only used as an independent sampling oracle; certified answers never pass
    through here.
    """
    use = USE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    V = np.ascontiguousarray(np.asarray(V, dtype=np.float64).reshape(len(V), len(V)) if len(V) else np.zeros((0, 0)))
    thetas = np.ascontiguousarray(np.asarray(thetas, dtype=np.float64))
    if use:
        return _signatures_nb(V, thetas)
    return _signatures_numpy(V, thetas)

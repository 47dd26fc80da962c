"""Hot numeric kernels: Shannon entropy of a pmf table and a dense tableau
simplex.

Each kernel exists twice, a numba ``@njit`` loop and a vectorised numpy
version.  The numba path is used when numba imports and the environment
variable ``RATEREGION_DISABLE_NUMBA`` is unset (or ``0``/``false``).  Both
paths implement the same pivoting rule, so they visit the same vertices.
"""
from __future__ import annotations

import os

import numpy as np

DISABLE_ENV = "RATEREGION_DISABLE_NUMBA"

LP_OPTIMAL = 0
LP_UNBOUNDED = 1
LP_ITERATION_LIMIT = 2

PIVOT_TOL = 1e-12


def _flag_set(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _flag_set(DISABLE_ENV)


# -- entropy ---------------------------------------------------------------

def entropy_bits_numpy(p: np.ndarray) -> float:
    p = np.ravel(p)
    p = p[p > 0.0]
    return float(-np.dot(p, np.log2(p)))


def _entropy_loop(p):
    acc = 0.0
    for i in range(p.size):
        v = p[i]
        if v > 0.0:
            acc -= v * np.log2(v)
    return acc


# -- simplex ---------------------------------------------------------------
#
# Tableau layout for max c.x s.t. A x <= b, x >= 0, b >= 0:
#   rows 0..m-1 : [A | I | b]
#   row m       : [-c | 0 | 0]
# Slack basis is feasible because b >= 0, so no phase one is needed.
# Entering column: lowest index with negative reduced cost (Bland).
# Leaving row: minimum ratio, ties broken by lowest basic variable index.

def _simplex_loop(T, basis, tol, max_iter):
    m = T.shape[0] - 1
    ncol = T.shape[1] - 1
    for _ in range(max_iter):
        enter = -1
        for j in range(ncol):
            if T[m, j] < -tol:
                enter = j
                break
        if enter < 0:
            return 0
        leave = -1
        best = 0.0
        for i in range(m):
            a = T[i, enter]
            if a > PIVOT_TOL:
                ratio = T[i, ncol] / a
                if leave < 0 or ratio < best - 1e-15 or (
                    abs(ratio - best) <= 1e-15 and basis[i] < basis[leave]
                ):
                    leave = i
                    best = ratio
        if leave < 0:
            return 1
        piv = T[leave, enter]
        for j in range(ncol + 1):
            T[leave, j] /= piv
        for i in range(m + 1):
            if i != leave:
                f = T[i, enter]
                if f != 0.0:
                    for j in range(ncol + 1):
                        T[i, j] -= f * T[leave, j]
        basis[leave] = enter
    return 2


def _simplex_numpy(T, basis, tol, max_iter):
    m = T.shape[0] - 1
    for _ in range(max_iter):
        neg = np.flatnonzero(T[m, :-1] < -tol)
        if neg.size == 0:
            return LP_OPTIMAL
        enter = int(neg[0])
        col = T[:m, enter]
        rows = np.flatnonzero(col > PIVOT_TOL)
        if rows.size == 0:
            return LP_UNBOUNDED
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        cand = rows[ratios <= best + 1e-15]
        leave = int(cand[np.argmin(basis[cand])])
        T[leave] /= T[leave, enter]
        f = T[:, enter].copy()
        f[leave] = 0.0
        T -= np.outer(f, T[leave])
        basis[leave] = enter
    return LP_ITERATION_LIMIT


if HAVE_NUMBA:
    entropy_bits_numba = numba.njit(cache=True)(_entropy_loop)
    _simplex_numba = numba.njit(cache=True)(_simplex_loop)
else:  # pragma: no cover
    entropy_bits_numba = None
    _simplex_numba = None


def _tableau(c, A, b):
    m, n = A.shape
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = np.maximum(b, 0.0)
    T[m, :n] = -c
    basis = np.arange(n, n + m, dtype=np.int64)
    return T, basis


def lp_max(c, A, b, tol: float = 1e-9, max_iter: int = 10_000, use_numba=None):
    """Maximise ``c @ x`` over ``{x >= 0 : A @ x <= b}`` with ``b >= 0``.

    Returns ``(status, value, x)``; ``value`` and ``x`` are ``nan`` unless
    ``status == LP_OPTIMAL``.
    """
    c = np.ascontiguousarray(c, dtype=np.float64)
    A = np.ascontiguousarray(A, dtype=np.float64).reshape(-1, c.size)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if np.any(b < -tol):
        raise ValueError("lp_max needs a nonnegative right-hand side")
    n = c.size
    if A.shape[0] == 0:
        if np.any(c > tol):
            return LP_UNBOUNDED, np.nan, np.full(n, np.nan)
        return LP_OPTIMAL, 0.0, np.zeros(n)
    T, basis = _tableau(c, A, b)
    if use_numba is None:
        use_numba = USE_NUMBA
    solve = _simplex_numba if use_numba else _simplex_numpy
    status = int(solve(T, basis, tol, max_iter))
    if status != LP_OPTIMAL:
        return status, np.nan, np.full(n, np.nan)
    x = np.zeros(n + A.shape[0])
    x[basis] = T[:-1, -1]
    return LP_OPTIMAL, float(T[-1, -1]), x[:n]


def entropy_bits(p: np.ndarray, use_numba=None) -> float:
    """Entropy in bits of a (possibly multi-dimensional) pmf table."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return float(entropy_bits_numba(np.ascontiguousarray(p, dtype=np.float64).ravel()))
    return entropy_bits_numpy(p)

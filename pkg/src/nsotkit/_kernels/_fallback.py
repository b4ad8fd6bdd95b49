"""Pure-python (numpy) implementations of the hot kernels.

Selected at import time by :mod:`nsotkit._kernels` when the compiled
extension is unavailable or ``NSOTKIT_PURE_PYTHON`` is set.  Must stay
behaviourally identical to ``_core.pyx``; ``tests/test_kernels.py`` pins
the parity.
"""

import numpy as np

BACKEND_NAME = "python"

# simplex_pivot_loop exit statuses, shared with the compiled kernel
STATUS_OPTIMAL = 0
STATUS_UNBOUNDED = 1
STATUS_ITER_LIMIT = 2


def entropy_bits(p):
    """Shannon entropy in bits of a flat weight vector, 0*log0 = 0."""
    p = np.asarray(p, dtype=np.float64)
    pos = p[p > 0.0]
    if pos.size == 0:
        return 0.0
    return float(-(pos * np.log2(pos)).sum())


def tv_distance_flat(p, q):
    """Half L1 distance between two flat vectors."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    return float(0.5 * np.abs(p - q).sum())


def simplex_pivot_loop(tableau, basis, tol, max_iter):
    """Run Bland-rule pivots on a dense simplex tableau, in place.

    ``tableau`` is (m+1) x (n+1): m constraint rows ``[A | b]`` with an
    identity embedded at the ``basis`` columns, plus a bottom reduced-cost
    row for a minimization objective.  Pivots until all reduced costs are
    >= -tol (optimal), no positive pivot element exists in the entering
    column (unbounded), or ``max_iter`` is hit.
    """
    T = tableau
    m = T.shape[0] - 1
    n = T.shape[1] - 1
    for _ in range(max_iter):
        enter = -1
        for j in range(n):
            if T[m, j] < -tol:
                enter = j
                break
        if enter < 0:
            return STATUS_OPTIMAL

        leave = -1
        best_ratio = np.inf
        for i in range(m):
            a = T[i, enter]
            if a > tol:
                ratio = T[i, n] / a
                if ratio < best_ratio - tol or (
                    abs(ratio - best_ratio) <= tol
                    and (leave < 0 or basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return STATUS_UNBOUNDED

        piv = T[leave, enter]
        T[leave, :] /= piv
        col = T[:, enter].copy()
        col[leave] = 0.0
        T -= np.outer(col, T[leave, :])
        T[:, enter] = 0.0
        T[leave, enter] = 1.0
        basis[leave] = enter
    return STATUS_ITER_LIMIT

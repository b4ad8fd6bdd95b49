"""Self-contained dense primal simplex (two phases, Bland's rule).

Solves ``max c.x  s.t.  A x = b, x >= 0`` exactly enough for desk-scale
polytope work (residual tolerance 1e-7 by default).  The pivot loop runs
on the selected kernel backend; phase management and basis bookkeeping
live here so both backends share one algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import (
    STATUS_ITER_LIMIT,
    STATUS_UNBOUNDED,
    simplex_pivot_loop,
)
from .errors import DomainError

DEFAULT_LP_TOLERANCE = 1e-7


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded" | "iteration_limit"
    x: np.ndarray | None
    value: float | None


def _run(tableau: np.ndarray, basis: np.ndarray, tol: float, max_iter: int) -> int:
    return int(simplex_pivot_loop(tableau, basis, tol, max_iter))


def solve_lp(
    c,
    A,
    b,
    tol: float = DEFAULT_LP_TOLERANCE,
    max_iter: int | None = None,
) -> LpResult:
    """Two-phase simplex for ``max c.x, A x = b, x >= 0``."""
    A = np.asarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64).copy()
    c = np.asarray(c, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != b.shape[0] or A.shape[1] != c.shape[0]:
        raise DomainError(
            f"inconsistent LP dimensions A{A.shape}, b{b.shape}, c{c.shape}"
        )
    m, n = A.shape
    if max_iter is None:
        max_iter = 200 * (m + n + 10)

    A = A.copy()
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # phase 1: minimize the sum of artificials
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    # reduced costs of the artificial objective with artificials basic
    T[m, :n] = -A.sum(axis=0)
    T[m, -1] = -b.sum()
    basis = np.arange(n, n + m, dtype=np.int64)

    status = _run(T, basis, tol, max_iter)
    if status == STATUS_ITER_LIMIT:
        return LpResult("iteration_limit", None, None)
    if -T[m, -1] > tol * max(1.0, abs(b).sum()):
        return LpResult("infeasible", None, None)

    # pivot lingering artificials out of the basis (or drop redundant rows)
    keep_rows = []
    for i in range(m):
        if basis[i] < n:
            keep_rows.append(i)
            continue
        pivot_col = -1
        for jcol in range(n):
            if abs(T[i, jcol]) > tol:
                pivot_col = jcol
                break
        if pivot_col < 0:
            continue  # redundant constraint row
        piv = T[i, pivot_col]
        T[i, :] /= piv
        col = T[:, pivot_col].copy()
        col[i] = 0.0
        T -= np.outer(col, T[i, :])
        T[:, pivot_col] = 0.0
        T[i, pivot_col] = 1.0
        basis[i] = pivot_col
        keep_rows.append(i)

    rows = np.array(keep_rows, dtype=np.int64)
    m2 = len(rows)
    basis2 = basis[rows].copy()

    # phase 2 tableau on the original columns
    T2 = np.zeros((m2 + 1, n + 1))
    T2[:m2, :n] = T[rows][:, :n]
    T2[:m2, -1] = T[rows][:, -1]
    T2[m2, :n] = -c  # minimize -c.x
    for i in range(m2):
        coef = T2[m2, basis2[i]]
        if coef != 0.0:
            T2[m2, :] -= coef * T2[i, :]

    status = _run(T2, basis2, tol, max_iter)
    if status == STATUS_UNBOUNDED:
        return LpResult("unbounded", None, None)
    if status == STATUS_ITER_LIMIT:
        return LpResult("iteration_limit", None, None)

    x = np.zeros(n)
    for i in range(m2):
        x[basis2[i]] = T2[i, -1]
    return LpResult("optimal", x, float(c @ x))

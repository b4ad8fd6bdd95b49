# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: entropy/TV accumulation and the simplex pivot loop.

Mirrors :mod:`nsotkit._kernels._fallback`; keep both in sync.
"""

from libc.math cimport log2, fabs, INFINITY

BACKEND_NAME = "cython"

STATUS_OPTIMAL = 0
STATUS_UNBOUNDED = 1
STATUS_ITER_LIMIT = 2


def entropy_bits(const double[::1] p):
    """Shannon entropy in bits of a flat weight vector, 0*log0 = 0."""
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(p.shape[0]):
        if p[i] > 0.0:
            s -= p[i] * log2(p[i])
    return s


def tv_distance_flat(const double[::1] p, const double[::1] q):
    """Half L1 distance between two flat vectors."""
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(p.shape[0]):
        s += fabs(p[i] - q[i])
    return 0.5 * s


def simplex_pivot_loop(double[:, ::1] T, long long[::1] basis,
                       double tol, long long max_iter):
    """Bland-rule pivoting on a dense minimization tableau, in place.

    Same contract as the fallback: returns 0 optimal, 1 unbounded,
    2 iteration limit.
    """
    cdef Py_ssize_t m = T.shape[0] - 1
    cdef Py_ssize_t n = T.shape[1] - 1
    cdef Py_ssize_t it, i, j, enter, leave
    cdef double a, ratio, best_ratio, piv, factor

    for it in range(max_iter):
        enter = -1
        for j in range(n):
            if T[m, j] < -tol:
                enter = j
                break
        if enter < 0:
            return STATUS_OPTIMAL

        leave = -1
        best_ratio = INFINITY
        for i in range(m):
            a = T[i, enter]
            if a > tol:
                ratio = T[i, n] / a
                if ratio < best_ratio - tol or (
                    fabs(ratio - best_ratio) <= tol
                    and (leave < 0 or basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return STATUS_UNBOUNDED

        piv = T[leave, enter]
        for j in range(n + 1):
            T[leave, j] /= piv
        for i in range(m + 1):
            if i == leave:
                continue
            factor = T[i, enter]
            if factor != 0.0:
                for j in range(n + 1):
                    T[i, j] -= factor * T[leave, j]
        for i in range(m + 1):
            T[i, enter] = 0.0
        T[leave, enter] = 1.0
        basis[leave] = enter
    return STATUS_ITER_LIMIT

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels: tight loops over all q^n candidate functions.

Same contract as _core_py: lexicographic candidate indices (first point most
significant), returned in increasing order. The odometer walks the exponent
vector in place, and each candidate bails out on the first unbalanced row.
"""

from libc.math cimport cos, sin
from libc.stdlib cimport free, malloc

import numpy as np


def balanced_derivative_search(const long long[:, ::1] act, int q, double tol_abs):
    """Indices of exponent vectors over Z_q whose derivative sums all vanish."""
    cdef Py_ssize_t rows = act.shape[0]
    cdef Py_ssize_t n = act.shape[1]
    cdef long long total = 1
    cdef Py_ssize_t i, r, x
    for i in range(n):
        total *= q

    cdef double* cr = <double*> malloc(q * sizeof(double))
    cdef double* ci = <double*> malloc(q * sizeof(double))
    cdef int* e = <int*> malloc(n * sizeof(int))
    if cr == NULL or ci == NULL or e == NULL:
        free(cr); free(ci); free(e)
        raise MemoryError()
    cdef double angle = 6.283185307179586476925287 / q
    for i in range(q):
        cr[i] = cos(angle * i)
        ci[i] = sin(angle * i)
    for i in range(n):
        e[i] = 0

    hits = []
    cdef double t2 = tol_abs * tol_abs
    cdef double sre, sim
    cdef int d
    cdef long long idx
    cdef bint ok
    try:
        for idx in range(total):
            ok = True
            for r in range(rows):
                sre = 0.0
                sim = 0.0
                for x in range(n):
                    d = e[act[r, x]] - e[x]
                    if d < 0:
                        d += q
                    sre += cr[d]
                    sim += ci[d]
                if sre * sre + sim * sim > t2:
                    ok = False
                    break
            if ok:
                hits.append(idx)
            i = n - 1
            while i >= 0:
                e[i] += 1
                if e[i] == q:
                    e[i] = 0
                    i -= 1
                else:
                    break
    finally:
        free(cr)
        free(ci)
        free(e)
    return np.asarray(hits, dtype=np.int64)


def evenly_balanced_search(const long long[:, ::1] act,
                           const long long[:, ::1] diff_table, int h_order):
    """Indices of codomain-valued vectors whose derivatives hit every value n/|H| times."""
    cdef Py_ssize_t rows = act.shape[0]
    cdef Py_ssize_t n = act.shape[1]
    cdef long long total = 1
    cdef Py_ssize_t i, r, x
    for i in range(n):
        total *= h_order
    if n % h_order != 0:
        return np.empty(0, dtype=np.int64)
    cdef int quota = <int> (n // h_order)

    cdef int* v = <int*> malloc(n * sizeof(int))
    cdef int* counts = <int*> malloc(h_order * sizeof(int))
    if v == NULL or counts == NULL:
        free(v); free(counts)
        raise MemoryError()
    for i in range(n):
        v[i] = 0

    hits = []
    cdef long long idx
    cdef bint ok
    try:
        for idx in range(total):
            ok = True
            for r in range(rows):
                for i in range(h_order):
                    counts[i] = 0
                for x in range(n):
                    counts[diff_table[v[act[r, x]], v[x]]] += 1
                for i in range(h_order):
                    if counts[i] != quota:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                hits.append(idx)
            i = n - 1
            while i >= 0:
                v[i] += 1
                if v[i] == h_order:
                    v[i] = 0
                    i -= 1
                else:
                    break
    finally:
        free(v)
        free(counts)
    return np.asarray(hits, dtype=np.int64)

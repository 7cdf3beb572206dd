# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel implementations (native backend).

Mirrors dimscope.kernels._numpy exactly; the test suite asserts the two
backends agree. The pairwise scan presorts every column once and derives
each pair's common-subset ranks by a linear walk over that order, so no
per-pair sorting happens.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport NAN, isnan, sqrt
from libc.stdlib cimport free, malloc

cnp.import_array()

cdef double _EPS = 1e-12


cdef int _common_sorted(const double[:, ::1] v, const cnp.int64_t[:, ::1] presort,
                        Py_ssize_t m, Py_ssize_t col, Py_ssize_t other,
                        cnp.int64_t* buf) noexcept nogil:
    """Items with both columns present, in ascending order of `col`'s value."""
    cdef int c = 0
    cdef Py_ssize_t t, i
    for t in range(m):
        i = presort[t, col]
        if isnan(v[i, col]):
            break  # argsort places NaN last
        if not isnan(v[i, other]):
            buf[c] = i
            c += 1
    return c


cdef bint _rank_walk(const double[:, ::1] v, Py_ssize_t col, cnp.int64_t* buf,
                     int c, double* rank) noexcept nogil:
    """Average ranks of the walked order into rank[item]; False if constant."""
    cdef int t0 = 0, t1, t
    cdef double avg
    if v[buf[0], col] == v[buf[c - 1], col]:
        return False
    while t0 < c:
        t1 = t0
        while t1 + 1 < c and v[buf[t1 + 1], col] == v[buf[t0], col]:
            t1 += 1
        avg = (t0 + t1 + 2) / 2.0
        for t in range(t0, t1 + 1):
            rank[buf[t]] = avg
        t0 = t1 + 1
    return True


cdef double _pearson_over(const cnp.int64_t* buf, int c,
                          const double* ra, const double* rb) noexcept nogil:
    cdef double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0, da, db, r
    cdef int t
    cdef Py_ssize_t i
    for t in range(c):
        i = buf[t]
        ma += ra[i]; mb += rb[i]
    ma /= c; mb /= c
    for t in range(c):
        i = buf[t]
        da = ra[i] - ma; db = rb[i] - mb
        saa += da * da; sbb += db * db; sab += da * db
    if saa == 0 or sbb == 0:
        return NAN
    r = sab / sqrt(saa * sbb)
    if r > 1.0: r = 1.0
    if r < -1.0: r = -1.0
    return r


def pairwise_complete_spearman(values):
    values = np.ascontiguousarray(values, dtype=np.float64)
    cdef double[:, ::1] v = values
    cdef Py_ssize_t m = v.shape[0], n = v.shape[1]
    presort_arr = np.argsort(values, axis=0, kind="stable")
    cdef cnp.int64_t[:, ::1] presort = np.ascontiguousarray(presort_arr, dtype=np.int64)
    out_arr = np.full((n, n), np.nan)
    cdef double[:, ::1] out = out_arr

    cdef cnp.int64_t* buf = <cnp.int64_t*> malloc(m * sizeof(cnp.int64_t))
    cdef double* ra = <double*> malloc(m * sizeof(double))
    cdef double* rb = <double*> malloc(m * sizeof(double))
    if buf == NULL or ra == NULL or rb == NULL:
        free(buf); free(ra); free(rb)
        raise MemoryError()

    cdef Py_ssize_t i, j, k
    cdef int c, cb
    cdef double lo, hi, x
    try:
        with nogil:
            for j in range(n):
                c = 0
                lo = 0; hi = 0
                for i in range(m):
                    x = v[i, j]
                    if not isnan(x):
                        if c == 0:
                            lo = x; hi = x
                        elif x < lo:
                            lo = x
                        elif x > hi:
                            hi = x
                        c += 1
                if c >= 2 and lo < hi:
                    out[j, j] = 1.0
            for j in range(n):
                for k in range(j + 1, n):
                    c = _common_sorted(v, presort, m, j, k, buf)
                    if c < 2:
                        continue
                    if not _rank_walk(v, j, buf, c, ra):
                        continue
                    cb = _common_sorted(v, presort, m, k, j, buf)
                    if not _rank_walk(v, k, buf, cb, rb):
                        continue
                    out[j, k] = _pearson_over(buf, cb, ra, rb)
                    out[k, j] = out[j, k]
    finally:
        free(buf); free(ra); free(rb)
    return out_arr


def two_opt_pass(cnp.int64_t[::1] order, double[:, ::1] d,
                 bint lock_first=False, bint lock_last=False):
    cdef Py_ssize_t n = order.shape[0]
    cdef double gain = 0.0, old, new, delta
    cdef Py_ssize_t i, k, t, lo, hi
    cdef cnp.int64_t tmp
    lo = 1 if lock_first else 0
    hi = n - 2 if lock_last else n - 1
    with nogil:
        for i in range(lo, hi):
            for k in range(i + 1, hi + 1):
                if i == 0 and k == n - 1:
                    continue
                old = 0; new = 0
                if i > 0:
                    old += d[order[i - 1], order[i]]
                    new += d[order[i - 1], order[k]]
                if k < n - 1:
                    old += d[order[k], order[k + 1]]
                    new += d[order[i], order[k + 1]]
                delta = new - old
                if delta < -_EPS:
                    for t in range((k - i + 1) // 2):
                        tmp = order[i + t]
                        order[i + t] = order[k - t]
                        order[k - t] = tmp
                    gain -= delta
    return gain

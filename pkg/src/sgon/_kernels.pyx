# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled box-enumeration kernels.

Same contracts as ``_kernels_py``: lexicographic odometer order (last
coordinate fastest) over the half box whose first nonzero coordinate is
positive.  All arithmetic is int64; callers check magnitudes beforehand.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t
from libc.math cimport fabs

cnp.import_array()


cdef inline bint _first_positive(int64_t[::1] y, Py_ssize_t dim) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(dim):
        if y[i] != 0:
            return y[i] > 0
    return False


cdef class _Rows:
    """Growable int64 row buffer."""
    cdef public object buf
    cdef public Py_ssize_t size
    cdef Py_ssize_t width

    def __init__(self, Py_ssize_t width):
        self.width = width
        self.buf = np.empty((256, width), dtype=np.int64)
        self.size = 0

    cdef void push(self, int64_t[::1] row):
        cdef Py_ssize_t j
        cdef int64_t[:, ::1] view
        if self.size == self.buf.shape[0]:
            self.buf = np.concatenate([self.buf, np.empty_like(self.buf)])
        view = self.buf
        for j in range(self.width):
            view[self.size, j] = row[j]
        self.size += 1

    def result(self):
        return np.ascontiguousarray(self.buf[:self.size])


def box_enumerate(basis_in, bounds_in, int64_t max_sup):
    cdef int64_t[:, ::1] basis = np.ascontiguousarray(basis_in, dtype=np.int64)
    cdef int64_t[::1] bounds = np.ascontiguousarray(bounds_in, dtype=np.int64)
    cdef Py_ssize_t ell = basis.shape[0], c = basis.shape[1]
    cdef int64_t[::1] coef = np.empty(ell, dtype=np.int64)
    cdef int64_t[::1] vec = np.zeros(c, dtype=np.int64)
    cdef Py_ssize_t i, j
    cdef int64_t s, a, delta
    cdef _Rows out_c = _Rows(ell)
    cdef _Rows out_v = _Rows(c)
    if ell == 0:
        return out_c.result(), out_v.result()
    for i in range(ell):
        coef[i] = -bounds[i]
        for j in range(c):
            vec[j] += coef[i] * basis[i, j]
    while True:
        if _first_positive(coef, ell):
            s = 0
            for j in range(c):
                a = vec[j] if vec[j] >= 0 else -vec[j]
                if a > s:
                    s = a
            if 0 < s <= max_sup:
                out_c.push(coef)
                out_v.push(vec)
        i = ell - 1
        while i >= 0 and coef[i] == bounds[i]:
            i -= 1
        if i < 0:
            break
        coef[i] += 1
        for j in range(c):
            vec[j] += basis[i, j]
        for i in range(i + 1, ell):
            delta = -bounds[i] - coef[i]
            coef[i] = -bounds[i]
            for j in range(c):
                vec[j] += delta * basis[i, j]
    return out_c.result(), out_v.result()


def sparse_scan(F_in, row_of_in, A_in, int64_t ybound, int k, double radius):
    cdef int64_t[:, ::1] F = np.ascontiguousarray(F_in, dtype=np.int64)
    cdef int64_t[::1] row_of = np.ascontiguousarray(row_of_in, dtype=np.int64)
    cdef double[:, ::1] A = np.ascontiguousarray(A_in, dtype=np.float64)
    cdef Py_ssize_t n = A.shape[0], d = F.shape[0]
    cdef int64_t[::1] y = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] dots = np.zeros(d, dtype=np.int64)
    cdef char[::1] nzrow = np.zeros(n, dtype=np.int8)
    cdef Py_ssize_t i, j, r
    cdef int64_t delta
    cdef int cnt
    cdef double x, best, limit = radius * (1 + 1e-9) + 1e-300
    cdef _Rows out = _Rows(n)
    for i in range(n):
        y[i] = -ybound
        for j in range(d):
            dots[j] += y[i] * F[j, i]
    while True:
        if _first_positive(y, n):
            for r in range(n):
                nzrow[r] = 0
            for j in range(d):
                if dots[j] != 0:
                    nzrow[row_of[j]] = 1
            cnt = 0
            for r in range(n):
                cnt += nzrow[r]
            if cnt <= k:
                best = 0.0
                for r in range(n):
                    x = 0.0
                    for i in range(n):
                        x += A[r, i] * <double>y[i]
                    x = fabs(x)
                    if x > best:
                        best = x
                if best <= limit:
                    out.push(y)
        i = n - 1
        while i >= 0 and y[i] == ybound:
            i -= 1
        if i < 0:
            break
        y[i] += 1
        for j in range(d):
            dots[j] += F[j, i]
        for i in range(i + 1, n):
            delta = -ybound - y[i]
            y[i] = -ybound
            for j in range(d):
                dots[j] += delta * F[j, i]
    return out.result()


def support_gram(F_in, row_of_in, int n, int64_t ybound):
    cdef int64_t[:, ::1] F = np.ascontiguousarray(F_in, dtype=np.int64)
    cdef int64_t[::1] row_of = np.ascontiguousarray(row_of_in, dtype=np.int64)
    cdef Py_ssize_t d = F.shape[0]
    G_arr = np.zeros((1 << n, n, n), dtype=np.int64)
    cdef int64_t[:, :, ::1] G = G_arr
    cdef int64_t[::1] y = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] dots = np.zeros(d, dtype=np.int64)
    cdef Py_ssize_t i, j, a, b
    cdef int64_t delta, mask
    for i in range(n):
        y[i] = -ybound
        for j in range(d):
            dots[j] += y[i] * F[j, i]
    while True:
        if _first_positive(y, n):
            mask = 0
            for j in range(d):
                if dots[j] != 0:
                    mask |= (<int64_t>1) << row_of[j]
            for a in range(n):
                if y[a] != 0:
                    for b in range(n):
                        G[mask, a, b] += y[a] * y[b]
        i = n - 1
        while i >= 0 and y[i] == ybound:
            i -= 1
        if i < 0:
            break
        y[i] += 1
        for j in range(d):
            dots[j] += F[j, i]
        for i in range(i + 1, n):
            delta = -ybound - y[i]
            y[i] = -ybound
            for j in range(d):
                dots[j] += delta * F[j, i]
    return G_arr

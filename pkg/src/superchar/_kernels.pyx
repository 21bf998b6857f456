# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled matrix kernels over F_q; same API as ``_kernels_py``."""

from libc.stdlib cimport malloc, free



cdef class FieldTables:
    cdef readonly int q
    cdef const int[:, ::1] add
    cdef const int[:, ::1] mul
    cdef const int[::1] neg
    cdef const int[::1] inv

    def __init__(self, ctx):
        self.q = ctx.q
        self.add = ctx.add_table
        self.mul = ctx.mul_table
        self.neg = ctx.neg_table
        self.inv = ctx.inv_table

    cdef int _load(self, object a, int n, int* buf) except -1:
        cdef Py_ssize_t i
        for i in range(n):
            buf[i] = a[i]
        return 0

    cdef tuple _dump(self, int* buf, int n):
        cdef Py_ssize_t i
        out = [0] * n
        for i in range(n):
            out[i] = buf[i]
        return tuple(out)

    cdef void _mm(self, int* a, int* b, int* out, int m) noexcept nogil:
        cdef int i, j, k, aik, bkj, acc
        for i in range(m * m):
            out[i] = 0
        for i in range(m):
            for k in range(m):
                aik = a[i * m + k]
                if aik == 0:
                    continue
                for j in range(m):
                    bkj = b[k * m + j]
                    if bkj:
                        out[i * m + j] = self.add[out[i * m + j], self.mul[aik, bkj]]

    cpdef tuple matmul(self, object a, object b, int m):
        cdef int n = m * m
        cdef int* buf = <int*> malloc(3 * n * sizeof(int))
        try:
            self._load(a, n, buf)
            self._load(b, n, buf + n)
            self._mm(buf, buf + n, buf + 2 * n, m)
            return self._dump(buf + 2 * n, n)
        finally:
            free(buf)

    cpdef tuple conjugate(self, object x, object g, object xinv, int m):
        cdef int n = m * m
        cdef int* buf = <int*> malloc(5 * n * sizeof(int))
        try:
            self._load(x, n, buf)
            self._load(g, n, buf + n)
            self._load(xinv, n, buf + 2 * n)
            self._mm(buf, buf + n, buf + 3 * n, m)
            self._mm(buf + 3 * n, buf + 2 * n, buf + 4 * n, m)
            return self._dump(buf + 4 * n, n)
        finally:
            free(buf)

    cpdef tuple unitri_inv(self, object a, int m):
        cdef int n = m * m
        cdef int i, j, k, s, aik, okj
        cdef int* buf = <int*> malloc(2 * n * sizeof(int))
        cdef int* A = buf
        cdef int* O = buf + n
        try:
            self._load(a, n, A)
            for i in range(n):
                O[i] = 0
            for i in range(m - 1, -1, -1):
                O[i * m + i] = 1
                for j in range(i + 1, m):
                    s = 0
                    for k in range(i + 1, j + 1):
                        aik = A[i * m + k]
                        if aik:
                            okj = O[k * m + j]
                            if okj:
                                s = self.add[s, self.mul[aik, okj]]
                    O[i * m + j] = self.neg[s]
            return self._dump(O, n)
        finally:
            free(buf)

    cdef int _det(self, int* M, int n) noexcept nogil:
        cdef int c, r, k, piv, pv, pinv, f, tmp, result = 1
        for c in range(n):
            piv = -1
            for r in range(c, n):
                if M[r * n + c]:
                    piv = r
                    break
            if piv < 0:
                return 0
            if piv != c:
                for k in range(n):
                    tmp = M[c * n + k]
                    M[c * n + k] = M[piv * n + k]
                    M[piv * n + k] = tmp
                result = self.neg[result]
            pv = M[c * n + c]
            result = self.mul[result, pv]
            pinv = self.inv[pv]
            for r in range(c + 1, n):
                f = M[r * n + c]
                if f:
                    f = self.neg[self.mul[f, pinv]]
                    for k in range(c, n):
                        if M[c * n + k]:
                            M[r * n + k] = self.add[M[r * n + k], self.mul[f, M[c * n + k]]]
        return result

    cpdef int det(self, object rows):
        cdef int n = len(rows)
        cdef int i, j
        cdef int* M
        if n == 0:
            return 1
        M = <int*> malloc(n * n * sizeof(int))
        try:
            for i in range(n):
                row = rows[i]
                for j in range(n):
                    M[i * n + j] = row[j]
            return self._det(M, n)
        finally:
            free(M)

    cpdef int minor(self, object a, int m, object rows, object cols):
        cdef int n = len(rows)
        cdef int i, j, r
        cdef int* M
        if n == 0:
            return 1
        M = <int*> malloc(n * n * sizeof(int))
        try:
            for i in range(n):
                r = rows[i]
                for j in range(n):
                    M[i * n + j] = a[r * m + <int> cols[j]]
            return self._det(M, n)
        finally:
            free(M)

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled interchange normalization kernel (same contract as _normal_py)."""

from libc.stdlib cimport malloc, free

cdef long MAX_STEPS = 1000000


def normalize_codes(codes):
    cdef Py_ssize_t n = len(codes)
    cdef long *buf = <long *> malloc((5 * n + 5) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t m = 0, i = 0, k
    cdef long steps = 0
    cdef long shifted
    cdef long *u
    cdef long *l
    cdef long tmp
    try:
        for c in codes:
            if c[3] >= 0:
                for k in range(5):
                    buf[5 * m + k] = c[k]
                m += 1
        while i < m - 1:
            steps += 1
            if steps > MAX_STEPS:
                raise RuntimeError("interchange normalization did not terminate")
            u = buf + 5 * i
            l = buf + 5 * (i + 1)
            if u[3] == l[3] and u[4] != l[4] and u[0] == l[0]:
                for k in range(5 * (i + 2), 5 * m):
                    buf[k - 10] = buf[k]
                m -= 2
                i = i - 1 if i > 0 else 0
                continue
            if l[0] + l[1] <= u[0] and not (l[1] == 0 and u[2] == 0 and l[0] == u[0]):
                shifted = u[0] - l[1] + l[2]
                for k in range(5):
                    tmp = u[k]
                    u[k] = l[k]
                    l[k] = tmp
                l[0] = shifted
                i = i - 1 if i > 0 else 0
                continue
            i += 1
        return [(buf[5 * k], buf[5 * k + 1], buf[5 * k + 2], buf[5 * k + 3], buf[5 * k + 4])
                for k in range(m)]
    finally:
        free(buf)

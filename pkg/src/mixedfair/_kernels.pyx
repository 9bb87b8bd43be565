# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see ``_kernels_py`` for the contract."""

import numpy as np

from libc.stdlib cimport malloc, free

ctypedef long long i64

cdef int EF = 1
cdef int PROP = 2
cdef int EF1 = 4
cdef int PROP1 = 8
cdef int EFX = 16
cdef int PO = 32

cdef i64 NONE_HI = -(1LL << 62)
cdef i64 NONE_LO = (1LL << 62)


def _matrix(U):
    arr = np.ascontiguousarray(np.asarray(U, dtype=np.int64))
    if arr.ndim != 2:
        arr = arr.reshape(len(U), -1)
    return arr


cdef inline bint _advance(i64[:, ::1] u, i64* a, i64* vals, Py_ssize_t n, Py_ssize_t m) nogil:
    cdef Py_ssize_t j = m - 1
    cdef i64 old
    while j >= 0:
        old = a[j]
        if old + 1 < n:
            a[j] = old + 1
            vals[old] -= u[old, j]
            vals[old + 1] += u[old + 1, j]
            return True
        a[j] = 0
        vals[old] -= u[old, j]
        vals[0] += u[0, j]
        j -= 1
    return False


def find_dominating(U, base):
    cdef i64[:, ::1] u = _matrix(U)
    cdef Py_ssize_t n = u.shape[0], m = u.shape[1], i, j
    cdef i64[::1] b = np.asarray(base, dtype=np.int64)
    cdef i64* a = <i64*> malloc((m + 1) * sizeof(i64))
    cdef i64* vals = <i64*> malloc(n * sizeof(i64))
    cdef i64 code = 0
    cdef i64 result = -1
    cdef bint ge, gt
    try:
        for j in range(m):
            a[j] = 0
        for i in range(n):
            vals[i] = 0
        for j in range(m):
            vals[0] += u[0, j]
        with nogil:
            while True:
                ge = True
                gt = False
                for i in range(n):
                    if vals[i] < b[i]:
                        ge = False
                        break
                    if vals[i] > b[i]:
                        gt = True
                if ge and gt:
                    result = code
                    break
                if not _advance(u, a, vals, n, m):
                    break
                code += 1
    finally:
        free(a)
        free(vals)
    return result


def pareto_frontier_values(U):
    cdef i64[:, ::1] u = _matrix(U)
    cdef Py_ssize_t n = u.shape[0], m = u.shape[1], i, j, f, g
    cdef Py_ssize_t cap = 64, size = 0
    cdef i64* a = <i64*> malloc((m + 1) * sizeof(i64))
    cdef i64* vals = <i64*> malloc(n * sizeof(i64))
    cdef i64* front = <i64*> malloc(cap * n * sizeof(i64))
    cdef i64* grown
    cdef bint covered, dominated
    try:
        for j in range(m):
            a[j] = 0
        for i in range(n):
            vals[i] = 0
        for j in range(m):
            vals[0] += u[0, j]
        while True:
            covered = False
            for f in range(size):
                covered = True
                for i in range(n):
                    if front[f * n + i] < vals[i]:
                        covered = False
                        break
                if covered:
                    break
            if not covered:
                g = 0
                for f in range(size):
                    dominated = True
                    for i in range(n):
                        if vals[i] < front[f * n + i]:
                            dominated = False
                            break
                    if not dominated:
                        if g != f:
                            for i in range(n):
                                front[g * n + i] = front[f * n + i]
                        g += 1
                size = g
                if size == cap:
                    cap *= 2
                    grown = <i64*> malloc(cap * n * sizeof(i64))
                    for f in range(size * n):
                        grown[f] = front[f]
                    free(front)
                    front = grown
                for i in range(n):
                    front[size * n + i] = vals[i]
                size += 1
            if not _advance(u, a, vals, n, m):
                break
        out = []
        for f in range(size):
            row = []
            for i in range(n):
                row.append(front[f * n + i])
            out.append(tuple(row))
        out.sort()
    finally:
        free(a)
        free(vals)
        free(front)
    return out


cdef bint _satisfies(i64[:, ::1] u, Py_ssize_t n, Py_ssize_t m, i64* a, int flags,
                     i64* totals, i64[:, ::1] front, i64* W, i64* hi, i64* lo,
                     i64* minpos, i64* maxneg) nogil:
    cdef Py_ssize_t i, j, k, f, idx
    cdef i64 v, own, other, gain
    cdef bint ok, ge, gt
    for idx in range(n * n):
        W[idx] = 0
        hi[idx] = NONE_HI
        lo[idx] = NONE_LO
        minpos[idx] = NONE_LO
        maxneg[idx] = NONE_HI
    for j in range(m):
        k = a[j]
        for i in range(n):
            v = u[i, j]
            idx = i * n + k
            W[idx] += v
            if v > hi[idx]:
                hi[idx] = v
            if v < lo[idx]:
                lo[idx] = v
            if v > 0 and v < minpos[idx]:
                minpos[idx] = v
            if v < 0 and v > maxneg[idx]:
                maxneg[idx] = v
    for i in range(n):
        own = W[i * n + i]
        if flags & PROP and n * own < totals[i]:
            return False
        if flags & PROP1 and n * own < totals[i]:
            gain = NONE_HI
            for k in range(n):
                if k != i and hi[i * n + k] > gain:
                    gain = hi[i * n + k]
            ok = gain != NONE_HI and n * (own + gain) >= totals[i]
            if not ok and lo[i * n + i] != NONE_LO:
                ok = n * (own - lo[i * n + i]) >= totals[i]
            if not ok:
                return False
        for k in range(n):
            if k == i:
                continue
            other = W[i * n + k]
            if own < other:
                if flags & EF:
                    return False
                if flags & EF1:
                    ok = hi[i * n + k] != NONE_HI and own >= other - hi[i * n + k]
                    if not ok and lo[i * n + i] != NONE_LO:
                        ok = own - lo[i * n + i] >= other
                    if not ok:
                        return False
            if flags & EFX:
                if maxneg[i * n + i] != NONE_HI and own - maxneg[i * n + i] < other:
                    return False
                if minpos[i * n + k] != NONE_LO and own < other - minpos[i * n + k]:
                    return False
    if flags & PO:
        for f in range(front.shape[0]):
            ge = True
            gt = False
            for i in range(n):
                if front[f, i] < W[i * n + i]:
                    ge = False
                    break
                if front[f, i] > W[i * n + i]:
                    gt = True
            if ge and gt:
                return False
    return True


def first_satisfying(U, int flags, frontier=None):
    cdef i64[:, ::1] u = _matrix(U)
    cdef Py_ssize_t n = u.shape[0], m = u.shape[1], i, j
    if flags & PO and frontier is None:
        frontier = pareto_frontier_values(U)
    if frontier is None or len(frontier) == 0:
        front_arr = np.zeros((0, n), dtype=np.int64)
    else:
        front_arr = np.ascontiguousarray(np.asarray(frontier, dtype=np.int64))
    cdef i64[:, ::1] front = front_arr
    cdef i64* a = <i64*> malloc((m + 1) * sizeof(i64))
    cdef i64* totals = <i64*> malloc(n * sizeof(i64))
    cdef i64* W = <i64*> malloc(n * n * sizeof(i64))
    cdef i64* hi = <i64*> malloc(n * n * sizeof(i64))
    cdef i64* lo = <i64*> malloc(n * n * sizeof(i64))
    cdef i64* minpos = <i64*> malloc(n * n * sizeof(i64))
    cdef i64* maxneg = <i64*> malloc(n * n * sizeof(i64))
    cdef i64 code = 0
    cdef i64 result = -1
    try:
        for j in range(m):
            a[j] = 0
        for i in range(n):
            totals[i] = 0
            for j in range(m):
                totals[i] += u[i, j]
        with nogil:
            while True:
                if _satisfies(u, n, m, a, flags, totals, front, W, hi, lo, minpos, maxneg):
                    result = code
                    break
                j = m - 1
                while j >= 0:
                    if a[j] + 1 < n:
                        a[j] += 1
                        break
                    a[j] = 0
                    j -= 1
                if j < 0:
                    break
                code += 1
    finally:
        free(a)
        free(totals)
        free(W)
        free(hi)
        free(lo)
        free(minpos)
        free(maxneg)
    return result

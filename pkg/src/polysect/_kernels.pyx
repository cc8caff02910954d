# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled subset-scan kernels; drop-in twins of ``_pykernels``."""
import numpy as np

from libc.math cimport fabs, sqrt

DEF MAXD = 16


cdef double _det(double* a, int k) noexcept nogil:
    # Gaussian elimination with partial pivoting on a k x k row-major copy.
    cdef int i, j, r, piv
    cdef double det = 1.0, best, f, tmp
    for i in range(k):
        piv = i
        best = fabs(a[i * k + i])
        for r in range(i + 1, k):
            if fabs(a[r * k + i]) > best:
                best = fabs(a[r * k + i])
                piv = r
        if best == 0.0:
            return 0.0
        if piv != i:
            for j in range(k):
                tmp = a[i * k + j]
                a[i * k + j] = a[piv * k + j]
                a[piv * k + j] = tmp
            det = -det
        det *= a[i * k + i]
        for r in range(i + 1, k):
            f = a[r * k + i] / a[i * k + i]
            for j in range(i, k):
                a[r * k + j] -= f * a[i * k + j]
    return det


cdef bint _solve(double* a, double* rhs, double* out, int k) noexcept nogil:
    # Solves a x = rhs in place; returns False on an exactly singular pivot.
    cdef int i, j, r, piv
    cdef double best, f, tmp, acc
    for i in range(k):
        piv = i
        best = fabs(a[i * k + i])
        for r in range(i + 1, k):
            if fabs(a[r * k + i]) > best:
                best = fabs(a[r * k + i])
                piv = r
        if best == 0.0:
            return False
        if piv != i:
            for j in range(k):
                tmp = a[i * k + j]
                a[i * k + j] = a[piv * k + j]
                a[piv * k + j] = tmp
            tmp = rhs[i]
            rhs[i] = rhs[piv]
            rhs[piv] = tmp
        for r in range(i + 1, k):
            f = a[r * k + i] / a[i * k + i]
            for j in range(i, k):
                a[r * k + j] -= f * a[i * k + j]
            rhs[r] -= f * rhs[i]
    for i in range(k - 1, -1, -1):
        acc = rhs[i]
        for j in range(i + 1, k):
            acc -= a[i * k + j] * out[j]
        out[i] = acc / a[i * k + i]
    return True


cdef bint _next_combination(int* idx, int k, int m) noexcept nogil:
    cdef int i = k - 1
    while i >= 0 and idx[i] == m - k + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for i in range(i + 1, k):
        idx[i] = idx[i - 1] + 1
    return True


def facet_scan(vertices, double eps, double rtol):
    cdef double[:, ::1] V = np.ascontiguousarray(vertices, dtype=np.float64)
    cdef int m = V.shape[0], n = V.shape[1]
    if n > MAXD:
        raise ValueError(f"dimension {n} exceeds compiled limit {MAXD}")
    cdef int idx[MAXD]
    cdef double diffs[MAXD * MAXD]
    cdef double minor[MAXD * MAXD]
    cdef double u[MAXD]
    cdef int i, j, c, col, last, v
    cdef double norm, hadamard, rn, s, hi, lo, off
    normals = []
    offsets = []
    if m < n:
        return np.zeros((0, n)), np.zeros(0)
    for i in range(n):
        idx[i] = i
    while True:
        last = idx[n - 1]
        hadamard = 1.0
        for i in range(n - 1):
            rn = 0.0
            for j in range(n):
                diffs[i * n + j] = V[idx[i], j] - V[last, j]
                rn += diffs[i * n + j] * diffs[i * n + j]
            hadamard *= sqrt(rn)
        if n == 1:
            u[0] = 1.0
        else:
            for col in range(n):
                for i in range(n - 1):
                    c = 0
                    for j in range(n):
                        if j != col:
                            minor[i * (n - 1) + c] = diffs[i * n + j]
                            c += 1
                u[col] = _det(minor, n - 1)
                if col % 2 == 1:
                    u[col] = -u[col]
        norm = 0.0
        for j in range(n):
            norm += u[j] * u[j]
        norm = sqrt(norm)
        if norm > rtol * hadamard:
            off = 0.0
            for j in range(n):
                u[j] /= norm
                off -= u[j] * V[last, j]
            hi = -1e300
            lo = 1e300
            for v in range(m):
                s = off
                for j in range(n):
                    s += u[j] * V[v, j]
                if s > hi:
                    hi = s
                if s < lo:
                    lo = s
                if hi > eps and lo < -eps:
                    break
            if hi <= eps:
                normals.append([u[j] for j in range(n)])
                offsets.append(off)
            elif lo >= -eps:
                normals.append([-u[j] for j in range(n)])
                offsets.append(-off)
        if not _next_combination(idx, n, m):
            break
    if not normals:
        return np.zeros((0, n)), np.zeros(0)
    return np.asarray(normals, dtype=np.float64), np.asarray(offsets, dtype=np.float64)


def vertex_scan(A, b, double eps, double rtol):
    cdef double[:, ::1] M = np.ascontiguousarray(A, dtype=np.float64)
    cdef double[::1] B = np.ascontiguousarray(b, dtype=np.float64)
    cdef int m = M.shape[0], d = M.shape[1]
    if d > MAXD:
        raise ValueError(f"dimension {d} exceeds compiled limit {MAXD}")
    cdef int idx[MAXD]
    cdef double sub[MAXD * MAXD]
    cdef double rhs[MAXD]
    cdef double y[MAXD]
    cdef int i, j, r
    cdef double det, hadamard, rn, s
    cdef bint feasible
    found = []
    if m < d:
        return np.zeros((0, d))
    for i in range(d):
        idx[i] = i
    while True:
        hadamard = 1.0
        for i in range(d):
            rn = 0.0
            for j in range(d):
                sub[i * d + j] = M[idx[i], j]
                rn += M[idx[i], j] * M[idx[i], j]
            hadamard *= sqrt(rn)
        det = _det(sub, d)
        if fabs(det) > rtol * hadamard:
            for i in range(d):
                rhs[i] = B[idx[i]]
                for j in range(d):
                    sub[i * d + j] = M[idx[i], j]
            if _solve(sub, rhs, y, d):
                feasible = True
                for r in range(m):
                    s = -B[r]
                    for j in range(d):
                        s += M[r, j] * y[j]
                    if s > eps:
                        feasible = False
                        break
                if feasible:
                    found.append([y[j] for j in range(d)])
        if not _next_combination(idx, d, m):
            break
    if not found:
        return np.zeros((0, d))
    return np.asarray(found, dtype=np.float64)

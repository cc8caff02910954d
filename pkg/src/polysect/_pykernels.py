"""Pure numpy implementations of the subset-scan kernels.

Both functions mirror ``_kernels.pyx`` exactly (same degeneracy test, same
feasibility test); results may differ only in floating-point rounding.
"""
from __future__ import annotations

from itertools import combinations, islice

import numpy as np

CHUNK = 20000


def _chunks(m, k):
    it = combinations(range(m), k)
    while True:
        block = list(islice(it, CHUNK))
        if not block:
            return
        yield np.asarray(block, dtype=np.intp)


def _cofactor_normals(diffs):
    """Generalised cross product of the rows of each ``(k-1) x k`` matrix."""
    batch, rows, k = diffs.shape
    if rows == 0:
        return np.ones((batch, 1))
    out = np.empty((batch, k))
    for j in range(k):
        minor = np.delete(diffs, j, axis=2)
        out[:, j] = (-1) ** j * np.linalg.det(minor)
    return out


def facet_scan(vertices, eps, rtol):
    """Candidate facet hyperplanes of ``conv(vertices)``.

    Scans every ``n``-subset; keeps those with a one-dimensional normal
    space whose hyperplane has all vertices on one closed side.  Returns
    ``(normals, offsets)`` with unit outward normals; duplicates included.
    """
    V = np.ascontiguousarray(vertices, dtype=float)
    m, n = V.shape
    normals, offsets = [], []
    for idx in _chunks(m, n):
        pts = V[idx]
        diffs = pts[:, :-1, :] - pts[:, -1:, :]
        u = _cofactor_normals(diffs)
        norm = np.linalg.norm(u, axis=1)
        hadamard = np.prod(np.linalg.norm(diffs, axis=2), axis=1) if n > 1 else np.ones(len(idx))
        ok = norm > rtol * hadamard
        if not np.any(ok):
            continue
        u = u[ok] / norm[ok, None]
        c = -np.einsum("ij,ij->i", u, pts[ok, -1, :])
        s = u @ V.T + c[:, None]
        hi = s.max(axis=1)
        lo = s.min(axis=1)
        pos = hi <= eps
        neg = (~pos) & (lo >= -eps)
        normals.append(u[pos])
        offsets.append(c[pos])
        normals.append(-u[neg])
        offsets.append(-c[neg])
    if not normals:
        return np.zeros((0, n)), np.zeros(0)
    return np.concatenate(normals), np.concatenate(offsets)


def vertex_scan(A, b, eps, rtol):
    """Feasible intersection points of ``d`` constraint planes of ``A y <= b``."""
    A = np.ascontiguousarray(A, dtype=float)
    b = np.ascontiguousarray(b, dtype=float)
    m, d = A.shape
    found = []
    for idx in _chunks(m, d):
        sub = A[idx]
        det = np.linalg.det(sub)
        hadamard = np.prod(np.linalg.norm(sub, axis=2), axis=1)
        ok = np.abs(det) > rtol * hadamard
        if not np.any(ok):
            continue
        y = np.linalg.solve(sub[ok], b[idx[ok]][..., None])[..., 0]
        feasible = np.all(y @ A.T - b <= eps, axis=1)
        found.append(y[feasible])
    if not found:
        return np.zeros((0, d))
    return np.concatenate(found)

"""Dense real linear algebra with an explicit tolerance policy.

Vectors and matrices are plain ``numpy`` float arrays.  Nothing here mutates
its arguments.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import Degenerate, DependentInput, ZeroRoot

EPS = 1e-9
KEY_DECIMALS = 6


@dataclass(frozen=True)
class Tolerance:
    """Scale-aware comparison radius.

    ``eps`` is used for feasibility and incidence tests, ``merge`` is the
    radius under which two computed points are considered the same vertex.
    """

    eps: float = EPS
    merge: float = 1e-7

    def __post_init__(self):
        if not (self.eps > 0 and self.merge > 0):
            raise ValueError("tolerances must be positive")

    def atol(self, scale=1.0):
        return self.eps * max(1.0, float(scale))

    def merge_radius(self, scale=1.0):
        return self.merge * max(1.0, float(scale))

    def close(self, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        scale = max(np.max(np.abs(a), initial=0.0), np.max(np.abs(b), initial=0.0))
        return bool(np.all(np.abs(a - b) <= self.atol(scale)))


DEFAULT_TOL = Tolerance()


def as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.size == 0 or not np.all(np.isfinite(arr)):
        raise ValueError("vector must be nonempty and finite")
    return arr


def as_matrix(rows) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or not np.all(np.isfinite(arr)):
        raise ValueError("matrix must be rectangular and finite")
    return arr


def round_key(values, decimals=KEY_DECIMALS) -> tuple:
    """Hashable key of rounded coordinates (``-0.0`` folded into ``0.0``)."""
    return tuple(float(x) + 0.0 for x in np.round(np.asarray(values, dtype=float), decimals))


def sign_fix(v, eps=EPS) -> np.ndarray:
    """Flip ``v`` so its first non-negligible coordinate is positive."""
    v = np.asarray(v, dtype=float)
    nz = np.flatnonzero(np.abs(v) > eps * max(1.0, np.max(np.abs(v), initial=0.0)))
    if nz.size and v[nz[0]] < 0:
        return -v
    return v


def gram_schmidt(vectors, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormalise ``vectors`` in order and return them as matrix columns.

    Modified Gram-Schmidt with one re-orthogonalisation pass.  Raises
    :class:`DependentInput` when a vector has no component outside the span
    of its predecessors.
    """
    rows = as_matrix(vectors)
    if rows.shape[0] == 0:
        raise ValueError("need at least one vector")
    basis = []
    for v in rows:
        w = v.copy()
        for _ in range(2):
            for q in basis:
                w -= (q @ w) * q
        norm = np.linalg.norm(w)
        if norm <= tol.atol(np.linalg.norm(v)):
            raise DependentInput("input vectors are linearly dependent")
        basis.append(w / norm)
    return np.column_stack(basis)


def matrix_rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    m = as_matrix(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] <= tol.eps:
        return 0
    return int(np.sum(s > tol.eps * s[0]))


def nullspace_basis(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the right nullspace, one vector per row.

    Singular values below ``eps * largest`` count as zero.  Each basis vector
    is sign-fixed so results are reproducible.
    """
    m = as_matrix(m)
    n = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(n)
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    if s.size == 0 or s[0] <= tol.eps:
        rank = 0
    else:
        rank = int(np.sum(s > tol.eps * s[0]))
    null = vh[rank:]
    return np.array([sign_fix(v) for v in null]).reshape(-1, n)


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """Point set ``normal . x + offset = 0``; interior side is ``<= 0``."""

    normal: np.ndarray
    offset: float
    _norm: float = field(init=False, repr=False)

    def __post_init__(self):
        normal = as_vector(self.normal)
        norm = float(np.linalg.norm(normal))
        if norm <= EPS:
            raise ZeroRoot("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))
        object.__setattr__(self, "_norm", norm)

    @property
    def dim(self) -> int:
        return self.normal.size

    def signed_distance(self, point) -> float:
        return signed_distance(self, point)

    def distances(self, points) -> np.ndarray:
        return (np.asarray(points, dtype=float) @ self.normal + self.offset) / self._norm

    def unit(self) -> "Hyperplane":
        """Same half-space with a unit normal (orientation kept)."""
        return Hyperplane(self.normal / self._norm, self.offset / self._norm)

    def flipped(self) -> "Hyperplane":
        return Hyperplane(-self.normal, -self.offset)

    def canonical(self) -> "Hyperplane":
        """Unit normal with first nonzero coordinate positive (orientation dropped)."""
        u = self.unit()
        lead = u.normal[np.argmax(np.abs(u.normal) > EPS)]
        return u.flipped() if lead < 0 else u

    def key(self) -> tuple:
        """Dedup key of the oriented unit form."""
        u = self.unit()
        return round_key(np.append(u.normal, u.offset))

    def __eq__(self, other):
        return isinstance(other, Hyperplane) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def hyperplane_from_points(points, tol: Tolerance = DEFAULT_TOL) -> Hyperplane:
    """Hyperplane through ``n`` points of ``R^n``, in canonical form.

    Raises :class:`Degenerate` when the difference vectors ``A_i - A_n`` leave
    more than one normal direction.
    """
    pts = as_matrix(points)
    n = pts.shape[1]
    if pts.shape[0] != n:
        raise ValueError(f"need exactly {n} points in R^{n}, got {pts.shape[0]}")
    diffs = pts[:-1] - pts[-1]
    null = nullspace_basis(diffs, tol) if n > 1 else np.ones((1, 1))
    if null.shape[0] != 1:
        raise Degenerate(f"points span a flat of nullity {null.shape[0]}, not a hyperplane")
    u = null[0]
    return Hyperplane(u, -float(u @ pts[-1])).canonical()


def signed_distance(h: Hyperplane, a) -> float:
    a = as_vector(a)
    if a.size != h.dim:
        raise ValueError("dimension mismatch")
    return float((h.normal @ a + h.offset) / h._norm)


def reflect_through_root(alpha, lam) -> np.ndarray:
    """Mirror ``lam`` in the hyperplane orthogonal to ``alpha``."""
    alpha = as_vector(alpha)
    lam = as_vector(lam)
    if alpha.size != lam.size:
        raise ValueError("dimension mismatch")
    aa = float(alpha @ alpha)
    if aa <= EPS * EPS:
        raise ZeroRoot("cannot reflect through a zero root")
    return lam - 2.0 * float(lam @ alpha) / aa * alpha


def reflection_matrix(alpha) -> np.ndarray:
    alpha = as_vector(alpha)
    aa = float(alpha @ alpha)
    if aa <= EPS * EPS:
        raise ZeroRoot("cannot reflect through a zero root")
    return np.eye(alpha.size) - 2.0 * np.outer(alpha, alpha) / aa


def affine_rank(points, tol: Tolerance = DEFAULT_TOL) -> int:
    pts = as_matrix(points)
    if pts.shape[0] <= 1:
        return 0
    centered = pts - pts.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    scale = max(1.0, float(np.max(np.abs(pts))))
    return int(np.sum(s > tol.merge_radius(scale)))


def unique_points(points, tol: Tolerance = DEFAULT_TOL, scale=None) -> np.ndarray:
    """Merge points closer than the merge radius and sort them canonically."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return pts.reshape(0, pts.shape[-1] if pts.ndim == 2 else 0)
    if scale is None:
        scale = float(np.max(np.abs(pts)))
    radius = tol.merge_radius(scale)
    kept: list[np.ndarray] = []
    for p in pts:
        if kept:
            d = np.max(np.abs(np.asarray(kept) - p), axis=1)
            if np.min(d) <= radius:
                continue
        kept.append(p)
    out = np.asarray(kept)
    order = sorted(range(len(out)), key=lambda i: round_key(out[i]))
    return out[order]


def same_point_set(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True if the two point sets agree up to ordering within the merge radius."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        return False
    if a.size == 0:
        return True
    radius = tol.merge_radius(max(np.max(np.abs(a)), np.max(np.abs(b)))) * 10
    d = np.max(np.abs(a[:, None, :] - b[None, :, :]), axis=2)
    return bool(np.all(np.min(d, axis=1) <= radius) and np.all(np.min(d, axis=0) <= radius))

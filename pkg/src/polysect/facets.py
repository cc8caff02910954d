"""Facet enumeration: vertex description to half-space description.

Brute force tests every ``n``-subset of vertices as a candidate facet; the
pivot method walks from one facet to its neighbours across ridges, which
is the only practical route for the 600-cell and 120-cell.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import DegenerateInput
from .linalg import DEFAULT_TOL, Hyperplane, Tolerance, affine_rank, nullspace_basis
from .polytopes import PolytopeVertices

RANK_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class HalfspacePolytope:
    """Intersection of closed half-spaces ``normal . x + offset <= 0``.

    ``incidence[j]`` lists the input-vertex indices on facet ``j`` (empty
    when the system was not derived from vertices).
    """

    dim: int
    halfspaces: tuple[Hyperplane, ...]
    incidence: tuple[tuple[int, ...], ...] = field(default=())

    def __len__(self):
        return len(self.halfspaces)

    @property
    def normals(self) -> np.ndarray:
        return np.array([h.normal for h in self.halfspaces]).reshape(-1, self.dim)

    @property
    def offsets(self) -> np.ndarray:
        return np.array([h.offset for h in self.halfspaces])

    def keys(self) -> list[tuple]:
        return [h.key() for h in self.halfspaces]

    def contains(self, points, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        scale = max(1.0, float(np.max(np.abs(pts), initial=0.0)))
        return np.all(pts @ self.normals.T + self.offsets <= tol.atol(scale), axis=1)

    def translated(self, shift) -> "HalfspacePolytope":
        """The same polytope moved by ``shift``."""
        shift = np.asarray(shift, dtype=float)
        hs = tuple(Hyperplane(h.normal, h.offset - h.normal @ shift) for h in self.halfspaces)
        return HalfspacePolytope(self.dim, hs)


def cube_halfspaces(dim: int, half_width: float = 1.0) -> HalfspacePolytope:
    eye = np.eye(dim)
    hs = [Hyperplane(s * eye[i], -half_width) for i in range(dim) for s in (1.0, -1.0)]
    return HalfspacePolytope(dim, tuple(sorted(hs, key=Hyperplane.key)))


def _assemble(vertices, normals, offsets, tol: Tolerance) -> HalfspacePolytope:
    unique: dict[tuple, Hyperplane] = {}
    for u, c in zip(normals, offsets):
        h = Hyperplane(u, c).unit()
        unique.setdefault(h.key(), h)
    scale = float(np.max(np.abs(vertices)))
    hs = []
    inc = []
    for key in sorted(unique):
        h = unique[key]
        on = np.flatnonzero(np.abs(h.distances(vertices)) <= tol.merge_radius(scale))
        hs.append(h)
        inc.append(tuple(on.tolist()))
    return HalfspacePolytope(vertices.shape[1], tuple(hs), tuple(inc))


def _vertices_of(p) -> np.ndarray:
    return np.asarray(p.vertices if isinstance(p, PolytopeVertices) else p, dtype=float)


def _check_spanning(verts, tol):
    m, n = verts.shape
    if m < n + 1 or affine_rank(verts, tol) < n:
        raise DegenerateInput(f"{m} vertices do not affinely span R^{n}")


def enumerate_facets_bruteforce(p, tol: Tolerance = DEFAULT_TOL, backend=None) -> HalfspacePolytope:
    """Facets of ``conv(V)`` by testing every ``n``-subset of ``V``.

    Subsets whose difference vectors leave more than one normal direction
    are skipped; every facet still contains some affinely independent
    ``n``-subset, so none is lost.  Both orientations of each candidate are
    tried and kept when all vertices lie on its closed negative side.
    """
    verts = _vertices_of(p)
    _check_spanning(verts, tol)
    scale = float(np.max(np.abs(verts)))
    normals, offsets = kernels(backend).facet_scan(verts, tol.atol(scale), RANK_RTOL)
    return _assemble(verts, normals, offsets, tol)


def _initial_facet(verts, tol, backend):
    """One facet, found by brute force among the vertices nearest an extreme vertex."""
    m, n = verts.shape
    rng = np.random.default_rng(20240611)
    direction = rng.normal(size=n)
    v0 = int(np.argmax(verts @ direction))
    order = np.argsort(np.linalg.norm(verts - verts[v0], axis=1), kind="stable")
    scale = float(np.max(np.abs(verts)))
    pool = 3 * n
    while True:
        pool = min(pool, m)
        idx = order[:pool]
        normals, offsets = kernels(backend).facet_scan(verts[idx], tol.atol(scale), RANK_RTOL)
        for u, c in zip(normals, offsets):
            h = Hyperplane(u, c)
            d = h.distances(verts)
            if np.all(d <= tol.atol(scale)) and abs(d[v0]) <= tol.merge_radius(scale):
                return h.unit()
        if pool == m:
            raise DegenerateInput("no facet found")
        pool *= 2


def _ridges(verts, facet_idx, normal, tol, backend):
    """Ridges of one facet as tuples of global vertex indices."""
    pts = verts[list(facet_idx)]
    n = verts.shape[1]
    if n == 2:
        basis = nullspace_basis(normal.reshape(1, -1))
        t = (pts - pts.mean(axis=0)) @ basis[0]
        return [(facet_idx[int(np.argmin(t))],), (facet_idx[int(np.argmax(t))],)]
    basis = nullspace_basis(normal.reshape(1, -1))  # (n-1) x n, orthonormal
    local = (pts - pts.mean(axis=0)) @ basis.T
    sub = enumerate_facets_bruteforce(local, tol, backend)
    return [tuple(sorted(facet_idx[i] for i in inc)) for inc in sub.incidence]


def enumerate_facets_pivot(p, tol: Tolerance = DEFAULT_TOL, backend=None) -> HalfspacePolytope:
    """Facets of ``conv(V)`` by a breadth-first walk across ridges.

    For each unvisited ridge of a known facet, the supporting hyperplane is
    rotated about the ridge until it meets the next vertex; that plane is
    the neighbouring facet.
    """
    verts = _vertices_of(p)
    _check_spanning(verts, tol)
    m, n = verts.shape
    scale = float(np.max(np.abs(verts)))
    on_tol = tol.merge_radius(scale)

    first = _initial_facet(verts, tol, backend)
    found: dict[tuple, Hyperplane] = {}
    incidence: dict[tuple, tuple] = {}
    seen_ridges: set = set()
    queue = deque()

    def add(h):
        key = h.key()
        if key in found:
            return
        found[key] = h
        on = tuple(np.flatnonzero(np.abs(h.distances(verts)) <= on_tol).tolist())
        incidence[key] = on
        queue.append(key)

    add(first)
    while queue:
        key = queue.popleft()
        h = found[key]
        facet_idx = incidence[key]
        normal = h.normal
        fc = verts[list(facet_idx)].mean(axis=0)
        for ridge in _ridges(verts, facet_idx, normal, tol, backend):
            if ridge in seen_ridges:
                continue
            seen_ridges.add(ridge)
            r_pts = verts[list(ridge)]
            r0 = r_pts.mean(axis=0)
            span = r_pts - r0
            # directions orthogonal to the ridge flat
            perp = nullspace_basis(span, tol) if span.size and np.any(span) else np.eye(n)
            proj = perp.T @ perp
            w = -(proj @ (fc - r0))
            w -= (w @ normal) * normal
            w /= np.linalg.norm(w)
            d = verts - r0
            x = d @ w
            y = d @ normal
            off_facet = np.abs(y) > on_tol
            phi = np.where(off_facet, np.arctan2(-y, x), np.inf)
            j = int(np.argmin(phi))
            new_normal = np.cos(phi[j]) * normal + np.sin(phi[j]) * w
            new_normal = proj @ new_normal
            new_normal /= np.linalg.norm(new_normal)
            cand = Hyperplane(new_normal, -new_normal @ r0)
            on = np.abs(cand.distances(verts)) <= 1e3 * on_tol
            add(_refit(verts[on], cand, tol))
    order = sorted(found)
    return HalfspacePolytope(n, tuple(found[k] for k in order), tuple(incidence[k] for k in order))


def _refit(points, approx: Hyperplane, tol) -> Hyperplane:
    """Least-squares plane through ``points``, oriented like ``approx``."""
    c = points.mean(axis=0)
    _, _, vh = np.linalg.svd(points - c)
    u = vh[-1]
    if u @ approx.normal < 0:
        u = -u
    return Hyperplane(u, -u @ c)


def same_halfspaces(a: HalfspacePolytope, b: HalfspacePolytope) -> bool:
    return a.keys() == b.keys()


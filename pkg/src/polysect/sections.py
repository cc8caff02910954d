"""Cross-sections of half-space polytopes with 2- and 3-flats.

A flat is given by spanning vectors (usually roots) and a translation
point.  The polytope's half-spaces are pulled back into the flat's
orthonormal coordinates, vertices of the restricted system are enumerated
by brute force over plane pairs or triples, and the result is assembled
into a polygon or a closed convex mesh.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from ._backend import kernels
from .errors import DependentInput, DependentRoots, DomainError, UnboundedSystem
from .facets import HalfspacePolytope
from .linalg import DEFAULT_TOL, Hyperplane, Tolerance, affine_rank, as_matrix, as_vector, gram_schmidt, round_key, unique_points

VERTEX_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class SectionFrame:
    """Orthonormal frame ``T`` (columns) of the span of ``roots``, placed at ``p0``."""

    roots: np.ndarray
    T: np.ndarray
    p0: np.ndarray
    angles: dict = field(default_factory=dict)

    @property
    def ambient_dim(self) -> int:
        return self.T.shape[0]

    @property
    def dim(self) -> int:
        return self.T.shape[1]

    def to_local(self, points) -> np.ndarray:
        return (np.atleast_2d(points) - self.p0) @ self.T

    def to_ambient(self, local) -> np.ndarray:
        return self.p0 + np.atleast_2d(local) @ self.T.T

    def local_root(self, i: int) -> np.ndarray:
        """Unit direction of root ``i`` in frame coordinates."""
        u = self.T.T @ self.roots[i]
        return u / np.linalg.norm(u)

    def moved(self, p0) -> "SectionFrame":
        return SectionFrame(self.roots, self.T, as_vector(p0), self.angles)


def _angle(a, b) -> float:
    c = a @ b / (np.linalg.norm(a) * np.linalg.norm(b))
    return math.acos(min(1.0, max(-1.0, float(c))))


def build_section_frame(roots, p0=None, tol: Tolerance = DEFAULT_TOL) -> SectionFrame:
    """Gram-Schmidt frame of two or three independent vectors.

    ``angles[(i, j)]`` holds the angle between roots ``i`` and ``j``.
    """
    roots = as_matrix(roots)
    k, n = roots.shape
    if k not in (2, 3):
        raise DomainError(f"a section flat needs 2 or 3 spanning vectors, got {k}")
    if n < k:
        raise DomainError(f"{k} vectors cannot be independent in R^{n}")
    p0 = np.zeros(n) if p0 is None else as_vector(p0)
    if p0.size != n:
        raise DomainError(f"translation point has dimension {p0.size}, expected {n}")
    try:
        T = gram_schmidt(roots, tol)
    except DependentInput as exc:
        raise DependentRoots(f"spanning vectors are linearly dependent: {exc}") from None
    angles = {(i, j): _angle(roots[i], roots[j]) for i, j in itertools.combinations(range(k), 2)}
    return SectionFrame(roots, T, p0, angles)


@dataclass(frozen=True)
class Empty:
    """The flat misses the polytope, or only grazes it (``grazing``)."""

    grazing: bool = False
    reason: str = ""

    def __bool__(self):
        return False


def restrict_halfspaces(hp: HalfspacePolytope, f: SectionFrame, tol: Tolerance = DEFAULT_TOL):
    """Pull ``hp`` back into frame coordinates.

    ``n . x + c <= 0`` with ``x = p0 + T y`` becomes ``(T^t n) . y + (c + n . p0) <= 0``.
    Constraints parallel to the flat are dropped when satisfied and turn the
    result into :class:`Empty` otherwise.
    """
    if hp.dim != f.ambient_dim:
        raise DomainError(f"polytope lives in R^{hp.dim}, frame in R^{f.ambient_dim}")
    scale = max(1.0, float(np.max(np.abs(f.p0), initial=0.0)))
    out = []
    for h in hp.halfspaces:
        h = h.unit()
        nt = f.T.T @ h.normal
        c = h.offset + h.normal @ f.p0
        if np.linalg.norm(nt) < tol.eps:
            if c > tol.atol(scale):
                return Empty(False, "flat lies outside a facet parallel to it")
            continue
        out.append(Hyperplane(nt, c).unit())
    return HalfspacePolytope(f.dim, tuple(out))


_BOUNDED_CACHE: dict = {}


def _is_bounded(normals) -> bool:
    """No nonzero ``d`` with ``normals @ d <= 0``, checked one axis at a time.

    Translated copies of one system share their normals, so answers are cached.
    """
    key = (normals.shape, np.round(normals, 9).tobytes())
    if key not in _BOUNDED_CACHE:
        if len(_BOUNDED_CACHE) > 4096:
            _BOUNDED_CACHE.clear()
        _BOUNDED_CACHE[key] = _recession_free(normals)
    return _BOUNDED_CACHE[key]


def _recession_free(normals) -> bool:
    m, d = normals.shape
    if m <= d:
        return False
    for i in range(d):
        for sign in (1.0, -1.0):
            c = np.zeros(d)
            c[i] = -sign
            res = linprog(c, A_ub=normals, b_ub=np.zeros(m), bounds=[(-1, 1)] * d, method="highs")
            if res.status == 0 and -res.fun > 1e-9:
                return False
    return True


def _feasible_vertices(hp: HalfspacePolytope, tol, backend):
    A = hp.normals
    b = -hp.offsets
    if not _is_bounded(A):
        raise UnboundedSystem("restricted system does not bound a region")
    scale = max(1.0, float(np.max(np.abs(b), initial=0.0)))
    pts = kernels(backend).vertex_scan(A, b, tol.atol(scale), VERTEX_RTOL)
    if len(pts) == 0:
        return pts, scale
    scale = max(scale, float(np.max(np.abs(pts))))
    return unique_points(pts, tol, scale), scale


@dataclass(frozen=True, eq=False)
class Polygon2D:
    """Convex polygon, vertices counterclockwise."""

    vertices: np.ndarray

    def __len__(self):
        return len(self.vertices)

    @property
    def dim(self) -> int:
        return 2

    @property
    def empty(self) -> bool:
        return len(self.vertices) == 0

    @property
    def edges(self) -> list[tuple[int, int]]:
        k = len(self.vertices)
        return [(i, (i + 1) % k) for i in range(k)]

    def side_lengths(self) -> np.ndarray:
        v = self.vertices
        return np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)

    def area(self) -> float:
        x, y = self.vertices.T
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def translated(self, shift) -> "Polygon2D":
        return Polygon2D(self.vertices + np.asarray(shift, dtype=float))


@dataclass(frozen=True, eq=False)
class Mesh:
    """Closed convex polyhedral surface with outward-wound faces.

    An empty mesh has no vertices; ``grazing`` records that the flat touched
    the polytope in a lower-dimensional set.
    """

    vertices: np.ndarray
    faces: tuple[tuple[int, ...], ...]
    grazing: bool = False

    def __len__(self):
        return len(self.vertices)

    @property
    def dim(self) -> int:
        return 3

    @property
    def empty(self) -> bool:
        return len(self.vertices) == 0

    @property
    def edges(self) -> list[tuple[int, int]]:
        out = set()
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                out.add((min(a, b), max(a, b)))
        return sorted(out)

    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def euler_characteristic(self) -> int:
        v, e, f = self.counts()
        return v - e + f

    def is_closed(self) -> bool:
        """Every edge borders exactly two faces, once in each direction."""
        seen: dict = {}
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                seen[(a, b)] = seen.get((a, b), 0) + 1
        return all(c == 1 and seen.get((b, a)) == 1 for (a, b), c in seen.items())

    def face_sizes(self) -> list[int]:
        return sorted(len(f) for f in self.faces)

    def face_polygon(self, j) -> np.ndarray:
        return self.vertices[list(self.faces[j])]

    def volume(self) -> float:
        if self.empty:
            return 0.0
        c = self.vertices.mean(axis=0)
        vol = 0.0
        for f in self.faces:
            p = self.vertices[list(f)] - c
            for i in range(1, len(f) - 1):
                vol += np.dot(p[0], np.cross(p[i], p[i + 1]))
        return float(vol) / 6.0

    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def translated(self, shift) -> "Mesh":
        return Mesh(self.vertices + np.asarray(shift, dtype=float), self.faces, self.grazing)

    @classmethod
    def empty_mesh(cls, grazing=False) -> "Mesh":
        return cls(np.zeros((0, 3)), (), grazing)


def _canonical_cycle(cycle):
    i = cycle.index(min(cycle))
    return tuple(cycle[i:] + cycle[:i])


def vertex_enum_3d(hp: HalfspacePolytope, tol: Tolerance = DEFAULT_TOL, backend=None) -> Mesh:
    """Mesh of a bounded three-dimensional half-space system."""
    if isinstance(hp, Empty):
        return Mesh.empty_mesh(hp.grazing)
    if hp.dim != 3:
        raise DomainError(f"vertex_enum_3d needs a 3-dimensional system, got {hp.dim}")
    verts, scale = _feasible_vertices(hp, tol, backend)
    if len(verts) == 0:
        return Mesh.empty_mesh()
    if len(verts) < 4 or affine_rank(verts, tol) < 3:
        return Mesh.empty_mesh(grazing=True)
    radius = tol.merge_radius(scale) * 10
    faces = {}
    center = verts.mean(axis=0)
    for h in hp.halfspaces:
        on = np.flatnonzero(np.abs(h.distances(verts)) <= radius)
        if len(on) < 3:
            continue
        pts = verts[on]
        c = pts.mean(axis=0)
        n = h.normal if h.signed_distance(center) < 0 else -h.normal
        u = pts[0] - c
        u /= np.linalg.norm(u)
        w = np.cross(n, u)
        ang = np.arctan2((pts - c) @ w, (pts - c) @ u)
        cycle = _canonical_cycle([int(on[i]) for i in np.argsort(ang, kind="stable")])
        faces.setdefault(frozenset(cycle), cycle)
    return Mesh(verts, tuple(sorted(faces.values())))


def vertex_enum_2d(hp: HalfspacePolytope, tol: Tolerance = DEFAULT_TOL, backend=None) -> Polygon2D:
    """Counterclockwise polygon of a bounded two-dimensional half-space system."""
    if isinstance(hp, Empty):
        return Polygon2D(np.zeros((0, 2)))
    if hp.dim != 2:
        raise DomainError(f"vertex_enum_2d needs a 2-dimensional system, got {hp.dim}")
    verts, _ = _feasible_vertices(hp, tol, backend)
    if len(verts) < 3 or affine_rank(verts, tol) < 2:
        return Polygon2D(np.zeros((0, 2)))
    c = verts.mean(axis=0)
    ang = np.arctan2(verts[:, 1] - c[1], verts[:, 0] - c[0])
    order = list(np.argsort(ang, kind="stable"))
    # start at the canonically smallest vertex so output is stable
    first = min(range(len(order)), key=lambda i: round_key(verts[order[i]]))
    order = order[first:] + order[:first]
    return Polygon2D(verts[order])


def section(hp: HalfspacePolytope, f: SectionFrame, tol: Tolerance = DEFAULT_TOL, backend=None):
    """Restrict and enumerate in one step; returns a :class:`Mesh` or :class:`Polygon2D`."""
    restricted = restrict_halfspaces(hp, f, tol)
    if f.dim == 3:
        return vertex_enum_3d(restricted, tol, backend)
    return vertex_enum_2d(restricted, tol, backend)


def sweep_sections(hp: HalfspacePolytope, direction, offsets, f: SectionFrame, tol: Tolerance = DEFAULT_TOL, backend=None):
    """One section per offset ``t`` with the flat moved to ``t * direction``."""
    direction = as_vector(direction)
    return [section(hp, f.moved(t * direction), tol, backend) for t in offsets]


def _reflect(points, u):
    return points - 2.0 * np.outer(points @ u, u)


def _point_set_equal(a, b, radius) -> bool:
    if a.shape != b.shape:
        return False
    d = np.max(np.abs(a[:, None, :] - b[None, :, :]), axis=2)
    return bool(np.all(d.min(axis=1) <= radius) and np.all(d.min(axis=0) <= radius))


def reflection_invariance(shape, f: SectionFrame, tol: Tolerance = DEFAULT_TOL) -> list[bool]:
    """For each spanning root: is the vertex set fixed by reflection across it?

    The mirror passes through the frame origin, so only sections centred on
    a point fixed by the reflections are expected to pass.
    """
    verts = shape.vertices
    if len(verts) == 0:
        return [True] * len(f.roots)
    radius = tol.merge_radius(float(np.max(np.abs(verts)))) * 100
    return [_point_set_equal(_reflect(verts, f.local_root(i)), verts, radius) for i in range(len(f.roots))]


def symmetry_order_2d(poly: Polygon2D, tol: Tolerance = DEFAULT_TOL) -> int:
    """Order of the planar point-symmetry group of ``poly`` about its centroid."""
    v = poly.vertices - poly.centroid()
    k = len(v)
    if k < 3:
        raise DomainError("symmetry order needs at least three vertices")
    radius = tol.merge_radius(float(np.max(np.abs(v)))) * 100
    order = 0
    # every symmetry maps vertex 0 to some vertex; rotations by that angle and
    # reflections across the bisecting axis are the only candidates
    a0 = math.atan2(v[0, 1], v[0, 0])
    for j in range(k):
        aj = math.atan2(v[j, 1], v[j, 0])
        if abs(np.linalg.norm(v[j]) - np.linalg.norm(v[0])) > radius:
            continue
        t = aj - a0
        rot = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
        if _point_set_equal(v @ rot.T, v, radius):
            order += 1
        phi = (a0 + aj) / 2
        ref = np.array([[math.cos(2 * phi), math.sin(2 * phi)], [math.sin(2 * phi), -math.cos(2 * phi)]])
        if _point_set_equal(v @ ref.T, v, radius):
            order += 1
    return order


def _normalized_distances(verts) -> np.ndarray:
    d = np.linalg.norm(verts[:, None, :] - verts[None, :, :], axis=2)
    iu = np.triu_indices(len(verts), 1)
    dist = np.sort(d[iu])
    return dist / dist[-1]


def congruent_up_to_similarity(a, b, rtol: float = 1e-6) -> bool:
    """Equal vertex counts and equal sorted pairwise-distance multisets after scaling."""
    va, vb = np.asarray(a.vertices), np.asarray(b.vertices)
    if len(va) == 0 or len(vb) == 0:
        raise DomainError("similarity test needs nonempty shapes")
    if len(va) != len(vb):
        return False
    if len(va) == 1:
        return True
    return bool(np.all(np.abs(_normalized_distances(va) - _normalized_distances(vb)) <= rtol))


def hull_mesh(points, tol: Tolerance = DEFAULT_TOL) -> Mesh:
    """Mesh of the convex hull of 3D points (via their facet half-spaces)."""
    from .facets import enumerate_facets_bruteforce

    pts = unique_points(as_matrix(points), tol)
    hp = enumerate_facets_bruteforce(pts, tol)
    return vertex_enum_3d(hp, tol)


SHAPE_NAMES = {
    (4, 6, 4, (3, 3, 3, 3)): "tetrahedron",
    (8, 12, 6, (4,) * 6): "cube",
    (6, 12, 8, (3,) * 8): "octahedron",
    (12, 18, 8, (3, 3, 3, 3, 6, 6, 6, 6)): "truncated tetrahedron",
    (12, 24, 14, (3,) * 8 + (4,) * 6): "cuboctahedron",
    (14, 24, 12, (4,) * 12): "rhombic dodecahedron",
    (8, 18, 12, (3,) * 12): "hexagonal bipyramid",
}


def is_regular_polygon(poly: Polygon2D, rtol: float = 1e-6) -> bool:
    """Equal sides and equal circumradii."""
    sides = poly.side_lengths()
    radii = np.linalg.norm(poly.vertices - poly.centroid(), axis=1)
    return bool(np.ptp(sides) <= rtol * sides.max() and np.ptp(radii) <= rtol * radii.max())


def describe(shape) -> str:
    """Informal name from combinatorial type (not a congruence test)."""
    if shape.empty:
        return "empty"
    if isinstance(shape, Polygon2D):
        names = {3: "triangle", 4: "square", 5: "pentagon", 6: "hexagon", 8: "octagon"}
        k = len(shape)
        if is_regular_polygon(shape) and k in names:
            return names[k]
        return "quadrilateral" if k == 4 else f"{k}-gon"
    key = shape.counts() + (tuple(shape.face_sizes()),)
    return SHAPE_NAMES.get(key, "polyhedron V={} E={} F={}".format(*shape.counts()))

"""Vertex-set generators for regular polytopes, edge detection and rectification."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotRegular, Unsupported
from .linalg import DEFAULT_TOL, Tolerance, unique_points
from .schlafli import SchlafliSymbol

PHI = (1 + math.sqrt(5)) / 2

ALIASES = {
    "tetrahedron": ("simplex", 3),
    "octahedron": ("orthoplex", 3),
    "hexahedron": ("cube", 3),
    "5-cell": ("simplex", 4),
    "8-cell": ("cube", 4),
    "tesseract": ("cube", 4),
    "16-cell": ("orthoplex", 4),
    "cross-polytope": ("orthoplex", None),
    "hypercube": ("cube", None),
    "triangle": ("simplex", 2),
    "square": ("cube", 2),
}

FIXED_DIM = {"24-cell": 4, "600-cell": 4, "120-cell": 4, "icosahedron": 3, "dodecahedron": 3}

NAMES = ("simplex", "cube", "orthoplex") + tuple(FIXED_DIM)


@dataclass(frozen=True, eq=False)
class PolytopeVertices:
    dim: int
    vertices: np.ndarray
    label: str
    symbol: SchlafliSymbol | None = None

    def __len__(self):
        return len(self.vertices)

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)


@dataclass(frozen=True, eq=False)
class EdgeList:
    pairs: tuple[tuple[int, int], ...]
    length: float

    def __len__(self):
        return len(self.pairs)


def _simplex(dim):
    # unit-circumradius simplex built one dimension at a time
    pts = np.array([[-1.0], [1.0]])
    for d in range(2, dim + 1):
        r = math.sqrt(1.0 - 1.0 / d**2)
        base = np.hstack([r * pts, np.full((len(pts), 1), -1.0 / d)])
        apex = np.zeros((1, d))
        apex[0, -1] = 1.0
        pts = np.vstack([base, apex])
    return pts


def _cube(dim):
    return np.array(list(itertools.product((-1.0, 1.0), repeat=dim)))


def _orthoplex(dim):
    eye = np.eye(dim)
    return np.vstack([eye, -eye])


def _signed_perms(base, even_only=False):
    base = tuple(base)
    n = len(base)
    out = set()
    for perm in itertools.permutations(range(n)):
        if even_only and _parity(perm):
            continue
        arranged = [base[i] for i in perm]
        nonzero = [i for i, x in enumerate(arranged) if x != 0]
        for signs in itertools.product((1, -1), repeat=len(nonzero)):
            v = list(arranged)
            for i, sgn in zip(nonzero, signs):
                v[i] = sgn * v[i]
            out.add(tuple(v))
    return [list(v) for v in out]


def _parity(perm):
    perm = list(perm)
    swaps = 0
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            swaps += 1
    return swaps % 2


def _cyclic(base):
    out = set()
    for shift in range(3):
        arranged = base[shift:] + base[:shift]
        nonzero = [i for i, x in enumerate(arranged) if x != 0]
        for signs in itertools.product((1, -1), repeat=len(nonzero)):
            v = list(arranged)
            for i, sgn in zip(nonzero, signs):
                v[i] = sgn * v[i]
            out.add(tuple(v))
    return [list(v) for v in out]


def _24cell():
    return np.array(_signed_perms((1.0, 1.0, 0.0, 0.0)))


def _600cell():
    pts = _signed_perms((1.0, 0.0, 0.0, 0.0))
    pts += [list(v) for v in itertools.product((0.5, -0.5), repeat=4)]
    pts += _signed_perms((PHI / 2, 0.5, 1 / (2 * PHI), 0.0), even_only=True)
    return np.array(pts)


def _120cell():
    s5 = math.sqrt(5)
    p, ip, ip2, p2 = PHI, 1 / PHI, 1 / PHI**2, PHI**2
    pts = []
    pts += _signed_perms((0.0, 0.0, 2.0, 2.0))
    pts += _signed_perms((1.0, 1.0, 1.0, s5))
    pts += _signed_perms((ip2, p, p, p))
    pts += _signed_perms((ip, ip, ip, p2))
    pts += _signed_perms((0.0, ip2, 1.0, p2), even_only=True)
    pts += _signed_perms((0.0, ip, p, s5), even_only=True)
    pts += _signed_perms((ip, 1.0, p, 2.0), even_only=True)
    return np.array(pts) / math.sqrt(8.0)


def _icosahedron():
    return np.array(_cyclic([0.0, 1.0, PHI]))


def _dodecahedron():
    pts = [list(v) for v in itertools.product((1.0, -1.0), repeat=3)]
    pts += _cyclic([0.0, 1 / PHI, PHI])
    return np.array(pts)


def _from_symbol(sym: SchlafliSymbol, dim: int):
    k = sym.entries
    if len(k) != dim - 1:
        raise Unsupported(f"{sym} describes a {len(k) + 1}-dimensional object, not {dim}")
    if dim == 2:
        return "polygon", None
    if all(x == 3 for x in k):
        return "simplex", dim
    if k[0] == 4 and all(x == 3 for x in k[1:]):
        return "cube", dim
    if k[-1] == 4 and all(x == 3 for x in k[:-1]):
        return "orthoplex", dim
    table = {(3, 4, 3): "24-cell", (3, 3, 5): "600-cell", (5, 3, 3): "120-cell", (3, 5): "icosahedron", (5, 3): "dodecahedron"}
    if k in table:
        return table[k], dim
    raise Unsupported(f"no generator for {sym}")


def _symbol_for(name, dim):
    if dim < 2:
        return None
    fixed = {
        "24-cell": (3, 4, 3),
        "600-cell": (3, 3, 5),
        "120-cell": (5, 3, 3),
        "icosahedron": (3, 5),
        "dodecahedron": (5, 3),
    }
    if name in fixed:
        return SchlafliSymbol(fixed[name])
    if name == "simplex":
        return SchlafliSymbol((3,) * (dim - 1))
    if dim == 2:
        return SchlafliSymbol((4,))
    if name == "cube":
        return SchlafliSymbol((4,) + (3,) * (dim - 2))
    if name == "orthoplex":
        return SchlafliSymbol((3,) * (dim - 2) + (4,))
    return None


def _regular_polygon(k):
    t = 2 * np.pi * np.arange(k) / k
    return np.column_stack([np.cos(t), np.sin(t)])


def generate_vertices(spec, dim: int | None = None) -> PolytopeVertices:
    """Vertices of a named regular polytope.

    ``spec`` is a name (``simplex``, ``cube``, ``orthoplex``, ``24-cell``,
    ``600-cell``, ``120-cell``, ``icosahedron``, ``dodecahedron`` or an alias
    such as ``16-cell``) or a Schläfli symbol.  Cubes are ``{-1, 1}^dim``,
    orthoplexes ``{+-e_i}``; simplex, 600-cell and 120-cell have unit
    circumradius.  All sets are centred at the origin.
    """
    symbol = None
    if isinstance(spec, SchlafliSymbol) or (isinstance(spec, str) and spec.strip().startswith("{")) or not isinstance(spec, str):
        symbol = SchlafliSymbol.parse(spec)
        dim = dim or symbol.rank
        name, dim = _from_symbol(symbol, dim)
        if name == "polygon":
            k = symbol.entries[0]
            return PolytopeVertices(2, _regular_polygon(k), f"{k}-gon", symbol)
    else:
        name = spec.strip().lower()
        if name in ALIASES:
            name, fixed = ALIASES[name]
            if fixed is not None:
                if dim not in (None, fixed):
                    raise Unsupported(f"{spec} only exists in dimension {fixed}")
                dim = fixed
        if name in FIXED_DIM:
            if dim not in (None, FIXED_DIM[name]):
                raise Unsupported(f"{name} only exists in dimension {FIXED_DIM[name]}")
            dim = FIXED_DIM[name]
    if dim is None:
        raise Unsupported(f"{spec}: dimension required")
    dim = int(dim)
    if name not in NAMES:
        raise Unsupported(f"unknown polytope {spec!r}; choose from {', '.join(NAMES)}")
    if dim < 2:
        raise Unsupported("dimension must be >= 2")
    builders = {
        "simplex": _simplex,
        "cube": _cube,
        "orthoplex": _orthoplex,
        "24-cell": lambda d: _24cell(),
        "600-cell": lambda d: _600cell(),
        "120-cell": lambda d: _120cell(),
        "icosahedron": lambda d: _icosahedron(),
        "dodecahedron": lambda d: _dodecahedron(),
    }
    verts = builders[name](dim)
    label = name if name in FIXED_DIM else f"{name}({dim})"
    return PolytopeVertices(dim, verts, label, symbol or _symbol_for(name, dim))


def _pairwise(verts):
    diff = verts[:, None, :] - verts[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _check_vertex_transitive(p: PolytopeVertices, tol: Tolerance):
    if len(p) < 2:
        raise NotRegular("need at least two vertices")
    radii = np.linalg.norm(p.vertices - p.centroid, axis=1)
    if np.ptp(radii) > tol.merge_radius(radii.max()):
        raise NotRegular(f"{p.label}: vertices are not equidistant from the centroid")


def edges_min_distance(p: PolytopeVertices, tol: Tolerance = DEFAULT_TOL) -> EdgeList:
    """All vertex pairs at the minimal pairwise distance.

    Valid only for regular (vertex-transitive) inputs, where that distance is
    the edge length; other inputs raise :class:`NotRegular`.
    """
    _check_vertex_transitive(p, tol)
    dist = _pairwise(p.vertices)
    iu = np.triu_indices(len(p), 1)
    d = dist[iu]
    dmin = d.min()
    hit = np.abs(d - dmin) <= tol.merge_radius(dmin)
    pairs = tuple(sorted(zip(iu[0][hit].tolist(), iu[1][hit].tolist())))
    degree = np.bincount(np.array(pairs).ravel(), minlength=len(p))
    if np.ptp(degree) != 0:
        raise NotRegular(f"{p.label}: minimal-distance graph is not regular")
    return EdgeList(pairs, float(dmin))


def rectify(p: PolytopeVertices, tol: Tolerance = DEFAULT_TOL) -> PolytopeVertices:
    """Vertices at the midpoints of all edges."""
    edges = edges_min_distance(p, tol)
    mids = np.array([(p.vertices[i] + p.vertices[j]) / 2 for i, j in edges.pairs])
    return PolytopeVertices(p.dim, unique_points(mids, tol), f"rectified {p.label}")

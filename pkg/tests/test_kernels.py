"""The compiled and numpy kernels must agree."""
from __future__ import annotations

import numpy as np
import pytest

from polysect._backend import BACKENDS, DEFAULT_BACKEND, kernels
from polysect.polytopes import generate_vertices

native = pytest.mark.skipif("native" not in BACKENDS, reason="compiled extension not built")


def _sorted_planes(normals, offsets):
    rows = np.round(np.column_stack([normals, offsets]), 6) + 0.0
    return sorted(map(tuple, rows))


def test_backend_selection():
    assert DEFAULT_BACKEND in BACKENDS
    assert kernels("python").__name__.endswith("_pykernels")
    with pytest.raises(ValueError):
        kernels("fortran")


@native
@pytest.mark.parametrize("name,dim", [("cube", 3), ("orthoplex", 4), ("simplex", 4), ("24-cell", 4), ("icosahedron", None)])
def test_facet_scan_equal(name, dim):
    v = generate_vertices(name, dim).vertices
    a = kernels("python").facet_scan(v, 1e-9, 1e-9)
    b = kernels("native").facet_scan(v, 1e-9, 1e-9)
    assert _sorted_planes(*a) == _sorted_planes(*b)


@native
def test_vertex_scan_equal(rng):
    for _ in range(20):
        A = rng.normal(size=(12, 3))
        b = rng.uniform(0.5, 2.0, size=12)
        pa = kernels("python").vertex_scan(A, b, 1e-9, 1e-9)
        pb = kernels("native").vertex_scan(A, b, 1e-9, 1e-9)
        ka = sorted(map(tuple, np.round(pa, 6) + 0.0))
        kb = sorted(map(tuple, np.round(pb, 6) + 0.0))
        assert ka == kb


@pytest.mark.parametrize("backend", sorted(BACKENDS))
def test_vertex_scan_square(backend):
    A = np.array([[1.0, 0], [-1, 0], [0, 1], [0, -1]])
    b = np.ones(4)
    pts = kernels(backend).vertex_scan(A, b, 1e-9, 1e-9)
    assert sorted(map(tuple, pts)) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


@pytest.mark.parametrize("backend", sorted(BACKENDS))
def test_facet_scan_skips_degenerate(backend):
    # three collinear points and one off the line: only 3 planes of the triangle
    v = np.array([[0.0, 0], [1, 0], [2, 0], [0, 1]])
    normals, _ = kernels(backend).facet_scan(v, 1e-9, 1e-9)
    keys = {tuple(np.round(n, 6)) for n in normals}
    assert len(keys) == 3

from __future__ import annotations

import itertools

import numpy as np
import pytest
from shapely.geometry import Polygon

from polysect.errors import DomainError, WindowTooLarge
from polysect.sections import build_section_frame
from polysect.tessellation import classify_patch, cubic_translates, section_tessellation

SQUARE = ([(1, 0, 0), (0, 1, 0)], None)
TRIHEX = ([(1, -1, 0), (0, 1, -1)], None)
ALT = ([(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1)], (1, -1, 1, -1))


def patch(dim, radius, spec):
    return section_tessellation(dim, radius, build_section_frame(*spec))


def test_cubic_translates():
    assert len(cubic_translates(3, 1)) == 27
    assert len(cubic_translates(4, 1)) == 81
    assert len(cubic_translates(2, 2)) == 25
    assert cubic_translates(2, 1)[0] == (-1, -1)
    with pytest.raises(WindowTooLarge):
        cubic_translates(5, 3)
    with pytest.raises(DomainError):
        cubic_translates(1, 1)


@pytest.mark.parametrize(
    "dim,spec,names",
    [(3, SQUARE, ["square"]), (3, TRIHEX, ["hexagon", "triangle"]), (4, ALT, ["octahedron", "tetrahedron"])],
)
def test_reference_patches(dim, spec, names):
    p = patch(dim, 2, spec)
    classes = classify_patch(p)
    assert sorted(c.name for c in classes) == names
    assert p.coverage_error() < 1e-9


def test_trihexagonal_parity_rule():
    """Hexagons sit on cubes with zero coordinate sum, triangles on sum +-1."""
    p = patch(3, 2, TRIHEX)
    for offset, shape in p.cells:
        s = sum(offset)
        assert abs(s) <= 1
        assert len(shape) == (6 if s == 0 else 3)


def test_alternated_cubic_parity_rule():
    p = patch(4, 1, ALT)
    for offset, shape in p.cells:
        s = sum(offset)
        assert len(shape) == (6 if s == 0 else 4)
        assert abs(s) <= 1


def _polygons(p):
    return [Polygon(s.vertices) for _, s in p.cells]


@pytest.mark.parametrize("spec", [SQUARE, TRIHEX])
def test_2d_cells_disjoint_and_edge_to_edge(spec):
    p = patch(3, 2, spec)
    polys = _polygons(p)
    for a, b in itertools.combinations(polys, 2):
        assert a.intersection(b).area < 1e-9
        inter = a.boundary.intersection(b.boundary)
        if inter.length > 1e-9:
            # shared boundary is a full edge of both polygons
            ea = {frozenset(map(lambda x: tuple(np.round(x, 6)), e)) for e in zip(a.exterior.coords[:-1], a.exterior.coords[1:])}
            eb = {frozenset(map(lambda x: tuple(np.round(x, 6)), e)) for e in zip(b.exterior.coords[:-1], b.exterior.coords[1:])}
            assert ea & eb


def test_coverage_against_shapely_union():
    p = patch(3, 1, TRIHEX)
    from shapely.ops import unary_union

    union = unary_union(_polygons(p))
    whole = Polygon(p.window_section().vertices)
    assert abs(union.area - whole.area) / whole.area < 1e-9
    assert abs(p.measure() - whole.area) / whole.area < 1e-9


def test_translation_invariance():
    """Interior cells related by an in-flat lattice vector have equal shapes."""
    p = patch(3, 2, TRIHEX)
    cells = dict(p.cells)
    shift = (1, -1, 0)  # lies in the flat x+y+z=0
    local = p.frame.T.T @ (2 * np.array(shift, dtype=float))
    checked = 0
    for offset, shape in p.interior_cells():
        other = tuple(a + b for a, b in zip(offset, shift))
        if other in cells:
            moved = {tuple(np.round(v, 6) + 0.0) for v in shape.vertices + local}
            assert moved == {tuple(np.round(v, 6) + 0.0) for v in cells[other].vertices}
            checked += 1
    assert checked > 0


def test_frame_dimension_mismatch():
    with pytest.raises(DomainError):
        section_tessellation(4, 1, build_section_frame(*SQUARE))

from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from polysect.errors import DomainError, EmptyGeometry
from polysect.export import dumps, export, from_json, to_json, to_obj, to_off, to_svg
from polysect.facets import cube_halfspaces
from polysect.sections import Mesh, Polygon2D, build_section_frame, section, vertex_enum_3d
from polysect.tessellation import section_tessellation

U = [(-1, -1, 0, 0), (-1, 0, -1, 0), (-1, 0, 0, 0)]


@pytest.fixture
def cube():
    return vertex_enum_3d(cube_halfspaces(3))


@pytest.fixture
def hexagon():
    return section(cube_halfspaces(4), build_section_frame(U[:2]))


def parse_off(text):
    lines = text.strip().splitlines()
    assert lines[0] == "OFF"
    v, f, e = map(int, lines[1].split())
    verts = np.array([list(map(float, l.split())) for l in lines[2 : 2 + v]])
    faces = [list(map(int, l.split()))[1:] for l in lines[2 + v : 2 + v + f]]
    return verts, faces, e


def test_off_cube(cube):
    text = to_off(cube)
    assert text.splitlines()[1] == "8 6 12"
    verts, faces, _ = parse_off(text)
    c = verts.mean(axis=0)
    for f in faces:
        p = verts[f]
        assert np.cross(p[1] - p[0], p[2] - p[0]) @ (p[0] - c) > 0
    assert all(len(x.split(".")[1]) == 6 for x in text.splitlines()[2].split())


def test_obj_one_based(cube):
    text = to_obj(cube)
    faces = [l for l in text.splitlines() if l.startswith("f ")]
    idx = [int(t) for l in faces for t in l.split()[1:]]
    assert min(idx) == 1 and max(idx) == 8
    assert sum(l.startswith("v ") for l in text.splitlines()) == 8


def test_svg_triangle():
    tri = Polygon2D(np.array([[0.0, 0], [1, 0], [0, 1]]))
    root = ET.fromstring(to_svg(tri))
    paths = root.findall("{http://www.w3.org/2000/svg}path")
    assert len(paths) == 1
    assert paths[0].get("d").count("L") == 2
    x0, y0, w, h = map(float, root.get("viewBox").split())
    assert w == pytest.approx(1.1) and h == pytest.approx(1.1)


def test_svg_patch_colors():
    patch = section_tessellation(3, 1, build_section_frame([(1, -1, 0), (0, 1, -1)]))
    root = ET.fromstring(to_svg(patch))
    paths = root.findall("{http://www.w3.org/2000/svg}path")
    assert len(paths) == len(patch.cells)
    colours = {}
    for p in paths:
        k = p.get("d").count("L") + 1
        colours.setdefault(k, set()).add(p.get("fill"))
    assert set(colours) == {3, 6}
    assert all(len(c) == 1 for c in colours.values())
    assert colours[3] != colours[6]


def test_json_hexagon(hexagon):
    data = json.loads(to_json(hexagon))
    assert data["dim"] == 2 and len(data["vertices"]) == 6
    assert all(len(v) == 2 for v in data["vertices"])


def test_json_round_trip_bytes(cube, hexagon):
    frame = build_section_frame(U)
    m = section(cube_halfspaces(4), frame)
    for geom, f in ((m, frame), (hexagon, None), (cube, None)):
        text = to_json(geom, f)
        assert dumps(json.loads(text)) == text
        rebuilt = from_json(text)
        assert to_json(rebuilt, f) == text


def test_json_patch_round_trip():
    patch = section_tessellation(3, 1, build_section_frame([(1, 0, 0), (0, 1, 0)]))
    text = to_json(patch)
    assert dumps(json.loads(text)) == text
    assert len(from_json(text)) == len(patch.cells)


def test_empty_geometry():
    empty = Mesh.empty_mesh()
    for fmt in ("off", "obj", "svg"):
        with pytest.raises(EmptyGeometry):
            export(empty, fmt)
    assert json.loads(export(empty, "json"))["vertices"] == []
    with pytest.raises(DomainError):
        export(empty, "stl")


def test_negative_zero_folded():
    p = Polygon2D(np.array([[-0.0, -1e-12], [1, 0], [0, 1]]))
    assert "-0.000000" not in to_off(p)
    assert "-0.0" not in to_json(p)

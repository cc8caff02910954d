"""OFF, OBJ, SVG and JSON writers for sections and tiling patches.

Coordinates are printed with six decimals and ``-0`` is folded to ``0`` so
that repeated runs produce identical bytes.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .errors import DomainError, EmptyGeometry
from .sections import Mesh, Polygon2D, SectionFrame
from .tessellation import TilingPatch, class_index, classify_patch

DECIMALS = 6
FORMATS = ("json", "off", "obj", "svg")
PALETTE = ("#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f")


def _num(x) -> str:
    s = f"{x:.{DECIMALS}f}"
    return "0.000000" if s == "-0.000000" else s


def _round(x):
    r = round(float(x), DECIMALS)
    return 0.0 if r == 0 else r


def canonical(obj):
    """Recursively round floats and convert arrays/tuples to plain lists."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return canonical(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
        return _round(obj)
    return obj


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, six-decimal floats, trailing newline."""
    return json.dumps(canonical(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cells(geom):
    """``(offset, shape)`` pairs for any exportable geometry."""
    if isinstance(geom, TilingPatch):
        return list(geom.cells)
    if isinstance(geom, (Mesh, Polygon2D)):
        return [(None, geom)]
    raise DomainError(f"cannot export {type(geom).__name__}")


def _faces(shape):
    if isinstance(shape, Polygon2D):
        return [tuple(range(len(shape)))]
    return list(shape.faces)


def _vertices3(shape) -> np.ndarray:
    v = np.asarray(shape.vertices, dtype=float)
    if v.shape[1] == 2:
        v = np.hstack([v, np.zeros((len(v), 1))])
    return v


def _require_nonempty(geom):
    cells = [(o, s) for o, s in _cells(geom) if not s.empty]
    if not cells:
        raise EmptyGeometry("nothing to export: the section is empty")
    return cells


def _merged(geom):
    verts, faces, edges = [], [], 0
    base = 0
    for _, shape in _require_nonempty(geom):
        verts.append(_vertices3(shape))
        faces += [tuple(base + i for i in f) for f in _faces(shape)]
        edges += len(shape.edges)
        base += len(shape.vertices)
    return np.vstack(verts), faces, edges


def to_off(geom) -> str:
    verts, faces, edges = _merged(geom)
    lines = ["OFF", f"{len(verts)} {len(faces)} {edges}"]
    lines += [" ".join(_num(x) for x in v) for v in verts]
    lines += [" ".join(map(str, (len(f),) + tuple(f))) for f in faces]
    return "\n".join(lines) + "\n"


def to_obj(geom) -> str:
    verts, faces, _ = _merged(geom)
    lines = ["v " + " ".join(_num(x) for x in v) for v in verts]
    lines += ["f " + " ".join(str(i + 1) for i in f) for f in faces]
    return "\n".join(lines) + "\n"


def _projected_polygons(shape):
    """2D outlines of a shape; 3D meshes are drawn back to front from +z."""
    if isinstance(shape, Polygon2D):
        return [shape.vertices]
    v = shape.vertices
    faces = sorted(shape.faces, key=lambda f: float(v[list(f), 2].mean()))
    return [v[list(f), :2] for f in faces]


def to_svg(geom) -> str:
    cells = _require_nonempty(geom)
    if isinstance(geom, TilingPatch):
        classes = classify_patch(geom, interior_only=False)
        index = dict(zip([o for o, _ in geom.cells], class_index(geom, classes)))
    else:
        index = {}
    polys = []
    for offset, shape in cells:
        color = PALETTE[index.get(offset, 0) % len(PALETTE)]
        for outline in _projected_polygons(shape):
            polys.append((offset, color, outline))
    pts = np.vstack([p for _, _, p in polys])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = max(float(np.max(hi - lo)), 1e-12)
    margin = 0.05 * span
    x0, y0 = lo[0] - margin, -hi[1] - margin
    w, h = hi[0] - lo[0] + 2 * margin, hi[1] - lo[1] + 2 * margin
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_num(x0)} {_num(y0)} {_num(w)} {_num(h)}">',
    ]
    stroke = _num(span / 400)
    for offset, color, outline in polys:
        d = "M " + " L ".join(f"{_num(x)} {_num(-y)}" for x, y in outline) + " Z"
        tag = "" if offset is None else f' data-offset="{",".join(map(str, offset))}"'
        out.append(f'  <path d="{d}" fill="{color}" fill-opacity="0.8" stroke="#000000" stroke-width="{stroke}"{tag}/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _shape_dict(shape):
    return {"vertices": shape.vertices, "faces": [list(f) for f in _faces(shape)] if not shape.empty else []}


def _frame_meta(frame: SectionFrame | None, eps):
    meta = {"eps": eps}
    if frame is not None:
        meta["frame"] = {"T": frame.T.T, "p0": frame.p0}
        meta["roots"] = frame.roots
    return meta


def to_json_dict(geom, frame: SectionFrame | None = None, eps: float = 1e-9) -> dict:
    if isinstance(geom, TilingPatch):
        classes = classify_patch(geom, interior_only=False) if geom.cells else []
        idx = class_index(geom, classes) if classes else []
        cells = [{"offset": list(o), "mesh": _shape_dict(s), "class": c} for (o, s), c in zip(geom.cells, idx)]
        return {
            "dim": geom.dim,
            "vertices": [],
            "faces": [],
            "cells": cells,
            "classes": [c.name for c in classes],
            "meta": _frame_meta(frame or geom.frame, eps),
        }
    if isinstance(geom, (Mesh, Polygon2D)):
        d = {"dim": geom.dim, "cells": [], "meta": _frame_meta(frame, eps)}
        d.update(_shape_dict(geom))
        if isinstance(geom, Mesh) and geom.grazing:
            d["meta"]["grazing"] = True
        return d
    raise DomainError(f"cannot export {type(geom).__name__}")


def to_json(geom, frame: SectionFrame | None = None, eps: float = 1e-9) -> str:
    return dumps(to_json_dict(geom, frame, eps))


def from_json(text: str):
    """Rebuild a :class:`Mesh` or :class:`Polygon2D` (or a list of cells) from :func:`to_json` output."""
    data = json.loads(text)

    def shape(d, dim):
        v = np.asarray(d["vertices"], dtype=float).reshape(-1, dim)
        if dim == 2:
            return Polygon2D(v)
        return Mesh(v, tuple(tuple(f) for f in d["faces"]))

    if data.get("cells"):
        return [(tuple(c["offset"]), shape(c["mesh"], data["dim"])) for c in data["cells"]]
    return shape(data, data["dim"])


def export(geom, fmt: str, frame: SectionFrame | None = None, eps: float = 1e-9) -> str:
    fmt = fmt.lower()
    if fmt == "json":
        return to_json(geom, frame, eps)
    if fmt == "off":
        return to_off(geom)
    if fmt == "obj":
        return to_obj(geom)
    if fmt == "svg":
        return to_svg(geom)
    raise DomainError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")

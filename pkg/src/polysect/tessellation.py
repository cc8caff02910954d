"""Sections of the hypercubic honeycomb.

Every cell of the honeycomb is the cube ``{-1, 1}^dim`` moved to ``2c`` for
an integer offset ``c``.  A window of such cubes is cut by a flat and the
non-empty pieces are collected into a patch of the induced tiling.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, WindowTooLarge
from .facets import cube_halfspaces
from .linalg import DEFAULT_TOL, Tolerance
from .sections import SectionFrame, congruent_up_to_similarity, describe, section

DEFAULT_CELL_CAP = 10_000


def cubic_translates(dim: int, radius: int, cap: int = DEFAULT_CELL_CAP) -> list[tuple[int, ...]]:
    """All offsets in ``{-radius..radius}^dim``, lexicographically ordered."""
    if dim < 2 or radius < 1:
        raise DomainError("need dim >= 2 and radius >= 1")
    count = (2 * radius + 1) ** dim
    if count > cap:
        raise WindowTooLarge(f"window of {count} cells exceeds the cap of {cap}")
    return list(itertools.product(range(-radius, radius + 1), repeat=dim))


@dataclass(frozen=True, eq=False)
class TilingPatch:
    dim: int  # dimension of the section (2 or 3)
    ambient_dim: int
    radius: int
    frame: SectionFrame
    cells: tuple  # of (offset, Mesh | Polygon2D)

    def __len__(self):
        return len(self.cells)

    def is_interior(self, offset) -> bool:
        return max(abs(c) for c in offset) < self.radius

    def interior_cells(self) -> list:
        return [(o, s) for o, s in self.cells if self.is_interior(o)]

    def measure(self) -> float:
        """Total area (2D) or volume (3D) of all cells."""
        return float(sum(_measure(s) for _, s in self.cells))

    def window_section(self, tol: Tolerance = DEFAULT_TOL):
        """The flat's section of the whole window box."""
        box = cube_halfspaces(self.ambient_dim, 2 * self.radius + 1)
        return section(box, self.frame, tol)

    def coverage_error(self, tol: Tolerance = DEFAULT_TOL) -> float:
        """Relative gap between the cells' total measure and the window slice."""
        whole = _measure(self.window_section(tol))
        return abs(self.measure() - whole) / whole


def _measure(shape) -> float:
    if shape.empty:
        return 0.0
    return shape.area() if shape.dim == 2 else shape.volume()


def section_tessellation(dim: int, radius: int, f: SectionFrame, tol: Tolerance = DEFAULT_TOL, cap: int = DEFAULT_CELL_CAP, backend=None) -> TilingPatch:
    """Cut every cube of the window whose centre is within ``sqrt(dim)`` of the flat."""
    if f.ambient_dim != dim:
        raise DomainError(f"frame lives in R^{f.ambient_dim}, honeycomb in R^{dim}")
    base = cube_halfspaces(dim)
    proj = f.T @ f.T.T
    reach = math.sqrt(dim) * (1 + tol.eps)
    cells = []
    for offset in cubic_translates(dim, radius, cap):
        centre = 2.0 * np.array(offset, dtype=float)
        d = centre - f.p0
        if np.linalg.norm(d - proj @ d) > reach:
            continue
        shape = section(base.translated(centre), f, tol, backend)
        if not shape.empty:
            cells.append((offset, shape))
    return TilingPatch(f.dim, dim, radius, f, tuple(cells))


@dataclass(frozen=True)
class CellClass:
    name: str
    count: int
    representative: tuple  # lattice offset


def classify_patch(p: TilingPatch, interior_only: bool = True) -> list[CellClass]:
    """Group cells into similarity classes; by default only interior cells count."""
    cells = p.interior_cells() if interior_only else list(p.cells)
    if not cells:
        raise DomainError("patch has no cells to classify")
    reps: list = []
    counts: list[int] = []
    for offset, shape in cells:
        for i, (_, rshape) in enumerate(reps):
            if congruent_up_to_similarity(shape, rshape):
                counts[i] += 1
                break
        else:
            reps.append((offset, shape))
            counts.append(1)
    out = [CellClass(describe(s), c, o) for (o, s), c in zip(reps, counts)]
    return sorted(out, key=lambda c: (-c.count, c.name))


def class_index(p: TilingPatch, classes: list[CellClass]) -> list[int]:
    """Index into ``classes`` for every cell of ``p`` (``-1`` if none fits)."""
    lookup = dict(p.cells)
    reps = [lookup[c.representative] for c in classes]
    out = []
    for _, shape in p.cells:
        out.append(next((i for i, r in enumerate(reps) if congruent_up_to_similarity(shape, r)), -1))
    return out

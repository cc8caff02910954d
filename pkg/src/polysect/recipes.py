"""Named section and tiling recipes with frozen expected results.

Each recipe lives in ``recipes/<name>.json`` next to this module.  The
``expect`` block records what the recipe produced when it was frozen; the
recipes for the named solids were found by :func:`search_root_triples`
and kept as the first hit in canonical root order.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DependentRoots, DomainError
from .facets import enumerate_facets_bruteforce
from .polytopes import generate_vertices
from .roots import bn_root_system
from .sections import build_section_frame, describe, section, sweep_sections, symmetry_order_2d
from .tessellation import classify_patch, section_tessellation

KINDS = ("section", "sweep", "tile", "explore")


@dataclass
class Recipe:
    name: str
    kind: str
    roots: list
    polytope: str | None = None
    dim: int | None = None
    point: list | None = None
    radius: int | None = None
    direction: list | None = None
    offsets: list | None = None
    expect: dict = field(default_factory=dict)
    note: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown recipe kind {self.kind!r}")

    def to_json(self) -> str:
        data = {k: v for k, v in asdict(self).items() if v is not None}
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data) -> "Recipe":
        return cls(**data)

    def frame(self, point=None):
        return build_section_frame(self.roots, point if point is not None else self.point)


def recipe_dir():
    return resources.files(__package__) / "recipes"


def list_recipes() -> list[str]:
    return sorted(p.name[:-5] for p in recipe_dir().iterdir() if p.name.endswith(".json"))


def load_recipe(name: str) -> Recipe:
    path = recipe_dir() / f"{name}.json"
    if not path.is_file():
        raise DomainError(f"no recipe named {name!r}; have {', '.join(list_recipes())}")
    return Recipe.from_dict(json.loads(path.read_text()))


def _halfspaces(recipe: Recipe):
    return enumerate_facets_bruteforce(generate_vertices(recipe.polytope, recipe.dim))


def summarize(shape) -> dict:
    """Combinatorial fingerprint of a section, as stored in ``expect``."""
    if shape.empty:
        return {"name": "empty", "grazing": bool(getattr(shape, "grazing", False))}
    if shape.dim == 2:
        return {"name": describe(shape), "vertices": len(shape), "symmetry_order": symmetry_order_2d(shape)}
    v, e, f = shape.counts()
    return {"name": describe(shape), "counts": [v, e, f], "face_sizes": shape.face_sizes()}


def run_recipe(recipe: Recipe):
    """Execute a recipe; returns ``(geometry, summary)``."""
    if recipe.kind == "section":
        shape = section(_halfspaces(recipe), recipe.frame())
        return shape, summarize(shape)
    if recipe.kind == "sweep":
        meshes = sweep_sections(_halfspaces(recipe), recipe.direction, recipe.offsets, recipe.frame())
        return meshes, {"sequence": [summarize(m) for m in meshes]}
    if recipe.kind == "tile":
        patch = section_tessellation(recipe.dim, recipe.radius, recipe.frame())
        classes = classify_patch(patch)
        return patch, {"classes": sorted(c.name for c in classes)}
    # explore: every 3-subset of the listed roots, in order
    hp = _halfspaces(recipe)
    results = {}
    for tri in itertools.combinations(range(len(recipe.roots)), 3):
        frame = build_section_frame([recipe.roots[i] for i in tri], recipe.point)
        results["".join(map(str, tri))] = summarize(section(hp, frame))
    return results, {"subsets": results}


def search_root_triples(hp, predicate, roots=None, point=None):
    """Yield root triples (from ``roots``, default positive B_n roots) whose section satisfies ``predicate``."""
    if roots is None:
        roots = bn_root_system(hp.dim).positive_roots
    roots = np.asarray(roots, dtype=float)
    for tri in itertools.combinations(range(len(roots)), 3):
        try:
            frame = build_section_frame(roots[list(tri)], point)
        except DependentRoots:
            continue
        shape = section(hp, frame)
        if predicate(shape):
            yield roots[list(tri)].tolist()


def _named(name):
    return lambda shape: describe(shape) == name


def _int_roots(roots):
    return [[int(x) if float(x).is_integer() else x for x in r] for r in roots]


def build_recipes() -> list[Recipe]:
    """Derive every recipe from scratch (searches included)."""
    u = [[-1, -1, 0, 0], [-1, 0, -1, 0], [-1, 0, 0, 0]]
    a3 = [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]]
    origin4 = [0, 0, 0, 0]
    out = [
        Recipe("cube-on-vertex", "section", u, "cube", 4, origin4, note="4-cube, long/short B_4 root triple"),
        Recipe("cube-hexagon", "section", u[:2], "cube", 4, origin4, note="2D sub-section of the same frame"),
        Recipe(
            "cube-diagonal-sweep",
            "sweep",
            a3,
            "cube",
            4,
            direction=[0.5, 0.5, 0.5, 0.5],
            offsets=[-1.5, -0.5, 0.0, 0.5, 1.5],
            note="flat orthogonal to the main diagonal",
        ),
    ]
    o16 = enumerate_facets_bruteforce(generate_vertices("orthoplex", 4))
    c24 = enumerate_facets_bruteforce(generate_vertices("24-cell"))
    for name, hp, poly, target in (
        ("16cell-cuboctahedron", o16, "orthoplex", "cuboctahedron"),
        ("16cell-hexagonal-bipyramid", o16, "orthoplex", "hexagonal bipyramid"),
        ("24cell-rhombic-dodecahedron", c24, "24-cell", "rhombic dodecahedron"),
    ):
        roots = next(search_root_triples(hp, _named(target)))
        out.append(Recipe(name, "section", _int_roots(roots), poly, 4, origin4, note=f"first B_4 positive-root triple giving a {target}"))
    out += [
        Recipe("square-tiling", "tile", [[1, 0, 0], [0, 1, 0]], dim=3, point=[0, 0, 0], radius=2, note="face-first plane"),
        Recipe("trihexagonal-tiling", "tile", [[1, -1, 0], [0, 1, -1]], dim=3, point=[0, 0, 0], radius=2, note="plane through six edge midpoints"),
        Recipe(
            "alternated-cubic-honeycomb",
            "tile",
            a3,
            dim=4,
            point=[1, -1, 1, -1],
            radius=2,
            note="3-flat orthogonal to (1,1,1,1) through a lattice vertex",
        ),
        Recipe(
            "16cell-root-subsets",
            "explore",
            a3 + [[0, 0, 0, 1]],
            "orthoplex",
            4,
            origin4,
            note="all 3-subsets of four simple B_4 roots; exploratory only",
        ),
    ]
    for r in out:
        r.expect = run_recipe(r)[1]
    return out


def freeze(directory=None) -> list[Path]:
    """Rewrite the golden recipe files."""
    directory = Path(directory) if directory else Path(str(recipe_dir()))
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for r in build_recipes():
        path = directory / f"{r.name}.json"
        path.write_text(r.to_json())
        paths.append(path)
    return paths


if __name__ == "__main__":
    for p in freeze():
        print(p)

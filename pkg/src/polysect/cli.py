"""Command-line interface.

Exit codes: 0 on success, 1 on usage errors, 2 when the input violates a
mathematical precondition (any :class:`~polysect.errors.DomainError`).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import export
from .errors import DomainError
from .facets import enumerate_facets_bruteforce, enumerate_facets_pivot
from .linalg import Tolerance
from .polytopes import generate_vertices, rectify
from .recipes import list_recipes, load_recipe, run_recipe
from .roots import InfiniteType, bn_root_system, coxeter_from_schlafli, is_crystallographic, orbit_roots
from .schlafli import (
    SchlafliSymbol,
    angle_profile,
    classify,
    dihedral_angle,
    enumerate_regular,
    four_entry_criterion,
    polyhedron_counts,
    symbol_algebra,
)
from .sections import build_section_frame, describe, section, sweep_sections
from .tessellation import classify_patch, section_tessellation

COMMANDS = ("classify", "enumerate", "generate", "facets", "roots", "section", "sweep", "tile", "rectify", "recipe", "job")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class JobSpec:
    """Everything needed to rerun one command; serialises to JSON and argv."""

    command: str
    target: str | None = None  # polytope name, symbol, recipe name, or 'bn'/'orbit'
    dim: int | None = None
    roots: list | None = None
    root_indices: list | None = None
    point: list | None = None
    direction: list | None = None
    offsets: list | None = None
    radius: int | None = None
    two_d: bool = False
    method: str | None = None
    format: str = "json"
    output: str | None = None
    eps: float | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        data = {k: v for k, v in asdict(self).items() if v not in (None, False, {})}
        return json.dumps(data, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "JobSpec":
        data = json.loads(text)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown job fields: {', '.join(sorted(unknown))}")
        if "command" not in data:
            raise UsageError("job file needs a 'command'")
        return cls(**data)

    def to_argv(self) -> list[str]:
        argv = [self.command]
        if self.command == "roots":
            argv += [self.extra.get("kind", "bn"), str(self.target)]
        elif self.command in ("enumerate", "tile"):
            argv.append(str(self.dim))
        elif self.target is not None:
            argv.append(self.target)
            if self.dim is not None:
                argv.append(str(self.dim))
        if self.roots is not None:
            argv.append("--roots=" + ";".join(",".join(_fmt(x) for x in r) for r in self.roots))
        if self.root_indices is not None:
            argv.append("--root-indices=" + ",".join(map(str, self.root_indices)))
        for name in ("point", "direction", "offsets"):
            value = getattr(self, name)
            if value is not None:
                argv.append(f"--{name}=" + ",".join(_fmt(x) for x in value))
        if self.radius is not None:
            argv += ["--radius", str(self.radius)]
        if self.two_d:
            argv.append("--2d")
        if self.method:
            argv += ["--method", self.method]
        if self.extra.get("cap") is not None:
            argv += ["--cap", str(self.extra["cap"])]
        if self.extra.get("backend"):
            argv += ["--backend", self.extra["backend"]]
        argv += ["--format", self.format]
        if self.output:
            argv += ["--output", self.output]
        if self.eps is not None:
            argv += ["--eps", repr(self.eps)]
        return argv

    @classmethod
    def from_args(cls, ns) -> "JobSpec":
        extra = {}
        if getattr(ns, "cap", None) is not None:
            extra["cap"] = ns.cap
        if getattr(ns, "backend", None):
            extra["backend"] = ns.backend
        target = getattr(ns, "target", None)
        if ns.command == "roots":
            extra["kind"] = ns.kind
        return cls(
            command=ns.command,
            target=target,
            dim=getattr(ns, "dim", None),
            roots=getattr(ns, "roots", None),
            root_indices=getattr(ns, "root_indices", None),
            point=getattr(ns, "point", None),
            direction=getattr(ns, "direction", None),
            offsets=getattr(ns, "offsets", None),
            radius=getattr(ns, "radius", None),
            two_d=bool(getattr(ns, "two_d", False)),
            method=getattr(ns, "method", None),
            format=ns.format,
            output=ns.output,
            eps=ns.eps,
            extra=extra,
        )


def _fmt(x) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def _vector(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}") from None


def _vectors(text: str) -> list[list[float]]:
    return [_vector(part) for part in text.split(";") if part.strip()]


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=export.FORMATS, default="json", help="output format (default json)")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--eps", type=float, help="feasibility/incidence tolerance (default 1e-9)")

    p = _Parser(prog="polysect", description="Regular polytopes, root systems and their cross-sections.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("classify", parents=[common], help="classify a Schläfli symbol")
    s.add_argument("target", metavar="symbol")

    s = sub.add_parser("enumerate", parents=[common], help="regular symbols of a dimension")
    s.add_argument("dim", type=int)

    def polytope_args(s):
        s.add_argument("target", help="polytope name or Schläfli symbol")
        s.add_argument("dim", type=int, nargs="?")

    s = sub.add_parser("generate", parents=[common], help="vertex coordinates")
    polytope_args(s)

    s = sub.add_parser("facets", parents=[common], help="facet half-spaces")
    polytope_args(s)
    s.add_argument("--method", choices=("brute", "pivot"), default="brute")
    s.add_argument("--backend", choices=("native", "python"))

    s = sub.add_parser("roots", parents=[common], help="root systems")
    s.add_argument("kind", choices=("bn", "orbit"))
    s.add_argument("target", help="n for bn, Schläfli symbol for orbit")
    s.add_argument("--cap", type=int)

    def frame_args(s):
        g = s.add_mutually_exclusive_group(required=True)
        g.add_argument("--roots", type=_vectors, help='spanning vectors, "a,b,c;d,e,f;..."')
        g.add_argument("--root-indices", type=_ints, help="indices into the sorted B_n root list")
        s.add_argument("--point", type=_vector, help="translation point (default origin)")

    s = sub.add_parser("section", parents=[common], help="cross-section of a polytope")
    polytope_args(s)
    frame_args(s)
    s.add_argument("--2d", dest="two_d", action="store_true", help="2D section from the first two roots")

    s = sub.add_parser("sweep", parents=[common], help="parallel sections along a direction")
    polytope_args(s)
    frame_args(s)
    s.add_argument("--direction", type=_vector, required=True)
    s.add_argument("--offsets", type=_vector, required=True)

    s = sub.add_parser("tile", parents=[common], help="section of the cubic honeycomb")
    s.add_argument("dim", type=int)
    s.add_argument("--radius", type=int, default=1)
    frame_args(s)

    s = sub.add_parser("rectify", parents=[common], help="edge midpoints of a regular polytope")
    polytope_args(s)

    s = sub.add_parser("recipe", parents=[common], help="run a stored recipe (omit name to list)")
    s.add_argument("target", nargs="?")

    s = sub.add_parser("job", parents=[common], help="run a JobSpec JSON file")
    s.add_argument("target", help="path to job file")
    return p


def _tol(job: JobSpec) -> Tolerance:
    return Tolerance(eps=job.eps) if job.eps is not None else Tolerance()


def _polytope(job: JobSpec):
    return generate_vertices(job.target, job.dim)


def _frame(job: JobSpec, dim: int, count=None):
    if job.roots is not None:
        roots = job.roots
    else:
        table = bn_root_system(dim).roots
        bad = [i for i in job.root_indices if not 0 <= i < len(table)]
        if bad:
            raise DomainError(f"root indices {bad} out of range 0..{len(table) - 1}")
        roots = table[job.root_indices].tolist()
    if count is not None:
        roots = roots[:count]
    if any(len(r) != dim for r in roots):
        raise DomainError(f"every root must have {dim} coordinates")
    return build_section_frame(roots, job.point if job.point is not None else [0.0] * dim)


def _symbol_or_none(s):
    return None if s is None else str(s)


def _cmd_classify(job):
    s = SchlafliSymbol.parse(job.target)
    dual, facet, vfig = symbol_algebra(s)
    out = {
        "symbol": str(s),
        "rank": s.rank,
        "class": str(classify(s)),
        "dual": str(dual),
        "facet": _symbol_or_none(facet),
        "vertex_figure": _symbol_or_none(vfig),
    }
    if len(s.entries) >= 2:
        prof = angle_profile(s)
        out["theta_deg"] = [math.degrees(t) for t in prof.thetas]
        out["angle_defect"] = prof.defect
    if len(s.entries) == 2:
        cls, numbers = polyhedron_counts(*s.entries)
        out["counts"] = list(numbers.counts)
        if numbers.finite:
            out["euler"] = numbers.euler_characteristic()
            out["dihedral_deg"] = math.degrees(dihedral_angle(*s.entries))
    if len(s.entries) == 4:
        out["four_entry_value"] = four_entry_criterion(s)
    return out


def _cmd_enumerate(job):
    e = enumerate_regular(job.dim)
    out = {"dim": job.dim, "truncated": e.truncated}
    for cls in ("elliptic", "euclidean", "hyperbolic"):
        out[cls] = [str(s) for s, c in e.symbols if str(c) == cls]
    return out


def _cmd_generate(job):
    p = _polytope(job)
    return {"label": p.label, "dim": p.dim, "symbol": _symbol_or_none(p.symbol), "count": len(p), "vertices": p.vertices}


def _cmd_facets(job):
    p = _polytope(job)
    fn = enumerate_facets_pivot if job.method == "pivot" else enumerate_facets_bruteforce
    hp = fn(p, _tol(job), job.extra.get("backend"))
    return {
        "label": p.label,
        "count": len(hp),
        "halfspaces": [{"normal": h.normal, "offset": h.offset, "vertices": list(inc)} for h, inc in zip(hp.halfspaces, hp.incidence)],
    }


def _cmd_roots(job):
    kind = job.extra.get("kind", "bn")
    if kind == "bn":
        try:
            n = int(job.target)
        except ValueError:
            raise DomainError(f"bn needs an integer rank, got {job.target!r}") from None
        rs = bn_root_system(n)
        basis = "standard"
    else:
        rs = orbit_roots(coxeter_from_schlafli(job.target), job.extra.get("cap") or 1000)
        if isinstance(rs, InfiniteType):
            return {"symbol": job.target, "finite": False, "cap": rs.cap}
        basis = "simple"
    ok, witness = is_crystallographic(rs)
    norms = np.einsum("ij,jk,ik->i", rs.roots, rs.form, rs.roots)
    return {
        "finite": True,
        "basis": basis,
        "count": len(rs),
        "positive": list(rs.positive),
        "simple": rs.simple,
        "roots": rs.roots,
        "squared_lengths": norms,
        "crystallographic": ok,
        "witness": None if witness is None else [w.tolist() for w in witness],
    }


def _section_meta(shape):
    if shape.empty:
        return {"name": "empty", "grazing": bool(getattr(shape, "grazing", False))}
    meta = {"name": describe(shape)}
    if shape.dim == 3:
        meta["counts"] = list(shape.counts())
    return meta


def _cmd_section(job):
    p = _polytope(job)
    frame = _frame(job, p.dim, 2 if job.two_d else None)
    hp = enumerate_facets_bruteforce(p, _tol(job))
    shape = section(hp, frame, _tol(job))
    return shape, frame


def _cmd_sweep(job):
    p = _polytope(job)
    frame = _frame(job, p.dim)
    hp = enumerate_facets_bruteforce(p, _tol(job))
    meshes = sweep_sections(hp, job.direction, job.offsets, frame, _tol(job))
    return {
        "direction": job.direction,
        "sections": [
            dict(offset=t, **_section_meta(m), **export.to_json_dict(m, None, _tol(job).eps)) for t, m in zip(job.offsets, meshes)
        ],
    }


def _cmd_tile(job):
    frame = _frame(job, job.dim)
    return section_tessellation(job.dim, job.radius or 1, frame, _tol(job)), frame


def _cmd_rectify(job):
    r = rectify(_polytope(job), _tol(job))
    return {"label": r.label, "dim": r.dim, "count": len(r), "vertices": r.vertices}


def _cmd_recipe(job):
    if job.target is None:
        return {"recipes": list_recipes()}
    recipe = load_recipe(job.target)
    geom, summary = run_recipe(recipe)
    if recipe.kind in ("section", "tile") and job.format != "json":
        return geom, recipe.frame()
    return {"recipe": recipe.name, "kind": recipe.kind, "expect": recipe.expect, "result": summary, "match": summary == recipe.expect}


HANDLERS = {
    "classify": _cmd_classify,
    "enumerate": _cmd_enumerate,
    "generate": _cmd_generate,
    "facets": _cmd_facets,
    "roots": _cmd_roots,
    "section": _cmd_section,
    "sweep": _cmd_sweep,
    "tile": _cmd_tile,
    "rectify": _cmd_rectify,
    "recipe": _cmd_recipe,
}


def _render(result, job: JobSpec) -> str:
    eps = _tol(job).eps
    if isinstance(result, tuple):
        geom, frame = result
        text = export.export(geom, job.format, frame, eps)
        if job.format == "json":
            data = json.loads(text)
            data["meta"]["section"] = _section_meta(geom) if not hasattr(geom, "cells") else {
                "classes": [c.name for c in classify_patch(geom, interior_only=False)] if geom.cells else []
            }
            text = export.dumps(data)
        return text
    if job.format != "json":
        raise UsageError(f"{job.command} only supports --format json")
    return export.dumps(result)


def run_job(job: JobSpec) -> str:
    if job.command not in HANDLERS:
        raise UsageError(f"unknown command {job.command!r}")
    if job.command in ("section", "sweep", "tile") and job.roots is None and job.root_indices is None:
        raise UsageError(f"{job.command} needs --roots or --root-indices")
    return _render(HANDLERS[job.command](job), job)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        ns = build_parser().parse_args(argv)
        if ns.command == "job":
            job = JobSpec.from_json(Path(ns.target).read_text())
            for name in ("format", "output", "eps"):
                if getattr(ns, name) not in (None, "json"):
                    setattr(job, name, getattr(ns, name))
        else:
            job = JobSpec.from_args(ns)
        text = run_job(job)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if job.output:
        Path(job.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

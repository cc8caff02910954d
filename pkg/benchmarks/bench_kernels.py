"""Compare the compiled and numpy kernels on facet and vertex scans.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from polysect._backend import BACKENDS
from polysect.facets import enumerate_facets_bruteforce, enumerate_facets_pivot
from polysect.polytopes import generate_vertices
from polysect.roots import bn_root_system
from polysect.sections import build_section_frame, restrict_halfspaces


def cases():
    c24 = generate_vertices("24-cell")
    o16 = generate_vertices("orthoplex", 4)
    hp24 = enumerate_facets_bruteforce(c24)
    frame = build_section_frame(bn_root_system(4).positive_roots[[0, 3, 7]], [0.1, 0.2, 0.0, -0.1])
    r = restrict_halfspaces(hp24, frame)
    return [
        ("facet brute 16-cell", lambda b: enumerate_facets_bruteforce(o16, backend=b)),
        ("facet brute 24-cell", lambda b: enumerate_facets_bruteforce(c24, backend=b)),
        ("facet pivot 600-cell", lambda b: enumerate_facets_pivot(generate_vertices("600-cell"), backend=b)),
        ("vertex scan 24-cell section", lambda b: BACKENDS[b].vertex_scan(r.normals, -r.offsets, 1e-9, 1e-9)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    names = [b for b in ("python", "native") if b in BACKENDS]
    print(f"{'case':32s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in cases():
        times = [min(timeit.repeat(lambda: fn(n), number=1, repeat=args.repeat)) for n in names]
        row = f"{label:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)
    if "native" not in BACKENDS:
        print("compiled extension not built; only the numpy kernels were timed")
    return 0


if __name__ == "__main__":
    np.set_printoptions(precision=4)
    raise SystemExit(main())

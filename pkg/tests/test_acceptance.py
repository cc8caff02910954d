"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (with measured values and runtime) that
is printed in the pytest terminal summary.
"""
from __future__ import annotations

import itertools
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from polysect.errors import DependentRoots
from polysect.facets import cube_halfspaces, enumerate_facets_bruteforce, enumerate_facets_pivot, same_halfspaces
from polysect.polytopes import generate_vertices, rectify
from polysect.recipes import load_recipe, run_recipe
from polysect.roots import (
    CoxeterMatrix,
    bn_coxeter_matrix,
    bn_root_system,
    gram_form,
    is_crystallographic,
    orbit_roots,
    pairwise_angle_multiset,
    simple_reflection,
)
from polysect.schlafli import GeometryClass, dihedral_angle, enumerate_regular, polyhedron_counts, quasiregular_counts
from polysect.sections import (
    build_section_frame,
    congruent_up_to_similarity,
    describe,
    hull_mesh,
    reflection_invariance,
    section,
    sweep_sections,
    symmetry_order_2d,
)
from polysect.tessellation import classify_patch

E, Z, H = GeometryClass.ELLIPTIC, GeometryClass.EUCLIDEAN, GeometryClass.HYPERBOLIC


def record(n, ok, detail):
    ACCEPTANCE.append((n, bool(ok), detail))
    assert ok, f"criterion {n}: {detail}"


def _names(e, cls):
    return {s.compact() for s in e.of_class(cls)}


def test_criterion_01_enumeration():
    t0 = time.perf_counter()
    e3, e4, e5 = enumerate_regular(3), enumerate_regular(4), enumerate_regular(5)
    checks = [
        _names(e3, E) == {"33", "34", "43", "35", "53"},
        _names(e3, Z) == {"36", "63", "44"},
        _names(e4, E) == {"333", "334", "343", "433", "335", "533"},
        _names(e4, Z) == {"434"},
        _names(e5, E) == {"3333", "3334", "4333"},
        _names(e5, Z) == {"3343", "3433", "4334"},
        len(e5.of_class(H)) == 5,
    ]
    for d in range(6, 10):
        e = enumerate_regular(d)
        checks.append(len(e.of_class(E)) == 3 and len(e.of_class(Z)) == 1)
    dt = time.perf_counter() - t0
    record(1, all(checks) and dt < 1.0, f"enumeration dims 3..9 exact ({sum(checks)}/{len(checks)} checks), {dt:.3f}s < 1s")


def test_criterion_02_dihedral():
    table = {(3, 3): 70.5, (3, 4): 109.5, (4, 3): 90.0, (3, 5): 138.2, (5, 3): 116.6}
    t0 = time.perf_counter()
    got = {k: math.degrees(dihedral_angle(*k)) for k in table}
    dt = time.perf_counter() - t0
    worst = max(abs(got[k] - v) for k, v in table.items())
    record(2, worst <= 0.1, f"max dihedral deviation {worst:.4f} deg <= 0.1 deg, {dt * 1e3:.2f}ms")


def test_criterion_03_counts():
    ok = True
    for n, p in [(3, 3), (3, 4), (4, 3), (3, 5), (5, 3)]:
        cls, numbers = polyhedron_counts(n, p)
        n0, n1, n2 = numbers.counts
        d = 2 * (n + p) - n * p
        closed = (4 * n // d, 2 * n * p // d, 4 * p // d)
        ok &= cls is E and numbers.counts == closed
        ok &= n0 - n1 + n2 == 2 and n * n2 == 2 * n1 == p * n0
    record(3, ok, "Platonic (N0,N1,N2) exact, Euler 2, nN2 = 2N1 = pN0")


def test_criterion_04_quasiregular():
    got = {k: quasiregular_counts(*k)[1].counts for k in [(3, 4), (3, 3), (3, 5)]}
    ok = got == {(3, 4): (12, 24, 14), (3, 3): (6, 12, 8), (3, 5): (30, 60, 32)}
    record(4, ok, f"quasi-regular counts {got}")


def test_criterion_05_roots():
    t0 = time.perf_counter()
    ok = True
    for n in range(2, 7):
        rs = bn_root_system(n)
        sq = np.round(np.sum(rs.roots**2, axis=1)).astype(int)
        ok &= len(rs) == 2 * n * n and np.sum(sq == 1) == 2 * n and np.sum(sq == 2) == 2 * n * (n - 1)
        ok &= is_crystallographic(rs)[0]
    orbit = orbit_roots(bn_coxeter_matrix(3))
    ok &= len(orbit) == 18
    ok &= pairwise_angle_multiset(orbit) == pairwise_angle_multiset(bn_root_system(3))
    pent = [[1.0, 0.0], [math.cos(math.pi / 5), math.sin(math.pi / 5)]]
    ok &= not is_crystallographic(pent)[0]
    dt = time.perf_counter() - t0
    record(5, ok and dt < 5, f"B_n n=2..6 counts, B_3 orbit 18 with matching angle multiset, pentagon pair non-crystallographic, {dt:.3f}s < 5s")


def test_criterion_06_facets():
    expected = [("cube", 3, 6), ("cube", 4, 8), ("orthoplex", 4, 16), ("simplex", 4, 5), ("24-cell", None, 24)]
    ok = True
    timings = {}
    for name, dim, count in expected:
        p = generate_vertices(name, dim)
        t0 = time.perf_counter()
        brute = enumerate_facets_bruteforce(p)
        timings[name if dim is None else f"{name}{dim}"] = time.perf_counter() - t0
        ok &= len(brute) == count and same_halfspaces(brute, enumerate_facets_pivot(p))
    t24 = timings["24-cell"]
    t0 = time.perf_counter()
    n600 = len(enumerate_facets_pivot(generate_vertices("600-cell")))
    t600 = time.perf_counter() - t0
    ok &= t24 < 30 and n600 == 600 and t600 < 600
    record(6, ok, f"facet counts 6/8/16/5/24, pivot == brute force; 24-cell brute {t24:.3f}s < 30s; 600-cell pivot {n600} facets in {t600:.2f}s < 600s")


def test_criterion_07_worked_section():
    t0 = time.perf_counter()
    r = load_recipe("cube-on-vertex")
    frame = r.frame()
    m = section(cube_halfspaces(4), frame)
    faces = [m.face_polygon(j) for j in range(len(m.faces))]
    squares = all(
        len(q) == 4
        and np.ptp(np.linalg.norm(np.roll(q, -1, 0) - q, axis=1)) < 1e-6
        and abs(np.linalg.norm(q[0] - q[2]) - np.linalg.norm(q[1] - q[3])) < 1e-6
        for q in faces
    )
    ref = faces[0]
    congruent = all(abs(np.linalg.norm(q[1] - q[0]) - np.linalg.norm(ref[1] - ref[0])) < 1e-6 for q in faces)
    inv = reflection_invariance(m, frame)
    hexa = section(cube_halfspaces(4), build_section_frame(r.roots[:2], r.point))
    order = symmetry_order_2d(hexa)
    regular = len(hexa) == 6 and np.ptp(hexa.side_lengths()) < 1e-6
    dt = time.perf_counter() - t0
    ok = m.counts() == (8, 12, 6) and squares and congruent and all(inv) and regular and order == 12 and dt < 1
    record(7, ok, f"(V,E,F)={m.counts()}, congruent squares={squares and congruent}, mirrors={inv}, hexagon order {order}, {dt:.3f}s < 1s")


def test_criterion_08_sweep():
    t0 = time.perf_counter()
    frame = build_section_frame([(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1)])
    meshes = sweep_sections(cube_halfspaces(4), np.ones(4) / 2, [-1.5, -0.5, 0.0, 0.5, 1.5], frame)
    seq = [len(m) for m in meshes]
    octa = congruent_up_to_similarity(meshes[2], hull_mesh(generate_vertices("orthoplex", 3).vertices))
    dt = time.perf_counter() - t0
    record(8, seq == [4, 12, 6, 12, 4] and octa and dt < 2, f"vertex sequence {seq}, centre octahedron={octa}, {dt:.3f}s < 2s")


def test_criterion_09_named_solids():
    cubo, _ = run_recipe(load_recipe("16cell-cuboctahedron"))
    rect = hull_mesh(rectify(generate_vertices("cube", 3)).vertices)
    ok1 = cubo.counts() == (12, 24, 14) and congruent_up_to_similarity(cubo, rect)
    rd, _ = run_recipe(load_recipe("24cell-rhombic-dodecahedron"))
    rhombic = all(
        len(q) == 4 and np.ptp(np.linalg.norm(np.roll(q, -1, 0) - q, axis=1)) < 1e-9 for q in (rd.face_polygon(j) for j in range(len(rd.faces)))
    )
    ok2 = rd.counts() == (14, 24, 12) and rhombic
    bp, _ = run_recipe(load_recipe("16cell-hexagonal-bipyramid"))
    ok3 = bp.counts() == (8, 18, 12) and bp.face_sizes() == [3] * 12
    record(
        9,
        ok1 and ok2 and ok3,
        f"cuboctahedron {cubo.counts()} ~ rectified cube={ok1}; rhombic dodecahedron {rd.counts()} rhombic={rhombic}; bipyramid {bp.counts()}",
    )


def test_criterion_10_tilings():
    t0 = time.perf_counter()
    out = {}
    worst = 0.0
    for name in ("square-tiling", "trihexagonal-tiling", "alternated-cubic-honeycomb"):
        patch, _ = run_recipe(load_recipe(name))
        out[name] = sorted(c.name for c in classify_patch(patch))
        worst = max(worst, patch.coverage_error())
    dt = time.perf_counter() - t0
    ok = out == {
        "square-tiling": ["square"],
        "trihexagonal-tiling": ["hexagon", "triangle"],
        "alternated-cubic-honeycomb": ["octahedron", "tetrahedron"],
    }
    record(10, ok and worst <= 1e-6 and dt < 10, f"classes {out}, worst coverage error {worst:.2e} <= 1e-6, {dt:.3f}s < 10s")


def test_criterion_11_properties():
    rng = np.random.default_rng(2024)
    roots = bn_root_system(4).roots
    polys = {"cube": cube_halfspaces(4), "24-cell": enumerate_facets_bruteforce(generate_vertices("24-cell"))}
    meshes = empty = 0
    euler_ok = True
    for name, hp in polys.items():
        done = 0
        while done < 100:
            idx = rng.choice(len(roots), size=3, replace=False)
            p0 = rng.uniform(-0.9, 0.9, size=4)
            try:
                frame = build_section_frame(roots[idx], p0)
            except DependentRoots:
                continue
            done += 1
            m = section(hp, frame)
            if m.empty:
                empty += 1
                continue
            meshes += 1
            euler_ok &= m.is_closed() and m.euler_characteristic() == 2
    form_ok = order_ok = True
    for _ in range(200):
        n = int(rng.integers(2, 5))
        m = np.ones((n, n))
        for i, j in itertools.combinations(range(n), 2):
            m[i, j] = m[j, i] = rng.choice([2, 3, 4, 5])
        b = gram_form(CoxeterMatrix(m))
        lam, mu = rng.normal(size=(2, n))
        for s in range(n):
            r = simple_reflection(b, s)
            form_ok &= abs((r @ lam) @ b @ (r @ mu) - lam @ b @ mu) <= 1e-9
        for s, t in itertools.combinations(range(n), 2):
            rot = simple_reflection(b, s) @ simple_reflection(b, t)
            w = lam.copy()
            k = int(m[s, t])
            for step in range(1, k + 1):
                w = rot @ w
                if step < k and np.allclose(w, lam, atol=1e-8):
                    order_ok = False
            order_ok &= bool(np.allclose(w, lam, atol=1e-8))
    record(
        11,
        euler_ok and form_ok and order_ok and meshes + empty == 200 and meshes > 150,
        f"Euler 2 on all {meshes} nonempty of 200 random sections (4-cube, 24-cell, {empty} empty); form preservation={form_ok}; pair orders={order_ok} on 200 random Coxeter matrices",
    )

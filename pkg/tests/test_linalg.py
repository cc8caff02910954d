from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from polysect.errors import Degenerate, DependentInput, ZeroRoot
from polysect.linalg import (
    Hyperplane,
    Tolerance,
    affine_rank,
    gram_schmidt,
    hyperplane_from_points,
    matrix_rank,
    nullspace_basis,
    reflect_through_root,
    reflection_matrix,
    round_key,
    same_point_set,
    signed_distance,
    unique_points,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_gram_schmidt_identity_input():
    T = gram_schmidt([(1, 0, 0), (0, 1, 0)])
    assert np.allclose(T, [[1, 0], [0, 1], [0, 0]])


def test_gram_schmidt_worked_roots():
    T = gram_schmidt([(-1, -1, 0, 0), (-1, 0, -1, 0), (-1, 0, 0, 0)])
    s = 1 / math.sqrt(2)
    assert np.allclose(T[:, 0], [-s, -s, 0, 0])
    assert np.allclose(T.T @ T, np.eye(3), atol=1e-12)
    # hand-computed second and third columns
    assert np.allclose(T[:, 1], np.array([-1, 1, -2, 0]) / math.sqrt(6))
    assert np.allclose(T[:, 2], np.array([-1, 1, 1, 0]) / math.sqrt(3))


def test_gram_schmidt_dependent():
    with pytest.raises(DependentInput):
        gram_schmidt([(1, 0), (2, 0)])


@given(arrays(float, (3, 5), elements=finite))
def test_gram_schmidt_orthonormal_same_span(m):
    if np.linalg.matrix_rank(m, tol=1e-6 * max(1, np.abs(m).max())) < 3 or np.linalg.svd(m, compute_uv=False)[-1] < 1e-3:
        return
    T = gram_schmidt(m)
    assert np.allclose(T.T @ T, np.eye(3), atol=1e-9)
    # each input row is reproduced by projection onto the span
    assert np.allclose(T @ (T.T @ m.T), m.T, atol=1e-8)


def test_nullspace_examples():
    assert np.allclose(nullspace_basis([[1, 0]]), [[0, 1]])
    assert np.allclose(nullspace_basis([[0, 0, -2], [0, -2, 0]]), [[1, 0, 0]])
    assert nullspace_basis([[1, 0, 0], [2, 0, 0]]).shape == (2, 3)


@given(arrays(float, (2, 4), elements=finite))
def test_nullspace_annihilates(m):
    null = nullspace_basis(m)
    assert null.shape[0] == 4 - matrix_rank(m)
    if null.size:
        assert np.allclose(m @ null.T, 0, atol=1e-7 * max(1.0, np.abs(m).max()))


def test_hyperplane_from_points_examples():
    h = hyperplane_from_points([(1, 1, 1), (1, 1, -1), (1, -1, 1)])
    assert np.allclose(h.normal, [1, 0, 0]) and math.isclose(h.offset, -1)
    h2 = hyperplane_from_points([(0, 0), (1, 0)])
    assert np.allclose(h2.normal, [0, 1]) and abs(h2.offset) < 1e-12
    with pytest.raises(Degenerate):
        hyperplane_from_points([(0, 0, 0), (1, 0, 0), (2, 0, 0)])


def test_signed_distance_examples():
    h = Hyperplane(np.array([1.0, 0, 0]), -1)
    assert signed_distance(h, (3, 0, 0)) == pytest.approx(2)
    assert signed_distance(h, (1, 5, 7)) == pytest.approx(0)
    assert signed_distance(Hyperplane(np.array([2.0, 0, 0]), -2), (3, 0, 0)) == pytest.approx(2)


def test_hyperplane_rejects_zero_normal():
    with pytest.raises(ZeroRoot):
        Hyperplane(np.zeros(3), 1.0)


def test_hyperplane_key_orientation():
    h = Hyperplane(np.array([0.0, 2.0]), -2.0)
    assert h.key() == Hyperplane(np.array([0.0, 1.0]), -1.0).key()
    assert h.key() != h.flipped().key()
    assert h.flipped().canonical().key() == h.canonical().key()


def test_reflection_examples():
    e1, e2 = np.eye(2)
    assert np.allclose(reflect_through_root(e1, e1), -e1)
    assert np.allclose(reflect_through_root(e1 - e2, e1), e2)
    assert np.allclose(reflect_through_root(e1, e2), e2)
    with pytest.raises(ZeroRoot):
        reflect_through_root([0, 0], e1)


@given(arrays(float, 4, elements=finite), arrays(float, 4, elements=finite))
def test_reflection_is_orthogonal_involution(a, v):
    if np.linalg.norm(a) < 1e-3:
        return
    r = reflection_matrix(a)
    assert np.allclose(r @ r, np.eye(4), atol=1e-9)
    assert np.allclose(r.T @ r, np.eye(4), atol=1e-9)
    assert np.allclose(r @ v, reflect_through_root(a, v), atol=1e-9)


def test_points_helpers():
    pts = np.array([[0, 0], [1e-10, 0], [1, 0], [0, 1]])
    u = unique_points(pts)
    assert len(u) == 3
    assert same_point_set(u, u[::-1])
    assert affine_rank(pts) == 2
    assert affine_rank([[0, 0, 0], [1, 1, 1], [2, 2, 2]]) == 1
    assert round_key([-0.0, 1.23456789]) == (0.0, 1.234568)


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(eps=0)
    t = Tolerance(1e-6, 1e-4)
    assert t.atol(100) == pytest.approx(1e-4)
    assert t.close([1, 2], [1 + 1e-7, 2])

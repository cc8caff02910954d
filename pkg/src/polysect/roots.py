"""Coxeter matrices, the reflection representation and root systems."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import EPS, as_matrix, round_key
from .schlafli import SchlafliSymbol

DEFAULT_CAP = 1000


class CoxeterMatrix:
    """Symmetric matrix ``m_ij`` with ``m_ii = 1`` and ``m_ij >= 2`` (``inf`` allowed)."""

    def __init__(self, entries):
        m = np.array(entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise DomainError("Coxeter matrix must be square and nonempty")
        if not np.array_equal(m, m.T):
            raise DomainError("Coxeter matrix must be symmetric")
        if not np.all(np.diag(m) == 1):
            raise DomainError("Coxeter matrix diagonal must be 1")
        off = m[~np.eye(len(m), dtype=bool)]
        finite = off[np.isfinite(off)]
        if np.any(off < 2) or np.any(finite != np.round(finite)):
            raise DomainError("off-diagonal Coxeter entries must be integers >= 2 or inf")
        self.m = m
        self.m.setflags(write=False)

    @property
    def rank(self) -> int:
        return len(self.m)

    @property
    def has_infinite(self) -> bool:
        return bool(np.any(np.isinf(self.m)))

    def __eq__(self, other):
        return isinstance(other, CoxeterMatrix) and np.array_equal(self.m, other.m)

    def __repr__(self):
        rows = [[("inf" if math.isinf(x) else int(x)) for x in row] for row in self.m]
        return f"CoxeterMatrix({rows})"


def coxeter_from_schlafli(s) -> CoxeterMatrix:
    """Linear Coxeter graph: ``m_{i,i+1} = k_i``, all other pairs commute."""
    s = SchlafliSymbol.parse(s)
    n = len(s.entries) + 1
    m = np.full((n, n), 2.0)
    np.fill_diagonal(m, 1.0)
    for i, k in enumerate(s.entries):
        m[i, i + 1] = m[i + 1, i] = k
    return CoxeterMatrix(m)


def gram_form(m: CoxeterMatrix) -> np.ndarray:
    """``B_ij = -cos(pi / m_ij)``, with ``-1`` for infinite entries."""
    with np.errstate(divide="ignore"):
        b = -np.cos(np.pi / m.m)
    b[np.isinf(m.m)] = -1.0
    b[np.abs(b) < 1e-15] = 0.0
    return b


def simple_reflection(b: np.ndarray, s: int) -> np.ndarray:
    """Matrix of ``lam -> lam - 2 B(alpha_s, lam) alpha_s`` in the alpha basis."""
    n = len(b)
    r = np.eye(n)
    r[s, :] -= 2.0 * b[s, :]
    return r


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Roots as rows of ``roots``; inner products are taken with ``form``.

    Roots are sorted lexicographically (ascending) by rounded coordinates.

    For systems built by :func:`orbit_roots` the coordinates are
    coefficients on the simple roots and ``form`` is the Gram form; for
    explicit systems such as :func:`bn_root_system` the coordinates are
    Euclidean and ``form`` is the identity.
    """

    dim: int
    roots: np.ndarray
    simple: np.ndarray
    positive: tuple[int, ...]
    form: np.ndarray

    def __len__(self):
        return len(self.roots)

    def inner(self, a, b):
        return np.asarray(a) @ self.form @ np.asarray(b).T

    @property
    def positive_roots(self) -> np.ndarray:
        return self.roots[list(self.positive)]

    def simple_coefficients(self) -> np.ndarray:
        """Coefficients of every root on the simple roots (rows)."""
        coeffs, *_ = np.linalg.lstsq(self.simple.T, self.roots.T, rcond=None)
        return coeffs.T


@dataclass(frozen=True)
class InfiniteType:
    """Orbit closure stopped after ``cap`` roots; the group is not finite."""

    cap: int


def _lex_positive(v, eps=1e-9):
    nz = np.flatnonzero(np.abs(v) > eps)
    return bool(nz.size) and v[nz[0]] > 0


def _sorted_system(dim, roots, simple, form) -> RootSystem:
    keys = [round_key(r) for r in roots]
    order = sorted(range(len(roots)), key=lambda i: keys[i])
    roots = np.asarray(roots, dtype=float)[order] + 0.0
    positive = tuple(i for i, r in enumerate(roots) if _lex_positive(r))
    return RootSystem(dim, roots, np.asarray(simple, dtype=float), positive, np.asarray(form, dtype=float))


def orbit_roots(m: CoxeterMatrix, cap: int = DEFAULT_CAP):
    """Close the simple roots under all simple reflections.

    Works in the basis of simple roots with the Gram form as inner product.
    Returns :class:`InfiniteType` once more than ``cap`` roots appear.
    """
    n = m.rank
    if cap < 2 * n:
        raise DomainError(f"cap must be at least {2 * n}")
    b = gram_form(m)
    refl = [simple_reflection(b, s) for s in range(n)]
    start = np.eye(n)
    seen = {round_key(v): v for v in start}
    queue = deque(start)
    while queue:
        v = queue.popleft()
        for r in refl:
            w = r @ v
            key = round_key(w)
            if key not in seen:
                seen[key] = w
                if len(seen) > cap:
                    return InfiniteType(cap)
                queue.append(w)
    return _sorted_system(n, list(seen.values()), np.eye(n), b)


def root_closure(simple, cap: int = DEFAULT_CAP):
    """Euclidean root system generated by reflecting explicit simple roots."""
    simple = as_matrix(simple)
    mats = [np.eye(simple.shape[1]) - 2.0 * np.outer(a, a) / (a @ a) for a in simple]
    seen = {round_key(v): v for v in simple}
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for r in mats:
            w = r @ v
            key = round_key(w)
            if key not in seen:
                seen[key] = w
                if len(seen) > cap:
                    return InfiniteType(cap)
                queue.append(w)
    return _sorted_system(simple.shape[1], list(seen.values()), simple, np.eye(simple.shape[1]))


def bn_root_system(n: int) -> RootSystem:
    """``{+-e_i} U {+-e_i +- e_j}`` with simple roots ``e_i - e_{i+1}`` and ``e_n``."""
    if n < 2:
        raise DomainError("B_n needs n >= 2")
    eye = np.eye(n)
    roots = [s * eye[i] for i in range(n) for s in (1, -1)]
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    roots.append(si * eye[i] + sj * eye[j])
    simple = [eye[i] - eye[i + 1] for i in range(n - 1)] + [eye[n - 1]]
    return _sorted_system(n, roots, simple, np.eye(n))


def bn_coxeter_matrix(n: int) -> CoxeterMatrix:
    """Coxeter matrix ordered like the simple roots of :func:`bn_root_system`."""
    return coxeter_from_schlafli(SchlafliSymbol((3,) * (n - 2) + (4,)))


def _roots_and_form(rs):
    if isinstance(rs, RootSystem):
        return rs.roots, rs.form
    roots = as_matrix(rs)
    return roots, np.eye(roots.shape[1])


def is_crystallographic(rs, eps: float = EPS):
    """``(True, None)`` if every ``2(a,b)/(b,b)`` is an integer, else ``(False, (a, b))``."""
    roots, form = _roots_and_form(rs)
    gram = roots @ form @ roots.T
    norms = np.diag(gram)
    if np.any(norms <= eps):
        raise DomainError("roots must be nonzero")
    q = 2.0 * gram / norms[None, :]
    bad = np.abs(q - np.round(q)) > eps * max(1.0, float(np.max(np.abs(q))))
    if not np.any(bad):
        return True, None
    i, j = map(int, np.argwhere(bad)[0])
    return False, (roots[i].copy(), roots[j].copy())


def coroots(rs) -> np.ndarray:
    """``2 a / (a, a)`` for every root."""
    roots, form = _roots_and_form(rs)
    norms = np.einsum("ij,jk,ik->i", roots, form, roots)
    if np.any(norms <= EPS):
        raise DomainError("roots must be nonzero")
    return 2.0 * roots / norms[:, None]


def pairwise_angle_multiset(rs, decimals: int = 6) -> list[float]:
    """Sorted angles between all unordered pairs of distinct roots."""
    roots, form = _roots_and_form(rs)
    gram = roots @ form @ roots.T
    norms = np.sqrt(np.diag(gram))
    cos = gram / np.outer(norms, norms)
    iu = np.triu_indices(len(roots), 1)
    ang = np.arccos(np.clip(cos[iu], -1.0, 1.0))
    return sorted(np.round(ang, decimals).tolist())


def reflection_set(vectors, form=None, decimals: int = 6) -> set:
    """Distinct reflection matrices (as rounded keys) defined by ``vectors``."""
    vectors = as_matrix(vectors)
    form = np.eye(vectors.shape[1]) if form is None else form
    out = set()
    for a in vectors:
        r = np.eye(len(a)) - 2.0 * np.outer(a, a @ form) / (a @ form @ a)
        out.add(round_key(r.ravel(), decimals))
    return out

"""Schläfli symbols and their trigonometric classification.

A symbol ``{k_1, ..., k_{n-1}}`` of rank ``n`` is elliptic (a finite
polytope), Euclidean (a tessellation of flat space) or hyperbolic.  The
classification solves the half-angle recurrence

    cos(pi/k_r) = sin(theta_r) cos(theta_{r-1}),   theta_{n-1} = pi/k_n

backwards for ``theta_1`` and compares ``theta_1 + pi/k_1`` against a right
angle.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DomainError,
    FacetNotElliptic,
    NotElliptic,
    NotQuasiRegular,
    NumericalDomain,
    RankTooLow,
)

ANGLE_EPS = 1e-9
INFINITE = math.inf
POLYGON_CAP = 12
MAX_ENUM_DIM = 9


class GeometryClass(enum.Enum):
    ELLIPTIC = "elliptic"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"

    def __str__(self):
        return self.value


@dataclass(frozen=True, order=True)
class SchlafliSymbol:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(k) for k in self.entries)
        if not entries:
            raise DomainError("Schläfli symbol needs at least one entry")
        if any(k < 3 for k in entries):
            raise DomainError(f"every Schläfli entry must be >= 3, got {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text) -> "SchlafliSymbol":
        """Accepts ``4,3,4``, ``{4,3,4}``, ``4 3 4`` or the compact ``434``."""
        if isinstance(text, SchlafliSymbol):
            return text
        if not isinstance(text, str):
            return cls(tuple(text))
        body = text.strip().strip("{}").strip()
        parts = [p for p in re.split(r"[,\s]+", body) if p]
        if len(parts) == 1 and len(parts[0]) > 1 and parts[0].isdigit():
            parts = list(parts[0])
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError:
            raise DomainError(f"cannot parse Schläfli symbol {text!r}") from None

    @property
    def rank(self) -> int:
        return len(self.entries) + 1

    def dual(self) -> "SchlafliSymbol":
        return SchlafliSymbol(self.entries[::-1])

    def facet(self) -> "SchlafliSymbol":
        if len(self.entries) < 2:
            raise RankTooLow("a polygon has no polygonal facet symbol")
        return SchlafliSymbol(self.entries[:-1])

    def vertex_figure(self) -> "SchlafliSymbol":
        if len(self.entries) < 2:
            raise RankTooLow("a polygon has no polygonal vertex-figure symbol")
        return SchlafliSymbol(self.entries[1:])

    def compact(self) -> str:
        return "".join(map(str, self.entries)) if all(k < 10 for k in self.entries) else str(self)

    def __str__(self):
        return "{" + ",".join(map(str, self.entries)) + "}"


def symbol_algebra(s):
    """``(dual, facet, vertex_figure)``; the latter two are ``None`` for polygons."""
    s = SchlafliSymbol.parse(s)
    if len(s.entries) < 2:
        return s.dual(), None, None
    return s.dual(), s.facet(), s.vertex_figure()


@dataclass(frozen=True)
class ConfigurationalNumbers:
    """Face counts ``N_0..N_{n-1}`` and, optionally, incidences ``N_pq``.

    ``incidence[(p, q)]`` is the number of ``p``-faces incident to each
    ``q``-face.  Counts may be ``INFINITE`` for tessellations.
    """

    counts: tuple
    incidence: dict = field(default_factory=dict, compare=False)

    @property
    def finite(self) -> bool:
        return all(c != INFINITE for c in self.counts)

    def euler_characteristic(self):
        if not self.finite:
            return None
        return sum((-1) ** r * c for r, c in enumerate(self.counts))

    def check_incidence_identity(self) -> bool:
        """``N_pq N_q == N_qp N_p`` for every pair where all four are finite."""
        for (p, q), npq in self.incidence.items():
            nqp = self.incidence.get((q, p))
            if nqp is None:
                continue
            values = (npq, nqp, self.counts[p], self.counts[q])
            if any(v == INFINITE for v in values):
                continue
            if npq * self.counts[q] != nqp * self.counts[p]:
                return False
        return True


def polyhedron_counts(n: int, p: int):
    """Geometry class and vertex/edge/face counts of ``{n, p}``.

    With ``d = 2(n+p) - np`` and ``lambda = 2/d`` the counts are
    ``(2 n lambda, n p lambda, 2 p lambda)`` when ``d > 0``.
    """
    if n < 3 or p < 3:
        raise DomainError(f"{{{n},{p}}}: both entries must be >= 3")
    d = 2 * (n + p) - n * p
    incidence = {(0, 2): n, (1, 2): n, (1, 0): p, (2, 0): p, (0, 1): 2, (2, 1): 2}
    if d > 0:
        lam = Fraction(2, d)
        counts = tuple(int(x) for x in (2 * n * lam, n * p * lam, 2 * p * lam))
        return GeometryClass.ELLIPTIC, ConfigurationalNumbers(counts, incidence)
    cls = GeometryClass.EUCLIDEAN if d == 0 else GeometryClass.HYPERBOLIC
    return cls, ConfigurationalNumbers((INFINITE,) * 3, incidence)


def dihedral_angle(p: int, q: int) -> float:
    """Full dihedral angle of the polyhedron ``{p, q}`` in radians."""
    if p < 3 or q < 3:
        raise DomainError(f"{{{p},{q}}}: both entries must be >= 3")
    arg = math.cos(math.pi / q) / math.sin(math.pi / p)
    if arg >= 1.0 - ANGLE_EPS:
        raise NotElliptic(f"{{{p},{q}}} is not a finite polyhedron (sin(theta_2) = {arg:.6f})")
    return 2.0 * math.asin(arg)


@dataclass(frozen=True)
class AngleProfile:
    symbol: SchlafliSymbol
    thetas: tuple[float, ...]
    geometry: GeometryClass
    defect: float  # theta_1 + pi/k_1 - pi/2


def _acos_checked(x: float, what: str) -> float:
    if x > 1.0 + ANGLE_EPS or x < -1.0 - ANGLE_EPS:
        raise NumericalDomain(f"{what}: cosine {x:.12g} outside [-1, 1]")
    return math.acos(min(1.0, max(-1.0, x)))


def _classify_defect(defect: float) -> GeometryClass:
    if abs(defect) < ANGLE_EPS:
        return GeometryClass.EUCLIDEAN
    return GeometryClass.ELLIPTIC if defect > 0 else GeometryClass.HYPERBOLIC


@lru_cache(maxsize=None)
def _profile(entries: tuple[int, ...]) -> AngleProfile:
    s = SchlafliSymbol(entries)
    if len(entries) >= 3:
        for part in (s.facet(), s.vertex_figure()):
            if _profile(part.entries).geometry is not GeometryClass.ELLIPTIC:
                raise FacetNotElliptic(f"{s}: facet/vertex figure {part} is not elliptic")
    k = entries
    last = len(k) - 1  # theta index of pi/k_last
    thetas = [0.0] * (last + 1)  # 1-based; slot 0 unused
    thetas[last] = math.pi / k[last]
    for r in range(last, 1, -1):
        sin_r = math.sin(thetas[r])
        thetas[r - 1] = _acos_checked(math.cos(math.pi / k[r - 1]) / sin_r, f"{s} theta_{r - 1}")
    defect = thetas[1] + math.pi / k[0] - math.pi / 2
    return AngleProfile(s, tuple(thetas[1:]), _classify_defect(defect), defect)


def angle_profile(s) -> AngleProfile:
    """Half-angles ``theta_1..theta_{n-1}`` and the geometry class of ``s``.

    Requires rank >= 3.  For rank >= 4 the facet and vertex-figure symbols
    must themselves be elliptic (checked recursively).
    """
    s = SchlafliSymbol.parse(s)
    if len(s.entries) < 2:
        raise RankTooLow(f"{s}: angle profile needs rank >= 3")
    return _profile(s.entries)


def classify(s) -> GeometryClass:
    s = SchlafliSymbol.parse(s)
    if len(s.entries) == 1:
        return GeometryClass.ELLIPTIC
    return angle_profile(s).geometry


def four_entry_criterion(s) -> float:
    """Closed-form test for ``{k_1,k_2,k_3,k_4}`` with ``theta_1`` at its flat value.

    Returns ``cos^2(pi/k_2)/sin^2(pi/k_1) + cos^2(pi/k_3)/sin^2(pi/k_4)``;
    the symbol is elliptic when this is below 1, Euclidean at 1 and
    hyperbolic above.
    """
    s = SchlafliSymbol.parse(s)
    if len(s.entries) != 4:
        raise DomainError("criterion applies to four-entry symbols only")
    k1, k2, k3, k4 = s.entries
    c = math.cos
    sn = math.sin
    pi = math.pi
    return c(pi / k2) ** 2 / sn(pi / k1) ** 2 + c(pi / k3) ** 2 / sn(pi / k4) ** 2


@dataclass(frozen=True)
class Enumeration:
    dim: int
    symbols: tuple  # of (SchlafliSymbol, GeometryClass)
    truncated: bool  # True when an infinite family was cut at POLYGON_CAP

    def of_class(self, cls: GeometryClass) -> list[SchlafliSymbol]:
        return [s for s, c in self.symbols if c is cls]


@lru_cache(maxsize=None)
def enumerate_regular(dim: int) -> Enumeration:
    """Regular symbols ``{k_1..k_dim}`` describing ``dim``-dimensional objects.

    ``dim=2`` is the polygon family (cut at ``k <= 12``).  Higher dimensions
    glue an elliptic facet symbol to an elliptic vertex-figure symbol that
    overlaps it in all but one entry, then classify the result.
    """
    if not 2 <= dim <= MAX_ENUM_DIM:
        raise DomainError(f"enumeration dimension must be in 2..{MAX_ENUM_DIM}")
    if dim == 2:
        polys = tuple((SchlafliSymbol((k,)), GeometryClass.ELLIPTIC) for k in range(3, POLYGON_CAP + 1))
        return Enumeration(2, polys, True)
    lower = enumerate_regular(dim - 1)
    elliptic = lower.of_class(GeometryClass.ELLIPTIC)
    candidates = sorted(
        {SchlafliSymbol(a.entries + b.entries[-1:]) for a in elliptic for b in elliptic if a.entries[1:] == b.entries[:-1]}
    )
    out = []
    for s in candidates:
        out.append((s, classify(s)))
    # only the polygon family is infinite; it feeds hyperbolic {p,q} at dim 3
    return Enumeration(dim, tuple(out), dim == 3)


QUASIREGULAR_PAIRS = frozenset({(3, 3), (3, 4), (4, 3), (3, 5), (5, 3), (3, 6), (6, 3)})


def quasiregular_counts(p: int, q: int):
    """Counts of the intersection of the dual pair ``{p,q}`` and ``{q,p}``.

    Vertices are the ``N_1`` edge midpoints, there are ``2 N_1`` edges and
    ``N_0 + N_2`` faces.  ``(3, 6)`` is the trihexagonal tiling.
    """
    if (p, q) not in QUASIREGULAR_PAIRS:
        raise NotQuasiRegular(f"({p},{q}) has no quasi-regular intersection")
    cls, base = polyhedron_counts(p, q)
    if cls is not GeometryClass.ELLIPTIC:
        return cls, ConfigurationalNumbers((INFINITE,) * 3)
    n0, n1, n2 = base.counts
    return cls, ConfigurationalNumbers((n1, 2 * n1, n0 + n2))


_TRACE_ORDER = {2: 1, -2: 2, 1: 6, -1: 3, 0: 4}


def rotation_order_from_trace(t: int):
    """Order of a lattice-preserving plane rotation with integer trace ``t``.

    ``None`` when ``t^2 - 4 > 0`` (no such rotation).
    """
    return _TRACE_ORDER.get(int(t))

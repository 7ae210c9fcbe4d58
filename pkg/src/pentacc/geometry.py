"""Planar five-body geometry for equilateral cyclic pentagons.

Conventions used throughout the package:

- Bodies are labeled 1..5.  Normalized configurations place q1 = (-1/2, 0)
  and q2 = (1/2, 0), so the first cycle edge has unit length.
- The cycle edges are (1,2), (2,3), (3,4), (4,5), (5,1); the remaining five
  pairs are the diagonals.  The six distance classes of an equilateral cyclic
  pentagon are ordered (r12, r13, r14, r24, r25, r35).
- Oriented areas Delta(i,j,k) = (q_i - q_j) x (q_i - q_k), antisymmetric in
  the last two labels and invariant under cyclic rotation of (i,j,k).
- The one-parameter symmetric family (mirror symmetry through the y-axis)
  is parameterized by the apex height y4 with two branches, "A" and "B",
  for the two sign choices in the closed-form solution of the unit-edge
  constraints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

__all__ = [
    "CollisionError",
    "OutOfDomainError",
    "PlanarConfiguration",
    "DistanceVector",
    "DistanceTable",
    "SymmetricShape",
    "ChainAngles",
    "SignType",
    "BRANCHES",
    "Y4_MAX",
    "CYCLE_EDGES",
    "DIAGONALS",
    "CLASS_NAMES",
    "PAIR_CLASS",
    "oriented_area",
    "mutual_distances",
    "cayley_menger",
    "branch_position",
    "branch_radicand",
    "symmetric_coords",
    "cyclic_from_angles",
    "interior_angle",
    "convex_position",
    "interior_points",
    "classify_sign_type",
    "regular_pentagon_y4",
    "square_endpoint_y4",
    "collinear_endpoint_y4",
    "house_y4",
]


class CollisionError(ValueError):
    """Two bodies coincide, so a mutual distance vanishes."""


class OutOfDomainError(ValueError):
    """A parameter lies outside the geometric domain it must belong to."""


BRANCHES = ("A", "B")

# Distance classes in the fixed coordinate order.
CLASS_NAMES = ("r12", "r13", "r14", "r24", "r25", "r35")
CYCLE_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5))
DIAGONALS = ((1, 3), (1, 4), (2, 4), (2, 5), (3, 5))
PAIR_CLASS = {
    (1, 2): 0, (2, 3): 0, (3, 4): 0, (4, 5): 0, (1, 5): 0,
    (1, 3): 1, (1, 4): 2, (2, 4): 3, (2, 5): 4, (3, 5): 5,
}

# Landmark apex heights of the symmetric family (branch A unless noted).
def square_endpoint_y4() -> float:
    """Apex height where bodies 1, 2, 3, 5 form a unit square (r35 = 1)."""
    return (2.0 - math.sqrt(3.0)) / 2.0


def collinear_endpoint_y4() -> float:
    """Apex height where bodies 1, 4, 3 are collinear (Delta134 = 0)."""
    return math.sqrt(5.0 - 2.0 * math.sqrt(5.0)) / 2.0


def regular_pentagon_y4() -> float:
    """Apex height of the regular pentagon (convex 12345 order)."""
    return math.sqrt(5.0 + 2.0 * math.sqrt(5.0)) / 2.0


def house_y4() -> float:
    """Apex height of the unit square with a unit-edge gable (r35 = 1)."""
    return 1.0 + math.sqrt(3.0) / 2.0


Y4_MAX = math.sqrt(15.0) / 2.0


def _sqrt(x):
    """Square root that dispatches on interval/dual operands."""
    if hasattr(x, "sqrt"):
        return x.sqrt()
    return np.sqrt(x)


def branch_radicand(y4):
    """Radicand of the symmetric-family closed form, nonnegative on [0, Y4_MAX]."""
    y2 = y4 * y4
    return (-16.0 * y2 + 56.0) * y2 + 15.0


def branch_position(y4, branch: str):
    """Closed-form (x3, y3) of the symmetric family at apex height y4.

    Works for floats, numpy arrays, intervals, and dual numbers.  Branch "A"
    takes the positive square-root sign, branch "B" the negative one; the two
    sign choices must match between x3 and y3.  The branch B differences are
    evaluated through their conjugates, so the sign of x3 and y3 stays sharp
    near the collision heights where they vanish.
    """
    if branch not in BRANCHES:
        raise ValueError(f"unknown branch {branch!r}")
    rad = branch_radicand(y4)
    if not hasattr(rad, "sqrt"):
        # roundoff at the domain endpoint can push the radicand barely negative
        rad = np.where(rad > -1e-9, np.maximum(rad, 0.0), rad)
    s = _sqrt(rad)
    u = y4 * y4
    den = 4.0 * (4.0 * u + 1.0)
    if branch == "A":
        y3 = (8.0 * u * y4 + 2.0 * y4 + s) / den
        x3 = (4.0 * u + 1.0 + 2.0 * y4 * s) / den
        return x3, y3
    # (4u+1)^2 - 4u*rad and (8y^3+2y)^2 - rad, expanded
    x3_num = ((64.0 * u - 208.0) * u - 52.0) * u + 1.0
    y3_num = ((64.0 * u + 48.0) * u - 52.0) * u - 15.0
    x3 = x3_num / (den * (4.0 * u + 1.0 + 2.0 * y4 * s))
    y3 = y3_num / (den * (8.0 * u * y4 + 2.0 * y4 + s))
    return x3, y3


@dataclass(frozen=True)
class PlanarConfiguration:
    """Five labeled points in the plane.

    ``points`` is a (5, 2) array; row i holds body i+1.  Use ``normalized``
    to build a configuration with q1 = (-1/2, 0) and q2 = (1/2, 0).
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (5, 2):
            raise ValueError(f"expected five planar points, got shape {pts.shape}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def normalized(cls, points: Iterable) -> "PlanarConfiguration":
        """Apply the similarity transform sending q1, q2 to (-1/2, 0), (1/2, 0)."""
        pts = np.asarray(points, dtype=float)
        if pts.shape != (5, 2):
            raise ValueError(f"expected five planar points, got shape {pts.shape}")
        d = pts[1] - pts[0]
        scale = math.hypot(d[0], d[1])
        if scale < 1e-14:
            raise CollisionError("bodies 1 and 2 coincide; cannot normalize")
        c, s = d[0] / scale, d[1] / scale
        rot = np.array([[c, s], [-s, c]])
        out = (pts - pts[0]) @ rot.T / scale
        out = out + np.array([-0.5, 0.0])
        return cls(out)

    def q(self, label: int) -> np.ndarray:
        if label < 1 or label > 5:
            raise ValueError(f"label must be 1..5, got {label}")
        return self.points[label - 1]

    def permuted(self, shift: int) -> "PlanarConfiguration":
        """Relabel by the cyclic shift i -> i + shift (mod 5)."""
        idx = [(i + shift) % 5 for i in range(5)]
        return PlanarConfiguration(self.points[idx])

    def reflected(self) -> "PlanarConfiguration":
        """Mirror through the x-axis; flips every oriented area."""
        return PlanarConfiguration(self.points * np.array([1.0, -1.0]))


@dataclass(frozen=True)
class DistanceVector:
    """The six distance classes of an equilateral cyclic pentagon.

    Order matches the fixed class convention (r12, r13, r14, r24, r25, r35).
    """

    r12: float
    r13: float
    r14: float
    r24: float
    r25: float
    r35: float

    def __post_init__(self):
        for name in CLASS_NAMES:
            if not getattr(self, name) > 0.0:
                raise ValueError(f"distance class {name} must be positive")

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in CLASS_NAMES])

    def full_table(self) -> np.ndarray:
        """Expand the classes into the symmetric 5x5 distance table."""
        t = np.zeros((5, 5))
        vals = self.as_array()
        for (i, j), c in PAIR_CLASS.items():
            t[i - 1, j - 1] = t[j - 1, i - 1] = vals[c]
        return t


@dataclass(frozen=True)
class DistanceTable:
    """All ten mutual distances, plus the class projection when it exists."""

    table: np.ndarray
    classes: DistanceVector | None
    is_equilateral: bool

    def distance(self, i: int, j: int) -> float:
        return float(self.table[i - 1, j - 1])


def oriented_area(config: PlanarConfiguration, i: int, j: int, k: int) -> float:
    """Oriented area Delta(i,j,k) = (q_i - q_j) x (q_i - q_k)."""
    if len({i, j, k}) != 3:
        raise ValueError(f"labels must be distinct, got ({i}, {j}, {k})")
    u = config.q(i) - config.q(j)
    v = config.q(i) - config.q(k)
    return float(u[0] * v[1] - u[1] * v[0])


def mutual_distances(config: PlanarConfiguration, tol: float = 1e-9) -> DistanceTable:
    """Full 10-distance table and, for equilateral cyclic inputs, the 6 classes.

    Raises CollisionError if two bodies coincide.  Non-equilateral inputs are
    flagged via ``is_equilateral`` and get ``classes = None``.
    """
    pts = config.points
    diff = pts[:, None, :] - pts[None, :, :]
    table = np.sqrt((diff ** 2).sum(axis=2))
    iu = np.triu_indices(5, k=1)
    if np.any(table[iu] < 1e-12):
        bad = [(int(i) + 1, int(j) + 1) for i, j in zip(*iu) if table[i, j] < 1e-12]
        raise CollisionError(f"coincident bodies: {bad}")
    edges = [table[i - 1, j - 1] for i, j in CYCLE_EDGES]
    scale = edges[0]
    equilateral = all(abs(e - scale) <= tol * max(1.0, scale) for e in edges)
    classes = None
    if equilateral:
        classes = DistanceVector(
            r12=scale,
            r13=float(table[0, 2]),
            r14=float(table[0, 3]),
            r24=float(table[1, 3]),
            r25=float(table[1, 4]),
            r35=float(table[2, 4]),
        )
    return DistanceTable(table=table, classes=classes, is_equilateral=equilateral)


_CM_ROWS = 5


def cayley_menger(distances) -> float:
    """Cayley-Menger determinant of four points from their six distances.

    ``distances`` is ordered (d12, d13, d14, d23, d24, d34) for points
    labeled 1..4.  Planar quadruples give 0; the unit regular tetrahedron
    gives 4.
    """
    d12, d13, d14, d23, d24, d34 = (float(d) for d in distances)
    for d in (d12, d13, d14, d23, d24, d34):
        if not d > 0.0:
            raise ValueError("distances must be positive")
    m = np.array([
        [0.0, 1.0, 1.0, 1.0, 1.0],
        [1.0, 0.0, d12 ** 2, d13 ** 2, d14 ** 2],
        [1.0, d12 ** 2, 0.0, d23 ** 2, d24 ** 2],
        [1.0, d13 ** 2, d23 ** 2, 0.0, d34 ** 2],
        [1.0, d14 ** 2, d24 ** 2, d34 ** 2, 0.0],
    ])
    return float(np.linalg.det(m))


def cayley_menger_all_subsets(config: PlanarConfiguration) -> dict:
    """Cayley-Menger values for the five 4-point subconfigurations."""
    t = mutual_distances(config).table
    out = {}
    for sub in combinations(range(1, 6), 4):
        a, b, c, d = sub
        ds = (t[a - 1, b - 1], t[a - 1, c - 1], t[a - 1, d - 1],
              t[b - 1, c - 1], t[b - 1, d - 1], t[c - 1, d - 1])
        out[sub] = cayley_menger(ds)
    return out


@dataclass(frozen=True)
class SymmetricShape:
    """Point on the symmetric equilateral family: apex height plus branch."""

    y4: float
    branch: str

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise ValueError(f"branch must be one of {BRANCHES}, got {self.branch!r}")
        if self.y4 < 0.0:
            raise OutOfDomainError(f"y4 must be nonnegative, got {self.y4}")
        if branch_radicand(self.y4) < 0.0:
            raise OutOfDomainError(
                f"y4 = {self.y4} exceeds the family domain [0, {Y4_MAX:.6f}]")


def symmetric_coords(shape: SymmetricShape) -> PlanarConfiguration:
    """Realize a symmetric shape as a normalized configuration.

    q3 = (x3, y3), q4 = (0, y4), q5 = (-x3, y3) with the matched-sign closed
    forms; the output satisfies both unit-edge constraint polynomials to
    1e-12.
    """
    x3, y3 = branch_position(shape.y4, shape.branch)
    pts = np.array([
        [-0.5, 0.0],
        [0.5, 0.0],
        [x3, y3],
        [0.0, shape.y4],
        [-x3, y3],
    ])
    return PlanarConfiguration(pts)


@dataclass(frozen=True)
class ChainAngles:
    """Two-angle parameterization of unit-edge cyclic pentagons.

    ``theta12`` is the angle at vertex 2 between edges (1,2) and (2,3),
    ``theta23`` the angle at vertex 3 between edges (2,3) and (3,4), both
    measured clockwise from the incoming edge, in (0, 2*pi).  ``closure``
    picks one of the two circle intersections placing q5.
    """

    theta12: float
    theta23: float
    closure: str = "plus"

    def __post_init__(self):
        for name in ("theta12", "theta23"):
            v = getattr(self, name)
            if not 0.0 < v < 2.0 * math.pi:
                raise ValueError(f"{name} must lie in (0, 2*pi), got {v}")
        if self.closure not in ("plus", "minus"):
            raise ValueError(f"closure must be 'plus' or 'minus', got {self.closure!r}")


def cyclic_from_angles(angles: ChainAngles) -> PlanarConfiguration:
    """Build the unit-edge cyclic pentagon with the given chain angles.

    Raises OutOfDomainError when the chain cannot be closed with two more
    unit edges (|q4 - q1| > 2).  With theta12 = theta23 = 3*pi/5 the "plus"
    closure gives the regular pentagon; pi/5 gives the regular star.
    """
    q1 = np.array([-0.5, 0.0])
    q2 = np.array([0.5, 0.0])
    d23 = math.pi - angles.theta12
    q3 = q2 + np.array([math.cos(d23), math.sin(d23)])
    d34 = d23 + math.pi - angles.theta23
    q4 = q3 + np.array([math.cos(d34), math.sin(d34)])
    gap = q1 - q4
    dist = math.hypot(gap[0], gap[1])
    if dist > 2.0:
        raise OutOfDomainError(
            f"chain endpoints too far apart to close (|q4 - q1| = {dist:.6f} > 2)")
    if dist < 1e-12:
        raise OutOfDomainError("q4 coincides with q1; closure is degenerate")
    mid = 0.5 * (q4 + q1)
    h_sq = 1.0 - (dist / 2.0) ** 2
    h = math.sqrt(max(h_sq, 0.0))
    perp = np.array([gap[1], -gap[0]]) / dist
    q5 = mid + (h if angles.closure == "plus" else -h) * perp
    return PlanarConfiguration(np.array([q1, q2, q3, q4, q5]))


def interior_angle(config: PlanarConfiguration, i: int, j: int, k: int) -> float:
    """Chain angle at vertex j from edge (i,j) to edge (j,k), in [0, 2*pi).

    Measured with the same clockwise convention cyclic_from_angles uses, so
    reconstructing a configuration from its own angles is the identity.
    """
    u = config.q(i) - config.q(j)
    v = config.q(k) - config.q(j)
    a = math.atan2(u[1], u[0]) - math.atan2(v[1], v[0])
    return a % (2.0 * math.pi)


def _hull_indices(pts: np.ndarray) -> list:
    """Indices of the convex hull (counterclockwise), Andrew's monotone chain."""
    order = sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))

    def cross(o, a, b):
        return ((pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1])
                - (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0]))

    lower: list = []
    for i in order:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 1e-14:
            lower.pop()
        lower.append(i)
    upper: list = []
    for i in reversed(order):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 1e-14:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def convex_position(config: PlanarConfiguration) -> bool:
    """True when all five bodies are vertices of their convex hull."""
    return len(_hull_indices(config.points)) == 5


def interior_points(config: PlanarConfiguration) -> list:
    """Labels of bodies strictly inside the hull of the others."""
    hull = set(_hull_indices(config.points))
    return [i + 1 for i in range(5) if i not in hull]


@dataclass(frozen=True)
class SignType:
    """Sign-type classification of a symmetric shape.

    ``label`` is one of A1..A5, B1..B5, or "boundary"; boundary cases carry a
    description naming the vanishing quantity.
    """

    label: str
    boundary: str | None = None

    @property
    def is_boundary(self) -> bool:
        return self.label == "boundary"


_SIGN_EPS = 1e-10


def classify_sign_type(shape: SymmetricShape, eps: float = _SIGN_EPS) -> SignType:
    """Classify a symmetric shape into its sign type or a named boundary.

    Branch A types are separated by r35 = 1 (twice), Delta134 = 0, and
    Delta345 = 0 (where also r14 = 1); branch B types by the two q3 = q5
    collisions, the q1 = q3 collision, and Delta134 = 0.
    """
    x3, y3 = branch_position(shape.y4, shape.branch)
    y4 = shape.y4
    d123 = y3
    d134 = x3 * y4 + (y4 - y3) / 2.0
    d135 = 2.0 * y3 * x3
    d345 = 2.0 * x3 * (y4 - y3)
    r13 = math.hypot(x3 + 0.5, y3)
    r35 = abs(2.0 * x3)

    if shape.branch == "A":
        if abs(r35 - 1.0) <= eps:
            side = "A1/A2" if d345 < 0 else "A4/A5"
            return SignType("boundary", f"r35 = 1 ({side})")
        if abs(d134) <= eps:
            return SignType("boundary", "Delta134 = 0 (A2/A3)")
        if abs(d345) <= eps:
            return SignType("boundary", "Delta345 = 0, r14 = 1 (A3/A4)")
        if d134 < 0.0:
            return SignType("A1" if r35 < 1.0 else "A2")
        if d345 < 0.0:
            return SignType("A3")
        return SignType("A4" if r35 > 1.0 else "A5")

    if r35 <= eps:
        return SignType("boundary", "collision q3 = q5")
    if r13 <= eps:
        return SignType("boundary", "collision q1 = q3")
    if abs(d134) <= eps:
        return SignType("boundary", "Delta134 = 0 (B3/B4)")
    if d123 < 0.0:
        return SignType("B1" if d135 < 0.0 else "B2")
    if d134 < 0.0:
        return SignType("B3")
    return SignType("B5" if d135 > 0.0 else "B4")

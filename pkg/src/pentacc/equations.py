"""Central-configuration equation systems for homogeneous potentials.

Residual conventions, for exponent A >= 2 and R(i,j) = r(i,j)**(-A):

- Wedge-product equations, one per unordered pair (i,j):
      L(i,j) = sum over k of m_k (R(i,k) - R(j,k)) Delta(i,j,k)
  linear in the masses.  For an equilateral cyclic pentagon normalized to
  unit edges the five diagonal-pair equations involve only two masses each.

- Mutual-distance equations, one per ordered pair:
      f(i,j) = sum over k != i of m_k (r(i,k)**(-A) - lt) A(i,j,k)
  with A(i,j,k) = r(j,k)^2 - r(i,k)^2 - r(i,j)^2 and lt the normalized
  multiplier.  g(i,j) = f(i,j) + f(j,i) gives the symmetric variant.

The mass-coefficient matrix of the mirror-symmetric family and its kernel
recover admissible masses; feasibility of the two-mass equations drives the
region classification of general equilateral pentagons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .geometry import (
    ChainAngles,
    CollisionError,
    DIAGONALS,
    PlanarConfiguration,
    SymmetricShape,
    branch_position,
    cyclic_from_angles,
    interior_angle,
    interior_points,
    mutual_distances,
    oriented_area,
)

__all__ = [
    "Exponent",
    "MassVector",
    "EquationContext",
    "ResidualReport",
    "KernelResult",
    "La2Certificate",
    "La2Result",
    "RegionResult",
    "laura_andoyer",
    "albouy_chenciner_f",
    "symmetric_g",
    "fit_lambda_tilde",
    "mass_coefficient_matrix",
    "symmetric_la_coefficients",
    "mass_kernel",
    "la2_feasible",
    "region_classify",
    "TWO_MASS_PAIRS",
]


@dataclass(frozen=True)
class Exponent:
    """Potential exponent A >= 2, optionally with an exact rational form."""

    value: float
    rational: Fraction | None = None

    def __post_init__(self):
        if self.value < 2.0:
            raise ValueError(f"exponent must be >= 2, got {self.value}")
        if self.rational is not None and abs(float(self.rational) - self.value) > 1e-12:
            raise ValueError("rational form disagrees with the float value")

    @classmethod
    def parse(cls, text) -> "Exponent":
        """Parse '3', '2.5', or '5/2'; fractions keep their exact form."""
        if isinstance(text, (int, Fraction)):
            f = Fraction(text)
            return cls(float(f), f)
        s = str(text).strip()
        if "/" in s:
            f = Fraction(s)
            return cls(float(f), f)
        v = float(s)
        if v.is_integer():
            return cls(v, Fraction(int(v)))
        return cls(v, None)


@dataclass(frozen=True)
class MassVector:
    """Five masses, normalized with m1 = 1 where a scale must be fixed."""

    m1: float
    m2: float
    m3: float
    m4: float
    m5: float

    def as_array(self) -> np.ndarray:
        return np.array([self.m1, self.m2, self.m3, self.m4, self.m5])

    @property
    def all_positive(self) -> bool:
        return bool(np.all(self.as_array() > 0.0))

    @classmethod
    def symmetric(cls, m1: float, m3: float, m4: float) -> "MassVector":
        """Mirror-symmetric masses: m2 = m1 and m5 = m3."""
        return cls(m1, m1, m3, m4, m3)


@dataclass(frozen=True)
class EquationContext:
    """Multiplier normalization; the tropical and finiteness work fix lt = 1."""

    lambda_tilde: float = 1.0


@dataclass
class ResidualReport:
    """Map from equation label to residual value, plus system metadata."""

    system: str
    residuals: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def max_abs(self) -> float:
        return max((abs(v) for v in self.residuals.values()), default=0.0)

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "max_abs": self.max_abs,
            "meta": self.meta,
        }


# Diagonal pairs whose wedge equations involve exactly two masses, with the
# masses they involve (unit-edge equilateral cyclic pentagon).
TWO_MASS_PAIRS = {
    (1, 3): (4, 5),
    (2, 4): (1, 5),
    (3, 5): (1, 2),
    (1, 4): (2, 3),
    (2, 5): (3, 4),
}


def _distance_matrix(config: PlanarConfiguration) -> np.ndarray:
    table = mutual_distances(config)
    return table.table


def laura_andoyer(config: PlanarConfiguration, masses, a_exp: float) -> ResidualReport:
    """All ten wedge-product residuals L(i,j).

    For equilateral cyclic inputs the report's meta lists which labels form
    the two-mass and three-mass groups.
    """
    m = np.asarray(masses if not isinstance(masses, MassVector) else masses.as_array(),
                   dtype=float)
    if m.shape != (5,):
        raise ValueError("expected five masses")
    r = _distance_matrix(config)
    R = (r + np.eye(5)) ** (-a_exp)  # shift keeps the unused diagonal finite
    np.fill_diagonal(R, 0.0)
    res = {}
    for i in range(1, 6):
        for j in range(i + 1, 6):
            total = 0.0
            for k in range(1, 6):
                if k in (i, j):
                    continue
                total += (m[k - 1]
                          * (R[i - 1, k - 1] - R[j - 1, k - 1])
                          * oriented_area(config, i, j, k))
            res[f"L{i}{j}"] = total
    table = mutual_distances(config)
    meta = {"A": a_exp, "equilateral": table.is_equilateral}
    if table.is_equilateral:
        meta["two_mass"] = [f"L{i}{j}" for (i, j) in TWO_MASS_PAIRS]
        meta["three_mass"] = [lab for lab in res if lab not in meta["two_mass"]]
    return ResidualReport(system="laura_andoyer", residuals=res, meta=meta)


def _check_table(r: np.ndarray):
    if r.shape != (5, 5):
        raise ValueError("expected a 5x5 distance table")
    iu = np.triu_indices(5, k=1)
    if np.any(r[iu] <= 0.0):
        raise CollisionError("distance table has a nonpositive entry")


def fit_lambda_tilde(r: np.ndarray, masses, a_exp: float) -> float:
    """Least-squares multiplier: minimizes the sum of squared f residuals."""
    m = np.asarray(masses, dtype=float)
    num = den = 0.0
    for i in range(5):
        for j in range(5):
            if i == j:
                continue
            a_coef = b_coef = 0.0
            for k in range(5):
                if k == i:
                    continue
                aijk = r[j, k] ** 2 - r[i, k] ** 2 - r[i, j] ** 2
                a_coef += m[k] * r[i, k] ** (-a_exp) * aijk
                b_coef += m[k] * aijk
            num += a_coef * b_coef
            den += b_coef * b_coef
    if den == 0.0:
        raise ValueError("degenerate configuration: multiplier is unconstrained")
    return num / den


def albouy_chenciner_f(distances, masses, a_exp: float,
                       lambda_tilde: float | None = None) -> ResidualReport:
    """The twenty mutual-distance residuals f(i,j), i != j.

    ``distances`` is a full 5x5 table (or a PlanarConfiguration).  When
    ``lambda_tilde`` is None it is fitted by linear least squares.
    """
    if isinstance(distances, PlanarConfiguration):
        r = _distance_matrix(distances)
    else:
        r = np.asarray(distances, dtype=float)
    _check_table(r)
    m = np.asarray(masses if not isinstance(masses, MassVector) else masses.as_array(),
                   dtype=float)
    if lambda_tilde is None:
        lambda_tilde = fit_lambda_tilde(r, m, a_exp)
    res = {}
    for i in range(5):
        for j in range(5):
            if i == j:
                continue
            total = 0.0
            for k in range(5):
                if k == i:
                    continue
                aijk = r[j, k] ** 2 - r[i, k] ** 2 - r[i, j] ** 2
                total += m[k] * (r[i, k] ** (-a_exp) - lambda_tilde) * aijk
            res[f"f{i + 1}{j + 1}"] = total
    return ResidualReport(system="albouy_chenciner",
                          residuals=res,
                          meta={"A": a_exp, "lambda_tilde": lambda_tilde})


def symmetric_g(distances, masses, a_exp: float,
                lambda_tilde: float | None = None) -> ResidualReport:
    """Symmetrized residuals g(i,j) computed directly from their own formula."""
    if isinstance(distances, PlanarConfiguration):
        r = _distance_matrix(distances)
    else:
        r = np.asarray(distances, dtype=float)
    _check_table(r)
    m = np.asarray(masses, dtype=float)
    if lambda_tilde is None:
        lambda_tilde = fit_lambda_tilde(r, m, a_exp)
    res = {}
    for i in range(5):
        for j in range(i + 1, 5):
            total = 0.0
            for k in range(5):
                sik = r[i, k] ** (-a_exp) - lambda_tilde if k != i else 0.0
                sjk = r[j, k] ** (-a_exp) - lambda_tilde if k != j else 0.0
                aijk = (r[j, k] ** 2 - r[i, k] ** 2 - r[i, j] ** 2) if k != i else 0.0
                ajik = (r[i, k] ** 2 - r[j, k] ** 2 - r[i, j] ** 2) if k != j else 0.0
                total += m[k] * (sik * aijk + sjk * ajik)
            res[f"g{i + 1}{j + 1}"] = total
    return ResidualReport(system="albouy_chenciner_sym",
                          residuals=res,
                          meta={"A": a_exp, "lambda_tilde": lambda_tilde})


def _symmetric_quantities(shape: SymmetricShape, a_exp: float) -> dict:
    y4 = shape.y4
    x3, y3 = branch_position(y4, shape.branch)
    q = {
        "d123": y3,
        "d124": y4,
        "d134": x3 * y4 + (y4 - y3) / 2.0,
        "d135": 2.0 * y3 * x3,
        "d145": x3 * y4 - (y4 - y3) / 2.0,
        "d345": 2.0 * x3 * (y4 - y3),
    }
    r13 = math.hypot(x3 + 0.5, y3)
    r14 = math.sqrt(0.25 + y4 * y4)
    r35 = abs(2.0 * x3)
    if min(r13, r14, r35) <= 0.0:
        raise CollisionError(f"collision at y4 = {y4} on branch {shape.branch}")
    q["R13"] = r13 ** (-a_exp)
    q["R14"] = r14 ** (-a_exp)
    q["R35"] = r35 ** (-a_exp)
    return q


def symmetric_la_coefficients(shape: SymmetricShape, a_exp: float) -> dict:
    """Mass coefficients of the four independent symmetric wedge equations.

    Returns {label: {mass index: coefficient}} for L13, L14, L15, L34 over
    the reduced masses (1, 3, 4); mirror symmetry sets m2 = m1, m5 = m3.
    """
    q = _symmetric_quantities(shape, a_exp)
    R13, R14, R35 = q["R13"], q["R14"], q["R35"]
    return {
        "L13": {3: (1.0 - R35) * q["d135"], 4: (R14 - 1.0) * q["d134"]},
        "L14": {1: (1.0 - R14) * q["d124"], 3: (R13 - 1.0) * q["d134"]},
        "L15": {1: (1.0 - R13) * q["d123"], 3: (R13 - R35) * q["d135"],
                4: (R14 - 1.0) * q["d145"]},
        "L34": {1: (R13 - R14) * q["d134"] + (1.0 - R14) * q["d145"],
                3: (R35 - 1.0) * q["d345"]},
    }


def mass_coefficient_matrix(shape: SymmetricShape, a_exp: float,
                            reduced: bool = False) -> np.ndarray:
    """4x3 coefficient matrix of (m1, m3, m4) for rows L13, L14, L15, L34.

    With ``reduced=True`` the L15 row has its m4 entry eliminated against the
    L13 row, which divides by Delta134 and therefore requires Delta134 != 0;
    the default form is defined everywhere and has the same kernel.
    """
    coeffs = symmetric_la_coefficients(shape, a_exp)
    rows = []
    for label in ("L13", "L14", "L15", "L34"):
        c = coeffs[label]
        rows.append([c.get(1, 0.0), c.get(3, 0.0), c.get(4, 0.0)])
    m = np.array(rows)
    if reduced:
        q = _symmetric_quantities(shape, a_exp)
        if abs(q["d134"]) < 1e-14:
            raise ZeroDivisionError("reduced form undefined where Delta134 = 0")
        ratio = q["d145"] / q["d134"]
        m[2, 1] = ((q["R13"] - q["R35"]) - (1.0 - q["R35"]) * ratio) * q["d135"]
        m[2, 2] = 0.0
    return m


@dataclass(frozen=True)
class KernelResult:
    """Kernel of a mass-coefficient matrix, if the numerical rank admits one."""

    feasible: bool
    masses: MassVector | None
    positive: bool
    rank: int
    singular_values: tuple

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "masses": list(self.masses.as_array()) if self.masses else None,
            "positive": self.positive,
            "rank": self.rank,
            "singular_values": list(self.singular_values),
        }


def mass_kernel(matrix: np.ndarray, rank_tol: float = 1e-9) -> KernelResult:
    """Kernel vector of a 4x3 coefficient matrix, scaled to m1 = 1.

    The numerical rank uses the threshold rank_tol * (largest singular
    value); full-rank matrices are infeasible.
    """
    m = np.asarray(matrix, dtype=float)
    if m.shape != (4, 3):
        raise ValueError(f"expected a 4x3 matrix, got {m.shape}")
    _, svals, vt = np.linalg.svd(m)
    rank = int(np.sum(svals > rank_tol * svals[0])) if svals[0] > 0.0 else 0
    if rank >= 3:
        return KernelResult(False, None, False, rank, tuple(svals))
    v = vt[-1]
    if abs(v[0]) < 1e-12 * np.linalg.norm(v):
        return KernelResult(False, None, False, rank, tuple(svals))
    v = v / v[0]
    masses = MassVector.symmetric(1.0, float(v[1]), float(v[2]))
    return KernelResult(True, masses, masses.all_positive, rank, tuple(svals))


@dataclass(frozen=True)
class La2Certificate:
    """Sign certificate for one two-mass equation."""

    pair: tuple
    mass_indices: tuple
    coefficients: tuple
    admissible: bool


@dataclass(frozen=True)
class La2Result:
    feasible: bool
    certificates: tuple

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "equations": [
                {
                    "pair": list(c.pair),
                    "masses": list(c.mass_indices),
                    "coefficients": list(c.coefficients),
                    "admissible": c.admissible,
                }
                for c in self.certificates
            ],
        }


def la2_feasible(config: PlanarConfiguration, a_exp: float,
                 zero_tol: float = 1e-10) -> La2Result:
    """Positive-mass feasibility of the five two-mass wedge equations.

    Each equation c_a * m_a + c_b * m_b = 0 admits positive masses exactly
    when the coefficients have opposite strict signs or both vanish; one
    zero coefficient against a nonzero one would force a zero mass.
    """
    table = mutual_distances(config)
    if not table.is_equilateral:
        raise ValueError("two-mass equations require an equilateral cyclic pentagon")
    r = table.table
    scale = table.distance(1, 2)
    R = (r / scale + np.eye(5)) ** (-a_exp)
    np.fill_diagonal(R, 0.0)

    def coeff(i, j, k):
        return float((R[i - 1, k - 1] - R[j - 1, k - 1])
                     * oriented_area(config, i, j, k) / scale ** 2)

    certs = []
    for (i, j), (ka, kb) in TWO_MASS_PAIRS.items():
        ca, cb = coeff(i, j, ka), coeff(i, j, kb)
        za, zb = abs(ca) <= zero_tol, abs(cb) <= zero_tol
        admissible = bool((za and zb)
                          or ((not za and not zb) and (ca > 0) != (cb > 0)))
        certs.append(La2Certificate((i, j), (ka, kb), (ca, cb), admissible))
    return La2Result(all(c.admissible for c in certs), tuple(certs))


@dataclass(frozen=True)
class RegionResult:
    region: str            # "I", "II", "III", or "none"
    interior_label: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"region": self.region, "interior": self.interior_label,
                "detail": self.detail}


_FIVE_THIRDS_PI = 5.0 * math.pi / 3.0


def _region3_conditions(config: PlanarConfiguration, tol: float = 1e-9) -> bool:
    """Angle and orientation conditions for the concave class, body 5 interior."""
    t123 = interior_angle(config, 1, 2, 3)
    t234 = interior_angle(config, 2, 3, 4)
    if t123 + t234 > 3.0 * math.pi + tol:
        return False
    if t123 > _FIVE_THIRDS_PI + tol or t234 > _FIVE_THIRDS_PI + tol:
        return False
    if oriented_area(config, 1, 3, 5) < -tol:
        return False
    if oriented_area(config, 2, 4, 5) < -tol:
        return False
    return True


def region_classify(angles: ChainAngles, a_exp: float) -> RegionResult:
    """Classify a unit-edge cyclic pentagon into the allowed-region classes.

    Region I: feasible with every diagonal longer than the edges (contains
    the convex regular pentagon).  Region II: feasible with every diagonal
    shorter (contains the regular star).  Region III: feasible concave
    shapes satisfying the interior-body conditions after the cyclic
    relabeling that moves the interior body to position 5; reflected copies
    are accepted through the mirror image.
    """
    config = cyclic_from_angles(angles)
    verdict = la2_feasible(config, a_exp)
    if not verdict.feasible:
        return RegionResult("none", detail="two-mass equations infeasible")
    table = mutual_distances(config)
    edge = table.distance(1, 2)
    diag = [table.distance(i, j) for i, j in DIAGONALS]
    if all(d > edge for d in diag):
        return RegionResult("I")
    if all(d < edge for d in diag):
        return RegionResult("II")
    inner = interior_points(config)
    if len(inner) == 1:
        p = inner[0]
        shift = p % 5  # sends old body p to new position 5
        for candidate in (config.permuted(shift), config.reflected().permuted(shift)):
            if _region3_conditions(candidate):
                return RegionResult("III", interior_label=p)
        return RegionResult("none", detail="concave but angle conditions fail")
    return RegionResult("none", detail="mixed diagonals, not single-interior concave")

"""Analysis of the mirror-symmetric equilateral family.

The admissibility of masses on the symmetric family reduces to the vanishing
of a 2x2 minor F of the mass-coefficient matrix.  This module evaluates F
generically (floats, arrays, duals, intervals), isolates its roots per
sign-type window, recovers masses at each root, checks them against the two
exact mass polynomials, scans for the root-count bifurcation in A, and
verifies the grid sign arguments that exclude seven of the ten sign types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .geometry import (
    OutOfDomainError,
    SymmetricShape,
    SignType,
    Y4_MAX,
    branch_position,
    classify_sign_type,
    regular_pentagon_y4,
    symmetric_coords,
)
from .equations import (
    MassVector,
    laura_andoyer,
    mass_coefficient_matrix,
    mass_kernel,
)
from .intervals import Dual, Interval

__all__ = [
    "F",
    "F_prime",
    "F_from_matrix",
    "RootRecord",
    "MassPolynomial",
    "VORTEX_MASS_POLY",
    "QUARTIC_MASS_POLY",
    "sign_type_windows",
    "window_for",
    "isolate_roots",
    "recover_masses",
    "verify_mass_polynomial",
    "bifurcation_scan",
    "NoBifurcationError",
    "exclude_sign_types",
    "ExclusionCheck",
    "ALLOWED_TYPES",
    "EXCLUDED_TYPES",
    "scan_branch",
]


def _sqrt(x):
    if hasattr(x, "sqrt"):
        return x.sqrt()
    return np.sqrt(x)


def f_ingredients(y4, a_exp, branch: str) -> dict:
    """Oriented areas and inverse-power distances entering F, generic scalar."""
    x3, y3 = branch_position(y4, branch)
    d124 = y4
    d134 = x3 * y4 + (y4 - y3) * 0.5
    d145 = x3 * y4 - (y4 - y3) * 0.5
    d345 = 2.0 * x3 * (y4 - y3)
    r13 = _sqrt((x3 + 0.5) * (x3 + 0.5) + y3 * y3)
    r14 = _sqrt(y4 * y4 + 0.25)
    r35 = abs(2.0 * x3)
    return {
        "d124": d124, "d134": d134, "d145": d145, "d345": d345,
        "R13": r13 ** (-a_exp), "R14": r14 ** (-a_exp), "R35": r35 ** (-a_exp),
    }


def F(y4, a_exp, branch: str = "A"):
    """The admissibility minor; its zeros are the candidate symmetric shapes.

    F = (1 - R14)(R35 - 1) d124 d345
        + (1 - R13) d134 ((R13 - R14) d134 + (1 - R14) d145)

    Accepts floats, numpy arrays, Dual seeds, and Intervals for y4, and a
    float or Interval exponent.
    """
    g = f_ingredients(y4, a_exp, branch)
    return ((1.0 - g["R14"]) * (g["R35"] - 1.0) * g["d124"] * g["d345"]
            + (1.0 - g["R13"]) * g["d134"]
            * ((g["R13"] - g["R14"]) * g["d134"] + (1.0 - g["R14"]) * g["d145"]))


def F_prime(y4: float, a_exp, branch: str = "A") -> float:
    """dF/dy4 by forward-mode dual numbers."""
    return F(Dual(y4, 1.0), a_exp, branch).dot


def F_dual(y4, a_exp, branch: str = "A") -> Dual:
    """F and dF/dy4 together; works with Interval components."""
    one = 1.0 if not isinstance(y4, Interval) else Interval.point(1.0)
    return F(Dual(y4, one), a_exp, branch)


def F_from_matrix(shape: SymmetricShape, a_exp: float) -> float:
    """Independent evaluation path: determinant of rows 2 and 4 of the matrix."""
    m = mass_coefficient_matrix(shape, a_exp)
    return float(m[1, 0] * m[3, 1] - m[1, 1] * m[3, 0])


# ---------------------------------------------------------------------------
# sign-type windows

_BOUNDARY_FUNS = {
    "A": (
        lambda y: abs(2.0 * branch_position(y, "A")[0]) - 1.0,      # r35 = 1
        lambda y: _d134(y, "A"),                                    # Delta134 = 0
        lambda y: _d345(y, "A"),                                    # Delta345 = 0 (r14 = 1)
    ),
    "B": (
        lambda y: branch_position(y, "B")[0],                       # x3 = 0 collisions
        lambda y: branch_position(y, "B")[1],                       # y3 = 0 collision
        lambda y: _d134(y, "B"),                                    # Delta134 = 0
    ),
}


def _d134(y4, branch):
    x3, y3 = branch_position(y4, branch)
    return x3 * y4 + (y4 - y3) * 0.5


def _d345(y4, branch):
    x3, y3 = branch_position(y4, branch)
    return 2.0 * x3 * (y4 - y3)


def _bisect_root(f, lo: float, hi: float, tol: float = 1e-13) -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise ValueError("bisection bracket does not change sign")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


@lru_cache(maxsize=None)
def sign_type_windows(branch: str) -> dict:
    """Open y4 windows of each sign type, keyed by label, boundaries to 1e-12.

    Boundaries are found numerically from the defining conditions and window
    labels by classifying midpoints, so the table stays consistent with
    classify_sign_type.
    """
    grid = np.linspace(1e-9, Y4_MAX - 1e-9, 20001)
    cuts = []
    for fun in _BOUNDARY_FUNS[branch]:
        vals = np.asarray(fun(grid))
        sign = np.sign(vals)
        for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
            cuts.append(_bisect_root(fun, grid[i], grid[i + 1]))
    cuts = sorted(cuts)
    merged = []
    for c in cuts:
        if not merged or c - merged[-1] > 1e-9:
            merged.append(c)
    edges = [0.0] + merged + [Y4_MAX]
    windows = {}
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        label = classify_sign_type(SymmetricShape(mid, branch)).label
        windows[label] = (lo, hi)
    return windows


def window_for(branch: str, label: str, inset: float = 0.0) -> tuple:
    """(lo, hi) window of a sign type, optionally shrunk away from boundaries."""
    wins = sign_type_windows(branch)
    if label not in wins:
        raise KeyError(f"no sign type {label!r} on branch {branch}")
    lo, hi = wins[label]
    return lo + inset, hi - inset


# The sign arguments below leave only these types able to carry solutions.
ALLOWED_TYPES = {"A": ("A2", "A4"), "B": ("B2",)}
EXCLUDED_TYPES = {"A": ("A1", "A3", "A5"), "B": ("B1", "B3", "B4", "B5")}


# ---------------------------------------------------------------------------
# root isolation

@dataclass(frozen=True)
class RootRecord:
    """Isolated zero of F with its certification data and recovered masses."""

    enclosure: tuple
    branch: str
    sign_type: SignType
    a_exp: float
    masses: MassVector | None
    positive_masses: bool
    residual_max: float
    simple: bool
    sign_change_certified: bool = True
    resolved: bool = True

    @property
    def y4(self) -> float:
        return 0.5 * (self.enclosure[0] + self.enclosure[1])

    def to_json(self) -> dict:
        return {
            "y4_enclosure": list(self.enclosure),
            "y4": self.y4,
            "branch": self.branch,
            "sign_type": self.sign_type.label,
            "A": self.a_exp,
            "masses": list(self.masses.as_array()) if self.masses else None,
            "positive_masses": self.positive_masses,
            "residual_max": self.residual_max,
            "simple": self.simple,
            "sign_change_certified": self.sign_change_certified,
            "resolved": self.resolved,
        }


def recover_masses(y4: float, branch: str, a_exp: float):
    """Kernel masses and wedge-residual norm at a candidate root."""
    shape = SymmetricShape(y4, branch)
    kern = mass_kernel(mass_coefficient_matrix(shape, a_exp))
    if kern.masses is None:
        return None, False, math.inf
    config = symmetric_coords(shape)
    rep = laura_andoyer(config, kern.masses, a_exp)
    return kern.masses, kern.positive, rep.max_abs


def _interval_simple(enclosure: tuple, branch: str, a_exp: float) -> bool:
    """True when the interval derivative excludes zero over the enclosure."""
    try:
        dual = F_dual(Interval(enclosure[0], enclosure[1]), a_exp, branch)
    except (ArithmeticError, OutOfDomainError):
        return False
    return not dual.dot.contains_zero()


def _interval_sign_change(enclosure: tuple, branch: str, a_exp: float) -> bool:
    """Rigorous check that F has opposite strict signs at the enclosure ends."""
    try:
        fa = F(Interval.around(enclosure[0]), a_exp, branch)
        fb = F(Interval.around(enclosure[1]), a_exp, branch)
    except (ArithmeticError, OutOfDomainError):
        return False
    return ((fa.strictly_positive() and fb.strictly_negative())
            or (fa.strictly_negative() and fb.strictly_positive()))


def _make_record(enclosure: tuple, branch: str, a_exp: float,
                 certified: bool, resolved: bool = True) -> RootRecord:
    mid = 0.5 * (enclosure[0] + enclosure[1])
    masses, positive, resid = recover_masses(mid, branch, a_exp)
    return RootRecord(
        enclosure=enclosure, branch=branch,
        sign_type=classify_sign_type(SymmetricShape(mid, branch)),
        a_exp=a_exp, masses=masses, positive_masses=positive,
        residual_max=resid,
        simple=resolved and _interval_simple(enclosure, branch, a_exp),
        sign_change_certified=certified, resolved=resolved)


def isolate_roots(branch: str, a_exp: float, window: tuple, tol: float = 1e-12,
                  grid: int = 4096) -> list:
    """Disjoint sign-change enclosures of the zeros of F inside a window.

    Roots are bracketed on a uniform grid, refined by bisection to width at
    most ``tol``, then certified by a thin-interval sign change at the
    enclosure ends plus an interval-derivative simplicity check.  Grid cells
    without a sign change whose interval value and derivative both straddle
    zero are reported as unresolved records instead of being guessed at.
    """
    lo, hi = window
    if lo < 0.0 or hi > Y4_MAX or lo >= hi:
        raise OutOfDomainError(f"window {window} is not inside the branch domain")
    ys = np.linspace(lo, hi, grid + 1)
    vals = np.asarray(F(ys, a_exp, branch), dtype=float)
    signs = np.sign(vals)
    records = []

    def refine(a, fa, b):
        while b - a > tol:
            mid = 0.5 * (a + b)
            fm = float(F(mid, a_exp, branch))
            if fm == 0.0:
                half = max(0.25 * tol, 1e-15)
                return max(a, mid - half), min(b, mid + half)
            if fa * fm < 0.0:
                b = mid
            else:
                a, fa = mid, fm
        return a, b

    for i in np.nonzero(signs[:-1] * signs[1:] < 0)[0]:
        a, b = refine(float(ys[i]), float(vals[i]), float(ys[i + 1]))
        enclosure = (a, b)
        records.append(_make_record(
            enclosure, branch, a_exp,
            certified=_interval_sign_change(enclosure, branch, a_exp)))

    # exact zeros landing on grid nodes
    for i in np.nonzero(signs == 0)[0]:
        if 0 < i < grid and signs[i - 1] * signs[i + 1] < 0:
            a, b = refine(float(ys[i - 1]), float(vals[i - 1]), float(ys[i + 1]))
            enclosure = (a, b)
            records.append(_make_record(
                enclosure, branch, a_exp,
                certified=_interval_sign_change(enclosure, branch, a_exp)))
        else:
            j0, j1 = max(i - 1, 0), min(i + 1, grid)
            records.append(_make_record((float(ys[j0]), float(ys[j1])), branch,
                                        a_exp, certified=False, resolved=False))

    # tangency guard: same-sign cells that may hide an even-order zero are
    # screened cheaply, then refined; only cells where F and dF still both
    # straddle zero after subdivision are reported
    steps = np.abs(np.diff(vals))
    near = np.minimum(np.abs(vals[:-1]), np.abs(vals[1:])) < 8.0 * (steps + 1e-300)
    suspects = []
    for i in np.nonzero(near & (signs[:-1] * signs[1:] > 0))[0]:
        suspects.extend(_suspect_subcells(
            Interval(float(ys[i]), float(ys[i + 1])), branch, a_exp, depth=24))
    for cell in _merge_intervals(suspects):
        records.append(_make_record(cell, branch, a_exp,
                                    certified=False, resolved=False))
    records.sort(key=lambda r: r.enclosure[0])
    return records


def _suspect_subcells(cell: Interval, branch: str, a_exp: float, depth: int) -> list:
    """Subcells that may contain an even-order zero of F.

    A cell is cleared when its interval F or interval dF excludes zero;
    otherwise it is bisected, so overestimation near steep regions does not
    produce false reports.  Cells still ambiguous at the depth cap are kept.
    """
    try:
        dual = F_dual(cell, a_exp, branch)
        ambiguous = dual.val.contains_zero() and dual.dot.contains_zero()
    except (ArithmeticError, OutOfDomainError):
        ambiguous = True
    if not ambiguous:
        return []
    if depth <= 0 or cell.width < 1e-15:
        return [(cell.lo, cell.hi)]
    left, right = cell.split()
    return (_suspect_subcells(left, branch, a_exp, depth - 1)
            + _suspect_subcells(right, branch, a_exp, depth - 1))


def _merge_intervals(cells: list) -> list:
    merged: list = []
    for lo, hi in sorted(cells):
        if merged and lo <= merged[-1][1] + 1e-15:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
        else:
            merged.append((lo, hi))
    return merged


def scan_branch(branch: str, a_exp: float, tol: float = 1e-12,
                window_inset: float = 1e-9) -> list:
    """Roots of F over the allowed sign-type windows of a branch."""
    records = []
    for label in ALLOWED_TYPES[branch]:
        win = window_for(branch, label, inset=window_inset)
        records.extend(isolate_roots(branch, a_exp, win, tol=tol))
    records.sort(key=lambda r: r.enclosure[0])
    return records


# ---------------------------------------------------------------------------
# exact mass polynomials

@dataclass(frozen=True)
class MassPolynomial:
    """Integer polynomial in m4 satisfied by the symmetric solutions."""

    name: str
    coefficients: tuple  # ascending order, exact integers

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, m4: float) -> float:
        total = 0.0
        for c in reversed(self.coefficients):
            total = total * m4 + c
        return total

    def scale(self, m4: float) -> float:
        return sum(abs(c) * abs(m4) ** i for i, c in enumerate(self.coefficients))


VORTEX_MASS_POLY = MassPolynomial(
    "vortex_symmetric",
    (-17, -149, 215, 1362, 45, -2830, -109, 2316, -752, 64),
)

QUARTIC_MASS_POLY = MassPolynomial(
    "quartic_symmetric",
    (957, 25519, -33431, -387130, -239673, 2374416, 456601, -5326884, -1407668,
     17143788, -6546497, -15626678, 2342977, 5616221, 636883, -232064, 12288),
)


def verify_mass_polynomial(poly: MassPolynomial, m4: float) -> float:
    """Relative residual |p(m4)| / sum_i |c_i| |m4|^i."""
    return abs(poly(m4)) / poly.scale(m4)


# ---------------------------------------------------------------------------
# bifurcation scan

class NoBifurcationError(RuntimeError):
    """The scanned range contains no root-count jump."""


def _a4_root_count(a_exp: float, pentagon_eps: float = 1e-8) -> int:
    """Sign changes of F in the convex window, the pentagon zero excluded.

    The grid mixes a uniform mesh with dyadic offsets around the pentagon so
    that a root pair splitting off the pentagon is seen as soon as it is
    farther than pentagon_eps away.
    """
    lo, hi = window_for("A", "A4", inset=1e-9)
    p = regular_pentagon_y4()
    offs = np.geomspace(pentagon_eps, min(p - lo, hi - p) - 1e-9, 120)
    ys = np.concatenate([np.linspace(lo, hi, 3001), p - offs, p + offs])
    ys = np.sort(ys[(ys > lo) & (ys < hi)])
    vals = F(ys, a_exp, "A")
    count = 0
    for side in (ys < p - 0.5 * pentagon_eps, ys > p + 0.5 * pentagon_eps):
        s = np.sign(vals[side])
        count += int(np.sum(s[:-1] * s[1:] < 0))
    return count


def bifurcation_scan(a_range: tuple, step: float = 0.05, tol: float = 1e-6) -> tuple:
    """Bracket the exponent where the convex-window root count jumps 1 -> 3.

    Returns (lo, hi) with hi - lo <= tol.  Raises NoBifurcationError when the
    extra root pair never appears inside the range.
    """
    a_lo, a_hi = float(a_range[0]), float(a_range[1])
    if not (2.0 <= a_lo < a_hi <= 3.5):
        raise ValueError(f"scan range must sit inside [2, 3.5], got {a_range}")
    grid = [a_lo]
    while grid[-1] < a_hi:
        grid.append(min(grid[-1] + step, a_hi))
    counts = [_a4_root_count(a) for a in grid]
    bracket = None
    for (a0, c0), (a1, c1) in zip(zip(grid, counts), zip(grid[1:], counts[1:])):
        if c0 == 0 and c1 >= 2:
            bracket = (a0, a1)
            break
    if bracket is None:
        raise NoBifurcationError(
            f"no root-count jump inside [{a_lo}, {a_hi}] (counts {sorted(set(counts))})")
    lo, hi = bracket
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _a4_root_count(mid) == 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# sign-type exclusions

# type -> (equation, coefficient pair as functions, claimed common sign)
def _l13_coeffs(y4, a_exp, branch):
    g = f_ingredients(y4, a_exp, branch)
    x3, y3 = branch_position(y4, branch)
    d135 = 2.0 * y3 * x3
    return (1.0 - g["R35"]) * d135, (g["R14"] - 1.0) * g["d134"]


def _l14_coeffs(y4, a_exp, branch):
    g = f_ingredients(y4, a_exp, branch)
    return (1.0 - g["R14"]) * g["d124"], (g["R13"] - 1.0) * g["d134"]


_EXCLUSION_TABLE = {
    "A1": ("L13", _l13_coeffs, -1),
    "A3": ("L13", _l13_coeffs, +1),
    "A5": ("L13", _l13_coeffs, -1),
    "B1": ("L13", _l13_coeffs, +1),
    "B3": ("L13", _l13_coeffs, +1),
    "B4": ("L14", _l14_coeffs, +1),
    "B5": ("L13", _l13_coeffs, -1),
}


@dataclass(frozen=True)
class ExclusionCheck:
    sign_type: str
    equation: str
    claimed_sign: int
    points_checked: int
    counterexamples: tuple

    @property
    def excluded(self) -> bool:
        return len(self.counterexamples) == 0

    def to_json(self) -> dict:
        return {
            "sign_type": self.sign_type,
            "equation": self.equation,
            "claimed_sign": self.claimed_sign,
            "points_checked": self.points_checked,
            "counterexamples": [list(c) for c in self.counterexamples],
            "excluded": self.excluded,
        }


def exclude_sign_types(branch: str, a_exp: float, grid: int = 10000) -> list:
    """Verify the grid sign arguments excluding the seven impossible types.

    For each excluded type the named two-mass equation must have both mass
    coefficients of the claimed strict sign at every interior grid point,
    which rules out any positive-mass kernel there.
    """
    out = []
    for label in EXCLUDED_TYPES[branch]:
        equation, coeff_fun, sign = _EXCLUSION_TABLE[label]
        lo, hi = window_for(branch, label)
        ys = np.linspace(lo, hi, grid + 2)[1:-1]
        ca, cb = coeff_fun(ys, a_exp, branch)
        bad = np.nonzero((sign * ca <= 0.0) | (sign * cb <= 0.0))[0]
        counterexamples = tuple(
            (float(ys[i]), float(ca[i]), float(cb[i])) for i in bad[:10])
        out.append(ExclusionCheck(label, equation, sign, len(ys), counterexamples))
    return out


def boundary_exclusion_holds(branch: str, boundary_y4: float, a_exp: float,
                             equation: str = "L13", sign: int = -1) -> bool:
    """Weak-sign version of an exclusion at a window boundary.

    At a boundary one coefficient may vanish; exclusion persists as long as
    both carry the claimed sign weakly and at least one strictly.
    """
    coeff_fun = _l13_coeffs if equation == "L13" else _l14_coeffs
    ca, cb = coeff_fun(boundary_y4, a_exp, branch)
    ok_weak = sign * ca >= -1e-12 and sign * cb >= -1e-12
    return bool(ok_weak and (sign * ca > 1e-12 or sign * cb > 1e-12))

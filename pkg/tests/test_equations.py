"""Residual systems, mass kernels, feasibility, and region classification."""

import math
from fractions import Fraction

import numpy as np
import pytest

from pentacc.geometry import (
    ChainAngles,
    DIAGONALS,
    OutOfDomainError,
    PlanarConfiguration,
    SymmetricShape,
    collinear_endpoint_y4,
    convex_position,
    cyclic_from_angles,
    mutual_distances,
    regular_pentagon_y4,
    square_endpoint_y4,
    symmetric_coords,
)
from pentacc.equations import (
    Exponent,
    MassVector,
    TWO_MASS_PAIRS,
    albouy_chenciner_f,
    fit_lambda_tilde,
    la2_feasible,
    laura_andoyer,
    mass_coefficient_matrix,
    mass_kernel,
    region_classify,
    symmetric_g,
)

PENTAGON = symmetric_coords(SymmetricShape(regular_pentagon_y4(), "A"))
EQUAL = MassVector(1.0, 1.0, 1.0, 1.0, 1.0)

# pipeline values for the vortex-case asymmetric solution
A2_ROOT_VORTEX = 0.1541207210494488
A2_MASSES_VORTEX = MassVector.symmetric(1.0, 2.325872505103552, 0.3419913914929025)


def test_exponent_parsing():
    assert Exponent.parse("3").rational == Fraction(3)
    assert Exponent.parse("5/2").rational == Fraction(5, 2)
    assert Exponent.parse("2.5").rational is None
    assert Exponent.parse("2.5").value == 2.5
    with pytest.raises(ValueError):
        Exponent.parse("1.5")


@pytest.mark.parametrize("a_exp", [2.0, 3.0])
def test_pentagon_wedge_residuals_vanish(a_exp):
    report = laura_andoyer(PENTAGON, EQUAL, a_exp)
    assert len(report.residuals) == 10
    assert report.max_abs <= 1e-12


def test_wedge_two_mass_three_mass_split():
    report = laura_andoyer(PENTAGON, EQUAL, 3.0)
    assert set(report.meta["two_mass"]) == {"L13", "L24", "L35", "L14", "L25"}
    assert set(report.meta["three_mass"]) == {"L12", "L23", "L34", "L45", "L15"}


def test_certified_vortex_masses_nearly_solve():
    # the rounded reference masses leave a residual set by their rounding
    config = symmetric_coords(SymmetricShape(A2_ROOT_VORTEX, "A"))
    rounded = MassVector.symmetric(1.0, 2.32, 0.34199)
    report = laura_andoyer(config, rounded, 2.0)
    assert report.max_abs < 5e-3
    exact = laura_andoyer(config, A2_MASSES_VORTEX, 2.0)
    assert exact.max_abs < 1e-12


def test_wedge_residual_scale_covariance():
    rng = np.random.default_rng(4)
    config = PlanarConfiguration(rng.normal(size=(5, 2)))
    masses = rng.uniform(0.5, 2.0, 5)
    a_exp = 3.0
    s = 1.7
    base = laura_andoyer(config, masses, a_exp)
    scaled = laura_andoyer(PlanarConfiguration(config.points * s), masses, a_exp)
    for label, value in base.residuals.items():
        assert scaled.residuals[label] == pytest.approx(
            value * s ** (2.0 - a_exp), rel=1e-9, abs=1e-13)


def test_relabeling_equivariance():
    angles = ChainAngles(2.0, 1.9, "plus")
    config = cyclic_from_angles(angles)
    verdict = la2_feasible(config, 3.0).feasible
    base = laura_andoyer(config, EQUAL, 3.0)
    shifted = laura_andoyer(config.permuted(1), EQUAL, 3.0)
    # the residual multiset is preserved under the cyclic relabeling
    a = sorted(abs(v) for v in base.residuals.values())
    b = sorted(abs(v) for v in shifted.residuals.values())
    assert np.allclose(a, b, rtol=1e-9, atol=1e-12)
    assert la2_feasible(config.permuted(1), 3.0).feasible == verdict


# ---------------------------------------------------------------------------
# mutual-distance system

def test_pentagon_ac_residuals_vanish_with_fitted_multiplier():
    report = albouy_chenciner_f(PENTAGON, EQUAL, 3.0)
    assert len(report.residuals) == 20
    assert report.max_abs <= 1e-12
    assert report.meta["lambda_tilde"] == pytest.approx(5.0 ** -0.5, rel=1e-12)


def test_ac_accepts_distance_table():
    table = mutual_distances(PENTAGON).table
    report = albouy_chenciner_f(table, EQUAL.as_array(), 2.0)
    assert report.max_abs <= 1e-12


def test_symmetrized_identity_g_equals_f_plus_f():
    rng = np.random.default_rng(9)
    for _ in range(50):
        config = PlanarConfiguration(rng.normal(size=(5, 2)))
        masses = rng.uniform(0.2, 3.0, 5)
        lam = rng.uniform(0.1, 2.0)
        f = albouy_chenciner_f(config, masses, 3.0, lambda_tilde=lam).residuals
        g = symmetric_g(config, masses, 3.0, lambda_tilde=lam).residuals
        for i in range(1, 6):
            for j in range(i + 1, 6):
                combined = f[f"f{i}{j}"] + f[f"f{j}{i}"]
                assert g[f"g{i}{j}"] == pytest.approx(combined, rel=1e-13, abs=1e-13)


def test_fitted_multiplier_minimizes_residual():
    rng = np.random.default_rng(31)
    config = PlanarConfiguration(rng.normal(size=(5, 2)))
    masses = rng.uniform(0.5, 2.0, 5)
    table = mutual_distances(config).table
    lam = fit_lambda_tilde(table, masses, 3.0)
    best = sum(v ** 2 for v in albouy_chenciner_f(
        table, masses, 3.0, lambda_tilde=lam).residuals.values())
    for delta in (-1e-3, 1e-3):
        worse = sum(v ** 2 for v in albouy_chenciner_f(
            table, masses, 3.0, lambda_tilde=lam + delta).residuals.values())
        assert worse >= best


# ---------------------------------------------------------------------------
# mass-coefficient matrix and kernel

def test_pentagon_matrix_annihilates_equal_masses():
    m = mass_coefficient_matrix(SymmetricShape(regular_pentagon_y4(), "A"), 3.0)
    assert m.shape == (4, 3)
    assert np.max(np.abs(m @ np.ones(3))) <= 1e-12
    reduced = mass_coefficient_matrix(
        SymmetricShape(regular_pentagon_y4(), "A"), 3.0, reduced=True)
    assert np.max(np.abs(reduced @ np.ones(3))) <= 1e-12
    assert reduced[2, 2] == 0.0


def test_square_endpoint_matrix_structure():
    m = mass_coefficient_matrix(SymmetricShape(square_endpoint_y4(), "A"), 3.0)
    assert m[0, 0] == 0.0
    # r35 = 1 kills every coefficient carrying a (R35 - 1) factor
    assert m[0, 1] == pytest.approx(0.0, abs=1e-12)
    assert m[3, 1] == pytest.approx(0.0, abs=1e-12)
    assert abs(m[0, 2]) > 1e-3


def test_collinear_endpoint_matrix_structure():
    m = mass_coefficient_matrix(SymmetricShape(collinear_endpoint_y4(), "A"), 3.0)
    # Delta134 = 0 kills the (R13 - 1) Delta134 entries
    assert m[1, 1] == pytest.approx(0.0, abs=1e-12)
    assert m[0, 2] == pytest.approx(0.0, abs=1e-12)


def test_reduced_matrix_requires_nonzero_area():
    with pytest.raises(ZeroDivisionError):
        mass_coefficient_matrix(
            SymmetricShape(collinear_endpoint_y4(), "A"), 3.0, reduced=True)


def test_kernel_at_pentagon_is_equal_masses():
    res = mass_kernel(mass_coefficient_matrix(
        SymmetricShape(regular_pentagon_y4(), "A"), 3.0))
    assert res.feasible and res.positive
    assert np.allclose(res.masses.as_array(), 1.0, atol=1e-9)


def test_kernel_at_vortex_root_matches_reported_masses():
    res = mass_kernel(mass_coefficient_matrix(
        SymmetricShape(A2_ROOT_VORTEX, "A"), 2.0))
    assert res.feasible and res.positive
    assert res.masses.m4 == pytest.approx(0.34199, abs=1e-4)
    assert res.masses.m3 == pytest.approx(2.32, abs=2e-2)
    assert res.masses.m5 == res.masses.m3


def test_generic_shape_has_no_kernel():
    res = mass_kernel(mass_coefficient_matrix(SymmetricShape(0.25, "A"), 3.0))
    assert not res.feasible
    assert res.rank == 3


def test_mass_kernel_shape_guard():
    with pytest.raises(ValueError):
        mass_kernel(np.zeros((3, 3)))


# ---------------------------------------------------------------------------
# two-mass feasibility and regions

def test_pentagon_and_star_are_feasible():
    star = cyclic_from_angles(ChainAngles(math.pi / 5, math.pi / 5, "plus"))
    assert la2_feasible(PENTAGON, 3.0).feasible
    assert la2_feasible(star, 3.0).feasible


def test_two_mass_pairs_cover_all_masses():
    seen = sorted(m for pair in TWO_MASS_PAIRS.values() for m in pair)
    assert seen == [1, 1, 2, 2, 3, 3, 4, 4, 5, 5]


def test_zero_coefficient_pairing_is_infeasible():
    # r35 = 1 zeroes exactly one coefficient of one equation
    config = symmetric_coords(SymmetricShape(square_endpoint_y4(), "A"))
    verdict = la2_feasible(config, 3.0)
    assert not verdict.feasible
    bad = [c for c in verdict.certificates if not c.admissible]
    assert any(min(abs(x) for x in c.coefficients) <= 1e-10 for c in bad)


def test_one_short_diagonal_convex_is_infeasible():
    angles = ChainAngles(0.8449733887036153, 3.1371275432397496, "plus")
    config = cyclic_from_angles(angles)
    table = mutual_distances(config)
    assert convex_position(config)
    assert sum(table.distance(i, j) < 1.0 for i, j in DIAGONALS) == 1
    assert not la2_feasible(config, 3.0).feasible


def test_feasibility_is_scale_invariant():
    config = cyclic_from_angles(ChainAngles(2.0, 1.9, "plus"))
    verdict = la2_feasible(config, 3.0).feasible
    scaled = PlanarConfiguration(config.points * 4.2)
    assert la2_feasible(scaled, 3.0).feasible == verdict


def test_la2_rejects_non_equilateral():
    rng = np.random.default_rng(13)
    with pytest.raises(ValueError):
        la2_feasible(PlanarConfiguration(rng.normal(size=(5, 2))), 3.0)


def test_region_classification_of_landmarks():
    assert region_classify(
        ChainAngles(3 * math.pi / 5, 3 * math.pi / 5, "plus"), 3.0).region == "I"
    assert region_classify(
        ChainAngles(math.pi / 5, math.pi / 5, "plus"), 3.0).region == "II"


def test_region_three_witness():
    res = region_classify(ChainAngles(0.903082161, 4.922594842, "plus"), 3.0)
    assert res.region == "III"
    assert res.interior_label == 3


def test_region_three_conditions_hold_for_witness():
    config = cyclic_from_angles(ChainAngles(0.903082161, 4.922594842, "plus"))
    # relabel so the interior body sits at position 5, mirroring if needed
    from pentacc.geometry import interior_angle, interior_points, oriented_area
    p = interior_points(config)[0]
    for candidate in (config.permuted(p % 5), config.reflected().permuted(p % 5)):
        t123 = interior_angle(candidate, 1, 2, 3)
        t234 = interior_angle(candidate, 2, 3, 4)
        if (t123 + t234 <= 3 * math.pi + 1e-9
                and t123 <= 5 * math.pi / 3 + 1e-9
                and t234 <= 5 * math.pi / 3 + 1e-9
                and oriented_area(candidate, 1, 3, 5) >= -1e-9
                and oriented_area(candidate, 2, 4, 5) >= -1e-9):
            break
    else:
        pytest.fail("no relabeling satisfied the interior-body conditions")


def test_region_unrealizable_raises():
    with pytest.raises(OutOfDomainError):
        region_classify(ChainAngles(math.pi, math.pi, "plus"), 3.0)


def test_regions_cover_all_interior_labels():
    rng = np.random.default_rng(5)
    labels = set()
    for _ in range(4000):
        t12, t23 = rng.uniform(0.05, 2 * math.pi - 0.05, 2)
        for closure in ("plus", "minus"):
            try:
                res = region_classify(ChainAngles(float(t12), float(t23), closure), 3.0)
            except OutOfDomainError:
                continue
            if res.region == "III":
                labels.add(res.interior_label)
    assert labels == {1, 2, 3, 4, 5}


def test_a_quantity_self_pair_convention():
    # the k = j term of the mutual-distance equations uses A(i,j,j) = -2 r_ij^2
    rng = np.random.default_rng(55)
    config = PlanarConfiguration(rng.normal(size=(5, 2)))
    r = mutual_distances(config).table
    for i in range(5):
        for j in range(5):
            if i != j:
                aijj = r[j, j] ** 2 - r[i, j] ** 2 - r[i, j] ** 2
                assert aijj == pytest.approx(-2.0 * r[i, j] ** 2, rel=1e-14)

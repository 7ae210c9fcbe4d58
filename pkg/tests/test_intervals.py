"""Interval arithmetic, dual numbers, and second-order jets."""

import math

import numpy as np
import pytest

from pentacc.intervals import Box, Dual, Interval, IntervalDomainError, Jet2


def test_addition_example():
    s = Interval(1, 2) + Interval(3, 4)
    assert s.lo <= 4.0 <= 6.0 <= s.hi
    assert s.width == pytest.approx(2.0, abs=1e-14)


def test_negative_power_tight():
    p = Interval(2, 2) ** (-3)
    assert p.contains(0.125)
    assert p.width <= 2 * math.ulp(0.125)


def test_point_and_around():
    assert Interval.point(1.5).width == 0.0
    a = Interval.around(1.5)
    assert a.lo < 1.5 < a.hi


def test_division_by_zero_interval_raises():
    with pytest.raises(IntervalDomainError):
        Interval(1, 2) / Interval(-1, 1)


def test_empty_intersection_raises():
    with pytest.raises(IntervalDomainError):
        Interval(0, 1).intersect(Interval(2, 3))


def test_sqrt_domain():
    s = Interval(-1e-18, 4.0).sqrt()
    assert s.lo == 0.0 and s.contains(2.0)
    with pytest.raises(IntervalDomainError):
        Interval(-2.0, -1.0).sqrt()


def test_log_domain():
    with pytest.raises(IntervalDomainError):
        Interval(0.0, 1.0).log()


def _apply(op, x, y):
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    if op == "*":
        return x * y
    return x / y


def test_randomized_inclusion():
    rng = np.random.default_rng(2024)
    ops = "+-*/"
    violations = 0
    for _ in range(20000):
        a, b = sorted(rng.uniform(-10, 10, 2))
        c, d = sorted(rng.uniform(-10, 10, 2))
        x = Interval(a, b)
        y = Interval(c, d)
        op = ops[rng.integers(0, 4)]
        if op == "/" and y.contains_zero():
            continue
        result = _apply(op, x, y)
        px = rng.uniform(a, b)
        py = rng.uniform(c, d)
        if not result.contains(_apply(op, px, py)):
            violations += 1
    assert violations == 0


def test_inclusion_monotonicity():
    rng = np.random.default_rng(77)
    for _ in range(500):
        a, b = sorted(rng.uniform(0.1, 5.0, 2))
        inner = Interval(a, b)
        outer = Interval(a - 0.05, b + 0.05)
        for f in (lambda t: t.sqrt(), lambda t: t.exp(), lambda t: t.log(),
                  lambda t: t ** (-2.5), lambda t: t * t - 3.0 * t):
            assert f(inner).subset_of(f(outer))


def test_power_with_interval_exponent_contains_samples():
    rng = np.random.default_rng(123)
    base = Interval(0.3, 2.4)
    expo = Interval(-4.0, -2.0)
    enclosure = base ** expo
    for _ in range(2000):
        x = rng.uniform(base.lo, base.hi)
        e = rng.uniform(expo.lo, expo.hi)
        assert enclosure.contains(x ** e)


def test_abs_and_integer_powers():
    assert abs(Interval(-3, -1)).lo == 1.0
    assert abs(Interval(-2, 5)).lo == 0.0
    sq = Interval(-2, 3) ** 2
    assert sq.lo == 0.0 and sq.contains(9.0)


def test_box_split_and_validation():
    box = Box(Interval(0.2, 0.4), Interval(2.0, 3.0))
    l, r = box.split_coord(0)
    assert l.y4.hi == r.y4.lo
    l, r = box.split_coord(1)
    assert l.a.hi == r.a.lo
    with pytest.raises(ValueError):
        Box(Interval(0.2, 0.4), Interval(1.0, 3.0))


# ---------------------------------------------------------------------------
# duals

def test_dual_polynomial_derivative():
    x = Dual(1.7, 1.0)
    y = x * x * x - 2.0 * x + 5.0
    assert y.val == pytest.approx(1.7 ** 3 - 2 * 1.7 + 5)
    assert y.dot == pytest.approx(3 * 1.7 ** 2 - 2)


def test_dual_quotient_and_sqrt():
    x = Dual(2.0, 1.0)
    y = (x * x + 1.0) / x
    assert y.dot == pytest.approx(1.0 - 1.0 / 4.0)
    s = x.sqrt()
    assert s.dot == pytest.approx(0.5 / math.sqrt(2.0))


def test_dual_power_with_real_exponent():
    x = Dual(1.3, 1.0)
    y = x ** (-2.7)
    assert y.dot == pytest.approx(-2.7 * 1.3 ** -3.7)


def test_dual_over_intervals():
    x = Dual(Interval(1.0, 1.1), Interval.point(1.0))
    y = x * x
    assert y.val.contains(1.05 ** 2)
    assert y.dot.contains(2.0 * 1.05)


# ---------------------------------------------------------------------------
# jets

def _fd2(f, y, a, h=1e-5):
    fyy = (f(y + h, a) - 2 * f(y, a) + f(y - h, a)) / h ** 2
    fya = (f(y + h, a + h) - f(y + h, a - h)
           - f(y - h, a + h) + f(y - h, a - h)) / (4 * h * h)
    return fyy, fya


def test_jet_second_derivatives_match_finite_differences():
    def g(y, a):
        return (y ** 2 + 1.0) ** (-a) + y * a

    y0, a0 = 0.8, 2.7
    jet = (Jet2.variable_y(y0) ** 2 + 1.0) ** (-Jet2.variable_a(a0)) \
        + Jet2.variable_y(y0) * Jet2.variable_a(a0)
    fyy, fya = _fd2(g, y0, a0)
    assert jet.v == pytest.approx(g(y0, a0), rel=1e-12)
    assert jet.dyy == pytest.approx(fyy, rel=1e-5)
    assert jet.dya == pytest.approx(fya, rel=1e-5)


def test_jet_sqrt_and_division():
    def g(y, a):
        return math.sqrt(y + a) / (y * a)

    y0, a0 = 1.4, 2.2
    jet = (Jet2.variable_y(y0) + Jet2.variable_a(a0)).sqrt() \
        / (Jet2.variable_y(y0) * Jet2.variable_a(a0))
    fyy, fya = _fd2(g, y0, a0)
    assert jet.v == pytest.approx(g(y0, a0), rel=1e-12)
    assert jet.dyy == pytest.approx(fyy, rel=1e-4)
    assert jet.dya == pytest.approx(fya, rel=1e-4)


def test_jet_interval_components_enclose_point_values():
    y_iv, a_iv = Interval(0.7, 0.9), Interval(2.0, 3.0)
    jet = (Jet2.variable_y(y_iv) ** 2 + 1.0) ** (-Jet2.variable_a(a_iv))
    rng = np.random.default_rng(11)
    for _ in range(200):
        y = rng.uniform(y_iv.lo, y_iv.hi)
        a = rng.uniform(a_iv.lo, a_iv.hi)
        assert jet.v.contains((y ** 2 + 1.0) ** (-a))

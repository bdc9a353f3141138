# tests for scales, generalized numbers and valuations


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N812, N813, N815, N816, N818, N999


import math

import numpy as np
import pytest

from utils_Colombeau.utils_CGF_classes import ErrorDomain, ErrorGrid
from utils_Colombeau.utils_CGF_scale import (
    DEFAULT_FIT_TOLERANCE, EpsGrid, GenNumber, LogNet, ScaleFn, classify, estimate_log_corrected_valuation,
    estimate_valuation, is_slow_scale, log_magnitude, make_geometric_grid, monomial, parse_log_net, parse_net,
    sharp_distance, ultra_norm
)



def test_geometric_grid(eps_grid):
    assert len(eps_grid) == 21
    assert eps_grid.epsilons[0] == 0.0625
    assert eps_grid.epsilons[-1] == pytest.approx(2.0**-24)
    assert eps_grid.tail_window(0.5) == (10, 21)

@pytest.mark.parametrize(("eps0", "ratio", "count"), [(0.0, 0.5, 4), (1.5, 0.5, 4), (0.5, 1.0, 4), (0.5, 0.5, 0)])
def test_geometric_grid_rejects(eps0, ratio, count):
    with pytest.raises(ErrorGrid):
        make_geometric_grid(eps0, ratio, count)

def test_grid_must_decrease():
    with pytest.raises(ErrorGrid):
        EpsGrid((0.5, 0.5, 0.25))


def test_monomial_valuation(eps_grid):
    estimate = estimate_valuation(monomial(eps_grid, 3.0, 2.0))
    assert estimate.b_hat == pytest.approx(2.0, abs=1e-9)
    assert estimate.fit_residual < 1e-9
    assert not estimate.infinite

def test_zero_net(eps_grid):
    zero = GenNumber(eps_grid, np.zeros(len(eps_grid)))
    assert estimate_valuation(zero).infinite
    assert ultra_norm(zero) == 0.0
    assert classify(zero) == "negligible"

def test_ultra_norm_and_distance(eps_grid):
    u = monomial(eps_grid, 1.0, 1.5)
    assert ultra_norm(u) == pytest.approx(math.exp(-1.5), rel=1e-9)
    assert sharp_distance(u, u) == 0.0

def test_too_few_points():
    with pytest.raises(ErrorGrid):
        estimate_valuation(monomial(make_geometric_grid(0.5, 0.5, 4), 1.0, 1.0))


def test_classify(eps_grid, coarse_eps_grid):
    assert classify(monomial(eps_grid, 1.0, -3.0)) == "moderate"
    assert classify(monomial(eps_grid, 1.0, 25.0)) == "negligible"
    assert classify(parse_net("exp(1/eps)", coarse_eps_grid)) == "neither"

@pytest.mark.parametrize("b", [-1.5, -0.3, 0.0, 0.5, 2.0, 25.0])
@pytest.mark.parametrize("c", [5.0, -2.0, 1j, 1e-6])
def test_monomial_valuations(eps_grid, b, c):
    u = monomial(eps_grid, c, b)
    assert estimate_valuation(u).b_hat == pytest.approx(b, abs=1e-8)
    assert ultra_norm(u) == pytest.approx(math.exp(-b), rel=1e-8)
    assert classify(u) == ("negligible" if b >= 20 else "moderate")

def test_sum_and_product_rules(eps_grid, coarse_eps_grid):
    eps1, eps2 = monomial(eps_grid, 1.0, 1.0), monomial(eps_grid, 1.0, 2.0)
    assert estimate_valuation(eps1 + eps2).b_hat == pytest.approx(1.0, abs=1e-3)
    assert estimate_valuation(eps1 * eps2).b_hat == pytest.approx(3.0, abs=1e-9)
    assert estimate_valuation(eps2 + monomial(eps_grid, 1.0, 3.0)).b_hat == pytest.approx(2.0, abs=DEFAULT_FIT_TOLERANCE)
    # cancellation of the leading terms raises the valuation above the minimum
    u = monomial(coarse_eps_grid, 1.0, 1.0)
    v = monomial(coarse_eps_grid, -1.0, 1.0) + monomial(coarse_eps_grid, 1.0, 5.0)
    assert estimate_valuation(u + v).b_hat == pytest.approx(5.0, abs=1e-6)

def test_classify_beyond_float_range(eps_grid):
    u = parse_log_net("exp(1/eps)", eps_grid)
    assert u.positive
    assert classify(u) == "neither"
    assert estimate_valuation(u).b_hat < -1e5
    assert ultra_norm(u) == math.inf
    assert not is_slow_scale(u)

def test_log_net(eps_grid):
    u = monomial(eps_grid, -3.0, 1.5)
    w = log_magnitude(u)
    assert not w.positive
    np.testing.assert_allclose(w.logabs, np.log(3.0) + 1.5 * eps_grid.logeps)
    assert estimate_valuation(w).b_hat == pytest.approx(estimate_valuation(u).b_hat, abs=1e-12)
    assert log_magnitude(parse_net("log", eps_grid)).positive
    assert is_slow_scale(parse_log_net("log^2", eps_grid))
    zero = LogNet(eps_grid, np.full(len(eps_grid), -np.inf))
    assert estimate_valuation(zero).infinite
    assert classify(zero) == "negligible"
    with pytest.raises(ErrorDomain):
        is_slow_scale(w)

@pytest.mark.parametrize("logabs", [np.inf, np.nan])
def test_log_net_rejects(eps_grid, logabs):
    with pytest.raises(ErrorDomain):
        LogNet(eps_grid, np.full(len(eps_grid), logabs))
    with pytest.raises(ErrorGrid):
        LogNet(eps_grid, np.zeros(3))


def test_log_corrected_valuation(eps_grid):
    eps = eps_grid.array
    u = GenNumber(eps_grid, eps**0.5 * np.log(1.0 / eps) ** 2)
    estimate = estimate_log_corrected_valuation(u)
    assert estimate.b_hat == pytest.approx(0.5, abs=1e-8)
    assert estimate.log_power == pytest.approx(2.0, abs=1e-8)

def test_slow_scale(eps_grid):
    assert is_slow_scale(parse_net("log", eps_grid))
    assert is_slow_scale(parse_net("log^3", eps_grid))
    assert is_slow_scale(parse_net("const", eps_grid))
    assert not is_slow_scale(monomial(eps_grid, 1.0, -1.0))
    assert not is_slow_scale(parse_net("const:2", eps_grid), lower_bound=3.0)

def test_slow_scale_needs_positive(eps_grid):
    with pytest.raises(ErrorDomain):
        is_slow_scale(monomial(eps_grid, -1.0, 0.0))

@pytest.mark.parametrize(("expression", "expected"), [
    ("log", True),
    ("log^2", True),
    ("const", True),
    ("const:3", True),
    ("eps^-0.3", False),
    ("eps^-0.5", False),
    ("eps^-1", False),
])
def test_slow_scale_table(eps_grid, expression, expected):
    assert is_slow_scale(parse_net(expression, eps_grid)) is expected

@pytest.mark.parametrize("first", ["log", "log^2", "log^0.5", "const:3"])
@pytest.mark.parametrize("second", ["log", "log^3", "const:0.5"])
def test_slow_scale_closure(eps_grid, first, second):
    w, v = parse_net(first, eps_grid), parse_net(second, eps_grid)
    assert is_slow_scale(w * v)
    for p in range(1, 6):
        assert is_slow_scale(w**p)


def random_net(rng, grid, exponents):
    """sum of two monomials with distinct exponents and coefficients of modulus in [0.5, 2]"""
    a = rng.choice(exponents, size=2, replace=False)
    c = rng.uniform(0.5, 2.0, size=2) * np.exp(2j * np.pi * rng.uniform(size=2))
    return GenNumber(grid, c[0] * grid.array ** a[0] + c[1] * grid.array ** a[1])

def test_valuation_rules_randomized(eps_grid):
    rng = np.random.default_rng(20240611)
    # integer exponents for u, half-integer exponents for v, so leading terms never cancel
    integers = np.arange(-3.0, 4.0)
    halves = np.arange(-3.0, 3.0) + 0.5
    tol = DEFAULT_FIT_TOLERANCE
    for _ in range(1000):
        u, v = random_net(rng, eps_grid, integers), random_net(rng, eps_grid, halves)
        bu, bv = estimate_valuation(u).b_hat, estimate_valuation(v).b_hat
        assert estimate_valuation(u + v).b_hat >= min(bu, bv) - tol
        assert estimate_valuation(u * v).b_hat >= bu + bv - tol
        assert ultra_norm(u + v) <= max(ultra_norm(u), ultra_norm(v)) * (1.0 + tol)
        b = rng.uniform(-2.0, 2.0)
        scaled = monomial(eps_grid, rng.uniform(0.5, 2.0), b) * u
        assert ultra_norm(scaled) == pytest.approx(math.exp(-b) * ultra_norm(u), rel=1e-9)

def test_classify_monotone(eps_grid):
    rng = np.random.default_rng(7)
    for b in rng.uniform(-30.0, 30.0, size=200):
        verdict = classify(monomial(eps_grid, 1.0, b))
        assert verdict == ("negligible" if b >= 20 else "moderate" if b >= -10 else "neither")


def test_arithmetic(eps_grid):
    u = monomial(eps_grid, 2.0, 1.0)
    v = monomial(eps_grid, 1.0, 1.0)
    np.testing.assert_allclose((u - v).values, v.values)
    np.testing.assert_allclose((u * v).values, 2.0 * eps_grid.array**2)
    np.testing.assert_allclose((u / v).values, 2.0)
    np.testing.assert_allclose((3 + u).values, 3 + 2.0 * eps_grid.array)

def test_grid_mismatch(eps_grid, short_eps_grid):
    with pytest.raises(ErrorGrid):
        monomial(eps_grid, 1.0, 1.0) + monomial(short_eps_grid, 1.0, 1.0)

def test_non_finite_values(eps_grid):
    with pytest.raises(ErrorDomain):
        parse_net("exp(1/eps)", eps_grid)

def test_json(short_eps_grid):
    u = monomial(short_eps_grid, 1.0 + 2.0j, 0.5)
    v = GenNumber.from_json(u.to_json())
    assert v.grid == u.grid
    np.testing.assert_array_equal(v.values, u.values)


@pytest.mark.parametrize(("expression", "expected"), [
    ("eps^2", lambda e: e**2),
    ("2*eps^3", lambda e: 2.0 * e**3),
    ("eps^(-1)", lambda e: 1.0 / e),
    ("log", lambda e: np.log(1.0 / e)),
    ("log^2", lambda e: np.log(1.0 / e) ** 2),
    ("const:3", lambda e: np.full_like(e, 3.0)),
])
def test_parse_net(short_eps_grid, expression, expected):
    np.testing.assert_allclose(parse_net(expression, short_eps_grid).real, expected(short_eps_grid.array))

def test_parse_net_unknown(short_eps_grid):
    with pytest.raises(ErrorDomain):
        parse_net("sin(eps)", short_eps_grid)


def test_scales(short_eps_grid):
    np.testing.assert_allclose(ScaleFn.parse("pow:1").gammas(short_eps_grid), 1.0 / short_eps_grid.array)
    np.testing.assert_allclose(ScaleFn.parse("log+1").gammas(short_eps_grid), np.log(1.0 / short_eps_grid.array) + 1)
    assert ScaleFn.parse("const:2").tag == "const:2"

@pytest.mark.parametrize("tag", ["pow:-1", "const:0", "sqrt", "pow:x"])
def test_scale_tags_rejected(tag):
    with pytest.raises(ErrorDomain):
        ScaleFn.parse(tag)

def test_log_scale_at_one():
    with pytest.raises(ErrorGrid):
        ScaleFn.parse("log").gammas(make_geometric_grid(1.0, 0.5, 8))

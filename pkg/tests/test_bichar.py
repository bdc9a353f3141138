# tests for coefficient fields, bicharacteristics and the Hamilton flow


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N812, N813, N815, N816, N818, N999


import math

import numpy as np
import pytest

from utils_Colombeau.utils_CGF_bichar import (
    CoeffField, check_log_type, gronwall_check, hamilton_flow, integrate_bichar, limit_directions, moderateness,
    null_residual, rk4_order_factor, rk4_step
)
from utils_Colombeau.utils_CGF_checks import check_bichar
from utils_Colombeau.utils_CGF_classes import ErrorDomain, ErrorGrid
from utils_Colombeau.utils_CGF_scale import ScaleFn
from utils_Colombeau.utils_CGF_transport import build_theta, hs_eps_grid



def test_rk4_step():
    y = rk4_step(lambda t, y: y, 0.0, np.ones(1), 0.1)
    assert y[0] == pytest.approx(math.exp(0.1), rel=1e-6)


def test_constant_field(short_eps_grid):
    c = CoeffField.constant(short_eps_grid, 1.0)
    curve = integrate_bichar(c, 0.0, 1.0, t_span=(0.0, 1.0), dt=0.01)
    assert curve.x.shape == (12, 101, 1)
    np.testing.assert_allclose(curve.x[:, :, 0], np.broadcast_to(curve.t, (12, 101)), atol=1e-12)
    np.testing.assert_allclose(curve.xi, 1.0)
    np.testing.assert_allclose(curve.tau, -1.0)
    assert not curve.truncated
    assert not curve.fd_used
    assert check_bichar(curve, c)
    assert np.nanmax(null_residual(curve, c)) <= 1e-12

def test_constant_field_2d(short_eps_grid):
    c = CoeffField.constant(short_eps_grid, (1.0, -2.0), n=2)
    curve = integrate_bichar(c, (0.0, 0.0), (1.0, 1.0), t_span=(0.0, 0.5), dt=0.01, verify=False)
    np.testing.assert_allclose(curve.x[:, -1, :], np.broadcast_to([0.5, -1.0], (12, 2)), atol=1e-12)
    np.testing.assert_allclose(curve.tau, 1.0)
    assert list(curve.to_frame().columns) == ["eps", "t", "x0", "xi0", "x1", "xi1", "tau", "residual"]


def test_null_precondition(short_eps_grid):
    c = CoeffField.constant(short_eps_grid, 1.0)
    with pytest.raises(ErrorDomain):
        integrate_bichar(c, 0.0, 1.0, tau0=0.5)
    curve = integrate_bichar(c, 0.0, 1.0, tau0=0.5, waive_null=True, verify=False)
    np.testing.assert_allclose(curve.tau, 0.5)

@pytest.mark.parametrize(("t_span", "dt"), [((1.0, 0.0), 0.01), ((0.0, 1.0), 0.3), ((0.0, 1.0), -0.1)])
def test_time_span(short_eps_grid, t_span, dt):
    with pytest.raises(ErrorDomain):
        integrate_bichar(CoeffField.constant(short_eps_grid), 0.0, 1.0, t_span=t_span, dt=dt)

def test_initial_dimension(short_eps_grid):
    with pytest.raises(ErrorDomain):
        integrate_bichar(CoeffField.constant(short_eps_grid), (0.0, 1.0), 1.0)


def test_linear_field(short_eps_grid):
    c = CoeffField.linear(short_eps_grid)
    curve = integrate_bichar(c, 1.0, 1.0, t_span=(0.0, 1.0), dt=0.01)
    np.testing.assert_allclose(curve.x[0, :, 0], np.exp(curve.t), rtol=1e-8)
    np.testing.assert_allclose(curve.xi[0, :, 0], np.exp(-curve.t), rtol=1e-8)
    np.testing.assert_allclose(curve.tau, -1.0)
    assert np.all(curve.halving_error < 1e-8)
    assert check_bichar(curve, c)

def test_rk4_order_factor(short_eps_grid):
    factor = rk4_order_factor(CoeffField.linear(short_eps_grid), 1.0, 1.0)
    assert factor.shape == (12,)
    assert np.all((factor >= 15.0) & (factor <= 19.0))


def test_hamilton_flow(short_eps_grid):
    c = CoeffField.linear(short_eps_grid)
    points = [[1.0, 1.0], [2.0, 0.5]]
    identity = hamilton_flow(c, 0.0, points)
    assert identity.shape == (12, 2, 2)
    np.testing.assert_array_equal(identity[5], points)
    flowed = hamilton_flow(c, 1.0, points, jobs=2)
    expected = [[math.e, 1.0 / math.e], [2.0 * math.e, 0.5 / math.e]]
    for k in range(len(short_eps_grid)):
        np.testing.assert_allclose(flowed[k], expected, rtol=1e-9)

def test_hamilton_flow_components(short_eps_grid):
    with pytest.raises(ErrorDomain):
        hamilton_flow(CoeffField.linear(short_eps_grid), 1.0, [[1.0, 1.0, 1.0]])


def test_gronwall(short_eps_grid):
    for c in (CoeffField.constant(short_eps_grid), CoeffField.linear(short_eps_grid)):
        curve = integrate_bichar(c, 1.0, 1.0, t_span=(0.0, 1.0), dt=0.01, verify=False)
        assert gronwall_check(curve, c).all()

def test_limit_directions(short_eps_grid):
    curve = integrate_bichar(CoeffField.constant(short_eps_grid), 0.0, 1.0, verify=False)
    directions = limit_directions(curve, 1.0)
    assert directions.shape == (12, 2)
    np.testing.assert_allclose(directions, np.broadcast_to([1.0, -1.0], (12, 2)) / math.sqrt(2.0))

def test_moderateness(short_eps_grid):
    curve = integrate_bichar(CoeffField.bump(short_eps_grid), 0.0, 1.0, verify=False)
    assert moderateness(curve) == "moderate"


def test_fd_jacobian(short_eps_grid):
    c = CoeffField("sin", 1, short_eps_grid, lambda k, x, t: np.sin(x))
    assert c.uses_fd
    x = np.asarray([[0.3], [1.0]])
    np.testing.assert_allclose(c.dadx(0, x, 0.0)[:, 0, 0], np.cos(x[:, 0]), atol=1e-8)
    np.testing.assert_allclose(c.divergence(0, x, 0.0), np.cos(x[:, 0]), atol=1e-8)

def test_time_dependent_fd(short_eps_grid):
    c = CoeffField("tx", 1, short_eps_grid, lambda k, x, t: t * x, jacobian=lambda k, x, t: np.full((*x.shape, 1), t),
                   t_independent=False)
    assert c.uses_fd
    np.testing.assert_allclose(c.dadt(0, np.asarray([[2.0]]), 0.5), [[2.0]], atol=1e-8)


def test_log_type(bump):
    theta = build_theta(bump,ScaleFn.parse("log"), hs_eps_grid())
    result = check_log_type(CoeffField.theta(theta), [(-1.0, 1.0)])
    assert result.passed
    assert result.log_power == pytest.approx(1.0, abs=0.05)
    assert check_log_type(CoeffField.constant(hs_eps_grid()), [(-1.0, 1.0)]).passed

def test_power_type_fails(bump):
    theta = build_theta(bump,ScaleFn.parse("pow:1"), hs_eps_grid())
    assert not check_log_type(CoeffField.theta(theta), [(-1.0, 1.0)]).passed


def test_null_residual_grid(short_eps_grid, eps_grid):
    curve = integrate_bichar(CoeffField.constant(short_eps_grid), 0.0, 1.0, verify=False)
    with pytest.raises(ErrorGrid):
        null_residual(curve, CoeffField.constant(eps_grid))

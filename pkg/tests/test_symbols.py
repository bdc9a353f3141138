# tests for symbol nets, micro-ellipticity and quantization


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N812, N813, N815, N816, N818, N999


import math

import numpy as np
import pytest

from utils_Colombeau.utils_CGF_classes import ErrorDomain
from utils_Colombeau.utils_CGF_genfun import GridFn, SpatialGrid, sample
from utils_Colombeau.utils_CGF_scale import ScaleFn
from utils_Colombeau.utils_CGF_symbols import (
    check_symbol_class, derivative_multiplier, ell_scan, japanese_symbol, micro_elliptic, nonchar_example,
    nonchar_inclusion_check, one_plus_cx2, oscillatory_pairing, parse_symbol, quantize_apply, symbol_derivative,
    transport_symbol, xi_symbol
)
from utils_Colombeau.utils_CGF_wavefront import WFReport, WFRow



def _ones(k, x):
    return np.ones_like(x)


def test_parse_symbol(short_eps_grid):
    assert parse_symbol("1+c*x^2", short_eps_grid).name == "1+c*x^2"
    assert parse_symbol("japanese:-2", short_eps_grid).order == -2.0
    assert parse_symbol("scaled-japanese:log:1", short_eps_grid).params["w"].grid == short_eps_grid
    assert parse_symbol("transport:tau+theta*xi", short_eps_grid, coefficient=_ones).dimension == 2
    with pytest.raises(ErrorDomain):
        parse_symbol("transport:tau+theta*xi", short_eps_grid)
    with pytest.raises(ErrorDomain):
        parse_symbol("japanese:m", short_eps_grid)
    with pytest.raises(ErrorDomain):
        parse_symbol("laplace", short_eps_grid)

def test_negative_coefficient(short_eps_grid):
    with pytest.raises(ErrorDomain):
        one_plus_cx2(ScaleFn.parse("log").values(short_eps_grid) * -1.0)

def test_evaluate_dimension(short_eps_grid):
    a = xi_symbol(short_eps_grid)
    with pytest.raises(ErrorDomain):
        a.evaluate(0, (np.zeros(3), np.zeros(3)), (np.ones(3), np.ones(3)))


def test_symbol_derivative(short_eps_grid):
    a = one_plus_cx2(ScaleFn.parse("const:3").values(short_eps_grid))
    x = (np.linspace(-1.0, 1.0, 5),)
    xi = (np.full(5, 10.0),)
    np.testing.assert_allclose(symbol_derivative(a, 0, x, xi, (0,), (1,)), 6.0 * x[0], atol=1e-6)
    np.testing.assert_allclose(symbol_derivative(a, 0, x, xi, (0,), (2,)), 6.0, atol=1e-4)
    np.testing.assert_allclose(symbol_derivative(a, 0, x, xi, (1,), (0,)), 0.0, atol=1e-9)


def test_symbol_class(eps_grid):
    K = [(-1.0, 1.0)]
    assert check_symbol_class(parse_symbol("1+c*x^2", eps_grid), K)
    assert not check_symbol_class(parse_symbol("1+c*x^2", eps_grid, c_scale=ScaleFn.parse("pow:1")), K)
    assert check_symbol_class(japanese_symbol(eps_grid, 1.0), K)

def test_symbol_class_box(eps_grid):
    with pytest.raises(ErrorDomain):
        check_symbol_class(xi_symbol(eps_grid), [(-1.0, 1.0), (-1.0, 1.0)])


def test_micro_elliptic(eps_grid):
    report = micro_elliptic(parse_symbol("1+c*x^2", eps_grid), (0.0,), (1.0,))
    assert report.verdict
    assert report.r_slow and report.s_slow
    assert micro_elliptic(xi_symbol(eps_grid), (0.0,), (-1.0,)).verdict

def test_characteristic_direction(eps_grid):
    a = transport_symbol(_ones, eps_grid)
    characteristic = micro_elliptic(a, (0.0, 0.0), (1.0 / math.sqrt(2.0), -1.0 / math.sqrt(2.0)))
    assert not characteristic.verdict
    assert "vanishes" in characteristic.diagnostic
    assert characteristic.r_net is None
    assert micro_elliptic(a, (0.0, 0.0), (1.0, 1.0)).verdict

def test_micro_elliptic_dimension(eps_grid):
    with pytest.raises(ErrorDomain):
        micro_elliptic(xi_symbol(eps_grid), (0.0, 0.0), (1.0,))


def test_ell_scan_frame(eps_grid):
    table = ell_scan(xi_symbol(eps_grid), [(0.0,), (0.5,)], [(1.0,), (-1.0,)])
    frame = table.to_frame()
    assert len(frame) == 4
    assert frame["symbol"].unique().tolist() == ["xi"]
    assert frame["elliptic"].all()
    assert table.elliptic_at((0.5,), (-2.0,))
    with pytest.raises(ErrorDomain):
        table.elliptic_at((1.0,), (1.0,))


def test_inclusion_check(eps_grid):
    wf = WFReport([
        WFRow((0.0,), (1.0,), 0.0, "singular", 1.0),
        WFRow((0.0,), (-1.0,), math.pi, "regular", 0.0),
    ], "log")
    table = ell_scan(xi_symbol(eps_grid), [(0.0,)], [(1.0,), (-1.0,)])
    assert nonchar_inclusion_check(wf, table) == [((0.0,), (1.0,))]

def test_inclusion_check_characteristic(eps_grid):
    direction = (1.0 / math.sqrt(2.0), -1.0 / math.sqrt(2.0))
    wf = WFReport([WFRow((0.0, 0.0), direction, 7.0 * math.pi / 4.0, "singular", 1.0)], "log")
    table = ell_scan(transport_symbol(_ones, eps_grid), [(0.0, 0.0)], [direction])
    assert nonchar_inclusion_check(wf, table) == []


def test_nonchar_example():
    assert nonchar_example(ScaleFn.parse("log")).regular
    result = nonchar_example(ScaleFn.parse("pow:1"))
    assert not result.regular
    assert result.slope <= -0.4


def test_quantize_pointwise(line_grid, short_eps_grid):
    a = one_plus_cx2(ScaleFn.parse("const:2").values(short_eps_grid))
    u = sample(line_grid, short_eps_grid, lambda e, x: np.ones_like(x))
    v = quantize_apply(a, u)
    np.testing.assert_allclose(v[3], 1.0 + 2.0 * line_grid.axes[0] ** 2)

def test_quantize_multiplier(short_eps_grid):
    n = 256
    grid = SpatialGrid.line(0.0, 1.0, n)
    period = n * grid.h[0]
    omega = 2.0 * math.pi * 3.0 / period
    u = sample(grid, short_eps_grid, lambda e, x: np.sin(omega * x))
    v = quantize_apply(derivative_multiplier(short_eps_grid), u)
    assert v.is_real
    np.testing.assert_allclose(v[0], omega * np.cos(omega * grid.axes[0]), atol=1e-8)

def test_quantize_grid_mismatch(line_grid, eps_grid, short_eps_grid):
    u = GridFn(line_grid, short_eps_grid, np.zeros((len(short_eps_grid), 1024)))
    with pytest.raises(ErrorDomain):
        quantize_apply(xi_symbol(eps_grid), u)


def test_oscillatory_pairing_order(line_grid, short_eps_grid):
    u = sample(line_grid, short_eps_grid, lambda e, x: np.exp(-x * x))
    with pytest.raises(ErrorDomain):
        oscillatory_pairing(japanese_symbol(short_eps_grid, -1.0), u)
    with pytest.raises(ErrorDomain):
        oscillatory_pairing(japanese_symbol(short_eps_grid, -2.0), u, phase="x^2*xi")

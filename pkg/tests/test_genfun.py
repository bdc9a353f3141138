# tests for spatial grids, mollifiers and embedded distributions


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N812, N813, N815, N816, N818, N999


import numpy as np
import pytest
from scipy import integrate

from utils_Colombeau.utils_CGF_classes import ErrorDomain, ErrorGrid, ErrorResolvability
from utils_Colombeau.utils_CGF_genfun import (
    CombinationSpec, DeltaSpec, GenPoint, GridFn, HeavisideSpec, Mollifier, SmoothSpec, SpatialGrid, delta_kernel,
    derivative, embed, integrate_grid, is_ginfty, kernel_pairing, load_gridfn, parse_dist_spec, point_value,
    sample, save_gridfn, singular_support, support_of_point, ultra_seminorm
)
from utils_Colombeau.utils_CGF_scale import ScaleFn, make_geometric_grid



def test_spatial_grid():
    grid = SpatialGrid.plane(-1.0, 1.0, 65, 0.0, 2.0, 129)
    assert grid.dimension == 2
    assert grid.h == pytest.approx((2.0 / 64, 2.0 / 128))
    assert grid.points().shape == (65, 129, 2)
    assert grid.contains((0.0, 2.0))
    assert not grid.contains((1.5, 1.0))

@pytest.mark.parametrize(("mins", "maxs", "counts"), [
    ((-1.0,), (1.0,), (32,)),
    ((1.0,), (-1.0,), (128,)),
    ((0.0, 0.0, 0.0), (1.0, 1.0, 1.0), (64, 64, 64)),
])
def test_spatial_grid_rejects(mins, maxs, counts):
    with pytest.raises(ErrorGrid):
        SpatialGrid(mins, maxs, counts)


def test_mollifier(bump):
    mass, _ = integrate.quad(bump.rho, -1.0, 1.0)
    assert mass == pytest.approx(1.0, abs=1e-10)
    assert float(bump.cdf(0.0)) == 0.5
    assert float(bump.cdf(-1.0)) == 0.0
    assert float(bump.cdf(2.0)) == 1.0
    assert float(bump.rho(1.0)) == 0.0
    assert np.all(np.diff(bump.cdf(np.linspace(-1.0, 1.0, 201))) >= -1e-12)

def test_mollifier_tags():
    assert Mollifier.parse("bump").tag == "bump"
    assert Mollifier.parse("bump:2").sharpness == 2.0
    with pytest.raises(ErrorDomain):
        Mollifier.parse("gauss")
    with pytest.raises(ErrorDomain):
        Mollifier(-1.0)


def test_parse_dist_spec():
    assert parse_dist_spec({"type": "delta", "x0": [0.25]}) == DeltaSpec((0.25,))
    assert parse_dist_spec({"type": "delta", "x0": 0.0}, 2) == DeltaSpec((0.0, 0.0))
    assert parse_dist_spec({"type": "heaviside", "x0": 0.5, "orientation": "left"}) == HeavisideSpec(0.5, "left")
    assert isinstance(parse_dist_spec({"type": "smooth", "f": "gaussian"}), SmoothSpec)
    spec = parse_dist_spec({"type": "combination", "terms": [
        {"coef": 1.0, "spec": {"type": "delta", "x0": [0.0]}},
        {"coef": 2.0, "spec": {"type": "heaviside", "x0": 0.5}},
    ]})
    assert isinstance(spec, CombinationSpec)
    assert singular_support(spec) == [(0.0,), (0.5,)]

@pytest.mark.parametrize("data", [
    {"type": "dirac"},
    {"type": "delta", "x0": [0.0, 1.0]},
    {"type": "heaviside", "orientation": "up"},
    {"type": "smooth", "f": "tan"},
])
def test_parse_dist_spec_rejects(data):
    with pytest.raises(ErrorDomain):
        parse_dist_spec(data)


def test_embed_delta_mass(line_grid, short_eps_grid, log_scale, bump):
    u = embed(DeltaSpec((0.0,)), bump, log_scale, line_grid, short_eps_grid)
    assert u.samples.shape == (12, 1024)
    for k in range(len(short_eps_grid)):
        assert integrate_grid(line_grid, u[k]).real == pytest.approx(1.0, abs=1e-6)

def test_embed_heaviside(line_grid, short_eps_grid, log_scale, bump):
    u = embed(HeavisideSpec(0.0), bump, log_scale, line_grid, short_eps_grid)
    assert np.all((u.samples >= -1e-12) & (u.samples <= 1.0 + 1e-12))
    assert np.all(u.samples[:, 0] == 0.0)
    assert np.all(u.samples[:, -1] == 1.0)

def test_resolvability(line_grid, bump):
    eps = make_geometric_grid(0.0625, 0.5, 12)
    with pytest.raises(ErrorResolvability):
        embed(DeltaSpec((0.0,)), bump, ScaleFn.parse("pow:1"), line_grid, eps)


def test_ginfty_smooth(line_grid, short_eps_grid, log_scale, bump):
    u = embed(SmoothSpec(lambda x: np.exp(-x * x), "gaussian"), bump, log_scale, line_grid, short_eps_grid)
    result = is_ginfty(u, alpha_max=2)
    assert result.regular

def test_ginfty_delta_power_scale(line_grid, bump):
    eps = make_geometric_grid(0.25, 0.8, 12)
    u = embed(DeltaSpec((0.0,)), bump, ScaleFn.parse("pow:1"), line_grid, eps)
    result = is_ginfty(u, alpha_max=2)
    assert not result.regular
    assert result.slope < -0.5

def test_ginfty_order_limit(line_grid, short_eps_grid):
    u = sample(line_grid, short_eps_grid, lambda e, x: x)
    with pytest.raises(ErrorDomain):
        is_ginfty(u, alpha_max=5)


def test_derivative(line_grid, short_eps_grid):
    u = sample(line_grid, short_eps_grid, lambda e, x: x**2)
    np.testing.assert_allclose(derivative(u)[0], 2.0 * line_grid.axes[0], atol=1e-9)
    with pytest.raises(ErrorDomain):
        derivative(u, order=5)

@pytest.mark.parametrize(("order", "power", "expected"), [
    (2, 3, lambda x: 6.0 * x),
    (3, 4, lambda x: 24.0 * x),
    (4, 4, lambda x: np.full_like(x, 1.0)),
])
def test_derivative_single_stencil(line_grid, short_eps_grid, order, power, expected):
    u = sample(line_grid, short_eps_grid, lambda e, x: x**power / (24.0 if order == 4 else 1.0))
    x = line_grid.axes[0]
    result = derivative(u, order=order)[0].real
    # boundary nodes use one-sided stencils exact for polynomials of degree order + 1
    np.testing.assert_allclose(result[:3], expected(x[:3]), atol=1e-3)
    np.testing.assert_allclose(result[-3:], expected(x[-3:]), atol=1e-3)
    np.testing.assert_allclose(result, expected(x), atol=1e-3)

def test_derivative_second_order_accuracy(short_eps_grid):
    errors = []
    for n in (128, 256):
        grid = SpatialGrid.line(0.0, 1.0, n)
        u = sample(grid, short_eps_grid, lambda e, x: np.exp(x))
        errors.append(np.max(np.abs(derivative(u, order=2)[0].real - np.exp(grid.axes[0]))))
    assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.1)

def test_derivative_axis(short_eps_grid):
    grid = SpatialGrid.plane(-1.0, 1.0, 65, 0.0, 2.0, 129)
    u = sample(grid, short_eps_grid, lambda e, x, t: x**2 * t)
    mesh = grid.mesh()
    np.testing.assert_allclose(derivative(u, axis=1)[0].real, mesh[0] ** 2, atol=1e-9)
    np.testing.assert_allclose(derivative(u, axis=0, order=2)[0].real, 2.0 * mesh[1], atol=1e-6)

def test_ultra_seminorm_zero(line_grid, short_eps_grid):
    u = GridFn(line_grid, short_eps_grid, np.zeros((12, 1024)))
    assert ultra_seminorm(u, order=2) == 0.0


def test_point_value(line_grid, short_eps_grid):
    u = sample(line_grid, short_eps_grid, lambda e, x: x**2)
    value = point_value(u, GenPoint.constant(short_eps_grid, 0.3))
    np.testing.assert_allclose(value.real, 0.09, atol=1e-8)
    with pytest.raises(ErrorDomain):
        point_value(u, GenPoint.constant(short_eps_grid, 2.0))

def test_generalized_point_box(short_eps_grid):
    with pytest.raises(ErrorDomain):
        GenPoint.from_function(short_eps_grid, lambda e: 1.0 / e, box=((-1.0, 1.0),))

def test_support_of_point(short_eps_grid):
    eps = short_eps_grid.array
    box = ((0.0, 1.0),)
    assert support_of_point(GenPoint(short_eps_grid, 0.3 + eps), box, 0.25) == frozenset({(1,)})
    jumping = np.where(np.arange(len(eps)) % 2 == 0, 0.2, 0.6)
    assert support_of_point(GenPoint(short_eps_grid, jumping), box, 0.25) == frozenset({(0,), (2,)})
    assert support_of_point(GenPoint.constant(short_eps_grid, 1.5), box, 0.25) == frozenset()
    with pytest.raises(ErrorDomain):
        support_of_point(GenPoint.constant(short_eps_grid, 0.5), box, 0.0)

def test_delta_kernel_pairing(line_grid, short_eps_grid, log_scale, bump):
    kernel = delta_kernel(GenPoint.constant(short_eps_grid, 0.2), bump, log_scale, line_grid)
    u = sample(line_grid, short_eps_grid, lambda e, x: x)
    np.testing.assert_allclose(kernel_pairing(kernel, u).real, 0.2, atol=1e-6)


def test_save_load(tmp_path, line_grid, short_eps_grid, log_scale, bump):
    u = embed(DeltaSpec((0.0,)), bump, log_scale, line_grid, short_eps_grid)
    save_gridfn(u, tmp_path / "u", {"dist": "delta"})
    v = load_gridfn(tmp_path / "u")
    assert v.grid == u.grid
    assert v.eps == u.eps
    np.testing.assert_array_equal(v.samples, u.samples)

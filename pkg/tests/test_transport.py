# tests for the discontinuous coefficient transport problem


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N812, N813, N815, N816, N818, N999


import math

import numpy as np
import pytest

from utils_Colombeau.utils_CGF_bichar import CoeffField, integrate_bichar
from utils_Colombeau.utils_CGF_classes import ErrorDomain, ErrorGrid
from utils_Colombeau.utils_CGF_genfun import DeltaSpec, Mollifier, SpatialGrid
from utils_Colombeau.utils_CGF_scale import ScaleFn
from utils_Colombeau.utils_CGF_transport import (
    CauchySpec, build_theta, default_hs_points, find_t_eps, fit_t_eps, flow_wf_comparison, hs_cauchy_spec,
    hs_eps_grid, hs_region, kink_table, limit_cone_ok, mass_history, smooth_propagation_case, solve_characteristics,
    solve_upwind, solver_distance, stuck_profile
)
from utils_Colombeau.utils_CGF_wavefront import WFParams, WFReport, WFRow



@pytest.fixture(scope="module")
def theta():
    return build_theta(Mollifier(), ScaleFn.parse("log"), hs_eps_grid())

@pytest.fixture(scope="module")
def small_spec():
    return hs_cauchy_spec(eps=hs_eps_grid(2.0, 6.0, 4), grid=SpatialGrid.line(-4.0, 2.0, 256), T=3.0, nt=64, dt=0.01)

@pytest.fixture(scope="module")
def characteristics(small_spec):
    return solve_characteristics(small_spec)

@pytest.fixture(scope="module")
def upwind(small_spec):
    return solve_upwind(small_spec)



def test_hs_eps_grid():
    eps = hs_eps_grid()
    assert len(eps) == 15
    np.testing.assert_allclose(np.log(1.0 / eps.array), np.linspace(2.0, 6.0, 15), rtol=1e-12)

def test_theta_invariants(theta):
    for k in range(len(theta.eps)):
        assert float(theta.evaluate(k, 0.0)) == 0.5
        assert float(theta.evaluate(k, -1.0)) == 1.0
        assert float(theta.evaluate(k, 1.0)) == 0.0
        assert np.all(theta.derivative(k, np.linspace(-1.0, 1.0, 101)) <= 0.0)
    assert theta.gamma(0) == pytest.approx(2.0)
    assert theta.log_type_check().passed


def test_t_eps(theta):
    t_eps = find_t_eps(theta, 1.5)
    assert np.all(t_eps.real > 1.5)
    fit = fit_t_eps(theta, t_eps, 1.5)
    assert fit.monotone
    assert fit.r2 >= 0.95
    assert fit.C > 0

def test_t_eps_rejects(theta):
    with pytest.raises(ErrorDomain):
        find_t_eps(theta, 0.0)


@pytest.mark.parametrize("xi0", [1.0, -1.0])
def test_kink_table(theta, xi0):
    table, curve = kink_table(theta, 1.5, xi0)
    assert len(table.rows) == 15
    assert table.bounds_hold
    for row in table.rows:
        assert row["speed_at_t_eps"] == pytest.approx(0.5, abs=1e-6)
        assert row["tau0"] == pytest.approx(-xi0)
    assert table.threshold_before is not None
    assert limit_cone_ok(curve, 1.5)
    assert not limit_cone_ok(curve, 1.5, factor=0.5)
    frame = table.to_frame()
    assert frame.columns[0] == "convention"
    assert "xi_after_large" in frame.columns


def test_cauchy_spec_rejects(theta):
    grid = SpatialGrid.line(-4.0, 2.0, 256)
    with pytest.raises(ErrorGrid):
        CauchySpec(theta.coeff(), SpatialGrid.plane(-1.0, 1.0, 64, -1.0, 1.0, 64), DeltaSpec((0.0,)),
                   theta.mollifier, theta.scale)
    with pytest.raises(ErrorDomain):
        CauchySpec(theta.coeff(), grid, DeltaSpec((-1.5,)), theta.mollifier, theta.scale, T=-1.0)
    with pytest.raises(ErrorDomain):
        CauchySpec(theta.coeff(), grid, DeltaSpec((-1.5,)), theta.mollifier, theta.scale, s0=5.0)


def test_characteristics(characteristics):
    assert characteristics.solver == "characteristics"
    assert characteristics.field.samples.shape == (4, 256, 64)
    np.testing.assert_allclose(mass_history(characteristics), 1.0, atol=1e-2)

def test_upwind(upwind):
    assert upwind.solver == "upwind"
    mass = mass_history(upwind)
    np.testing.assert_allclose(mass, mass[:, :1], rtol=1e-10)
    np.testing.assert_allclose(mass[:, 0], 1.0, atol=1e-3)

def test_upwind_cfl(small_spec):
    with pytest.raises(ErrorDomain):
        solve_upwind(small_spec, cfl=1.5)

def test_solver_distance(characteristics, upwind):
    distance = solver_distance(upwind, characteristics)
    assert distance.shape == (4,)
    assert np.all(np.isfinite(distance))

def test_stuck(characteristics):
    profile = stuck_profile(characteristics, 3.0, 0.1, ScaleFn.parse("log"))
    assert profile.shape == (4,)
    assert np.all(profile <= 1e-9)

def test_slice(characteristics):
    u = characteristics.slice(1.0)
    assert u.grid.dimension == 1
    assert u.samples.shape == (4, 256)


def test_hs_points():
    points = default_hs_points()
    assert len(points) == 13
    labels = [hs_region(p, 1.5) for p in points]
    assert labels.count("line") == 3
    assert labels.count("kink") == 1
    assert labels.count("ridge") == 3
    assert labels.count("regular") == 6

@pytest.mark.parametrize(("point", "region"), [
    ((0.0, 1.5), "kink"),
    ((0.0, 2.0), "ridge"),
    ((-1.0, 0.5), "line"),
    ((1.0, 1.0), "regular"),
    ((0.0, 1.0), "regular"),
])
def test_hs_region(point, region):
    assert hs_region(point, 1.5) == region


def test_flow_comparison(short_eps_grid):
    x0 = (0.0, 1.5)
    wf = WFReport([
        WFRow(x0, (1.0, 0.0), 0.0, "singular", 1.0),
        WFRow(x0, (math.cos(7.0 * math.pi / 4.0), math.sin(7.0 * math.pi / 4.0)), 7.0 * math.pi / 4.0, "singular", 1.0),
        WFRow(x0, (0.0, 1.0), math.pi / 2.0, "regular", 0.0),
    ], "log")
    curve = integrate_bichar(CoeffField.constant(short_eps_grid), 0.0, 1.0, verify=False)
    comparison = flow_wf_comparison(wf, curve, x0, 1.0)
    assert [row["flow_covered"] for row in comparison.rows] == [False, True, False]
    assert comparison.deficiency == 1
    assert list(comparison.to_frame().columns) == ["angle", "xi", "tau", "singular", "flow_covered"]


@pytest.mark.slow
def test_smooth_propagation(short_eps_grid, bump, log_scale):
    grid = SpatialGrid.line(-2.0, 2.0, 512)
    report = smooth_propagation_case(
        CoeffField.constant(short_eps_grid), DeltaSpec((-0.5,)), [0.5, 1.0], grid, bump, log_scale,
        WFParams(log_scale),
    )
    flowed = [row for row in report.rows if not math.isnan(row["flow_x"])]
    assert len(flowed) == 4
    for row in flowed:
        assert row["flow_x"] == pytest.approx(row["t"] - 0.5, abs=1e-9)
        assert abs(row["wf_x"] - row["flow_x"]) <= 0.1
    assert report.to_frame().columns[0] == "coefficient"

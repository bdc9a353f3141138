# Colombeau generalized functions utilities
# transport - Cauchy problem D_t u + a D_x u + a' u = 0 per epsilon, mollified Heaviside example


# ThetaField       : Theta_eps = H(-.) * rho^eps in closed form via the mollifier antiderivative
# CauchySpec       : coefficient field, initial datum and space-time discretization
# SolutionField    : solution net over the (x, t) plane with solver tag and native mass history
# KinkTable        : per epsilon facts about the bicharacteristic through the coefficient jump

# The equation is solved in conservative form d_t u + d_x(a u) = 0. The primary
# solver transports values along characteristics; the upwind finite volume
# solver exists as an independent cross-check.


"""
Module provides the transport Cauchy problem with mollified Heaviside or smooth coefficients and its diagnostics.
"""


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N815, N816, N999
# boolean-type arguments
# ruff: noqa: FBT001, FBT002

# fmt: off



from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import logging
import math

import numpy as np
import pandas as pd
from scipy import integrate, stats

from utils_Colombeau.utils_CGF_bichar import (
    BicharCurve, CoeffField, LogTypeCheck, check_log_type, hamilton_flow, integrate_bichar, limit_directions, rk4_step
)
from utils_Colombeau.utils_CGF_classes import ErrorDomain, ErrorGrid, ErrorNumericalGuard, baseReportclass
from utils_Colombeau.utils_CGF_decorators import emap
from utils_Colombeau.utils_CGF_genfun import (
    DeltaSpec, DistSpec, GridFn, Mollifier, SpatialGrid, check_resolvability, mollified, singular_support
)
from utils_Colombeau.utils_CGF_scale import EpsGrid, GenNumber, ScaleFn, make_geometric_grid
from utils_Colombeau.utils_CGF_wavefront import WFParams, WFReport, direction_grid, wf_scan



logger = logging.getLogger(__name__)

DEFAULT_S0 = 1.5
MAX_CFL = 0.9
OUTSIDE = 1.0 + 1e-9



@dataclass(frozen=True, eq=False)
class ThetaField:
    """
    ThetaField - Theta_eps(x) = R(-gamma_eps x) with R the antiderivative of rho

    Theta_eps is 1 for x <= -1/gamma, 0 for x >= 1/gamma, nonincreasing and
    Theta_eps(0) = 1/2; Theta'_eps = -rho^eps.
    """

    mollifier: Mollifier
    scale: ScaleFn
    eps: EpsGrid

    def __post_init__(self):

        gammas = self.scale.gammas(self.eps)
        object.__setattr__(self, "gammas", gammas)
        for k, g in enumerate(gammas):
            x = np.linspace(-2.0 / g, 2.0 / g, 401)
            values = self.evaluate(k, x)
            if np.any(np.diff(values) > 1e-10):
                err_msg = f"Theta is not nonincreasing at eps = {self.eps.epsilons[k]:.6g}."
                raise ErrorNumericalGuard(err_msg)
            if abs(float(self.evaluate(k, 0.0)) - 0.5) > 1e-12:
                err_msg = f"Theta(0) differs from 1/2 at eps = {self.eps.epsilons[k]:.6g}."
                raise ErrorNumericalGuard(err_msg)
            if float(self.evaluate(k, -OUTSIDE / g)) != 1.0 or float(self.evaluate(k, OUTSIDE / g)) != 0.0:
                err_msg = f"Theta is not constant outside [-1/gamma, 1/gamma] at eps = {self.eps.epsilons[k]:.6g}."
                raise ErrorNumericalGuard(err_msg)

    def gamma(self, k: int) -> float:
        return float(self.gammas[k])  # type: ignore[attr-defined]

    def evaluate(self, k: int, x: np.ndarray | float) -> np.ndarray:
        return self.mollifier.cdf(-self.gamma(k) * np.asarray(x, dtype=float))

    def derivative(self, k: int, x: np.ndarray | float) -> np.ndarray:
        return -self.mollifier.scaled(x, self.gamma(k))

    def coeff(self) -> CoeffField:
        return CoeffField.theta(self, radius=float(1.0 / np.min(self.gammas)))  # type: ignore[attr-defined]

    def log_type_check(self) -> LogTypeCheck:
        """log_type_check - sup norms of Theta' (and Theta) against log(1/eps)"""
        width = float(2.0 / np.min(self.gammas))  # type: ignore[attr-defined]
        return check_log_type(self.coeff(), [(-width, width)])


def build_theta(mollifier: Mollifier, scale: ScaleFn, eps: EpsGrid) -> ThetaField:
    """build_theta - mollified Heaviside coefficient, invariants verified at construction"""
    return ThetaField(mollifier, scale, eps)


def hs_eps_grid(gamma_min: float = 2.0, gamma_max: float = 6.0, count: int = 15) -> EpsGrid:
    """hs_eps_grid - epsilon grid with log(1/eps) equally spaced from gamma_min to gamma_max"""
    return make_geometric_grid(math.exp(-gamma_min), math.exp(-(gamma_max - gamma_min) / (count - 1)), count)



@dataclass(frozen=True, eq=False)
class CauchySpec:
    """
    CauchySpec - Cauchy problem d_t u + d_x(a u) = 0, u(., 0) = initial * rho^eps
    """

    coeff: CoeffField
    grid: SpatialGrid
    initial: DistSpec
    mollifier: Mollifier
    scale: ScaleFn
    T: float = 3.0
    nt: int = 512
    dt: float = 0.005
    s0: float | None = None

    def __post_init__(self):

        if self.grid.dimension != 1:
            err_msg = "Cauchy problems are posed on a 1D spatial grid."
            raise ErrorGrid(err_msg)
        if self.T <= 0 or self.dt <= 0:
            err_msg = f"Horizon T and step dt must be positive, got {self.T} and {self.dt}."
            raise ErrorDomain(err_msg)
        if self.s0 is not None and (self.s0 <= 0 or not self.grid.contains((-self.s0,))):
            err_msg = f"s0 = {self.s0} must be positive with -s0 inside the grid."
            raise ErrorDomain(err_msg)
        check_resolvability(self.scale.gammas(self.eps), self.eps, self.grid)
        self.space_time_grid()

    @property
    def eps(self) -> EpsGrid:
        return self.coeff.eps

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.nt)

    def space_time_grid(self) -> SpatialGrid:
        return SpatialGrid((self.grid.mins[0], 0.0), (self.grid.maxs[0], self.T), (self.grid.counts[0], self.nt))

    def initial_values(self, k: int, x: np.ndarray) -> np.ndarray:
        gamma = float(self.scale.gammas(self.eps)[k])
        values = np.asarray(mollified(self.initial, self.mollifier, gamma)(np.asarray(x, dtype=float)[:, None]))
        return values.real if np.iscomplexobj(values) else values


def hs_cauchy_spec(eps: EpsGrid | None = None, s0: float = DEFAULT_S0, grid: SpatialGrid | None = None,
                   T: float = 3.0, nt: int = 512, mollifier: Mollifier | None = None,
                   scale: ScaleFn | None = None, dt: float = 0.005) -> CauchySpec:
    """
    hs_cauchy_spec - coefficient Theta, initial datum delta(-s0), both mollified with the same rho and scale

    Args:
        eps (EpsGrid | None, optional): epsilon grid, hs_eps_grid() if None. Defaults to None.
        s0 (float, optional): initial position -s0. Defaults to 1.5.
        grid (SpatialGrid | None, optional): spatial grid, [-4, 2] with 512 nodes if None. Defaults to None.
        T (float, optional): horizon. Defaults to 3.
        nt (int, optional): time samples. Defaults to 512.
        mollifier (Mollifier | None, optional): mollifier, bump if None. Defaults to None.
        scale (ScaleFn | None, optional): scale, log if None. Defaults to None.
        dt (float, optional): RK4 step. Defaults to 0.005.

    Returns:
        CauchySpec: the Cauchy problem
    """

    eps = eps or hs_eps_grid()
    mollifier = mollifier or Mollifier()
    scale = scale or ScaleFn.parse("log")
    grid = grid or SpatialGrid.line(-4.0, 2.0, 512)
    theta = build_theta(mollifier, scale, eps)
    return CauchySpec(theta.coeff(), grid, DeltaSpec((-s0,)), mollifier, scale, T, nt, dt, s0)



@dataclass(frozen=True, eq=False)
class SolutionField:
    """
    SolutionField - solution net on the (x, t) plane, samples of shape (n_eps, n_x, n_t)
    """

    field: GridFn
    solver: str
    native_mass: np.ndarray
    residual: float = math.nan

    @property
    def x(self) -> np.ndarray:
        return self.field.grid.axes[0]

    @property
    def times(self) -> np.ndarray:
        return self.field.grid.axes[1]

    @property
    def eps(self) -> EpsGrid:
        return self.field.eps

    def time_index(self, t: float) -> int:
        return int(np.argmin(np.abs(self.times - t)))

    def slice(self, t: float) -> GridFn:
        """slice - u(., t) at the nearest time row as a GridFn on the x grid"""
        j = self.time_index(t)
        grid = self.field.grid
        line = SpatialGrid.line(grid.mins[0], grid.maxs[0], grid.counts[0])
        return GridFn(line, self.eps, self.field.samples[:, :, j])


def _velocity_bound(spec: CauchySpec) -> float:
    length = spec.grid.lengths[0]
    xs = np.linspace(spec.grid.mins[0] - length, spec.grid.maxs[0] + length, 4001)[:, None]
    return max(
        float(np.max(np.abs(spec.coeff.a(k, xs, float(t)))))
        for k in range(len(spec.eps)) for t in (0.0, 0.5 * spec.T, spec.T)
    )


def solve_characteristics(spec: CauchySpec, jobs: int = 1) -> SolutionField:
    """
    solve_characteristics - transport of initial values along characteristics per epsilon

    A fan of launch points with spacing h/4 covering the grid extended by
    T sup|a| is integrated by RK4 together with E(t) = integral of a'(x(r)) dr.
    Characteristics of a 1D flow keep their order, so each time row is the
    monotone interpolation of g(y0) exp(-E) onto the grid. The native mass is
    the trapezoid integral over the fan.

    Args:
        spec (CauchySpec): Cauchy problem
        jobs (int, optional): parallel workers over epsilon. Defaults to 1.

    Returns:
        SolutionField: solution with solver tag "characteristics"
    """

    x = spec.grid.axes[0]
    hx = spec.grid.h[0]
    extension = spec.T * _velocity_bound(spec) + 2.0 * hx
    launch = np.arange(spec.grid.mins[0] - extension, spec.grid.maxs[0] + extension + 0.125 * hx, 0.25 * hx)
    times = spec.times
    row_dt = times[1] - times[0]
    substeps = max(1, math.ceil(row_dt / spec.dt - 1e-9))
    step = row_dt / substeps
    c = spec.coeff

    def solve(k: int) -> tuple[np.ndarray, np.ndarray]:

        def rhs(t: float, y: np.ndarray) -> np.ndarray:
            position = y[:, :1]
            return np.column_stack([c.a(k, position, t)[:, 0], c.divergence(k, position, t)])

        g = spec.initial_values(k, launch)
        y = np.column_stack([launch, np.zeros_like(launch)])
        rows = np.empty((x.shape[0], times.shape[0]))
        mass = np.empty(times.shape[0])
        for j in range(times.shape[0]):
            if j > 0:
                for s in range(substeps):
                    y = rk4_step(rhs, times[j - 1] + s * step, y, step)
            positions = np.maximum.accumulate(y[:, 0])
            values = g * np.exp(-y[:, 1])
            rows[:, j] = np.interp(x, positions, values, left=0.0, right=0.0)
            mass[j] = integrate.trapezoid(values, positions)
        logger.debug("characteristics solved at eps = %.6g", spec.eps.epsilons[k])
        return rows, mass

    results = emap(solve, range(len(spec.eps)), jobs)
    field_ = GridFn(spec.space_time_grid(), spec.eps, np.stack([r[0] for r in results]))
    return SolutionField(field_, "characteristics", np.stack([r[1] for r in results]))


def solve_upwind(spec: CauchySpec, cfl: float = MAX_CFL, jobs: int = 1) -> SolutionField:
    """
    solve_upwind - first order upwind finite volume scheme for d_t u + d_x(a u) = 0

    Fluxes a+ u_left + a- u_right at cell faces, zero ghost cells. The mass
    h * sum u changes only by boundary fluxes.

    Args:
        spec (CauchySpec): Cauchy problem
        cfl (float, optional): CFL number, at most 0.9. Defaults to 0.9.
        jobs (int, optional): parallel workers over epsilon. Defaults to 1.

    Returns:
        SolutionField: solution with solver tag "upwind"
    """

    if not (0.0 < cfl <= MAX_CFL):
        err_msg = f"CFL number must lie in (0, {MAX_CFL}], got {cfl}."
        raise ErrorDomain(err_msg)
    x = spec.grid.axes[0]
    hx = spec.grid.h[0]
    faces = np.concatenate([[x[0] - 0.5 * hx], x + 0.5 * hx])[:, None]
    times = spec.times
    row_dt = times[1] - times[0]
    c = spec.coeff

    def solve(k: int) -> tuple[np.ndarray, np.ndarray]:
        u = np.asarray(spec.initial_values(k, x), dtype=float)
        bound = max(float(np.max(np.abs(c.a(k, faces, float(t))))) for t in (0.0, 0.5 * spec.T, spec.T))
        substeps = max(1, math.ceil(row_dt * max(bound, 1e-300) / (cfl * hx)))
        step = row_dt / substeps
        rows = np.empty((x.shape[0], times.shape[0]))
        mass = np.empty(times.shape[0])
        rows[:, 0] = u
        mass[0] = hx * np.sum(u)
        for j in range(1, times.shape[0]):
            for s in range(substeps):
                speed = c.a(k, faces, float(times[j - 1] + s * step))[:, 0]
                padded = np.concatenate([[0.0], u, [0.0]])
                flux = np.maximum(speed, 0.0) * padded[:-1] + np.minimum(speed, 0.0) * padded[1:]
                u = u - (step / hx) * (flux[1:] - flux[:-1])
            rows[:, j] = u
            mass[j] = hx * np.sum(u)
        return rows, mass

    results = emap(solve, range(len(spec.eps)), jobs)
    field_ = GridFn(spec.space_time_grid(), spec.eps, np.stack([r[0] for r in results]))
    return SolutionField(field_, "upwind", np.stack([r[1] for r in results]))


def solver_distance(a: SolutionField, b: SolutionField) -> np.ndarray:
    """solver_distance - per epsilon max over t of the L1 distance relative to the L1 norm of b"""
    if a.field.grid != b.field.grid or a.eps != b.eps:
        err_msg = "Solutions live on different grids."
        raise ErrorGrid(err_msg)
    diff = integrate.trapezoid(np.abs(a.field.samples - b.field.samples), a.x, axis=1)
    norm = integrate.trapezoid(np.abs(b.field.samples), b.x, axis=1)
    return np.max(diff / np.maximum(norm, 1e-300), axis=1)


def mass_history(solution: SolutionField) -> np.ndarray:
    """mass_history - integral of u_eps(., t) dx, shape (n_eps, n_t)"""
    return solution.native_mass


def stuck_profile(solution: SolutionField, t: float, delta: float, scale: ScaleFn) -> np.ndarray:
    """
    stuck_profile - per epsilon sup |u_eps(x, t)| over |x| > 1/gamma_eps + delta

    Args:
        solution (SolutionField): solution
        t (float): time
        delta (float): margin
        scale (ScaleFn): scale gamma

    Returns:
        np.ndarray: sup per epsilon
    """

    j = solution.time_index(t)
    gammas = scale.gammas(solution.eps)
    x = solution.x
    out = []
    for k, g in enumerate(gammas):
        outside = np.abs(x) > 1.0 / g + delta
        out.append(float(np.max(np.abs(solution.field.samples[k, outside, j]))) if np.any(outside) else 0.0)
    return np.asarray(out)



def _crossing(theta: ThetaField, k: int, s0: float, dt: float, t_max: float) -> tuple[float, float]:
    """zero crossing (t, x) of x' = Theta(x), x(0) = -s0, refined by bisection in the crossing step"""

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return theta.evaluate(k, y)

    t, y = 0.0, np.asarray([-s0])
    while t < t_max:
        y_new = rk4_step(rhs, t, y, dt)
        if y_new[0] >= 0.0:
            lo, hi = 0.0, dt
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if rk4_step(rhs, t, y, mid)[0] >= 0.0:
                    hi = mid
                else:
                    lo = mid
            return t + hi, float(rk4_step(rhs, t, y, hi)[0])
        t, y = t + dt, y_new
    err_msg = f"No zero crossing of x(t) up to t = {t_max} at eps = {theta.eps.epsilons[k]:.6g}."
    raise ErrorNumericalGuard(err_msg)


def find_t_eps(theta: ThetaField, s0: float, dt: float = 1e-3, t_max: float | None = None) -> GenNumber:
    """
    find_t_eps - time t_eps with x_eps(t_eps) = 0 for x' = Theta_eps(x), x(0) = -s0

    Args:
        theta (ThetaField): coefficient
        s0 (float): initial distance, positive
        dt (float, optional): RK4 step. Defaults to 1e-3.
        t_max (float | None, optional): horizon, 2 s0 + 10 if None. Defaults to None.

    Returns:
        GenNumber: t_eps
    """

    if s0 <= 0:
        err_msg = f"s0 must be positive, got {s0}."
        raise ErrorDomain(err_msg)
    horizon = t_max if t_max is not None else 2.0 * s0 + 10.0
    return GenNumber(theta.eps, np.asarray([_crossing(theta, k, s0, dt, horizon)[0] for k in range(len(theta.eps))]))


@dataclass(frozen=True)
class TEpsFit:
    C: float
    intercept: float
    r2: float
    monotone: bool


def fit_t_eps(theta: ThetaField, t_eps: GenNumber, s0: float) -> TEpsFit:
    """fit_t_eps - least squares fit |t_eps - s0| ~ C / gamma_eps with R^2 and monotonicity of t_eps"""
    inverse = 1.0 / theta.scale.gammas(theta.eps)
    distance = np.abs(t_eps.real - s0)
    fit = stats.linregress(inverse, distance)
    monotone = bool(np.all(np.diff(t_eps.real) <= 0))
    return TEpsFit(float(fit.slope), float(fit.intercept), float(fit.rvalue ** 2), monotone)



@dataclass
class KinkTable(baseReportclass):
    """
    KinkTable - xi_eps(t) at s0 - 0.5, s0, s0 + 0.5 along the null bicharacteristic from (-s0, xi0)
    """

    _report_name_ = "kink"

    s0: float = DEFAULT_S0
    xi0: float = 1.0
    convention: str = "tau0/xi0=-1"
    rows: list[dict[str, float | bool]] = field(default_factory=list)
    threshold_before: float | None = None
    threshold_after: float | None = None

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame.from_records(self.rows)
        frame.insert(0, "convention", self.convention)
        return frame

    @property
    def bounds_hold(self) -> bool:
        return all(bool(row["bound_ok"]) for row in self.rows)


def _threshold(eps: Sequence[float], flags: Sequence[bool]) -> float | None:
    """largest eps such that the flag holds for it and every smaller eps"""
    threshold = None
    for e, flag in sorted(zip(eps, flags, strict=True)):
        if not flag:
            break
        threshold = e
    return threshold


def kink_table(theta: ThetaField, s0: float = DEFAULT_S0, xi0: float = 1.0, dt: float = 1e-3,
               offset: float = 0.5, jobs: int = 1) -> tuple[KinkTable, BicharCurve]:
    """
    kink_table - bicharacteristic facts at the coefficient jump per epsilon

    Rows hold t_eps, the speed Theta(x(t_eps)), xi before, at and after s0 and
    the checks |xi0| <= |xi(s0)| <= 2|tau0|, xi(s0 - offset) = xi0 and
    |xi(s0 + offset)| >= 10 |xi0|. A negative xi0 gives the convention tau0/xi0 = +1
    relative to the positive orientation.

    Args:
        theta (ThetaField): coefficient
        s0 (float, optional): initial distance. Defaults to 1.5.
        xi0 (float, optional): initial covector. Defaults to 1.
        dt (float, optional): RK4 step. Defaults to 1e-3.
        offset (float, optional): time offset around s0. Defaults to 0.5.
        jobs (int, optional): parallel workers over epsilon. Defaults to 1.

    Returns:
        tuple[KinkTable, BicharCurve]: table and the curves
    """

    c = theta.coeff()
    curve = integrate_bichar(c, -s0, xi0, None, (0.0, s0 + offset), dt, verify=False, jobs=jobs)
    table = KinkTable(s0=s0, xi0=xi0, convention="tau0/xi0=-1" if xi0 > 0 else "tau0/xi0=+1 (xi0 < 0)")
    i_before, i_at, i_after = curve.index_at(s0 - offset), curve.index_at(s0), curve.index_at(s0 + offset)
    for k, e in enumerate(theta.eps.epsilons):
        t_k, x_k = _crossing(theta, k, s0, dt, 2.0 * s0 + 10.0)
        tau0 = float(curve.tau0[k])
        before, at, after = (float(curve.xi[k, i, 0]) for i in (i_before, i_at, i_after))
        table.rows.append({
            "eps": e,
            "gamma": theta.gamma(k),
            "t_eps": t_k,
            "speed_at_t_eps": float(theta.evaluate(k, x_k)),
            "tau0": tau0,
            "xi_before": before,
            "xi_at_s0": at,
            "xi_after": after,
            "bound_ok": bool(abs(xi0) <= abs(at) * (1 + 1e-12) and abs(at) <= 2.0 * abs(tau0) * (1 + 1e-12)),
            "xi_before_equal": bool(before == xi0),
            "xi_after_large": bool(abs(after) >= 10.0 * abs(xi0)),
        })
    table.threshold_before = _threshold(theta.eps.epsilons, [bool(r["xi_before_equal"]) for r in table.rows])
    table.threshold_after = _threshold(theta.eps.epsilons, [bool(r["xi_after_large"]) for r in table.rows])
    return table, curve



def default_hs_points(s0: float = DEFAULT_S0) -> list[tuple[float, float]]:
    """default_hs_points - line, kink, ridge and regular base points on the (x, t) plane"""
    line = [(x, x + s0) for x in (-1.0, -0.75, -0.5)]
    kink = [(0.0, s0)]
    ridge = [(0.0, s0 + dt) for dt in (0.5, 0.75, 1.0)]
    regular = [(-2.5, 0.5), (-1.5, 1.5), (1.0, 1.0), (1.0, 2.0), (-2.0, 2.0), (-1.0, 2.5)]
    return line + kink + ridge + regular


def hs_region(x0: Sequence[float], s0: float, tol: float = 1e-9) -> str:
    """hs_region - "line", "kink", "ridge" or "regular" for a base point (x, t)"""
    x, t = float(x0[0]), float(x0[1])
    if abs(x) <= tol and abs(t - s0) <= tol:
        return "kink"
    if abs(x) <= tol and t > s0:
        return "ridge"
    if x < 0 and abs(t - (x + s0)) <= tol:
        return "line"
    return "regular"


@dataclass
class HSScanReport(baseReportclass):
    """
    HSScanReport - wave front set scan of the solution on the (x, t) plane with region labels
    """

    _report_name_ = "hs_wavefront"

    wf: WFReport = field(default_factory=WFReport)
    s0: float = DEFAULT_S0
    regions: dict[tuple[float, ...], str] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        frame = self.wf.to_frame()
        frame.insert(2, "region", [self.regions.get(row.x0, "regular") for row in self.wf.rows])
        return frame

    def rows_in(self, region: str) -> list:
        return [row for row in self.wf.rows if self.regions.get(row.x0) == region]


def hs_wavefront_scan(solution: SolutionField, params: WFParams, s0: float = DEFAULT_S0,
                      base_points: Sequence[Sequence[float]] | None = None, directions: int = 16) -> HSScanReport:
    """
    hs_wavefront_scan - wave front set of the solution with (x, t) as 2D space and (xi, tau) as directions

    Args:
        solution (SolutionField): solution
        params (WFParams): scan parameters
        s0 (float, optional): initial distance. Defaults to 1.5.
        base_points (Sequence | None, optional): base points, default_hs_points if None. Defaults to None.
        directions (int, optional): number of direction angles. Defaults to 16.

    Returns:
        HSScanReport: scan with region labels
    """

    points = [tuple(float(c) for c in p) for p in (base_points or default_hs_points(s0))]
    report = wf_scan(solution.field, points, direction_grid(2, directions), params)
    return HSScanReport(report, s0, {p: hs_region(p, s0) for p in points})


@dataclass
class FlowComparison(baseReportclass):
    """
    FlowComparison - scanned directions at a base point against limits of flowed covectors
    """

    _report_name_ = "flow_vs_wf"

    x0: tuple[float, ...] = ()
    rows: list[dict[str, float | bool]] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame.from_records(self.rows)

    @property
    def deficiency(self) -> int:
        """deficiency - number of directions singular but not covered by the flow"""
        return sum(1 for row in self.rows if row["singular"] and not row["flow_covered"])


def flow_wf_comparison(wf: WFReport, curve: BicharCurve, x0: Sequence[float], t: float,
                       count: int = 16) -> FlowComparison:
    """
    flow_wf_comparison - which singular directions at x0 are within one angular step of +-(xi_eps(t), tau_eps(t))

    Args:
        wf (WFReport): scan containing x0
        curve (BicharCurve): null bicharacteristics through x0
        x0 (Sequence[float]): base point (x, t)
        t (float): time of the limit directions
        count (int, optional): number of scanned angles. Defaults to 16.

    Returns:
        FlowComparison: one row per scanned direction
    """

    step = 2.0 * math.pi / count
    limits = limit_directions(curve, t)
    limit_angles = np.concatenate([np.arctan2(limits[:, 1], limits[:, 0]), np.arctan2(-limits[:, 1], -limits[:, 0])])
    comparison = FlowComparison(tuple(float(c) for c in x0))
    for row in wf.rows_at(x0):
        difference = np.abs((limit_angles - row.angle + math.pi) % (2.0 * math.pi) - math.pi)
        covered = bool(np.min(difference) <= step + 1e-12)
        comparison.rows.append({
            "angle": row.angle,
            "xi": row.xi0[0],
            "tau": row.xi0[1],
            "singular": row.verdict == "singular",
            "flow_covered": covered,
        })
    return comparison


def limit_cone_ok(curve: BicharCurve, t: float, factor: float = 2.0, tol: float = 1e-9) -> bool:
    """limit_cone_ok - all limit directions at t lie in the cone |xi| <= factor |tau| + tol"""
    limits = limit_directions(curve, t)
    return bool(np.all(np.abs(limits[:, 0]) <= factor * np.abs(limits[:, 1]) + tol))



@dataclass
class PropagationReport(baseReportclass):
    """
    PropagationReport - wave front base points of time slices against the Hamilton flow image
    """

    _report_name_ = "propagation"

    coefficient: str = ""
    rows: list[dict[str, float | bool | str]] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame.from_records(self.rows)
        frame.insert(0, "coefficient", self.coefficient)
        return frame

    @property
    def all_match(self) -> bool:
        return all(bool(row["base_match"]) and bool(row["direction_match"]) for row in self.rows)


def _singular_clusters(points: Sequence[float], gap: float) -> list[list[float]]:
    clusters: list[list[float]] = []
    for p in sorted(points):
        if clusters and p - clusters[-1][-1] <= gap:
            clusters[-1].append(p)
        else:
            clusters.append([p])
    return clusters


def slice_wavefront(u: GridFn, params: WFParams) -> list[tuple[float, set[float]]]:
    """
    slice_wavefront - singular base points of a 1D net with their singular directions

    A coarse scan at spacing r locates singular regions, a fine scan at spacing
    2h around them resolves each singular run, reported by its centroid.

    Args:
        u (GridFn): 1D net
        params (WFParams): scan parameters

    Returns:
        list[tuple[float, set[float]]]: centroid and singular directions (+1, -1) per run
    """

    lo, hi = u.grid.mins[0] + params.r, u.grid.maxs[0] - params.r
    h = u.grid.h[0]
    coarse = np.arange(lo + 1e-9, hi, params.r)
    report = wf_scan(u, [(x,) for x in coarse], None, params)
    hits = sorted({p[0] for p in report.singular_points()})
    if not hits:
        return []
    fine_points = np.unique(np.concatenate([
        np.arange(max(lo, x - params.r), min(hi, x + params.r) + 1e-12, 2.0 * h) for x in hits
    ]))
    fine = wf_scan(u, [(x,) for x in fine_points], None, params)
    singular = [p[0] for p in fine.singular_points()]
    result = []
    for cluster in _singular_clusters(singular, 4.0 * h):
        centroid = float(np.mean(cluster))
        nearest = min(cluster, key=lambda p: abs(p - centroid))
        directions = {row.xi0[0] for row in fine.rows_at((nearest,)) if row.verdict == "singular"}
        result.append((centroid, directions))
    return result


def smooth_propagation_case(coeff: CoeffField, g_spec: DistSpec, t_list: Sequence[float], grid: SpatialGrid,
                            mollifier: Mollifier, scale: ScaleFn, params: WFParams, dt: float = 0.005,
                            nt: int = 65, jobs: int = 1) -> PropagationReport:
    """
    smooth_propagation_case - wave front set of time slices against the flow image of WF(g)

    Args:
        coeff (CoeffField): smooth epsilon independent coefficient
        g_spec (DistSpec): initial datum
        t_list (Sequence[float]): slice times
        grid (SpatialGrid): 1D spatial grid
        mollifier (Mollifier): mollifier of the embedding
        scale (ScaleFn): scale of the embedding
        params (WFParams): scan parameters
        dt (float, optional): RK4 step. Defaults to 0.005.
        nt (int, optional): time samples. Defaults to 65.
        jobs (int, optional): parallel workers over epsilon. Defaults to 1.

    Returns:
        PropagationReport: one row per (t, flowed wave front point) or per unmatched slice point
    """

    spec = CauchySpec(coeff, grid, g_spec, mollifier, scale, float(max(t_list)), nt, dt)
    solution = solve_characteristics(spec, jobs)
    initial = [(p[0], s) for p in singular_support(g_spec) for s in (1.0, -1.0)]
    report = PropagationReport(coefficient=coeff.name)
    tolerance = 2.0 * grid.h[0]
    for t in t_list:
        t_row = float(solution.times[solution.time_index(t)])
        slices = slice_wavefront(solution.slice(t_row), params)
        flowed = hamilton_flow(coeff, t_row, initial, jobs=jobs)[-1] if initial else np.empty((0, 2))
        matched = set()
        for x_flow, xi_flow in flowed:
            candidates = [(abs(c - x_flow), i) for i, (c, _) in enumerate(slices)]
            distance, index = min(candidates) if candidates else (math.inf, -1)
            directions = slices[index][1] if index >= 0 else set()
            matched.add(index)
            report.rows.append({
                "t": t_row,
                "flow_x": float(x_flow),
                "flow_direction": float(np.sign(xi_flow)),
                "wf_x": slices[index][0] if index >= 0 else math.nan,
                "base_match": bool(distance <= tolerance),
                "direction_match": bool(np.sign(xi_flow) in directions),
            })
        for i, (centroid, _) in enumerate(slices):
            if i not in matched:
                report.rows.append({
                    "t": t_row, "flow_x": math.nan, "flow_direction": math.nan, "wf_x": centroid,
                    "base_match": False, "direction_match": False,
                })
    return report

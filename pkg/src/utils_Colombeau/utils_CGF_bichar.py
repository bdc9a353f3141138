# Colombeau generalized functions utilities
# bichar - generalized Hamilton flow and null bicharacteristics of first order operators


# For q1(x, t, xi, tau) = tau + sum_j a_j(x, t) xi_j the bicharacteristic system
# with t as parameter reads
#   x' = a(x, t),   xi_i' = -sum_j d_i a_j(x, t) xi_j,   tau' = -sum_j d_t a_j(x, t) xi_j
# and is integrated per epsilon by classical fixed step RK4.

# CoeffField     : coefficient family a_eps(x, t) with analytic or finite difference derivatives
# BicharCurve    : sampled curves (x, xi, tau) per epsilon with truncation and step halving metadata


"""
Module provides coefficient fields, bicharacteristic curves and the Hamilton flow per epsilon.
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

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any, Protocol

import logging
import math

import numpy as np
import pandas as pd

from utils_Colombeau.utils_CGF_classes import ErrorDomain, ErrorGrid, baseReportclass
from utils_Colombeau.utils_CGF_decorators import emap
from utils_Colombeau.utils_CGF_scale import (
    EpsGrid, GenNumber, classify, estimate_log_corrected_valuation
)



logger = logging.getLogger(__name__)

BLOWUP_THRESHOLD = 1e12
NULL_TOLERANCE = 1e-10
FD_RELATIVE_STEP = 1e-5
LOG_TYPE_TOLERANCE = 0.1
LOG_POWER_TOLERANCE = 1.25

# a(k, x, t) with x of shape (P, n) returns (P, n)
Velocity = Callable[[int, np.ndarray, float], np.ndarray]



def rk4_step(f: Callable[[float, np.ndarray], np.ndarray], t: float, y: np.ndarray, dt: float) -> np.ndarray:
    """rk4_step - one classical Runge-Kutta step of y' = f(t, y)"""
    k1 = f(t, y)
    k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)



class ThetaLike(Protocol):
    eps: EpsGrid
    def evaluate(self, k: int, x: np.ndarray) -> np.ndarray: ...
    def derivative(self, k: int, x: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class CoeffField:
    """
    CoeffField - real coefficient family a_eps(x, t) in R^n with optional zero order term a0

    Derivative evaluators are optional; missing ones fall back to central
    differences with step 1e-5 (1 + |x|), flagged by uses_fd.
    """

    name: str
    n: int
    eps: EpsGrid
    velocity: Velocity
    jacobian: Callable[[int, np.ndarray, float], np.ndarray] | None = None
    time_derivative: Callable[[int, np.ndarray, float], np.ndarray] | None = None
    a0: Callable[[int, np.ndarray, float], np.ndarray] | None = None
    const_radius: float | None = None
    log_type: bool = False
    t_independent: bool = True
    params: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def uses_fd(self) -> bool:
        return self.jacobian is None or (self.time_derivative is None and not self.t_independent)

    def a(self, k: int, x: np.ndarray, t: float) -> np.ndarray:
        return np.asarray(self.velocity(k, np.asarray(x, dtype=float), t), dtype=float)

    def dadx(self, k: int, x: np.ndarray, t: float) -> np.ndarray:
        """dadx - J[p, i, j] = d_i a_j at points x of shape (P, n)"""
        x = np.asarray(x, dtype=float)
        if self.jacobian is not None:
            return np.asarray(self.jacobian(k, x, t), dtype=float)
        J = np.empty((*x.shape, self.n))
        for i in range(self.n):
            step = FD_RELATIVE_STEP * (1.0 + np.abs(x[:, i]))
            shift = np.zeros_like(x)
            shift[:, i] = step
            J[:, i, :] = (self.a(k, x + shift, t) - self.a(k, x - shift, t)) / (2.0 * step[:, None])
        return J

    def dadt(self, k: int, x: np.ndarray, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.t_independent:
            return np.zeros_like(x)
        if self.time_derivative is not None:
            return np.asarray(self.time_derivative(k, x, t), dtype=float)
        step = FD_RELATIVE_STEP * (1.0 + abs(t))
        return (self.a(k, x, t + step) - self.a(k, x, t - step)) / (2.0 * step)

    def divergence(self, k: int, x: np.ndarray, t: float) -> np.ndarray:
        return np.trace(self.dadx(k, x, t), axis1=-2, axis2=-1)

    def zero_order(self, k: int, x: np.ndarray, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.a0 is None:
            return np.zeros(x.shape[0])
        return np.asarray(self.a0(k, x, t), dtype=float)

    def symbol(self, k: int, x: np.ndarray, t: float, xi: np.ndarray, tau: np.ndarray) -> np.ndarray:
        """symbol - principal symbol q1 = tau + a . xi"""
        return np.asarray(tau) + np.sum(self.a(k, x, t) * xi, axis=-1)

    @classmethod
    def constant(cls, eps: EpsGrid, value: float | Sequence[float] = 1.0, n: int = 1) -> CoeffField:
        vector = np.broadcast_to(np.asarray(value, dtype=float), (n,)).copy()
        return cls(
            f"constant:{','.join(f'{v:g}' for v in vector)}", n, eps,
            lambda k, x, t: np.broadcast_to(vector, x.shape).copy(),
            jacobian=lambda k, x, t: np.zeros((*x.shape, n)),
            const_radius=0.0, log_type=True,
        )

    @classmethod
    def linear(cls, eps: EpsGrid) -> CoeffField:
        """linear - a(x) = x in one dimension"""
        return cls("linear", 1, eps, lambda k, x, t: x.copy(), jacobian=lambda k, x, t: np.ones((x.shape[0], 1, 1)))

    @classmethod
    def bump(cls, eps: EpsGrid, amplitude: float = 1.0) -> CoeffField:
        """bump - a(x) = 1 + amplitude exp(-x^2) in one dimension"""
        return cls(
            f"bump:{amplitude:g}", 1, eps,
            lambda k, x, t: 1.0 + amplitude * np.exp(-x * x),
            jacobian=lambda k, x, t: (-2.0 * amplitude * x * np.exp(-x * x))[:, :, None],
            log_type=True,
        )

    @classmethod
    def theta(cls, theta: ThetaLike, radius: float | None = None) -> CoeffField:
        """theta - a_eps = Theta_eps, the mollified Heaviside coefficient"""
        return cls(
            "theta", 1, theta.eps,
            lambda k, x, t: theta.evaluate(k, x),
            jacobian=lambda k, x, t: theta.derivative(k, x)[:, :, None],
            const_radius=radius, log_type=True, params={"theta": theta},
        )



@dataclass(frozen=True)
class LogTypeCheck:
    passed: bool
    b_hat: float
    log_power: float
    sup_net: GenNumber


def check_log_type(c: CoeffField, box: Sequence[tuple[float, float]], t: float = 0.0, count: int = 401) -> LogTypeCheck:
    """
    check_log_type - sup norms of d_x a and a0 on a box are O(log(1/eps))

    The ratio of the sup net to log(1/eps) is fitted with the log corrected
    valuation and must have power part >= -0.1 and log exponent <= 1.25 overall.

    Args:
        c (CoeffField): coefficient field
        box (Sequence[tuple[float, float]]): box in R^n
        t (float, optional): time. Defaults to 0.
        count (int, optional): samples per axis. Defaults to 401.

    Returns:
        LogTypeCheck: verdict and fit
    """

    axes = [np.linspace(lo, hi, count) for lo, hi in box]
    points = np.stack([m.reshape(-1) for m in np.meshgrid(*axes, indexing="ij")], axis=-1)
    sups = np.asarray([
        max(float(np.max(np.abs(c.dadx(k, points, t)))), float(np.max(np.abs(c.zero_order(k, points, t)))))
        for k in range(len(c.eps))
    ])
    sup_net = GenNumber(c.eps, sups)
    if np.all(sups == 0):
        return LogTypeCheck(True, math.inf, 0.0, sup_net)
    estimate = estimate_log_corrected_valuation(sup_net)
    passed = estimate.b_hat >= -LOG_TYPE_TOLERANCE and (
        estimate.b_hat > LOG_TYPE_TOLERANCE or estimate.log_power <= LOG_POWER_TOLERANCE
    )
    return LogTypeCheck(bool(passed), estimate.b_hat, estimate.log_power, sup_net)



@dataclass(frozen=True, eq=False)
class BicharCurve(baseReportclass):
    """
    BicharCurve - bicharacteristic curves per epsilon sampled at common times

    Arrays x and xi have shape (n_eps, n_t, n), tau and residual (n_eps, n_t).
    Samples after a blow-up truncation are NaN; truncated_at holds the
    truncation time per epsilon (NaN if not truncated).
    """

    _report_name_ = "bichar"

    eps: EpsGrid
    t: np.ndarray
    x: np.ndarray
    xi: np.ndarray
    tau: np.ndarray
    x0: tuple[float, ...]
    xi0: tuple[float, ...]
    tau0: np.ndarray
    truncated_at: np.ndarray
    halving_error: np.ndarray
    residual: np.ndarray
    fd_used: bool = False

    @property
    def truncated(self) -> bool:
        return bool(np.any(np.isfinite(self.truncated_at)))

    def index_at(self, t: float) -> int:
        return int(np.argmin(np.abs(self.t - t)))

    def to_frame(self) -> pd.DataFrame:
        n_eps, n_t, n = self.x.shape
        data: dict[str, np.ndarray] = {
            "eps": np.repeat(np.asarray(self.eps.epsilons), n_t),
            "t": np.tile(self.t, n_eps),
        }
        for i in range(n):
            suffix = "" if n == 1 else str(i)
            data[f"x{suffix}"] = self.x[:, :, i].reshape(-1)
            data[f"xi{suffix}"] = self.xi[:, :, i].reshape(-1)
        data["tau"] = self.tau.reshape(-1)
        data["residual"] = self.residual.reshape(-1)
        return pd.DataFrame(data)



def _hamilton_rhs(c: CoeffField, k: int, n: int, with_tau: bool) -> Callable[[float, np.ndarray], np.ndarray]:

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        x = y[:, :n]
        xi = y[:, n:2 * n]
        out = np.empty_like(y)
        out[:, :n] = c.a(k, x, t)
        out[:, n:2 * n] = -np.einsum("pij,pj->pi", c.dadx(k, x, t), xi)
        if with_tau:
            out[:, 2 * n] = -np.sum(c.dadt(k, x, t) * xi, axis=-1)
        return out

    return rhs


def _integrate(c: CoeffField, k: int, y0: np.ndarray, t0: float, steps: int, dt: float,
               with_tau: bool) -> tuple[np.ndarray, float]:
    """RK4 trajectory of shape (steps + 1, P, m); NaN after |xi| > 1e12 with truncation time"""
    n = c.n
    rhs = _hamilton_rhs(c, k, n, with_tau)
    out = np.full((steps + 1, *y0.shape), np.nan)
    out[0] = y0
    y = y0.copy()
    for i in range(steps):
        y = rk4_step(rhs, t0 + i * dt, y, dt)
        if not np.all(np.isfinite(y)) or np.max(np.abs(y[:, n:2 * n])) > BLOWUP_THRESHOLD:
            truncated = t0 + (i + 1) * dt
            logger.warning("bicharacteristic blow-up guard at eps = %.6g, t = %.6g", c.eps.epsilons[k], truncated)
            return out, truncated
        out[i + 1] = y
    return out, math.nan


def _steps(t_span: tuple[float, float], dt: float) -> int:
    t0, t1 = t_span
    if not t1 > t0 or dt <= 0:
        err_msg = f"Invalid time span {t_span} or step {dt}."
        raise ErrorDomain(err_msg)
    steps = round((t1 - t0) / dt)
    if abs(steps * dt - (t1 - t0)) > 1e-9 * max(1.0, t1 - t0):
        err_msg = f"Time span {t_span} is not a multiple of the step {dt}."
        raise ErrorDomain(err_msg)
    return steps


def integrate_bichar(c: CoeffField, x0: float | Sequence[float], xi0: float | Sequence[float],
                     tau0: float | Sequence[float] | None = None, t_span: tuple[float, float] = (0.0, 1.0),
                     dt: float = 1e-3, waive_null: bool = False, verify: bool = True, jobs: int = 1) -> BicharCurve:
    """
    integrate_bichar - null bicharacteristics per epsilon by fixed step RK4

    With tau0 None the null value tau0 = -a_eps(x0, t0) . xi0 is used per epsilon.
    The step halving error (max deviation from a run at dt/2) is recorded per epsilon.

    Args:
        c (CoeffField): coefficient field
        x0 (float | Sequence[float]): initial point
        xi0 (float | Sequence[float]): initial covector
        tau0 (float | Sequence[float] | None, optional): initial tau, scalar or per epsilon. Defaults to None.
        t_span (tuple[float, float], optional): time interval. Defaults to (0, 1).
        dt (float, optional): step. Defaults to 1e-3.
        waive_null (bool, optional): skip the nullity precondition. Defaults to False.
        verify (bool, optional): run the step halving verification. Defaults to True.
        jobs (int, optional): parallel workers over epsilon. Defaults to 1.

    Returns:
        BicharCurve: curves per epsilon
    """

    n = c.n
    x_init = np.atleast_1d(np.asarray(x0, dtype=float))
    xi_init = np.atleast_1d(np.asarray(xi0, dtype=float))
    if x_init.shape != (n,) or xi_init.shape != (n,):
        err_msg = f"Initial data must have dimension {n}."
        raise ErrorDomain(err_msg)
    t0, _ = t_span
    steps = _steps(t_span, dt)
    null_tau = np.asarray([-float(np.dot(c.a(k, x_init[None, :], t0)[0], xi_init)) for k in range(len(c.eps))])
    if tau0 is None:
        tau_init = null_tau
    else:
        tau_init = np.broadcast_to(np.asarray(tau0, dtype=float), (len(c.eps),)).copy()
        defect = np.abs(tau_init - null_tau)
        if not waive_null and np.any(defect > NULL_TOLERANCE * (1.0 + np.linalg.norm(xi_init))):
            err_msg = f"Initial data are not null, max |q1| = {defect.max():.3g}."
            raise ErrorDomain(err_msg)

    def trajectory(k: int) -> tuple[np.ndarray, float, float]:
        y0 = np.concatenate([x_init, xi_init, [tau_init[k]]])[None, :]
        path, truncated = _integrate(c, k, y0, t0, steps, dt, with_tau=True)
        halving = math.nan
        if verify:
            fine, _ = _integrate(c, k, y0, t0, 2 * steps, 0.5 * dt, with_tau=True)
            diff = np.abs(path - fine[::2])
            halving = float(np.nanmax(diff)) if np.any(np.isfinite(diff)) else math.nan
        return path[:, 0, :], truncated, halving

    results = emap(trajectory, range(len(c.eps)), jobs)
    paths = np.stack([r[0] for r in results])
    t = t0 + dt * np.arange(steps + 1)
    residual = np.stack([
        np.abs(c.symbol(k, np.nan_to_num(paths[k, :, :n]), 0.0, paths[k, :, n:2 * n], paths[k, :, 2 * n]))
        if c.t_independent else
        np.asarray([
            abs(float(c.symbol(k, paths[k, i:i + 1, :n], float(ti), paths[k, i, n:2 * n], paths[k, i, 2 * n])[0]))
            for i, ti in enumerate(t)
        ])
        for k in range(len(c.eps))
    ])
    residual = np.where(np.isfinite(paths[:, :, 0]), residual, np.nan)
    return BicharCurve(
        c.eps, t, paths[:, :, :n], paths[:, :, n:2 * n], paths[:, :, 2 * n],
        tuple(x_init), tuple(xi_init), tau_init,
        np.asarray([r[1] for r in results]), np.asarray([r[2] for r in results]), residual, c.uses_fd,
    )


def null_residual(b: BicharCurve, c: CoeffField) -> np.ndarray:
    """
    null_residual - per epsilon max over time of |tau + a(x, t) . xi| along the curve

    Args:
        b (BicharCurve): curves
        c (CoeffField): coefficient field on the same epsilon grid

    Returns:
        np.ndarray: residual per epsilon, NaN samples after truncation ignored
    """

    if b.eps != c.eps:
        err_msg = "Curve and coefficient field live on different epsilon grids."
        raise ErrorGrid(err_msg)
    out = []
    for k in range(len(b.eps)):
        valid = np.isfinite(b.x[k, :, 0])
        values = [
            abs(float(c.symbol(k, b.x[k, i:i + 1], float(b.t[i]), b.xi[k, i], b.tau[k, i])[0]))
            for i in np.nonzero(valid)[0]
        ]
        out.append(max(values) if values else math.nan)
    return np.asarray(out)


def hamilton_flow(c: CoeffField, t: float, points: Sequence[Sequence[float]] | np.ndarray, dt: float = 1e-3,
                  jobs: int = 1) -> np.ndarray:
    """
    hamilton_flow - image of points (x, xi) under the flow of x' = a, xi' = -(d_x a) xi

    Args:
        c (CoeffField): coefficient field
        t (float): flow time, t = 0 is the identity
        points (array-like): points of shape (P, 2n)
        dt (float, optional): step, reduced to fit t. Defaults to 1e-3.
        jobs (int, optional): parallel workers over epsilon. Defaults to 1.

    Returns:
        np.ndarray: transported points of shape (n_eps, P, 2n), NaN after blow-up
    """

    y0 = np.atleast_2d(np.asarray(points, dtype=float))
    if y0.shape[1] != 2 * c.n:
        err_msg = f"Flow points must have {2 * c.n} components."
        raise ErrorDomain(err_msg)
    if t == 0:
        return np.stack([y0.copy() for _ in range(len(c.eps))])
    steps = max(1, math.ceil(abs(t) / dt - 1e-9))
    step = t / steps

    def flow(k: int) -> np.ndarray:
        path, _ = _integrate(c, k, y0, 0.0, steps, step, with_tau=False)
        return path[-1]

    return np.stack(emap(flow, range(len(c.eps)), jobs))


def rk4_order_factor(c: CoeffField, x0: float | Sequence[float], xi0: float | Sequence[float],
                     tau0: float | None = None, t_span: tuple[float, float] = (0.0, 1.0),
                     dt: float = 0.1) -> np.ndarray:
    """
    rk4_order_factor - ratio of the max errors at dt and dt/2 against a dt/4 reference

    The nominal value of a fourth order method with this reference is 16 * (255/256) / (15/16) ~ 17.

    Args:
        c (CoeffField): coefficient field
        x0 (float | Sequence[float]): initial point
        xi0 (float | Sequence[float]): initial covector
        tau0 (float | None, optional): initial tau, null value if None. Defaults to None.
        t_span (tuple[float, float], optional): time interval. Defaults to (0, 1).
        dt (float, optional): coarse step. Defaults to 0.1.

    Returns:
        np.ndarray: factor per epsilon
    """

    runs = [
        integrate_bichar(c, x0, xi0, tau0, t_span, step, waive_null=tau0 is not None, verify=False)
        for step in (dt, 0.5 * dt, 0.25 * dt)
    ]

    def state(curve: BicharCurve, stride: int) -> np.ndarray:
        return np.concatenate([curve.x[:, ::stride, :], curve.xi[:, ::stride, :], curve.tau[:, ::stride, None]], axis=-1)

    reference = state(runs[2], 4)
    coarse = np.nanmax(np.abs(state(runs[0], 1) - reference), axis=(1, 2))
    fine = np.nanmax(np.abs(state(runs[1], 2) - reference), axis=(1, 2))
    return coarse / fine


def gronwall_check(curve: BicharCurve, c: CoeffField, margin: float = 1.0, count: int = 401) -> np.ndarray:
    """
    gronwall_check - |xi(t)| <= |xi0| exp(L t) with L the sup of |d_x a| around the curve

    Args:
        curve (BicharCurve): curves
        c (CoeffField): coefficient field
        margin (float, optional): box margin around the curve. Defaults to 1.
        count (int, optional): samples per axis of the box. Defaults to 401.

    Returns:
        np.ndarray: bool per epsilon
    """

    out = []
    norm0 = float(np.linalg.norm(curve.xi0))
    for k in range(len(curve.eps)):
        valid = np.isfinite(curve.x[k, :, 0])
        xs = curve.x[k][valid]
        axes = [np.linspace(xs[:, i].min() - margin, xs[:, i].max() + margin, count) for i in range(c.n)]
        box = np.stack([m.reshape(-1) for m in np.meshgrid(*axes, indexing="ij")], axis=-1)
        times = curve.t[valid]
        lipschitz = np.asarray([float(np.max(np.linalg.norm(c.dadx(k, box, float(t)), axis=(1, 2)))) for t in times])
        exponent = np.concatenate([[0.0], np.cumsum(0.5 * (lipschitz[1:] + lipschitz[:-1]) * np.diff(times))])
        bound = norm0 * np.exp(exponent) * (1.0 + 1e-9)
        out.append(bool(np.all(np.linalg.norm(curve.xi[k][valid], axis=-1) <= bound)))
    return np.asarray(out)


def limit_directions(curve: BicharCurve, t: float) -> np.ndarray:
    """
    limit_directions - unit vectors (xi(t), tau(t)) / |(xi(t), tau(t))| per epsilon

    Args:
        curve (BicharCurve): curves
        t (float): time

    Returns:
        np.ndarray: shape (n_eps, n + 1)
    """

    i = curve.index_at(t)
    vectors = np.concatenate([curve.xi[:, i, :], curve.tau[:, i, None]], axis=-1)
    return vectors / np.linalg.norm(vectors, axis=-1, keepdims=True)


def moderateness(curve: BicharCurve) -> str:
    """moderateness - classification of sup_t |xi_eps(t)| (sampled, not certified)"""
    sups = np.asarray([float(np.nanmax(np.linalg.norm(curve.xi[k], axis=-1))) for k in range(len(curve.eps))])
    return classify(GenNumber(curve.eps, sups))

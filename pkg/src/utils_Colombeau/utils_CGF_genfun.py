# Colombeau generalized functions utilities
# genfun - grid sampled generalized functions, mollifier embeddings, point values and G-infinity test


# SpatialGrid  : uniform grid in 1 or 2 dimensions, fixed for all epsilons
# GridFn       : one sample array per epsilon over a spatial grid
# Mollifier    : normalized smooth bump exp(-k/(1-x^2)) on (-1,1)
# GenPoint     : one point per epsilon, representative of a generalized point
# DistSpec     : delta, Heaviside, smooth function and finite linear combinations


"""
Module provides grid sampled generalized functions and the operations acting on their representatives.
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
from typing import Any, Literal

import itertools
import json
import logging
import math
import pathlib

import numpy as np
from scipy import integrate, interpolate

from utils_Colombeau.utils_CGF_classes import ErrorDomain, ErrorGrid, ErrorResolvability
from utils_Colombeau.utils_CGF_decorators import samegrid
from utils_Colombeau.utils_CGF_scale import (
    EpsGrid, GenNumber, ScaleFn, estimate_log_corrected_valuation, estimate_valuation
)



logger = logging.getLogger(__name__)

MIN_NODES_PER_AXIS = 64
MAX_DERIVATIVE_ORDER = 4
RESOLVABILITY_FACTOR = 4.0
MASS_TOLERANCE = 1e-10

Box = tuple[tuple[float, float], ...]



@dataclass(frozen=True)
class SpatialGrid:
    """
    SpatialGrid - uniform grid on a box in 1 or 2 dimensions
    """

    mins: tuple[float, ...]
    maxs: tuple[float, ...]
    counts: tuple[int, ...]

    def __post_init__(self):

        object.__setattr__(self, "mins", tuple(float(v) for v in self.mins))
        object.__setattr__(self, "maxs", tuple(float(v) for v in self.maxs))
        object.__setattr__(self, "counts", tuple(int(v) for v in self.counts))
        if not (len(self.mins) == len(self.maxs) == len(self.counts)) or len(self.mins) not in {1, 2}:
            err_msg = "Spatial grid needs matching min, max and count per axis in 1 or 2 dimensions."
            raise ErrorGrid(err_msg)
        for lo, hi, n in zip(self.mins, self.maxs, self.counts, strict=True):
            if not lo < hi:
                err_msg = f"Spatial grid axis needs min < max, got [{lo}, {hi}]."
                raise ErrorGrid(err_msg)
            if n < MIN_NODES_PER_AXIS:
                err_msg = f"Spatial grid needs at least {MIN_NODES_PER_AXIS} nodes per axis, got {n}."
                raise ErrorGrid(err_msg)

    @classmethod
    def line(cls, xmin: float, xmax: float, count: int) -> SpatialGrid:
        return cls((xmin,), (xmax,), (count,))

    @classmethod
    def plane(cls, xmin: float, xmax: float, nx: int, ymin: float, ymax: float, ny: int) -> SpatialGrid:
        return cls((xmin, ymin), (xmax, ymax), (nx, ny))

    @property
    def dimension(self) -> int:
        return len(self.counts)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.counts

    @property
    def h(self) -> tuple[float, ...]:
        return tuple((hi - lo) / (n - 1) for lo, hi, n in zip(self.mins, self.maxs, self.counts, strict=True))

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(hi - lo for lo, hi in zip(self.mins, self.maxs, strict=True))

    @property
    def axes(self) -> list[np.ndarray]:
        return [np.linspace(lo, hi, n) for lo, hi, n in zip(self.mins, self.maxs, self.counts, strict=True)]

    @property
    def box(self) -> Box:
        return tuple(zip(self.mins, self.maxs, strict=True))

    def mesh(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*self.axes, indexing="ij"))

    def points(self) -> np.ndarray:
        """points - node coordinates, shape grid.shape + (dimension,)"""
        return np.stack(self.mesh(), axis=-1)

    def contains(self, point: Sequence[float], tol: float = 1e-12) -> bool:
        return all(lo - tol <= x <= hi + tol for x, lo, hi in zip(point, self.mins, self.maxs, strict=True))

    def to_dict(self) -> dict[str, Any]:
        return {"mins": list(self.mins), "maxs": list(self.maxs), "counts": list(self.counts)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SpatialGrid:
        return cls(tuple(data["mins"]), tuple(data["maxs"]), tuple(data["counts"]))



@dataclass(frozen=True, eq=False)
class GridFn:
    """
    GridFn - representative of a generalized function sampled on a spatial grid

    samples has shape (len(eps),) + grid.shape, one array per epsilon.
    """

    grid: SpatialGrid
    eps: EpsGrid
    samples: np.ndarray

    def __post_init__(self):

        samples = np.array(self.samples)
        if not (np.issubdtype(samples.dtype, np.floating) or np.issubdtype(samples.dtype, np.complexfloating)):
            samples = samples.astype(float)
        expected = (len(self.eps), *self.grid.shape)
        if samples.shape != expected:
            err_msg = f"GridFn samples have shape {samples.shape}, expected {expected}."
            raise ErrorGrid(err_msg)
        if not np.all(np.isfinite(samples)):
            err_msg = "GridFn samples must be finite."
            raise ErrorDomain(err_msg)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __getitem__(self, k: int) -> np.ndarray:
        return self.samples[k]

    def __len__(self) -> int:
        return len(self.eps)

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.samples)

    def __add__(self, other: GridFn) -> GridFn:
        return gf_add(self, other)

    def __mul__(self, other: GridFn | complex) -> GridFn:
        if isinstance(other, GridFn):
            return gf_mul(self, other)
        return gf_scale(self, other)

    __rmul__ = __mul__


@samegrid
def gf_add(u: GridFn, v: GridFn) -> GridFn:
    """gf_add - per-epsilon sum"""
    return GridFn(u.grid, u.eps, u.samples + v.samples)

@samegrid
def gf_mul(u: GridFn, v: GridFn) -> GridFn:
    """gf_mul - per-epsilon product"""
    return GridFn(u.grid, u.eps, u.samples * v.samples)

def gf_scale(u: GridFn, c: complex) -> GridFn:
    if complex(c).imag == 0 and u.is_real:
        return GridFn(u.grid, u.eps, float(complex(c).real) * u.samples)
    return GridFn(u.grid, u.eps, complex(c) * u.samples)


def sample(grid: SpatialGrid, eps: EpsGrid, f: Callable[..., np.ndarray]) -> GridFn:
    """
    sample - GridFn with samples f(eps, *mesh) per epsilon

    Args:
        grid (SpatialGrid): spatial grid
        eps (EpsGrid): epsilon grid
        f (Callable): function of epsilon and the coordinate arrays

    Returns:
        GridFn: sampled net
    """

    mesh = grid.mesh()
    samples = [np.broadcast_to(np.asarray(f(e, *mesh)), grid.shape) for e in eps.epsilons]
    return GridFn(grid, eps, np.stack(samples))



@dataclass(frozen=True)
class Mollifier:
    """
    Mollifier - normalized smooth bump rho(x) = exp(-k/(1-x^2))/Z on (-1,1)

    The antiderivative is tabulated on [0,1] and interpolated by a cubic
    spline; symmetry gives cdf(0) = 1/2 exactly.
    """

    sharpness: float = 1.0
    table_points: int = field(default=4001, compare=False)

    def __post_init__(self):

        if self.sharpness <= 0:
            err_msg = f"Mollifier sharpness must be positive, got {self.sharpness}."
            raise ErrorDomain(err_msg)
        norm, _ = integrate.quad(self._psi, -1.0, 1.0, epsabs=1e-15, epsrel=1e-13, limit=200)
        object.__setattr__(self, "_norm", norm)
        y = np.linspace(0.0, 1.0, self.table_points)
        halfmass = interpolate.CubicSpline(y, self._psi(y) / norm).antiderivative()
        object.__setattr__(self, "_halfmass", halfmass)
        object.__setattr__(self, "_halfmass_total", float(halfmass(1.0)))
        mass, _ = integrate.quad(self.rho, -1.0, 1.0, epsabs=1e-15, epsrel=1e-13, limit=200)
        if abs(mass - 1.0) > MASS_TOLERANCE:
            err_msg = f"Mollifier mass {mass} deviates from 1."
            raise ErrorDomain(err_msg)

    @classmethod
    def parse(cls, tag: str) -> Mollifier:
        """parse - mollifier from tag "bump" or "bump:k" """
        text = tag.strip()
        if text == "bump":
            return cls()
        if text.startswith("bump:"):
            try:
                return cls(float(text[5:]))
            except ValueError as exc:
                err_msg = f"Invalid mollifier tag '{tag}'."
                raise ErrorDomain(err_msg) from exc
        err_msg = f"Unknown mollifier tag '{tag}'."
        raise ErrorDomain(err_msg)

    @property
    def tag(self) -> str:
        return "bump" if self.sharpness == 1.0 else f"bump:{self.sharpness:g}"

    def _psi(self, x: np.ndarray | float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        inside = np.abs(x) < 1.0
        xi = x[inside]
        out[inside] = np.exp(-self.sharpness / (1.0 - xi * xi))
        return out

    def rho(self, x: np.ndarray | float) -> np.ndarray:
        return self._psi(x) / self._norm  # type: ignore[attr-defined]

    def drho(self, x: np.ndarray | float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        inside = np.abs(x) < 1.0
        xi = x[inside]
        out[inside] = self.rho(xi) * (-2.0 * self.sharpness * xi / (1.0 - xi * xi) ** 2)
        return out

    def cdf(self, x: np.ndarray | float) -> np.ndarray:
        """cdf - antiderivative of rho from -1, equal to 0 below -1 and 1 above 1"""
        x = np.asarray(x, dtype=float)
        y = np.minimum(np.abs(x), 1.0)
        half = self._halfmass(y) / (2.0 * self._halfmass_total)  # type: ignore[attr-defined]
        return 0.5 + np.sign(x) * half

    def scaled(self, x: np.ndarray | float, gamma: float) -> np.ndarray:
        """scaled - rho^eps(x) = gamma * rho(gamma * x)"""
        return gamma * self.rho(gamma * np.asarray(x, dtype=float))

    def scaled_derivative(self, x: np.ndarray | float, gamma: float) -> np.ndarray:
        return gamma * gamma * self.drho(gamma * np.asarray(x, dtype=float))

    @property
    def peak(self) -> float:
        return float(self.rho(0.0))



@dataclass(frozen=True)
class DeltaSpec:
    x0: tuple[float, ...]

@dataclass(frozen=True)
class HeavisideSpec:
    """HeavisideSpec - "left" is 1 for x < x0, "right" is 1 for x > x0, acting on one axis"""
    x0: float
    orientation: Literal["left", "right"] = "right"
    axis: int = 0

@dataclass(frozen=True)
class SmoothSpec:
    f: Callable[..., np.ndarray]
    name: str = "smooth"

@dataclass(frozen=True)
class CombinationSpec:
    terms: tuple[tuple[complex, DistSpec], ...]

DistSpec = DeltaSpec | HeavisideSpec | SmoothSpec | CombinationSpec


SMOOTH_FUNCTIONS: dict[str, Callable[..., np.ndarray]] = {
    "one": lambda *xs: np.ones_like(xs[0]),
    "gaussian": lambda *xs: np.exp(-sum(x * x for x in xs)),
    "cos": lambda *xs: np.cos(sum(xs)),
    "sin": lambda *xs: np.sin(sum(xs)),
    "x2": lambda *xs: sum(x * x for x in xs),
}


def parse_dist_spec(data: dict[str, Any], dimension: int = 1) -> DistSpec:
    """
    parse_dist_spec - DistSpec from its JSON form

    Forms: {"type": "delta", "x0": ...}, {"type": "heaviside", "x0": ..., "orientation": ...},
    {"type": "smooth", "f": name}, {"type": "combination", "terms": [{"coef": c, "spec": {...}}]}.

    Args:
        data (dict): JSON form
        dimension (int, optional): spatial dimension. Defaults to 1.

    Returns:
        DistSpec: parsed specification
    """

    kind = data.get("type")
    if kind == "delta":
        x0 = data.get("x0", 0.0)
        coords = tuple(float(v) for v in (x0 if isinstance(x0, list | tuple) else [x0] * dimension))
        if len(coords) != dimension:
            err_msg = f"delta x0 {x0} does not match dimension {dimension}"
            raise ErrorDomain(err_msg)
        return DeltaSpec(coords)
    if kind == "heaviside":
        orientation = data.get("orientation", "right")
        if orientation not in {"left", "right"}:
            err_msg = f"Unknown Heaviside orientation '{orientation}'."
            raise ErrorDomain(err_msg)
        return HeavisideSpec(float(data.get("x0", 0.0)), orientation, int(data.get("axis", 0)))
    if kind == "smooth":
        name = data.get("f", "gaussian")
        if name not in SMOOTH_FUNCTIONS:
            err_msg = f"Unknown smooth function '{name}', known: {sorted(SMOOTH_FUNCTIONS)}."
            raise ErrorDomain(err_msg)
        return SmoothSpec(SMOOTH_FUNCTIONS[name], name)
    if kind == "combination":
        terms = tuple((complex(term["coef"]), parse_dist_spec(term["spec"], dimension)) for term in data["terms"])
        return CombinationSpec(terms)
    err_msg = f"Unknown distribution type '{kind}'."
    raise ErrorDomain(err_msg)


def singular_support(spec: DistSpec) -> list[tuple[float, ...]]:
    """singular_support - known singular base points of a DistSpec (hyperplane points for Heaviside)"""
    if isinstance(spec, DeltaSpec):
        return [spec.x0]
    if isinstance(spec, HeavisideSpec):
        return [(spec.x0,)]
    if isinstance(spec, CombinationSpec):
        return [p for coef, term in spec.terms if coef != 0 for p in singular_support(term)]
    return []


_GL_NODES = {n: np.polynomial.legendre.leggauss(n) for n in (16, 48)}


def mollified(spec: DistSpec, mollifier: Mollifier, gamma: float) -> Callable[[np.ndarray], np.ndarray]:
    """
    mollified - evaluator of dist * rho^eps at points of shape (..., d)

    Args:
        spec (DistSpec): distribution
        mollifier (Mollifier): mollifier
        gamma (float): scale value, mollifier width 1/gamma

    Returns:
        Callable: evaluator
    """

    if isinstance(spec, DeltaSpec):
        def evaluate_delta(points: np.ndarray) -> np.ndarray:
            out = np.ones(points.shape[:-1])
            for axis, c in enumerate(spec.x0):
                out = out * mollifier.scaled(points[..., axis] - c, gamma)
            return out
        return evaluate_delta
    if isinstance(spec, HeavisideSpec):
        sign = -1.0 if spec.orientation == "left" else 1.0
        def evaluate_heaviside(points: np.ndarray) -> np.ndarray:
            return mollifier.cdf(sign * gamma * (points[..., spec.axis] - spec.x0))
        return evaluate_heaviside
    if isinstance(spec, SmoothSpec):
        def evaluate_smooth(points: np.ndarray) -> np.ndarray:
            d = points.shape[-1]
            nodes, weights = _GL_NODES[48 if d == 1 else 16]
            kernel = weights * mollifier.rho(nodes)
            total = np.zeros(points.shape[:-1], dtype=complex)
            norm = 0.0
            for idx in itertools.product(range(nodes.shape[0]), repeat=d):
                w = float(np.prod([kernel[i] for i in idx]))
                shift = np.asarray([nodes[i] for i in idx]) / gamma
                total = total + w * np.asarray(spec.f(*[points[..., a] - shift[a] for a in range(d)]))
                norm += w
            values = total / norm
            return values.real if np.all(values.imag == 0) else values
        return evaluate_smooth
    evaluators = [(coef, mollified(term, mollifier, gamma)) for coef, term in spec.terms]
    def evaluate_combination(points: np.ndarray) -> np.ndarray:
        values = sum(coef * ev(points) for coef, ev in evaluators)
        values = np.asarray(values)
        return values.real if np.all(values.imag == 0) else values
    return evaluate_combination


def check_resolvability(gammas: np.ndarray, eps: EpsGrid, grid: SpatialGrid):
    """
    check_resolvability - mollifier width 1/gamma must be at least 4h at every epsilon

    Args:
        gammas (np.ndarray): scale values
        eps (EpsGrid): epsilon grid
        grid (SpatialGrid): spatial grid
    """

    hmax = max(grid.h)
    for e, g in zip(eps.epsilons, gammas, strict=True):
        if 1.0 / g < RESOLVABILITY_FACTOR * hmax:
            err_msg = (
                f"Mollifier width 1/gamma = {1.0 / g:.4g} at eps = {e:.6g} is below "
                f"{RESOLVABILITY_FACTOR:g}h = {RESOLVABILITY_FACTOR * hmax:.4g}."
            )
            raise ErrorResolvability(err_msg)


def embed(dist_spec: DistSpec, mollifier: Mollifier, scale: ScaleFn, grid: SpatialGrid, eps: EpsGrid) -> GridFn:
    """
    embed - mollifier embedding of a distribution, samples (dist * rho^eps) on the grid

    Args:
        dist_spec (DistSpec): distribution
        mollifier (Mollifier): mollifier
        scale (ScaleFn): scale gamma_eps, mollifier rho^eps(x) = gamma rho(gamma x)
        grid (SpatialGrid): spatial grid
        eps (EpsGrid): epsilon grid

    Returns:
        GridFn: embedded net
    """

    gammas = scale.gammas(eps)
    check_resolvability(gammas, eps, grid)
    points = grid.points()
    samples = np.stack([mollified(dist_spec, mollifier, g)(points) for g in gammas])
    return GridFn(grid, eps, samples)



def _stencil_weights(offsets: np.ndarray, order: int, step: float) -> np.ndarray:
    """finite difference weights of d^order/dx^order at offset 0 for nodes at offsets * step"""
    vandermonde = np.vander(offsets.astype(float), increasing=True).T
    rhs = np.zeros(offsets.shape[0])
    rhs[order] = math.factorial(order)
    return np.linalg.solve(vandermonde, rhs) / step**order


def derivative(u: GridFn, axis: int = 0, order: int = 1) -> GridFn:
    """
    derivative - per-epsilon finite difference derivative

    One stencil of the requested order per node, second order accurate: central
    with 2*ceil(order/2)+1 nodes in the interior, one-sided with order+2 nodes
    near the boundary.

    Args:
        u (GridFn): net
        axis (int, optional): spatial axis. Defaults to 0.
        order (int, optional): derivative order 0..4. Defaults to 1.

    Returns:
        GridFn: derivative net
    """

    if not (0 <= order <= MAX_DERIVATIVE_ORDER):
        err_msg = f"Derivative order must lie in 0..{MAX_DERIVATIVE_ORDER}, got {order}."
        raise ErrorDomain(err_msg)
    if not (0 <= axis < u.grid.dimension):
        err_msg = f"Axis {axis} outside grid dimension {u.grid.dimension}."
        raise ErrorDomain(err_msg)
    if order == 0:
        return GridFn(u.grid, u.eps, np.array(u.samples))
    h = u.grid.h[axis]
    values = np.moveaxis(np.asarray(u.samples), axis + 1, -1)
    n = values.shape[-1]
    half = (order + 1) // 2
    central = _stencil_weights(np.arange(-half, half + 1), order, h)
    result = np.zeros(values.shape, dtype=np.result_type(values, float))
    result[..., half:n - half] = sum(w * values[..., j:n - 2 * half + j] for j, w in enumerate(central))
    width = order + 2
    for i in range(half):
        result[..., i] = values[..., :width] @ _stencil_weights(np.arange(width) - i, order, h)
        j = n - 1 - i
        result[..., j] = values[..., n - width:] @ _stencil_weights(np.arange(n - width, n) - j, order, h)
    return GridFn(u.grid, u.eps, np.moveaxis(result, -1, axis + 1))


def _multi_indices(dimension: int, order: int) -> list[tuple[int, ...]]:
    return [
        alpha for alpha in itertools.product(range(min(order, MAX_DERIVATIVE_ORDER) + 1), repeat=dimension)
        if sum(alpha) <= order
    ]


def partial(u: GridFn, alpha: tuple[int, ...]) -> GridFn:
    """partial - mixed derivative with multi-index alpha"""
    result = u
    for axis, order in enumerate(alpha):
        if order > 0:
            result = derivative(result, axis, order)
    return result


def _region_mask(grid: SpatialGrid, region: Box | None) -> np.ndarray:
    if region is None:
        region = tuple((lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo)) for lo, hi in grid.box)
    mesh = grid.mesh()
    mask = np.ones(grid.shape, dtype=bool)
    for axis, (lo, hi) in enumerate(region):
        mask &= (mesh[axis] >= lo) & (mesh[axis] <= hi)
    if not np.any(mask):
        err_msg = f"Region {region} contains no grid nodes."
        raise ErrorDomain(err_msg)
    return mask


def sup_net(u: GridFn, region: Box | None = None) -> GenNumber:
    """sup_net - per-epsilon sup of |u| over a region"""
    mask = _region_mask(u.grid, region)
    return GenNumber(u.eps, np.asarray([np.max(np.abs(u.samples[k][mask])) for k in range(len(u.eps))]))


def ultra_seminorm(u: GridFn, region: Box | None = None, order: int = 0) -> float:
    """
    ultra_seminorm - ultra-pseudo-seminorm exp(-val(sup_region max_|alpha|<=order |d^alpha u|))

    Args:
        u (GridFn): net
        region (Box | None, optional): compact region, interior of the grid if None. Defaults to None.
        order (int, optional): derivative order. Defaults to 0.

    Returns:
        float: seminorm estimate, 0 for nets vanishing on the region
    """

    nets = [sup_net(partial(u, alpha), region).absolute for alpha in _multi_indices(u.grid.dimension, order)]
    estimate = estimate_valuation(GenNumber(u.eps, np.max(np.stack(nets), axis=0)))
    return 0.0 if estimate.infinite else math.exp(-estimate.b_hat)



@dataclass(frozen=True, eq=False)
class GenPoint:
    """
    GenPoint - representative of a generalized point, coords of shape (len(eps), d)
    """

    eps: EpsGrid
    coords: np.ndarray
    compact_flag: bool = True
    box: Box | None = None

    def __post_init__(self):

        coords = np.array(self.coords, dtype=float)
        if coords.ndim == 1:
            coords = coords[:, None]
        if coords.shape[0] != len(self.eps):
            err_msg = f"GenPoint has {coords.shape[0]} coordinates for {len(self.eps)} epsilons."
            raise ErrorGrid(err_msg)
        if not np.all(np.isfinite(coords)):
            err_msg = "GenPoint coordinates must be finite."
            raise ErrorDomain(err_msg)
        if self.compact_flag and self.box is not None:
            for axis, (lo, hi) in enumerate(self.box):
                if np.any(coords[:, axis] < lo) or np.any(coords[:, axis] > hi):
                    err_msg = f"GenPoint flagged compact leaves its bounding box on axis {axis}."
                    raise ErrorDomain(err_msg)
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def constant(cls, eps: EpsGrid, x0: float | Sequence[float]) -> GenPoint:
        point = np.atleast_1d(np.asarray(x0, dtype=float))
        return cls(eps, np.tile(point, (len(eps), 1)))

    @classmethod
    def from_function(cls, eps: EpsGrid, f: Callable[[float], float | Sequence[float]], compact_flag: bool = True,
                      box: Box | None = None) -> GenPoint:
        return cls(eps, np.asarray([np.atleast_1d(f(e)) for e in eps.epsilons], dtype=float), compact_flag, box)

    @property
    def dimension(self) -> int:
        return int(self.coords.shape[1])


def _interpolant(grid: SpatialGrid, values: np.ndarray, order: int) -> Callable[[np.ndarray], complex]:
    if grid.dimension == 1:
        spline = interpolate.make_interp_spline(grid.axes[0], values, k=order)
        return lambda p: complex(spline(p[0]))
    spline2d = interpolate.RectBivariateSpline(grid.axes[0], grid.axes[1], values, kx=order, ky=order)
    return lambda p: complex(spline2d(p[0], p[1], grid=False))


def point_value(u: GridFn, p: GenPoint, order: int = 3) -> GenNumber:
    """
    point_value - values u_eps(x_eps) by spline interpolation

    Args:
        u (GridFn): net
        p (GenPoint): generalized point on the same epsilon grid
        order (int, optional): interpolation order. Defaults to 3 (cubic).

    Returns:
        GenNumber: point values
    """

    if p.eps != u.eps:
        err_msg = "Point and function live on different epsilon grids."
        raise ErrorGrid(err_msg)
    if p.dimension != u.grid.dimension:
        err_msg = f"Point dimension {p.dimension} differs from grid dimension {u.grid.dimension}."
        raise ErrorDomain(err_msg)
    values = []
    for k in range(len(u.eps)):
        coords = p.coords[k]
        if not u.grid.contains(coords):
            err_msg = f"Point {tuple(coords)} at eps = {u.eps.epsilons[k]:.6g} lies outside the grid."
            raise ErrorDomain(err_msg)
        sampled = u.samples[k]
        value = _interpolant(u.grid, sampled.real, order)(coords)
        if np.iscomplexobj(sampled):
            value += 1j * _interpolant(u.grid, sampled.imag, order)(coords)
        values.append(value)
    return GenNumber(u.eps, np.asarray(values))


def support_of_point(p: GenPoint, domain_box: Box, cell_size: float) -> frozenset[tuple[int, ...]]:
    """
    support_of_point - cells of a box partition hit by the coordinates of the grid tail half

    Args:
        p (GenPoint): generalized point
        domain_box (Box): box partitioned into cells
        cell_size (float): edge length of the cells

    Returns:
        frozenset[tuple[int, ...]]: cell indices
    """

    if cell_size <= 0:
        err_msg = f"Cell size must be positive, got {cell_size}."
        raise ErrorDomain(err_msg)
    n = len(p.eps)
    cells = set()
    for coords in p.coords[n // 2:]:
        if all(lo <= x <= hi for x, (lo, hi) in zip(coords, domain_box, strict=True)):
            cells.add(tuple(int(math.floor((x - lo) / cell_size)) for x, (lo, _) in zip(coords, domain_box, strict=True)))
    return frozenset(cells)


def integrate_grid(grid: SpatialGrid, values: np.ndarray) -> complex:
    """integrate_grid - trapezoid quadrature over all axes"""
    result = values
    for axis in reversed(range(grid.dimension)):
        result = integrate.trapezoid(result, grid.axes[axis], axis=axis)
    return complex(result)


@samegrid
def kernel_pairing(k: GridFn, u: GridFn) -> GenNumber:
    """
    kernel_pairing - per-epsilon trapezoid quadrature of the integral of k * u

    Args:
        k (GridFn): kernel
        u (GridFn): function

    Returns:
        GenNumber: pairing net
    """

    return GenNumber(u.eps, np.asarray([integrate_grid(u.grid, k.samples[i] * u.samples[i]) for i in range(len(u.eps))]))


def delta_kernel(p: GenPoint, mollifier: Mollifier, scale: ScaleFn, grid: SpatialGrid) -> GridFn:
    """
    delta_kernel - kernel v_eps(y) = rho^eps(x_eps - y) of the point evaluation at p

    Args:
        p (GenPoint): generalized point
        mollifier (Mollifier): mollifier
        scale (ScaleFn): scale of the mollifier
        grid (SpatialGrid): spatial grid

    Returns:
        GridFn: kernel net
    """

    gammas = scale.gammas(p.eps)
    check_resolvability(gammas, p.eps, grid)
    points = grid.points()
    samples = []
    for k, g in enumerate(gammas):
        values = np.ones(grid.shape)
        for axis in range(grid.dimension):
            values = values * mollifier.scaled(p.coords[k, axis] - points[..., axis], g)
        samples.append(values)
    return GridFn(grid, p.eps, np.stack(samples))



@dataclass(frozen=True)
class GinftyResult:
    regular: bool
    N_witness: float
    slope: float
    valuations: dict[tuple[int, ...], float] = field(default_factory=dict)


def is_ginfty(u: GridFn, region: Box | None = None, alpha_max: int = 4, slope_tol: float = 0.25) -> GinftyResult:
    """
    is_ginfty - G-infinity regularity test on a region

    v(alpha) is the power part of the valuation of sup_region |d^alpha u|, fitted
    with a log(log(1/eps)) term. The net is regular iff the slope of v(alpha)
    against |alpha| is at least -slope_tol.

    Args:
        u (GridFn): net
        region (Box | None, optional): region, interior of the grid if None. Defaults to None.
        alpha_max (int, optional): largest derivative order, at most 4. Defaults to 4.
        slope_tol (float, optional): slope tolerance. Defaults to 0.25.

    Returns:
        GinftyResult: verdict, witness N = -min v(alpha), slope and all v(alpha)
    """

    if alpha_max > MAX_DERIVATIVE_ORDER:
        err_msg = f"alpha_max must not exceed {MAX_DERIVATIVE_ORDER}."
        raise ErrorDomain(err_msg)
    valuations: dict[tuple[int, ...], float] = {}
    for alpha in _multi_indices(u.grid.dimension, alpha_max):
        estimate = estimate_log_corrected_valuation(sup_net(partial(u, alpha), region))
        if not estimate.infinite:
            valuations[alpha] = estimate.b_hat
    if not valuations:
        return GinftyResult(True, 0.0, 0.0, valuations)
    orders = np.asarray([sum(alpha) for alpha in valuations], dtype=float)
    v = np.asarray(list(valuations.values()))
    slope = float(np.polyfit(orders, v, 1)[0]) if np.unique(orders).shape[0] > 1 else 0.0
    logger.debug("G-infinity test: v(alpha) = %s, slope %.4g", valuations, slope)
    return GinftyResult(slope >= -slope_tol, float(-v.min()), slope, valuations)



def save_gridfn(u: GridFn, directory: str | pathlib.Path, provenance: dict[str, Any] | None = None) -> pathlib.Path:
    """
    save_gridfn - persist a GridFn as metadata JSON plus one .npy array per epsilon

    Args:
        u (GridFn): net
        directory (str | pathlib.Path): target directory, created if missing
        provenance (dict | None, optional): provenance entries. Defaults to None.

    Returns:
        pathlib.Path: the directory
    """

    target = pathlib.Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    metadata = {
        "grid": u.grid.to_dict(),
        "eps": u.eps.to_dict(),
        "dtype": str(u.samples.dtype),
        "files": [f"samples_{k:03d}.npy" for k in range(len(u.eps))],
        "provenance": provenance or {},
    }
    for k, filename in enumerate(metadata["files"]):
        np.save(target / filename, u.samples[k])
    (target / "metadata.json").write_text(json.dumps(metadata, indent=2, sort_keys=True), encoding="utf-8")
    return target


def load_gridfn(directory: str | pathlib.Path) -> GridFn:
    """load_gridfn - read a GridFn written by save_gridfn"""
    source = pathlib.Path(directory)
    metadata = json.loads((source / "metadata.json").read_text(encoding="utf-8"))
    samples = np.stack([np.load(source / filename) for filename in metadata["files"]])
    return GridFn(SpatialGrid.from_dict(metadata["grid"]), EpsGrid.from_dict(metadata["eps"]), samples)

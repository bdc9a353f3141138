# Colombeau generalized functions utilities
# symbols - slow scale symbol nets, micro-ellipticity, quantization and the noncharacteristic example


# SymbolNet            : closed form family a_eps(x, xi) of order m with declared parameter nets
# EllipticityReport    : fitted witnesses (r_eps), (s_eps) of a lower bound |a| >= <xi>^m / s on |xi| >= r
# EllipticityTable     : scan of micro-ellipticity verdicts, emitted as CSV

# Symbols are evaluated as a(k, x, xi) for the k-th epsilon with x and xi
# tuples of coordinate arrays that broadcast against each other.


"""
Module provides generalized symbols, micro-ellipticity tests, left quantization and related examples.
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

import itertools
import logging
import math

import numpy as np
import pandas as pd
from scipy import fft, integrate

from utils_Colombeau.utils_CGF_classes import ErrorDomain, baseReportclass
from utils_Colombeau.utils_CGF_genfun import GinftyResult, GridFn, SpatialGrid, integrate_grid, is_ginfty
from utils_Colombeau.utils_CGF_scale import EpsGrid, GenNumber, ScaleFn, is_slow_scale, make_geometric_grid
from utils_Colombeau.utils_CGF_wavefront import BAND_HI_FRACTION, WFReport



logger = logging.getLogger(__name__)

Coords = tuple[np.ndarray, ...]
Evaluator = Callable[[int, Coords, Coords], np.ndarray]

FD_RELATIVE_STEP = 1e-3
MAX_WITNESS = 1e8
ZERO_TOL = 1e-8



def japanese(xi: Coords) -> np.ndarray:
    """japanese - <xi> = (1 + |xi|^2)^(1/2)"""
    return np.sqrt(1.0 + sum(np.asarray(c) ** 2 for c in xi))


@dataclass(frozen=True)
class SymbolNet:
    """
    SymbolNet - net of symbols a_eps(x, xi) of order m given by a closed form family
    """

    name: str
    order: float
    dimension: int
    evaluator: Evaluator
    eps: EpsGrid
    params: dict[str, GenNumber] = field(default_factory=dict, compare=False)
    x_only: bool = False
    xi_only: bool = False

    def evaluate(self, k: int, x: Coords, xi: Coords) -> np.ndarray:
        """
        evaluate - a_eps_k(x, xi), broadcast over coordinate arrays

        Args:
            k (int): epsilon index
            x (Coords): space coordinates
            xi (Coords): frequency coordinates

        Returns:
            np.ndarray: symbol values
        """

        x = tuple(np.asarray(c, dtype=float) for c in x)
        xi = tuple(np.asarray(c, dtype=float) for c in xi)
        if len(x) != self.dimension or len(xi) != self.dimension:
            err_msg = f"Symbol '{self.name}' expects {self.dimension} space and frequency coordinates."
            raise ErrorDomain(err_msg)
        shape = np.broadcast_shapes(*(c.shape for c in x + xi))
        values = np.broadcast_to(np.asarray(self.evaluator(k, x, xi)), shape)
        if not np.all(np.isfinite(values)):
            err_msg = f"Symbol '{self.name}' is not finite at eps = {self.eps.epsilons[k]:.6g}."
            raise ErrorDomain(err_msg)
        return values



def one_plus_cx2(c: GenNumber) -> SymbolNet:
    """one_plus_cx2 - a_eps(x, xi) = 1 + c_eps x^2, order 0"""
    if np.any(c.real < 0):
        err_msg = "Coefficient net c must be nonnegative."
        raise ErrorDomain(err_msg)
    cvals = c.real
    return SymbolNet("1+c*x^2", 0.0, 1, lambda k, x, xi: 1.0 + cvals[k] * x[0] ** 2, c.grid, {"c": c}, x_only=True)

def xi_symbol(eps: EpsGrid) -> SymbolNet:
    """xi_symbol - a(x, xi) = xi, order 1"""
    return SymbolNet("xi", 1.0, 1, lambda k, x, xi: xi[0], eps, xi_only=True)

def derivative_multiplier(eps: EpsGrid, dimension: int = 1, axis: int = 0) -> SymbolNet:
    """derivative_multiplier - a(x, xi) = i xi_axis, the symbol of d/dx_axis"""
    return SymbolNet("multiplier:i*xi", 1.0, dimension, lambda k, x, xi: 1j * xi[axis], eps, xi_only=True)

def japanese_symbol(eps: EpsGrid, m: float, dimension: int = 1, scale: ScaleFn | None = None) -> SymbolNet:
    """japanese_symbol - a_eps(x, xi) = w_eps <xi>^m with w = 1 or the values of a scale"""
    weights = np.ones(len(eps)) if scale is None else scale.gammas(eps)
    params = {} if scale is None else {"w": scale.values(eps)}
    name = f"japanese:{m:g}" if scale is None else f"scaled-japanese:{scale.tag}:{m:g}"
    return SymbolNet(name, m, dimension, lambda k, x, xi: weights[k] * japanese(xi) ** m, eps, params, xi_only=True)

def transport_symbol(coefficient: Callable[[int, np.ndarray], np.ndarray], eps: EpsGrid,
                     name: str = "transport:tau+theta*xi") -> SymbolNet:
    """
    transport_symbol - principal symbol tau + a_eps(x) xi of D_t + a(x) D_x on the (x, t) plane

    Args:
        coefficient (Callable): a_eps(x) as coefficient(k, x)
        eps (EpsGrid): epsilon grid
        name (str, optional): symbol name. Defaults to "transport:tau+theta*xi".

    Returns:
        SymbolNet: order 1 symbol in 2 dimensions
    """

    return SymbolNet(name, 1.0, 2, lambda k, x, xi: xi[1] + coefficient(k, x[0]) * xi[0], eps)


def parse_symbol(tag: str, eps: EpsGrid, c_scale: ScaleFn | None = None,
                 coefficient: Callable[[int, np.ndarray], np.ndarray] | None = None) -> SymbolNet:
    """
    parse_symbol - symbol family from its tag

    Tags: "1+c*x^2", "xi", "multiplier:i*xi", "japanese:m", "scaled-japanese:<scale>:m",
    "transport:tau+theta*xi".

    Args:
        tag (str): symbol tag
        eps (EpsGrid): epsilon grid
        c_scale (ScaleFn | None, optional): parameter net c of "1+c*x^2". Defaults to None (log).
        coefficient (Callable | None, optional): coefficient of the transport symbol. Defaults to None.

    Returns:
        SymbolNet: symbol
    """

    text = tag.strip()
    try:
        if text == "1+c*x^2":
            return one_plus_cx2((c_scale or ScaleFn.parse("log")).values(eps))
        if text == "xi":
            return xi_symbol(eps)
        if text == "multiplier:i*xi":
            return derivative_multiplier(eps)
        if text.startswith("japanese:"):
            return japanese_symbol(eps, float(text.split(":", 1)[1]))
        if text.startswith("scaled-japanese:"):
            scaletag, m = text[len("scaled-japanese:"):].rsplit(":", 1)
            return japanese_symbol(eps, float(m), scale=ScaleFn.parse(scaletag))
    except ValueError as exc:
        err_msg = f"Invalid symbol tag '{tag}'."
        raise ErrorDomain(err_msg) from exc
    if text == "transport:tau+theta*xi":
        if coefficient is None:
            err_msg = "Transport symbol needs a coefficient field."
            raise ErrorDomain(err_msg)
        return transport_symbol(coefficient, eps)
    err_msg = f"Unknown symbol tag '{tag}'."
    raise ErrorDomain(err_msg)



def _stencil(order: int, step: float) -> list[tuple[float, float]]:
    """central difference stencil of given order, pairs (offset, weight)"""
    return [
        ((0.5 * order - j) * step, (-1) ** j * math.comb(order, j) / step ** order)
        for j in range(order + 1)
    ]


def symbol_derivative(a: SymbolNet, k: int, x: Coords, xi: Coords, alpha: tuple[int, ...],
                      beta: tuple[int, ...]) -> np.ndarray:
    """
    symbol_derivative - d^alpha_xi d^beta_x a_eps_k by central differences

    Steps are 1e-3 (1 + |x_j|) in x and 1e-3 <xi> in xi.

    Args:
        a (SymbolNet): symbol
        k (int): epsilon index
        x (Coords): space coordinates
        xi (Coords): frequency coordinates
        alpha (tuple[int, ...]): xi multi-index
        beta (tuple[int, ...]): x multi-index

    Returns:
        np.ndarray: derivative values
    """

    x = tuple(np.asarray(c, dtype=float) for c in x)
    xi = tuple(np.asarray(c, dtype=float) for c in xi)
    bracket = japanese(xi)
    xsteps = [FD_RELATIVE_STEP * (1.0 + np.abs(c)) for c in x]
    xistep = FD_RELATIVE_STEP * bracket
    stencils = [_stencil(b, 1.0) for b in beta] + [_stencil(al, 1.0) for al in alpha]
    steps = xsteps + [xistep] * len(xi)
    total: np.ndarray | float = 0.0
    for combination in itertools.product(*stencils):
        shifted = [c + offset * step for c, (offset, _), step in zip(x + xi, combination, steps, strict=True)]
        weight = math.prod(w for _, w in combination)
        total = total + weight * a.evaluate(k, tuple(shifted[:len(x)]), tuple(shifted[len(x):]))
    scaling = 1.0
    for order, step in zip(list(beta) + list(alpha), steps, strict=True):
        scaling = scaling / step ** order
    return np.asarray(total * scaling)


def _frequency_samples(dimension: int, f_hi: float, count: int = 48) -> Coords:
    radii = np.concatenate([[0.0], np.geomspace(1.0, f_hi, count)])
    if dimension == 1:
        return (np.concatenate([-radii[::-1], radii[1:]]),)
    angles = np.linspace(0.0, 2.0 * math.pi, 16, endpoint=False)
    R, A = np.meshgrid(radii, angles, indexing="ij")
    return (np.ravel(R * np.cos(A)), np.ravel(R * np.sin(A)))


def check_symbol_class(a: SymbolNet, K: Sequence[tuple[float, float]], alpha_max: int = 2, beta_max: int = 2,
                       f_hi: float = 1.0e3, n_x: int = 33) -> bool:
    """
    check_symbol_class - slow scale symbol class test of order m on K x band

    For each (alpha, beta) the net sup <xi>^(-m+|alpha|) |d^alpha_xi d^beta_x a_eps|
    is formed; the symbol belongs to the class iff the pointwise max of these
    nets is a slow scale net.

    Args:
        a (SymbolNet): symbol
        K (Sequence[tuple[float, float]]): compact box in x
        alpha_max (int, optional): largest xi derivative order. Defaults to 2.
        beta_max (int, optional): largest x derivative order. Defaults to 2.
        f_hi (float, optional): largest frequency magnitude tested. Defaults to 1e3.
        n_x (int, optional): sample points per x axis. Defaults to 33.

    Returns:
        bool: membership verdict
    """

    if len(K) != a.dimension:
        err_msg = f"Box {K} does not match symbol dimension {a.dimension}."
        raise ErrorDomain(err_msg)
    xaxes = [np.linspace(lo, hi, n_x) for lo, hi in K]
    xi_flat = _frequency_samples(a.dimension, f_hi)
    xmesh = np.meshgrid(*xaxes, indexing="ij")
    x = tuple(m.reshape(-1)[:, None] for m in xmesh)
    xi = tuple(c[None, :] for c in xi_flat)
    bracket = japanese(xi)
    indices = [
        (alpha, beta)
        for alpha in itertools.product(range(alpha_max + 1), repeat=a.dimension) if sum(alpha) <= alpha_max
        for beta in itertools.product(range(beta_max + 1), repeat=a.dimension) if sum(beta) <= beta_max
    ]
    sups = np.zeros((len(indices), len(a.eps)))
    for i, (alpha, beta) in enumerate(indices):
        for k in range(len(a.eps)):
            values = np.abs(symbol_derivative(a, k, x, xi, alpha, beta)) * bracket ** (-a.order + sum(alpha))
            sups[i, k] = float(np.max(values))
    majorant = np.max(sups, axis=0)
    if np.any(majorant <= 0):
        return True
    verdict = is_slow_scale(GenNumber(a.eps, majorant))
    logger.debug("symbol class of '%s': majorant %s, verdict %s", a.name, majorant, verdict)
    return verdict



@dataclass(frozen=True, eq=False)
class EllipticityReport:
    """
    EllipticityReport - micro-ellipticity witnesses at (x0, xi0)
    """

    x0: tuple[float, ...]
    xi0: tuple[float, ...]
    U_radius: float
    cone_angle: float
    r_net: GenNumber | None
    s_net: GenNumber | None
    r_slow: bool
    s_slow: bool
    verdict: bool
    diagnostic: str = ""

    def as_record(self) -> dict[str, object]:
        record: dict[str, object] = {f"x{i}": c for i, c in enumerate(self.x0)}
        record.update({f"xi{i}": c for i, c in enumerate(self.xi0)})
        record.update({
            "U_radius": self.U_radius,
            "cone_angle": self.cone_angle,
            "r_max": float(np.max(self.r_net.real)) if self.r_net is not None else math.nan,
            "s_max": float(np.max(self.s_net.real)) if self.s_net is not None else math.nan,
            "r_slow_scale": self.r_slow,
            "s_slow_scale": self.s_slow,
            "elliptic": self.verdict,
            "diagnostic": self.diagnostic,
        })
        return record


@dataclass
class EllipticityTable(baseReportclass):

    _report_name_ = "ellipticity"

    symbol: str = ""
    reports: list[EllipticityReport] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame.from_records([report.as_record() for report in self.reports])
        frame.insert(0, "symbol", self.symbol)
        return frame

    def elliptic_at(self, x0: Sequence[float], xi0: Sequence[float]) -> bool:
        """elliptic_at - verdict of the report at x0 with direction closest to xi0"""
        target = np.atleast_1d(np.asarray(x0, dtype=float))
        candidates = [r for r in self.reports if np.allclose(r.x0, target)]
        if not candidates:
            err_msg = f"No ellipticity report at {tuple(target)}."
            raise ErrorDomain(err_msg)
        direction = np.atleast_1d(np.asarray(xi0, dtype=float))
        direction = direction / np.linalg.norm(direction)
        return max(candidates, key=lambda r: float(np.dot(r.xi0, direction))).verdict


def _window_points(x0: tuple[float, ...], radius: float, count: int = 9) -> Coords:
    axes = [np.linspace(c - radius, c + radius, count) for c in x0]
    mesh = np.meshgrid(*axes, indexing="ij")
    inside = np.sqrt(sum((m - c) ** 2 for m, c in zip(mesh, x0, strict=True))) <= radius * (1 + 1e-12)
    return tuple(m[inside] for m in mesh)


def _cone_directions(xi0: tuple[float, ...], cone_angle: float) -> Coords:
    if len(xi0) == 1:
        return (np.asarray([np.sign(xi0[0])]),)
    base = math.atan2(xi0[1], xi0[0])
    angles = base + np.linspace(-cone_angle, cone_angle, 33)[1:-1]
    return (np.cos(angles), np.sin(angles))


def micro_elliptic(a: SymbolNet, x0: Sequence[float], xi0: Sequence[float], U_radius: float = 0.2,
                   cone_angle: float = math.pi / 8, band: tuple[float, float] = (1.0, 1.0e3),
                   n_radii: int = 48) -> EllipticityReport:
    """
    micro_elliptic - slow scale micro-ellipticity test at (x0, xi0)

    Per epsilon q(rho) = min over U and cone directions of |a(x, rho w)| / <rho w>^m
    is sampled on geometric radii in the band. With q_inf the minimum over the
    top quarter of radii, r_eps is the smallest radius from which on q stays
    above q_inf / 2 and s_eps = 1 / min q beyond r_eps. The verdict is true iff
    both nets are slow scale.

    Args:
        a (SymbolNet): symbol
        x0 (Sequence[float]): base point
        xi0 (Sequence[float]): direction
        U_radius (float, optional): radius of the neighborhood U. Defaults to 0.2.
        cone_angle (float, optional): half-angle of the cone. Defaults to pi/8.
        band (tuple[float, float], optional): radii range. Defaults to (1, 1e3).
        n_radii (int, optional): number of radii. Defaults to 48.

    Returns:
        EllipticityReport: witnesses and verdict
    """

    point = tuple(float(c) for c in np.atleast_1d(x0))
    direction = np.atleast_1d(np.asarray(xi0, dtype=float))
    direction = tuple(float(c) for c in direction / np.linalg.norm(direction))
    if len(point) != a.dimension:
        err_msg = f"Base point {point} does not match symbol dimension {a.dimension}."
        raise ErrorDomain(err_msg)
    xs = _window_points(point, U_radius)
    ws = _cone_directions(direction, cone_angle)
    radii = np.geomspace(max(band[0], 1e-6), band[1], n_radii)
    top = max(1, n_radii // 4)
    x = tuple(c[:, None, None] for c in xs)
    xi = tuple(radii[None, :, None] * w[None, None, :] for w in ws)
    weight = japanese(xi) ** a.order
    r_values, s_values = [], []
    for k in range(len(a.eps)):
        q = np.min(np.abs(a.evaluate(k, x, xi)) / weight, axis=(0, 2))
        q_inf = float(np.min(q[-top:]))
        if q_inf <= ZERO_TOL:
            eps_k = a.eps.epsilons[k]
            diagnostic = f"symbol vanishes on the cone at eps = {eps_k:.6g}, no admissible r"
            return EllipticityReport(point, direction, U_radius, cone_angle, None, None, False, False, False, diagnostic)
        tail_min = np.minimum.accumulate(q[::-1])[::-1]
        start = int(np.argmax(tail_min >= 0.5 * q_inf))
        r_values.append(float(radii[start]))
        s_values.append(1.0 / float(tail_min[start]))
    s_net = GenNumber(a.eps, np.asarray(s_values))
    r_net = GenNumber(a.eps, np.asarray(r_values))
    if np.max(s_values) > MAX_WITNESS:
        diagnostic = f"lower bound witness s exceeds {MAX_WITNESS:g}"
        return EllipticityReport(point, direction, U_radius, cone_angle, r_net, s_net, False, False, False, diagnostic)
    r_slow = is_slow_scale(r_net)
    s_slow = is_slow_scale(s_net)
    return EllipticityReport(point, direction, U_radius, cone_angle, r_net, s_net, r_slow, s_slow, r_slow and s_slow)


def ell_scan(a: SymbolNet, points: Sequence[Sequence[float]], directions: Sequence[Sequence[float]],
             U_radius: float = 0.2, cone_angle: float = math.pi / 8,
             band: tuple[float, float] = (1.0, 1.0e3)) -> EllipticityTable:
    """ell_scan - micro_elliptic at every (point, direction) of a scan grid"""
    table = EllipticityTable(symbol=a.name)
    for x0 in points:
        for xi0 in directions:
            table.reports.append(micro_elliptic(a, x0, xi0, U_radius, cone_angle, band))
    return table


def nonchar_inclusion_check(wf_report: WFReport, ell_table: EllipticityTable) -> list[tuple[tuple[float, ...], tuple[float, ...]]]:
    """
    nonchar_inclusion_check - singular pairs of a wave front scan lying in the micro-elliptic set

    For a solution of Qu = 0 every singular pair must be characteristic for the
    principal symbol of Q, the returned list of violations is then empty.

    Args:
        wf_report (WFReport): wave front set scan
        ell_table (EllipticityTable): micro-ellipticity scan of the principal symbol

    Returns:
        list: violating (x0, xi0) pairs
    """

    violations = []
    for x0, xi0 in wf_report.singular_set():
        if ell_table.elliptic_at(x0, xi0):
            violations.append((x0, xi0))
    if violations:
        logger.warning("%d singular pairs lie in the micro-elliptic set", len(violations))
    return violations



def quantize_apply(a: SymbolNet, u: GridFn) -> GridFn:
    """
    quantize_apply - left quantization a(x, D) applied per epsilon

    Symbols without xi dependence act pointwise. Fourier multipliers act by
    FFT; 1D symbols depending on x and xi are applied as a dense matrix over
    the FFT frequencies. Frequencies beyond 0.8 Nyquist are truncated.

    Args:
        a (SymbolNet): symbol
        u (GridFn): net

    Returns:
        GridFn: a(x, D) u per epsilon
    """

    if a.eps != u.eps:
        err_msg = "Symbol and function live on different epsilon grids."
        raise ErrorDomain(err_msg)
    grid = u.grid
    mesh = grid.mesh()
    if a.x_only:
        zeros = tuple(np.zeros_like(m) for m in mesh)
        return GridFn(grid, u.eps, np.stack([a.evaluate(k, mesh, zeros) * u.samples[k] for k in range(len(u.eps))]))
    freqs = [2.0 * math.pi * fft.fftfreq(n, h) for n, h in zip(grid.shape, grid.h, strict=True)]
    fmesh = np.meshgrid(*freqs, indexing="ij")
    cutoff = BAND_HI_FRACTION * min(math.pi / h for h in grid.h)
    mask = np.sqrt(sum(f * f for f in fmesh)) <= cutoff
    results = []
    if a.xi_only:
        zeros = tuple(np.zeros_like(f) for f in fmesh)
        for k in range(len(u.eps)):
            multiplier = np.where(mask, a.evaluate(k, zeros, tuple(fmesh)), 0.0)
            results.append(fft.ifftn(multiplier * fft.fftn(u.samples[k])))
    elif grid.dimension == 1:
        x = grid.axes[0]
        xi = freqs[0][mask]
        kernel = np.exp(1j * np.outer(x, xi))
        phase = np.exp(-1j * grid.mins[0] * xi)
        for k in range(len(u.eps)):
            uhat = fft.fft(u.samples[k])[mask] * phase
            symbol = a.evaluate(k, (x[:, None],), (xi[None, :],))
            results.append((kernel * symbol) @ uhat / grid.shape[0])
    else:
        err_msg = "Quantization of x dependent symbols is only available in 1D."
        raise ErrorDomain(err_msg)
    samples = np.stack(results)
    if np.max(np.abs(samples.imag)) <= 1e-12 * max(1.0, float(np.max(np.abs(samples.real)))):
        samples = samples.real
    return GridFn(grid, u.eps, samples)


def oscillatory_pairing(a: SymbolNet, u: GridFn, phase: str = "x*xi", xi_limit: float | None = None) -> GenNumber:
    """
    oscillatory_pairing - integral of e^(i x.xi) a_eps(x, xi) u_eps(x) dx dxi / (2 pi)^d

    Only for symbols of order m < -dimension, where the double integral converges
    absolutely. 1D uses adaptive quadrature in xi over the real line, 2D a
    trapezoid lattice in xi up to xi_limit (default Nyquist).

    Args:
        a (SymbolNet): symbol of order m < -dimension
        u (GridFn): net
        phase (str, optional): phase function, only "x*xi". Defaults to "x*xi".
        xi_limit (float | None, optional): frequency truncation in 2D. Defaults to None.

    Returns:
        GenNumber: pairing net
    """

    if phase != "x*xi":
        err_msg = f"Unsupported phase '{phase}'."
        raise ErrorDomain(err_msg)
    if a.order >= -u.grid.dimension:
        err_msg = f"Oscillatory pairing needs order m < -{u.grid.dimension}, got {a.order}."
        raise ErrorDomain(err_msg)
    if a.eps != u.eps:
        err_msg = "Symbol and function live on different epsilon grids."
        raise ErrorDomain(err_msg)
    grid = u.grid
    values = []
    if grid.dimension == 1:
        x = grid.axes[0]
        for k in range(len(u.eps)):
            def inner(xi: float, part: Callable[[np.ndarray], np.ndarray], k: int = k) -> float:
                integrand = np.exp(1j * x * xi) * a.evaluate(k, (x,), (np.full_like(x, xi),)) * u.samples[k]
                return float(part(integrate.trapezoid(integrand, x)))
            re, _ = integrate.quad(inner, -np.inf, np.inf, args=(np.real,), limit=400)
            im, _ = integrate.quad(inner, -np.inf, np.inf, args=(np.imag,), limit=400)
            values.append(complex(re, im) / (2.0 * math.pi))
        return GenNumber(u.eps, np.asarray(values))
    limit = xi_limit or min(math.pi / h for h in grid.h)
    lattice = np.linspace(-limit, limit, 129)
    mesh = grid.mesh()
    for k in range(len(u.eps)):
        inner = np.zeros((lattice.shape[0], lattice.shape[0]), dtype=complex)
        for i, j in itertools.product(range(lattice.shape[0]), repeat=2):
            xi = (np.full_like(mesh[0], lattice[i]), np.full_like(mesh[1], lattice[j]))
            integrand = np.exp(1j * (mesh[0] * lattice[i] + mesh[1] * lattice[j])) * a.evaluate(k, mesh, xi) * u.samples[k]
            inner[i, j] = integrate_grid(grid, integrand)
        total = integrate.trapezoid(integrate.trapezoid(inner, lattice, axis=1), lattice)
        values.append(complex(total) / (2.0 * math.pi) ** 2)
    return GenNumber(u.eps, np.asarray(values))



def nonchar_example(c_spec: ScaleFn, alpha_max: int = 4, grid: SpatialGrid | None = None,
                    eps: EpsGrid | None = None) -> GinftyResult:
    """
    nonchar_example - G-infinity test of the solution u_eps = 1/(1 + c_eps x^2) of p u = 1

    Args:
        c_spec (ScaleFn): net c_eps >= 0
        alpha_max (int, optional): largest derivative order. Defaults to 4.
        grid (SpatialGrid | None, optional): grid, [-1,1] with 2001 nodes if None. Defaults to None.
        eps (EpsGrid | None, optional): epsilon grid, 0.25 * 0.6^k, k < 12 if None. Defaults to None.

    Returns:
        GinftyResult: regularity verdict with v(alpha) slope
    """

    grid = grid or SpatialGrid.line(-1.0, 1.0, 2001)
    eps = eps or make_geometric_grid(0.25, 0.6, 12)
    c = c_spec.gammas(eps)
    x = grid.axes[0]
    u = GridFn(grid, eps, np.stack([1.0 / (1.0 + ck * x * x) for ck in c]))
    return is_ginfty(u, alpha_max=alpha_max)

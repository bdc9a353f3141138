# Colombeau generalized functions utilities
# wavefront - microlocal regularity test at scale gamma and wave front set scans


# The test localizes u_eps with a smooth cutoff around a base point, takes one
# zero padded FFT per (base point, eps) and records the weighted sups
#   s_eps(l) = sup_{cone, band} |F(phi u_eps)(xi)| (1 + |xi|)^l.
# N(l) is the slope of log s_eps(l) against log gamma_eps over the eps tail;
# a pair is regular iff N(l) stays bounded in l, rendered as slope dN/dl <= tol.


"""
Module provides cutoffs, cone decay profiles, microlocal verdicts and wave front set scans.
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
from scipy import fft

from utils_Colombeau.utils_CGF_classes import ErrorCGF, ErrorDomain, ErrorGrid, baseReportclass
from utils_Colombeau.utils_CGF_decorators import emap
from utils_Colombeau.utils_CGF_genfun import GridFn, SpatialGrid
from utils_Colombeau.utils_CGF_scale import MIN_VALUATION_POINTS, EpsGrid, ScaleFn



logger = logging.getLogger(__name__)

DEFAULT_L_VALUES = (0, 1, 2, 3)
DEFAULT_SLOPE_TOL = 0.25
DEFAULT_CONE_ANGLE = math.pi / 8
DEFAULT_DIRECTIONS = 16
DEFAULT_FLOOR_REL = 1e-12
PAD_FACTOR = 4
BAND_HI_FRACTION = 0.8
BAND_LO_PERIODS = 4
MIN_L_VALUES = 4
MAX_L_VALUE = 8



def _smooth_step(t: np.ndarray) -> np.ndarray:
    """C-infinity step, 0 for t <= 0 and 1 for t >= 1"""
    t = np.clip(t, 0.0, 1.0)
    with np.errstate(divide="ignore"):
        f = np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)
        g = np.where(t < 1, np.exp(-1.0 / np.where(t < 1, 1.0 - t, 1.0)), 0.0)
    return f / (f + g)


def cutoff(x0: Sequence[float], r: float, grid: SpatialGrid) -> np.ndarray:
    """
    cutoff - radial smooth bump, 1 on |x - x0| <= r/2 and 0 outside |x - x0| < r

    Args:
        x0 (Sequence[float]): base point
        r (float): support radius
        grid (SpatialGrid): spatial grid

    Returns:
        np.ndarray: cutoff sampled on the grid
    """

    x0 = tuple(float(c) for c in np.atleast_1d(x0))
    if len(x0) != grid.dimension:
        err_msg = f"Base point {x0} does not match grid dimension {grid.dimension}."
        raise ErrorDomain(err_msg)
    if r <= 0:
        err_msg = f"Cutoff radius must be positive, got {r}."
        raise ErrorDomain(err_msg)
    for c, lo, hi in zip(x0, grid.mins, grid.maxs, strict=True):
        if c - r < lo or c + r > hi:
            err_msg = f"Cutoff support around {x0} with radius {r} is clipped by the grid boundary."
            raise ErrorDomain(err_msg)
    mesh = grid.mesh()
    distance = np.sqrt(sum((m - c) ** 2 for m, c in zip(mesh, x0, strict=True)))
    return _smooth_step((r - distance) / (0.5 * r))



def default_band(grid: SpatialGrid) -> tuple[float, float]:
    """default_band - [4 * 2 pi / L, 0.8 * Nyquist] for the grid"""
    nyquist = min(math.pi / h for h in grid.h)
    return BAND_LO_PERIODS * 2.0 * math.pi / min(grid.lengths), BAND_HI_FRACTION * nyquist


@dataclass(frozen=True)
class ConeSpec:
    """
    ConeSpec - neighborhood of x0 and open cone around xi0 tested in the frequency band
    """

    x0: tuple[float, ...]
    r: float
    xi0: tuple[float, ...]
    theta: float = DEFAULT_CONE_ANGLE
    band: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):

        x0 = tuple(float(c) for c in np.atleast_1d(self.x0))
        xi0 = np.atleast_1d(np.asarray(self.xi0, dtype=float))
        norm = float(np.linalg.norm(xi0))
        if norm == 0:
            err_msg = "Cone direction must be nonzero."
            raise ErrorDomain(err_msg)
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "xi0", tuple(float(c) for c in xi0 / norm))
        if len(x0) != len(self.xi0):
            err_msg = "Base point and direction dimensions differ."
            raise ErrorDomain(err_msg)
        if self.r <= 0:
            err_msg = f"Cone neighborhood radius must be positive, got {self.r}."
            raise ErrorDomain(err_msg)
        if not (0.0 < self.theta < math.pi / 2):
            err_msg = f"Cone half-angle must lie in (0, pi/2), got {self.theta}."
            raise ErrorDomain(err_msg)

    @classmethod
    def for_grid(cls, grid: SpatialGrid, x0: Sequence[float], xi0: Sequence[float], r: float,
                 theta: float = DEFAULT_CONE_ANGLE) -> ConeSpec:
        return cls(tuple(np.atleast_1d(x0)), r, tuple(np.atleast_1d(xi0)), theta, default_band(grid))

    @property
    def angle(self) -> float:
        if len(self.xi0) == 1:
            return 0.0 if self.xi0[0] > 0 else math.pi
        return math.atan2(self.xi0[1], self.xi0[0]) % (2.0 * math.pi)

    def validate(self, grid: SpatialGrid):

        f_lo, f_hi = self.band
        band_lo, band_hi = default_band(grid)
        nyquist = min(math.pi / h for h in grid.h)
        if not f_lo < f_hi:
            err_msg = f"Frequency band [{f_lo}, {f_hi}] is empty."
            raise ErrorDomain(err_msg)
        if f_hi > nyquist * (1 + 1e-12):
            err_msg = f"Band upper edge {f_hi} exceeds the Nyquist frequency {nyquist}."
            raise ErrorDomain(err_msg)
        if f_lo < band_lo * (1 - 1e-12):
            err_msg = f"Band lower edge {f_lo} is below {band_lo} (DC lobe)."
            raise ErrorDomain(err_msg)
        if len(self.x0) != grid.dimension:
            err_msg = f"Cone base point {self.x0} does not match grid dimension {grid.dimension}."
            raise ErrorDomain(err_msg)


def direction_grid(dimension: int, count: int = DEFAULT_DIRECTIONS) -> list[tuple[float, ...]]:
    """
    direction_grid - unit directions scanned per base point

    Args:
        dimension (int): 1 or 2
        count (int, optional): number of angles in 2D. Defaults to 16.

    Returns:
        list[tuple[float, ...]]: (+1,), (-1,) in 1D, count uniformly spaced angles in 2D
    """

    if dimension == 1:
        return [(1.0,), (-1.0,)]
    if dimension == 2:  # noqa: PLR2004
        angles = 2.0 * math.pi * np.arange(count) / count
        return [(float(np.cos(a)), float(np.sin(a))) for a in angles]
    err_msg = f"Directions only for dimension 1 or 2, got {dimension}."
    raise ErrorDomain(err_msg)



@dataclass(frozen=True, eq=False)
class LocalSpectrum:
    """LocalSpectrum - |F(phi u_eps)| on the padded frequency lattice of one (base point, eps)"""
    magnitude: np.ndarray
    frequencies: tuple[np.ndarray, ...]
    l1: float


def _window_slices(window: np.ndarray) -> tuple[slice, ...]:
    support = np.nonzero(window > 0)
    return tuple(
        slice(max(int(idx.min()) - 1, 0), min(int(idx.max()) + 2, n))
        for idx, n in zip(support, window.shape, strict=True)
    )


def local_spectra(u: GridFn, x0: Sequence[float], r: float, jobs: int = 1) -> list[LocalSpectrum]:
    """
    local_spectra - one zero padded FFT of the cutoff window per epsilon

    The FFT is normalized as h * sum, angular frequencies 2 pi * fftfreq.

    Args:
        u (GridFn): net
        x0 (Sequence[float]): base point
        r (float): cutoff radius
        jobs (int, optional): parallel workers over epsilon. Defaults to 1.

    Returns:
        list[LocalSpectrum]: spectra in epsilon order
    """

    phi = cutoff(x0, r, u.grid)
    slices = _window_slices(phi)
    phi = phi[slices]
    shape = tuple(PAD_FACTOR * (s.stop - s.start) for s in slices)
    cell = float(np.prod(u.grid.h))
    frequencies = tuple(
        np.meshgrid(*[2.0 * math.pi * fft.fftfreq(n, h) for n, h in zip(shape, u.grid.h, strict=True)], indexing="ij")
    )

    def spectrum(k: int) -> LocalSpectrum:
        window = phi * u.samples[k][slices]
        return LocalSpectrum(np.abs(fft.fftn(window, s=shape)) * cell, frequencies, float(np.sum(np.abs(window)) * cell))

    return emap(spectrum, range(len(u.eps)), jobs)


def cone_mask(spectrum: LocalSpectrum, c: ConeSpec) -> np.ndarray:
    """cone_mask - frequencies strictly inside the cone around xi0 within the band"""
    radius = np.sqrt(sum(f * f for f in spectrum.frequencies))
    f_lo, f_hi = c.band
    inband = (radius >= f_lo) & (radius <= f_hi)
    if len(spectrum.frequencies) == 1:
        return inband & (np.sign(spectrum.frequencies[0]) == np.sign(c.xi0[0]))
    projection = sum(f * d for f, d in zip(spectrum.frequencies, c.xi0, strict=True))
    with np.errstate(invalid="ignore", divide="ignore"):
        cosine = np.where(radius > 0, projection / np.where(radius > 0, radius, 1.0), -1.0)
    return inband & (cosine > math.cos(c.theta))



@dataclass(frozen=True, eq=False)
class DecayProfile:
    """
    DecayProfile - s[k, j] = sup over cone and band of |F(phi u_eps_k)| (1 + |xi|)^l_j
    """

    eps: EpsGrid
    l_values: tuple[int, ...]
    s: np.ndarray

    def __post_init__(self):
        if self.s.shape != (len(self.eps), len(self.l_values)):
            err_msg = f"Decay profile shape {self.s.shape} does not match eps and l values."
            raise ErrorGrid(err_msg)
        if np.any(self.s < 0):
            err_msg = "Decay profile entries must be nonnegative."
            raise ErrorDomain(err_msg)


def _profile_from_spectra(spectra: list[LocalSpectrum], eps: EpsGrid, c: ConeSpec, l_values: Sequence[int],
                          floor_rel: float) -> DecayProfile:
    floor = floor_rel * max(s.l1 for s in spectra)
    mask = cone_mask(spectra[0], c)
    if not np.any(mask):
        err_msg = f"Cone around {c.xi0} does not meet the band {c.band}."
        raise ErrorDomain(err_msg)
    weight = 1.0 + np.sqrt(sum(f * f for f in spectra[0].frequencies))[mask]
    rows = []
    for spectrum in spectra:
        magnitude = spectrum.magnitude[mask]
        magnitude = np.where(magnitude < floor, 0.0, magnitude)
        rows.append([float(np.max(magnitude * weight ** l)) for l in l_values])
    return DecayProfile(eps, tuple(int(l) for l in l_values), np.asarray(rows))


def _check_l_values(l_values: Sequence[int]):
    if any(l < 0 or l > MAX_L_VALUE for l in l_values):
        err_msg = f"l values must lie in 0..{MAX_L_VALUE}, got {tuple(l_values)}."
        raise ErrorDomain(err_msg)


def cone_decay_profile(u: GridFn, c: ConeSpec, l_values: Sequence[int] = DEFAULT_L_VALUES,
                       scale: ScaleFn | None = None, floor_rel: float = DEFAULT_FLOOR_REL,
                       jobs: int = 1) -> DecayProfile:
    """
    cone_decay_profile - weighted sups of the localized Fourier transform per epsilon

    Args:
        u (GridFn): net
        c (ConeSpec): neighborhood, cone and band
        l_values (Sequence[int], optional): decay orders in 0..8. Defaults to (0, 1, 2, 3).
        scale (ScaleFn | None, optional): scale, only checked for positivity here. Defaults to None.
        floor_rel (float, optional): relative noise floor. Defaults to 1e-12.
        jobs (int, optional): parallel workers over epsilon. Defaults to 1.

    Returns:
        DecayProfile: s_eps(l)
    """

    c.validate(u.grid)
    _check_l_values(l_values)
    if scale is not None:
        scale.gammas(u.eps)
    spectra = local_spectra(u, c.x0, c.r, jobs)
    return _profile_from_spectra(spectra, u.eps, c, l_values, floor_rel)



@dataclass(frozen=True)
class MicrolocalVerdict:
    regular: bool
    slope: float
    n_hat: tuple[float, ...] = ()

    @property
    def verdict(self) -> str:
        return "regular" if self.regular else "singular"


def growth_exponents(p: DecayProfile, scale: ScaleFn) -> tuple[float, ...]:
    """
    growth_exponents - N(l), slope of log s_eps(l) against log gamma_eps over the eps tail

    Zero sups are excluded; fewer than two nonzero tail values give N(l) = 0.

    Args:
        p (DecayProfile): decay profile
        scale (ScaleFn): scale gamma

    Returns:
        tuple[float, ...]: N(l) per l value
    """

    loggamma = np.log(scale.gammas(p.eps))
    if np.ptp(loggamma) == 0:
        err_msg = f"Scale '{scale.tag}' is constant, growth exponents are undefined."
        raise ErrorDomain(err_msg)
    start, stop = p.eps.tail_window()
    exponents = []
    for j in range(len(p.l_values)):
        values = p.s[start:stop, j]
        nonzero = values > 0
        if np.count_nonzero(nonzero) < 2:  # noqa: PLR2004
            exponents.append(0.0)
            continue
        exponents.append(float(np.polyfit(loggamma[start:stop][nonzero], np.log(values[nonzero]), 1)[0]))
    return tuple(exponents)


def microlocal_verdict(p: DecayProfile, scale: ScaleFn, slope_tol: float = DEFAULT_SLOPE_TOL) -> MicrolocalVerdict:
    """
    microlocal_verdict - regular iff the growth exponent N(l) does not increase with l

    Args:
        p (DecayProfile): decay profile
        scale (ScaleFn): scale gamma
        slope_tol (float, optional): tolerance on dN/dl. Defaults to 0.25.

    Returns:
        MicrolocalVerdict: verdict, dN/dl and N(l)
    """

    if len(p.l_values) < MIN_L_VALUES:
        err_msg = f"Microlocal verdict needs at least {MIN_L_VALUES} l values."
        raise ErrorDomain(err_msg)
    if len(p.eps) < MIN_VALUATION_POINTS:
        err_msg = f"Microlocal verdict needs at least {MIN_VALUATION_POINTS} epsilon points."
        raise ErrorGrid(err_msg)
    if not np.any(p.s > 0):
        return MicrolocalVerdict(True, 0.0, tuple(0.0 for _ in p.l_values))
    n_hat = growth_exponents(p, scale)
    slope = float(np.polyfit(np.asarray(p.l_values, dtype=float), np.asarray(n_hat), 1)[0])
    return MicrolocalVerdict(slope <= slope_tol, slope, n_hat)



@dataclass(frozen=True)
class WFParams:
    """
    WFParams - discretization and decision constants of a wave front set scan
    """

    scale: ScaleFn
    r: float = 0.25
    theta: float = DEFAULT_CONE_ANGLE
    l_values: tuple[int, ...] = DEFAULT_L_VALUES
    slope_tol: float = DEFAULT_SLOPE_TOL
    floor_rel: float = DEFAULT_FLOOR_REL
    band: tuple[float, float] | None = None
    retest: bool = True
    jobs: int = 1


@dataclass(frozen=True)
class WFRow:
    x0: tuple[float, ...]
    xi0: tuple[float, ...]
    angle: float
    verdict: str
    slope: float
    retest_slope: float = math.nan
    n_hat: tuple[float, ...] = ()
    error: str = ""


@dataclass
class WFReport(baseReportclass):
    """
    WFReport - verdicts of a scan over base points and directions at scale gamma
    """

    _report_name_ = "wavefront"

    rows: list[WFRow] = field(default_factory=list)
    scale_tag: str = ""
    l_values: tuple[int, ...] = DEFAULT_L_VALUES

    def singular_set(self) -> list[tuple[tuple[float, ...], tuple[float, ...]]]:
        return [(row.x0, row.xi0) for row in self.rows if row.verdict == "singular"]

    def singular_points(self) -> list[tuple[float, ...]]:
        return sorted({row.x0 for row in self.rows if row.verdict == "singular"})

    def rows_at(self, x0: Sequence[float]) -> list[WFRow]:
        target = np.atleast_1d(np.asarray(x0, dtype=float))
        return [row for row in self.rows if np.allclose(row.x0, target)]

    def verdict_at(self, x0: Sequence[float], xi0: Sequence[float]) -> str:
        """verdict_at - verdict of the scanned direction closest to xi0 at base point x0"""
        candidates = self.rows_at(x0)
        if not candidates:
            err_msg = f"Base point {tuple(x0)} was not scanned."
            raise ErrorDomain(err_msg)
        direction = np.atleast_1d(np.asarray(xi0, dtype=float))
        direction = direction / np.linalg.norm(direction)
        best = max(candidates, key=lambda row: float(np.dot(row.xi0, direction)))
        return best.verdict

    def to_frame(self) -> pd.DataFrame:
        records = []
        for row in self.rows:
            record: dict[str, object] = {f"x{i}": c for i, c in enumerate(row.x0)}
            record.update({
                "angle": row.angle,
                "verdict": row.verdict,
                "slope": row.slope,
                "retest_slope": row.retest_slope,
                "scale": self.scale_tag,
                "error": row.error,
            })
            records.append(record)
        return pd.DataFrame.from_records(records)


def _scan_point(u: GridFn, x0: tuple[float, ...], directions: Sequence[tuple[float, ...]],
                params: WFParams) -> list[WFRow]:

    band = params.band or default_band(u.grid)
    cones = [ConeSpec(x0, params.r, xi0, params.theta, band) for xi0 in directions]
    try:
        for c in cones:
            c.validate(u.grid)
        spectra = local_spectra(u, x0, params.r, params.jobs)
    except ErrorCGF as exc:
        logger.warning("wave front scan at %s failed: %s", x0, exc)
        return [WFRow(x0, c.xi0, c.angle, "error", math.nan, error=str(exc)) for c in cones]
    half_spectra: list[LocalSpectrum] | None = None
    rows = []
    for c in cones:
        try:
            profile = _profile_from_spectra(spectra, u.eps, c, params.l_values, params.floor_rel)
            result = microlocal_verdict(profile, params.scale, params.slope_tol)
            verdict, retest_slope = result.verdict, math.nan
            if not result.regular and params.retest:
                if half_spectra is None:
                    half_spectra = local_spectra(u, x0, 0.5 * params.r, params.jobs)
                half = ConeSpec(x0, 0.5 * params.r, c.xi0, c.theta, band)
                retest = microlocal_verdict(
                    _profile_from_spectra(half_spectra, u.eps, half, params.l_values, params.floor_rel),
                    params.scale, params.slope_tol,
                )
                retest_slope = retest.slope
                verdict = retest.verdict
            rows.append(WFRow(x0, c.xi0, c.angle, verdict, result.slope, retest_slope, result.n_hat))
        except ErrorCGF as exc:
            logger.warning("wave front test at %s in direction %s failed: %s", x0, c.xi0, exc)
            rows.append(WFRow(x0, c.xi0, c.angle, "error", math.nan, error=str(exc)))
    return rows


def wf_scan(u: GridFn, base_points: Sequence[Sequence[float]], directions: Sequence[Sequence[float]] | None,
            params: WFParams) -> WFReport:
    """
    wf_scan - estimate of the wave front set at scale gamma on a scan grid

    A singular verdict is only accepted when the re-test with half the cutoff
    radius agrees. Per-pair errors are recorded with verdict "error".

    Args:
        u (GridFn): net
        base_points (Sequence): base points x0
        directions (Sequence | None): unit directions, direction_grid if None
        params (WFParams): scan parameters

    Returns:
        WFReport: one row per (x0, xi0) in scan order
    """

    _check_l_values(params.l_values)
    if directions is None:
        directions = direction_grid(u.grid.dimension)
    dirs = [tuple(float(c) for c in np.atleast_1d(d)) for d in directions]
    report = WFReport(scale_tag=params.scale.tag, l_values=params.l_values)
    for x0 in base_points:
        point = tuple(float(c) for c in np.atleast_1d(x0))
        rows = _scan_point(u, point, dirs, params)
        logger.info("wave front scan at %s: %d singular of %d", point,
                    sum(row.verdict == "singular" for row in rows), len(rows))
        report.rows.extend(rows)
    return report


def translate_gridfn(u: GridFn, shift_nodes: Sequence[int]) -> GridFn:
    """
    translate_gridfn - shift samples by whole grid nodes, vacated nodes are zero

    Args:
        u (GridFn): net
        shift_nodes (Sequence[int]): shift per spatial axis

    Returns:
        GridFn: translated net
    """

    shifted = np.zeros_like(u.samples)
    source = [slice(None)]
    target = [slice(None)]
    for shift, n in zip(shift_nodes, u.grid.shape, strict=True):
        if abs(shift) >= n:
            return GridFn(u.grid, u.eps, shifted)
        source.append(slice(0, n - shift) if shift >= 0 else slice(-shift, n))
        target.append(slice(shift, n) if shift >= 0 else slice(0, n + shift))
    shifted[tuple(target)] = u.samples[tuple(source)]
    return GridFn(u.grid, u.eps, shifted)

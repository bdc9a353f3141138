# Colombeau generalized functions utilities
# scale - epsilon grids, generalized numbers, valuations and slow scale nets


# EpsGrid            : finite strictly decreasing grid of regularization parameters in (0,1]
# GenNumber          : one complex value per grid point, representative of a generalized number
# LogNet             : log magnitudes of a net, for nets beyond the float range
# ValuationEstimate  : fitted exponent of a net, estimate of its valuation
# ScaleFn            : named growth scale (log, power, constant)

# Valuations of nets are limits as eps -> 0 and are rendered as least squares
# slopes of log|u| against log(eps) over the tail of the grid. Decisions about
# slow scale growth use a fit with an additional log(log(1/eps)) term, which is
# exact for nets c * eps^a * log(1/eps)^k.


"""
Module provides epsilon grids, generalized numbers and their valuation estimates.
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

import json
import math

import numpy as np

from utils_Colombeau.utils_CGF_classes import ErrorDomain, ErrorGrid
from utils_Colombeau.utils_CGF_decorators import samegrid



MIN_VALUATION_POINTS = 8
DEFAULT_TAIL_FRACTION = 0.5
DEFAULT_FIT_TOLERANCE = 0.05
DEFAULT_SLOW_SCALE_TOLERANCE = 0.1

Classification = Literal["moderate", "negligible", "neither"]



@dataclass(frozen=True)
class EpsGrid:
    """
    EpsGrid - finite strictly decreasing sequence of regularization parameters in (0,1]

    The grid is the common index set of all nets of a computation.
    """

    epsilons: tuple[float, ...]

    def __post_init__(self):

        values = tuple(float(e) for e in self.epsilons)
        object.__setattr__(self, "epsilons", values)
        if len(values) == 0:
            err_msg = "Epsilon grid must not be empty."
            raise ErrorGrid(err_msg)
        if any(not (0.0 < e <= 1.0) for e in values):
            err_msg = f"Epsilon values must lie in (0,1], got {values}."
            raise ErrorGrid(err_msg)
        if any(b >= a for a, b in zip(values[:-1], values[1:], strict=True)):
            err_msg = "Epsilon grid must be strictly decreasing."
            raise ErrorGrid(err_msg)

    def __len__(self) -> int:
        return len(self.epsilons)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.epsilons, dtype=float)

    @property
    def logeps(self) -> np.ndarray:
        return np.log(self.array)

    def tail_window(self, tail_fraction: float = DEFAULT_TAIL_FRACTION) -> tuple[int, int]:
        """
        tail_window - index range [start, stop) of the smallest epsilons

        Args:
            tail_fraction (float, optional): fraction of grid points in the tail. Defaults to 0.5.

        Returns:
            tuple[int, int]: start and stop index
        """

        if not (0.0 < tail_fraction <= 1.0):
            err_msg = f"Tail fraction must lie in (0,1], got {tail_fraction}."
            raise ErrorDomain(err_msg)
        n = len(self)
        m = min(n, max(2, math.ceil(tail_fraction * n)))
        return n - m, n

    def to_dict(self) -> dict[str, Any]:
        return {"epsilons": list(self.epsilons)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> EpsGrid:
        return cls(tuple(data["epsilons"]))


def make_geometric_grid(eps0: float, ratio: float, count: int) -> EpsGrid:
    """
    make_geometric_grid - geometric epsilon grid eps_k = eps0 * ratio^k, k = 0..count-1

    Args:
        eps0 (float): first (largest) epsilon in (0,1]
        ratio (float): ratio in (0,1)
        count (int): number of grid points, at least 1

    Returns:
        EpsGrid: the grid
    """

    if not (0.0 < eps0 <= 1.0):
        err_msg = f"eps0 must lie in (0,1], got {eps0}."
        raise ErrorGrid(err_msg)
    if not (0.0 < ratio < 1.0):
        err_msg = f"ratio must lie in (0,1), got {ratio}."
        raise ErrorGrid(err_msg)
    if count < 1:
        err_msg = f"count must be positive, got {count}."
        raise ErrorGrid(err_msg)
    return EpsGrid(tuple(eps0 * ratio**k for k in range(count)))



@dataclass(frozen=True, eq=False)
class GenNumber:
    """
    GenNumber - representative of a generalized number, one complex value per epsilon
    """

    grid: EpsGrid
    values: np.ndarray

    def __post_init__(self):

        values = np.array(self.values, dtype=complex).reshape(-1)
        if values.shape[0] != len(self.grid):
            err_msg = f"GenNumber has {values.shape[0]} values for a grid of {len(self.grid)} points."
            raise ErrorGrid(err_msg)
        if not np.all(np.isfinite(values)):
            err_msg = "GenNumber values must be finite."
            raise ErrorDomain(err_msg)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.grid)

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    @property
    def absolute(self) -> np.ndarray:
        return np.abs(self.values)

    def __add__(self, other: GenNumber | complex) -> GenNumber:
        return gn_add(self, _lift(other, self.grid))

    __radd__ = __add__

    def __sub__(self, other: GenNumber | complex) -> GenNumber:
        return gn_sub(self, _lift(other, self.grid))

    def __rsub__(self, other: GenNumber | complex) -> GenNumber:
        return gn_sub(_lift(other, self.grid), self)

    def __mul__(self, other: GenNumber | complex) -> GenNumber:
        if isinstance(other, GenNumber):
            return gn_mul(self, other)
        return gn_scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: GenNumber | complex) -> GenNumber:
        if isinstance(other, GenNumber):
            return gn_mul(self, gn_inv(other))
        return gn_scale(self, 1.0 / other)

    def __neg__(self) -> GenNumber:
        return gn_neg(self)

    def __pow__(self, p: int) -> GenNumber:
        return gn_pow(self, p)

    def __abs__(self) -> GenNumber:
        return gn_abs(self)

    def to_rows(self) -> list[tuple[float, float, float]]:
        """
        to_rows - CSV rows (eps, re, im)

        Returns:
            list[tuple[float, float, float]]: one row per epsilon
        """
        return [(e, float(v.real), float(v.imag)) for e, v in zip(self.grid.epsilons, self.values, strict=True)]

    def to_json(self) -> str:
        return json.dumps({
            "epsilons": list(self.grid.epsilons),
            "re": self.values.real.tolist(),
            "im": self.values.imag.tolist(),
        })

    @classmethod
    def from_json(cls, text: str) -> GenNumber:
        data = json.loads(text)
        return cls(EpsGrid(tuple(data["epsilons"])), np.asarray(data["re"]) + 1j * np.asarray(data["im"]))


def _lift(value: GenNumber | complex, grid: EpsGrid) -> GenNumber:
    if isinstance(value, GenNumber):
        return value
    return GenNumber(grid, np.full(len(grid), complex(value)))


def monomial(grid: EpsGrid, c: complex, a: float) -> GenNumber:
    """
    monomial - the net c * eps^a

    Args:
        grid (EpsGrid): epsilon grid
        c (complex): coefficient
        a (float): exponent

    Returns:
        GenNumber: c * eps^a
    """
    return GenNumber(grid, complex(c) * grid.array**a)


def from_function(grid: EpsGrid, f: Callable[[float], complex]) -> GenNumber:
    """
    from_function - net with values f(eps_k)

    Args:
        grid (EpsGrid): epsilon grid
        f (Callable[[float], complex]): function of epsilon

    Returns:
        GenNumber: net of function values
    """
    return GenNumber(grid, np.asarray([f(e) for e in grid.epsilons], dtype=complex))


@samegrid
def gn_add(u: GenNumber, v: GenNumber) -> GenNumber:
    """gn_add - per-epsilon sum"""
    return GenNumber(u.grid, u.values + v.values)

@samegrid
def gn_sub(u: GenNumber, v: GenNumber) -> GenNumber:
    """gn_sub - per-epsilon difference"""
    return GenNumber(u.grid, u.values - v.values)

@samegrid
def gn_mul(u: GenNumber, v: GenNumber) -> GenNumber:
    """gn_mul - per-epsilon product"""
    return GenNumber(u.grid, u.values * v.values)

def gn_neg(u: GenNumber) -> GenNumber:
    return GenNumber(u.grid, -u.values)

def gn_scale(u: GenNumber, c: complex) -> GenNumber:
    return GenNumber(u.grid, complex(c) * u.values)

def gn_pow(u: GenNumber, p: int) -> GenNumber:
    if p < 0:
        return gn_pow(gn_inv(u), -p)
    return GenNumber(u.grid, u.values**p)

def gn_inv(u: GenNumber) -> GenNumber:
    if np.any(u.values == 0):
        err_msg = "Cannot invert a net with zero samples."
        raise ErrorDomain(err_msg)
    return GenNumber(u.grid, 1.0 / u.values)

def gn_abs(u: GenNumber) -> GenNumber:
    return GenNumber(u.grid, np.abs(u.values))

def gn_real(u: GenNumber) -> GenNumber:
    return GenNumber(u.grid, u.values.real)



@dataclass(frozen=True, eq=False)
class LogNet:
    """
    LogNet - net given by log|u_eps| per grid point, for nets beyond the float range

    Zero samples have log magnitude -inf. positive records that all samples are
    real and positive, which the slow scale test requires.
    """

    grid: EpsGrid
    logabs: np.ndarray
    positive: bool = False

    def __post_init__(self):

        logabs = np.array(self.logabs, dtype=float).reshape(-1)
        if logabs.shape[0] != len(self.grid):
            err_msg = f"LogNet has {logabs.shape[0]} values for a grid of {len(self.grid)} points."
            raise ErrorGrid(err_msg)
        if np.any(np.isnan(logabs)) or np.any(logabs == math.inf):
            err_msg = "LogNet log magnitudes must be finite or -inf."
            raise ErrorDomain(err_msg)
        logabs.setflags(write=False)
        object.__setattr__(self, "logabs", logabs)

    def __len__(self) -> int:
        return len(self.grid)

    def log10(self, floor: float = -300.0) -> np.ndarray:
        """log10 - decimal log magnitudes, zero samples at floor"""
        return np.maximum(self.logabs / math.log(10.0), floor)


def log_magnitude(u: GenNumber) -> LogNet:
    """log_magnitude - LogNet of a GenNumber"""
    values = u.values
    with np.errstate(divide="ignore"):
        logabs = np.log(np.abs(values))
    return LogNet(u.grid, logabs, bool(np.all(values.imag == 0) and np.all(values.real > 0)))


def _log_abs(u: GenNumber | LogNet) -> np.ndarray:
    if isinstance(u, LogNet):
        return u.logabs
    return log_magnitude(u).logabs



@dataclass(frozen=True)
class ValuationEstimate:
    """
    ValuationEstimate - estimated valuation of a net

    b_hat is the fitted exponent; infinite is set when all tail samples vanish
    (valuation of the zero net). For log corrected fits, log_power holds the
    fitted exponent k of log(1/eps).
    """

    b_hat: float
    fit_residual: float
    window: tuple[int, int]
    infinite: bool = False
    n_zero: int = 0
    log_power: float = 0.0
    estimated: bool = True

    def __post_init__(self):
        if self.fit_residual < 0:
            err_msg = "fit residual must be nonnegative"
            raise ErrorDomain(err_msg)


def _check_points(u: GenNumber | LogNet):
    if len(u.grid) < MIN_VALUATION_POINTS:
        err_msg = f"Valuation estimates need at least {MIN_VALUATION_POINTS} grid points, got {len(u.grid)}."
        raise ErrorGrid(err_msg)


def estimate_valuation(u: GenNumber | LogNet, tail_fraction: float = DEFAULT_TAIL_FRACTION) -> ValuationEstimate:
    """
    estimate_valuation - least squares slope of log|u| against log(eps) over the grid tail

    Zero samples inside the tail are excluded and counted; an all-zero tail
    gives an infinite valuation.

    Args:
        u (GenNumber | LogNet): net
        tail_fraction (float, optional): fraction of the grid used. Defaults to 0.5.

    Returns:
        ValuationEstimate: fitted exponent
    """

    _check_points(u)
    start, stop = u.grid.tail_window(tail_fraction)
    logabs = _log_abs(u)[start:stop]
    logeps = u.grid.logeps[start:stop]
    nonzero = np.isfinite(logabs)
    n_zero = int(np.count_nonzero(~nonzero))
    if not np.any(nonzero):
        return ValuationEstimate(math.inf, 0.0, (start, stop), infinite=True, n_zero=n_zero)
    x = logeps[nonzero]
    y = logabs[nonzero]
    if x.shape[0] == 1:
        return ValuationEstimate(float(y[0] / x[0]), 0.0, (start, stop), n_zero=n_zero)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return ValuationEstimate(float(slope), residual, (start, stop), n_zero=n_zero)


def estimate_log_corrected_valuation(u: GenNumber | LogNet) -> ValuationEstimate:
    """
    estimate_log_corrected_valuation - power part of a net allowing for powers of log(1/eps)

    Fits log|u| = A + b log(eps) + k log(log(1/eps)) over all grid points with
    eps < 1 and nonzero samples.

    Args:
        u (GenNumber | LogNet): net

    Returns:
        ValuationEstimate: b in b_hat, k in log_power
    """

    _check_points(u)
    eps = u.grid.array
    logabs = _log_abs(u)
    nonzero = np.isfinite(logabs)
    usable = (eps < 1.0) & nonzero
    n_zero = int(np.count_nonzero(~nonzero))
    window = (0, len(u.grid))
    if not np.any(nonzero):
        return ValuationEstimate(math.inf, 0.0, window, infinite=True, n_zero=n_zero)
    if np.count_nonzero(usable) < 3:  # noqa: PLR2004
        err_msg = "Log corrected valuation needs at least 3 nonzero samples with eps < 1."
        raise ErrorGrid(err_msg)
    logeps = np.log(eps[usable])
    design = np.column_stack([np.ones_like(logeps), logeps, np.log(-logeps)])
    y = logabs[usable]
    coeffs, *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = float(np.sqrt(np.mean((y - design @ coeffs) ** 2)))
    return ValuationEstimate(float(coeffs[1]), residual, window, n_zero=n_zero, log_power=float(coeffs[2]))


def ultra_norm(u: GenNumber | LogNet, tail_fraction: float = DEFAULT_TAIL_FRACTION) -> float:
    """
    ultra_norm - ultra-pseudo-norm e^(-valuation) of a net, 0 for the zero net, inf beyond the float range

    Args:
        u (GenNumber | LogNet): net
        tail_fraction (float, optional): fraction of the grid used. Defaults to 0.5.

    Returns:
        float: ultra-pseudo-norm estimate
    """

    estimate = estimate_valuation(u, tail_fraction)
    if estimate.infinite:
        return 0.0
    try:
        return math.exp(-estimate.b_hat)
    except OverflowError:
        return math.inf


def sharp_distance(u: GenNumber, v: GenNumber, tail_fraction: float = DEFAULT_TAIL_FRACTION) -> float:
    """sharp_distance - ultrametric distance ultra_norm(u - v)"""
    return ultra_norm(gn_sub(u, v), tail_fraction)


def classify(
    u: GenNumber | LogNet, N_max: int = 10, q_max: int = 20, tail_fraction: float = DEFAULT_TAIL_FRACTION
) -> Classification:
    """
    classify - moderate, negligible or neither

    Args:
        u (GenNumber | LogNet): net
        N_max (int, optional): largest admissible growth exponent. Defaults to 10.
        q_max (int, optional): decay exponent required for negligibility. Defaults to 20.
        tail_fraction (float, optional): fraction of the grid used. Defaults to 0.5.

    Returns:
        str: "negligible", "moderate" or "neither"
    """

    estimate = estimate_valuation(u, tail_fraction)
    if estimate.infinite or estimate.b_hat >= q_max:
        return "negligible"
    if estimate.b_hat >= -N_max:
        return "moderate"
    return "neither"


def is_slow_scale(
    w: GenNumber | LogNet, tol: float = DEFAULT_SLOW_SCALE_TOLERANCE, lower_bound: float = 0.0
) -> bool:
    """
    is_slow_scale - strongly positive slow scale net test

    True iff the net is positive, bounded below by lower_bound and its power
    part from the log corrected fit is at least -tol.

    Args:
        w (GenNumber | LogNet): real positive net
        tol (float, optional): tolerance on the power part. Defaults to 0.1.
        lower_bound (float, optional): required lower bound. Defaults to 0.0.

    Returns:
        bool: slow scale verdict
    """

    if isinstance(w, LogNet):
        if not w.positive:
            err_msg = "Slow scale test requires a real positive net."
            raise ErrorDomain(err_msg)
        if lower_bound > 0 and w.logabs.min() < math.log(lower_bound):
            return False
        return estimate_log_corrected_valuation(w).b_hat >= -tol
    values = w.values
    if np.any(np.abs(values.imag) > 1e-12 * np.maximum(1.0, np.abs(values.real))) or np.any(values.real <= 0):
        err_msg = "Slow scale test requires a real positive net."
        raise ErrorDomain(err_msg)
    if values.real.min() < lower_bound:
        return False
    return estimate_log_corrected_valuation(w).b_hat >= -tol



@dataclass(frozen=True)
class ScaleFn:
    """
    ScaleFn - named growth scale gamma_eps

    kinds:
    - "log"   : log(1/eps) + shift
    - "pow"   : eps^(-p)
    - "const" : constant c
    """

    kind: Literal["log", "pow", "const"]
    param: float = 0.0
    _tag: str = field(default="", compare=False)

    @classmethod
    def parse(cls, tag: str) -> ScaleFn:
        """
        parse - scale from a tag "log", "log+c", "pow:p", "const" or "const:c"

        Args:
            tag (str): scale tag

        Returns:
            ScaleFn: scale
        """

        text = tag.strip()
        try:
            if text == "log":
                return cls("log", 0.0, text)
            if text.startswith("log+"):
                return cls("log", float(text[4:]), text)
            if text.startswith("pow:"):
                p = float(text[4:])
                if p <= 0:
                    err_msg = f"power scale needs p > 0, got {p}"
                    raise ErrorDomain(err_msg)
                return cls("pow", p, text)
            if text == "const":
                return cls("const", 1.0, text)
            if text.startswith("const:"):
                c = float(text[6:])
                if c <= 0:
                    err_msg = f"constant scale needs c > 0, got {c}"
                    raise ErrorDomain(err_msg)
                return cls("const", c, text)
        except ValueError as exc:
            err_msg = f"Invalid scale tag '{tag}'."
            raise ErrorDomain(err_msg) from exc
        err_msg = f"Unknown scale tag '{tag}'."
        raise ErrorDomain(err_msg)

    @property
    def tag(self) -> str:
        if self._tag:
            return self._tag
        if self.kind == "log":
            return "log" if self.param == 0 else f"log+{self.param:g}"
        if self.kind == "pow":
            return f"pow:{self.param:g}"
        return f"const:{self.param:g}"

    def evaluate(self, eps: np.ndarray | float) -> np.ndarray:
        e = np.asarray(eps, dtype=float)
        if self.kind == "log":
            return np.log(1.0 / e) + self.param
        if self.kind == "pow":
            return e ** (-self.param)
        return np.full_like(e, self.param)

    def gammas(self, grid: EpsGrid) -> np.ndarray:
        """
        gammas - scale values on a grid, validated to be positive and nondecreasing

        Args:
            grid (EpsGrid): epsilon grid

        Returns:
            np.ndarray: gamma_eps per grid point
        """

        values = self.evaluate(grid.array)
        if np.any(values <= 0):
            err_msg = f"Scale '{self.tag}' is not positive on the grid (eps = 1 with log scale?)."
            raise ErrorGrid(err_msg)
        return values

    def values(self, grid: EpsGrid) -> GenNumber:
        return GenNumber(grid, self.gammas(grid))


def parse_net(expression: str, grid: EpsGrid) -> GenNumber:
    """
    parse_net - net from a textual expression

    Supported: "eps^b", "c*eps^b", "log", "log^k", "exp(1/eps)", "const", "const:c".

    Args:
        expression (str): net expression
        grid (EpsGrid): epsilon grid

    Returns:
        GenNumber: the net
    """

    text = expression.replace(" ", "")
    eps = grid.array
    try:
        if text in {"const", "1"}:
            return GenNumber(grid, np.ones(len(grid)))
        if text.startswith("const:"):
            return GenNumber(grid, np.full(len(grid), float(text[6:])))
        if text == "log":
            return GenNumber(grid, np.log(1.0 / eps))
        if text.startswith("log^"):
            return GenNumber(grid, np.log(1.0 / eps) ** float(text[4:]))
        if text == "exp(1/eps)":
            return GenNumber(grid, np.exp(1.0 / eps))
        coefficient = 1.0
        powerpart = text
        if "*" in text:
            coeffpart, powerpart = text.split("*", 1)
            coefficient = float(coeffpart)
        if powerpart == "eps":
            return monomial(grid, coefficient, 1.0)
        if powerpart.startswith("eps^"):
            return monomial(grid, coefficient, float(powerpart[4:].strip("()")))
    except ValueError as exc:
        err_msg = f"Invalid net expression '{expression}'."
        raise ErrorDomain(err_msg) from exc
    err_msg = f"Unknown net expression '{expression}'."
    raise ErrorDomain(err_msg)


def parse_log_net(expression: str, grid: EpsGrid) -> LogNet:
    """
    parse_log_net - log magnitudes of a net expression

    Same expressions as parse_net. "exp(1/eps)" is evaluated as log|u_eps| = 1/eps,
    so it stays usable on grids where its samples overflow.

    Args:
        expression (str): net expression
        grid (EpsGrid): epsilon grid

    Returns:
        LogNet: log magnitudes of the net
    """

    if expression.replace(" ", "") == "exp(1/eps)":
        return LogNet(grid, 1.0 / grid.array, positive=True)
    return log_magnitude(parse_net(expression, grid))


def common_grid(nets: Sequence[GenNumber]) -> EpsGrid:
    """common_grid - grid shared by all nets, error on mismatch"""
    grids = {net.grid for net in nets}
    if len(grids) != 1:
        err_msg = "Nets live on different epsilon grids."
        raise ErrorGrid(err_msg)
    return grids.pop()

# Colombeau generalized functions utilities
# config - JSON experiment configuration parsed into frozen dataclasses


"""
Module provides the experiment configuration of the command line interface.

The JSON document is parsed completely before any computation. Unknown keys
raise ErrorConfig with their key path, lists become tuples and every default is
a dataclass default, so the resolved configuration can be embedded as provenance.
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

from dataclasses import asdict, dataclass, field, fields, is_dataclass
from typing import Any, Union, get_args, get_origin, get_type_hints

import json
import logging
import math
import pathlib
import types

from utils_Colombeau.utils_CGF_classes import ErrorCGF, ErrorConfig
from utils_Colombeau.utils_CGF_genfun import Mollifier, SpatialGrid, parse_dist_spec
from utils_Colombeau.utils_CGF_scale import EpsGrid, ScaleFn, make_geometric_grid
from utils_Colombeau.utils_CGF_symbols import parse_symbol
from utils_Colombeau.version import __version__



logger = logging.getLogger(__name__)

WF_INPUTS = ("embed", "hs")
COEFFICIENTS = ("constant", "linear", "bump", "theta")



@dataclass(frozen=True)
class EpsConfig:
    """geometric epsilon grid eps0 * ratio^k, k = 0 .. count-1 (default 2^-4 .. 2^-24)"""
    eps0: float = 0.0625
    ratio: float = 0.5
    count: int = 21

    def grid(self) -> EpsGrid:
        return make_geometric_grid(self.eps0, self.ratio, self.count)


@dataclass(frozen=True)
class GridConfig:
    mins: tuple[float, ...] = (-1.5,)
    maxs: tuple[float, ...] = (1.5,)
    counts: tuple[int, ...] = (1024,)

    def grid(self) -> SpatialGrid:
        return SpatialGrid(self.mins, self.maxs, self.counts)


@dataclass(frozen=True)
class ValConfig:
    nets: tuple[str, ...] = ("eps^2", "log", "const")
    tail_fraction: float = 0.5
    slow_scale_tol: float = 0.1


@dataclass(frozen=True)
class WFConfig:
    """
    WFConfig - wave front scan block

    With input "embed" the embedded distribution dist is scanned on the spatial
    grid, with input "hs" the solution of the hs block on the (x, t) plane.
    Empty base_points select an automatic scan at spacing r.
    """

    input: str = "embed"
    dist: dict[str, Any] = field(default_factory=lambda: {"type": "delta", "x0": [0.0]})
    base_points: tuple[tuple[float, ...], ...] = ()
    directions: int = 16
    r: float = 0.25
    theta: float = math.pi / 8
    l_values: tuple[int, ...] = (0, 1, 2, 3)
    slope_tol: float = 0.25
    floor_rel: float = 1e-12
    retest: bool = True


@dataclass(frozen=True)
class HSConfig:
    """HSConfig - mollified Heaviside coefficient with initial delta at -s0"""
    s0: float = 1.5
    xmin: float = -4.0
    xmax: float = 2.0
    nx: int = 512
    T: float = 3.0
    nt: int = 512
    dt: float = 0.005
    gamma_min: float = 2.0
    gamma_max: float = 6.0
    n_eps: int = 15
    r: float = 0.4
    directions: int = 16
    bichar_dt: float = 1e-3
    inclusion_scale: str = "pow:1"
    U_radius: float = 0.2
    upwind: bool = False


@dataclass(frozen=True)
class BicharConfig:
    coefficient: str = "constant"
    value: float = 1.0
    x0: float = 0.0
    xi0: float = 1.0
    tau0: float | None = None
    t_span: tuple[float, float] = (0.0, 1.0)
    dt: float = 1e-3


@dataclass(frozen=True)
class SymbolConfig:
    symbol: str = "1+c*x^2"
    c: str = "log"
    points: tuple[tuple[float, ...], ...] = ((0.0,), (0.5,))
    directions: tuple[tuple[float, ...], ...] = ((1.0,), (-1.0,))
    U_radius: float = 0.2
    cone_angle: float = math.pi / 8
    band: tuple[float, float] = (1.0, 1.0e3)
    K: tuple[tuple[float, float], ...] = ((-1.0, 1.0),)
    alpha_max: int = 2
    beta_max: int = 2


@dataclass(frozen=True)
class PropConfig:
    coefficient: str = "bump"
    amplitude: float = 1.0
    x0: float = -3.0
    t_list: tuple[float, ...] = (1.0, 2.0)
    xmin: float = -5.0
    xmax: float = 3.0
    nx: int = 1024
    nt: int = 65
    dt: float = 0.005
    r: float = 0.25


@dataclass(frozen=True)
class ExperimentConfig:
    """
    ExperimentConfig - complete configuration of one command line run
    """

    eps: EpsConfig = field(default_factory=EpsConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    scale: str = "log"
    mollifier: str = "bump"
    out: str = "out"
    jobs: int = 1
    val: ValConfig = field(default_factory=ValConfig)
    wf: WFConfig = field(default_factory=WFConfig)
    hs: HSConfig = field(default_factory=HSConfig)
    bichar: BicharConfig = field(default_factory=BicharConfig)
    symbol: SymbolConfig = field(default_factory=SymbolConfig)
    prop: PropConfig = field(default_factory=PropConfig)

    def __post_init__(self):

        if not isinstance(self.jobs, int) or self.jobs < 1:
            err_msg = f"jobs must be at least 1, got {self.jobs}."
            raise ErrorConfig(err_msg)
        if self.wf.input not in WF_INPUTS:
            err_msg = f"wf.input must be one of {WF_INPUTS}, got '{self.wf.input}'."
            raise ErrorConfig(err_msg)
        for path, name in (("bichar.coefficient", self.bichar.coefficient), ("prop.coefficient", self.prop.coefficient)):
            if name not in COEFFICIENTS:
                err_msg = f"{path} must be one of {COEFFICIENTS}, got '{name}'."
                raise ErrorConfig(err_msg)
        # tags and grids are validated here, before any computation
        try:
            ScaleFn.parse(self.scale)
            ScaleFn.parse(self.symbol.c)
            ScaleFn.parse(self.hs.inclusion_scale)
            parse_symbol(self.symbol.symbol, self.eps.grid(), ScaleFn.parse(self.symbol.c), coefficient=_zero_field)
            Mollifier.parse(self.mollifier)
            self.eps.grid()
            self.grid.grid()
            parse_dist_spec(self.wf.dist, len(self.grid.mins))
        except ErrorConfig:
            raise
        except (ErrorCGF, KeyError, TypeError, ValueError) as exc:
            err_msg = f"Invalid configuration: {exc}"
            raise ErrorConfig(err_msg) from exc

    def scale_fn(self) -> ScaleFn:
        return ScaleFn.parse(self.scale)

    def mollifier_obj(self) -> Mollifier:
        return Mollifier.parse(self.mollifier)



def _zero_field(k: int, x: Any) -> Any:
    """placeholder transport coefficient, only the symbol tag is validated"""
    return 0.0 * x


def _coerce(hint: Any, value: Any, path: str) -> Any:
    """
    _coerce - check a JSON value against a field annotation, lists become tuples

    Args:
        hint (Any): resolved annotation
        value (Any): parsed JSON value
        path (str): key path for messages

    Returns:
        Any: value, ints widened to float where a float is expected
    """

    origin = get_origin(hint)
    if origin in (Union, types.UnionType):
        args = [a for a in get_args(hint) if a is not type(None)]
        if value is None and len(args) < len(get_args(hint)):
            return None
        return _coerce(args[0], value, path)
    if origin is tuple:
        if not isinstance(value, (list, tuple)):
            err_msg = f"Configuration key '{path}' must be a list, got {value!r}."
            raise ErrorConfig(err_msg)
        args = get_args(hint)
        if len(args) == 2 and args[1] is Ellipsis:  # noqa: PLR2004
            return tuple(_coerce(args[0], v, f"{path}[{i}]") for i, v in enumerate(value))
        if len(value) != len(args):
            err_msg = f"Configuration key '{path}' must have {len(args)} entries, got {len(value)}."
            raise ErrorConfig(err_msg)
        return tuple(_coerce(a, v, f"{path}[{i}]") for i, (a, v) in enumerate(zip(args, value)))
    if origin is dict or hint is Any:
        if origin is dict and not isinstance(value, dict):
            err_msg = f"Configuration key '{path}' must be an object, got {value!r}."
            raise ErrorConfig(err_msg)
        return value
    # bool is a subclass of int and is never accepted as a number
    if hint is bool:
        ok = isinstance(value, bool)
    elif hint is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    elif hint is float:
        ok = isinstance(value, (int, float)) and not isinstance(value, bool)
        value = float(value) if ok else value
    else:
        ok = isinstance(value, hint)
    if not ok:
        err_msg = f"Configuration key '{path}' must be of type {getattr(hint, '__name__', hint)}, got {value!r}."
        raise ErrorConfig(err_msg)
    return value


def _build(cls: type, data: Any, path: str) -> Any:
    """
    _build - instantiate dataclass cls from a JSON object, rejecting unknown keys

    Args:
        cls (type): dataclass
        data (Any): parsed JSON object
        path (str): key path for messages

    Returns:
        Any: instance of cls
    """

    if not isinstance(data, dict):
        err_msg = f"Configuration block '{path or '<root>'}' must be an object."
        raise ErrorConfig(err_msg)
    hints = get_type_hints(cls)
    known = {f.name for f in fields(cls)}
    for key in data:
        if key not in known:
            err_msg = f"Unknown configuration key '{path + '.' if path else ''}{key}'."
            raise ErrorConfig(err_msg)
    kwargs = {}
    for key, value in data.items():
        hint = hints[key]
        subpath = f"{path}.{key}" if path else key
        if isinstance(hint, type) and is_dataclass(hint):
            kwargs[key] = _build(hint, value, subpath)
        else:
            kwargs[key] = _coerce(hint, value, subpath)
    try:
        return cls(**kwargs)
    except TypeError as exc:
        err_msg = f"Invalid configuration block '{path or '<root>'}': {exc}"
        raise ErrorConfig(err_msg) from exc


def config_from_dict(data: dict[str, Any]) -> ExperimentConfig:
    """config_from_dict - ExperimentConfig from a parsed JSON object"""
    return _build(ExperimentConfig, data, "")


def load_config(path: str | pathlib.Path) -> ExperimentConfig:
    """
    load_config - read and validate a JSON configuration file

    Args:
        path (str | pathlib.Path): configuration file

    Returns:
        ExperimentConfig: resolved configuration
    """

    path = pathlib.Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        err_msg = f"Configuration file '{path}' cannot be read: {exc}"
        raise ErrorConfig(err_msg) from exc
    except json.JSONDecodeError as exc:
        err_msg = f"Configuration file '{path}' is not valid JSON: {exc}"
        raise ErrorConfig(err_msg) from exc
    config = config_from_dict(data)
    logger.debug("configuration loaded from %s", path)
    return config


def provenance(config: ExperimentConfig) -> dict[str, Any]:
    """provenance - resolved configuration (defaults included) and package version"""
    return {"version": __version__, "config": asdict(config)}

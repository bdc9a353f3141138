"""
conftest.py for `Colombeau generalized functions utilities`.

Shared fixtures: epsilon grids, spatial grids, scales, the bump mollifier and
a writer for JSON configuration files.
"""


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N812, N813, N815, N816, N818, N999

# fmt: off



import json
import pathlib

import pytest

from utils_Colombeau.utils_CGF_genfun import Mollifier, SpatialGrid
from utils_Colombeau.utils_CGF_scale import EpsGrid, ScaleFn, make_geometric_grid



@pytest.fixture
def eps_grid() -> EpsGrid:
    """default grid 2^-4 .. 2^-24"""
    return make_geometric_grid(0.0625, 0.5, 21)

@pytest.fixture
def short_eps_grid() -> EpsGrid:
    return make_geometric_grid(0.0625, 0.5, 12)

@pytest.fixture
def coarse_eps_grid() -> EpsGrid:
    """0.5 * 0.8^k, exp(1/eps) stays finite"""
    return make_geometric_grid(0.5, 0.8, 12)

@pytest.fixture
def line_grid() -> SpatialGrid:
    return SpatialGrid.line(-1.5, 1.5, 1024)

@pytest.fixture
def log_scale() -> ScaleFn:
    return ScaleFn.parse("log")

@pytest.fixture
def bump() -> Mollifier:
    return Mollifier()


@pytest.fixture
def write_config(tmp_path: pathlib.Path):
    """write_config - JSON configuration file in tmp_path, output directory tmp_path/out"""

    def writer(data: dict, name: str = "config.json") -> pathlib.Path:
        path = tmp_path / name
        path.write_text(json.dumps({"out": str(tmp_path / "out"), **data}), encoding="utf-8")
        return path

    return writer

# tests for CSV and SVG report writers


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N812, N813, N815, N816, N818, N999


import math

import numpy as np
import pandas as pd

from utils_Colombeau.utils_CGF_bichar import CoeffField, integrate_bichar
from utils_Colombeau.utils_CGF_report import (
    plot_characteristic_fan, plot_heatmap, plot_lines, plot_wavefront, read_csv, read_meta, write_csv, write_report
)
from utils_Colombeau.utils_CGF_wavefront import WFReport, WFRow



def _report():
    return WFReport([
        WFRow((0.0,), (1.0,), 0.0, "singular", 1.0, 0.9),
        WFRow((0.0,), (-1.0,), math.pi, "singular", 1.0, 0.95),
        WFRow((0.5,), (1.0,), 0.0, "regular", 0.0),
    ], "log")


def test_write_csv(tmp_path):
    frame = pd.DataFrame({"eps": [0.5, 0.25], "value": [1.0 / 3.0, 2.0]})
    path = write_csv(frame, tmp_path / "sub" / "table.csv", {"version": "0.1.0", "config": {"b": 1, "a": [1, 2]}})
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == '# config: {"a":[1,2],"b":1}'
    assert lines[1] == '# version: "0.1.0"'
    assert lines[2] == "eps,value"
    assert lines[3] == "0.5,0.333333333333"
    assert read_meta(path) == {"config": {"a": [1, 2], "b": 1}, "version": "0.1.0"}
    pd.testing.assert_frame_equal(read_csv(path), pd.DataFrame({"eps": [0.5, 0.25], "value": [0.333333333333, 2.0]}))

def test_write_report(tmp_path):
    path = write_report(_report(), tmp_path, {"command": "wf"})
    assert path.name == "wavefront.csv"
    frame = read_csv(path)
    assert frame["verdict"].tolist() == ["singular", "singular", "regular"]
    assert write_report(_report(), tmp_path, {}, name="other").name == "other.csv"


def test_plot_wavefront(tmp_path):
    path = plot_wavefront(_report(), tmp_path / "wf.svg")
    text = path.read_text(encoding="utf-8")
    assert 'width="720pt"' in text
    assert "<dc:date>" not in text

def test_plot_wavefront_2d(tmp_path):
    report = WFReport([WFRow((0.0, 1.5), (1.0, 0.0), 0.0, "singular", 1.0)], "log")
    assert plot_wavefront(report, tmp_path / "wf2.svg", ylabel="t").exists()

def test_deterministic_svg(tmp_path):
    first = plot_wavefront(_report(), tmp_path / "a.svg").read_bytes()
    second = plot_wavefront(_report(), tmp_path / "b.svg").read_bytes()
    assert first == second


def test_other_plots(tmp_path, short_eps_grid):
    x = np.linspace(-1.0, 1.0, 64)
    t = np.linspace(0.0, 1.0, 32)
    assert plot_heatmap(x, t, np.outer(x, t), tmp_path / "heat.svg").exists()
    curve = integrate_bichar(CoeffField.constant(short_eps_grid), 0.0, 1.0, dt=0.01, verify=False)
    assert plot_characteristic_fan(curve, tmp_path / "fan.svg", limit=(curve.t, curve.t)).exists()
    assert plot_lines(short_eps_grid.array, [("eps", short_eps_grid.array)], tmp_path / "lines.svg", logx=True).exists()
    assert plot_lines(x, [], tmp_path / "empty.svg").exists()

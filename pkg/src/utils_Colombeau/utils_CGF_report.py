# Colombeau generalized functions utilities
# report - CSV tables with provenance header and SVG figures


"""
Module provides the report writers of the command line interface.

CSV files start with "# key: value" provenance lines followed by a pandas table
with a fixed float format. Figures are SVG on a 1000x700 canvas without date
metadata so repeated runs give identical bytes.
"""


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N815, N816, N999
# boolean-type arguments
# ruff: noqa: FBT001, FBT002
# backend selection before pyplot import
# ruff: noqa: E402

# fmt: off



from __future__ import annotations

from collections.abc import Sequence
from typing import Any

import json
import logging
import pathlib

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "utils-colombeau"

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from utils_Colombeau.utils_CGF_bichar import BicharCurve
from utils_Colombeau.utils_CGF_classes import baseReportclass
from utils_Colombeau.utils_CGF_wavefront import WFReport



logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"
FIGSIZE = (10, 7)
DPI = 100



def write_csv(frame: pd.DataFrame, path: str | pathlib.Path, meta: dict[str, Any]) -> pathlib.Path:
    """
    write_csv - CSV table preceded by provenance comment lines

    Args:
        frame (pd.DataFrame): table
        path (str | pathlib.Path): target file
        meta (dict[str, Any]): provenance, values are written as compact JSON

    Returns:
        pathlib.Path: written file
    """

    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        for key in sorted(meta):
            fh.write(f"# {key}: {json.dumps(meta[key], sort_keys=True, separators=(',', ':'))}\n")
        frame.to_csv(fh, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info("report written to %s", path)
    return path


def write_report(report: baseReportclass, directory: str | pathlib.Path, meta: dict[str, Any],
                 name: str | None = None) -> pathlib.Path:
    """write_report - report table as <name>.csv, name defaults to the report name"""
    return write_csv(report.to_frame(), pathlib.Path(directory) / f"{name or report._report_name_}.csv", meta)


def read_csv(path: str | pathlib.Path) -> pd.DataFrame:
    """read_csv - table of a written report, provenance lines skipped"""
    return pd.read_csv(path, comment="#")


def read_meta(path: str | pathlib.Path) -> dict[str, Any]:
    """read_meta - provenance lines of a written report"""
    meta = {}
    with pathlib.Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("# "):
                break
            key, value = line[2:].rstrip("\n").split(": ", 1)
            meta[key] = json.loads(value)
    return meta



def _figure() -> tuple[Any, Any]:
    return plt.subplots(figsize=FIGSIZE, dpi=DPI)


def _save(fig: Any, path: str | pathlib.Path) -> pathlib.Path:
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info("figure written to %s", path)
    return path


def plot_wavefront(report: WFReport, path: str | pathlib.Path, title: str = "", ylabel: str = "y") -> pathlib.Path:
    """
    plot_wavefront - singular pairs of a wave front scan

    1D scans show base point against direction, 2D scans draw one arrow per
    singular direction at its base point.

    Args:
        report (WFReport): scan
        path (str | pathlib.Path): SVG file
        title (str, optional): figure title. Defaults to "".
        ylabel (str, optional): label of the second axis in 2D. Defaults to "y".

    Returns:
        pathlib.Path: written file
    """

    fig, ax = _figure()
    dimension = len(report.rows[0].x0) if report.rows else 1
    singular = [row for row in report.rows if row.verdict == "singular"]
    regular = [row for row in report.rows if row.verdict == "regular"]
    if dimension == 1:
        ax.scatter([r.x0[0] for r in regular], [r.xi0[0] for r in regular], marker=".", color="0.7", label="regular")
        ax.scatter([r.x0[0] for r in singular], [r.xi0[0] for r in singular], marker="o", color="C3", label="singular")
        ax.set_xlabel("x")
        ax.set_ylabel("direction")
    else:
        points = sorted({row.x0 for row in report.rows})
        ax.scatter([p[0] for p in points], [p[1] for p in points], marker=".", color="0.6")
        if singular:
            ax.quiver([r.x0[0] for r in singular], [r.x0[1] for r in singular],
                      [r.xi0[0] for r in singular], [r.xi0[1] for r in singular],
                      color="C3", angles="xy", scale_units="xy", scale=6.0, width=0.002)
        ax.set_xlabel("x")
        ax.set_ylabel(ylabel)
        ax.set_aspect("equal")
    ax.set_title(title or f"wave front scan at scale {report.scale_tag}")
    if dimension == 1:
        ax.legend()
    return _save(fig, path)


def plot_heatmap(x: np.ndarray, t: np.ndarray, values: np.ndarray, path: str | pathlib.Path,
                 title: str = "") -> pathlib.Path:
    """plot_heatmap - u(x, t) of one epsilon on the space-time grid, values of shape (n_x, n_t)"""
    fig, ax = _figure()
    image = ax.imshow(np.asarray(values).T, origin="lower", aspect="auto", cmap="viridis",
                      extent=(float(x[0]), float(x[-1]), float(t[0]), float(t[-1])))
    fig.colorbar(image, ax=ax)
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    ax.set_title(title)
    return _save(fig, path)


def plot_characteristic_fan(curve: BicharCurve, path: str | pathlib.Path,
                            limit: tuple[np.ndarray, np.ndarray] | None = None, title: str = "") -> pathlib.Path:
    """
    plot_characteristic_fan - x_eps(t) per epsilon as thin lines plus an optional thick limit curve

    Args:
        curve (BicharCurve): curves
        path (str | pathlib.Path): SVG file
        limit (tuple[np.ndarray, np.ndarray] | None, optional): (t, x) of the limit curve. Defaults to None.
        title (str, optional): figure title. Defaults to "".

    Returns:
        pathlib.Path: written file
    """

    fig, ax = _figure()
    for k, e in enumerate(curve.eps.epsilons):
        ax.plot(curve.x[k, :, 0], curve.t, linewidth=0.6, color=plt.cm.viridis(k / max(1, len(curve.eps) - 1)),
                label=f"eps = {e:.3g}" if k in {0, len(curve.eps) - 1} else None)
    if limit is not None:
        ax.plot(limit[1], limit[0], linewidth=3.0, color="k", label="limit")
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    ax.set_title(title)
    ax.legend()
    return _save(fig, path)


def plot_lines(x: np.ndarray, series: Sequence[tuple[str, np.ndarray]], path: str | pathlib.Path,
               xlabel: str = "", ylabel: str = "", logx: bool = False, title: str = "") -> pathlib.Path:
    """plot_lines - several named series over a common abscissa"""
    fig, ax = _figure()
    for label, values in series:
        ax.plot(x, values, marker=".", label=label)
    if logx:
        ax.set_xscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if series:
        ax.legend()
    return _save(fig, path)

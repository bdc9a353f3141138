# Colombeau generalized functions utilities
# checks - acceptance checks of the command line reports

"""
Module provides the acceptance checks run by the command line interface in --check mode.
Every check logs the reason of a failure and returns a plain bool.
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

import logging
import math
import re

import numpy as np
import pandas as pd

from utils_Colombeau.utils_CGF_bichar import BicharCurve, CoeffField
from utils_Colombeau.utils_CGF_genfun import DistSpec, singular_support
from utils_Colombeau.utils_CGF_symbols import EllipticityTable
from utils_Colombeau.utils_CGF_transport import FlowComparison, HSScanReport, KinkTable, PropagationReport, TEpsFit
from utils_Colombeau.utils_CGF_wavefront import WFReport



logger = logging.getLogger(__name__)

VALUATION_TOLERANCE = 0.02
RESIDUAL_TOLERANCE = 1e-8
SPEED_TOLERANCE = 1e-6
MIN_R2 = 0.95
MIN_KINK_SINGULAR = 14
MIN_DEFICIENCY = 4

_MONOMIAL = re.compile(r"^\s*(?:(?P<c>[-+0-9.eE]+)\s*\*\s*)?eps\s*\^\s*(?P<b>[-+0-9.eE]+)\s*$")



def expect(condition: bool, message: str) -> bool:
    """
    expect - log message if condition fails

    Args:
        condition (bool): check result
        message (str): failure message

    Returns:
        bool: condition
    """

    if not condition:
        logger.warning("check failed: %s", message)
    return bool(condition)



def check_val(frame: pd.DataFrame) -> bool:
    """
    check_val - valuation rows against the closed forms of their net expressions

    "eps^b" and "c*eps^b" must give b_hat within 0.02 of b, powers of log and
    constants must be slow scale, exp(1/eps) must be classified "neither". A net
    that could not be evaluated fails the check.

    Args:
        frame (pd.DataFrame): table of cmd_val

    Returns:
        bool: check result
    """

    check = True
    for row in frame.itertuples(index=False):
        if row.error:
            check &= expect(False, f"net '{row.net}' failed: {row.error}")
            continue
        match = _MONOMIAL.match(str(row.net))
        if match:
            b = float(match.group("b"))
            check &= expect(abs(row.b_hat - b) <= VALUATION_TOLERANCE,
                            f"net '{row.net}': b_hat {row.b_hat:.6g} differs from {b:g}")
        elif str(row.net).startswith(("log", "const")):
            check &= expect(bool(row.slow_scale), f"net '{row.net}' is not slow scale")
        elif str(row.net) == "exp(1/eps)":
            check &= expect(row.classification == "neither", f"net '{row.net}' classified {row.classification}")
    return check



def check_wf_embed(report: WFReport, dist_spec: DistSpec, spacing: float) -> bool:
    """
    check_wf_embed - singular base points of an embedded distribution lie at its singular support

    Args:
        report (WFReport): scan of the embedded distribution
        dist_spec (DistSpec): embedded distribution
        spacing (float): base point spacing of the scan

    Returns:
        bool: check result
    """

    support = [np.asarray(p, dtype=float) for p in singular_support(dist_spec)]
    singular = report.singular_points()
    check = True
    if not support:
        return expect(not singular, f"smooth datum has singular base points {singular}")
    for point in singular:
        distance = min(float(np.linalg.norm(np.asarray(point) - s)) for s in support)
        check &= expect(distance <= spacing, f"singular base point {point} away from the singular support")
    for s in support:
        scanned = sorted({row.x0 for row in report.rows}, key=lambda p: float(np.linalg.norm(np.asarray(p) - s)))
        if scanned:
            check &= expect(tuple(scanned[0]) in set(singular), f"no singular verdict next to {tuple(s)}")
    return check



def _angular_distance(a: float, b: float, period: float = math.pi) -> float:
    return abs((a - b + 0.5 * period) % period - 0.5 * period)


def check_hs_kink(tables: Sequence[KinkTable], fit: TEpsFit) -> bool:
    """
    check_hs_kink - bicharacteristic facts at the coefficient jump

    Args:
        tables (Sequence[KinkTable]): kink tables of both sign conventions
        fit (TEpsFit): fit of |t_eps - s0| against 1/gamma

    Returns:
        bool: check result
    """

    check = True
    for table in tables:
        check &= expect(table.bounds_hold, f"|xi0| <= |xi(s0)| <= 2|tau0| fails ({table.convention})")
        check &= expect(
            all(abs(float(row["speed_at_t_eps"]) - 0.5) <= SPEED_TOLERANCE for row in table.rows),
            f"speed at t_eps differs from 1/2 ({table.convention})",
        )
        check &= expect(table.threshold_before is not None, f"xi(s0 - 0.5) = xi0 nowhere ({table.convention})")
        check &= expect(table.threshold_after is not None, f"|xi(s0 + 0.5)| >= 10|xi0| nowhere ({table.convention})")
    check &= expect(fit.r2 >= MIN_R2, f"t_eps fit R^2 = {fit.r2:.4f} below {MIN_R2}")
    check &= expect(fit.monotone, "t_eps is not monotone")
    return check


def check_hs_wavefront(scan: HSScanReport, count: int = 16) -> bool:
    """
    check_hs_wavefront - line, kink and ridge structure of the solution's wave front set

    Args:
        scan (HSScanReport): scan with region labels
        count (int, optional): number of scanned angles. Defaults to 16.

    Returns:
        bool: check result
    """

    step = 2.0 * math.pi / count
    null_angle = math.atan2(-1.0, 1.0)
    check = True
    for row in scan.rows_in("line"):
        if row.verdict == "singular":
            check &= expect(_angular_distance(row.angle, null_angle) <= step + 1e-9,
                            f"line point {row.x0} singular in direction {row.xi0}")
    kink = scan.rows_in("kink")
    singular = sum(row.verdict == "singular" for row in kink)
    check &= expect(singular >= MIN_KINK_SINGULAR, f"kink singular in {singular} directions only")
    ridge_points = sorted({row.x0 for row in scan.rows_in("ridge")})
    for point in ridge_points:
        for direction, expected in (((1.0, 0.0), "singular"), ((-1.0, 0.0), "singular"),
                                    ((0.0, 1.0), "regular"), ((0.0, -1.0), "regular")):
            verdict = scan.wf.verdict_at(point, direction)
            check &= expect(verdict == expected, f"ridge point {point} is {verdict} in direction {direction}")
    return check


def check_hs_flow(comparison: FlowComparison, cone_ok: bool, violations: Sequence[object]) -> bool:
    """check_hs_flow - flow-out deficiency at the kink and zero inclusion violations"""
    check = True
    check &= expect(cone_ok, "limit directions leave the cone |xi| <= 2|tau|")
    check &= expect(comparison.deficiency >= MIN_DEFICIENCY,
                    f"only {comparison.deficiency} singular directions are not covered by the flow")
    check &= expect(len(violations) == 0, f"{len(violations)} singular pairs lie in the micro-elliptic set")
    return check



def check_bichar(curve: BicharCurve, c: CoeffField) -> bool:
    """
    check_bichar - null residual, no truncation and straight lines for constant fields

    Args:
        curve (BicharCurve): curves
        c (CoeffField): coefficient field

    Returns:
        bool: check result
    """

    check = True
    check &= expect(not curve.truncated, "bicharacteristic truncated by the blow-up guard")
    residual = float(np.nanmax(curve.residual))
    check &= expect(residual <= RESIDUAL_TOLERANCE, f"null residual {residual:.3g}")
    if c.name.startswith("constant"):
        velocity = c.a(0, np.zeros((1, c.n)), 0.0)[0]
        expected = np.asarray(curve.x0)[None, None, :] + (curve.t - curve.t[0])[None, :, None] * velocity
        deviation = float(np.max(np.abs(curve.x - expected)))
        check &= expect(deviation <= 1e-9, f"constant field curve deviates from a line by {deviation:.3g}")
    return check


def check_symbol(table: EllipticityTable, expected: bool) -> bool:
    """check_symbol - every micro-ellipticity verdict equals the expected one"""
    check = True
    for report in table.reports:
        check &= expect(report.verdict == expected,
                        f"ellipticity at {report.x0}, {report.xi0} is {report.verdict}: {report.diagnostic}")
    return check


def check_prop(report: PropagationReport) -> bool:
    """check_prop - every flowed wave front point matched by a slice wave front point"""
    check = True
    for row in report.rows:
        check &= expect(bool(row["base_match"]) and bool(row["direction_match"]),
                        f"t = {row['t']}: flow at {row['flow_x']} against wave front at {row['wf_x']}")
    return check

# Colombeau generalized functions utilities
# cli - command line entry point with subcommands val, wf, hs, bichar, symbol, prop


"""
Module provides the command line interface

    utils-colombeau <val|wf|hs|bichar|symbol|prop> --config path [--check] [--out dir] [--jobs n] [--verbose]

Exit codes: 0 success, 1 numerical error, 2 configuration error, 3 numerical guard
triggered (blow-up truncation), 4 failed acceptance check in --check mode.
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
from typing import Any

import argparse
import logging
import math
import pathlib
import sys

import numpy as np
import pandas as pd

from utils_Colombeau.utils_CGF_bichar import CoeffField, gronwall_check, integrate_bichar, moderateness
from utils_Colombeau.utils_CGF_checks import (
    check_bichar, check_hs_flow, check_hs_kink, check_hs_wavefront, check_prop, check_symbol, check_val, check_wf_embed
)
from utils_Colombeau.utils_CGF_classes import ErrorCGF, ErrorConfig, ErrorDomain, ErrorNumericalGuard
from utils_Colombeau.utils_CGF_config import ExperimentConfig, HSConfig, load_config, provenance
from utils_Colombeau.utils_CGF_decorators import logcall
from utils_Colombeau.utils_CGF_genfun import DeltaSpec, SpatialGrid, embed, parse_dist_spec, save_gridfn
from utils_Colombeau.utils_CGF_logging import initCGFlogger, mixinCGFclass_logger
from utils_Colombeau.utils_CGF_report import (
    plot_characteristic_fan, plot_heatmap, plot_lines, plot_wavefront, write_csv, write_report
)
from utils_Colombeau.utils_CGF_scale import (
    EpsGrid, ScaleFn, classify, estimate_log_corrected_valuation, estimate_valuation, is_slow_scale, parse_log_net,
    parse_net, ultra_norm
)
from utils_Colombeau.utils_CGF_symbols import check_symbol_class, ell_scan, nonchar_inclusion_check, parse_symbol
from utils_Colombeau.utils_CGF_transport import (
    CauchySpec, SolutionField, ThetaField, build_theta, find_t_eps, fit_t_eps, flow_wf_comparison, hs_eps_grid,
    hs_wavefront_scan, kink_table, limit_cone_ok, mass_history, smooth_propagation_case, solve_characteristics,
    solve_upwind, solver_distance, stuck_profile
)
from utils_Colombeau.utils_CGF_wavefront import WFParams, direction_grid, wf_scan



logger = logging.getLogger(__name__)

COMMANDS = ("val", "wf", "hs", "bichar", "symbol", "prop")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_GUARD = 3
EXIT_CHECK = 4



def scan_points(grid: SpatialGrid, spacing: float) -> list[tuple[float, ...]]:
    """
    scan_points - base points at the given spacing, centered in the grid, cutoff support inside

    Args:
        grid (SpatialGrid): grid
        spacing (float): spacing, also the cutoff radius

    Returns:
        list[tuple[float, ...]]: base points
    """

    axes = []
    for lo, hi, h in zip(grid.mins, grid.maxs, grid.h, strict=True):
        first, last = lo + spacing + h, hi - spacing - h
        center = 0.5 * (lo + hi)
        count = math.floor((last - first) / (2.0 * spacing) + 1e-9)
        axes.append(center + spacing * np.arange(-count, count + 1))
    mesh = np.meshgrid(*axes, indexing="ij")
    return [tuple(float(m.flat[i]) for m in mesh) for i in range(mesh[0].size)]


def hs_solution(hs: HSConfig, config: ExperimentConfig, jobs: int = 1) -> tuple[ThetaField, CauchySpec, SolutionField]:
    """hs_solution - mollified Heaviside coefficient, Cauchy problem and its characteristics solution"""
    eps = hs_eps_grid(hs.gamma_min, hs.gamma_max, hs.n_eps)
    mollifier = config.mollifier_obj()
    scale = config.scale_fn()
    theta = build_theta(mollifier, scale, eps)
    spec = CauchySpec(theta.coeff(), SpatialGrid.line(hs.xmin, hs.xmax, hs.nx), DeltaSpec((-hs.s0,)),
                      mollifier, scale, hs.T, hs.nt, hs.dt, hs.s0)
    return theta, spec, solve_characteristics(spec, jobs)


def coefficient_field(name: str, config: ExperimentConfig, value: float = 1.0) -> CoeffField:
    """coefficient_field - named coefficient on the epsilon grid of the configuration"""
    eps = config.eps.grid()
    if name == "constant":
        return CoeffField.constant(eps, value)
    if name == "linear":
        return CoeffField.linear(eps)
    if name == "bump":
        return CoeffField.bump(eps, value)
    return build_theta(config.mollifier_obj(), config.scale_fn(), eps).coeff()

def net_samples(expression: str, eps: EpsGrid) -> list[dict[str, Any]]:
    """net_samples - rows (net, eps, re, im) of nets.csv, none for nets beyond the float range"""
    try:
        u = parse_net(expression, eps)
    except ErrorDomain:
        logger.warning("net '%s' exceeds the float range, only its log magnitudes are reported", expression)
        return []
    return [{"net": expression, "eps": e, "re": re, "im": im} for e, re, im in u.to_rows()]



class CGFrunner(mixinCGFclass_logger):
    """
    CGFrunner - runs one subcommand of a configuration and writes its reports

    Every cmd_* method returns the verdict of its acceptance checks (True when
    checks are not requested). Recorded blow-up truncations set truncated.
    """

    def __init__(self, config: ExperimentConfig, out: pathlib.Path, jobs: int = 1, check: bool = False,
                 level: int = logging.INFO):

        self.config = config
        self.out = pathlib.Path(out)
        self.jobs = jobs
        self.check = check
        self.meta = provenance(config)
        self.truncated = False
        self._initCGFlogger(level)

    def _meta(self, command: str, **extra: Any) -> dict[str, Any]:
        return {**self.meta, "command": command, **extra}

    @logcall
    def cmd_val(self) -> bool:
        """cmd_val - valuations, ultra-norms and classifications of the declared nets"""

        cfg = self.config.val
        eps = self.config.eps.grid()
        rows, samples = [], []
        for expression in cfg.nets:
            try:
                u = parse_log_net(expression, eps)
                estimate = estimate_valuation(u, cfg.tail_fraction)
                corrected = estimate_log_corrected_valuation(u)
                rows.append({
                    "net": expression,
                    "b_hat": estimate.b_hat,
                    "fit_residual": estimate.fit_residual,
                    "log_corrected_b": corrected.b_hat,
                    "log_power": corrected.log_power,
                    "ultra_norm": ultra_norm(u, cfg.tail_fraction),
                    "classification": classify(u, tail_fraction=cfg.tail_fraction),
                    "slow_scale": is_slow_scale(u, cfg.slow_scale_tol) if u.positive else False,
                    "error": "",
                })
                samples.extend(net_samples(expression, eps))
            except ErrorCGF as exc:
                self._logMessage(f"net '{expression}' failed: {exc}", logging.WARNING)
                rows.append({"net": expression, "b_hat": math.nan, "fit_residual": math.nan,
                             "log_corrected_b": math.nan, "log_power": math.nan, "ultra_norm": math.nan,
                             "classification": "", "slow_scale": False, "error": str(exc)})
        frame = pd.DataFrame.from_records(rows)
        write_csv(frame, self.out / "valuations.csv", self._meta("val"))
        write_csv(pd.DataFrame.from_records(samples, columns=["net", "eps", "re", "im"]),
                  self.out / "nets.csv", self._meta("val"))
        series = [
            (expression, parse_log_net(expression, eps).log10())
            for expression, row in zip(cfg.nets, rows, strict=True) if not row["error"]
        ]
        plot_lines(eps.array, series, self.out / "valuations.svg", "eps", "log10 |u_eps|", logx=True)
        return check_val(frame) if self.check else True

    @logcall
    def cmd_wf(self) -> bool:
        """cmd_wf - wave front scan of an embedded distribution or of the Cauchy problem solution"""

        cfg = self.config.wf
        scale = self.config.scale_fn()
        params = WFParams(scale, cfg.r, cfg.theta, cfg.l_values, cfg.slope_tol, cfg.floor_rel, None, cfg.retest, self.jobs)
        if cfg.input == "hs":
            hs = self.config.hs
            _, _, solution = hs_solution(hs, self.config, self.jobs)
            points = list(cfg.base_points) or None
            scan = hs_wavefront_scan(solution, params, hs.s0, points, cfg.directions)
            write_report(scan, self.out, self._meta("wf"))
            plot_wavefront(scan.wf, self.out / "hs_wavefront.svg", ylabel="t")
            return check_hs_wavefront(scan, cfg.directions) if self.check else True
        grid = self.config.grid.grid()
        spec = parse_dist_spec(cfg.dist, grid.dimension)
        u = embed(spec, self.config.mollifier_obj(), scale, grid, self.config.eps.grid())
        points = list(cfg.base_points) or scan_points(grid, cfg.r)
        report = wf_scan(u, points, direction_grid(grid.dimension, cfg.directions), params)
        write_report(report, self.out, self._meta("wf"))
        plot_wavefront(report, self.out / "wavefront.svg")
        return check_wf_embed(report, spec, cfg.r) if self.check else True

    @logcall
    def cmd_hs(self) -> bool:
        """cmd_hs - complete report bundle of the mollified Heaviside transport example"""

        hs = self.config.hs
        meta = self._meta("hs")
        theta, spec, solution = hs_solution(hs, self.config, self.jobs)
        eps = theta.eps
        gammas = theta.scale.gammas(eps)

        # solution, mass and solver cross-check
        mass = mass_history(solution)
        write_csv(pd.DataFrame({
            "eps": np.repeat(eps.array, solution.times.size),
            "t": np.tile(solution.times, len(eps)),
            "mass": mass.reshape(-1),
        }), self.out / "mass.csv", meta)
        save_gridfn(solution.field, self.out / "solution_characteristics", {**meta, "solver": solution.solver})
        for k, e in enumerate(eps.epsilons):
            plot_heatmap(solution.x, solution.times, solution.field.samples[k], self.out / f"solution_eps_{k:02d}.svg",
                         title=f"u_eps(x, t), eps = {e:.4g}")
        stuck = stuck_profile(solution, min(hs.s0 + 1.0, hs.T), 0.1, theta.scale)
        write_csv(pd.DataFrame({"eps": eps.array, "gamma": gammas, "sup_outside": stuck}), self.out / "stuck.csv", meta)
        if hs.upwind:
            upwind = solve_upwind(spec, jobs=self.jobs)
            save_gridfn(upwind.field, self.out / "solution_upwind", {**meta, "solver": upwind.solver})
            write_csv(pd.DataFrame({"eps": eps.array, "l1_distance": solver_distance(upwind, solution)}),
                      self.out / "solver_distance.csv", meta)

        # zero crossing time and bicharacteristics
        t_eps = find_t_eps(theta, hs.s0, hs.bichar_dt)
        fit = fit_t_eps(theta, t_eps, hs.s0)
        write_csv(pd.DataFrame({"eps": eps.array, "gamma": gammas, "t_eps": t_eps.real}), self.out / "t_eps.csv",
                  {**meta, "fit": {"C": fit.C, "intercept": fit.intercept, "r2": fit.r2, "monotone": fit.monotone}})
        kink_plus, curve = kink_table(theta, hs.s0, 1.0, hs.bichar_dt, jobs=self.jobs)
        kink_minus, _ = kink_table(theta, hs.s0, -1.0, hs.bichar_dt, jobs=self.jobs)
        write_csv(pd.concat([kink_plus.to_frame(), kink_minus.to_frame()], ignore_index=True), self.out / "kink.csv",
                  {**meta, "threshold_before": kink_plus.threshold_before, "threshold_after": kink_plus.threshold_after})
        write_report(curve, self.out, meta)
        self.truncated = self.truncated or curve.truncated
        limit_t = curve.t
        plot_characteristic_fan(curve, self.out / "characteristic_fan.svg",
                                limit=(limit_t, np.minimum(limit_t - hs.s0, 0.0)), title="x_eps(t)")

        # wave front set of the solution and flow comparison at the kink
        params = WFParams(theta.scale, r=hs.r, jobs=self.jobs)
        scan = hs_wavefront_scan(solution, params, hs.s0, None, hs.directions)
        write_report(scan, self.out, meta)
        plot_wavefront(scan.wf, self.out / "hs_wavefront.svg", ylabel="t")
        comparison = flow_wf_comparison(scan.wf, curve, (0.0, hs.s0), hs.s0, hs.directions)
        write_report(comparison, self.out, meta)
        cone_ok = limit_cone_ok(curve, hs.s0)

        # singular pairs at the power scale against the micro-elliptic set of tau + theta xi
        points = sorted({row.x0 for row in scan.wf.rows})
        directions = direction_grid(2, hs.directions)
        strong = wf_scan(solution.field, points, directions,
                         WFParams(ScaleFn.parse(hs.inclusion_scale), r=hs.r, jobs=self.jobs))
        symbol = parse_symbol("transport:tau+theta*xi", eps, coefficient=theta.evaluate)
        singular = sorted({x0 for x0, _ in strong.singular_set()} | {x0 for x0, _ in scan.wf.singular_set()})
        ell = ell_scan(symbol, singular, directions, hs.U_radius)
        violations = nonchar_inclusion_check(strong, ell) if singular else []
        diagnostic = nonchar_inclusion_check(scan.wf, ell) if singular else []
        write_csv(pd.DataFrame.from_records(
            [{"scale": hs.inclusion_scale, "x0": x0[0], "x1": x0[1], "xi0": xi0[0], "xi1": xi0[1]} for x0, xi0 in violations]
            + [{"scale": theta.scale.tag, "x0": x0[0], "x1": x0[1], "xi0": xi0[0], "xi1": xi0[1]} for x0, xi0 in diagnostic],
            columns=["scale", "x0", "x1", "xi0", "xi1"],
        ), self.out / "inclusion.csv", {**meta, "violations": len(violations), "diagnostic_pairs": len(diagnostic)})
        if not self.check:
            return True
        checks = [check_hs_kink([kink_plus, kink_minus], fit), check_hs_wavefront(scan, hs.directions),
                  check_hs_flow(comparison, cone_ok, violations)]
        return all(checks)

    @logcall
    def cmd_bichar(self) -> bool:
        """cmd_bichar - null bicharacteristics of the configured coefficient field"""

        cfg = self.config.bichar
        meta = self._meta("bichar")
        c = coefficient_field(cfg.coefficient, self.config, cfg.value)
        curve = integrate_bichar(c, cfg.x0, cfg.xi0, cfg.tau0, cfg.t_span, cfg.dt, jobs=self.jobs)
        self.truncated = self.truncated or curve.truncated
        write_report(curve, self.out, meta)
        write_csv(pd.DataFrame({
            "eps": curve.eps.array,
            "truncated_at": curve.truncated_at,
            "halving_error": curve.halving_error,
            "max_residual": np.nanmax(curve.residual, axis=1),
            "gronwall_ok": gronwall_check(curve, c),
        }), self.out / "bichar_summary.csv", {**meta, "moderateness": moderateness(curve)})
        plot_characteristic_fan(curve, self.out / "bichar.svg", title=f"bicharacteristics of {c.name}")
        return check_bichar(curve, c) if self.check else True

    @logcall
    def cmd_symbol(self) -> bool:
        """cmd_symbol - micro-ellipticity scan and symbol class test"""

        cfg = self.config.symbol
        eps = self.config.eps.grid()
        c_scale = ScaleFn.parse(cfg.c)
        coefficient = None
        if cfg.symbol.startswith("transport"):
            coefficient = build_theta(self.config.mollifier_obj(), self.config.scale_fn(), eps).evaluate
        a = parse_symbol(cfg.symbol, eps, c_scale, coefficient)
        table = ell_scan(a, cfg.points, cfg.directions, cfg.U_radius, cfg.cone_angle, cfg.band)
        in_class = check_symbol_class(a, cfg.K, cfg.alpha_max, cfg.beta_max, f_hi=cfg.band[1])
        write_report(table, self.out, self._meta("symbol", symbol_class=in_class, order=a.order))
        if not self.check or cfg.symbol != "1+c*x^2":
            return True
        return check_symbol(table, is_slow_scale(c_scale.values(eps)))

    @logcall
    def cmd_prop(self) -> bool:
        """cmd_prop - wave front set of time slices against the Hamilton flow image"""

        cfg = self.config.prop
        if cfg.coefficient == "theta":
            err_msg = "prop needs a smooth epsilon independent coefficient, not theta."
            raise ErrorConfig(err_msg)
        coeff = coefficient_field(cfg.coefficient, self.config, cfg.amplitude)
        scale = self.config.scale_fn()
        params = WFParams(scale, r=cfg.r, jobs=self.jobs)
        report = smooth_propagation_case(coeff, DeltaSpec((cfg.x0,)), cfg.t_list,
                                         SpatialGrid.line(cfg.xmin, cfg.xmax, cfg.nx), self.config.mollifier_obj(),
                                         scale, params, cfg.dt, cfg.nt, self.jobs)
        write_report(report, self.out, self._meta("prop"))
        frame = report.to_frame()
        matched = frame[frame["base_match"]].sort_values(["t", "flow_x"]) if len(frame) else frame
        if len(matched):
            plot_lines(matched["t"].to_numpy(), [("flow", matched["flow_x"].to_numpy()),
                                                 ("wave front", matched["wf_x"].to_numpy())],
                       self.out / "propagation.svg", "t", "x")
        return check_prop(report) if self.check else True



def build_parser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(prog="utils-colombeau",
                                     description="Numerical experiments with Colombeau generalized functions.")
    parser.add_argument("command", choices=COMMANDS, help="experiment to run")
    parser.add_argument("--config", required=True, help="JSON configuration file")
    parser.add_argument("--check", action="store_true", help="run acceptance checks, exit code 4 on failure")
    parser.add_argument("--out", default=None, help="output directory, overrides the configuration")
    parser.add_argument("--jobs", type=int, default=None, help="parallel workers over epsilon")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    main - command line entry point

    Args:
        argv (Sequence[str] | None, optional): arguments, sys.argv if None. Defaults to None.

    Returns:
        int: exit code
    """

    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.INFO
    initCGFlogger(level)
    runner = None
    try:
        config = load_config(args.config)
        jobs = args.jobs if args.jobs is not None else config.jobs
        if jobs < 1:
            err_msg = f"--jobs must be at least 1, got {jobs}."
            raise ErrorConfig(err_msg)
        runner = CGFrunner(config, pathlib.Path(args.out or config.out), jobs, args.check, level)
        passed = getattr(runner, f"cmd_{args.command}")()
        truncated = runner.truncated
    except ErrorConfig as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except ErrorNumericalGuard as exc:
        logger.error("numerical guard: %s", exc)
        return EXIT_GUARD
    except ErrorCGF as exc:
        if runner is not None:
            runner._logException(exc)
        else:
            logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_ERROR
    finally:
        if runner is not None:
            runner._shutdownCGFlogger()
    if truncated:
        logger.warning("blow-up truncation recorded")
        return EXIT_GUARD
    if args.check and not passed:
        logger.warning("acceptance checks failed")
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

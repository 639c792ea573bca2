"""Command-line front end.

Subcommands
-----------
solve     one operating point (flow rate -> pressure drop, or the inverse)
sweep     a range of operating points, optionally in parallel
validate  analytic-vs-quadrature report over a parameter grid
profile   (x, r) samples of a tube profile
rheology  viscosity/stress samples of the fluid model on a log grid

Output is CSV or JSON on stdout (or ``--output``), deterministic across
repeated invocations: fixed column order, shortest round-trip float
formatting, LF line endings.  All quantities are SI: radii and lengths in
m, flow rates in m^3/s, pressures in Pa, consistency in Pa*s^n.

Exit codes: 0 success, 2 argument or validation errors, 3 numerical
failure (neither the analytic route nor the quadrature oracle converged).
"""

import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import click
import numpy as np

from . import __version__
from .errors import CdtubeError, ConvergenceError, EvaluationError
from .fluid import PowerLawFluid, apparent_viscosity
from .flow import METHOD_FALLBACK, flow_rate as solve_flow_rate
from .flow import pressure_drop as solve_pressure_drop
from .geometry import TubeShape, TubeSpec, sample_profile
from .quadrature import DEFAULT_REL_TOL, MAX_PANELS

SCHEMA_VERSION = 1

SHAPE_NAMES = [shape.value for shape in TubeShape]

SOLVE_COLUMNS = ["shape", "n", "C", "r_min", "r_max", "length", "periods",
                 "Q", "P", "method", "branch", "note", "oracle", "rel_err"]
VALIDATE_COLUMNS = ["shape", "n", "C", "r_min", "r_max", "length", "Q",
                    "P_analytic", "P_numeric", "rel_err", "method", "branch"]
PROFILE_COLUMNS = ["x", "r"]
RHEOLOGY_COLUMNS = ["strain_rate", "viscosity", "stress"]

# Acceptance-style validation grid (r_min = 1 m, C = 1 Pa*s^n).
DEFAULT_GRID = {
    "n": (0.4, 0.6, 0.8, 1.0, 1.2, 1.6),
    "ratio": (1.1, 2.0, 4.0, 10.0),
    "length": (1.0, 10.0),
    "flow_rate": (1e-3, 1.0),
}
QUICK_GRID = {
    "n": (0.6, 1.0, 1.2),
    "ratio": (2.0,),
    "length": (1.0,),
    "flow_rate": (1.0,),
}

# Per-row thresholds for the validate report.
TOL_CONIC = 1e-8
TOL_FALLBACK = 1e-8
TOL_DEFAULT = 1e-6
# Fallback rows are judged against an independently configured oracle run
# at this tighter tolerance.
ORACLE_TIGHT = 1e-12


def _fmt(value) -> str:
    """Deterministic cell formatting: shortest round-trip for floats."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(fmt: str, output, config: dict, columns, rows) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[col]) for col in columns])
        text = buf.getvalue()
    else:
        doc = {"schema_version": SCHEMA_VERSION, "config": config,
               "results": rows}
        text = json.dumps(doc, indent=2) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _build_inputs(shape, n, consistency, rmin, rmax, length):
    try:
        fluid = PowerLawFluid(consistency=consistency, index=n)
        spec = TubeSpec(shape=TubeShape(shape), r_min=rmin, r_max=rmax,
                        length=length)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    return fluid, spec


def _solve_row(shape, n, consistency, rmin, rmax, length, periods,
               given_flow, given_pressure, validate, rel_tol,
               max_panels=MAX_PANELS):
    """One solve; returns a row dict in SOLVE_COLUMNS order."""
    fluid, spec = _build_inputs(shape, n, consistency, rmin, rmax, length)
    if given_flow is not None:
        result = solve_pressure_drop(fluid, spec, given_flow,
                                     validate=validate, oracle_rel_tol=rel_tol,
                                     max_panels=max_panels)
        q_val = given_flow
        p_val = periods * result.pressure_drop
    else:
        unit_pressure = given_pressure / periods
        result = solve_flow_rate(fluid, spec, unit_pressure,
                                 validate=validate, oracle_rel_tol=rel_tol,
                                 max_panels=max_panels)
        q_val = result.flow_rate
        p_val = given_pressure
    oracle = (None if result.oracle_value is None
              else periods * result.oracle_value)
    return {
        "shape": shape, "n": n, "C": consistency, "r_min": rmin,
        "r_max": rmax, "length": length, "periods": periods,
        "Q": q_val, "P": p_val, "method": result.method,
        "branch": result.branch, "note": result.diagnostics,
        "oracle": oracle, "rel_err": result.rel_error,
    }


def _sweep_worker(args):
    return _solve_row(*args)


@click.group()
@click.version_option(version=__version__, prog_name="cdtube")
def main():
    """Pressure-drop/flow-rate solver for power-law fluids in
    converging-diverging capillaries."""


def _geometry_options(func):
    for deco in reversed([
        click.option("--shape", type=click.Choice(SHAPE_NAMES), required=True,
                     help="Tube profile."),
        click.option("--rmin", type=float, required=True,
                     help="Throat radius (m)."),
        click.option("--rmax", type=float, required=True,
                     help="Entry/exit radius (m)."),
        click.option("--length", type=float, required=True,
                     help="Length of one corrugation unit (m)."),
    ]):
        func = deco(func)
    return func


def _fluid_options(func):
    for deco in reversed([
        click.option("--n", type=float, required=True,
                     help="Flow behavior index (dimensionless)."),
        click.option("--consistency", type=float, required=True,
                     help="Consistency factor C (Pa*s^n)."),
    ]):
        func = deco(func)
    return func


def _output_options(func):
    for deco in reversed([
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                     default="json", show_default=True),
        click.option("--output", type=click.Path(dir_okay=False), default=None,
                     help="Write to this path instead of stdout."),
    ]):
        func = deco(func)
    return func


@main.command()
@_geometry_options
@_fluid_options
@click.option("--flow-rate", type=float, default=None,
              help="Volumetric flow rate (m^3/s); solves for pressure drop.")
@click.option("--pressure", type=float, default=None,
              help="Total pressure drop (Pa); solves for flow rate.")
@click.option("--periods", type=click.IntRange(min=1), default=1,
              show_default=True,
              help="Number of corrugation units in series.")
@click.option("--validate", is_flag=True,
              help="Co-evaluate the quadrature oracle and report the "
                   "relative deviation.")
@click.option("--rel-tol", type=float, default=DEFAULT_REL_TOL,
              show_default=True, help="Oracle relative tolerance.")
@click.option("--max-subdivisions", type=click.IntRange(min=1),
              default=MAX_PANELS, show_default=True,
              help="Panel cap for quadrature fallback runs.")
@_output_options
def solve(shape, rmin, rmax, length, n, consistency, flow_rate, pressure,
          periods, validate, rel_tol, max_subdivisions, fmt, output):
    """Solve one operating point."""
    if (flow_rate is None) == (pressure is None):
        raise click.UsageError(
            "exactly one of --flow-rate or --pressure is required"
        )
    if flow_rate is not None and flow_rate < 0:
        raise click.UsageError("--flow-rate must be non-negative")
    if pressure is not None and pressure < 0:
        raise click.UsageError("--pressure must be non-negative")
    config = {
        "subcommand": "solve", "shape": shape, "n": n,
        "consistency": consistency, "r_min": rmin, "r_max": rmax,
        "length": length, "periods": periods, "flow_rate": flow_rate,
        "pressure": pressure, "validate": validate, "rel_tol": rel_tol,
        "max_subdivisions": max_subdivisions, "format": fmt,
    }
    with _numeric_failures_exit_3():
        row = _solve_row(shape, n, consistency, rmin, rmax, length, periods,
                         flow_rate, pressure, validate, rel_tol,
                         max_subdivisions)
    _emit(fmt, output, config, SOLVE_COLUMNS, [row])


@main.command()
@_geometry_options
@_fluid_options
@click.option("--quantity", type=click.Choice(["flow-rate", "pressure"]),
              default="flow-rate", show_default=True,
              help="Which quantity the sweep varies.")
@click.option("--start", type=float, required=True)
@click.option("--stop", type=float, required=True)
@click.option("--count", type=click.IntRange(min=2), required=True)
@click.option("--spacing", type=click.Choice(["linear", "log"]),
              default="linear", show_default=True)
@click.option("--periods", type=click.IntRange(min=1), default=1,
              show_default=True)
@click.option("--validate", is_flag=True)
@click.option("--rel-tol", type=float, default=DEFAULT_REL_TOL,
              show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1,
              show_default=True,
              help="Worker processes; rows are emitted in input order "
                   "regardless of completion order.")
@_output_options
def sweep(shape, rmin, rmax, length, n, consistency, quantity, start, stop,
          count, spacing, periods, validate, rel_tol, jobs, fmt, output):
    """Sweep flow rate or pressure over a range."""
    if not start < stop:
        raise click.UsageError("--start must be less than --stop")
    if spacing == "log" and start <= 0:
        raise click.UsageError("log spacing requires --start > 0")
    if start < 0:
        raise click.UsageError("swept values must be non-negative")
    if spacing == "linear":
        values = np.linspace(start, stop, count)
    else:
        values = np.geomspace(start, stop, count)
    config = {
        "subcommand": "sweep", "shape": shape, "n": n,
        "consistency": consistency, "r_min": rmin, "r_max": rmax,
        "length": length, "periods": periods, "quantity": quantity,
        "start": start, "stop": stop, "count": count, "spacing": spacing,
        "validate": validate, "rel_tol": rel_tol, "format": fmt,
    }
    points = [
        (shape, n, consistency, rmin, rmax, length, periods,
         float(v) if quantity == "flow-rate" else None,
         float(v) if quantity == "pressure" else None,
         validate, rel_tol)
        for v in values
    ]
    with _numeric_failures_exit_3():
        if jobs == 1:
            rows = [_sweep_worker(p) for p in points]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(_sweep_worker, points))
    _emit(fmt, output, config, SOLVE_COLUMNS, rows)


@main.command()
@click.option("--grid", type=click.Choice(["default", "quick"]),
              default="default", show_default=True)
@click.option("--rel-tol", type=float, default=DEFAULT_REL_TOL,
              show_default=True, help="Oracle relative tolerance.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def validate(grid, rel_tol, fmt, output):
    """Cross-validate every closed form against the quadrature oracle.

    Exits 3 if any grid point misses its tolerance (1e-8 for the conic
    and for fallback rows, 1e-6 otherwise).
    """
    grid_def = DEFAULT_GRID if grid == "default" else QUICK_GRID
    config = {"subcommand": "validate", "grid": grid, "rel_tol": rel_tol,
              "format": fmt}
    rows = []
    failures = []
    with _numeric_failures_exit_3():
        for shape in SHAPE_NAMES:
            for n in grid_def["n"]:
                for ratio in grid_def["ratio"]:
                    for length in grid_def["length"]:
                        for q in grid_def["flow_rate"]:
                            row, ok = _validate_row(shape, n, ratio, length,
                                                    q, rel_tol)
                            rows.append(row)
                            if not ok:
                                failures.append(row)
    _emit(fmt, output, config, VALIDATE_COLUMNS, rows)
    if failures:
        click.echo(
            f"validate: {len(failures)} of {len(rows)} grid points exceeded "
            "their tolerance",
            err=True,
        )
        sys.exit(3)


def _validate_row(shape, n, ratio, length, q, rel_tol):
    fluid = PowerLawFluid(consistency=1.0, index=n)
    spec = TubeSpec(shape=TubeShape(shape), r_min=1.0, r_max=ratio,
                    length=length)
    result = solve_pressure_drop(fluid, spec, q, validate=True,
                                 oracle_rel_tol=rel_tol)
    if result.method == METHOD_FALLBACK:
        # Judge fallback rows against an independently configured,
        # tighter oracle run.
        result = solve_pressure_drop(fluid, spec, q, validate=True,
                                     oracle_rel_tol=ORACLE_TIGHT)
        tol = TOL_FALLBACK
    elif shape == TubeShape.CONIC.value:
        tol = TOL_CONIC
    else:
        tol = TOL_DEFAULT
    row = {
        "shape": shape, "n": n, "C": 1.0, "r_min": 1.0, "r_max": ratio,
        "length": length, "Q": q, "P_analytic": result.pressure_drop,
        "P_numeric": result.oracle_value, "rel_err": result.rel_error,
        "method": result.method, "branch": result.branch,
    }
    return row, result.rel_error <= tol


@main.command()
@_geometry_options
@click.option("--samples", type=click.IntRange(min=2), default=101,
              show_default=True)
@_output_options
def profile(shape, rmin, rmax, length, samples, fmt, output):
    """Sample the tube radius along the axis as (x, r) pairs."""
    try:
        spec = TubeSpec(shape=TubeShape(shape), r_min=rmin, r_max=rmax,
                        length=length)
        xs, rs = sample_profile(spec, samples)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    config = {"subcommand": "profile", "shape": shape, "r_min": rmin,
              "r_max": rmax, "length": length, "samples": samples,
              "format": fmt}
    rows = [{"x": float(x), "r": float(r)} for x, r in zip(xs, rs)]
    _emit(fmt, output, config, PROFILE_COLUMNS, rows)


@main.command()
@_fluid_options
@click.option("--gamma-min", type=float, default=1e-2, show_default=True,
              help="Lowest strain rate (1/s).")
@click.option("--gamma-max", type=float, default=1e3, show_default=True,
              help="Highest strain rate (1/s).")
@click.option("--samples", type=click.IntRange(min=2), default=61,
              show_default=True)
@_output_options
def rheology(n, consistency, gamma_min, gamma_max, samples, fmt, output):
    """Sample the fluid model on a log grid of strain rates."""
    if not 0 < gamma_min < gamma_max:
        raise click.UsageError("require 0 < --gamma-min < --gamma-max")
    try:
        fluid = PowerLawFluid(consistency=consistency, index=n)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    config = {"subcommand": "rheology", "n": n, "consistency": consistency,
              "gamma_min": gamma_min, "gamma_max": gamma_max,
              "samples": samples, "format": fmt}
    rows = []
    for rate in np.geomspace(gamma_min, gamma_max, samples):
        rate = float(rate)
        visc = apparent_viscosity(fluid, rate)
        rows.append({"strain_rate": rate, "viscosity": visc,
                     "stress": visc * rate})
    _emit(fmt, output, config, RHEOLOGY_COLUMNS, rows)


class _numeric_failures_exit_3:
    """Context manager mapping package errors to the CLI exit contract:
    numerical failures exit 3, remaining domain errors become usage
    errors (exit 2)."""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            return False
        if issubclass(exc_type, (ConvergenceError, EvaluationError)):
            click.echo(f"numerical failure: {exc}", err=True)
            sys.exit(3)
        if issubclass(exc_type, CdtubeError):
            raise click.UsageError(str(exc))
        return False


if __name__ == "__main__":
    main()

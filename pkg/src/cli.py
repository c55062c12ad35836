"""
Command-line front end.

    sumproduct compute energy --p 7 --set 1,2,4        -> 15
    sumproduct verify --check EP_INEQ --family small-random --seed 7
    sumproduct report reports.jsonl --out-dir report/

Exit codes: 0 success, 1 an assert_exact check failed, 2 malformed input.
"""

import json
import os
import random
import sys
from dataclasses import replace
from functools import wraps
from typing import Any, Callable, Dict, List, Optional, Sequence

import pandas as pd
import rich_click as click
import yaml
from rich.console import Console
from rich.table import Table

from .checks import REGISTRY, native_mode
from .energy import additive_energy, higher_energy_Ek, multiplicative_energy, oracle_count, tsum_Tk
from .families import GENERATORS
from .fourier import audit_identities, dft, max_nontrivial_coefficient
from .incidence import (
    PlaneSet, PointSet3, all_planes, count_incidences, full_space, random_planes, random_points,
    trim_to_equal,
)
from .model import HarnessModel
from .sets import (
    PHI_CATALOG, RationalSet, ResidueSet, combine, combine_rational, expander_statistic,
    four_variable_set, quotient_quadruple_Q, ratio_set_R, ratio_set_rational,
)
from .subgroups import subgroup_of_order
from .types import CheckSpec, Functional, InstanceFamily, OutputFormat, SetOp
from .utils import log
from .utils.analysis import ceiling_violations, summarize, summary_frame, write_summary_csv
from .utils.config import HarnessConfig, load_config
from .utils.plots import plot_reports
from .utils.serialization import (
    parse_int_list, parse_rational_list, read_reports, to_jsonable, write_reports,
)

FORMATS = [f.value for f in OutputFormat]

EXIT_FAILURE = 1
EXIT_MALFORMED = 2


def _abort(exc: Exception):
    Console(stderr=True).print(f"[red]Error:[/red] {exc}", highlight=False)
    sys.exit(EXIT_MALFORMED)


def _config(ctx: click.Context) -> HarnessConfig:
    return ctx.obj["config"]


# =============================================================================
# Output helpers
# =============================================================================

def _rows(value: Any) -> List[Dict[str, Any]]:
    if isinstance(value, (ResidueSet, RationalSet)):
        return [{"member": m} for m in str(value).split(",") if m]
    if isinstance(value, list):
        return value
    if isinstance(value, dict):
        return [{"key": k, "value": v} for k, v in value.items()]
    return [{"value": value}]


def _bare(value: Any) -> str:
    if isinstance(value, list):
        return "\n".join("\t".join(str(v) for v in row.values()) for row in value)
    if isinstance(value, dict):
        return json.dumps(to_jsonable(value), sort_keys=True)
    return str(value)


def emit(command: str, value: Any, fmt: Optional[str]):
    """Print a computed value: bare by default, or as json / csv / a rich table."""
    if fmt is None:
        click.echo(_bare(value))
    elif fmt == OutputFormat.JSON:
        click.echo(json.dumps({"command": command, "value": to_jsonable(value, big_ints_as_strings=True)},
                              sort_keys=True))
    elif fmt == OutputFormat.CSV:
        frame = pd.DataFrame([{k: to_jsonable(v) for k, v in row.items()} for row in _rows(value)])
        click.echo(frame.to_csv(index=False), nl=False)
    else:
        rows = _rows(value)
        table = Table(title=command)
        columns = list(rows[0].keys()) if rows else ["value"]
        for column in columns:
            table.add_column(column)
        for row in rows:
            table.add_row(*(str(to_jsonable(row[c])) for c in columns))
        Console().print(table)


def _residue_set(p: int, text: str, field: str = "set") -> ResidueSet:
    return ResidueSet.of(p, parse_int_list(field, text))


def _rational_set(text: str, field: str = "set") -> RationalSet:
    return RationalSet.of(parse_rational_list(field, text))


def _operand(p: Optional[int], text: str, field: str = "set"):
    """A residue set when --p is given, otherwise an exact rational set."""
    if p is None:
        return _rational_set(text, field)
    return _residue_set(p, text, field)


def _guarded(fn: Callable[..., None]) -> Callable[..., None]:
    """Map engine and validation errors to exit 2."""
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValueError as exc:
            _abort(exc)
    return wrapper


p_option = click.option("--p", "p", type=int, default=None,
                        help="Prime modulus. Without it sets are exact rationals.")
set_option = click.option("--set", "set_", required=True, help="Set literal, e.g. 1,2,4 or 1/2,3.")
format_option = click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
                             help="Output format. The bare value is printed when omitted.")


# =============================================================================
# Command group
# =============================================================================

@click.group()
@click.option("--config", "config_path", default=None, help="YAML configuration file.")
@click.option("--c-star", default=None, help="Absolute constant C_* as an exact rational.")
@click.option("--tolerance", type=float, default=None, help="Float identity tolerance.")
@click.option("--moment-tolerance", type=float, default=None, help="Spectral moment tolerance.")
@click.option("--parallelism", type=int, default=None, help="Worker processes for sweeps.")
@click.option("--timings", is_flag=True, default=False, help="Record elapsed_ms in reports.")
@click.option("--log", "log_to_file", is_flag=True, default=False, help="Also write a log file under logs/.")
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR.")
@click.pass_context
def cli(ctx: click.Context, config_path, c_star, tolerance, moment_tolerance, parallelism,
        timings, log_to_file, log_level):
    """Exact sum-product computations and theorem checks."""
    try:
        config = load_config(config_path).with_overrides(
            c_star=c_star,
            identity_tolerance=tolerance,
            moment_tolerance=moment_tolerance,
            parallelism=parallelism,
            timings=True if timings else None,
            log_to_file=True if log_to_file else None,
            log_level=log_level.upper() if log_level else None,
        )
    except ValueError as exc:
        _abort(exc)
    log.setup_logging(log_level=log.level_from_name(config.log_level), to_file=config.log_to_file)
    ctx.ensure_object(dict)
    ctx.obj["config"] = config


# =============================================================================
# compute
# =============================================================================

@cli.group()
def compute():
    """Compute one quantity exactly."""


@compute.command()
@p_option
@set_option
@click.option("--set2", default=None, help="Second operand; defaults to the first.")
@click.option("--op", type=click.Choice([op.value for op in SetOp]), default=SetOp.SUM.value)
@format_option
@_guarded
def sumset(p, set_, set2, op, fmt):
    """A op B for op in sum, difference, product, quotient."""
    A = _operand(p, set_)
    B = _operand(p, set2, "set2") if set2 is not None else A
    value = combine(A, B, SetOp(op)) if p is not None else combine_rational(A, B, SetOp(op))
    emit("sumset", value, fmt)


@compute.command()
@p_option
@set_option
@click.option("--set2", default=None, help="Second set for the mixed energy.")
@click.option("--multiplicative", is_flag=True, default=False, help="E× instead of E+.")
@format_option
@_guarded
def energy(p, set_, set2, multiplicative, fmt):
    """Additive (or multiplicative) energy."""
    A = _operand(p, set_)
    B = _operand(p, set2, "set2") if set2 is not None else None
    value = multiplicative_energy(A, B) if multiplicative else additive_energy(A, B)
    emit("energy", value, fmt)


@compute.command()
@p_option
@set_option
@click.option("--k", type=int, required=True)
@format_option
@_guarded
def tk(p, set_, k, fmt):
    """T_k: 2k-tuples with equal k-fold sums."""
    emit("tk", tsum_Tk(_operand(p, set_), k), fmt)


@compute.command()
@p_option
@set_option
@click.option("--k", type=int, required=True)
@format_option
@_guarded
def ek(p, set_, k, fmt):
    """E_k: the k-th moment of r_{A-A}."""
    emit("ek", higher_energy_Ek(_operand(p, set_), k), fmt)


@compute.command("dft")
@click.option("--p", "p", type=int, required=True)
@set_option
@format_option
@_guarded
def dft_command(p, set_, fmt):
    """Fourier coefficients of the indicator of A."""
    spectrum = dft(_residue_set(p, set_))
    rows = [
        {"xi": xi, "re": c.real, "im": c.imag, "abs": abs(c)}
        for xi, c in enumerate(spectrum.coefficients)
    ]
    emit("dft", rows, fmt)


@compute.command()
@click.option("--p", "p", type=int, required=True)
@set_option
@format_option
@_guarded
def maxcoeff(p, set_, fmt):
    """max over xi != 0 of |A^(xi)|."""
    emit("maxcoeff", max_nontrivial_coefficient(_residue_set(p, set_)), fmt)


@compute.command()
@click.option("--p", "p", type=int, required=True)
@set_option
@click.option("--set2", default=None, help="Second set for the convolution identities; defaults to the first.")
@click.option("--k", type=int, default=2, help="Moment checked against the exact T_k.")
@format_option
@click.pass_context
@_guarded
def fourier(ctx, p, set_, set2, k, fmt):
    """Fourier identity residuals against the configured tolerances. Exits 1 when one is exceeded."""
    config = _config(ctx)
    A = _residue_set(p, set_)
    B = _residue_set(p, set2, "set2") if set2 is not None else None
    audit = audit_identities(A, B, k, config.identity_tolerance, config.moment_tolerance)
    emit("fourier", audit.rows(), fmt)
    if not audit.passed:
        log.get_logger().warning(f"Fourier identities exceeded tolerance: {', '.join(audit.failures)}")
        sys.exit(EXIT_FAILURE)


@compute.command()
@p_option
@set_option
@click.option("--functional", type=click.Choice([f.value for f in Functional]), required=True)
@click.option("--k", type=int, default=2, help="k for Tk and Ek.")
@format_option
@click.pass_context
@_guarded
def oracle(ctx, p, set_, functional, k, fmt):
    """Fast count against raw tuple enumeration, within the configured oracle budget. Exits 1 on disagreement."""
    A = _operand(p, set_)
    functional = Functional(functional)
    fast = {
        Functional.ADDITIVE_ENERGY: lambda: additive_energy(A),
        Functional.MULTIPLICATIVE_ENERGY: lambda: multiplicative_energy(A),
        Functional.TK: lambda: tsum_Tk(A, k),
        Functional.EK: lambda: higher_energy_Ek(A, k),
    }[functional]()
    brute = oracle_count(A, functional, k, budget=_config(ctx).oracle_budget)
    emit("oracle", {"fast": fast, "oracle": brute, "agree": fast == brute}, fmt)
    if fast != brute:
        sys.exit(EXIT_FAILURE)


@compute.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--order", type=int, required=True)
@format_option
@_guarded
def subgroup(p, order, fmt):
    """The multiplicative subgroup of the given order."""
    emit("subgroup", subgroup_of_order(p, order).members, fmt)


@compute.command()
@p_option
@set_option
@format_option
@_guarded
def rset(p, set_, fmt):
    """R[A] = {(a1 - a) / (a2 - a)}."""
    A = _operand(p, set_)
    emit("rset", ratio_set_R(A) if p is not None else ratio_set_rational(A), fmt)


@compute.command()
@p_option
@set_option
@format_option
@_guarded
def qset(p, set_, fmt):
    """Q[A] = {(a1 - a2) / (a3 - a4)}."""
    A = _operand(p, set_)
    if p is not None:
        value = quotient_quadruple_Q(A)
    else:
        differences = combine_rational(A, A, SetOp.DIFFERENCE)
        value = combine_rational(differences, differences, SetOp.QUOTIENT)
    emit("qset", value, fmt)


def _tuples(field: str, text: str, width: int) -> List[tuple]:
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        values = parse_int_list(field, chunk)
        if len(values) != width:
            raise click.BadParameter(f"expected {width} coordinates, got {chunk!r}", param_hint=f"--{field}")
        out.append(tuple(values))
    return out


@compute.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--points", default=None, help="Points as x,y,z;x,y,z;...")
@click.option("--planes", default=None, help="Planes a,b,c,d (ax+by+cz=d) separated by ';'.")
@click.option("--full", is_flag=True, default=False, help="All of F_p^3 against all planes.")
@click.option("--size", type=int, default=None, help="Random points and planes of this size.")
@click.option("--seed", type=int, default=7)
@format_option
@_guarded
def incidence(p, points, planes, full, size, seed, fmt):
    """Point-plane incidences in F_p^3."""
    if full:
        P, Pi = full_space(p), all_planes(p)
    elif size is not None:
        rng = random.Random(f"incidences:{seed}")
        P, Pi = trim_to_equal(random_points(p, size, rng), random_planes(p, size, rng), rng)
    elif points is not None and planes is not None:
        P = PointSet3.of(p, _tuples("points", points, 3))
        Pi = PlaneSet.of(p, _tuples("planes", planes, 4))
    else:
        raise click.UsageError("give --full, --size, or both --points and --planes")
    emit("incidence", count_incidences(P, Pi), fmt)


@compute.command()
@click.option("--n", type=int, default=None, help="Use A = {1, ..., n}.")
@click.option("--set", "set_", default=None, help="Rational set literal instead of --n.")
@click.option("--phi", type=click.Choice(sorted(PHI_CATALOG)), default="identity")
@click.option("--four", is_flag=True, default=False, help="|(A-B)(C-D)/((A-C)(B-D))| with A=B=C=D.")
@format_option
@_guarded
def expander(n, set_, phi, four, fmt):
    """|R[A]|, |R[A] phi(A)| and the growth exponent."""
    if (n is None) == (set_ is None):
        raise click.UsageError("give exactly one of --n and --set")
    A = RationalSet.interval(n) if n is not None else _rational_set(set_)
    if four:
        emit("expander", {"size": len(four_variable_set(A, A, A, A))}, fmt)
        return
    emit("expander", expander_statistic(A, phi).to_json(), fmt)


# =============================================================================
# verify
# =============================================================================

def _fixed_params(pairs: Sequence[str]) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for pair in pairs:
        key, sep, raw = pair.partition("=")
        if not sep or not key:
            raise click.BadParameter(f"expected key=value, got {pair!r}", param_hint="--param")
        try:
            params[key.strip()] = yaml.safe_load(raw)
        except yaml.YAMLError:
            raise click.BadParameter(f"cannot parse value of {key!r}", param_hint="--param") from None
    return params


def _family(generator, seed, count, p_min, p_max, set_max, order_max) -> InstanceFamily:
    family = InstanceFamily(generator=generator, seed=seed)
    overrides: Dict[str, Any] = {}
    if count is not None:
        overrides["count"] = count
    if p_min is not None or p_max is not None:
        overrides["p_range"] = (p_min if p_min is not None else family.p_range[0],
                                p_max if p_max is not None else family.p_range[1])
    if set_max is not None:
        overrides["set_range"] = (family.set_range[0], set_max)
    if order_max is not None:
        overrides["order_range"] = (family.order_range[0], order_max)
    return replace(family, **overrides)


@cli.command()
@click.option("--check", "check_ids", multiple=True, help="Check id; repeatable. All checks when omitted.")
@click.option("--family", "generator", type=click.Choice(GENERATORS), default="default")
@click.option("--seed", type=int, default=7)
@click.option("--count", type=int, default=None, help="Instances per check.")
@click.option("--p-min", type=int, default=None)
@click.option("--p-max", type=int, default=None)
@click.option("--set-max", type=int, default=None)
@click.option("--order-max", type=int, default=None)
@click.option("--param", "fixed", multiple=True, help="Fixed parameter key=value (YAML value); repeatable.")
@click.option("--output", default=None, help="Write JSON-lines reports here instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default=OutputFormat.JSON.value,
              help="json streams reports; csv and table print the sweep summary.")
@click.pass_context
def verify(ctx, check_ids, generator, seed, count, p_min, p_max, set_max, order_max, fixed, output, fmt):
    """Run theorem checks over an instance family."""
    config = _config(ctx)
    try:
        params = _fixed_params(fixed)
        specs = [
            CheckSpec(check_id, dict(params), native_mode(check_id))
            for check_id in (check_ids or list(REGISTRY))
        ]
        family = _family(generator, seed, count, p_min, p_max, set_max, order_max)
        model = HarnessModel(family, specs, config)
        reports = model.run()
    except ValueError as exc:
        _abort(exc)

    if output:
        with open(output, "w", encoding="utf-8") as handle:
            write_reports(reports, handle)
    elif fmt == OutputFormat.JSON:
        write_reports(reports, sys.stdout)

    summaries = model.summaries()
    if fmt == OutputFormat.CSV:
        click.echo(summary_frame(summaries).to_csv(index=False), nl=False)
    elif fmt == OutputFormat.TABLE:
        _print_summary(summary_frame(summaries), "verify")

    for key, indices in ceiling_violations(summaries).items():
        log.get_logger().warning(f"{key}: implied constant above the sanity ceiling at reports {indices}")
    log.log_session_end()
    if model.has_failures():
        ctx.exit(EXIT_FAILURE)


# =============================================================================
# report
# =============================================================================

def _print_summary(frame: pd.DataFrame, title: str):
    table = Table(title=title)
    for column in frame.columns:
        table.add_column(column)
    for row in frame.itertuples(index=False):
        table.add_row(*("" if pd.isna(v) else str(v) for v in row))
    Console().print(table)


@cli.command()
@click.argument("reports_file")
@click.option("--out-dir", default="report", help="Directory for summary.csv and plots.")
@click.pass_context
def report(ctx, reports_file, out_dir):
    """Summarize a JSON-lines report file into a CSV and scatter plots."""
    try:
        records = read_reports(reports_file)
    except ValueError as exc:
        _abort(exc)

    os.makedirs(out_dir, exist_ok=True)
    frame = summary_frame(summarize(records, _config(ctx)))
    write_summary_csv(frame, os.path.join(out_dir, "summary.csv"))
    plots = plot_reports(records, out_dir)

    for check_id in frame["check_id"].drop_duplicates():
        _print_summary(frame[frame["check_id"] == check_id], check_id)
    click.echo(f"{len(records)} reports, {len(plots)} plots written to {out_dir}", err=True)


def main():
    cli(obj={})


if __name__ == "__main__":
    main()

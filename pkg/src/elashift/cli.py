"""Command-line interface.

Subcommands mirror the library modules: `suite eval`, `doe sample`, `embed`,
`features`, `run` and `report {heatmap,violin}`.  The `run` command exits
with code 2 on configuration errors and 3 on I/O failures.
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import click
import numpy as np

from . import doe, report, runner
from .ela.features import compute_all
from .ela.schema import FEATURE_NAMES, Dataset
from .embed import project, sample_embedding
from .shift import format_value
from .suite import evaluate, make_instance


def _write_matrix(path, matrix):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        for row in matrix:
            writer.writerow([repr(float(v)) for v in row])


def _read_matrix(path):
    return np.loadtxt(path, delimiter=",", ndmin=2)


@click.group()
def main():
    """Landscape-feature robustness under random Gaussian embeddings."""


@main.group()
def suite():
    """Benchmark suite commands."""


@suite.command("eval")
@click.option("--fid", type=int, required=True, help="function id in 1..24")
@click.option("--iid", type=int, required=True, help="instance id >= 0")
@click.option("--dim", type=int, required=True, help="dimension >= 2")
@click.option("--point", required=True, help="comma-separated coordinates")
def suite_eval(fid, iid, dim, point):
    """Print the objective value at one point in full precision."""
    try:
        x = np.array([float(tok) for tok in point.split(",")])
        instance = make_instance(fid, iid, dim)
        click.echo(repr(evaluate(instance, x)))
    except ValueError as exc:
        raise click.ClickException(str(exc))


@main.group("doe")
def doe_group():
    """Design-of-experiments commands."""


@doe_group.command("sample")
@click.option("--size", type=int, required=True, help="number of sample points")
@click.option("--dim", type=int, required=True, help="dimension")
@click.option("--seed", type=int, required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def doe_sample(size, dim, seed, out_path):
    """Write a Latin-hypercube design as CSV (one row per point)."""
    try:
        design = doe.lhs(size, dim, seed)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _write_matrix(out_path, design.points)
    click.echo(f"wrote {size} x {dim} design to {out_path}")


@main.command("embed")
@click.option("--dim-in", type=int, required=True, help="ambient dimension D")
@click.option("--dim-out", type=int, required=True, help="reduced dimension d")
@click.option("--seed", type=int, required=True)
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def embed_cmd(dim_in, dim_out, seed, in_path, out_path):
    """Project a points CSV through a seeded Gaussian embedding."""
    try:
        embedding = sample_embedding(dim_out, dim_in, seed)
        points = _read_matrix(in_path)
        projected = project(embedding, points)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _write_matrix(out_path, projected)
    click.echo(f"projected {points.shape[0]} points from D={dim_in} to d={dim_out}")


@main.command("features")
@click.option("--in", "points_path", type=click.Path(exists=True), required=True)
@click.option("--obj", "objectives_path", type=click.Path(exists=True), required=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def features_cmd(points_path, objectives_path, seed, out_path):
    """Compute the 61 features of one dataset; output one row per feature."""
    try:
        points = _read_matrix(points_path)
        objectives = np.loadtxt(objectives_path, delimiter=",").reshape(-1)
        fv = compute_all(Dataset(points, objectives), seed=seed)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    with open(out_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["feature_name", "value", "status"])
        for name in FEATURE_NAMES:
            value = format_value(fv.values[name]) if fv.is_ok(name) else ""
            writer.writerow([name, value, fv.status[name]])
    click.echo(f"wrote {len(FEATURE_NAMES)} features to {out_path}")


@main.command("run")
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
@click.option("--resume", is_flag=True, default=False)
@click.option("--workers", type=int, default=1, show_default=True)
def run_cmd(config_path, resume, workers):
    """Execute the experiment matrix described by a config file."""
    try:
        config = runner.load_config(config_path)
        features_path, shifts_path = runner.execute(config, workers=workers,
                                                    resume=resume)
    except runner.ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except OSError as exc:
        click.echo(f"i/o error: {exc}", err=True)
        sys.exit(3)
    click.echo(f"wrote {features_path} and {shifts_path}")


@main.group("report")
def report_group():
    """Render shift CSVs into tables and figures."""


@report_group.command("heatmap")
@click.option("--in", "shifts_path", type=click.Path(exists=True), required=True)
@click.option("--size", type=int, required=True, help="sample size S")
@click.option("--dim", type=int, required=True, help="reduced dimension d")
@click.option("--out", "out_dir", type=click.Path(), required=True)
def report_heatmap(shifts_path, size, dim, out_dir):
    """Median-|delta| heatmap for one (S, d) slice."""
    paths = report.emit_heatmap(shifts_path, size, dim, out_dir)
    for kind, path in paths.items():
        click.echo(f"{kind}: {path}")


@report_group.command("violin")
@click.option("--in", "shifts_path", type=click.Path(exists=True), required=True)
@click.option("--fid", type=int, required=True, help="function id")
@click.option("--size", type=int, required=True, help="sample size S")
@click.option("--dim", type=int, required=True, help="reduced dimension d")
@click.option("--out", "out_dir", type=click.Path(), required=True)
def report_violin(shifts_path, fid, size, dim, out_dir):
    """Per-feature shift distributions for one (function, S, d) slice."""
    try:
        paths = report.emit_violin(shifts_path, fid, size, dim, out_dir)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    for kind, path in paths.items():
        click.echo(f"{kind}: {path}")


if __name__ == "__main__":
    main()

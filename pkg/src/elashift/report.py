"""Presentation artifacts: per-function x feature median-|delta| heatmap
tables and per-function violin distribution tables, each emitted as a CSV
and a static SVG figure.

Rendering is deterministic: a fixed SVG hash salt and no embedded timestamps,
so re-emitting the same table reproduces the file byte for byte.  Display
clipping of violins to [-1, 1] never touches the stored data.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.colors import BoundaryNorm
from matplotlib.patches import Rectangle

from .ela.schema import FEATURE_NAMES
from .shift import ShiftRecord, aggregate_heatmap, aggregate_violin, shift_record_from_row

SVG_HASH_SALT = "elashift"
COLOR_BINS = np.logspace(-3.0, 1.0, 9)  # median |delta| spans orders of magnitude
VIOLIN_CLIP = 1.0


@dataclass(frozen=True)
class HeatmapTable:
    sample_size: int
    reduced_dim: int
    function_ids: tuple
    feature_names: tuple
    values: np.ndarray  # (n_functions, 61), NaN marks a missing cell

    def __eq__(self, other):
        return (isinstance(other, HeatmapTable)
                and self.sample_size == other.sample_size
                and self.reduced_dim == other.reduced_dim
                and self.function_ids == other.function_ids
                and self.feature_names == other.feature_names
                and np.array_equal(self.values, other.values, equal_nan=True))


@dataclass(frozen=True)
class ViolinTable:
    function_id: int
    sample_size: int
    reduced_dim: int
    samples: dict  # feature name -> np.ndarray of raw deltas

    def __eq__(self, other):
        return (isinstance(other, ViolinTable)
                and (self.function_id, self.sample_size, self.reduced_dim)
                == (other.function_id, other.sample_size, other.reduced_dim)
                and set(self.samples) == set(other.samples)
                and all(np.array_equal(self.samples[k], other.samples[k])
                        for k in self.samples))


def load_shift_records(path) -> list:
    with open(path, newline="") as handle:
        return [shift_record_from_row(row) for row in csv.DictReader(handle)]


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


def build_heatmap(shifts_path, sample_size: int, reduced_dim: int) -> HeatmapTable:
    records = [r for r in load_shift_records(shifts_path)
               if r.sample_size == sample_size and r.reduced_dim == reduced_dim]
    cells = aggregate_heatmap(records)
    function_ids = tuple(sorted({r.function_id for r in records}))
    values = np.full((len(function_ids), len(FEATURE_NAMES)), np.nan)
    for (fid, name), median in cells.items():
        values[function_ids.index(fid), FEATURE_NAMES.index(name)] = median
    return HeatmapTable(sample_size=sample_size, reduced_dim=reduced_dim,
                        function_ids=function_ids, feature_names=FEATURE_NAMES,
                        values=values)


def build_violin(shifts_path, function_id: int, sample_size: int,
                 reduced_dim: int) -> ViolinTable:
    records = load_shift_records(shifts_path)
    known = {r.function_id for r in records}
    if known and function_id not in known:
        raise ValueError(f"function_id {function_id} not present in {shifts_path}")
    samples = aggregate_violin(records, function_id, reduced_dim, sample_size)
    return ViolinTable(function_id=function_id, sample_size=sample_size,
                       reduced_dim=reduced_dim,
                       samples={k: np.asarray(v, dtype=float)
                                for k, v in samples.items()})


def write_heatmap_csv(table: HeatmapTable, path):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["function_id", *table.feature_names])
        for i, fid in enumerate(table.function_ids):
            row = [str(fid)]
            for v in table.values[i]:
                row.append("" if np.isnan(v) else repr(float(v)))
            writer.writerow(row)


def read_heatmap_csv(path, sample_size: int, reduced_dim: int) -> HeatmapTable:
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    feature_names = tuple(rows[0][1:])
    function_ids = tuple(int(r[0]) for r in rows[1:])
    values = np.full((len(function_ids), len(feature_names)), np.nan)
    for i, r in enumerate(rows[1:]):
        for j, cell in enumerate(r[1:]):
            if cell != "":
                values[i, j] = float(cell)
    return HeatmapTable(sample_size=sample_size, reduced_dim=reduced_dim,
                        function_ids=function_ids, feature_names=feature_names,
                        values=values)


def write_violin_csv(table: ViolinTable, path):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["function_id", "sample_size", "reduced_dim",
                         "feature_name", "delta"])
        for name in FEATURE_NAMES:
            for delta in table.samples.get(name, ()):
                writer.writerow([table.function_id, table.sample_size,
                                 table.reduced_dim, name, repr(float(delta))])


def read_violin_csv(path) -> ViolinTable:
    samples = {name: [] for name in FEATURE_NAMES}
    meta = None
    with open(path, newline="") as handle:
        for row in csv.DictReader(handle):
            meta = (int(row["function_id"]), int(row["sample_size"]),
                    int(row["reduced_dim"]))
            samples[row["feature_name"]].append(float(row["delta"]))
    if meta is None:
        raise ValueError(f"violin CSV {path} holds no samples")
    return ViolinTable(function_id=meta[0], sample_size=meta[1], reduced_dim=meta[2],
                       samples={k: np.asarray(v) for k, v in samples.items()})


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------


def _save_svg(fig, path):
    with plt.rc_context({"svg.hashsalt": SVG_HASH_SALT}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _heatmap_svg(table: HeatmapTable, path):
    n_rows, n_cols = table.values.shape
    fig, ax = plt.subplots(figsize=(0.22 * n_cols + 2.5, 0.4 * n_rows + 3.2))
    cmap = matplotlib.colormaps["viridis"]
    norm = BoundaryNorm(COLOR_BINS, cmap.N, clip=True)
    for i in range(n_rows):
        for j in range(n_cols):
            value = table.values[i, j]
            if np.isnan(value):
                patch = Rectangle((j, i), 1, 1, facecolor="white",
                                  edgecolor="0.6", hatch="///", linewidth=0.3)
                patch.set_gid(f"hm-miss-{i}-{j}")
            else:
                patch = Rectangle((j, i), 1, 1, facecolor=cmap(norm(value)),
                                  edgecolor="white", linewidth=0.3)
                patch.set_gid(f"hm-cell-{i}-{j}")
            ax.add_patch(patch)
    ax.set_xlim(0, n_cols)
    ax.set_ylim(n_rows, 0)
    ax.set_xticks(np.arange(n_cols) + 0.5)
    ax.set_xticklabels(table.feature_names, rotation=90, fontsize=5)
    ax.set_yticks(np.arange(n_rows) + 0.5)
    ax.set_yticklabels([f"f{fid}" for fid in table.function_ids], fontsize=7)
    ax.set_title(
        f"median |delta| per function and feature "
        f"(S={table.sample_size}, d={table.reduced_dim}); hatched = missing",
        fontsize=9,
    )
    mappable = plt.cm.ScalarMappable(norm=norm, cmap=cmap)
    fig.colorbar(mappable, ax=ax, fraction=0.02, pad=0.01,
                 label="median |delta| (log-spaced bins)")
    fig.tight_layout()
    _save_svg(fig, path)


def _silverman_bandwidth(samples: np.ndarray) -> float:
    sd = float(np.std(samples, ddof=1)) if len(samples) > 1 else 0.0
    q75, q25 = np.percentile(samples, [75, 25])
    h = 0.9 * min(sd, (q75 - q25) / 1.34) * len(samples) ** (-0.2)
    if h <= 0.0:
        h = 0.9 * sd * len(samples) ** (-0.2)
    return h


def _violin_svg(table: ViolinTable, path):
    present = [name for name in FEATURE_NAMES if len(table.samples.get(name, ())) > 0]
    omitted = [name for name in FEATURE_NAMES if name not in present]
    fig, ax = plt.subplots(figsize=(0.25 * max(len(present), 4) + 2.0, 4.8))
    for idx, name in enumerate(present):
        clipped = np.clip(table.samples[name], -VIOLIN_CLIP, VIOLIN_CLIP)
        h = _silverman_bandwidth(clipped)
        if len(clipped) >= 2 and h > 0.0:
            grid = np.linspace(clipped.min() - 3 * h, clipped.max() + 3 * h, 128)
            grid = np.clip(grid, -1.1, 1.1)
            dens = np.exp(-0.5 * ((grid[:, None] - clipped[None, :]) / h) ** 2).sum(axis=1)
            width = 0.42 * dens / dens.max()
            poly = ax.fill_betweenx(grid, idx - width, idx + width,
                                    color="tab:blue", alpha=0.7, linewidth=0.4)
            poly.set_gid(f"violin-{idx}")
        else:
            marker = ax.plot([idx], [clipped[0]], marker="o", markersize=3,
                             color="tab:blue")[0]
            marker.set_gid(f"violin-{idx}")
    zero_line = ax.axhline(0.0, linestyle="--", color="0.3", linewidth=0.8)
    zero_line.set_gid("zero-reference")
    ax.set_xticks(np.arange(len(present)))
    ax.set_xticklabels(present, rotation=90, fontsize=5)
    ax.set_ylim(-1.05, 1.05)
    ax.set_ylabel("normalized feature shift (display clipped to [-1, 1])")
    title = (f"shift distributions, f{table.function_id} "
             f"(S={table.sample_size}, d={table.reduced_dim})")
    if omitted:
        title += f"\nomitted (no samples): {len(omitted)} features"
    ax.set_title(title, fontsize=9)
    fig.tight_layout()
    _save_svg(fig, path)


def emit_svg(table, path):
    """Render a heatmap or violin table to a self-contained SVG file."""
    path = Path(path)
    if isinstance(table, HeatmapTable):
        if table.values.size == 0:
            raise ValueError("cannot render an empty heatmap table")
        _heatmap_svg(table, path)
    elif isinstance(table, ViolinTable):
        if all(len(v) == 0 for v in table.samples.values()):
            raise ValueError("cannot render an empty violin table")
        _violin_svg(table, path)
    else:
        raise TypeError(f"unsupported table type {type(table)!r}")


# ---------------------------------------------------------------------------
# batch entry points used by the CLI
# ---------------------------------------------------------------------------


def emit_heatmap(shifts_path, sample_size: int, reduced_dim: int, out_dir) -> dict:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    table = build_heatmap(shifts_path, sample_size, reduced_dim)
    stem = f"heatmap_S{sample_size}_d{reduced_dim}"
    csv_path = out_dir / f"{stem}.csv"
    write_heatmap_csv(table, csv_path)
    paths = {"csv": csv_path}
    if table.values.size == 0:
        warnings.warn(f"empty slice S={sample_size}, d={reduced_dim}: no SVG emitted")
    else:
        svg_path = out_dir / f"{stem}.svg"
        emit_svg(table, svg_path)
        paths["svg"] = svg_path
    return paths


def emit_violin(shifts_path, function_id: int, sample_size: int, reduced_dim: int,
                out_dir) -> dict:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    table = build_violin(shifts_path, function_id, sample_size, reduced_dim)
    stem = f"violin_f{function_id}_S{sample_size}_d{reduced_dim}"
    csv_path = out_dir / f"{stem}.csv"
    write_violin_csv(table, csv_path)
    paths = {"csv": csv_path}
    if all(len(v) == 0 for v in table.samples.values()):
        warnings.warn(
            f"empty slice f{function_id}, S={sample_size}, d={reduced_dim}: no SVG emitted"
        )
    else:
        svg_path = out_dir / f"{stem}.svg"
        emit_svg(table, svg_path)
        paths["svg"] = svg_path
    return paths

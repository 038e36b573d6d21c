"""Experiment orchestration: plans the (function x instance x design x
embedding) matrix, executes cells in parallel with per-cell derived seeds,
and persists resumable, canonically sorted CSV results.

A unit of work is one reference cell together with all of its projected
cells; units are independent, so output is byte-identical for any worker
count.  Completed units are kept as part files under <output_dir>/parts and
skipped on resume.
"""

from __future__ import annotations

import csv
import hashlib
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .doe import lhs
from .ela.features import compute_all
from .ela.schema import FEATURE_NAMES, Dataset
from .embed import project, sample_embedding
from .seeds import mix64
from .shift import SHIFT_CSV_COLUMNS, format_value, shift_record_row, shift_records
from .suite import evaluate_batch, make_instance

FEATURES_CSV_COLUMNS = (
    "function_id", "instance_id", "design_id", "sample_size", "reduced_dim",
    "embedding_id", "feature_name", "value", "status",
)

REFERENCE_MARKER = -1
_FEATURE_INDEX = {name: i for i, name in enumerate(FEATURE_NAMES)}


class ConfigError(ValueError):
    """An ExperimentConfig field violates its invariant."""


_CONFIG_FIELDS = (
    "dimension", "function_ids", "instance_ids", "sample_sizes",
    "designs_per_size", "reduced_dims", "embeddings_per_dim", "master_seed",
    "output_dir", "ela_seed_policy",
)


@dataclass(frozen=True)
class ExperimentConfig:
    dimension: int
    function_ids: tuple
    instance_ids: tuple
    sample_sizes: tuple
    designs_per_size: int
    reduced_dims: tuple
    embeddings_per_dim: int
    master_seed: int
    output_dir: str
    ela_seed_policy: str = "derived-per-cell"

    def validate(self):
        if self.dimension < 2:
            raise ConfigError("dimension: must be >= 2")
        for name in ("function_ids", "instance_ids", "sample_sizes", "reduced_dims"):
            if not getattr(self, name):
                raise ConfigError(f"{name}: list must be nonempty")
        for fid in self.function_ids:
            if not 1 <= fid <= 24:
                raise ConfigError(f"function_ids: {fid} outside 1..24")
        for iid in self.instance_ids:
            if iid < 0:
                raise ConfigError(f"instance_ids: {iid} is negative")
        for d in self.reduced_dims:
            if not 1 <= d < self.dimension:
                raise ConfigError(f"reduced_dims: every d must satisfy 1 <= d < D, got {d}")
        for s in self.sample_sizes:
            if s < self.dimension + 2:
                raise ConfigError(f"sample_sizes: every S must be >= D + 2, got {s}")
        if self.designs_per_size < 1:
            raise ConfigError("designs_per_size: must be >= 1")
        if self.embeddings_per_dim < 1:
            raise ConfigError("embeddings_per_dim: must be >= 1")
        if self.ela_seed_policy != "derived-per-cell":
            raise ConfigError("ela_seed_policy: only 'derived-per-cell' is supported")


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key/value config format documented in docs/config.md."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_FIELDS:
            raise ConfigError(f"line {lineno}: unknown field {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate field {key!r}")
        raw[key] = value
    missing = [k for k in _CONFIG_FIELDS if k not in raw and k != "ela_seed_policy"]
    if missing:
        raise ConfigError(f"missing fields: {', '.join(missing)}")

    def int_list(key):
        try:
            return tuple(int(tok) for tok in raw[key].split(","))
        except ValueError:
            raise ConfigError(f"{key}: expected comma-separated integers") from None

    def single_int(key):
        try:
            return int(raw[key])
        except ValueError:
            raise ConfigError(f"{key}: expected an integer") from None

    config = ExperimentConfig(
        dimension=single_int("dimension"),
        function_ids=int_list("function_ids"),
        instance_ids=int_list("instance_ids"),
        sample_sizes=int_list("sample_sizes"),
        designs_per_size=single_int("designs_per_size"),
        reduced_dims=int_list("reduced_dims"),
        embeddings_per_dim=single_int("embeddings_per_dim"),
        master_seed=single_int("master_seed"),
        output_dir=raw["output_dir"],
        ela_seed_policy=raw.get("ela_seed_policy", "derived-per-cell"),
    )
    config.validate()
    return config


def load_config(path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())


def canonical_config_text(config: ExperimentConfig) -> str:
    def fmt(value):
        if isinstance(value, tuple):
            return ",".join(str(v) for v in value)
        return str(value)

    return "".join(f"{k} = {fmt(getattr(config, k))}\n" for k in _CONFIG_FIELDS)


def config_fingerprint(config: ExperimentConfig) -> str:
    return hashlib.sha256(canonical_config_text(config).encode()).hexdigest()


# ---------------------------------------------------------------------------
# seed derivation
# ---------------------------------------------------------------------------


def design_seed(master_seed: int, sample_size: int, design_id: int) -> int:
    return mix64(master_seed, "design", sample_size, design_id)


def embedding_seed(master_seed: int, reduced_dim: int, embedding_id: int) -> int:
    return mix64(master_seed, "embedding", reduced_dim, embedding_id)


def cell_seed(master_seed: int, design_id: int, function_id: int, instance_id: int,
              embedding_id: int, reduced_dim: int, sample_size: int) -> int:
    return mix64(master_seed, "cell", design_id, function_id, instance_id,
                 embedding_id, reduced_dim, sample_size)


# ---------------------------------------------------------------------------
# planning
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunCell:
    sample_size: int
    design_id: int
    function_id: int
    instance_id: int
    reduced_dim: int = REFERENCE_MARKER
    embedding_id: int = REFERENCE_MARKER
    seed: int = field(default=0, compare=False)

    @property
    def is_reference(self) -> bool:
        return self.reduced_dim == REFERENCE_MARKER


def plan(config: ExperimentConfig) -> list:
    """Ordered cell list: each reference cell followed by its projected cells."""
    config.validate()
    cells = []
    for s in config.sample_sizes:
        for l in range(config.designs_per_size):
            for m in config.function_ids:
                for n in config.instance_ids:
                    cells.append(RunCell(
                        sample_size=s, design_id=l, function_id=m, instance_id=n,
                        seed=cell_seed(config.master_seed, l, m, n,
                                       REFERENCE_MARKER, REFERENCE_MARKER, s),
                    ))
                    for d in config.reduced_dims:
                        for k in range(config.embeddings_per_dim):
                            cells.append(RunCell(
                                sample_size=s, design_id=l, function_id=m,
                                instance_id=n, reduced_dim=d, embedding_id=k,
                                seed=cell_seed(config.master_seed, l, m, n, k, d, s),
                            ))
    return cells


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------


def _feature_rows(fv, cell: RunCell) -> list:
    rows = []
    ref = cell.is_reference
    for name in FEATURE_NAMES:
        ok = fv.is_ok(name)
        rows.append({
            "function_id": str(cell.function_id),
            "instance_id": str(cell.instance_id),
            "design_id": str(cell.design_id),
            "sample_size": str(cell.sample_size),
            "reduced_dim": "" if ref else str(cell.reduced_dim),
            "embedding_id": "" if ref else str(cell.embedding_id),
            "feature_name": name,
            "value": format_value(fv.values[name]) if ok else "",
            "status": fv.status[name],
        })
    return rows


def run_unit(config: ExperimentConfig, sample_size: int, design_id: int,
             function_id: int, instance_id: int):
    """Compute one reference cell plus all of its projected cells.

    Returns (feature_rows, shift_rows) as CSV-ready dicts.
    """
    design = lhs(sample_size, config.dimension,
                 seed=design_seed(config.master_seed, sample_size, design_id),
                 design_id=design_id)
    instance = make_instance(function_id, instance_id, config.dimension)
    objectives = evaluate_batch(instance, design.points)

    ref_cell = RunCell(sample_size=sample_size, design_id=design_id,
                       function_id=function_id, instance_id=instance_id,
                       seed=cell_seed(config.master_seed, design_id, function_id,
                                      instance_id, REFERENCE_MARKER,
                                      REFERENCE_MARKER, sample_size))
    reference = compute_all(Dataset(design.points, objectives), seed=ref_cell.seed)
    feature_rows = _feature_rows(reference, ref_cell)
    shift_rows = []

    for d in config.reduced_dims:
        for k in range(config.embeddings_per_dim):
            emb = sample_embedding(d, config.dimension,
                                   seed=embedding_seed(config.master_seed, d, k),
                                   embedding_id=k)
            projected_points = project(emb, design.points)
            cell = RunCell(sample_size=sample_size, design_id=design_id,
                           function_id=function_id, instance_id=instance_id,
                           reduced_dim=d, embedding_id=k,
                           seed=cell_seed(config.master_seed, design_id,
                                          function_id, instance_id, k, d,
                                          sample_size))
            projected = compute_all(Dataset(projected_points, objectives),
                                    seed=cell.seed)
            feature_rows.extend(_feature_rows(projected, cell))
            records = shift_records(
                projected, reference, design_id=design_id,
                function_id=function_id, instance_id=instance_id,
                embedding_id=k, reduced_dim=d, sample_size=sample_size,
            )
            shift_rows.extend(shift_record_row(rec) for rec in records)
    return feature_rows, shift_rows


def _unit_worker(args):
    config, unit = args
    return unit, run_unit(config, *unit)


def _unit_paths(out: Path, unit) -> tuple:
    s, l, m, n = unit
    stem = f"S{s}_l{l}_m{m}_n{n}"
    return out / "parts" / f"{stem}.features.csv", out / "parts" / f"{stem}.shifts.csv"


def _write_csv(path: Path, columns, rows):
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(columns))
        writer.writeheader()
        writer.writerows(rows)
    os.replace(tmp, path)


def _read_csv(path: Path) -> list:
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


def _sort_key(row: dict):
    def num(fieldname):
        return int(row[fieldname]) if row[fieldname] != "" else REFERENCE_MARKER

    return (num("sample_size"), num("design_id"), num("function_id"),
            num("instance_id"), num("reduced_dim"), num("embedding_id"),
            _FEATURE_INDEX[row["feature_name"]])


def execute(config: ExperimentConfig, workers: int = 1, resume: bool = False):
    """Run the full matrix and write features.csv, shifts.csv, fingerprint.txt.

    Output is independent of worker count and execution order; with resume,
    completed units are skipped and the final files are rebuilt from parts.
    """
    config.validate()
    out = Path(config.output_dir)
    (out / "parts").mkdir(parents=True, exist_ok=True)

    fingerprint = config_fingerprint(config)
    fp_path = out / "fingerprint.txt"
    if fp_path.exists():
        stored = fp_path.read_text().strip().splitlines()
        if resume and (not stored or stored[0] != fingerprint):
            raise ConfigError(
                "fingerprint mismatch: existing output was produced by a "
                "different configuration; refusing to resume"
            )
    fp_path.write_text(fingerprint + "\n" + canonical_config_text(config))

    units = [(s, l, m, n)
             for s in config.sample_sizes
             for l in range(config.designs_per_size)
             for m in config.function_ids
             for n in config.instance_ids]
    pending = units
    if resume:
        pending = [u for u in units
                   if not all(p.exists() for p in _unit_paths(out, u))]

    def persist(unit, result):
        feature_rows, shift_rows = result
        fpath, spath = _unit_paths(out, unit)
        _write_csv(fpath, FEATURES_CSV_COLUMNS, feature_rows)
        _write_csv(spath, SHIFT_CSV_COLUMNS, shift_rows)

    if workers <= 1:
        for unit in pending:
            persist(unit, run_unit(config, *unit))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for unit, result in pool.map(_unit_worker,
                                         ((config, u) for u in pending)):
                persist(unit, result)

    feature_rows, shift_rows = [], []
    for unit in units:
        fpath, spath = _unit_paths(out, unit)
        feature_rows.extend(_read_csv(fpath))
        shift_rows.extend(_read_csv(spath))
    feature_rows.sort(key=_sort_key)
    shift_rows.sort(key=_sort_key)
    _write_csv(out / "features.csv", FEATURES_CSV_COLUMNS, feature_rows)
    _write_csv(out / "shifts.csv", SHIFT_CSV_COLUMNS, shift_rows)
    return out / "features.csv", out / "shifts.csv"


def resume(config: ExperimentConfig, workers: int = 1):
    """Continue a previous execute(); only missing cells are executed."""
    return execute(config, workers=workers, resume=True)

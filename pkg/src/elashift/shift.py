"""Normalized relative feature shift between reference and projected feature
vectors, plus aggregation and robustness classification.

The shift of feature q is delta = (projected - reference) / (|reference| + eps)
with eps = 1e-9; a shift is missing whenever either side is flagged or
non-finite, and missing values are excluded from every aggregate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ela.features import compute_all
from .ela.schema import FEATURE_NAMES, Dataset, FeatureVector
from .seeds import generator, mix64

EPSILON = 1e-9

SHIFT_CSV_COLUMNS = (
    "function_id", "instance_id", "design_id", "sample_size", "reduced_dim",
    "embedding_id", "feature_name", "reference_value", "projected_value", "delta",
)


@dataclass(frozen=True)
class ShiftRecord:
    design_id: int
    function_id: int
    instance_id: int
    embedding_id: int
    reduced_dim: int
    sample_size: int
    feature_name: str
    delta: float | None
    reference_value: float | None
    projected_value: float | None

    @property
    def missing(self) -> bool:
        return self.delta is None


def shift_delta(projected: float, reference: float) -> float:
    return (projected - reference) / (abs(reference) + EPSILON)


def feature_shift(projected: FeatureVector, reference: FeatureVector) -> dict:
    """Per-feature delta keyed by name; None where either side is unusable."""
    for side in (projected, reference):
        side.validate_complete()
    out = {}
    for name in FEATURE_NAMES:
        if projected.is_ok(name) and reference.is_ok(name):
            out[name] = shift_delta(projected.values[name], reference.values[name])
        else:
            out[name] = None
    return out


def shift_records(projected: FeatureVector, reference: FeatureVector, *,
                  design_id: int, function_id: int, instance_id: int,
                  embedding_id: int, reduced_dim: int, sample_size: int) -> list:
    deltas = feature_shift(projected, reference)
    records = []
    for name in FEATURE_NAMES:
        delta = deltas[name]
        records.append(ShiftRecord(
            design_id=design_id, function_id=function_id, instance_id=instance_id,
            embedding_id=embedding_id, reduced_dim=reduced_dim,
            sample_size=sample_size, feature_name=name, delta=delta,
            reference_value=reference.values[name] if reference.is_ok(name) else None,
            projected_value=projected.values[name] if projected.is_ok(name) else None,
        ))
    return records


def aggregate_heatmap(records) -> dict:
    """(function_id, feature_name) -> median |delta| over all (l, n, k);
    cells with no usable record are absent from the result."""
    buckets: dict = {}
    for rec in records:
        if rec.missing:
            continue
        buckets.setdefault((rec.function_id, rec.feature_name), []).append(abs(rec.delta))
    return {key: float(np.median(vals)) for key, vals in buckets.items()}


def aggregate_violin(records, function_id: int, reduced_dim: int,
                     sample_size: int) -> dict:
    """feature_name -> raw delta samples for one (function, d, S) slice.

    Clipping to [-1, 1] is applied only by the plotting path, never here.
    """
    out = {name: [] for name in FEATURE_NAMES}
    for rec in records:
        if rec.missing:
            continue
        if (rec.function_id, rec.reduced_dim, rec.sample_size) != (
                function_id, reduced_dim, sample_size):
            continue
        out[rec.feature_name].append(rec.delta)
    return out


def classify_robustness(records, feature_name: str, threshold: float = 0.1) -> str:
    """'invariant' iff every delta is exactly 0; 'robust' iff the per-d
    median |delta| stays within the threshold for every reduced dimension
    present; otherwise 'sensitive'."""
    deltas_by_dim: dict = {}
    for rec in records:
        if rec.feature_name != feature_name or rec.missing:
            continue
        deltas_by_dim.setdefault(rec.reduced_dim, []).append(rec.delta)
    if not deltas_by_dim:
        raise ValueError(f"no usable records for feature {feature_name!r}")
    all_deltas = [d for vals in deltas_by_dim.values() for d in vals]
    if all(d == 0.0 for d in all_deltas):
        return "invariant"
    if all(np.median(np.abs(vals)) <= threshold for vals in deltas_by_dim.values()):
        return "robust"
    return "sensitive"


def subsample_features(dataset: Dataset, ambient_sample_factor: int, rounds: int,
                       seed: int) -> list:
    """Feature vectors from repeated subsamples of a projected dataset.

    Each round draws factor * d points without replacement (factor is the
    ambient S/D budget ratio, e.g. 100) and computes the full feature vector
    on the subset; row order of the original data is preserved.
    """
    size = ambient_sample_factor * dataset.n_dims
    if size > dataset.n_samples:
        raise ValueError(
            f"subsample of {size} points exceeds the {dataset.n_samples} available"
        )
    out = []
    for rnd in range(rounds):
        rng = generator(mix64(seed, "subsample", rnd))
        idx = np.sort(rng.choice(dataset.n_samples, size=size, replace=False))
        subset = Dataset(dataset.points[idx], dataset.objectives[idx])
        out.append(compute_all(subset, seed=seed))
    return out


def format_value(value) -> str:
    """Round-trip-exact CSV field; empty string encodes a missing value."""
    if value is None:
        return ""
    return repr(float(value))


def shift_record_row(rec: ShiftRecord) -> dict:
    return {
        "function_id": str(rec.function_id),
        "instance_id": str(rec.instance_id),
        "design_id": str(rec.design_id),
        "sample_size": str(rec.sample_size),
        "reduced_dim": str(rec.reduced_dim),
        "embedding_id": str(rec.embedding_id),
        "feature_name": rec.feature_name,
        "reference_value": format_value(rec.reference_value),
        "projected_value": format_value(rec.projected_value),
        "delta": format_value(rec.delta),
    }


def shift_record_from_row(row: dict) -> ShiftRecord:
    def opt(field):
        return float(row[field]) if row[field] != "" else None

    return ShiftRecord(
        design_id=int(row["design_id"]), function_id=int(row["function_id"]),
        instance_id=int(row["instance_id"]), embedding_id=int(row["embedding_id"]),
        reduced_dim=int(row["reduced_dim"]), sample_size=int(row["sample_size"]),
        feature_name=row["feature_name"], delta=opt("delta"),
        reference_value=opt("reference_value"), projected_value=opt("projected_value"),
    )

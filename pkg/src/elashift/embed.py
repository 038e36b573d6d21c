"""Random Gaussian embeddings: z = (1/sqrt(d)) A x with i.i.d. N(0,1) entries."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from .seeds import generator


@dataclass(frozen=True)
class GaussianEmbedding:
    """A d x D projection matrix with the 1/sqrt(d) scaling convention.

    Constructing the dataclass directly with an explicit matrix is the test
    hook for analytically checkable cases; `sample_embedding` is the seeded
    factory used by the experiment pipeline.
    """

    embedding_id: int
    reduced_dim: int
    ambient_dim: int
    matrix: np.ndarray
    seed: int

    def __post_init__(self):
        if self.reduced_dim > self.ambient_dim:
            raise ValueError(
                f"reduced_dim {self.reduced_dim} exceeds ambient_dim {self.ambient_dim}"
            )
        if self.matrix.shape != (self.reduced_dim, self.ambient_dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match "
                f"({self.reduced_dim}, {self.ambient_dim})"
            )
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("embedding matrix contains non-finite entries")


def sample_embedding(reduced_dim: int, ambient_dim: int, seed: int,
                     embedding_id: int = 0) -> GaussianEmbedding:
    if not 1 <= reduced_dim <= ambient_dim:
        raise ValueError(
            f"need 1 <= reduced_dim <= ambient_dim, got d={reduced_dim}, D={ambient_dim}"
        )
    matrix = generator(seed).standard_normal((reduced_dim, ambient_dim))
    return GaussianEmbedding(embedding_id=embedding_id, reduced_dim=reduced_dim,
                             ambient_dim=ambient_dim, matrix=matrix, seed=seed)


def project(embedding: GaussianEmbedding, points: np.ndarray) -> np.ndarray:
    """Map an (S, D) matrix to (S, d) rows z_i = (1/sqrt(d)) A x_i."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != embedding.ambient_dim:
        raise ValueError(
            f"points must have shape (S, {embedding.ambient_dim}), got {points.shape}"
        )
    return points @ embedding.matrix.T / np.sqrt(embedding.reduced_dim)


@dataclass(frozen=True)
class DistortionSummary:
    min: float
    median: float
    max: float
    n_pairs: int


def distance_distortion(embedding: GaussianEmbedding, points: np.ndarray) -> DistortionSummary:
    """Summary of pairwise distance ratios ||z_i - z_j|| / ||x_i - x_j||.

    Coincident ambient pairs are skipped; if every pair is coincident the
    input is degenerate.
    """
    points = np.asarray(points, dtype=float)
    if points.shape[0] < 2:
        raise ValueError("need at least two points")
    num = pdist(project(embedding, points))
    den = pdist(points)
    mask = den > 0
    if not np.any(mask):
        raise ValueError("all points coincide; distance ratios are undefined")
    ratios = num[mask] / den[mask]
    return DistortionSummary(min=float(ratios.min()), median=float(np.median(ratios)),
                             max=float(ratios.max()), n_pairs=int(mask.sum()))

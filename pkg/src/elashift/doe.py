"""Seeded Latin-hypercube sampling designs over the [-5, 5]^D box."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .seeds import generator
from .suite import LOWER, UPPER


@dataclass(frozen=True)
class Design:
    design_id: int
    sample_size: int
    dimension: int
    points: np.ndarray
    seed: int


def lhs(sample_size: int, dimension: int, seed: int, design_id: int = 0) -> Design:
    """Stratified Latin-hypercube design with uniform within-bin jitter.

    Each column places exactly one point in each of the sample_size
    equal-width bins of [-5, 5]; bin order is an independent seeded
    permutation per dimension.
    """
    if sample_size < 2:
        raise ValueError(f"sample_size must be >= 2, got {sample_size}")
    if dimension < 1:
        raise ValueError(f"dimension must be >= 1, got {dimension}")
    rng = generator(seed)
    width = UPPER - LOWER
    points = np.empty((sample_size, dimension))
    for j in range(dimension):
        bins = rng.permutation(sample_size)
        jitter = rng.random(sample_size)
        jitter[jitter == 0.0] = 0.5  # keep points strictly inside the box
        points[:, j] = LOWER + width * (bins + jitter) / sample_size
    return Design(design_id=design_id, sample_size=sample_size,
                  dimension=dimension, points=points, seed=seed)

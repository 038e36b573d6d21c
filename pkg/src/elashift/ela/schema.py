"""Fixed 61-feature schema: names, set membership, containers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

STATUS_OK = "ok"
STATUS_DEGENERATE = "degenerate"
STATUS_NON_FINITE = "non-finite"

_LEVEL_QUANTILES = (10, 25, 50)
_DISP_QUANTILES = (2, 5, 10, 25)

ELA_DISTR = ("ela_distr.skewness", "ela_distr.kurtosis", "ela_distr.number_of_peaks")

ELA_LEVEL = tuple(
    f"ela_level.{kind}_{q:02d}"
    for q in _LEVEL_QUANTILES
    for kind in ("mmce_lda", "mmce_qda", "lda_qda")
)

ELA_META = (
    "ela_meta.lin_simple.adj_r2",
    "ela_meta.lin_simple.intercept",
    "ela_meta.lin_simple.coef.min",
    "ela_meta.lin_simple.coef.max",
    "ela_meta.lin_simple.coef.max_by_min",
    "ela_meta.lin_w_interact.adj_r2",
    "ela_meta.quad_simple.adj_r2",
    "ela_meta.quad_simple.cond",
    "ela_meta.quad_w_interact.adj_r2",
)

NBC = (
    "nbc.nn_nb.sd_ratio",
    "nbc.nn_nb.mean_ratio",
    "nbc.nn_nb.cor",
    "nbc.dist_ratio.coeff_var",
    "nbc.nb_fitness.cor",
)

DISP = tuple(
    f"disp.{kind}_{q:02d}"
    for kind in ("ratio_mean", "ratio_median", "diff_mean", "diff_median")
    for q in _DISP_QUANTILES
)

IC = ("ic.h_max", "ic.eps_s", "ic.eps_max", "ic.eps_ratio", "ic.m0")

FITNESS_DISTANCE = (
    "fitness_distance.fd_correlation",
    "fitness_distance.fd_rank_correlation",
    "fitness_distance.distance_mean",
    "fitness_distance.distance_std",
    "fitness_distance.fitness_mean",
    "fitness_distance.fitness_std",
)

PCA = (
    "pca.expl_var.cov_x",
    "pca.expl_var.cor_x",
    "pca.expl_var.cov_init",
    "pca.expl_var.cor_init",
    "pca.expl_var_PC1.cov_x",
    "pca.expl_var_PC1.cor_x",
    "pca.expl_var_PC1.cov_init",
    "pca.expl_var_PC1.cor_init",
)

FEATURE_SETS = {
    "ela_distr": ELA_DISTR,
    "ela_level": ELA_LEVEL,
    "ela_meta": ELA_META,
    "nbc": NBC,
    "disp": DISP,
    "ic": IC,
    "fitness_distance": FITNESS_DISTANCE,
    "pca": PCA,
}

FEATURE_NAMES = tuple(name for names in FEATURE_SETS.values() for name in names)

# Features that depend only on the vector of objective values and are
# therefore exactly invariant under any embedding of the input space.
Y_ONLY_FEATURES = ELA_DISTR + (
    "fitness_distance.fitness_mean",
    "fitness_distance.fitness_std",
)

assert len(FEATURE_NAMES) == 61
assert tuple(len(v) for v in FEATURE_SETS.values()) == (3, 9, 9, 5, 16, 5, 6, 8)


@dataclass
class Dataset:
    """Sample points (S x p) with their objective values (S,)."""

    points: np.ndarray
    objectives: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        self.objectives = np.asarray(self.objectives, dtype=float)
        if self.points.ndim != 2:
            raise ValueError("points must be a 2-D matrix")
        if self.objectives.ndim != 1 or len(self.objectives) != self.points.shape[0]:
            raise ValueError("objectives must be one value per point row")
        s, p = self.points.shape
        if s < p + 2:
            raise ValueError(f"need at least p + 2 = {p + 2} samples, got {s}")
        if not (np.all(np.isfinite(self.points)) and np.all(np.isfinite(self.objectives))):
            raise ValueError("dataset contains non-finite values")

    @property
    def n_samples(self) -> int:
        return self.points.shape[0]

    @property
    def n_dims(self) -> int:
        return self.points.shape[1]


@dataclass
class FeatureVector:
    """The 61 named feature values plus a per-feature status flag."""

    values: dict = field(default_factory=dict)
    status: dict = field(default_factory=dict)

    def set(self, name: str, value: float, status: str = STATUS_OK):
        if name not in FEATURE_NAMES:
            raise KeyError(f"unknown feature name {name!r}")
        value = float(value)
        if status == STATUS_OK and not np.isfinite(value):
            status = STATUS_NON_FINITE
        self.values[name] = value
        self.status[name] = status

    def set_failed(self, name: str, status: str = STATUS_DEGENERATE):
        if name not in FEATURE_NAMES:
            raise KeyError(f"unknown feature name {name!r}")
        self.values[name] = float("nan")
        self.status[name] = status

    def is_ok(self, name: str) -> bool:
        return self.status.get(name) == STATUS_OK

    def validate_complete(self):
        missing = [n for n in FEATURE_NAMES if n not in self.values]
        if missing:
            raise ValueError(f"feature vector is missing {len(missing)} entries: {missing[:3]}...")
        if len(self.values) != 61:
            raise ValueError(f"expected 61 features, got {len(self.values)}")

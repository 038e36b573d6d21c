from .discriminant import DegenerateSplit, cross_validated_mmce, stratified_folds
from .features import (
    compute_all,
    compute_disp,
    compute_ela_distr,
    compute_ela_level,
    compute_ela_meta,
    compute_fitness_distance,
    compute_ic,
    compute_nbc,
    compute_pca,
    information_content_profile,
    level_ratio,
    nearest_neighbor_distances,
    nearest_neighbor_tour,
    number_of_peaks,
)
from .ols import (
    OlsFit,
    fit_ols,
    full_quadratic_basis,
    interaction_basis,
    linear_basis,
    pure_quadratic_basis,
)
from .schema import (
    FEATURE_NAMES,
    FEATURE_SETS,
    STATUS_DEGENERATE,
    STATUS_NON_FINITE,
    STATUS_OK,
    Y_ONLY_FEATURES,
    Dataset,
    FeatureVector,
)

__all__ = [
    "DegenerateSplit", "cross_validated_mmce", "stratified_folds",
    "compute_all", "compute_disp", "compute_ela_distr", "compute_ela_level",
    "compute_ela_meta", "compute_fitness_distance", "compute_ic", "compute_nbc",
    "compute_pca", "information_content_profile", "level_ratio",
    "nearest_neighbor_distances", "nearest_neighbor_tour", "number_of_peaks",
    "OlsFit", "fit_ols", "full_quadratic_basis", "interaction_basis",
    "linear_basis", "pure_quadratic_basis",
    "FEATURE_NAMES", "FEATURE_SETS", "STATUS_DEGENERATE", "STATUS_NON_FINITE",
    "STATUS_OK", "Y_ONLY_FEATURES", "Dataset", "FeatureVector",
]

"""The eight landscape feature sets (61 features total).

Every feature is a pure function of (dataset, seed); the seed only drives the
cross-validation folds of the level-set features and the start point of the
information-content tour.  Features that cannot be computed are flagged
instead of raising, so one bad estimate never aborts a pipeline run.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist, pdist
from scipy.stats import rankdata

from ..seeds import generator, mix64
from .discriminant import DegenerateSplit, cross_validated_mmce
from .ols import (
    OlsFit,
    fit_ols,
    full_quadratic_basis,
    interaction_basis,
    linear_basis,
    pure_quadratic_basis,
)
from .schema import (
    FEATURE_SETS,
    STATUS_DEGENERATE,
    STATUS_NON_FINITE,
    STATUS_OK,
    Dataset,
    FeatureVector,
)

PEAK_MASS_THRESHOLD = 0.1
LEVEL_QUANTILES = (0.10, 0.25, 0.50)
DISP_QUANTILES = (0.02, 0.05, 0.10, 0.25)
IC_EPS_GRID = np.concatenate([[0.0], 10.0 ** np.linspace(-5.0, 15.0, 1000)])
IC_ZERO_DISTANCE_FLOOR = 1e-12


def _pearson(a: np.ndarray, b: np.ndarray):
    """Pearson correlation, or None when either side has zero variance."""
    a = np.asarray(a, dtype=float) - np.mean(a)
    b = np.asarray(b, dtype=float) - np.mean(b)
    va, vb = float(a @ a), float(b @ b)
    if va <= 0.0 or vb <= 0.0:
        return None
    return float(a @ b / np.sqrt(va * vb))


def _spearman(a: np.ndarray, b: np.ndarray):
    return _pearson(rankdata(a), rankdata(b))


def _set_corr(fv: FeatureVector, name: str, corr):
    if corr is None:
        fv.set_failed(name, STATUS_DEGENERATE)
    else:
        fv.set(name, corr)


# ---------------------------------------------------------------------------
# distribution of objective values
# ---------------------------------------------------------------------------


def number_of_peaks(y: np.ndarray) -> int:
    """Count modes of a Gaussian-kernel density estimate of y.

    Silverman bandwidth h = 0.9 * min(sd, IQR/1.34) * S^(-1/5); density on a
    512-point grid over [min - 3h, max + 3h]; a mode counts when the mass
    between its flanking minima exceeds PEAK_MASS_THRESHOLD.
    """
    y = np.asarray(y, dtype=float)
    s = len(y)
    sd = float(np.std(y, ddof=1))
    q75, q25 = np.percentile(y, [75, 25])
    h = 0.9 * min(sd, (q75 - q25) / 1.34) * s ** (-0.2)
    if h <= 0.0:
        h = 0.9 * sd * s ** (-0.2)
    if h <= 0.0:
        return 1
    grid = np.linspace(y.min() - 3.0 * h, y.max() + 3.0 * h, 512)
    dens = np.exp(-0.5 * ((grid[:, None] - y[None, :]) / h) ** 2).sum(axis=1)

    interior = np.flatnonzero((dens[1:-1] > dens[:-2]) & (dens[1:-1] > dens[2:])) + 1
    maxima = list(interior)
    if dens[0] > dens[1]:
        maxima.insert(0, 0)
    if dens[-1] > dens[-2]:
        maxima.append(len(dens) - 1)
    if len(maxima) <= 1:
        return 1

    bounds = [0]
    for left, right in zip(maxima[:-1], maxima[1:]):
        bounds.append(left + int(np.argmin(dens[left:right + 1])))
    bounds.append(len(dens) - 1)
    total = float(dens.sum())
    count = 0
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if float(dens[lo:hi + 1].sum()) / total > PEAK_MASS_THRESHOLD:
            count += 1
    return max(count, 1)


def compute_ela_distr(dataset: Dataset) -> FeatureVector:
    y = dataset.objectives
    s = len(y)
    if s < 4:
        raise ValueError("distribution features need at least 4 samples")
    fv = FeatureVector()
    centered = y - y.mean()
    m2 = float(np.mean(centered ** 2))
    if m2 <= 0.0:
        fv.set_failed("ela_distr.skewness", STATUS_DEGENERATE)
        fv.set_failed("ela_distr.kurtosis", STATUS_DEGENERATE)
        fv.set("ela_distr.number_of_peaks", 1.0)
        return fv
    m3 = float(np.mean(centered ** 3))
    m4 = float(np.mean(centered ** 4))
    fv.set("ela_distr.skewness", m3 / m2 ** 1.5)
    fv.set("ela_distr.kurtosis", m4 / m2 ** 2 - 3.0)
    fv.set("ela_distr.number_of_peaks", float(number_of_peaks(y)))
    return fv


# ---------------------------------------------------------------------------
# level sets
# ---------------------------------------------------------------------------


def level_ratio(mmce_lda: float, mmce_qda: float) -> float:
    """Definitional LDA/QDA error ratio; undefined when the QDA error is 0."""
    if mmce_qda == 0.0:
        return float("inf") if mmce_lda > 0.0 else float("nan")
    return mmce_lda / mmce_qda


def compute_ela_level(dataset: Dataset, seed: int) -> FeatureVector:
    if dataset.n_samples < 20:
        raise ValueError("level-set features need at least 20 samples")
    fv = FeatureVector()
    y = dataset.objectives
    for q in LEVEL_QUANTILES:
        tag = f"{int(q * 100):02d}"
        names = [f"ela_level.mmce_lda_{tag}", f"ela_level.mmce_qda_{tag}",
                 f"ela_level.lda_qda_{tag}"]
        labels = (y <= np.quantile(y, q)).astype(int)
        if labels.min() == labels.max():
            for name in names:
                fv.set_failed(name, STATUS_DEGENERATE)
            continue
        try:
            mmce_lda, mmce_qda = cross_validated_mmce(
                dataset.points, labels, seed=mix64(seed, "level", tag)
            )
        except DegenerateSplit:
            for name in names:
                fv.set_failed(name, STATUS_DEGENERATE)
            continue
        fv.set(names[0], mmce_lda)
        fv.set(names[1], mmce_qda)
        ratio = level_ratio(mmce_lda, mmce_qda)
        if np.isfinite(ratio):
            fv.set(names[2], ratio)
        else:
            fv.set_failed(names[2], STATUS_NON_FINITE)
    return fv


# ---------------------------------------------------------------------------
# meta-model fits
# ---------------------------------------------------------------------------


def _fit_status(fit: OlsFit) -> str:
    return STATUS_DEGENERATE if fit.degenerate else STATUS_OK


def compute_ela_meta(dataset: Dataset) -> FeatureVector:
    fv = FeatureVector()
    X, y = dataset.points, dataset.objectives
    p = dataset.n_dims

    lin = fit_ols(linear_basis(X), y, "linear")
    lin_status = _fit_status(lin)
    abs_coef = np.abs(lin.coefficients)
    coef_min, coef_max = float(abs_coef.min()), float(abs_coef.max())
    fv.set("ela_meta.lin_simple.adj_r2", lin.adjusted_r2, lin_status)
    fv.set("ela_meta.lin_simple.intercept", lin.intercept, lin_status)
    fv.set("ela_meta.lin_simple.coef.min", coef_min, lin_status)
    fv.set("ela_meta.lin_simple.coef.max", coef_max, lin_status)
    if coef_min == 0.0:
        fv.set_failed("ela_meta.lin_simple.coef.max_by_min", STATUS_NON_FINITE)
    else:
        fv.set("ela_meta.lin_simple.coef.max_by_min", coef_max / coef_min, lin_status)

    lin_w = fit_ols(interaction_basis(X), y, "linear+interactions")
    fv.set("ela_meta.lin_w_interact.adj_r2", lin_w.adjusted_r2, _fit_status(lin_w))

    quad = fit_ols(pure_quadratic_basis(X), y, "pure-quadratic")
    quad_status = _fit_status(quad)
    fv.set("ela_meta.quad_simple.adj_r2", quad.adjusted_r2, quad_status)
    quad_coef = np.abs(quad.coefficients[p:2 * p])
    if quad_coef.min() == 0.0:
        fv.set_failed("ela_meta.quad_simple.cond", STATUS_NON_FINITE)
    else:
        fv.set("ela_meta.quad_simple.cond",
               float(quad_coef.max() / quad_coef.min()), quad_status)

    quad_w = fit_ols(full_quadratic_basis(X), y, "full-quadratic")
    fv.set("ela_meta.quad_w_interact.adj_r2", quad_w.adjusted_r2, _fit_status(quad_w))
    return fv


# ---------------------------------------------------------------------------
# nearest-better clustering
# ---------------------------------------------------------------------------


def nearest_neighbor_distances(points: np.ndarray, objectives: np.ndarray):
    """Per point: distance to the nearest other point and to the nearest
    strictly better point.  A point with no better point (the global best,
    including ties) takes the maximum distance to any other point."""
    dist = cdist(points, points)
    np.fill_diagonal(dist, np.inf)
    d_nn = dist.min(axis=1)
    better = objectives[None, :] < objectives[:, None]
    masked = np.where(better, dist, np.inf)
    d_nb = masked.min(axis=1)
    no_better = ~np.isfinite(d_nb)
    if np.any(no_better):
        finite = np.where(np.isfinite(dist), dist, -np.inf)
        d_nb[no_better] = finite[no_better].max(axis=1)
    return d_nn, d_nb


def compute_nbc(dataset: Dataset) -> FeatureVector:
    if dataset.n_samples < 3:
        raise ValueError("nearest-better features need at least 3 samples")
    fv = FeatureVector()
    y = dataset.objectives
    d_nn, d_nb = nearest_neighbor_distances(dataset.points, y)

    sd_nb = float(np.std(d_nb, ddof=1))
    mean_nb = float(np.mean(d_nb))
    if sd_nb == 0.0:
        fv.set_failed("nbc.nn_nb.sd_ratio", STATUS_NON_FINITE)
    else:
        fv.set("nbc.nn_nb.sd_ratio", float(np.std(d_nn, ddof=1)) / sd_nb)
    if mean_nb == 0.0:
        fv.set_failed("nbc.nn_nb.mean_ratio", STATUS_NON_FINITE)
    else:
        fv.set("nbc.nn_nb.mean_ratio", float(np.mean(d_nn)) / mean_nb)
    _set_corr(fv, "nbc.nn_nb.cor", _pearson(d_nn, d_nb))

    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = d_nn / d_nb
    if not np.all(np.isfinite(ratio)) or np.mean(ratio) == 0.0:
        fv.set_failed("nbc.dist_ratio.coeff_var", STATUS_NON_FINITE)
    else:
        fv.set("nbc.dist_ratio.coeff_var",
               float(np.std(ratio, ddof=1) / np.mean(ratio)))
    _set_corr(fv, "nbc.nb_fitness.cor", _pearson(d_nb, y))
    return fv


# ---------------------------------------------------------------------------
# dispersion
# ---------------------------------------------------------------------------


def compute_disp(dataset: Dataset) -> FeatureVector:
    fv = FeatureVector()
    y = dataset.objectives
    s = dataset.n_samples
    full = pdist(dataset.points)
    full_mean, full_median = float(np.mean(full)), float(np.median(full))
    order = np.argsort(y, kind="stable")
    for q in DISP_QUANTILES:
        tag = f"{int(q * 100):02d}"
        names = [f"disp.ratio_mean_{tag}", f"disp.ratio_median_{tag}",
                 f"disp.diff_mean_{tag}", f"disp.diff_median_{tag}"]
        k = int(np.ceil(q * s))
        if k < 2:
            for name in names:
                fv.set_failed(name, STATUS_DEGENERATE)
            continue
        sub = pdist(dataset.points[order[:k]])
        sub_mean, sub_median = float(np.mean(sub)), float(np.median(sub))
        fv.set(names[0], sub_mean / full_mean)
        fv.set(names[1], sub_median / full_median)
        fv.set(names[2], sub_mean - full_mean)
        fv.set(names[3], sub_median - full_median)
    return fv


# ---------------------------------------------------------------------------
# information content
# ---------------------------------------------------------------------------


def nearest_neighbor_tour(points: np.ndarray, seed: int) -> np.ndarray:
    """Visiting order: seeded random start, then repeatedly the nearest
    unvisited point (ties broken towards the smallest index)."""
    s = points.shape[0]
    dist = cdist(points, points)
    rng = generator(seed)
    order = np.empty(s, dtype=int)
    order[0] = int(rng.integers(s))
    remaining = np.ones(s, dtype=bool)
    remaining[order[0]] = False
    for step in range(1, s):
        row = np.where(remaining, dist[order[step - 1]], np.inf)
        order[step] = int(np.argmin(row))
        remaining[order[step]] = False
    return order


def information_content_profile(ratios: np.ndarray, eps_grid: np.ndarray = IC_EPS_GRID):
    """H(eps) and M(eps) of a sequence of objective-change ratios.

    Symbols are -1/0/+1 per the sensitivity threshold; H is the base-6
    entropy of unequal consecutive symbol pairs; M is the length of the
    zero-free, repeat-collapsed symbol sequence over (len(ratios)) slots.
    """
    r = np.asarray(ratios, dtype=float)
    n = len(r)
    sym = (r[None, :] > eps_grid[:, None]).astype(np.int8)
    sym -= (r[None, :] < -eps_grid[:, None]).astype(np.int8)

    a, b = sym[:, :-1], sym[:, 1:]
    codes = (3 * (a + 1) + (b + 1)).astype(np.int64)
    rows = np.repeat(np.arange(len(eps_grid)), n - 1)
    counts = np.bincount(rows * 9 + codes.ravel(), minlength=9 * len(eps_grid))
    counts = counts.reshape(len(eps_grid), 9).astype(float)
    unequal = [1, 2, 3, 5, 6, 7]  # all (a, b) codes with a != b
    probs = counts[:, unequal] / (n - 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(probs > 0, probs * np.log(probs), 0.0)
    entropy = -terms.sum(axis=1) / np.log(6.0)

    partial = np.empty(len(eps_grid))
    for i in range(len(eps_grid)):
        nz = sym[i][sym[i] != 0]
        if len(nz) == 0:
            partial[i] = 0.0
        else:
            partial[i] = (1 + int(np.sum(nz[1:] != nz[:-1]))) / n
    return entropy, partial


def compute_ic(dataset: Dataset, seed: int) -> FeatureVector:
    if dataset.n_samples < 10:
        raise ValueError("information content needs at least 10 samples")
    fv = FeatureVector()
    order = nearest_neighbor_tour(dataset.points, mix64(seed, "ic-start"))
    pts = dataset.points[order]
    y = dataset.objectives[order]
    steps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    steps = np.maximum(steps, IC_ZERO_DISTANCE_FLOOR)
    ratios = np.diff(y) / steps

    entropy, partial = information_content_profile(ratios)
    eps = IC_EPS_GRID

    fv.set("ic.h_max", float(entropy.max()))
    eps_at_max = float(eps[int(np.argmax(entropy))])
    if eps_at_max > 0.0:
        fv.set("ic.eps_max", float(np.log10(eps_at_max)))
    else:
        fv.set_failed("ic.eps_max", STATUS_DEGENERATE)

    settled = eps[entropy > 0.05]
    if len(settled) and settled.max() > 0.0:
        fv.set("ic.eps_s", float(np.log10(settled.max())))
    else:
        fv.set_failed("ic.eps_s", STATUS_DEGENERATE)

    m0 = float(partial[0])
    fv.set("ic.m0", m0)
    if m0 == 0.0:
        fv.set_failed("ic.eps_ratio", STATUS_DEGENERATE)
    else:
        kept = eps[partial > 0.5 * m0]
        if len(kept) and kept.max() > 0.0:
            fv.set("ic.eps_ratio", float(np.log10(kept.max())))
        else:
            fv.set_failed("ic.eps_ratio", STATUS_DEGENERATE)
    return fv


# ---------------------------------------------------------------------------
# fitness distance correlation
# ---------------------------------------------------------------------------


def compute_fitness_distance(dataset: Dataset) -> FeatureVector:
    if dataset.n_samples < 3:
        raise ValueError("fitness-distance features need at least 3 samples")
    fv = FeatureVector()
    y = dataset.objectives
    best = int(np.argmin(y))
    others = np.arange(len(y)) != best
    delta = np.linalg.norm(dataset.points[others] - dataset.points[best], axis=1)
    y_others = y[others]

    _set_corr(fv, "fitness_distance.fd_correlation", _pearson(delta, y_others))
    _set_corr(fv, "fitness_distance.fd_rank_correlation", _spearman(delta, y_others))
    fv.set("fitness_distance.distance_mean", float(np.mean(delta)))
    fv.set("fitness_distance.distance_std", float(np.std(delta, ddof=1)))
    fv.set("fitness_distance.fitness_mean", float(np.mean(y)))
    fv.set("fitness_distance.fitness_std", float(np.std(y, ddof=1)))
    return fv


# ---------------------------------------------------------------------------
# principal components
# ---------------------------------------------------------------------------


def _pca_pair(matrix: np.ndarray, fv: FeatureVector, cov_name: str, cor_name: str,
              pc1_cov_name: str, pc1_cor_name: str):
    def eig_features(m, names):
        evals = np.linalg.eigvalsh(np.cov(m, rowvar=False, ddof=1))[::-1]
        evals = np.maximum(evals, 0.0)
        total = float(evals.sum())
        if total <= 0.0:
            fv.set_failed(names[0], STATUS_DEGENERATE)
            fv.set_failed(names[1], STATUS_DEGENERATE)
            return
        needed = 1 + int(np.argmax(np.cumsum(evals) >= 0.9 * total))
        fv.set(names[0], needed / m.shape[1])
        fv.set(names[1], float(evals[0]) / total)

    eig_features(matrix, (cov_name, pc1_cov_name))
    stds = np.std(matrix, axis=0, ddof=1)
    if np.any(stds == 0.0):
        for name in (cor_name, pc1_cor_name):
            fv.set_failed(name, STATUS_DEGENERATE)
    else:
        eig_features((matrix - matrix.mean(axis=0)) / stds, (cor_name, pc1_cor_name))


def compute_pca(dataset: Dataset) -> FeatureVector:
    fv = FeatureVector()
    X = dataset.points
    init = np.hstack([X, dataset.objectives[:, None]])
    _pca_pair(X, fv, "pca.expl_var.cov_x", "pca.expl_var.cor_x",
              "pca.expl_var_PC1.cov_x", "pca.expl_var_PC1.cor_x")
    _pca_pair(init, fv, "pca.expl_var.cov_init", "pca.expl_var.cor_init",
              "pca.expl_var_PC1.cov_init", "pca.expl_var_PC1.cor_init")
    return fv


# ---------------------------------------------------------------------------
# full vector
# ---------------------------------------------------------------------------


def compute_all(dataset: Dataset, seed: int) -> FeatureVector:
    """All 61 features with per-feature status, deterministic in (dataset, seed)."""
    fv = FeatureVector()

    def merge(part: FeatureVector):
        fv.values.update(part.values)
        fv.status.update(part.status)

    def flag_set(set_name: str):
        for name in FEATURE_SETS[set_name]:
            fv.set_failed(name, STATUS_DEGENERATE)

    s = dataset.n_samples
    merge(compute_ela_distr(dataset)) if s >= 4 else flag_set("ela_distr")
    if s >= 20:
        merge(compute_ela_level(dataset, seed))
    else:
        flag_set("ela_level")
    merge(compute_ela_meta(dataset))
    merge(compute_nbc(dataset)) if s >= 3 else flag_set("nbc")
    merge(compute_disp(dataset))
    merge(compute_ic(dataset, seed)) if s >= 10 else flag_set("ic")
    merge(compute_fitness_distance(dataset)) if s >= 3 else flag_set("fitness_distance")
    merge(compute_pca(dataset))

    fv.validate_complete()
    return fv

"""Brute-force oracle checks for the neighborhood and dispersion features,
analytic checks for the information-content profile, and the full-vector
schema contract."""

import math
from dataclasses import dataclass

import numpy as np
import pytest

from elashift.doe import lhs
from elashift.ela import (
    FEATURE_NAMES,
    FEATURE_SETS,
    Dataset,
    compute_all,
    compute_disp,
    compute_ic,
    compute_nbc,
    information_content_profile,
    nearest_neighbor_distances,
    nearest_neighbor_tour,
)
from elashift.seeds import mix64
from elashift.suite import evaluate_batch, make_instance


@dataclass
class RawDataset:
    """Duck-typed stand-in that skips Dataset's sample-count floor, for
    geometric corner cases (e.g. a regular simplex has S = p + 1 points)."""

    points: np.ndarray
    objectives: np.ndarray

    @property
    def n_samples(self):
        return self.points.shape[0]

    @property
    def n_dims(self):
        return self.points.shape[1]


# -- nearest-better clustering oracle ---------------------------------------


def nbc_oracle(points, y):
    """Naive O(S^2) double loop over the stated conventions."""
    s = len(y)
    d_nn, d_nb = [], []
    for i in range(s):
        dists = [np.linalg.norm(points[i] - points[j]) for j in range(s) if j != i]
        d_nn.append(min(dists))
        better = [np.linalg.norm(points[i] - points[j])
                  for j in range(s) if y[j] < y[i]]
        d_nb.append(min(better) if better else max(dists))
    d_nn, d_nb = np.array(d_nn), np.array(d_nb)
    ratio = d_nn / d_nb

    def cor(a, b):
        a = a - a.mean()
        b = b - b.mean()
        return float(a @ b / np.sqrt((a @ a) * (b @ b)))

    return {
        "nbc.nn_nb.sd_ratio": np.std(d_nn, ddof=1) / np.std(d_nb, ddof=1),
        "nbc.nn_nb.mean_ratio": np.mean(d_nn) / np.mean(d_nb),
        "nbc.nn_nb.cor": cor(d_nn, d_nb),
        "nbc.dist_ratio.coeff_var": np.std(ratio, ddof=1) / np.mean(ratio),
        "nbc.nb_fitness.cor": cor(d_nb, np.asarray(y, dtype=float)),
    }


def test_nbc_collinear_hand_case():
    points = np.array([[0.0], [1.0], [2.0]])
    y = np.array([0.0, 1.0, 2.0])
    d_nn, d_nb = nearest_neighbor_distances(points, y)
    assert list(d_nn) == [1.0, 1.0, 1.0]
    assert list(d_nb) == [2.0, 1.0, 1.0]
    fv = compute_nbc(RawDataset(points, y))
    assert fv.values["nbc.nn_nb.mean_ratio"] == pytest.approx(0.75)


def test_nbc_nearest_better_dominates_nearest(rng):
    points = rng.uniform(-5, 5, (60, 4))
    y = rng.normal(size=60)
    d_nn, d_nb = nearest_neighbor_distances(points, y)
    non_best = y > y.min()
    assert np.all(d_nn[non_best] <= d_nb[non_best])


def test_nbc_matches_bruteforce_oracle(rng):
    for _ in range(10):
        s = int(rng.integers(10, 50))
        p = int(rng.integers(2, 6))
        points = rng.uniform(-5, 5, (s, p))
        y = rng.normal(size=s)
        fv = compute_nbc(Dataset(points, y)) if s >= p + 2 else compute_nbc(
            RawDataset(points, y))
        oracle = nbc_oracle(points, y)
        for name, expected in oracle.items():
            assert fv.values[name] == pytest.approx(expected, abs=1e-10)


# -- dispersion oracle -------------------------------------------------------


def disp_oracle(points, y):
    s = len(y)
    pairs = [np.linalg.norm(points[i] - points[j])
             for i in range(s) for j in range(i + 1, s)]
    order = np.argsort(y, kind="stable")
    out = {}
    for q in (0.02, 0.05, 0.10, 0.25):
        tag = f"{int(q * 100):02d}"
        k = math.ceil(q * s)
        if k < 2:
            out[f"disp.ratio_mean_{tag}"] = None
            out[f"disp.ratio_median_{tag}"] = None
            out[f"disp.diff_mean_{tag}"] = None
            out[f"disp.diff_median_{tag}"] = None
            continue
        best = points[order[:k]]
        sub = [np.linalg.norm(best[i] - best[j])
               for i in range(k) for j in range(i + 1, k)]
        out[f"disp.ratio_mean_{tag}"] = np.mean(sub) / np.mean(pairs)
        out[f"disp.ratio_median_{tag}"] = np.median(sub) / np.median(pairs)
        out[f"disp.diff_mean_{tag}"] = np.mean(sub) - np.mean(pairs)
        out[f"disp.diff_median_{tag}"] = np.median(sub) - np.median(pairs)
    return out


def test_disp_matches_bruteforce_oracle(rng):
    for _ in range(10):
        s = int(rng.integers(41, 51))
        points = rng.uniform(-5, 5, (s, 3))
        y = rng.normal(size=s)
        fv = compute_disp(Dataset(points, y))
        for name, expected in disp_oracle(points, y).items():
            if expected is None:
                assert not fv.is_ok(name)
            else:
                assert fv.values[name] == pytest.approx(expected, abs=1e-10)


def test_disp_equal_distance_multiset():
    # vertices of a regular simplex: every pairwise distance is sqrt(2)
    p = 7
    points = np.eye(p)
    y = np.arange(float(p))
    fv = compute_disp(RawDataset(points, y))
    for tag in ("25",):
        assert fv.values[f"disp.ratio_mean_{tag}"] == pytest.approx(1.0)
        assert fv.values[f"disp.ratio_median_{tag}"] == pytest.approx(1.0)
        assert fv.values[f"disp.diff_mean_{tag}"] == pytest.approx(0.0, abs=1e-12)
        assert fv.values[f"disp.diff_median_{tag}"] == pytest.approx(0.0, abs=1e-12)


def test_disp_scaling_behaviour(rng):
    points = rng.uniform(-5, 5, (60, 3))
    y = rng.normal(size=60)
    base = compute_disp(Dataset(points, y))
    scaled = compute_disp(Dataset(points * 2.0, y))
    for name in FEATURE_SETS["disp"]:
        if "ratio" in name:
            assert scaled.values[name] == pytest.approx(base.values[name], rel=1e-12)
        else:
            assert scaled.values[name] == pytest.approx(2.0 * base.values[name], rel=1e-12)


def test_disp_small_subset_flagged(rng):
    points = rng.uniform(-5, 5, (50, 3))
    fv = compute_disp(Dataset(points, rng.normal(size=50)))
    assert not fv.is_ok("disp.ratio_mean_02")  # ceil(.02 * 50) = 1 point
    assert fv.is_ok("disp.ratio_mean_05")


# -- information content -----------------------------------------------------


def test_ic_profile_monotone_sequence():
    ratios = np.full(40, 2.0)  # strictly increasing objective along the tour
    eps = np.array([0.0, 1.0, 10.0])
    entropy, partial = information_content_profile(ratios, eps)
    # above every |r|: all-zero symbols
    assert entropy[2] == 0.0
    assert partial[2] == 0.0
    # at eps = 0: all symbols +1, collapsed length 1
    assert entropy[0] == 0.0
    assert partial[0] == pytest.approx(1.0 / 40.0, abs=1e-15)


def test_ic_profile_alternating_sequence():
    # 41 alternating symbols make 40 pairs, exactly 20 of (+,-) and 20 of (-,+)
    ratios = np.array([1.0, -1.0] * 20 + [1.0])
    entropy, partial = information_content_profile(ratios, np.array([0.0]))
    assert entropy[0] == pytest.approx(np.log(2.0) / np.log(6.0), abs=1e-12)
    assert partial[0] == 1.0


def test_ic_tour_is_a_permutation(rng):
    points = rng.uniform(-5, 5, (30, 3))
    order = nearest_neighbor_tour(points, seed=5)
    assert sorted(order) == list(range(30))
    assert np.array_equal(order, nearest_neighbor_tour(points, seed=5))


def test_ic_monotone_objective_along_tour(rng):
    points = rng.uniform(-5, 5, (40, 3))
    seed = 91
    order = nearest_neighbor_tour(points, mix64(seed, "ic-start"))
    y = np.empty(40)
    y[order] = np.arange(40.0)  # strictly increasing along the tour
    fv = compute_ic(Dataset(points, y), seed=seed)
    assert fv.values["ic.m0"] == pytest.approx(1.0 / 39.0, abs=1e-15)


def test_ic_zigzag_objective_along_tour(rng):
    points = rng.uniform(-5, 5, (42, 3))
    seed = 17
    order = nearest_neighbor_tour(points, mix64(seed, "ic-start"))
    y = np.empty(42)
    y[order] = np.tile([0.0, 1.0], 21)  # alternating along the tour
    fv = compute_ic(Dataset(points, y), seed=seed)
    assert fv.values["ic.m0"] == 1.0
    assert fv.values["ic.h_max"] >= np.log(2.0) / np.log(6.0) - 1e-12


def test_ic_ranges(rng):
    points = lhs(100, 5, seed=3).points
    y = np.sin(points).sum(axis=1)
    fv = compute_ic(Dataset(points, y), seed=2)
    assert 0.0 <= fv.values["ic.h_max"] <= 1.0
    assert 0.0 <= fv.values["ic.m0"] <= 1.0


def test_ic_coincident_points_do_not_crash(rng):
    points = rng.uniform(-5, 5, (30, 3))
    points[4] = points[11]  # projection can collapse points
    y = rng.normal(size=30)
    fv = compute_ic(Dataset(points, y), seed=1)
    assert np.isfinite(fv.values["ic.h_max"])


# -- full vector --------------------------------------------------------------


def test_compute_all_schema_counts():
    assert len(FEATURE_NAMES) == 61
    counts = tuple(len(v) for v in FEATURE_SETS.values())
    assert counts == (3, 9, 9, 5, 16, 5, 6, 8)


def test_compute_all_on_sphere_sample():
    inst = make_instance(1, 0, 20)
    design = lhs(200, 20, seed=1)
    fv = compute_all(Dataset(design.points, evaluate_batch(inst, design.points)), seed=4)
    fv.validate_complete()
    assert set(fv.values) == set(FEATURE_NAMES)
    assert fv.values["ela_meta.quad_simple.adj_r2"] > 0.99


def test_compute_all_deterministic(rng):
    points = lhs(60, 4, seed=10).points
    y = np.sum(points ** 2, axis=1)
    a = compute_all(Dataset(points, y), seed=33)
    b = compute_all(Dataset(points, y), seed=33)
    for name in FEATURE_NAMES:
        va, vb = a.values[name], b.values[name]
        assert (va == vb) or (np.isnan(va) and np.isnan(vb))
        assert a.status[name] == b.status[name]

import numpy as np
import pytest

from elashift.doe import lhs


def assert_stratified(points, sample_size):
    # exactly one point per equal-width bin of [-5, 5] in every column
    bins = np.floor((points + 5.0) / (10.0 / sample_size)).astype(int)
    for j in range(points.shape[1]):
        assert sorted(bins[:, j]) == list(range(sample_size))


def test_stratification_small():
    design = lhs(4, 1, seed=3)
    assert_stratified(design.points, 4)


def test_stratification_large():
    design = lhs(200, 20, seed=11)
    assert_stratified(design.points, 200)


def test_determinism():
    a = lhs(200, 20, seed=123)
    b = lhs(200, 20, seed=123)
    assert np.array_equal(a.points, b.points)


def test_different_seeds_differ():
    assert not np.array_equal(lhs(50, 3, seed=1).points, lhs(50, 3, seed=2).points)


def test_points_strictly_inside_box():
    design = lhs(500, 10, seed=7)
    assert np.all(design.points > -5.0)
    assert np.all(design.points < 5.0)


def test_column_means_concentrate():
    # column mean sd ~ (10/sqrt(12))/sqrt(S) = 0.0645 at S = 2000; 0.25 is ~3.9 sigma
    design = lhs(2000, 20, seed=99)
    assert np.all(np.abs(design.points.mean(axis=0)) < 0.25)


@pytest.mark.parametrize("seed", [0, 5, 17])
def test_column_mean_bound_invariant(seed):
    for size in (50, 200):
        design = lhs(size, 8, seed=seed)
        bound = 4.0 * (10.0 / np.sqrt(12.0)) / np.sqrt(size)
        assert np.all(np.abs(design.points.mean(axis=0)) <= bound)


def test_domain_errors():
    with pytest.raises(ValueError):
        lhs(1, 3, seed=0)
    with pytest.raises(ValueError):
        lhs(10, 0, seed=0)

import numpy as np
import pytest

from elashift.ela.ols import (
    fit_ols,
    full_quadratic_basis,
    interaction_basis,
    linear_basis,
    pure_quadratic_basis,
)


def test_exact_linear_model():
    x = np.linspace(-3, 3, 25)[:, None]
    y = 2.0 + 3.0 * x[:, 0]
    fit = fit_ols(linear_basis(x), y)
    assert fit.intercept == pytest.approx(2.0, abs=1e-10)
    assert fit.coefficients[0] == pytest.approx(3.0, abs=1e-10)
    assert fit.adjusted_r2 == pytest.approx(1.0, abs=1e-12)
    assert not fit.degenerate


def test_intercept_centering_identity(rng):
    # beta0 == mean(y) - beta . column-means(X) for every fit
    for _ in range(25):
        X = rng.normal(size=(40, 6)) + rng.normal(size=6)
        y = rng.normal(size=40) * 10 + 5
        fit = fit_ols(linear_basis(X), y)
        expected = y.mean() - fit.coefficients @ X.mean(axis=0)
        assert fit.intercept == pytest.approx(expected, rel=1e-8)


def test_intercept_discrepancy_identity(rng):
    # independent fits on X and Z = M X satisfy
    # alpha0 - beta0 == (beta - M^T alpha) . mean(X)
    for _ in range(25):
        X = rng.normal(size=(60, 8)) + rng.normal(size=8)
        y = X @ rng.normal(size=8) + rng.normal(size=60)
        M = rng.normal(size=(3, 8)) / np.sqrt(3)
        Z = X @ M.T
        ambient = fit_ols(linear_basis(X), y)
        reduced = fit_ols(linear_basis(Z), y)
        lhs_value = reduced.intercept - ambient.intercept
        rhs_value = (ambient.coefficients - M.T @ reduced.coefficients) @ X.mean(axis=0)
        scale = max(abs(lhs_value), abs(rhs_value), 1.0)
        assert abs(lhs_value - rhs_value) / scale < 1e-8


def test_adjusted_r2_upper_bound(rng):
    for _ in range(10):
        X = rng.normal(size=(30, 4))
        y = rng.normal(size=30)
        fit = fit_ols(linear_basis(X), y)
        assert fit.adjusted_r2 <= 1.0


def test_rank_deficient_design_flagged(rng):
    X = rng.normal(size=(20, 3))
    X = np.hstack([X, X[:, :1]])  # duplicated column
    fit = fit_ols(linear_basis(X), rng.normal(size=20))
    assert fit.degenerate
    assert np.isfinite(fit.intercept)


def test_underdetermined_design_flagged(rng):
    X = rng.normal(size=(10, 12))
    fit = fit_ols(linear_basis(X), rng.normal(size=10))
    assert fit.degenerate


def test_constant_objective_flagged(rng):
    fit = fit_ols(linear_basis(rng.normal(size=(15, 2))), np.full(15, 3.0))
    assert fit.degenerate


def test_basis_shapes(rng):
    X = rng.normal(size=(11, 4))
    assert linear_basis(X).shape == (11, 4)
    assert interaction_basis(X).shape == (11, 4 + 6)
    assert pure_quadratic_basis(X).shape == (11, 8)
    assert full_quadratic_basis(X).shape == (11, 8 + 6)

"""Ordinary least squares with an intercept, plus the basis expansions used
by the meta-model features.

The intercept is always constructed from the first-order optimality condition
beta0 = mean(y) - beta . mean(X), so the centering identity holds for every
fit by construction.  Rank-deficient or under-determined designs fall back to
a ridge-stabilized solve and are flagged degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RIDGE_FACTOR = 1e-8


@dataclass(frozen=True)
class OlsFit:
    intercept: float
    coefficients: np.ndarray
    adjusted_r2: float
    basis: str
    rank: int
    degenerate: bool


def linear_basis(X: np.ndarray) -> np.ndarray:
    return np.asarray(X, dtype=float)


def interaction_basis(X: np.ndarray) -> np.ndarray:
    s, p = X.shape
    iu, ju = np.triu_indices(p, k=1)
    return np.hstack([X, X[:, iu] * X[:, ju]])


def pure_quadratic_basis(X: np.ndarray) -> np.ndarray:
    return np.hstack([X, X * X])


def full_quadratic_basis(X: np.ndarray) -> np.ndarray:
    iu, ju = np.triu_indices(X.shape[1], k=1)
    return np.hstack([X, X * X, X[:, iu] * X[:, ju]])


def fit_ols(design: np.ndarray, objectives: np.ndarray, basis: str = "linear") -> OlsFit:
    """Least-squares fit of y on the given basis columns plus an intercept."""
    W = np.asarray(design, dtype=float)
    y = np.asarray(objectives, dtype=float)
    s, n_cols = W.shape
    if len(y) != s:
        raise ValueError("design and objectives disagree on sample count")

    col_means = W.mean(axis=0)
    y_mean = y.mean()
    Wc = W - col_means
    yc = y - y_mean

    coef, _, rank, _ = np.linalg.lstsq(Wc, yc, rcond=None)
    degenerate = rank < n_cols or s < n_cols + 2
    if degenerate:
        # ridge-stabilized solve; effective parameter count is the rank
        gram = Wc.T @ Wc
        lam = RIDGE_FACTOR * (np.trace(gram) / n_cols if n_cols else 0.0)
        coef = np.linalg.solve(gram + lam * np.eye(n_cols), Wc.T @ yc)

    intercept = y_mean - float(coef @ col_means)
    residual = yc - Wc @ coef
    sst = float(yc @ yc)
    if sst == 0.0:
        return OlsFit(intercept=intercept, coefficients=coef, adjusted_r2=float("nan"),
                      basis=basis, rank=int(rank), degenerate=True)
    r2 = 1.0 - float(residual @ residual) / sst
    p_eff = int(rank) if degenerate else n_cols
    denom = s - p_eff - 1
    if denom <= 0:
        adj = float("nan")
        degenerate = True
    else:
        adj = 1.0 - (1.0 - r2) * (s - 1) / denom
    return OlsFit(intercept=intercept, coefficients=coef, adjusted_r2=adj,
                  basis=basis, rank=int(rank), degenerate=degenerate)

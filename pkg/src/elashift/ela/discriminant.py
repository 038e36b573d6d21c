"""Gaussian linear and quadratic discriminant classifiers with seeded
stratified cross-validation, used by the level-set features.

Covariance estimates are ridge-regularized with (1e-8 * trace / p) * I so
projected, densified samples cannot produce singular estimates.
"""

from __future__ import annotations

import numpy as np

from ..seeds import generator

RIDGE_FACTOR = 1e-8


class DegenerateSplit(Exception):
    """A cross-validation split cannot support both classes."""


def _regularized_eig(cov: np.ndarray):
    p = cov.shape[0]
    lam = RIDGE_FACTOR * np.trace(cov) / p
    evals, evecs = np.linalg.eigh(cov)
    evals = evals + lam
    if np.any(evals <= 0):
        raise DegenerateSplit("covariance estimate is not positive definite")
    return evals, evecs


class _LDA:
    def fit(self, X, labels):
        self.classes = np.unique(labels)
        if len(self.classes) < 2:
            raise DegenerateSplit("training fold contains a single class")
        n, p = X.shape
        self.means = np.array([X[labels == c].mean(axis=0) for c in self.classes])
        pooled = np.zeros((p, p))
        for c, mu in zip(self.classes, self.means):
            diff = X[labels == c] - mu
            pooled += diff.T @ diff
        pooled /= max(n - len(self.classes), 1)
        self.evals, self.evecs = _regularized_eig(pooled)
        self.log_priors = np.log(
            np.array([(labels == c).mean() for c in self.classes])
        )
        return self

    def predict(self, X):
        # score_c(x) = x' S^-1 mu_c - 0.5 mu_c' S^-1 mu_c + log prior_c
        white_x = (X @ self.evecs) / np.sqrt(self.evals)
        white_mu = (self.means @ self.evecs) / np.sqrt(self.evals)
        scores = white_x @ white_mu.T - 0.5 * np.sum(white_mu * white_mu, axis=1)
        scores = scores + self.log_priors
        return self.classes[np.argmax(scores, axis=1)]


class _QDA:
    def fit(self, X, labels):
        self.classes = np.unique(labels)
        if len(self.classes) < 2:
            raise DegenerateSplit("training fold contains a single class")
        self.params = []
        for c in self.classes:
            sub = X[labels == c]
            if len(sub) < 2:
                raise DegenerateSplit("class too small for a covariance estimate")
            mu = sub.mean(axis=0)
            diff = sub - mu
            cov = diff.T @ diff / (len(sub) - 1)
            evals, evecs = _regularized_eig(cov)
            log_det = float(np.sum(np.log(evals)))
            prior = len(sub) / len(X)
            self.params.append((mu, evals, evecs, log_det, np.log(prior)))
        return self

    def predict(self, X):
        scores = np.empty((X.shape[0], len(self.classes)))
        for j, (mu, evals, evecs, log_det, log_prior) in enumerate(self.params):
            white = ((X - mu) @ evecs) / np.sqrt(evals)
            maha = np.sum(white * white, axis=1)
            scores[:, j] = -0.5 * log_det - 0.5 * maha + log_prior
        return self.classes[np.argmax(scores, axis=1)]


def stratified_folds(labels: np.ndarray, n_folds: int, seed: int):
    """Deal each class round-robin into seeded-shuffled folds."""
    rng = generator(seed)
    folds = [[] for _ in range(n_folds)]
    for c in np.unique(labels):
        idx = np.flatnonzero(labels == c)
        idx = idx[rng.permutation(len(idx))]
        for k, i in enumerate(idx):
            folds[k % n_folds].append(int(i))
    return [np.sort(np.array(f, dtype=int)) for f in folds]


def cross_validated_mmce(points: np.ndarray, labels: np.ndarray, seed: int,
                         n_folds: int = 10):
    """Mean misclassification error of LDA and QDA under stratified CV.

    Returns (mmce_lda, mmce_qda); raises DegenerateSplit when the class
    structure cannot support the requested folds.
    """
    counts = np.bincount(labels.astype(int), minlength=2)
    n_folds = min(n_folds, int(counts.min()))
    if n_folds < 2:
        raise DegenerateSplit("a class is too small for cross-validation")
    folds = stratified_folds(labels, n_folds, seed)
    errors_lda, errors_qda = [], []
    all_idx = np.arange(len(labels))
    for test_idx in folds:
        train_mask = np.ones(len(labels), dtype=bool)
        train_mask[test_idx] = False
        train_idx = all_idx[train_mask]
        lda = _LDA().fit(points[train_idx], labels[train_idx])
        qda = _QDA().fit(points[train_idx], labels[train_idx])
        truth = labels[test_idx]
        errors_lda.append(float(np.mean(lda.predict(points[test_idx]) != truth)))
        errors_qda.append(float(np.mean(qda.predict(points[test_idx]) != truth)))
    return float(np.mean(errors_lda)), float(np.mean(errors_qda))

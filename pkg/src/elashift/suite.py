"""Noiseless BBOB-style benchmark suite with seeded per-instance transforms.

The 24 base function definitions follow the published BBOB single-objective
taxonomy (five difficulty groups).  Instances are generated by our own
counter-based seeding scheme and are deliberately NOT bit-compatible with the
COCO platform: the optimum location is drawn uniformly from [-4, 4]^D, the
optimal value from [-100, 100], and orthogonal transforms come from a
QR factorization of a seeded standard-normal matrix.  The catalog is
documented in docs/functions.md.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .seeds import generator, mix64

LOWER = -5.0
UPPER = 5.0


class Group(enum.Enum):
    SEPARABLE = "separable"
    MODERATE_CONDITIONING = "low-or-moderate-conditioning"
    HIGH_CONDITIONING_UNIMODAL = "high-conditioning-unimodal"
    MULTIMODAL_GLOBAL = "multimodal-adequate-global-structure"
    MULTIMODAL_WEAK = "multimodal-weak-global-structure"


FUNCTION_NAMES = {
    1: "Sphere",
    2: "Ellipsoidal (separable)",
    3: "Rastrigin (separable)",
    4: "Bueche-Rastrigin",
    5: "Linear slope",
    6: "Attractive sector",
    7: "Step ellipsoid",
    8: "Rosenbrock",
    9: "Rosenbrock (rotated)",
    10: "Ellipsoidal (rotated)",
    11: "Discus",
    12: "Bent cigar",
    13: "Sharp ridge",
    14: "Sum of different powers",
    15: "Rastrigin (rotated)",
    16: "Weierstrass",
    17: "Schaffer F7 (condition 10)",
    18: "Schaffer F7 (condition 1000)",
    19: "Griewank-Rosenbrock",
    20: "Schwefel",
    21: "Gallagher 101 peaks",
    22: "Gallagher 21 peaks",
    23: "Katsuura",
    24: "Lunacek bi-Rastrigin",
}


def function_group(function_id: int) -> Group:
    if 1 <= function_id <= 5:
        return Group.SEPARABLE
    if 6 <= function_id <= 9:
        return Group.MODERATE_CONDITIONING
    if 10 <= function_id <= 14:
        return Group.HIGH_CONDITIONING_UNIMODAL
    if 15 <= function_id <= 19:
        return Group.MULTIMODAL_GLOBAL
    return Group.MULTIMODAL_WEAK


@dataclass(frozen=True)
class SearchDomain:
    dimension: int
    lower: float = LOWER
    upper: float = UPPER


@dataclass(frozen=True)
class ProblemInstance:
    """A seeded, transformed benchmark function with known optimum."""

    function_id: int
    instance_id: int
    dimension: int
    x_opt: np.ndarray
    f_opt: float
    rotation_seeds: tuple
    group: Group

    @property
    def domain(self) -> SearchDomain:
        return SearchDomain(self.dimension)


# ---------------------------------------------------------------------------
# transform helpers (BBOB conventions)
# ---------------------------------------------------------------------------


def _rotation(seed: int, dim: int) -> np.ndarray:
    """Orthogonal factor of a QR factorization of a seeded Gaussian matrix,
    sign-corrected so the triangular factor has positive diagonal."""
    rng = generator(seed)
    m = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(m)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def _lam(alpha: float, dim: int) -> np.ndarray:
    return alpha ** (0.5 * np.arange(dim) / (dim - 1))


def _t_osc(z):
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    pos = z > 0
    neg = z < 0
    xhat = np.where(z == 0, 0.0, np.log(np.abs(np.where(z == 0, 1.0, z))))
    out[pos] = np.exp(xhat[pos] + 0.049 * (np.sin(10.0 * xhat[pos]) + np.sin(7.9 * xhat[pos])))
    out[neg] = -np.exp(xhat[neg] + 0.049 * (np.sin(5.5 * xhat[neg]) + np.sin(3.1 * xhat[neg])))
    return out


def _t_asy(z: np.ndarray, beta: float) -> np.ndarray:
    dim = z.shape[-1]
    expo = 1.0 + beta * (np.arange(dim) / (dim - 1)) * np.sqrt(np.maximum(z, 0.0))
    return np.where(z > 0, np.maximum(z, 0.0) ** expo, z)


def _penalty(x: np.ndarray) -> np.ndarray:
    out = np.maximum(0.0, np.abs(x) - 5.0)
    return np.sum(out * out, axis=1)


# ---------------------------------------------------------------------------
# per-instance parameters
# ---------------------------------------------------------------------------


def _xopt_rng(fid: int, iid: int, dim: int) -> np.random.Generator:
    return generator(mix64("suite-xopt", fid, iid, dim))


def _rotation_seeds(fid: int, iid: int, dim: int) -> tuple:
    return (mix64("suite-rot-r", fid, iid, dim), mix64("suite-rot-q", fid, iid, dim))


@lru_cache(maxsize=512)
def _params(fid: int, iid: int, dim: int) -> dict:
    """All deterministic transform parameters of one instance."""
    rng = _xopt_rng(fid, iid, dim)
    u = rng.uniform(-4.0, 4.0, dim)
    f_opt = float(generator(mix64("suite-fopt", fid, iid, dim)).uniform(-100.0, 100.0))
    seed_r, seed_q = _rotation_seeds(fid, iid, dim)

    p = {"f_opt": f_opt, "dim": dim}
    rot_r = None
    rot_q = None
    if fid in (6, 7, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 21, 22, 23, 24):
        rot_r = _rotation(seed_r, dim)
        p["R"] = rot_r
    if fid in (6, 7, 13, 15, 16, 17, 18, 23, 24):
        rot_q = _rotation(seed_q, dim)
        p["Q"] = rot_q

    x_opt = u
    if fid == 4:
        x_opt = u.copy()
        x_opt[::2] = np.abs(x_opt[::2])
    elif fid == 5:
        signs = np.sign(u)
        signs[signs == 0] = 1.0
        x_opt = 5.0 * signs
        p["slope"] = signs * 10.0 ** (np.arange(dim) / (dim - 1))
    elif fid == 8:
        x_opt = 0.75 * u
        p["scale"] = max(1.0, np.sqrt(dim) / 8.0)
    elif fid in (9, 19):
        scale = max(1.0, np.sqrt(dim) / 8.0)
        p["scale"] = scale
        x_opt = (np.full((1, dim), 0.5 / scale) @ rot_r)[0]
    elif fid == 20:
        signs = np.sign(u)
        signs[signs == 0] = 1.0
        x_opt = 0.5 * 4.2096874633 * signs
        p["signs"] = signs
        p["lam"] = _lam(10.0, dim)
    elif fid in (21, 22):
        n_peaks = 101 if fid == 21 else 21
        peak_rng = generator(mix64("suite-peaks", fid, iid, dim))
        locs = peak_rng.uniform(-4.9, 4.9, (n_peaks, dim))
        locs[0] = (x_opt[None, :] @ rot_r.T)[0]
        top_cond = np.sqrt(1000.0) if fid == 21 else 1000.0
        conds = 1000.0 ** np.linspace(0, 1, n_peaks - 1)
        conds = conds[peak_rng.permutation(n_peaks - 1)]
        conds = np.concatenate([[top_cond], conds])
        scales = np.empty((n_peaks, dim))
        for i, c in enumerate(conds):
            s = c ** np.linspace(-0.5, 0.5, dim)
            scales[i] = s[peak_rng.permutation(dim)]
        p["peak_locs"] = locs
        p["peak_scales"] = scales
        p["peak_values"] = np.concatenate([[10.0], np.linspace(1.1, 9.1, n_peaks - 1)])
    elif fid == 24:
        signs = np.sign(u)
        signs[signs == 0] = 1.0
        x_opt = 1.25 * signs
        p["signs"] = signs
        p["M"] = rot_q @ (_lam(100.0, dim)[:, None] * rot_r)

    if fid == 6:
        p["M"] = rot_q @ (_lam(10.0, dim)[:, None] * rot_r)
    elif fid == 7:
        p["M_in"] = _lam(10.0, dim)[:, None] * rot_r
        p["scales"] = 100.0 ** (np.arange(dim) / (dim - 1))
    elif fid == 13:
        p["M"] = rot_q @ (_lam(10.0, dim)[:, None] * rot_r)
    elif fid == 16:
        k = np.arange(12)
        p["ak"] = 0.5 ** k
        p["bk"] = 3.0 ** k
        p["f0"] = float(np.sum(p["ak"] * np.cos(np.pi * p["bk"])))
        p["lam"] = _lam(1.0 / 100.0, dim)
    elif fid in (17, 18):
        p["lam"] = _lam(10.0 if fid == 17 else 1000.0, dim)
    elif fid == 23:
        p["M"] = rot_q @ (_lam(100.0, dim)[:, None] * rot_r)

    p["x_opt"] = x_opt
    return p


def make_instance(function_id: int, instance_id: int, dimension: int) -> ProblemInstance:
    """Construct a deterministic problem instance.

    Same (function_id, instance_id, dimension) always reconstructs
    bit-identical transform parameters.
    """
    if not 1 <= function_id <= 24:
        raise ValueError(f"function_id must be in 1..24, got {function_id}")
    if dimension < 2:
        raise ValueError(f"dimension must be >= 2, got {dimension}")
    if instance_id < 0:
        raise ValueError(f"instance_id must be >= 0, got {instance_id}")
    p = _params(function_id, instance_id, dimension)
    return ProblemInstance(
        function_id=function_id,
        instance_id=instance_id,
        dimension=dimension,
        x_opt=p["x_opt"].copy(),
        f_opt=p["f_opt"],
        rotation_seeds=_rotation_seeds(function_id, instance_id, dimension),
        group=function_group(function_id),
    )


# ---------------------------------------------------------------------------
# function cores: take (params, X) with X of shape (S, D), return raw values
# (boundary penalty included, optimal offset excluded)
# ---------------------------------------------------------------------------


def _f1(p, X):
    z = X - p["x_opt"]
    return np.sum(z * z, axis=1)


def _f2(p, X):
    dim = p["dim"]
    z = _t_osc(X - p["x_opt"])
    return np.sum(1e6 ** (np.arange(dim) / (dim - 1)) * z * z, axis=1)


def _f3(p, X):
    dim = p["dim"]
    z = _t_asy(_t_osc(X - p["x_opt"]), 0.2) * _lam(10.0, dim)
    return 10.0 * (dim - np.sum(np.cos(2 * np.pi * z), axis=1)) + np.sum(z * z, axis=1)


def _f4(p, X):
    dim = p["dim"]
    z = _t_osc(X - p["x_opt"])
    s = np.tile(10.0 ** (0.5 * np.arange(dim) / (dim - 1)), (X.shape[0], 1))
    odd = np.zeros(dim, dtype=bool)
    odd[::2] = True
    s[(z > 0) & odd] *= 10.0
    z = s * z
    core = 10.0 * (dim - np.sum(np.cos(2 * np.pi * z), axis=1)) + np.sum(z * z, axis=1)
    return core + 100.0 * _penalty(X)


def _f5(p, X):
    x_opt = p["x_opt"]
    s = p["slope"]
    z = np.where(X * x_opt < 25.0, X, x_opt)
    return np.sum(5.0 * np.abs(s) - s * z, axis=1)


def _f6(p, X):
    z = (X - p["x_opt"]) @ p["M"].T
    zs = np.where(z * p["x_opt"] > 0, 100.0 * z, z)
    return _t_osc(np.sum(zs * zs, axis=1)) ** 0.9


def _f7(p, X):
    zhat = (X - p["x_opt"]) @ p["M_in"].T
    big = np.abs(zhat) > 0.5
    ztilde = np.where(big, np.floor(0.5 + zhat), np.floor(0.5 + 10.0 * zhat) / 10.0)
    z = ztilde @ p["Q"].T
    core = 0.1 * np.maximum(1e-4 * np.abs(zhat[:, 0]), np.sum(p["scales"] * z * z, axis=1))
    return core + _penalty(X)


def _rosenbrock(z):
    return np.sum(100.0 * (z[:, :-1] ** 2 - z[:, 1:]) ** 2 + (z[:, :-1] - 1.0) ** 2, axis=1)


def _f8(p, X):
    z = p["scale"] * (X - p["x_opt"]) + 1.0
    return _rosenbrock(z)


def _f9(p, X):
    z = p["scale"] * (X @ p["R"].T) + 0.5
    return _rosenbrock(z)


def _f10(p, X):
    dim = p["dim"]
    z = _t_osc((X - p["x_opt"]) @ p["R"].T)
    return np.sum(1e6 ** (np.arange(dim) / (dim - 1)) * z * z, axis=1)


def _f11(p, X):
    z = _t_osc((X - p["x_opt"]) @ p["R"].T)
    return 1e6 * z[:, 0] ** 2 + np.sum(z[:, 1:] ** 2, axis=1)


def _f12(p, X):
    z = _t_asy((X - p["x_opt"]) @ p["R"].T, 0.5) @ p["R"].T
    return z[:, 0] ** 2 + 1e6 * np.sum(z[:, 1:] ** 2, axis=1)


def _f13(p, X):
    z = (X - p["x_opt"]) @ p["M"].T
    return z[:, 0] ** 2 + 100.0 * np.sqrt(np.sum(z[:, 1:] ** 2, axis=1))


def _f14(p, X):
    dim = p["dim"]
    z = (X - p["x_opt"]) @ p["R"].T
    expo = 2.0 + 4.0 * np.arange(dim) / (dim - 1)
    return np.sqrt(np.sum(np.abs(z) ** expo, axis=1))


def _f15(p, X):
    dim = p["dim"]
    z = _t_asy(_t_osc((X - p["x_opt"]) @ p["R"].T), 0.2)
    z = (z @ p["Q"].T * _lam(10.0, dim)) @ p["R"].T
    return 10.0 * (dim - np.sum(np.cos(2 * np.pi * z), axis=1)) + np.sum(z * z, axis=1)


def _f16(p, X):
    dim = p["dim"]
    z = _t_osc((X - p["x_opt"]) @ p["R"].T)
    z = (z @ p["Q"].T * p["lam"]) @ p["R"].T
    inner = np.sum(p["ak"] * np.cos(2 * np.pi * p["bk"] * (z[..., None] + 0.5)), axis=2)
    core = 10.0 * (np.sum(inner, axis=1) / dim - p["f0"]) ** 3
    return core + (10.0 / dim) * _penalty(X)


def _schaffers(p, X):
    z = _t_asy((X - p["x_opt"]) @ p["R"].T, 0.5) @ p["Q"].T * p["lam"]
    s = z[:, :-1] ** 2 + z[:, 1:] ** 2
    core = np.mean(s ** 0.25 * (np.sin(50.0 * s ** 0.1) ** 2 + 1.0), axis=1) ** 2
    return core + 10.0 * _penalty(X)


def _f19(p, X):
    dim = p["dim"]
    z = p["scale"] * (X @ p["R"].T) + 0.5
    s = 100.0 * (z[:, :-1] ** 2 - z[:, 1:]) ** 2 + (z[:, :-1] - 1.0) ** 2
    return 10.0 + 10.0 * np.sum(s / 4000.0 - np.cos(s), axis=1) / (dim - 1)


def _f20(p, X):
    dim = p["dim"]
    xopt2 = 2.0 * np.abs(p["x_opt"])
    xhat = 2.0 * p["signs"] * X
    zhat = xhat.copy()
    zhat[:, 1:] += 0.25 * (xhat[:, :-1] - xopt2[:-1])
    z = 100.0 * (p["lam"] * (zhat - xopt2) + xopt2)
    pen = 0.01 * np.sum(np.maximum(0.0, np.abs(z) - 500.0) ** 2, axis=1)
    core = 0.01 * (418.9828872724339 - np.mean(z * np.sin(np.sqrt(np.abs(z))), axis=1))
    return core + pen


def _gallagher(p, X):
    dim = p["dim"]
    u = X @ p["R"].T
    diff = u[:, None, :] - p["peak_locs"][None, :, :]
    quad = np.sum(p["peak_scales"][None, :, :] * diff * diff, axis=2)
    vals = p["peak_values"][None, :] * np.exp(-0.5 / dim * quad)
    core = _t_osc(10.0 - np.max(vals, axis=1)) ** 2
    return core + _penalty(X)


def _f23(p, X):
    dim = p["dim"]
    z = (X - p["x_opt"]) @ p["M"].T
    two_k = 2.0 ** np.arange(1, 33)
    arr = z[..., None] * two_k
    k = np.sum(np.abs(arr - np.round(arr)) / two_k, axis=2)
    prod = np.prod(1.0 + np.arange(1, dim + 1) * k, axis=1) ** (10.0 / dim ** 1.2)
    return 10.0 / dim ** 2 * prod - 10.0 / dim ** 2 + _penalty(X)


def _f24(p, X):
    dim = p["dim"]
    mu1 = 2.5
    s = 1.0 - 0.5 / (np.sqrt(dim + 20.0) - 4.1)
    mu2 = -np.sqrt((mu1 ** 2 - 1.0) / s)
    xhat = 2.0 * p["signs"] * X
    left = np.sum((xhat - mu1) ** 2, axis=1)
    right = dim + s * np.sum((xhat - mu2) ** 2, axis=1)
    z = (xhat - mu1) @ p["M"].T
    core = np.minimum(left, right) + 10.0 * (dim - np.sum(np.cos(2 * np.pi * z), axis=1))
    return core + 1e4 * _penalty(X)


_CORES = {
    1: _f1, 2: _f2, 3: _f3, 4: _f4, 5: _f5, 6: _f6, 7: _f7, 8: _f8, 9: _f9,
    10: _f10, 11: _f11, 12: _f12, 13: _f13, 14: _f14, 15: _f15, 16: _f16,
    17: _schaffers, 18: _schaffers, 19: _f19, 20: _f20, 21: _gallagher,
    22: _gallagher, 23: _f23, 24: _f24,
}


def evaluate_batch(instance: ProblemInstance, X: np.ndarray) -> np.ndarray:
    """Evaluate one instance at every row of an (S, D) matrix."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != instance.dimension:
        raise ValueError(
            f"points must have shape (S, {instance.dimension}), got {X.shape}"
        )
    if not np.all(np.isfinite(X)):
        raise ValueError("points contain non-finite coordinates")
    p = _params(instance.function_id, instance.instance_id, instance.dimension)
    return _CORES[instance.function_id](p, X) + instance.f_opt


def evaluate(instance: ProblemInstance, x) -> float:
    """Evaluate one instance at a single point."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != instance.dimension:
        raise ValueError(f"point must have length {instance.dimension}, got shape {x.shape}")
    return float(evaluate_batch(instance, x[None, :])[0])

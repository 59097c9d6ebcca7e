"""Seeded power iteration on sparse symmetric operators."""

from __future__ import annotations

import warnings

import numpy as np


def power_iteration(matvec, n, max_iters=100, tol=1e-7, seed=0,
                    stop="rayleigh"):
    """Estimate the dominant Rayleigh quotient of a symmetric operator.

    Iterates v <- matvec(v) from a seeded random unit start. With
    stop="rayleigh" the loop ends when the relative change of the Rayleigh
    quotient drops below ``tol``; with stop="residual" it ends when the
    relative eigen-residual ||matvec(v) - ray*v|| / max(|ray|, 1) does.
    Returns (rayleigh, unit_vector, residual).
    """
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    w = matvec(v)
    ray = float(v @ w)
    residual = float(np.linalg.norm(w - ray * v))
    for _ in range(max_iters):
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0, v, 0.0
        v_new = w / norm
        w = matvec(v_new)
        new_ray = float(v_new @ w)
        residual = float(np.linalg.norm(w - new_ray * v_new))
        if stop == "residual":
            done = residual <= tol * max(abs(new_ray), 1.0)
        else:
            done = abs(new_ray - ray) <= tol * max(abs(new_ray), 1e-300)
        v, ray = v_new, new_ray
        if done:
            break
    return ray, v, residual


def dominant_eigenpair(adj, w_max, max_iters=1000, tol=1e-8, seed=0):
    """Largest-magnitude eigenpair of a non-negative symmetric sparse matrix.

    For such matrices the spectral radius equals the top eigenvalue, so the
    iteration runs on the shifted operator A + w_max*I, whose top eigenvalue
    is strictly dominant in magnitude even for bipartite graphs. Falls back
    to a 10x longer run before warning about non-convergence.
    """
    shift = max(w_max, 1e-12)

    def shifted(v):
        return adj @ v + shift * v

    n = adj.shape[0]
    for budget in (max_iters, 10 * max_iters):
        ray, vec, residual = power_iteration(shifted, n, budget, tol, seed,
                                             stop="residual")
        if residual <= tol * max(abs(ray), 1.0):
            return ray - shift, vec, residual
    warnings.warn(
        f"power iteration residual {residual:.3e} after {10 * max_iters} "
        "iterations; eigenpair estimate may be inaccurate",
        RuntimeWarning, stacklevel=2)
    return ray - shift, vec, residual


def second_singular_value(adj, sigma1, v1, max_iters=1000, tol=1e-7, seed=1):
    """Second-largest singular value via single deflation.

    Deflates the dominant eigenpair and power-iterates on the squared
    deflated operator (symmetric PSD, so no sign oscillation); the square
    root of its Rayleigh quotient is sigma_2.
    """
    eig1 = sigma1 if float(v1 @ (adj @ v1)) >= 0 else -sigma1

    def deflated(v):
        return adj @ v - eig1 * v1 * (v1 @ v)

    def squared(v):
        return deflated(deflated(v))

    ray, _, _ = power_iteration(squared, adj.shape[0], max_iters, tol, seed,
                                stop="rayleigh")
    return float(np.sqrt(max(ray, 0.0))), ray

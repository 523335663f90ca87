"""Latent vertex weights and positions."""
from __future__ import annotations

import numpy as np

from ..errors import ParameterError

__all__ = ["pareto_quantile", "sample_weights", "sample_positions",
           "supergraph_weights"]


def pareto_quantile(u, tau: float):
    """Inverse CDF of the Pareto law with density (tau-1) w^(-tau) on [1, inf)."""
    if tau <= 2:
        raise ParameterError(f"tau must be > 2, got {tau}")
    return (1.0 - np.asarray(u, dtype=np.float64)) ** (-1.0 / (tau - 1.0))


def sample_weights(n: int, tau: float, rng: np.random.Generator) -> np.ndarray:
    """n iid Pareto(tau) weights via inverse-CDF sampling."""
    return pareto_quantile(rng.random(n), tau)


def sample_positions(n: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """n uniform points in [0,1)^dim."""
    return rng.random((n, dim))


def supergraph_weights(weights, sigma: float) -> np.ndarray:
    """Transformed weights whose product kernel dominates the sigma kernel.

    Returns ``w'`` such that the plain product-kernel graph on ``w'`` (total
    ``W' = sum w'``) is a supergraph of the tuned-kernel graph on ``w``:
    for every pair with ``w_u >= w_v``, either the supergraph probability is
    already 1 or ``w'_u w'_v / W' >= w_u w_v^sigma / W``.

    sigma == 1 is the identity.  For sigma < 1 every weight is scaled by
    ``w_min^(sigma-1)``, which dominates exactly.  For sigma > 1 the
    two-step construction boosts each weight by
    ``min(W^(1/(sigma+1)), w)^((sigma-1)/2)`` and rescales the total; the
    escape to probability 1 is only ever taken by weights above
    ``W^(1/(sigma+1))``.
    """
    w = np.asarray(weights, dtype=np.float64)
    if sigma < 0:
        raise ParameterError("sigma must be >= 0")
    if w.size == 0 or sigma == 1.0:
        return w.copy()
    if np.any(w < 1):
        raise ParameterError("weights must be >= 1")
    if sigma < 1.0:
        return w * (w.min() ** (sigma - 1.0))
    total = w.sum()
    boosted = w * np.minimum(total ** (1.0 / (sigma + 1.0)), w) ** ((sigma - 1.0) / 2.0)
    return boosted * (boosted.sum() / total)

"""Torus geometry and edge-probability kernels.

The kernel shape shared by all weight-based models is
``min(c * (w_u min w_v)^sigma * (w_u max w_v) / (W * dist^d), 1) ** alpha``
with the ``dist^d`` factor dropped for the non-geometric models and the
exponent only applied in the geometric case.  ``alpha = inf`` replaces the
power by a hard threshold.  The free scale ``c`` sits inside the min, i.e.
before capping and exponentiation; average-degree calibration tunes it.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import ParameterError
from .params import ModelParams

__all__ = ["torus_distance", "kernel_weight_term", "connection_probability"]


def torus_distance(x, y):
    """Max-norm distance on the unit torus.

    Accepts single points of shape ``(d,)`` or batches ``(..., d)``; the two
    arguments broadcast against each other.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape[-1] != y.shape[-1]:
        raise ParameterError(f"dimension mismatch: {x.shape[-1]} vs {y.shape[-1]}")
    diff = np.abs(x - y)
    wrapped = np.minimum(diff, 1.0 - diff)
    return wrapped.max(axis=-1)


def kernel_weight_term(w_u, w_v, sigma: float):
    """``(w_u min w_v)^sigma * (w_u max w_v)``, broadcasting."""
    w_u = np.asarray(w_u, dtype=np.float64)
    w_v = np.asarray(w_v, dtype=np.float64)
    return np.minimum(w_u, w_v) ** sigma * np.maximum(w_u, w_v)


def connection_probability(w_u, w_v, dist, params: ModelParams, scale: float,
                           total_weight: float):
    """Edge probability for one or many pairs under ``params``.

    ``dist`` is ignored for the non-geometric models (pass None).  At
    ``dist == 0`` the geometric kernel diverges and the probability is 1.
    """
    if scale <= 0:
        raise ParameterError("scale must be > 0")
    kappa = kernel_weight_term(w_u, w_v, params.effective_sigma)
    if not params.is_geometric:
        return np.minimum(scale * kappa / total_weight, 1.0)
    dist = np.asarray(dist, dtype=np.float64)
    distd = dist ** params.dim
    if math.isinf(params.alpha):
        return (total_weight * distd <= scale * kappa).astype(np.float64)
    with np.errstate(divide="ignore"):
        arg = np.minimum(scale * kappa / (total_weight * distd), 1.0)
    return arg ** params.alpha

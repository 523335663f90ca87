"""Reference O(n^2) sampler: one Bernoulli trial per vertex pair.

Slow but direct; it is the distributional oracle the fast samplers are
tested against.  Capped at NAIVE_VERTEX_CAP vertices.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import ParameterError
from ..graph import Graph
from .kernels import connection_probability
from .params import ModelParams, NAIVE_VERTEX_CAP

__all__ = ["generate_naive"]


def generate_naive(params: ModelParams, weights, positions, scale: float,
                   rng: np.random.Generator, vertex_cap: int = NAIVE_VERTEX_CAP) -> Graph:
    """Sample a graph by independent per-pair trials.

    ``weights`` may be None for rgg-style unit weights; ``positions`` must be
    an (n, dim) array for geometric models and None otherwise.  Deterministic
    given (inputs, rng state): row u draws its n-u-1 uniforms in one block.
    """
    n = params.n
    if n > vertex_cap:
        raise ParameterError(
            f"n={n} exceeds the naive cap {vertex_cap}; use the fast sampler")
    if n == 0:
        return Graph.from_edges(0, np.empty((0, 2), dtype=np.int64))
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=np.float64)
    total = w.sum()
    threshold = math.isinf(params.alpha) and params.is_geometric
    src = []
    dst = []
    for u in range(n - 1):
        vs = np.arange(u + 1, n)
        if params.is_geometric:
            diff = np.abs(positions[vs] - positions[u])
            dist = np.minimum(diff, 1.0 - diff).max(axis=1)
        else:
            dist = None
        p = connection_probability(w[u], w[vs], dist, params, scale, total)
        if threshold:
            hit = p > 0
        else:
            hit = rng.random(len(vs)) < p
        picked = vs[hit]
        if picked.size:
            src.append(np.full(picked.size, u, dtype=np.int64))
            dst.append(picked)
    if src:
        pairs = np.column_stack([np.concatenate(src), np.concatenate(dst)])
    else:
        pairs = np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(n, pairs)

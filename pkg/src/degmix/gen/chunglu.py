"""Fast exact sampler for (tunable) Chung-Lu graphs.

Weights are sorted descending; each row u then walks columns v > u whose
connection probability q = min(1, c * w_u * w_v^sigma / W) is non-increasing,
so geometric skipping under the most recent q with an acceptance correction
visits each pair with exactly probability q (Miller-Hagberg scheme).  All
rows advance together in vectorized rounds; total work is O(n + m).
"""
from __future__ import annotations

import numpy as np

from ..graph import Graph
from ..rng import PHASE_EDGES, PHASE_WEIGHTS, as_generator, stream
from .params import ModelParams
from .weights import sample_weights

__all__ = ["generate_chung_lu_fast"]


def generate_chung_lu_fast(params: ModelParams, scale: float, *, weights=None,
                           rng=None, return_latents=False):
    n = params.n
    if weights is None:
        weights = sample_weights(n, params.tau, stream(params.seed, PHASE_WEIGHTS))
    else:
        weights = np.asarray(weights, dtype=np.float64)
    rng = as_generator(rng if rng is not None else stream(params.seed, PHASE_EDGES))
    sigma = params.effective_sigma
    if n < 2:
        g = Graph.from_edges(max(n, 0), np.empty((0, 2), dtype=np.int64))
        return (g, weights) if return_latents else g

    order = np.argsort(-weights, kind="stable")
    ws = weights[order]
    total = weights.sum()
    coef = scale / total

    rows = np.arange(n - 1, dtype=np.int64)
    cols = rows + 1
    prob = np.minimum(coef * ws[rows] * ws[cols] ** sigma, 1.0)
    src_parts, dst_parts = [], []
    while rows.size:
        # geometric skip under the current bound; p == 1 gives skip 0
        with np.errstate(divide="ignore", invalid="ignore"):
            skip = np.log(rng.random(rows.size)) / np.log1p(-prob)
        skip = np.where(prob >= 1.0, 0.0, skip)
        cols = cols + np.minimum(skip, n).astype(np.int64)
        alive = cols < n
        rows, cols, prob = rows[alive], cols[alive], prob[alive]
        if not rows.size:
            break
        q = np.minimum(coef * ws[rows] * ws[cols] ** sigma, 1.0)
        accept = rng.random(rows.size) * prob < q
        if accept.any():
            src_parts.append(rows[accept])
            dst_parts.append(cols[accept])
        prob = q
        cols = cols + 1
        alive = cols < n
        rows, cols, prob = rows[alive], cols[alive], prob[alive]

    if src_parts:
        src = order[np.concatenate(src_parts)]
        dst = order[np.concatenate(dst_parts)]
        pairs = np.column_stack([src, dst])
    else:
        pairs = np.empty((0, 2), dtype=np.int64)
    g = Graph.from_edges(n, pairs)
    return (g, weights) if return_latents else g

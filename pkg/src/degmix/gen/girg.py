"""Cell-based sampler for GIRGs and tunable GIRGs.

The tuned kernel is sampled exactly in expected O(n + m) time:

1. transform the weights (:func:`supergraph_weights`) so the plain product
   kernel on ``w'`` dominates the tuned kernel on ``w`` pair by pair;
2. sample the product-kernel graph with weight layers on a hierarchy of
   spatial grids: pairs in adjacent cells of the layer-pair grid are tested
   exactly, and (for finite alpha) pairs in distant cells are reached by
   binomial proposals under a per-cell-pair probability bound, then accepted
   with the exact/bound ratio;
3. thin every supergraph edge with the ratio tuned/product probability.

For sigma > 1 the few vertices above ``W^(1/(sigma+1))`` can escape the
domination guarantee when the calibrated scale is small, so their rows are
sampled exhaustively instead (O(|heavy| * n), with |heavy| = O(1) whp).
"""
from __future__ import annotations

import math

import numpy as np

from ..graph import Graph
from ..rng import PHASE_EDGES, PHASE_POSITIONS, PHASE_WEIGHTS, as_generator, stream
from .grid import (canonical_half, group_by_cell, iter_cross_pairs,
                   iter_within_pairs, offset_vectors, pair_distances)
from .kernels import connection_probability
from .params import ModelParams
from .weights import sample_positions, sample_weights, supergraph_weights

__all__ = ["generate_tgirg_fast"]


def _product_prob(kappa, dist, scale, total, alpha, dim):
    """min(1, scale*kappa/(total*dist^dim))^alpha, threshold at alpha=inf."""
    distd = np.asarray(dist, dtype=np.float64) ** dim
    if math.isinf(alpha):
        return (total * distd <= scale * kappa).astype(np.float64)
    with np.errstate(divide="ignore"):
        arg = np.minimum(scale * kappa / (total * distd), 1.0)
    return arg ** alpha


def generate_tgirg_fast(params: ModelParams, scale: float, *, weights=None,
                        positions=None, rng=None, return_latents=False):
    """Sample a TGIRG with edge marginals identical to the naive sampler."""
    n = params.n
    dim = params.dim
    sigma = params.effective_sigma
    if weights is None:
        weights = sample_weights(n, params.tau, stream(params.seed, PHASE_WEIGHTS))
    else:
        weights = np.asarray(weights, dtype=np.float64)
    if positions is None:
        positions = sample_positions(n, dim, stream(params.seed, PHASE_POSITIONS))
    else:
        positions = np.asarray(positions, dtype=np.float64)
    rng = as_generator(rng if rng is not None else stream(params.seed, PHASE_EDGES))
    if n < 2:
        g = Graph.from_edges(max(n, 0), np.empty((0, 2), dtype=np.int64))
        return (g, weights, positions) if return_latents else g

    total = weights.sum()
    if sigma > 1.0:
        heavy = np.flatnonzero(weights > total ** (1.0 / (sigma + 1.0)))
    else:
        heavy = np.empty(0, dtype=np.int64)
    active = np.setdiff1d(np.arange(n, dtype=np.int64), heavy, assume_unique=True)

    wp = supergraph_weights(weights, sigma)
    total_p = wp.sum()
    super_edges = _product_girg_edges(positions, wp, total_p, scale,
                                      params.alpha, dim, rng, active)

    if sigma != 1.0 and len(super_edges):
        u, v = super_edges[:, 0], super_edges[:, 1]
        dist = pair_distances(positions, u, v)
        p_tuned = connection_probability(weights[u], weights[v], dist,
                                         params, scale, total)
        p_super = _product_prob(wp[u] * wp[v], dist, scale, total_p,
                                params.alpha, dim)
        ratio = np.where(p_super > 0, p_tuned / np.maximum(p_super, 1e-300), 0.0)
        super_edges = super_edges[rng.random(len(u)) < ratio]

    parts = [super_edges] if len(super_edges) else []
    for h in heavy:
        others = np.concatenate([active, heavy[heavy > h]])
        if not len(others):
            continue
        dist = pair_distances(positions, np.full(len(others), h), others)
        p = connection_probability(weights[h], weights[others], dist,
                                   params, scale, total)
        hit = rng.random(len(others)) < p
        if hit.any():
            parts.append(np.column_stack([np.full(int(hit.sum()), h), others[hit]]))
    pairs = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    g = Graph.from_edges(n, pairs)
    return (g, weights, positions) if return_latents else g


def _product_girg_edges(positions, wp, total_p, scale, alpha, dim, rng, vertices):
    """Edges of the product-kernel GIRG restricted to ``vertices``."""
    if len(vertices) < 2:
        return np.empty((0, 2), dtype=np.int64)
    wv = wp[vertices]
    wmin = wv.min()
    layer = np.floor(np.log2(wv / wmin)).astype(np.int64)
    n_layers = int(layer.max()) + 1
    layer = np.clip(layer, 0, n_layers - 1)
    members = [vertices[layer == i] for i in range(n_layers)]
    tops = wmin * 2.0 ** (np.arange(n_layers) + 1)
    cell_cap = max(4 * len(vertices), 4096)
    threshold = math.isinf(alpha)

    out = []

    def evaluate(u, v):
        dist = pair_distances(positions, u, v)
        p = _product_prob(wp[u] * wp[v], dist, scale, total_p, alpha, dim)
        keep = p > 0 if threshold else rng.random(len(u)) < p
        if keep.any():
            out.append(np.column_stack([u[keep], v[keep]]))

    for i in range(n_layers):
        if not len(members[i]):
            continue
        for j in range(i, n_layers):
            if not len(members[j]):
                continue
            d_full = (scale * tops[i] * tops[j] / total_p) ** (1.0 / dim)
            if d_full >= 1.0:
                level = 0
            else:
                level = max(0, int(math.floor(-math.log2(d_full))))
                if 2.0 ** (-level) < d_full:
                    level -= 1
            while (2 ** level) ** dim > cell_cap:
                level -= 1
            if 2 ** level <= 4:
                _brute_pair(members[i], members[j], i == j, evaluate)
                continue
            _near_pass(members[i], members[j], i == j, level, positions,
                       dim, evaluate)
            if not threshold:
                _far_passes(members[i], members[j], i == j, level,
                            tops[i] * tops[j], positions, wp, total_p,
                            scale, alpha, dim, rng, out)

    if not out:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(out)


def _brute_pair(mem_i, mem_j, same, evaluate):
    zero = np.zeros(1, dtype=np.int64)
    if same:
        it = iter_within_pairs(mem_i, zero, np.array([len(mem_i)]))
    else:
        it = iter_cross_pairs(mem_i, zero, np.array([len(mem_i)]),
                              mem_j, zero, np.array([len(mem_j)]))
    for u, v in it:
        evaluate(u, v)


def _cells_at(positions, ids, grid_n, dim):
    coords = np.minimum((positions[ids] * grid_n).astype(np.int64), grid_n - 1)
    strides = grid_n ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    return coords, strides


def _near_pass(mem_i, mem_j, same, level, positions, dim, evaluate):
    grid_n = 2 ** level
    coords_i, strides = _cells_at(positions, mem_i, grid_n, dim)
    sorted_i, starts_i, counts_i = group_by_cell(mem_i, coords_i @ strides,
                                                 grid_n ** dim)
    if same:
        sorted_j, starts_j, counts_j = sorted_i, starts_i, counts_i
        for u, v in iter_within_pairs(sorted_i, starts_i, counts_i):
            evaluate(u, v)
        offs = offset_vectors(dim, -1, 1)
        offs = offs[canonical_half(offs)]
    else:
        coords_j, _ = _cells_at(positions, mem_j, grid_n, dim)
        sorted_j, starts_j, counts_j = group_by_cell(mem_j, coords_j @ strides,
                                                     grid_n ** dim)
        offs = offset_vectors(dim, -1, 1)
    nonempty = np.flatnonzero(counts_i)
    ne_coords = np.stack(np.unravel_index(nonempty, (grid_n,) * dim), axis=-1)
    for o in offs:
        partner = ((ne_coords + o) % grid_n) @ strides
        for u, v in iter_cross_pairs(sorted_i, starts_i[nonempty],
                                     counts_i[nonempty], sorted_j,
                                     starts_j[partner], counts_j[partner]):
            evaluate(u, v)


def _wrapped_cheb(offsets, grid_n):
    folded = np.abs(offsets) % grid_n
    return np.minimum(folded, grid_n - folded).max(axis=-1)


def _far_offsets(dim, level, same):
    """Offset vectors, min cell gap, and dedupe flags for one far pass."""
    grid_n = 2 ** level
    if level == 3:
        offs = offset_vectors(dim, -3, 4)
    else:
        offs = offset_vectors(dim, -3, 3)
    cheb = _wrapped_cheb(offs, grid_n)
    offs = offs[cheb >= 2]
    cheb = cheb[cheb >= 2]
    self_inverse = np.all((offs % grid_n) == ((-offs) % grid_n), axis=1)
    if same:
        # one representative of each {o, -o}; self-inverse offsets are
        # deduped per cell pair instead
        neg = (-offs) % grid_n
        pos = offs % grid_n
        keep = self_inverse.copy()
        for idx in range(len(offs)):
            if not keep[idx]:
                keep[idx] = tuple(pos[idx]) > tuple(neg[idx])
        offs, cheb, self_inverse = offs[keep], cheb[keep], self_inverse[keep]
    return offs, cheb, self_inverse


def _far_passes(mem_i, mem_j, same, top_level, top_product, positions, wp,
                total_p, scale, alpha, dim, rng, out):
    """Distant cell pairs via binomial proposals under per-pair bounds.

    Pass at level L handles pairs whose level-L cells are non-adjacent but
    whose level-(L-1) cells are adjacent; the final pass at level 3 takes
    every still-uncovered (non-adjacent) pair.  Together with the adjacent
    cells of the deepest grid this covers each vertex pair exactly once.
    """
    for level in range(top_level, 2, -1):
        grid_n = 2 ** level
        side = 1.0 / grid_n
        coords_i, strides = _cells_at(positions, mem_i, grid_n, dim)
        lin_i = coords_i @ strides
        sorted_i, starts_i, counts_i = group_by_cell(mem_i, lin_i, grid_n ** dim)
        if same:
            sorted_j, starts_j, counts_j = sorted_i, starts_i, counts_i
        else:
            coords_j, _ = _cells_at(positions, mem_j, grid_n, dim)
            sorted_j, starts_j, counts_j = group_by_cell(
                mem_j, coords_j @ strides, grid_n ** dim)
        offs, cheb, self_inv = _far_offsets(dim, level, same)
        nonempty = np.flatnonzero(counts_i)
        ne_coords = np.stack(np.unravel_index(nonempty, (grid_n,) * dim), axis=-1)
        for o, gap, fold in zip(offs, cheb, self_inv):
            partner_coords = (ne_coords + o) % grid_n
            partner = partner_coords @ strides
            n_pairs = counts_i[nonempty] * counts_j[partner]
            if same and fold:
                n_pairs = np.where(nonempty < partner, n_pairs, 0)
            if level > 3:
                # keep only pairs whose parent cells are adjacent
                pdelta = (partner_coords >> 1) - (ne_coords >> 1)
                folded = np.abs(pdelta) % (grid_n // 2)
                pcheb = np.minimum(folded, grid_n // 2 - folded).max(axis=-1)
                n_pairs = np.where(pcheb <= 1, n_pairs, 0)
            if not n_pairs.any():
                continue
            min_dist = (gap - 1) * side
            p_bound = min((scale * top_product / (total_p * min_dist ** dim))
                          ** alpha, 1.0)
            draws = rng.binomial(n_pairs, p_bound)
            hot = np.flatnonzero(draws)
            if not hot.size:
                continue
            cand_u, cand_v = [], []
            for idx in hot:
                slots = (rng.integers(n_pairs[idx]) if draws[idx] == 1 else
                         rng.choice(n_pairs[idx], size=draws[idx], replace=False))
                slots = np.atleast_1d(slots)
                cb = counts_j[partner[idx]]
                cand_u.append(sorted_i[starts_i[nonempty[idx]] + slots // cb])
                cand_v.append(sorted_j[starts_j[partner[idx]] + slots % cb])
            u = np.concatenate(cand_u)
            v = np.concatenate(cand_v)
            dist = pair_distances(positions, u, v)
            p = _product_prob(wp[u] * wp[v], dist, scale, total_p, alpha, dim)
            keep = rng.random(len(u)) * p_bound < p
            if keep.any():
                out.append(np.column_stack([u[keep], v[keep]]))

"""Threshold random geometric graphs on the unit torus (max norm)."""
from __future__ import annotations

import numpy as np

from ..errors import ParameterError
from ..graph import Graph
from ..rng import PHASE_POSITIONS, as_generator
from .grid import (canonical_half, group_by_cell, iter_cross_pairs,
                   iter_within_pairs, offset_vectors, pair_distances)
from .weights import sample_positions

__all__ = ["generate_rgg"]


def generate_rgg(n: int, dim: int, radius: float, rng=None, positions=None,
                 return_latents=False):
    """Connect every pair of vertices at torus distance <= radius.

    Expected degree of each vertex is (n-1) * (2*radius)^dim.  Uses a cell
    grid with side >= radius so only 3^dim neighborhoods are scanned; exact.
    """
    if not 0 < radius <= 0.5:
        raise ParameterError(f"radius must be in (0, 1/2], got {radius}")
    if dim < 1:
        raise ParameterError("dim must be >= 1")
    rng = as_generator(rng)
    if positions is None:
        positions = sample_positions(n, dim, rng)
    else:
        positions = np.asarray(positions, dtype=np.float64)
    if n <= 1:
        g = Graph.from_edges(max(n, 0), np.empty((0, 2), dtype=np.int64))
        return (g, positions) if return_latents else g

    grid_n = int(1.0 / radius)
    if grid_n < 3:
        pairs = _brute_threshold(positions, radius)
    else:
        pairs = _grid_threshold(positions, radius, grid_n, dim)
    g = Graph.from_edges(n, pairs)
    return (g, positions) if return_latents else g


def _brute_threshold(positions, radius):
    n = len(positions)
    src, dst = [], []
    for u in range(n - 1):
        diff = np.abs(positions[u + 1:] - positions[u])
        dist = np.minimum(diff, 1.0 - diff).max(axis=1)
        hit = np.flatnonzero(dist <= radius) + u + 1
        if hit.size:
            src.append(np.full(hit.size, u, dtype=np.int64))
            dst.append(hit)
    if not src:
        return np.empty((0, 2), dtype=np.int64)
    return np.column_stack([np.concatenate(src), np.concatenate(dst)])


def _grid_threshold(positions, radius, grid_n, dim):
    n = len(positions)
    coords = np.minimum((positions * grid_n).astype(np.int64), grid_n - 1)
    weights_shape = grid_n ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    lin = coords @ weights_shape
    ids = np.arange(n, dtype=np.int64)
    sorted_ids, starts, counts = group_by_cell(ids, lin, grid_n ** dim)

    hits = []

    def scan(u, v):
        dist = pair_distances(positions, u, v)
        keep = dist <= radius
        if keep.any():
            hits.append(np.column_stack([u[keep], v[keep]]))

    for u, v in iter_within_pairs(sorted_ids, starts, counts):
        scan(u, v)

    offs = offset_vectors(dim, -1, 1)
    offs = offs[canonical_half(offs)]
    nonempty = np.flatnonzero(counts)
    ne_coords = np.stack(np.unravel_index(nonempty, (grid_n,) * dim), axis=-1)
    for o in offs:
        partner = (ne_coords + o) % grid_n
        partner_lin = partner @ weights_shape
        for u, v in iter_cross_pairs(sorted_ids, starts[nonempty],
                                     counts[nonempty], sorted_ids,
                                     starts[partner_lin], counts[partner_lin]):
            scan(u, v)
    if not hits:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(hits)

"""Spatial cell bookkeeping shared by the geometric samplers."""
from __future__ import annotations

import numpy as np

__all__ = ["group_by_cell", "iter_cross_pairs", "iter_within_pairs",
           "offset_vectors", "canonical_half", "pair_distances"]

PAIR_CHUNK = 4_000_000  # cap on materialized candidate pairs per chunk


def pair_distances(positions, u, v):
    """Torus max-norm distance for index arrays u, v."""
    diff = np.abs(positions[u] - positions[v])
    return np.minimum(diff, 1.0 - diff).max(axis=1)


def group_by_cell(vertex_ids, cell_ids, n_cells):
    """Sort members by cell; returns (sorted_ids, starts, counts)."""
    order = np.argsort(cell_ids, kind="stable")
    sorted_ids = vertex_ids[order]
    counts = np.bincount(cell_ids, minlength=n_cells).astype(np.int64)
    starts = np.zeros(n_cells + 1, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    return sorted_ids, starts[:-1], counts


def offset_vectors(dim, lo, hi):
    """All integer offset vectors with coordinates in [lo, hi]."""
    grids = np.meshgrid(*([np.arange(lo, hi + 1)] * dim), indexing="ij")
    return np.stack(grids, axis=-1).reshape(-1, dim)


def canonical_half(offsets):
    """Mask selecting one representative of each {o, -o} pair (o != 0)."""
    keep = np.zeros(len(offsets), dtype=bool)
    for idx, o in enumerate(offsets):
        nz = np.flatnonzero(o)
        keep[idx] = nz.size > 0 and o[nz[0]] > 0
    return keep


def _materialize(a_ids, a_start, a_cnt, b_ids, b_start, b_cnt):
    tot = a_cnt * b_cnt
    block = np.repeat(np.arange(len(tot)), tot)
    base = np.concatenate([[0], np.cumsum(tot)[:-1]])
    within = np.arange(tot.sum()) - base[block]
    cb = b_cnt[block]
    ai = within // cb
    bi = within - ai * cb
    return (a_ids[a_start[block] + ai], b_ids[b_start[block] + bi])


def iter_cross_pairs(a_ids, a_start, a_cnt, b_ids, b_start, b_cnt,
                     chunk=PAIR_CHUNK):
    """Yield (u, v) chunks covering the full cross product of matched blocks."""
    tot = (a_cnt * b_cnt).astype(np.int64)
    nz = tot > 0
    a_start, a_cnt = a_start[nz], a_cnt[nz]
    b_start, b_cnt = b_start[nz], b_cnt[nz]
    tot = tot[nz]
    if not len(tot):
        return
    bounds = np.cumsum(tot)
    lo = 0
    while lo < len(tot):
        prev = bounds[lo - 1] if lo else 0
        hi = int(np.searchsorted(bounds, prev + chunk, side="right"))
        hi = min(max(hi, lo + 1), len(tot))
        yield _materialize(a_ids, a_start[lo:hi], a_cnt[lo:hi],
                           b_ids, b_start[lo:hi], b_cnt[lo:hi])
        lo = hi


def iter_within_pairs(ids, starts, counts, chunk=PAIR_CHUNK):
    """Yield (u, v) chunks of unordered member pairs inside each block."""
    for u, v in iter_cross_pairs(ids, starts, counts, ids, starts, counts,
                                 chunk=chunk):
        keep = u < v
        if keep.any():
            yield u[keep], v[keep]

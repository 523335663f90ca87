"""Degree assortativity coefficients and the Hill tail-exponent estimator.

All three coefficients are computed over the 2m oriented endpoint pairs of
a graph: each edge {u, v} contributes both (deg(u), deg(v)) and
(deg(v), deg(u)).  Pearson uses remaining degrees (deg - 1), the rank
coefficients are shift-invariant so plain degrees are used there.  Kendall
only counts point pairs originating from distinct edges: the pair an edge
forms with its own mirror image is always discordant (or tied when the
endpoint degrees agree), so it is removed analytically after an
O(m log m) all-pairs concordance count.

Coefficients that are undefined (zero variance, or no untied cross-edge
pairs) are reported as None, never silently 0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.stats import rankdata

from .errors import GraphError, ParameterError
from .graph import Graph
from .rng import stream

__all__ = [
    "CoefficientReport", "remaining_degree_pairs", "oriented_degree_pairs",
    "pearson_assortativity", "spearman_assortativity", "spearman_from_pairs",
    "kendall_assortativity", "kendall_counts", "kendall_counts_brute",
    "coefficient_report", "hill_estimator",
]

HILL_JITTER_SEED = 90321  # documented fixed stream for degree jitter


@dataclass(frozen=True)
class CoefficientReport:
    pearson: float | None
    spearman: float | None
    kendall: float | None
    concordant: int
    discordant: int
    excluded_same_edge_pairs: int
    tie_fraction: float


def oriented_degree_pairs(graph: Graph) -> np.ndarray:
    """(2m, 2) array of (deg(u), deg(v)) over both orientations of each edge."""
    if graph.m == 0:
        raise GraphError("graph has no edges")
    d = graph.degrees
    du = d[graph.edges[:, 0]]
    dv = d[graph.edges[:, 1]]
    return np.column_stack([np.concatenate([du, dv]), np.concatenate([dv, du])])


def remaining_degree_pairs(graph: Graph) -> np.ndarray:
    """Both orientations of (deg(u)-1, deg(v)-1) per edge; shape (2m, 2)."""
    return oriented_degree_pairs(graph) - 1


def pearson_assortativity(graph: Graph) -> float | None:
    """Pearson correlation of the remaining-degree pair; None if degenerate."""
    pairs = remaining_degree_pairs(graph).astype(np.float64)
    x, y = pairs[:, 0], pairs[:, 1]
    var = np.mean(x * x) - np.mean(x) ** 2
    if var <= 0:
        return None
    cov = np.mean(x * y) - np.mean(x) * np.mean(y)
    return float(cov / var)


def spearman_from_pairs(pairs) -> float | None:
    """Pearson on mid-ranks (average rank for ties) of a 2-column sample."""
    pairs = np.asarray(pairs)
    rx = rankdata(pairs[:, 0], method="average")
    ry = rankdata(pairs[:, 1], method="average")
    var = np.mean(rx * rx) - np.mean(rx) ** 2
    if var <= 0:
        return None
    cov = np.mean(rx * ry) - np.mean(rx) * np.mean(ry)
    return float(cov / var)


def spearman_assortativity(graph: Graph) -> float | None:
    """Spearman correlation of the oriented degree pairs; None if degenerate."""
    return spearman_from_pairs(oriented_degree_pairs(graph))


@njit(cache=True)
def _merge_count(a):  # pragma: no cover - exercised via wrapper
    n = len(a)
    buf = a.copy()
    tmp = np.empty(n, dtype=a.dtype)
    inv = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if buf[i] <= buf[j]:
                    tmp[k] = buf[i]
                    i += 1
                else:
                    tmp[k] = buf[j]
                    inv += mid - i
                    j += 1
                k += 1
            while i < mid:
                tmp[k] = buf[i]
                i += 1
                k += 1
            while j < hi:
                tmp[k] = buf[j]
                j += 1
                k += 1
            for t in range(lo, hi):
                buf[t] = tmp[t]
        width *= 2
    return inv


def _tie_pairs(values) -> int:
    _, counts = np.unique(values, return_counts=True)
    return int((counts.astype(np.int64) * (counts - 1) // 2).sum())


def kendall_counts(points: np.ndarray):
    """Concordant/discordant/tied pair counts over all N choose 2 pairs.

    Knight's method: lexicographic sort by (x, y), then strict inversions of
    the y sequence count the discordant pairs; tie counts fix up the rest.
    """
    x = points[:, 0]
    y = points[:, 1]
    n = len(points)
    order = np.lexsort((y, x))
    discordant = int(_merge_count(y[order].astype(np.int64)))
    n0 = n * (n - 1) // 2
    ties_x = _tie_pairs(x)
    ties_y = _tie_pairs(y)
    ties_xy = _tie_pairs(x.astype(np.int64) * (int(y.max()) + 1) + y)
    concordant = n0 - ties_x - ties_y + ties_xy - discordant
    return concordant, discordant, n0 - concordant - discordant


def kendall_counts_brute(points: np.ndarray, edge_ids=None):
    """O(N^2) direct pair classification; the oracle for the fast path.

    When ``edge_ids`` is given, pairs of points with equal id are skipped.
    """
    x = points[:, 0].astype(np.int64)
    y = points[:, 1].astype(np.int64)
    dx = np.sign(x[:, None] - x[None, :])
    dy = np.sign(y[:, None] - y[None, :])
    prod = dx * dy
    mask = np.triu(np.ones(len(x), dtype=bool), k=1)
    if edge_ids is not None:
        eid = np.asarray(edge_ids)
        mask &= eid[:, None] != eid[None, :]
    conc = int((prod[mask] > 0).sum())
    disc = int((prod[mask] < 0).sum())
    ties = int(mask.sum()) - conc - disc
    return conc, disc, ties


def kendall_assortativity(graph: Graph, return_counts=False):
    """(C - D) / (C + D) over point pairs from distinct edges.

    The per-edge mirror pair is discordant exactly when the endpoint degrees
    differ, so it is subtracted from the all-pairs count.  Returns None when
    every cross-edge pair is tied.
    """
    points = oriented_degree_pairs(graph)
    conc, disc, _ = kendall_counts(points)
    m = graph.m
    same_edge_discordant = int((graph.degrees[graph.edges[:, 0]]
                                != graph.degrees[graph.edges[:, 1]]).sum())
    disc -= same_edge_discordant
    cross = len(points) * (len(points) - 1) // 2 - m
    ties = cross - conc - disc
    tau = None if conc + disc == 0 else (conc - disc) / (conc + disc)
    if return_counts:
        return tau, conc, disc, ties, m
    return tau


def coefficient_report(graph: Graph) -> CoefficientReport:
    """All three coefficients plus the Kendall diagnostics."""
    tau, conc, disc, ties, excluded = kendall_assortativity(graph,
                                                            return_counts=True)
    cross = conc + disc + ties
    return CoefficientReport(
        pearson=pearson_assortativity(graph),
        spearman=spearman_assortativity(graph),
        kendall=tau,
        concordant=conc,
        discordant=disc,
        excluded_same_edge_pairs=excluded,
        tie_fraction=ties / cross if cross else 1.0,
    )


def hill_estimator(values, k_tail: int, jitter_seed: int = HILL_JITTER_SEED):
    """Hill estimate of the power-law tail exponent from the k largest values.

    tau_hat = 1 + k / sum_{i<=k} ln(v_(i) / v_(k+1)) over the descending
    order statistics.  Integer inputs (degrees) are jittered by +U[0,1) from
    a fixed seeded stream to break the discreteness that otherwise biases
    the estimator; real-valued inputs are used as-is.  Returns
    (tau_hat, k_tail), or None when the tail is degenerate (all k+1 largest
    values equal before jitter).
    """
    values = np.asarray(values)
    values = values[values > 0]
    if k_tail < 10:
        raise ParameterError("k_tail must be >= 10")
    if k_tail >= len(values):
        raise ParameterError(f"k_tail={k_tail} needs more than that many "
                             "positive values")
    if np.issubdtype(values.dtype, np.integer):
        raw_sorted = np.sort(values)[::-1]
        if raw_sorted[0] == raw_sorted[k_tail]:
            return None
        rng = stream(jitter_seed)
        values = values + rng.random(len(values))
    ordered = np.sort(values)[::-1]
    top = ordered[:k_tail]
    pivot = ordered[k_tail]
    if top[0] == pivot:
        return None
    tau_hat = 1.0 + k_tail / np.log(top / pivot).sum()
    return float(tau_hat), k_tail

"""Bucketed joint endpoint-degree statistics.

Degrees (not remaining degrees) feed everything here.  The standard
pipeline partitions [1, d_max] into 21 logarithmic buckets with base
b = (d_max + 1)^(1/21), so the maximum degree lands in the last bucket;
any bucket count is allowed through the API.  Joint counts take both
orientations of every edge, which makes the matrices exactly symmetric.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GraphError, ParameterError
from .coefficients import oriented_degree_pairs
from .graph import Graph

__all__ = ["BucketScheme", "bucket_scheme", "JointHistogram",
           "joint_degree_histogram", "ConditionalHeatmap",
           "conditional_change_heatmap", "CCDFCurves", "degree_ccdf_curves",
           "ccdf"]

DEFAULT_NUM_BUCKETS = 21
CONDITIONING_FRACTIONS = (0.0, 0.25, 0.5, 0.75, 1.0)
_LOG_GUARD = 1e-9  # keeps exact powers of the base on their left boundary


@dataclass(frozen=True)
class BucketScheme:
    num_buckets: int
    base: float
    boundaries: np.ndarray  # b^i for i = 0..num_buckets
    d_max: int

    def index(self, degrees) -> np.ndarray:
        """Bucket index of each degree: floor(log_b k), clamped."""
        k = np.asarray(degrees)
        if np.any(k < 1):
            raise ParameterError("bucket index defined for degrees >= 1")
        idx = np.floor(np.log(k) / np.log(self.base) + _LOG_GUARD).astype(np.int64)
        return np.clip(idx, 0, self.num_buckets - 1)

    def lower_bounds(self) -> np.ndarray:
        return self.boundaries[:-1]


def bucket_scheme(d_max: int, num_buckets: int = DEFAULT_NUM_BUCKETS) -> BucketScheme:
    if d_max < 1:
        raise ParameterError(f"d_max must be >= 1, got {d_max}")
    if num_buckets < 1:
        raise ParameterError("num_buckets must be >= 1")
    base = (d_max + 1.0) ** (1.0 / num_buckets)
    boundaries = base ** np.arange(num_buckets + 1)
    return BucketScheme(num_buckets=num_buckets, base=base,
                        boundaries=boundaries, d_max=int(d_max))


@dataclass(frozen=True)
class JointHistogram:
    probs: np.ndarray      # (nb, nb), symmetric, sums to 1
    marginals: np.ndarray  # (nb,) row sums
    scheme: BucketScheme
    oriented_count: int    # 2m

    counts: np.ndarray = None  # raw oriented counts per cell


def joint_degree_histogram(graph: Graph, scheme: BucketScheme | None = None
                           ) -> JointHistogram:
    """Joint bucket probabilities of (deg(u), deg(v)) over oriented edges."""
    pairs = oriented_degree_pairs(graph)
    if scheme is None:
        scheme = bucket_scheme(int(graph.degrees.max()))
    nb = scheme.num_buckets
    bi = scheme.index(pairs[:, 0])
    bj = scheme.index(pairs[:, 1])
    counts = np.bincount(bi * nb + bj, minlength=nb * nb).reshape(nb, nb)
    probs = counts / len(pairs)
    return JointHistogram(probs=probs, marginals=probs.sum(axis=1),
                          scheme=scheme, oriented_count=len(pairs),
                          counts=counts)


@dataclass(frozen=True)
class ConditionalHeatmap:
    change: np.ndarray    # (nb, nb) signed values in [-1, 1], NaN = undefined
    defined: np.ndarray   # bool mask
    scheme: BucketScheme


def conditional_change_heatmap(joint: JointHistogram) -> ConditionalHeatmap:
    """Signed relative change of P[X in B_i] when conditioning on Y in B_j.

    With R = P[X in B_i | Y in B_j] / P[X in B_i], the cell value is
    1 - 1/R for an increase (R >= 1) and -(1 - R) for a decrease, i.e. 0
    exactly at independence, +1 asymptotically for a strong increase and -1
    for conditional probability 0.  R is symmetric in (i, j), so the matrix
    is.  Cells whose row or column marginal is 0 are undefined (NaN).
    """
    m = joint.marginals
    defined = (m[:, None] > 0) & (m[None, :] > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = joint.probs / (m[:, None] * m[None, :])
    change = np.where(ratio >= 1.0, 1.0 - 1.0 / np.maximum(ratio, 1.0),
                      ratio - 1.0)
    change = np.where(defined, change, np.nan)
    return ConditionalHeatmap(change=change, defined=defined,
                              scheme=joint.scheme)


def ccdf(values):
    """(x, P[value >= x]) at every realized value, non-increasing in x."""
    values = np.asarray(values)
    if values.size == 0:
        raise GraphError("no values")
    xs, counts = np.unique(values, return_counts=True)
    tail = np.cumsum(counts[::-1])[::-1]
    return xs, tail / values.size


@dataclass(frozen=True)
class CCDFCurves:
    node: tuple        # (x, y) over all vertices
    edge: tuple        # (x, y) over oriented endpoints
    conditional: dict  # fraction -> (x, y) or None when the bucket is empty
    scheme: BucketScheme


def degree_ccdf_curves(graph: Graph, scheme: BucketScheme | None = None,
                       fractions=CONDITIONING_FRACTIONS) -> CCDFCurves:
    """Node, edge, and partner-degree-conditioned CCDF curves.

    The conditional curve for fraction c restricts the oriented pairs
    (X, Y) to those whose partner degree Y falls in bucket
    round(c * (num_buckets - 1)); an empty conditioning bucket yields None
    for that curve.
    """
    pairs = oriented_degree_pairs(graph)
    if scheme is None:
        scheme = bucket_scheme(int(graph.degrees.max()))
    node = ccdf(graph.degrees)
    edge = ccdf(pairs[:, 0])
    partner_bucket = scheme.index(pairs[:, 1])
    conditional = {}
    for frac in fractions:
        target = int(round(frac * (scheme.num_buckets - 1)))
        sel = pairs[partner_bucket == target, 0]
        conditional[frac] = ccdf(sel) if sel.size else None
    return CCDFCurves(node=node, edge=edge, conditional=conditional,
                      scheme=scheme)

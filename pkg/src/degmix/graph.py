"""Immutable simple undirected graphs with degree statistics.

The representation is CSR-style: a flat array of sorted neighbor lists plus
row pointers, together with a canonical edge array (``u < v``, sorted
lexicographically).  Construction normalizes arbitrary input pairs: self
loops and duplicate edges are dropped (with counts retained on the graph),
and vertex ids are compacted to ``0..n-1`` in first-seen order with the
original labels kept in a side array.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import GraphError

__all__ = [
    "Graph",
    "DegreeSequence",
    "build_graph",
    "local_clustering",
    "average_clustering",
    "triangle_counts",
    "sample_edge_endpoint",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph. Treat all arrays as read-only."""

    indptr: np.ndarray        # (n+1,) row pointers into `adjacency`
    adjacency: np.ndarray     # (2m,) neighbor ids, sorted within each row
    edges: np.ndarray         # (m, 2) with u < v, lexicographically sorted
    degrees: np.ndarray       # (n,)
    labels: np.ndarray        # (n,) original vertex ids (identity if generated)
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.adjacency[self.indptr[v]:self.indptr[v + 1]]

    def average_degree(self) -> float:
        if self.n == 0:
            raise GraphError("empty graph")
        return 2.0 * self.m / self.n

    def degree_sequence(self) -> "DegreeSequence":
        return DegreeSequence.from_degrees(self.degrees)

    @staticmethod
    def from_edges(n: int, pairs, labels=None) -> "Graph":
        """Build a graph on exactly ``n`` vertices from id pairs in ``0..n-1``.

        Self loops and duplicates are dropped and counted. Isolated vertices
        are preserved (unlike :func:`build_graph`, no relabeling happens).
        """
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise GraphError("vertex id out of range")
        loops = pairs[:, 0] == pairs[:, 1]
        n_loops = int(loops.sum())
        pairs = pairs[~loops]
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        order = np.lexsort((hi, lo))
        lo, hi = lo[order], hi[order]
        if len(lo):
            keep = np.ones(len(lo), dtype=bool)
            keep[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
            n_dups = int((~keep).sum())
            lo, hi = lo[keep], hi[keep]
        else:
            n_dups = 0
        edges = np.column_stack([lo, hi])

        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        adj_order = np.lexsort((dst, src))
        adjacency = dst[adj_order]
        degrees = np.bincount(src, minlength=n).astype(np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=indptr[1:])
        if labels is None:
            labels = np.arange(n, dtype=np.int64)
        return Graph(indptr=indptr, adjacency=adjacency, edges=edges,
                     degrees=degrees, labels=np.asarray(labels),
                     dropped_self_loops=n_loops, dropped_duplicates=n_dups)


def build_graph(edge_pairs) -> Graph:
    """Build a simple graph from arbitrary non-negative integer id pairs.

    Ids are compacted to ``0..n-1`` preserving first-seen order (scanning
    pairs left-to-right); original ids live in ``graph.labels``.  Self loops
    and duplicate edges are dropped silently, with counts reported on the
    returned graph.  Empty input yields the valid empty graph.
    """
    pairs = np.asarray(list(edge_pairs) if not isinstance(edge_pairs, np.ndarray)
                       else edge_pairs, dtype=np.int64)
    if pairs.size == 0:
        return Graph.from_edges(0, np.empty((0, 2), dtype=np.int64))
    pairs = pairs.reshape(-1, 2)
    if pairs.min() < 0:
        raise GraphError("vertex ids must be non-negative")
    flat = pairs.ravel()
    uniq, first_pos, inverse = np.unique(flat, return_index=True, return_inverse=True)
    # Rank unique labels by first appearance so compact ids follow input order.
    rank = np.empty(len(uniq), dtype=np.int64)
    rank[np.argsort(first_pos, kind="stable")] = np.arange(len(uniq))
    compact = rank[inverse].reshape(-1, 2)
    labels = uniq[np.argsort(rank, kind="stable")]
    return Graph.from_edges(len(uniq), compact, labels=labels)


@dataclass(frozen=True)
class DegreeSequence:
    """Degree histogram with max degree and complementary CDF.

    Isolated (degree-0) vertices count toward the distribution; the node
    CCDF therefore starts at ``ccdf(0) == 1`` even when some vertices have
    no edges.
    """

    values: np.ndarray     # sorted unique degrees
    counts: np.ndarray     # multiplicity per value
    n: int
    max_degree: int

    @staticmethod
    def from_degrees(degrees) -> "DegreeSequence":
        degrees = np.asarray(degrees, dtype=np.int64)
        if degrees.size == 0:
            raise GraphError("empty graph")
        values, counts = np.unique(degrees, return_counts=True)
        return DegreeSequence(values=values, counts=counts,
                              n=int(degrees.size), max_degree=int(values[-1]))

    def ccdf(self, k) -> np.ndarray | float:
        """Fraction of vertices with degree >= k (vectorized over k)."""
        k = np.asarray(k)
        tail = np.concatenate([np.cumsum(self.counts[::-1])[::-1], [0]])
        idx = np.searchsorted(self.values, k, side="left")
        out = tail[idx] / self.n
        return float(out) if out.ndim == 0 else out

    def count_map(self) -> dict:
        return {int(v): int(c) for v, c in zip(self.values, self.counts)}


@njit(cache=True)
def _triangles(indptr, adjacency):  # pragma: no cover - exercised via wrapper
    n = len(indptr) - 1
    tri3 = np.zeros(n, dtype=np.int64)
    for u in range(n):
        for ii in range(indptr[u], indptr[u + 1]):
            v = adjacency[ii]
            if v <= u:
                continue
            i = indptr[u]
            j = indptr[v]
            iend = indptr[u + 1]
            jend = indptr[v + 1]
            c = 0
            while i < iend and j < jend:
                a = adjacency[i]
                b = adjacency[j]
                if a == b:
                    tri3[a] += 1
                    c += 1
                    i += 1
                    j += 1
                elif a < b:
                    i += 1
                else:
                    j += 1
            tri3[u] += c
            tri3[v] += c
    return tri3


def triangle_counts(graph: Graph) -> np.ndarray:
    """Number of triangles through each vertex."""
    if graph.n == 0:
        return np.zeros(0, dtype=np.int64)
    tri3 = _triangles(graph.indptr, graph.adjacency)
    # each triangle is found at all three of its edges
    return tri3 // 3


def local_clustering(graph: Graph, v: int) -> float:
    """Fraction of adjacent neighbor pairs of v; 0 when deg(v) < 2."""
    if not 0 <= v < graph.n:
        raise GraphError(f"vertex {v} out of range")
    d = int(graph.degrees[v])
    if d < 2:
        return 0.0
    nbrs = graph.neighbors_of(v)
    closed = 0
    for u in nbrs:
        # sorted-merge intersection counts each triangle at both endpoints
        closed += np.intersect1d(nbrs, graph.neighbors_of(u), assume_unique=True).size
    return closed / 2 / (d * (d - 1) / 2)


def average_clustering(graph: Graph) -> float:
    """Mean of local clustering over all vertices (degree < 2 contributes 0)."""
    if graph.n == 0:
        raise GraphError("empty graph")
    tri = triangle_counts(graph)
    d = graph.degrees.astype(np.float64)
    pairs = d * (d - 1) / 2
    cc = np.zeros(graph.n)
    mask = graph.degrees >= 2
    cc[mask] = tri[mask] / pairs[mask]
    return float(cc.mean())


def sample_edge_endpoint(graph: Graph, rng: np.random.Generator):
    """Uniform edge, uniformly oriented: each oriented pair has prob 1/(2m)."""
    if graph.m == 0:
        raise GraphError("graph has no edges")
    e = graph.edges[rng.integers(graph.m)]
    if rng.integers(2):
        return int(e[1]), int(e[0])
    return int(e[0]), int(e[1])

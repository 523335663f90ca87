import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degmix import (DegreeSequence, Graph, GraphError, average_clustering,
                    build_graph, local_clustering, sample_edge_endpoint,
                    triangle_counts)
from conftest import random_simple_graph


class TestBuildGraph:
    def test_dedup_and_self_loop(self):
        g = build_graph([(0, 1), (1, 0), (1, 1)])
        assert g.n == 2 and g.m == 1
        assert g.dropped_duplicates == 1
        assert g.dropped_self_loops == 1
        np.testing.assert_array_equal(g.edges, [[0, 1]])

    def test_empty(self):
        g = build_graph([])
        assert g.n == 0 and g.m == 0

    def test_triangle(self):
        g = build_graph([(0, 1), (1, 2), (2, 0)])
        np.testing.assert_array_equal(g.degrees, [2, 2, 2])
        assert g.m == 3

    def test_label_compaction_first_seen(self):
        g = build_graph([(7, 3), (3, 12)])
        np.testing.assert_array_equal(g.labels, [7, 3, 12])
        np.testing.assert_array_equal(g.edges, [[0, 1], [1, 2]])

    def test_negative_ids_rejected(self):
        with pytest.raises(GraphError):
            build_graph([(-1, 2)])

    def test_adjacency_sorted_and_symmetric(self, rng):
        g = random_simple_graph(rng)
        for v in range(g.n):
            nbrs = g.neighbors_of(v)
            assert np.all(np.diff(nbrs) > 0)
            for u in nbrs:
                assert v in g.neighbors_of(u)

    @given(st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)),
                    max_size=60))
    @settings(max_examples=50, deadline=None)
    def test_handshake(self, pairs):
        g = build_graph(pairs)
        assert g.degrees.sum() == 2 * g.m


class TestClustering:
    def test_triangle_local(self):
        g = build_graph([(0, 1), (1, 2), (2, 0)])
        assert all(local_clustering(g, v) == 1.0 for v in range(3))
        assert average_clustering(g) == 1.0

    def test_path_center(self, path3):
        assert local_clustering(path3, 1) == 0.0
        assert average_clustering(path3) == 0.0

    def test_k4_minus_edge(self):
        # vertices 0,1 degree 3 (cc 2/3), vertices 2,3 degree 2 (cc 1)
        g = build_graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
        assert local_clustering(g, 0) == pytest.approx(2 / 3)
        assert local_clustering(g, 2) == pytest.approx(1.0)
        assert average_clustering(g) == pytest.approx(5 / 6)

    def test_empty_graph_error(self):
        with pytest.raises(GraphError, match="empty"):
            average_clustering(build_graph([]))

    def test_triangle_counts_match_local(self, rng):
        for _ in range(20):
            g = random_simple_graph(rng)
            tri = triangle_counts(g)
            for v in range(g.n):
                d = g.degrees[v]
                expected = tri[v] / (d * (d - 1) / 2) if d >= 2 else 0.0
                assert local_clustering(g, v) == pytest.approx(expected)

    def test_relabel_invariance(self, rng):
        for _ in range(10):
            g = random_simple_graph(rng)
            perm = rng.permutation(g.n)
            g2 = Graph.from_edges(g.n, perm[g.edges])
            for v in range(g.n):
                assert local_clustering(g, v) == pytest.approx(
                    local_clustering(g2, perm[v]))
            assert average_clustering(g) == pytest.approx(average_clustering(g2))


class TestDegreeSequence:
    def test_ccdf_endpoints(self, rng):
        g = random_simple_graph(rng)
        ds = g.degree_sequence()
        assert ds.ccdf(0) == 1.0
        assert ds.ccdf(ds.max_degree + 1) == 0.0
        ks = np.arange(ds.max_degree + 2)
        vals = ds.ccdf(ks)
        assert np.all(np.diff(vals) <= 0)

    def test_isolated_vertices_counted(self):
        g = Graph.from_edges(4, [(0, 1)])
        ds = g.degree_sequence()
        assert ds.ccdf(1) == 0.5
        assert ds.count_map() == {0: 2, 1: 2}


class TestEdgeEndpointSampling:
    def test_single_edge_orientations(self, rng):
        g = build_graph([(0, 1)])
        seen = {sample_edge_endpoint(g, rng) for _ in range(100)}
        assert seen == {(0, 1), (1, 0)}

    def test_p3_endpoint_degrees(self, path3, rng):
        # 4 oriented endpoints: degree 2 with prob 1/2, degree 1 with prob 1/2
        draws = np.array([path3.degrees[sample_edge_endpoint(path3, rng)[0]]
                          for _ in range(4000)])
        assert abs((draws == 2).mean() - 0.5) < 0.05

    def test_empty_errors(self):
        with pytest.raises(GraphError):
            sample_edge_endpoint(build_graph([]), np.random.default_rng(0))

    def test_size_bias_dominance(self, rng):
        # edge-endpoint degree CCDF dominates the node degree CCDF
        for _ in range(20):
            g = random_simple_graph(rng)
            deg = g.degrees
            endpoint_deg = np.concatenate([deg[g.edges[:, 0]],
                                           deg[g.edges[:, 1]]])
            for x in range(0, deg.max() + 2):
                assert (endpoint_deg >= x).mean() >= (deg >= x).mean() - 1e-12

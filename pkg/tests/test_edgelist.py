import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degmix import (EdgeListFormatError, build_graph, read_edge_list,
                    write_edge_list)
from conftest import random_simple_graph


def test_konect_style_parse(tmp_path):
    f = tmp_path / "net.txt"
    f.write_text("% comment\n1 2\n2 3\n")
    g, report = read_edge_list(f)
    assert g.n == 3 and g.m == 2
    np.testing.assert_array_equal(np.sort(g.degrees), [1, 1, 2])
    assert report.edges_parsed == 2
    assert report.dropped_self_loops == 0


def test_self_loop_reported(tmp_path):
    f = tmp_path / "net.txt"
    f.write_text("5 5\n1 5\n")
    g, report = read_edge_list(f)
    assert report.dropped_self_loops == 1
    assert g.m == 1


def test_malformed_line_number(tmp_path):
    f = tmp_path / "net.txt"
    f.write_text("1 2\na b\n")
    with pytest.raises(EdgeListFormatError, match="line 2"):
        read_edge_list(f)


def test_wrong_token_count(tmp_path):
    f = tmp_path / "net.txt"
    f.write_text("1 2 9\n")
    with pytest.raises(EdgeListFormatError, match="line 1"):
        read_edge_list(f)
    g, _ = read_edge_list(f, allow_extra_columns=True)
    assert g.m == 1


def test_hash_comments_and_blank_lines(tmp_path):
    f = tmp_path / "net.txt"
    f.write_text("# hdr\n\n1 2\n")
    g, _ = read_edge_list(f)
    assert g.m == 1


def test_empty_graph_round_trip(tmp_path):
    f = tmp_path / "out.txt"
    write_edge_list(build_graph([]), f)
    content = f.read_text()
    assert content.startswith("%")
    g, _ = read_edge_list(f)
    assert g.n == 0 and g.m == 0


def test_round_trip_p3(tmp_path, path3):
    f = tmp_path / "out.txt"
    write_edge_list(path3, f)
    assert len([l for l in f.read_text().splitlines()
                if not l.startswith("%")]) == 2
    g, report = read_edge_list(f)
    assert sorted(g.degrees) == sorted(path3.degrees)
    # idempotent: the emitted file is already canonical
    assert report.dropped_duplicates == 0 and report.dropped_self_loops == 0


def test_round_trip_deterministic_bytes(tmp_path, k2_k3):
    f1 = tmp_path / "a.txt"
    f2 = tmp_path / "b.txt"
    write_edge_list(k2_k3, f1)
    write_edge_list(k2_k3, f2)
    assert f1.read_bytes() == f2.read_bytes()


@given(st.integers(0, 2**31))
@settings(max_examples=25, deadline=None)
def test_round_trip_edge_multiset(tmp_path_factory, seed):
    rng = np.random.default_rng(seed)
    g = random_simple_graph(rng)
    path = tmp_path_factory.mktemp("rt") / "g.txt"
    write_edge_list(g, path)
    g2, report = read_edge_list(path)
    # isolated vertices cannot survive an edge-list round trip
    assert g2.m == g.m and g2.n == int((g.degrees > 0).sum())
    restored = np.sort(g2.labels[g2.edges] - 1, axis=1)
    original = {tuple(e) for e in g.edges}
    assert {tuple(e) for e in restored} == original
    assert report.dropped_duplicates == 0

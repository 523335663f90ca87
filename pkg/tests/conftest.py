import numpy as np
import pytest

from degmix import Graph, build_graph


def random_simple_graph(rng, n_max=30, p=0.25) -> Graph:
    """Erdos-Renyi-ish test graph with at least one edge."""
    while True:
        n = int(rng.integers(2, n_max + 1))
        mask = rng.random((n, n)) < p
        iu, iv = np.triu_indices(n, k=1)
        keep = mask[iu, iv]
        if keep.any():
            return Graph.from_edges(n, np.column_stack([iu[keep], iv[keep]]))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# --- tiny fixture graphs used across modules ---------------------------------

@pytest.fixture
def path3():
    return build_graph([(0, 1), (1, 2)])


@pytest.fixture
def star3():
    return build_graph([(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def k2_k3():
    return build_graph([(0, 1), (2, 3), (3, 4), (4, 2)])


@pytest.fixture
def c5():
    return build_graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])

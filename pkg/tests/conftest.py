import itertools
import random

import pytest
from hypothesis import strategies as st

from tropaut.graph import Multigraph


def path(n):
    return Multigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n):
    if n == 1:
        return Multigraph(1, ((0, 0),))
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def shuffled(G, seed):
    """Same graph with vertices renamed and edges reordered."""
    rng = random.Random(seed)
    perm = list(G.vertices)
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in G.endpoints]
    rng.shuffle(edges)
    return Multigraph(G.num_vertices, tuple(edges))


def brute_force_code(G):
    """Lexicographic minimum of the column-major upper triangle over all orderings."""
    A = G.adjacency_matrix()
    n = G.num_vertices
    best = None
    for p in itertools.permutations(range(n)):
        code = tuple(A[p[i]][p[j]] for j in range(n) for i in range(j + 1))
        if best is None or code < best:
            best = code
    return best


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=7, connected=False):
    n = draw(st.integers(1, max_vertices))
    m = draw(st.integers(0, max_edges))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    edges = draw(st.lists(pair, min_size=m, max_size=m))
    if connected:
        # thread a random spanning tree through the vertices first
        order = draw(st.permutations(range(n)))
        tree = [(order[i], order[draw(st.integers(0, i - 1))]) for i in range(1, n)]
        edges = tree + edges
    return Multigraph(n, tuple(edges))


@pytest.fixture
def rng():
    return random.Random(20261018)

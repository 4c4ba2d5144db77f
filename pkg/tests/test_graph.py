import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycle, multigraphs, path
from tropaut.automorphism import are_isomorphic
from tropaut.families import banana, bouquet, h, lollipop
from tropaut.graph import (
    Multigraph,
    betti_number,
    bridges,
    connected_components,
    contract,
    cut_vertices,
    decompose_at,
    degree,
    degrees,
    is_leafless,
    leafless_core,
    subdivide,
    suppress_degree_two,
)


def test_multigraph_validates_endpoints():
    with pytest.raises(ValueError, match="edge 1"):
        Multigraph(2, ((0, 1), (0, 2)))
    assert Multigraph(2, ((1, 0),)).endpoints == ((0, 1),)


def test_degree_counts_loops_twice():
    assert degree(bouquet(1), 0) == 2
    assert degree(banana(2), 0) == degree(banana(2), 1) == 3
    assert degree(lollipop(3), 0) == 3
    with pytest.raises(IndexError):
        degree(banana(2), 2)


def test_is_leafless():
    assert is_leafless(banana(2))
    assert not is_leafless(path(2))
    assert is_leafless(bouquet(1))


def test_connected_components():
    assert connected_components(banana(2)) == [[0, 1]]
    assert len(connected_components(Multigraph(2, ((0, 0), (1, 1))))) == 2
    assert connected_components(Multigraph(0)) == []


@pytest.mark.parametrize("g", range(1, 7))
def test_betti_of_families(g):
    assert betti_number(banana(g)) == g
    assert betti_number(bouquet(g)) == g
    if g >= 2:
        assert betti_number(lollipop(g)) == g


def test_betti_of_tree():
    assert betti_number(path(5)) == 0
    assert betti_number(Multigraph(4, ((0, 1), (0, 2), (0, 3)))) == 0


def test_bridges_examples():
    assert bridges(lollipop(3)) == {0, 1, 2}
    assert bridges(banana(2)) == set()
    assert bridges(path(3)) == {0, 1}


def test_cut_vertices_examples():
    G = subdivide(bouquet(2), 2)  # hub 0, loop midpoints 1 and 2
    assert cut_vertices(G) == {0}
    assert cut_vertices(banana(3)) == set()
    assert cut_vertices(path(3)) == {1}


def test_contract_lollipop_bridges_gives_bouquet():
    q = contract(lollipop(3), bridges(lollipop(3)))
    assert q.graph.num_vertices == 1 and q.graph.num_edges == 3
    assert all(u == v for u, v in q.graph.endpoints)
    assert q.kept_edges == (3, 4, 5)


def test_contract_empty_set_is_identity():
    G = lollipop(4)
    q = contract(G, set())
    assert q.graph == G and q.projection == tuple(G.vertices)


def test_contract_banana_edge_gives_two_loops():
    q = contract(banana(2), {0})
    assert q.graph == Multigraph(1, ((0, 0), (0, 0)))


def test_contract_rejects_bad_edge():
    with pytest.raises(IndexError):
        contract(banana(2), {3})


def test_subdivide_examples():
    assert subdivide(bouquet(1), [2]) == Multigraph(2, ((0, 1), (1, 0)))
    assert subdivide(banana(2), 1) == banana(2)
    G = subdivide(banana(2), 2)
    assert (G.num_vertices, G.num_edges, betti_number(G)) == (5, 6, 2)
    with pytest.raises(ValueError):
        subdivide(banana(2), [1, 0, 1])


def test_leafless_core_examples():
    assert leafless_core(path(4)).graph.num_vertices == 0
    pendant = Multigraph(5, ((0, 1), (0, 1), (0, 1), (1, 2), (2, 3), (3, 4)))
    core = leafless_core(pendant)
    assert core.graph == banana(2)
    assert core.vertex_embedding == (0, 1) and core.edge_embedding == (0, 1, 2)
    assert leafless_core(banana(3)).graph == banana(3)


def test_decompose_examples():
    d = decompose_at(bouquet(2), 0)
    assert d.k == 2 and d.part_betti == (1, 1)
    assert decompose_at(banana(2), 0).k == 1
    d = decompose_at(h(), 0)
    assert d.k == 2 and d.part_betti == (2, 2)
    assert sorted(e for es in d.edge_maps for e in es) == list(range(h().num_edges))


def test_decompose_rejects_disconnected():
    with pytest.raises(ValueError):
        decompose_at(Multigraph(2, ((0, 0), (1, 1))), 0)


def test_suppress_degree_two():
    sm = suppress_degree_two(subdivide(banana(3), [1, 2, 3, 4]))
    assert sm.graph == banana(3)
    assert sorted(sm.chain_lengths()) == [1, 2, 3, 4]
    sm = suppress_degree_two(cycle(5))
    assert sm.graph == bouquet(1) and sm.chain_lengths() == [5]


# -- properties ----------------------------------------------------------------

def _components_after(G, drop_vertices=(), drop_edges=()):
    keep = [v for v in G.vertices if v not in drop_vertices]
    idx = {v: i for i, v in enumerate(keep)}
    edges = tuple((idx[u], idx[v]) for e, (u, v) in enumerate(G.endpoints)
                  if e not in drop_edges and u in idx and v in idx)
    return len(connected_components(Multigraph(len(keep), edges)))


@settings(max_examples=300, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=8))
def test_handshake(G):
    assert sum(degrees(G)) == 2 * G.num_edges


@settings(max_examples=300, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=8))
def test_bridges_and_cut_vertices_match_deletion(G):
    base = len(connected_components(G))
    expected_bridges = {e for e in range(G.num_edges) if _components_after(G, drop_edges={e}) > base}
    assert bridges(G) == expected_bridges
    expected_cuts = {v for v in G.vertices if _components_after(G, drop_vertices={v}) > base}
    assert cut_vertices(G) == expected_cuts
    parallel = G.multiplicities()
    for e in bridges(G):
        u, v = G.endpoints[e]
        assert u != v and parallel[(u, v)] == 1


@settings(max_examples=300, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=8))
def test_bridge_contraction_keeps_betti(G):
    assert betti_number(contract(G, bridges(G)).graph) == betti_number(G)


@settings(max_examples=200, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=6), st.data())
def test_subdivision_invariants(G, data):
    counts = data.draw(st.lists(st.integers(1, 3), min_size=G.num_edges, max_size=G.num_edges))
    S = subdivide(G, counts)
    assert betti_number(S) == betti_number(G)
    assert is_leafless(S) == is_leafless(G)
    assert len(bridges(S)) == sum(counts[e] for e in bridges(G))


def _peel_randomly(G, seed):
    rng = random.Random(seed)
    alive_v, alive_e = set(G.vertices), set(range(G.num_edges))
    while True:
        deg = {v: 0 for v in alive_v}
        for e in alive_e:
            u, v = G.endpoints[e]
            deg[u] += 1
            deg[v] += 1
        low = sorted(v for v in alive_v if deg[v] < 2)
        if not low:
            return alive_v, alive_e
        v = rng.choice(low)
        alive_v.discard(v)
        alive_e -= {e for e in alive_e if v in G.endpoints[e]}


@settings(max_examples=200, deadline=None)
@given(multigraphs(max_vertices=7, max_edges=8))
def test_leafless_core_order_independent_and_idempotent(G):
    core = leafless_core(G)
    for seed in range(3):
        vs, es = _peel_randomly(G, seed)
        assert set(core.vertex_embedding) == vs and set(core.edge_embedding) == es
    again = leafless_core(core.graph)
    assert again.graph == core.graph
    if core.graph.num_vertices:
        assert min(degrees(core.graph)) >= 2


@settings(max_examples=150, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=8, connected=True))
def test_decomposition_partitions_edges(G):
    for x in G.vertices:
        d = decompose_at(G, x)
        flat = sorted(e for es in d.edge_maps for e in es)
        assert flat == list(range(G.num_edges))
        for part in d.parts:
            assert len(connected_components(part)) == 1
        if not bridges(G):
            assert sum(d.part_betti) == betti_number(G)


@pytest.mark.parametrize("g", range(2, 7))
def test_lollipop_contracts_to_bouquet(g):
    G = lollipop(g)
    assert are_isomorphic(contract(G, bridges(G)).graph, bouquet(g))

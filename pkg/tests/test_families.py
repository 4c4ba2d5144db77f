import math
from fractions import Fraction as F

import pytest

from conftest import cycle
from tropaut.automorphism import automorphism_count_oracle, automorphisms, stabilizer, CellSet
from tropaut.families import (
    banana,
    bouquet,
    classify_extremal,
    classify_fixed_point_extremal,
    family,
    fixed_point_bound,
    h,
    h1,
    h2,
    hurwitz_bound,
    leaf_burst,
    lollipop,
)
from tropaut.graph import Multigraph, betti_number, bridges, degrees, is_leafless, remove_vertex, connected_components, subdivide
from tropaut.metric import MetricGraph, genus, isometry_group


def test_constructor_shapes():
    assert (banana(1).num_vertices, banana(1).num_edges) == (2, 2)
    L = lollipop(2)
    assert (L.num_vertices, len(bridges(L)), sum(u == v for u, v in L.endpoints)) == (3, 2, 2)
    for bad in (lambda: banana(0), lambda: bouquet(0), lambda: lollipop(1)):
        with pytest.raises(ValueError):
            bad()


def test_named_graphs():
    assert sorted(degrees(h1())) == [3, 3, 3, 3] and h1().num_edges == 6
    assert sorted(degrees(h2())) == [3, 3, 3, 3] and betti_number(h2()) == 3
    H = h()
    assert (H.num_vertices, H.num_edges, betti_number(H)) == (5, 8, 4)
    assert sorted(degrees(H)) == [2, 2, 4, 4, 4]
    rest, _, _ = remove_vertex(H, 0)
    assert [betti_number(Multigraph(len(c), ())) for c in connected_components(rest)] and len(connected_components(rest)) == 2


@pytest.mark.parametrize("G, order", [(h1(), 24), (h2(), 16), (h(), 32)])
def test_named_orders_match_oracle(G, order):
    assert automorphisms(G, cap=0).order == order == automorphism_count_oracle(G)


@pytest.mark.parametrize("g", range(2, 7))
def test_family_orders(g):
    assert automorphisms(banana(g), cap=0).order == 2 * math.factorial(g + 1)
    assert automorphisms(bouquet(g), cap=0).order == math.factorial(g)
    if g <= 5:
        assert automorphism_count_oracle(banana(g)) == 2 * math.factorial(g + 1)


@pytest.mark.parametrize("g", range(3, 7))
def test_subdivided_bouquet_order(g):
    G = subdivide(bouquet(g), 2)
    assert automorphisms(G, cap=0).order == 2 ** g * math.factorial(g) == hurwitz_bound(g)
    if G.num_vertices <= 8:
        assert automorphism_count_oracle(G) == hurwitz_bound(g)


def test_bounds():
    assert hurwitz_bound(2) == 12 and hurwitz_bound(3) == 48 and hurwitz_bound(4) == 384
    assert fixed_point_bound(2) == 8
    with pytest.raises(ValueError):
        hurwitz_bound(1)


def test_family_lookup():
    assert family("banana", 3) == banana(3)
    assert family("h1") == h1()
    with pytest.raises(ValueError):
        family("banana")
    with pytest.raises(ValueError):
        family("nope", 2)


def test_classify_extremal_examples():
    c = classify_extremal(subdivide(banana(3), 2))
    assert c.tag == "A_banana" and c.parameters["count"] == 2
    assert classify_extremal(subdivide(bouquet(3), 2)).tag == "B_bouquet"
    assert classify_extremal(subdivide(lollipop(3), [1, 1, 1, 2, 2, 2])).tag == "C_lollipop"
    assert classify_extremal(h1()).tag == "none"
    assert classify_extremal(bouquet(3)).tag == "none"  # loops need count >= 2
    assert classify_extremal(subdivide(banana(4), 1)).tag == "none"
    assert classify_extremal(subdivide(banana(2), [1, 1, 2])).tag == "none"
    with pytest.raises(ValueError):
        classify_extremal(banana(1))


def test_classify_fixed_point_examples():
    assert classify_fixed_point_extremal(Multigraph(1), 0) == "trivial"
    assert classify_fixed_point_extremal(cycle(2), 1) == "banana1_subdivision"
    assert classify_fixed_point_extremal(subdivide(bouquet(3), 2), 0) == "B_at_cut_vertex"
    assert classify_fixed_point_extremal(subdivide(bouquet(3), 2), 1) == "none"
    G = subdivide(lollipop(3), [1, 1, 1, 2, 2, 2])
    assert classify_fixed_point_extremal(G, 0) == "C_at_star_center"
    assert classify_fixed_point_extremal(h1(), 0) == "none"


def test_fixed_point_classification_matches_stabiliser():
    cases = [
        (Multigraph(1), 0),
        (cycle(3), 0),
        (subdivide(bouquet(3), 2), 0),
        (subdivide(lollipop(3), [1, 1, 1, 2, 2, 2]), 0),
        (subdivide(lollipop(2), [2, 2, 2, 2]), 1),
        (subdivide(lollipop(2), [2, 2, 2, 2]), 0),
        (banana(3), 0),
    ]
    for G, x in cases:
        g = betti_number(G)
        order = stabilizer(G, CellSet.of([x]), cap=0).order
        assert order <= fixed_point_bound(g)
        assert (order == fixed_point_bound(g)) == (classify_fixed_point_extremal(G, x) != "none")


@pytest.mark.parametrize("n", range(1, 6))
def test_leaf_burst(n):
    M = MetricGraph.uniform(banana(2))
    B = leaf_burst(M, 0, n)
    assert genus(B) == 2 and not is_leafless(B.graph)
    assert isometry_group(B, cap=0, allow_leaves=True).order >= math.factorial(n)


def test_leaf_burst_rejects_bad_input():
    M = MetricGraph.uniform(banana(2))
    with pytest.raises(ValueError):
        leaf_burst(M, 0, 0)
    with pytest.raises(IndexError):
        leaf_burst(M, 5, 1)
    assert leaf_burst(M, 1, 1).lengths[-1] == F(1)

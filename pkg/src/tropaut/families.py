"""Named graphs and the recognisers for graphs that attain the automorphism bound."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import (
    Multigraph,
    Smoothing,
    betti_number,
    degrees,
    is_connected,
    is_leafless,
    suppress_degree_two,
)

__all__ = [
    "banana",
    "bouquet",
    "lollipop",
    "h1",
    "h2",
    "h",
    "FAMILIES",
    "family",
    "hurwitz_bound",
    "fixed_point_bound",
    "ExtremalClass",
    "classify_extremal",
    "classify_fixed_point_extremal",
    "metric_extremal_class",
    "leaf_burst",
]


def banana(g: int) -> Multigraph:
    """Two vertices joined by ``g + 1`` parallel edges."""
    if g < 1:
        raise ValueError("banana graph needs g >= 1")
    return Multigraph(2, ((0, 1),) * (g + 1), f"banana({g})")


def bouquet(g: int) -> Multigraph:
    """One vertex carrying ``g`` loops."""
    if g < 1:
        raise ValueError("bouquet graph needs g >= 1")
    return Multigraph(1, ((0, 0),) * g, f"bouquet({g})")


def lollipop(g: int) -> Multigraph:
    """Star with ``g`` spokes, a loop at the end of each spoke.

    Vertex 0 is the hub; edges ``0..g-1`` are the spokes, ``g..2g-1`` the loops.
    """
    if g < 2:
        raise ValueError("lollipop graph needs g >= 2")
    spokes = tuple((0, i) for i in range(1, g + 1))
    loops = tuple((i, i) for i in range(1, g + 1))
    return Multigraph(g + 1, spokes + loops, f"lollipop({g})")


def h1() -> Multigraph:
    """K4."""
    return Multigraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)), "H1")


def h2() -> Multigraph:
    """4-cycle with two opposite edges doubled."""
    return Multigraph(4, ((0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (0, 3)), "H2")


def h() -> Multigraph:
    """Chain u=x=v of double edges with a digon hanging off u and off v.

    Vertex 0 is the middle vertex x.
    """
    # x=0, u=1, v=2, digon tips 3 (at u) and 4 (at v)
    return Multigraph(
        5,
        ((0, 1), (0, 1), (0, 2), (0, 2), (1, 3), (1, 3), (2, 4), (2, 4)),
        "H",
    )


FAMILIES = {
    "banana": banana,
    "bouquet": bouquet,
    "lollipop": lollipop,
    "h1": h1,
    "h2": h2,
    "h": h,
}


def family(name: str, g: int | None = None) -> Multigraph:
    try:
        make = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None
    if name in ("banana", "bouquet", "lollipop"):
        if g is None:
            raise ValueError(f"family {name!r} needs a genus")
        return make(g)
    return make()


def hurwitz_bound(g: int) -> int:
    """Largest automorphism count of a connected leafless graph of Betti number ``g >= 2``."""
    if g < 2:
        raise ValueError("bound is stated for g >= 2")
    return 12 if g == 2 else 2 ** g * math.factorial(g)


def fixed_point_bound(g: int) -> int:
    return 2 ** g * math.factorial(g)


@dataclass(frozen=True)
class ExtremalClass:
    tag: str  # A_banana | B_bouquet | C_lollipop | none
    parameters: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.tag != "none"

    def to_json(self) -> dict:
        return {"tag": self.tag, "parameters": dict(self.parameters)}


NONE = ExtremalClass("none")


def _uniform(values) -> int | None:
    values = set(values)
    return values.pop() if len(values) == 1 else None


def _banana_shape(sm: Smoothing, g: int) -> bool:
    G = sm.graph
    return G.num_vertices == 2 and G.num_edges == g + 1 and all(p == (0, 1) for p in G.endpoints)


def _bouquet_shape(sm: Smoothing, g: int) -> bool:
    G = sm.graph
    return G.num_vertices == 1 and G.num_edges == g


def _lollipop_shape(sm: Smoothing, g: int):
    """``(hub, spoke chains, loop chains)`` when the smoothing is a lollipop with g >= 3."""
    G = sm.graph
    if g < 3 or G.num_vertices != g + 1 or G.num_edges != 2 * g:
        return None
    deg = degrees(G)
    loops = [e for e, (u, v) in enumerate(G.endpoints) if u == v]
    spokes = [e for e, (u, v) in enumerate(G.endpoints) if u != v]
    looped = sorted(G.endpoints[e][0] for e in loops)
    hubs = [v for v in G.vertices if v not in looped]
    if len(loops) != g or len(hubs) != 1 or len(set(looped)) != g:
        return None
    hub = hubs[0]
    if deg[hub] != g or any(hub not in G.endpoints[e] for e in spokes):
        return None
    return hub, spokes, loops


def _dumbbell_shape(sm: Smoothing):
    """``(spoke chain, loop chains)`` for two looped vertices joined by one chain."""
    G = sm.graph
    if G.num_vertices != 2 or G.num_edges != 3:
        return None
    loops = [e for e, (u, v) in enumerate(G.endpoints) if u == v]
    links = [e for e, (u, v) in enumerate(G.endpoints) if u != v]
    if len(loops) != 2 or len(links) != 1 or {G.endpoints[e][0] for e in loops} != {0, 1}:
        return None
    return links[0], loops


def _check_leafless(G: Multigraph, min_betti: int) -> int:
    if not is_connected(G) or G.num_vertices == 0:
        raise ValueError("graph must be connected and nonempty")
    if not is_leafless(G):
        raise ValueError("graph must be leafless")
    g = betti_number(G)
    if g < min_betti:
        raise ValueError(f"Betti number must be at least {min_betti}, got {g}")
    return g


def classify_extremal(G: Multigraph) -> ExtremalClass:
    """Recognise the uniformly subdivided banana / bouquet / lollipop graphs.

    Works on the smoothed graph and its chain lengths; never looks at the
    automorphism group.
    """
    g = _check_leafless(G, 2)
    sm = suppress_degree_two(G)
    lengths = sm.chain_lengths()
    if g in (2, 3) and _banana_shape(sm, g):
        c = _uniform(lengths)
        if c is not None:
            return ExtremalClass("A_banana", {"g": g, "count": c})
    if g >= 3 and _bouquet_shape(sm, g):
        c = _uniform(lengths)
        if c is not None and c >= 2:
            return ExtremalClass("B_bouquet", {"g": g, "count": c})
    shape = _lollipop_shape(sm, g)
    if shape is not None:
        _, spokes, loops = shape
        cl = _uniform(lengths[e] for e in loops)
        cb = _uniform(lengths[e] for e in spokes)
        if cl is not None and cl >= 2 and cb is not None:
            return ExtremalClass("C_lollipop", {"g": g, "loop_count": cl, "bridge_count": cb})
    return NONE


def classify_fixed_point_extremal(G: Multigraph, x: int) -> str:
    """Which pointed graphs ``(G, x)`` have a stabiliser of size exactly ``2^g g!``.

    Returns ``trivial``, ``banana1_subdivision``, ``B_at_cut_vertex``,
    ``C_at_star_center`` or ``none``.
    """
    G._check_vertex(x)
    if G.num_vertices == 1 and G.num_edges == 0:
        return "trivial"
    g = _check_leafless(G, 0)
    if g == 1:
        if G.num_vertices >= 2 and all(d == 2 for d in degrees(G)):
            return "banana1_subdivision"
        return "none"
    if g < 2:
        return "none"
    sm = suppress_degree_two(G)
    lengths = sm.chain_lengths()
    if _bouquet_shape(sm, g):
        c = _uniform(lengths)
        if c is not None and c >= 2 and x == sm.vertices[0]:
            return "B_at_cut_vertex"
        return "none"
    if g == 2:
        shape = _dumbbell_shape(sm)
        if shape is None:
            return "none"
        link, loops = shape
        cl = _uniform(lengths[e] for e in loops)
        inner = sm.chain_vertices[link]
        if cl is None or cl < 2 or len(sm.chains[link]) % 2:
            return "none"
        return "C_at_star_center" if x == inner[len(inner) // 2] else "none"
    shape = _lollipop_shape(sm, g)
    if shape is None:
        return "none"
    hub, spokes, loops = shape
    cl = _uniform(lengths[e] for e in loops)
    cb = _uniform(lengths[e] for e in spokes)
    if cl is not None and cl >= 2 and cb is not None and x == sm.vertices[hub]:
        return "C_at_star_center"
    return "none"


def metric_extremal_class(sm: Smoothing, lengths: list[Fraction], g: int) -> ExtremalClass:
    """Equality cases for metric graphs, read off a smoothing with chain lengths."""
    if g in (2, 3) and _banana_shape(sm, g) and _uniform(lengths) is not None:
        return ExtremalClass("A_banana", {"g": g, "length": str(lengths[0])})
    if g >= 3 and _bouquet_shape(sm, g) and _uniform(lengths) is not None:
        return ExtremalClass("B_bouquet", {"g": g, "length": str(lengths[0])})
    shape = _lollipop_shape(sm, g)
    if shape is not None:
        _, spokes, loops = shape
        ll = _uniform(lengths[e] for e in loops)
        lb = _uniform(lengths[e] for e in spokes)
        if ll is not None and lb is not None:
            return ExtremalClass("C_lollipop", {"g": g, "loop_length": str(ll), "bridge_length": str(lb)})
    return NONE


def leaf_burst(M, v: int, n: int):
    """Attach ``n`` unit-length pendant edges at vertex ``v`` of a metric graph."""
    from .metric import MetricGraph

    M.graph._check_vertex(v)
    if n < 1:
        raise ValueError("need at least one pendant edge")
    G = M.graph
    base = G.num_vertices
    edges = G.endpoints + tuple((v, base + i) for i in range(n))
    lengths = M.lengths + (Fraction(1),) * n
    return MetricGraph(Multigraph(base + n, edges), lengths)

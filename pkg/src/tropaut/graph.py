"""Finite undirected multigraphs with loops, and the structural operations on them.

Vertices are ``0..n-1``; edges are positional, so two edges with the same
endpoints are distinct parallel edges.  A loop at ``u`` is stored as ``(u, u)``.
Graphs are immutable; every operation returns a new graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Multigraph",
    "Contraction",
    "Core",
    "CutDecomposition",
    "degree",
    "is_leafless",
    "connected_components",
    "is_connected",
    "betti_number",
    "bridges",
    "cut_vertices",
    "contract",
    "subdivide",
    "leafless_core",
    "decompose_at",
    "remove_vertex",
    "subgraph",
    "degrees",
    "Smoothing",
    "suppress_degree_two",
]


@dataclass(frozen=True)
class Multigraph:
    num_vertices: int
    endpoints: tuple[tuple[int, int], ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.num_vertices < 0:
            raise ValueError("num_vertices must be nonnegative")
        norm = []
        for idx, pair in enumerate(self.endpoints):
            u, v = pair
            for w in (u, v):
                if not (0 <= w < self.num_vertices):
                    raise ValueError(f"edge {idx}: vertex {w} out of range [0, {self.num_vertices})")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "endpoints", tuple(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], name: str | None = None) -> "Multigraph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges), name)

    @property
    def num_edges(self) -> int:
        return len(self.endpoints)

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints[e]
        return u == v

    def ends(self, e: int) -> frozenset[int]:
        """The endpoint set of edge ``e`` (one element for a loop)."""
        return frozenset(self.endpoints[e])

    def incident_edges(self, v: int) -> list[int]:
        self._check_vertex(v)
        return [e for e, (a, b) in enumerate(self.endpoints) if a == v or b == v]

    def multiplicities(self) -> Counter:
        """Counter mapping each endpoint pair ``(u, v)``, ``u <= v``, to its edge count."""
        return Counter(self.endpoints)

    def adjacency_matrix(self) -> list[list[int]]:
        """Symmetric multiplicity matrix; the diagonal holds loop counts."""
        n = self.num_vertices
        mat = [[0] * n for _ in range(n)]
        for u, v in self.endpoints:
            mat[u][v] += 1
            if u != v:
                mat[v][u] += 1
        return mat

    def parallel_classes(self) -> dict[tuple[int, int], list[int]]:
        classes: dict[tuple[int, int], list[int]] = {}
        for e, pair in enumerate(self.endpoints):
            classes.setdefault(pair, []).append(e)
        return classes

    def relabel(self, vertex_map: Sequence[int]) -> "Multigraph":
        """Graph with vertex ``v`` renamed to ``vertex_map[v]``; edge order is kept."""
        if sorted(vertex_map) != list(range(self.num_vertices)):
            raise ValueError("vertex_map must be a permutation")
        return Multigraph(
            self.num_vertices,
            tuple((vertex_map[u], vertex_map[v]) for u, v in self.endpoints),
            self.name,
        )

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.num_vertices):
            raise IndexError(f"invalid vertex {v}")

    def _check_edge(self, e: int) -> None:
        if not (0 <= e < self.num_edges):
            raise IndexError(f"invalid edge {e}")

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Multigraph{label} n={self.num_vertices} edges={list(self.endpoints)}>"


def degree(G: Multigraph, v: int) -> int:
    """Number of edge incidences at ``v``; a loop counts twice."""
    G._check_vertex(v)
    return sum((a == v) + (b == v) for a, b in G.endpoints)


def degrees(G: Multigraph) -> list[int]:
    deg = [0] * G.num_vertices
    for u, v in G.endpoints:
        deg[u] += 1
        deg[v] += 1
    return deg


def is_leafless(G: Multigraph) -> bool:
    return 1 not in degrees(G)


class _DSU:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def connected_components(G: Multigraph) -> list[list[int]]:
    """Vertex classes under reachability, each sorted, ordered by smallest member."""
    dsu = _DSU(G.num_vertices)
    for u, v in G.endpoints:
        dsu.union(u, v)
    classes: dict[int, list[int]] = {}
    for v in G.vertices:
        classes.setdefault(dsu.find(v), []).append(v)
    return sorted(classes.values())


def is_connected(G: Multigraph) -> bool:
    return len(connected_components(G)) <= 1


def betti_number(G: Multigraph) -> int:
    return G.num_edges - G.num_vertices + len(connected_components(G))


def _lowlink(G: Multigraph) -> tuple[set[int], set[int]]:
    # Iterative DFS keyed on edge ids so a parallel edge back to the parent
    # still counts as a back edge.
    n = G.num_vertices
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(G.endpoints):
        if u != v:
            adj[u].append((v, e))
            adj[v].append((u, e))
    disc = [-1] * n
    low = [0] * n
    found_bridges: set[int] = set()
    found_cuts: set[int] = set()
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == via:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    found_bridges.add(via)
                if parent == root:
                    root_children += 1
                elif low[v] >= disc[parent]:
                    found_cuts.add(parent)
        if root_children >= 2:
            found_cuts.add(root)
    return found_bridges, found_cuts


def bridges(G: Multigraph) -> set[int]:
    """Edges whose deletion increases the number of connected components."""
    return _lowlink(G)[0]


def cut_vertices(G: Multigraph) -> set[int]:
    """Vertices whose deletion (with incident edges) increases the component count."""
    return _lowlink(G)[1]


@dataclass(frozen=True)
class Contraction:
    graph: Multigraph
    projection: tuple[int, ...]  # old vertex -> new vertex
    kept_edges: tuple[int, ...]  # new edge -> old edge


def contract(G: Multigraph, S: Iterable[int]) -> Contraction:
    """Quotient ``G/S``: identify endpoints along every edge of ``S`` and delete ``S``.

    New vertices are numbered by the smallest old vertex in their class; the
    surviving edges keep their relative order.
    """
    S = set(S)
    for e in S:
        G._check_edge(e)
    dsu = _DSU(G.num_vertices)
    for e in S:
        u, v = G.endpoints[e]
        dsu.union(u, v)
    reps = sorted({dsu.find(v) for v in G.vertices})
    index = {r: i for i, r in enumerate(reps)}
    projection = tuple(index[dsu.find(v)] for v in G.vertices)
    kept = tuple(e for e in range(G.num_edges) if e not in S)
    edges = tuple((projection[G.endpoints[e][0]], projection[G.endpoints[e][1]]) for e in kept)
    return Contraction(Multigraph(len(reps), edges), projection, kept)


def _subdivide(G: Multigraph, counts) -> tuple[Multigraph, list[int]]:
    counts = _normalize_counts(G, counts)
    edges: list[tuple[int, int]] = []
    origin: list[int] = []
    n = G.num_vertices
    for e, (u, v) in enumerate(G.endpoints):
        c = counts[e]
        path = [u] + list(range(n, n + c - 1)) + [v]
        n += c - 1
        for a, b in zip(path, path[1:]):
            edges.append((a, b))
            origin.append(e)
    return Multigraph(n, tuple(edges)), origin


def _normalize_counts(G: Multigraph, counts) -> list[int]:
    if isinstance(counts, int):
        out = [counts] * G.num_edges
    elif isinstance(counts, Mapping):
        for e in counts:
            G._check_edge(e)
        out = [counts.get(e, 1) for e in range(G.num_edges)]
    else:
        out = list(counts)
        if len(out) != G.num_edges:
            raise ValueError(f"expected {G.num_edges} counts, got {len(out)}")
    for e, c in enumerate(out):
        if int(c) != c or c < 1:
            raise ValueError(f"edge {e}: subdivision count must be a positive integer, got {c}")
    return [int(c) for c in out]


def subdivide(G: Multigraph, counts: Mapping[int, int] | Sequence[int] | int) -> Multigraph:
    """Replace each edge ``e`` by a path of ``counts[e]`` edges.

    ``counts`` may be a sequence indexed by edge, a mapping (missing edges
    default to 1), or a single integer applied to every edge.  New vertices
    are appended after the old ones, edge by edge.
    """
    return _subdivide(G, counts)[0]


def subgraph(G: Multigraph, vertices: Iterable[int], edges: Iterable[int]) -> tuple[Multigraph, list[int], list[int]]:
    """Subgraph on the given cells, renumbered in increasing order.

    Returns the subgraph plus the new->old vertex and edge lists.
    """
    vs = sorted(set(vertices))
    es = sorted(set(edges))
    index = {v: i for i, v in enumerate(vs)}
    sub_edges = []
    for e in es:
        u, v = G.endpoints[e]
        if u not in index or v not in index:
            raise ValueError(f"edge {e} has an endpoint outside the vertex set")
        sub_edges.append((index[u], index[v]))
    return Multigraph(len(vs), tuple(sub_edges)), vs, es


def remove_vertex(G: Multigraph, x: int) -> tuple[Multigraph, list[int], list[int]]:
    """Delete ``x`` and its incident edges; returns the graph and new->old maps."""
    G._check_vertex(x)
    keep_e = [e for e, (u, v) in enumerate(G.endpoints) if u != x and v != x]
    return subgraph(G, (v for v in G.vertices if v != x), keep_e)


@dataclass(frozen=True)
class Core:
    graph: Multigraph
    vertex_embedding: tuple[int, ...]  # core vertex -> original vertex
    edge_embedding: tuple[int, ...]  # core edge -> original edge


def leafless_core(G: Multigraph) -> Core:
    """Maximum subgraph with minimum degree >= 2.

    Repeatedly removes isolated vertices and leaves (with their edge).  The
    result does not depend on removal order.
    """
    alive_v = set(G.vertices)
    alive_e = set(range(G.num_edges))
    deg = degrees(G)
    incident: list[list[int]] = [[] for _ in G.vertices]
    for e, (u, v) in enumerate(G.endpoints):
        incident[u].append(e)
        if u != v:
            incident[v].append(e)
    queue = [v for v in G.vertices if deg[v] < 2]
    while queue:
        v = queue.pop()
        if v not in alive_v or deg[v] >= 2:
            continue
        alive_v.discard(v)
        for e in incident[v]:
            if e in alive_e:
                alive_e.discard(e)
                a, b = G.endpoints[e]
                w = b if a == v else a
                deg[w] -= 1
                if w in alive_v and deg[w] < 2:
                    queue.append(w)
    sub, vs, es = subgraph(G, alive_v, alive_e)
    return Core(sub, tuple(vs), tuple(es))


@dataclass(frozen=True)
class CutDecomposition:
    """Parts ``G_i = U_i + {x}`` of a graph split at vertex ``x``.

    In every part the copy of ``x`` is vertex 0.  A loop at ``x`` forms its own
    one-vertex part.
    """

    cut_vertex: int
    parts: tuple[Multigraph, ...]
    part_betti: tuple[int, ...]
    vertex_maps: tuple[tuple[int, ...], ...]  # part vertex -> original vertex
    edge_maps: tuple[tuple[int, ...], ...]  # part edge -> original edge

    @property
    def k(self) -> int:
        return len(self.parts)


def decompose_at(G: Multigraph, x: int) -> CutDecomposition:
    G._check_vertex(x)
    if not is_connected(G):
        raise ValueError("decompose_at requires a connected graph")
    rest, vmap, _ = remove_vertex(G, x)
    parts, bettis, vmaps, emaps = [], [], [], []
    for comp in connected_components(rest):
        members = {vmap[i] for i in comp}
        es = [e for e, (u, v) in enumerate(G.endpoints)
              if (u in members or v in members)]
        vs = [x] + sorted(members)
        index = {v: i for i, v in enumerate(vs)}
        part = Multigraph(len(vs), tuple((index[G.endpoints[e][0]], index[G.endpoints[e][1]]) for e in es))
        parts.append(part)
        bettis.append(betti_number(part))
        vmaps.append(tuple(vs))
        emaps.append(tuple(es))
    for e, (u, v) in enumerate(G.endpoints):
        if u == x and v == x:
            parts.append(Multigraph(1, ((0, 0),)))
            bettis.append(1)
            vmaps.append((x,))
            emaps.append((e,))
    return CutDecomposition(x, tuple(parts), tuple(bettis), tuple(vmaps), tuple(emaps))


@dataclass(frozen=True)
class Smoothing:
    """A graph with its suppressible 2-valent vertices removed.

    ``chains[i]`` lists, in path order, the original edges merged into edge
    ``i`` of ``graph``; ``vertices[i]`` is the original vertex behind vertex
    ``i``.  ``chain_vertices[i]`` holds the interior vertices of chain ``i``.
    """

    graph: Multigraph
    vertices: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]
    chain_vertices: tuple[tuple[int, ...], ...]

    def chain_lengths(self) -> list[int]:
        return [len(c) for c in self.chains]


def suppress_degree_two(G: Multigraph) -> Smoothing:
    """Merge the two edges at every 2-valent vertex that meets two distinct edges.

    A component that is a bare cycle keeps its smallest vertex, carrying a
    single loop.
    """
    deg = degrees(G)
    incident: list[list[int]] = [[] for _ in G.vertices]
    for e, (u, v) in enumerate(G.endpoints):
        incident[u].append(e)
        if u != v:
            incident[v].append(e)
    branch = {v for v in G.vertices if deg[v] != 2}
    for comp in connected_components(G):
        if not branch.intersection(comp):
            branch.add(comp[0])
    keep = sorted(branch)
    index = {v: i for i, v in enumerate(keep)}
    used: set[int] = set()
    edges, chains, interiors = [], [], []
    for b in keep:
        for e0 in incident[b]:
            if e0 in used:
                continue
            chain, inner = [e0], []
            used.add(e0)
            cur = b
            e = e0
            while True:
                u, v = G.endpoints[e]
                nxt = v if u == cur else u
                if nxt in branch:
                    break
                inner.append(nxt)
                e = next(f for f in incident[nxt] if f != e)
                used.add(e)
                chain.append(e)
                cur = nxt
            edges.append((index[b], index[nxt]))
            chains.append(tuple(chain))
            interiors.append(tuple(inner))
    return Smoothing(Multigraph(len(keep), tuple(edges)), tuple(keep), tuple(chains), tuple(interiors))

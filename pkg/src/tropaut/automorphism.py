"""Automorphism groups of multigraphs.

An automorphism is a pair ``(vertex_perm, edge_perm)`` with
``ends(edge_perm[e]) == vertex_perm(ends(e))`` for every edge.  Loops carry no
orientation, so a lone loop contributes no symmetry of its own.

The search backtracks over vertex images only.  Candidate images are pruned
by colour refinement (degree, loop signature and the multiset of parallel-class
signatures towards each neighbour colour).  For a complete vertex map the
compatible edge bijections are counted in closed form: every parallel class is
sent to its image class, and within a class the free edges of each colour can
be matched in ``count!`` ways.

The group order comes from a stabiliser chain on the vertex ordering: the
orbit of the ``i``-th vertex under the pointwise stabiliser of the earlier
ones is found by searching for one witness per candidate image.  Those
witnesses, plus transpositions inside parallel classes, are the generators.
"""

from __future__ import annotations

import itertools
import math
import struct
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

from .graph import (
    Multigraph,
    contract,
    degrees,
    is_connected,
    is_leafless,
    leafless_core,
    remove_vertex,
)

__all__ = [
    "GraphMap",
    "AutomorphismGroup",
    "CellSet",
    "RestrictionWitness",
    "EmptyCoreError",
    "DEFAULT_ELEMENT_CAP",
    "is_automorphism",
    "automorphisms",
    "automorphism_count_oracle",
    "stabilizer",
    "restriction_to_core",
    "quotient_map",
    "canonical_form",
    "canonical_graph",
    "are_isomorphic",
    "factorial_inequality_check",
    "generate_closure",
]

DEFAULT_ELEMENT_CAP = 10_000
ORACLE_MAX_VERTICES = 8
CANONICAL_MAX_VERTICES = 10


@dataclass(frozen=True)
class GraphMap:
    vertex_perm: tuple[int, ...]
    edge_perm: tuple[int, ...]

    @classmethod
    def identity(cls, G: Multigraph) -> "GraphMap":
        return cls(tuple(G.vertices), tuple(range(G.num_edges)))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.vertex_perm)) and all(
            i == x for i, x in enumerate(self.edge_perm)
        )

    def __call__(self, other: "GraphMap") -> "GraphMap":
        return self.compose(other)

    def compose(self, other: "GraphMap") -> "GraphMap":
        """``self o other``: apply ``other`` first."""
        return GraphMap(
            tuple(self.vertex_perm[i] for i in other.vertex_perm),
            tuple(self.edge_perm[i] for i in other.edge_perm),
        )

    def inverse(self) -> "GraphMap":
        vinv = [0] * len(self.vertex_perm)
        for i, x in enumerate(self.vertex_perm):
            vinv[x] = i
        einv = [0] * len(self.edge_perm)
        for i, x in enumerate(self.edge_perm):
            einv[x] = i
        return GraphMap(tuple(vinv), tuple(einv))

    def to_json(self) -> dict:
        return {"vertex_perm": list(self.vertex_perm), "edge_perm": list(self.edge_perm)}

    @classmethod
    def from_json(cls, data: dict) -> "GraphMap":
        return cls(tuple(int(x) for x in data["vertex_perm"]), tuple(int(x) for x in data["edge_perm"]))


@dataclass(frozen=True)
class AutomorphismGroup:
    order: int
    generators: tuple[GraphMap, ...]
    elements: tuple[GraphMap, ...] | None = None

    def to_json(self) -> dict:
        return {"order": self.order, "generators": [g.to_json() for g in self.generators]}


@dataclass(frozen=True)
class CellSet:
    vertices: frozenset[int] = frozenset()
    edges: frozenset[int] = frozenset()

    @classmethod
    def of(cls, vertices: Iterable[int] = (), edges: Iterable[int] = ()) -> "CellSet":
        return cls(frozenset(vertices), frozenset(edges))

    def __or__(self, other: "CellSet") -> "CellSet":
        return CellSet(self.vertices | other.vertices, self.edges | other.edges)


def _check_perm(p: Sequence[int], size: int, what: str) -> None:
    if len(p) != size:
        raise ValueError(f"{what} has length {len(p)}, expected {size}")
    if sorted(p) != list(range(size)):
        raise ValueError(f"{what} is not a permutation")


def is_automorphism(G: Multigraph, f: GraphMap) -> bool:
    _check_perm(f.vertex_perm, G.num_vertices, "vertex_perm")
    _check_perm(f.edge_perm, G.num_edges, "edge_perm")
    fv = f.vertex_perm
    for e, (u, v) in enumerate(G.endpoints):
        a, b = fv[u], fv[v]
        if G.endpoints[f.edge_perm[e]] != ((a, b) if a <= b else (b, a)):
            return False
    return True


class _Search:
    """Backtracking engine shared by every group computation in the package."""

    def __init__(
        self,
        G: Multigraph,
        edge_colors: Sequence[Hashable] | None = None,
        fixed_vertices: Iterable[int] = (),
        fixed_edges: Iterable[int] = (),
    ) -> None:
        self.G = G
        n = self.n = G.num_vertices
        colors = list(edge_colors) if edge_colors is not None else [0] * G.num_edges
        if len(colors) != G.num_edges:
            raise ValueError("edge_colors must have one entry per edge")
        self.colors = colors
        self.fixed_vertices = frozenset(fixed_vertices)
        self.fixed_edges = frozenset(fixed_edges)
        for v in self.fixed_vertices:
            G._check_vertex(v)
        for e in self.fixed_edges:
            G._check_edge(e)

        self.classes = G.parallel_classes()
        # sig[u][v]: sorted colours of the edges between u and v
        sig: list[list[tuple]] = [[() for _ in range(n)] for _ in range(n)]
        for (u, v), es in self.classes.items():
            s = tuple(sorted(colors[e] for e in es))
            sig[u][v] = s
            sig[v][u] = s
        self.sig = sig

        markers: list[list] = [[] for _ in range(n)]
        for v in self.fixed_vertices:
            markers[v].append(("v", v))
        for e in sorted(self.fixed_edges):
            u, v = G.endpoints[e]
            markers[u].append(("e", u, v))
            if u != v:
                markers[v].append(("e", u, v))
        deg = degrees(G)
        initial = [
            (tuple(sorted(markers[v])), deg[v], sig[v][v],
             tuple(sorted(sig[v][w] for w in range(n) if w != v and sig[v][w])))
            for v in range(n)
        ]
        self.color = self._refine(initial)
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(self.color[v], []).append(v)
        self.domain = [cells[self.color[v]] for v in range(n)]
        self.order = self._vertex_order()
        self.edge_factor = self._edge_factor()

    def _refine(self, initial: list) -> list[int]:
        n = self.n
        color = _rank(initial)
        while True:
            sigs = [
                (color[v], tuple(sorted((color[w], self.sig[v][w]) for w in range(n) if w != v and self.sig[v][w])))
                for v in range(n)
            ]
            new = _rank(sigs)
            if len(set(new)) == len(set(color)):
                return new
            color = new

    def _vertex_order(self) -> list[int]:
        n = self.n
        remaining = set(range(n))
        order: list[int] = []
        links = [0] * n
        while remaining:
            v = min(remaining, key=lambda w: (-links[w], len(self.domain[w]), w))
            order.append(v)
            remaining.discard(v)
            for w in remaining:
                if self.sig[v][w]:
                    links[w] += 1
        return order

    def _edge_factor(self) -> int:
        factor = 1
        for es in self.classes.values():
            free: dict = {}
            for e in es:
                if e not in self.fixed_edges:
                    free[self.colors[e]] = free.get(self.colors[e], 0) + 1
            for c in free.values():
                factor *= math.factorial(c)
        return factor

    def _fits(self, img: list[int], level: int, w: int) -> bool:
        v = self.order[level]
        sig = self.sig
        if sig[v][v] != sig[w][w]:
            return False
        for j in range(level):
            u = self.order[j]
            if sig[v][u] != sig[w][img[u]]:
                return False
        # a fixed edge must keep its endpoint pair
        for e in self.fixed_edges:
            a, b = self.G.endpoints[e]
            if v == a or v == b:
                other = b if v == a else a
                if w not in (a, b):
                    return False
                if img[other] != -1 and {w, img[other]} != {a, b}:
                    return False
        return True

    def _leaves(self, img: list[int], used: list[bool], level: int) -> Iterator[tuple[int, ...]]:
        if level == self.n:
            yield tuple(img)
            return
        v = self.order[level]
        for w in self.domain[v]:
            if used[w] or not self._fits(img, level, w):
                continue
            img[v] = w
            used[w] = True
            yield from self._leaves(img, used, level + 1)
            img[v] = -1
            used[w] = False

    def vertex_maps(self) -> Iterator[tuple[int, ...]]:
        return self._leaves([-1] * self.n, [False] * self.n, 0)

    def _witness(self, level: int, w: int) -> tuple[int, ...] | None:
        img = [-1] * self.n
        used = [False] * self.n
        for j in range(level):
            u = self.order[j]
            img[u] = u
            used[u] = True
        v = self.order[level]
        if used[w] or not self._fits(img, level, w):
            return None
        img[v] = w
        used[w] = True
        return next(self._leaves(img, used, level + 1), None)

    def chain(self) -> tuple[int, list[tuple[int, ...]]]:
        """Order of the vertex-map group and the witnesses that generate it."""
        size = 1
        gens: list[tuple[int, ...]] = []
        level_gens: list[list[tuple[int, ...]]] = [[] for _ in range(self.n)]
        for level in range(self.n - 1, -1, -1):
            v = self.order[level]
            pool = [g for lv in range(level, self.n) for g in level_gens[lv]]
            orbit = {v}
            for w in self.domain[v]:
                if w in orbit:
                    continue
                p = self._witness(level, w)
                if p is None:
                    continue
                level_gens[level].append(p)
                pool.append(p)
                orbit.add(w)
                frontier = list(orbit)
                while frontier:
                    a = frontier.pop()
                    for g in pool:
                        b = g[a]
                        if b not in orbit:
                            orbit.add(b)
                            frontier.append(b)
            size *= len(orbit)
        for lv in range(self.n):
            gens.extend(level_gens[lv])
        return size, gens

    def lift(self, vmap: Sequence[int]) -> Iterator[tuple[int, ...]]:
        """Every edge permutation compatible with ``vmap``, in lexicographic order."""
        G = self.G
        slots: list[tuple[list[int], list[tuple[int, ...]]]] = []
        for (u, v), es in self.classes.items():
            a, b = vmap[u], vmap[v]
            target = self.classes[(a, b) if a <= b else (b, a)]
            by_color: dict = {}
            for e in es:
                if e in self.fixed_edges:
                    slots.append(([e], [(e,)]))
                else:
                    by_color.setdefault(self.colors[e], [[], []])[0].append(e)
            for t in target:
                if t not in self.fixed_edges:
                    by_color[self.colors[t]][1].append(t)
            for src, tgt in by_color.values():
                slots.append((src, list(itertools.permutations(tgt))))
        perm = [0] * G.num_edges
        for choice in itertools.product(*(options for _, options in slots)):
            for (src, _), images in zip(slots, choice):
                for e, t in zip(src, images):
                    perm[e] = t
            yield tuple(perm)

    def kernel_generators(self) -> list[tuple[int, ...]]:
        """Edge permutations inside parallel classes (vertices fixed)."""
        gens = []
        m = self.G.num_edges
        for es in self.classes.values():
            by_color: dict = {}
            for e in es:
                if e not in self.fixed_edges:
                    by_color.setdefault(self.colors[e], []).append(e)
            for group in by_color.values():
                if len(group) < 2:
                    continue
                swap = list(range(m))
                swap[group[0]], swap[group[1]] = group[1], group[0]
                gens.append(tuple(swap))
                if len(group) > 2:
                    cyc = list(range(m))
                    for i, e in enumerate(group):
                        cyc[e] = group[(i + 1) % len(group)]
                    gens.append(tuple(cyc))
        return gens


def _rank(items: list) -> list[int]:
    table = {key: i for i, key in enumerate(sorted(set(items)))}
    return [table[x] for x in items]


def _group(search: _Search, cap: int | None) -> AutomorphismGroup:
    G = search.G
    vorder, vgens = search.chain()
    order = vorder * search.edge_factor
    ident_v = tuple(G.vertices)
    gens = [GraphMap(p, next(search.lift(p))) for p in vgens]
    gens += [GraphMap(ident_v, ep) for ep in search.kernel_generators()]
    elements = None
    if cap is None or order <= cap:
        elements = tuple(
            GraphMap(vmap, emap) for vmap in search.vertex_maps() for emap in search.lift(vmap)
        )
        if len(elements) != order:
            raise AssertionError(f"element count {len(elements)} disagrees with order {order}")
    return AutomorphismGroup(order, tuple(gens), elements)


def automorphisms(
    G: Multigraph,
    cap: int | None = DEFAULT_ELEMENT_CAP,
    edge_colors: Sequence[Hashable] | None = None,
) -> AutomorphismGroup:
    """Aut(G), optionally restricted to maps that preserve ``edge_colors``.

    ``elements`` is filled in when the order is at most ``cap`` (``None`` means
    always).
    """
    return _group(_Search(G, edge_colors), cap)


def stabilizer(
    G: Multigraph,
    S: CellSet,
    cap: int | None = DEFAULT_ELEMENT_CAP,
    edge_colors: Sequence[Hashable] | None = None,
) -> AutomorphismGroup:
    """Subgroup of Aut(G) fixing every vertex and edge of ``S``."""
    return _group(_Search(G, edge_colors, S.vertices, S.edges), cap)


def automorphism_count_oracle(G: Multigraph) -> int:
    """|Aut(G)| by brute force over all vertex permutations."""
    n = G.num_vertices
    if n > ORACLE_MAX_VERTICES:
        raise ValueError(f"oracle limited to {ORACLE_MAX_VERTICES} vertices, got {n}")
    mult = G.multiplicities()
    total = 0
    for p in itertools.permutations(range(n)):
        term = 1
        for (u, v), m in mult.items():
            a, b = p[u], p[v]
            if mult.get((a, b) if a <= b else (b, a), 0) != m:
                term = 0
                break
            term *= math.factorial(m)
        total += term
    return total


def generate_closure(generators: Iterable[GraphMap], identity: GraphMap, limit: int = 1_000_000) -> set[GraphMap]:
    """All products of ``generators`` (breadth-first)."""
    gens = list(generators)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = g.compose(h)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
                    if len(seen) > limit:
                        raise RuntimeError("closure exceeded limit")
        frontier = nxt
    return seen


class EmptyCoreError(ValueError):
    """Raised when removing a vertex leaves no leafless core."""


@dataclass(frozen=True)
class RestrictionWitness:
    vertex: int
    core: Multigraph
    core_vertices: tuple[int, ...]  # core vertex -> vertex of G
    core_edges: tuple[int, ...]  # core edge -> edge of G
    anchor: int  # vertex of the core
    stabilizer_order: int
    core_stabilizer_order: int
    restrictions: tuple[GraphMap, ...] = field(repr=False)

    @property
    def injective(self) -> bool:
        return len(set(self.restrictions)) == len(self.restrictions)


def restriction_to_core(G: Multigraph, x: int, cap: int | None = None) -> RestrictionWitness:
    """Restrict every automorphism fixing ``x`` and its edges to the leafless core of ``G - x``.

    The anchor is the smallest core vertex touched by an edge outside the
    core; all restrictions fix it.  Raises :class:`EmptyCoreError` when the
    core is empty.
    """
    if not is_connected(G) or not is_leafless(G):
        raise ValueError("restriction_to_core requires a connected leafless graph")
    rest, rvmap, remap = remove_vertex(G, x)
    core = leafless_core(rest)
    if core.graph.num_vertices == 0:
        raise EmptyCoreError(f"removing vertex {x} leaves an empty core")
    core_vertices = tuple(rvmap[i] for i in core.vertex_embedding)
    core_edges = tuple(remap[i] for i in core.edge_embedding)
    in_core_e = set(core_edges)
    touched = {w for e in range(G.num_edges) if e not in in_core_e for w in G.endpoints[e]}
    vindex = {v: i for i, v in enumerate(core_vertices)}
    eindex = {e: i for i, e in enumerate(core_edges)}
    anchor = min(vindex[v] for v in touched if v in vindex)

    stab = stabilizer(G, CellSet.of([x], G.incident_edges(x)), cap=cap)
    if stab.elements is None:
        raise ValueError("stabilizer too large to materialise; raise cap")
    restrictions = []
    for f in stab.elements:
        vp = tuple(vindex[f.vertex_perm[v]] for v in core_vertices)
        ep = tuple(eindex[f.edge_perm[e]] for e in core_edges)
        restrictions.append(GraphMap(vp, ep))
    core_stab = stabilizer(core.graph, CellSet.of([anchor]), cap=0)
    return RestrictionWitness(
        x, core.graph, core_vertices, core_edges, anchor,
        stab.order, core_stab.order, tuple(restrictions),
    )


def quotient_map(G: Multigraph, S: Iterable[int], f: GraphMap) -> GraphMap:
    """The map induced by ``f`` on the contraction ``G/S``."""
    S = set(S)
    if {f.edge_perm[e] for e in S} != S:
        raise ValueError("edge set is not invariant under the map")
    q = contract(G, S)
    proj = q.projection
    fv = [-1] * q.graph.num_vertices
    for v in G.vertices:
        image = proj[f.vertex_perm[v]]
        if fv[proj[v]] == -1:
            fv[proj[v]] = image
        elif fv[proj[v]] != image:
            raise ValueError("map does not respect the contraction")
    eindex = {e: i for i, e in enumerate(q.kept_edges)}
    fe = tuple(eindex[f.edge_perm[e]] for e in q.kept_edges)
    return GraphMap(tuple(fv), fe)


def _canonical(G: Multigraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # Exact lexicographic minimum of the column-major upper triangle.  Column j
    # only involves the first j+1 chosen vertices, so keeping every partial
    # ordering that ties the best prefix loses nothing.
    n = G.num_vertices
    if n > CANONICAL_MAX_VERTICES:
        raise ValueError(f"canonical form limited to {CANONICAL_MAX_VERTICES} vertices, got {n}")
    A = G.adjacency_matrix()
    frontier: list[tuple[int, ...]] = [()]
    code: list[int] = []
    for _ in range(n):
        best = None
        nxt: list[tuple[int, ...]] = []
        for seq in frontier:
            for v in range(n):
                if v in seq:
                    continue
                col = tuple(A[p][v] for p in seq) + (A[v][v],)
                if best is None or col < best:
                    best = col
                    nxt = [seq + (v,)]
                elif col == best:
                    nxt.append(seq + (v,))
        code.extend(best)
        frontier = nxt
    return tuple(code), frontier[0] if frontier else ()


def canonical_form(G: Multigraph) -> bytes:
    """Isomorphism-invariant code: vertex count, then the lexicographically
    smallest column-major upper-triangular multiplicity matrix (loops on the
    diagonal) over all vertex orderings."""
    code, _ = _canonical(G)
    return struct.pack(f">H{len(code)}H", G.num_vertices, *code)


def canonical_graph(G: Multigraph) -> Multigraph:
    """``G`` relabelled into its canonical vertex order, edges sorted."""
    _, seq = _canonical(G)
    new = [0] * G.num_vertices
    for i, v in enumerate(seq):
        new[v] = i
    relabelled = G.relabel(new)
    return Multigraph(G.num_vertices, tuple(sorted(relabelled.endpoints)), G.name)


def graph_from_code(code: bytes) -> Multigraph:
    n = struct.unpack(">H", code[:2])[0]
    entries = struct.unpack(f">{(len(code) - 2) // 2}H", code[2:])
    edges = []
    k = 0
    for j in range(n):
        for i in range(j + 1):
            edges.extend([(i, j)] * entries[k])
            k += 1
    return Multigraph(n, tuple(edges))


def are_isomorphic(G1: Multigraph, G2: Multigraph) -> bool:
    if G1.num_vertices != G2.num_vertices or G1.num_edges != G2.num_edges:
        for G in (G1, G2):
            if G.num_vertices > CANONICAL_MAX_VERTICES:
                raise ValueError(f"canonical form limited to {CANONICAL_MAX_VERTICES} vertices")
        return False
    return canonical_form(G1) == canonical_form(G2)


def factorial_inequality_check(l: int, m: int, n: int) -> bool:
    """Check ``m! n! <= l! (m+n-l)!`` for positive ``l <= m, n``."""
    if min(l, m, n) < 1 or m < l or n < l:
        raise ValueError("need positive integers with m >= l and n >= l")
    f = math.factorial
    return f(m) * f(n) <= f(l) * f(m + n - l)

"""Metric graphs with exact rational edge lengths and their isometry groups.

Isometries are computed on a loopless combinatorial model: smooth away every
2-valent point, then split each loop at its midpoint into two parallel halves
of equal length.  On a loopless model a vertex/edge permutation pins down the
point map, so the length-preserving automorphisms of the model are exactly the
isometries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .automorphism import DEFAULT_ELEMENT_CAP, AutomorphismGroup, GraphMap, automorphisms, is_automorphism
from .graph import Multigraph, betti_number, is_connected, is_leafless, suppress_degree_two

__all__ = [
    "MetricGraph",
    "CanonicalModel",
    "IsometryGroup",
    "GenusError",
    "parse_length",
    "genus",
    "smooth",
    "canonical_model",
    "isometry_group",
    "isometry_count_oracle",
    "is_isometry",
    "subdivide_metric",
    "MetricBoundReport",
    "verify_metric_bound",
]

_LENGTH_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


class GenusError(ValueError):
    """The operation needs genus >= 2."""


def parse_length(value) -> Fraction:
    """Parse ``"p/q"``, ``"n"`` or an int into a positive Fraction."""
    if isinstance(value, bool):
        raise ValueError(f"malformed length {value!r}")
    if isinstance(value, int):
        q = Fraction(value)
    elif isinstance(value, Fraction):
        q = value
    elif isinstance(value, str):
        m = _LENGTH_RE.match(value)
        if not m:
            raise ValueError(f"malformed length {value!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise ValueError(f"zero denominator in {value!r}")
        q = Fraction(num, den)
    else:
        raise ValueError(f"malformed length {value!r}")
    if q <= 0:
        raise ValueError(f"length must be positive, got {value!r}")
    return q


@dataclass(frozen=True)
class MetricGraph:
    graph: Multigraph
    lengths: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.lengths) != self.graph.num_edges:
            raise ValueError(f"{self.graph.num_edges} edges but {len(self.lengths)} lengths")
        parsed = []
        for i, x in enumerate(self.lengths):
            try:
                parsed.append(parse_length(x))
            except ValueError as exc:
                raise ValueError(f"length {i}: {exc}") from None
        object.__setattr__(self, "lengths", tuple(parsed))

    @classmethod
    def uniform(cls, G: Multigraph, length=1) -> "MetricGraph":
        return cls(G, (Fraction(length),) * G.num_edges)

    def scaled(self, factor) -> "MetricGraph":
        factor = Fraction(factor)
        return MetricGraph(self.graph, tuple(x * factor for x in self.lengths))


@dataclass(frozen=True)
class CanonicalModel:
    """Loopless model.  ``vertex_origin[i]`` is the original vertex behind model
    vertex ``i`` (``None`` for a loop midpoint); ``edge_origin[i]`` is the chain
    of original edges covered by model edge ``i`` and which half of a split
    loop it is (``None`` when not split)."""

    model: MetricGraph
    vertex_origin: tuple[int | None, ...]
    edge_origin: tuple[tuple[tuple[int, ...], int | None], ...]


@dataclass(frozen=True)
class IsometryGroup:
    model: CanonicalModel
    group: AutomorphismGroup

    @property
    def order(self) -> int:
        return self.group.order


def genus(M: MetricGraph) -> int:
    if not is_connected(M.graph) or M.graph.num_vertices == 0:
        raise ValueError("genus is defined for connected metric graphs")
    return betti_number(M.graph)


def _smooth(M: MetricGraph):
    G = M.graph
    if not is_connected(G) or G.num_vertices == 0:
        raise ValueError("metric graph must be connected")
    sm = suppress_degree_two(G)
    if all(sum((a == v) + (b == v) for a, b in G.endpoints) == 2 for v in G.vertices):
        raise GenusError("a circle has no canonical smoothing")
    lengths = tuple(sum((M.lengths[e] for e in chain), Fraction(0)) for chain in sm.chains)
    return sm, MetricGraph(sm.graph, lengths)


def smooth(M: MetricGraph) -> MetricGraph:
    """Suppress every 2-valent point that joins two distinct edges, adding lengths."""
    return _smooth(M)[1]


def _require(M: MetricGraph, allow_leaves: bool) -> int:
    g = genus(M)
    if g < 2:
        raise GenusError(f"genus must be at least 2, got {g}")
    if not allow_leaves and not is_leafless(M.graph):
        raise ValueError("metric graph must be leafless")
    return g


def canonical_model(M: MetricGraph, allow_leaves: bool = False) -> CanonicalModel:
    """Vertices at every point of valence other than 2, plus one at each loop midpoint."""
    _require(M, allow_leaves)
    sm, S = _smooth(M)
    G = S.graph
    n = G.num_vertices
    edges: list[tuple[int, int]] = []
    lengths: list[Fraction] = []
    vorigin: list[int | None] = list(sm.vertices)
    eorigin = []
    for e, (u, v) in enumerate(G.endpoints):
        if u != v:
            edges.append((u, v))
            lengths.append(S.lengths[e])
            eorigin.append((sm.chains[e], None))
            continue
        mid = n
        n += 1
        vorigin.append(None)
        half = S.lengths[e] / 2
        for side in (0, 1):
            edges.append((u, mid))
            lengths.append(half)
            eorigin.append((sm.chains[e], side))
    model = MetricGraph(Multigraph(n, tuple(edges)), tuple(lengths))
    return CanonicalModel(model, tuple(vorigin), tuple(eorigin))


def is_isometry(model: MetricGraph, f: GraphMap) -> bool:
    return is_automorphism(model.graph, f) and all(
        model.lengths[f.edge_perm[e]] == model.lengths[e] for e in range(model.graph.num_edges)
    )


def isometry_group(M: MetricGraph, cap: int | None = DEFAULT_ELEMENT_CAP, allow_leaves: bool = False) -> IsometryGroup:
    """Aut of the metric graph as length-preserving automorphisms of its canonical model."""
    cm = canonical_model(M, allow_leaves)
    group = automorphisms(cm.model.graph, cap, edge_colors=cm.model.lengths)
    return IsometryGroup(cm, group)


def isometry_count_oracle(M: MetricGraph, allow_leaves: bool = False) -> int:
    """Filter every combinatorial automorphism of the model by exact length equality."""
    model = canonical_model(M, allow_leaves).model
    elements = automorphisms(model.graph, cap=None).elements
    return sum(1 for f in elements if is_isometry(model, f))


def subdivide_metric(M: MetricGraph, pieces: Mapping[int, Sequence]) -> MetricGraph:
    """Split edge ``e`` into consecutive pieces of the given lengths.

    The pieces of an edge must sum to its length; edges not listed are kept.
    """
    G = M.graph
    n = G.num_vertices
    edges: list[tuple[int, int]] = []
    lengths: list[Fraction] = []
    for e, (u, v) in enumerate(G.endpoints):
        parts = [parse_length(p) for p in pieces.get(e, [M.lengths[e]])]
        if sum(parts) != M.lengths[e]:
            raise ValueError(f"edge {e}: pieces sum to {sum(parts)}, expected {M.lengths[e]}")
        path = [u] + list(range(n, n + len(parts) - 1)) + [v]
        n += len(parts) - 1
        for a, b, x in zip(path, path[1:], parts):
            edges.append((a, b))
            lengths.append(x)
    for e in pieces:
        G._check_edge(e)
    return MetricGraph(Multigraph(n, tuple(edges)), tuple(lengths))


@dataclass(frozen=True)
class MetricBoundReport:
    genus: int
    order: int
    bound: int
    ok: bool
    extremal_class: str
    parameters: dict

    @property
    def attained(self) -> bool:
        return self.order == self.bound

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "order": self.order,
            "bound": self.bound,
            "ok": self.ok,
            "extremal_class": self.extremal_class,
            "parameters": dict(self.parameters),
        }


def verify_metric_bound(M: MetricGraph) -> MetricBoundReport:
    from .families import hurwitz_bound, metric_extremal_class

    g = _require(M, allow_leaves=False)
    order = isometry_group(M, cap=0).order
    bound = hurwitz_bound(g)
    sm, S = _smooth(M)
    cls = metric_extremal_class(sm, list(S.lengths), g)
    return MetricBoundReport(g, order, bound, order <= bound, cls.tag, dict(cls.parameters))


def lengths_to_strings(lengths: Iterable[Fraction]) -> list[str]:
    return [str(x) for x in lengths]

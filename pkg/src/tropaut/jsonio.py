"""JSON graph files.

    {"vertices": 2, "edges": [{"u": 0, "v": 1}, ...], "name": "...", "lengths": ["1", "1/2", ...]}

Edge order defines edge ids; ``u == v`` is a loop.  With ``lengths`` present
the file describes a metric graph.
"""

from __future__ import annotations

import json
import sys
from typing import IO

from .graph import Multigraph
from .metric import MetricGraph, parse_length

__all__ = ["GraphFormatError", "graph_to_json", "metric_to_json", "parse_graph", "load_graph", "dumps"]


class GraphFormatError(ValueError):
    pass


def graph_to_json(G: Multigraph) -> dict:
    out: dict = {"vertices": G.num_vertices, "edges": [{"u": u, "v": v} for u, v in G.endpoints]}
    if G.name:
        out["name"] = G.name
    return out


def metric_to_json(M: MetricGraph) -> dict:
    out = graph_to_json(M.graph)
    out["lengths"] = [str(x) for x in M.lengths]
    return out


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphFormatError(f"{what} must be an integer, got {value!r}")
    return value


def parse_graph(data) -> Multigraph | MetricGraph:
    if not isinstance(data, dict):
        raise GraphFormatError("graph must be a JSON object")
    if "vertices" not in data or "edges" not in data:
        raise GraphFormatError('graph needs "vertices" and "edges"')
    n = _int(data["vertices"], '"vertices"')
    if n < 0:
        raise GraphFormatError('"vertices" must be nonnegative')
    raw_edges = data["edges"]
    if not isinstance(raw_edges, list):
        raise GraphFormatError('"edges" must be an array')
    edges = []
    for i, item in enumerate(raw_edges):
        if not isinstance(item, dict) or "u" not in item or "v" not in item:
            raise GraphFormatError(f'edge {i}: expected {{"u": int, "v": int}}')
        u = _int(item["u"], f"edge {i} u")
        v = _int(item["v"], f"edge {i} v")
        for w in (u, v):
            if not 0 <= w < n:
                raise GraphFormatError(f"edge {i}: vertex {w} out of range [0, {n})")
        edges.append((u, v))
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise GraphFormatError('"name" must be a string')
    G = Multigraph(n, tuple(edges), name)
    if "lengths" not in data:
        return G
    raw = data["lengths"]
    if not isinstance(raw, list) or len(raw) != len(edges):
        raise GraphFormatError(f'"lengths" must be an array of {len(edges)} entries')
    lengths = []
    for i, x in enumerate(raw):
        try:
            lengths.append(parse_length(x))
        except ValueError as exc:
            raise GraphFormatError(f"length {i}: {exc}") from None
    return MetricGraph(G, tuple(lengths))


def load_graph(source: str | IO[str] | None = None) -> Multigraph | MetricGraph:
    """Read a graph file from a path, an open stream, or stdin (``None`` or ``"-"``)."""
    try:
        if source is None or source == "-":
            data = json.load(sys.stdin)
        elif isinstance(source, str):
            with open(source, encoding="utf-8") as fh:
                data = json.load(fh)
        else:
            data = json.load(source)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed JSON: {exc}") from None
    return parse_graph(data)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)

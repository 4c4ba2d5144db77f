"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 domain error (bad input, genus too
small, ...), 3 a bound violation or classification mismatch found by a sweep.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .automorphism import CellSet, automorphisms, canonical_form, stabilizer
from .enumeration import (
    DEFAULT_PALETTE,
    EnumSpec,
    enumerate_leafless,
    random_metric_sweep,
    verify_bound,
    verify_fixed_point_bound,
)
from .families import (
    FAMILIES,
    classify_extremal,
    classify_fixed_point_extremal,
    family,
)
from .graph import Multigraph, betti_number, bridges, contract, cut_vertices, leafless_core, remove_vertex, subdivide
from .jsonio import dumps, graph_to_json, load_graph, metric_to_json
from .metric import MetricGraph, canonical_model, isometry_group, parse_length, verify_metric_bound

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _length_list(text: str) -> list[Fraction]:
    try:
        return [parse_length(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", nargs="?", help="graph JSON file (default: stdin)")
    p.add_argument("--family", choices=sorted(FAMILIES), help="use a named graph instead of a file")
    p.add_argument("--g", type=int, help="genus / Betti number for --family")
    p.add_argument("--counts", type=_int_list, help="subdivision counts: one integer, or one per edge")
    p.add_argument("--lengths", type=_length_list, help="edge lengths (p/q or n), one per edge")


def _add_sweep(p: argparse.ArgumentParser, betti_required: bool = True) -> None:
    p.add_argument("--betti", type=int, required=betti_required)
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--min-degree", type=int, choices=(2, 3), default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include runtime_ms in JSON output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropaut", description="Automorphism groups of multigraphs and metric graphs.")
    parser.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=None, help="element materialisation cap")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("aut", parents=[common], help="order and generators of Aut(G)")
    _add_source(p)
    p = sub.add_parser("metric-aut", parents=[common], help="isometry group of a metric graph")
    _add_source(p)
    p = sub.add_parser("bridges", parents=[common], help="bridges and cut vertices")
    _add_source(p)
    p = sub.add_parser("contract", parents=[common], help="contract an edge set (default: all bridges)")
    _add_source(p)
    p.add_argument("--edges", type=_int_list)
    p = sub.add_parser("core", parents=[common], help="leafless core, optionally after deleting a vertex")
    _add_source(p)
    p.add_argument("--vertex", type=int)
    p = sub.add_parser("canonical-model", parents=[common], help="loopless model of a metric graph")
    _add_source(p)
    p = sub.add_parser("classify", parents=[common], help="extremal class of a graph (or pointed graph)")
    _add_source(p)
    p.add_argument("--vertex", type=int)
    p = sub.add_parser("family", parents=[common], help="emit a named graph as JSON")
    p.add_argument("name", choices=sorted(FAMILIES))
    p.add_argument("--g", type=int)
    p.add_argument("--counts", type=_int_list)
    p.add_argument("--lengths", type=_length_list)
    p = sub.add_parser("enumerate", parents=[common], help="list connected leafless graphs")
    _add_sweep(p)
    p = sub.add_parser("verify", parents=[common], help="check the automorphism bound over a sweep")
    _add_sweep(p)
    p = sub.add_parser("verify-metric", parents=[common], help="check the bound for a metric graph or a random sweep")
    _add_source(p)
    p.add_argument("--trials", type=int, help="run a random sweep with this many trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--palette", type=_length_list)
    p.add_argument("--max-vertices", type=int)
    p = sub.add_parser("fixed-point", parents=[common], help="check the vertex-stabiliser bound over a sweep")
    _add_sweep(p)
    return parser


def _source(args) -> Multigraph | MetricGraph:
    if args.family:
        if args.file:
            raise UsageError("give either a file or --family, not both")
        G = family(args.family, args.g)
    else:
        G = load_graph(args.file)
    if getattr(args, "counts", None):
        base = G.graph if isinstance(G, MetricGraph) else G
        if isinstance(G, MetricGraph):
            raise UsageError("--counts applies to combinatorial graphs only")
        counts = args.counts[0] if len(args.counts) == 1 else args.counts
        G = subdivide(base, counts)
    if getattr(args, "lengths", None):
        base = G.graph if isinstance(G, MetricGraph) else G
        G = MetricGraph(base, tuple(args.lengths))
    return G


def _graph(args) -> Multigraph:
    G = _source(args)
    return G.graph if isinstance(G, MetricGraph) else G


def _metric(args) -> MetricGraph:
    M = _source(args)
    if not isinstance(M, MetricGraph):
        raise UsageError("a metric graph needs lengths (in the file or via --lengths)")
    return M


def _emit(args, payload: dict, text: str) -> None:
    print(dumps(payload) if args.json else text)


def _cmd_aut(args) -> int:
    G = _graph(args)
    grp = automorphisms(G, cap=args.cap if args.cap is not None else 0)
    payload = grp.to_json()
    if grp.elements is not None and args.cap:
        payload["elements"] = [f.to_json() for f in grp.elements]
    _emit(args, payload, f"order: {grp.order}\ngenerators: {len(grp.generators)}")
    return EXIT_OK


def _cmd_metric_aut(args) -> int:
    M = _metric(args)
    iso = isometry_group(M, cap=args.cap if args.cap is not None else 0)
    payload = {"order": iso.order, "generators": [g.to_json() for g in iso.group.generators],
               "model": metric_to_json(iso.model.model)}
    _emit(args, payload, f"order: {iso.order}")
    return EXIT_OK


def _cmd_bridges(args) -> int:
    G = _graph(args)
    b, c = sorted(bridges(G)), sorted(cut_vertices(G))
    _emit(args, {"bridges": b, "cut_vertices": c}, f"bridges: {b}\ncut vertices: {c}")
    return EXIT_OK


def _cmd_contract(args) -> int:
    G = _graph(args)
    S = args.edges if args.edges is not None else sorted(bridges(G))
    q = contract(G, S)
    payload = {"graph": graph_to_json(q.graph), "projection": list(q.projection), "kept_edges": list(q.kept_edges)}
    _emit(args, payload, dumps(payload))
    return EXIT_OK


def _cmd_core(args) -> int:
    G = _graph(args)
    if args.vertex is not None:
        rest, vmap, emap = remove_vertex(G, args.vertex)
        core = leafless_core(rest)
        vs = [vmap[i] for i in core.vertex_embedding]
        es = [emap[i] for i in core.edge_embedding]
    else:
        core = leafless_core(G)
        vs, es = list(core.vertex_embedding), list(core.edge_embedding)
    payload = {"graph": graph_to_json(core.graph), "vertices": vs, "edges": es}
    _emit(args, payload, dumps(payload))
    return EXIT_OK


def _cmd_canonical_model(args) -> int:
    cm = canonical_model(_metric(args))
    payload = {
        "model": metric_to_json(cm.model),
        "vertex_origin": list(cm.vertex_origin),
        "edge_origin": [{"chain": list(chain), "half": half} for chain, half in cm.edge_origin],
    }
    _emit(args, payload, dumps(payload))
    return EXIT_OK


def _cmd_classify(args) -> int:
    G = _graph(args)
    if args.vertex is not None:
        tag = classify_fixed_point_extremal(G, args.vertex)
        order = stabilizer(G, CellSet.of([args.vertex]), cap=0).order
        _emit(args, {"class": tag, "stabilizer_order": order}, f"class: {tag}\n|Aut(G)_x|: {order}")
    else:
        cls = classify_extremal(G)
        order = automorphisms(G, cap=0).order
        payload = {"class": cls.tag, "parameters": cls.parameters, "order": order, "betti": betti_number(G)}
        _emit(args, payload, f"class: {cls.tag} {cls.parameters}\n|Aut(G)|: {order}")
    return EXIT_OK


def _cmd_family(args) -> int:
    G = family(args.name, args.g)
    if args.counts:
        G = subdivide(G, args.counts[0] if len(args.counts) == 1 else args.counts)
    if args.lengths:
        print(dumps(metric_to_json(MetricGraph(G, tuple(args.lengths)))))
    else:
        print(dumps(graph_to_json(G)))
    return EXIT_OK


def _spec(args) -> EnumSpec:
    return EnumSpec(args.betti, args.max_vertices, args.min_degree)


def _cmd_enumerate(args) -> int:
    graphs = list(enumerate_leafless(_spec(args)))
    if args.json:
        print(dumps([graph_to_json(G) for G in graphs]))
    else:
        for G in graphs:
            print(f"{canonical_form(G).hex()}  n={G.num_vertices} m={G.num_edges}")
        print(f"total: {len(graphs)}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = verify_bound(_spec(args), jobs=args.jobs)
    _emit(args, report.to_json(timing=args.timing), report.to_text())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _cmd_verify_metric(args) -> int:
    if args.trials is not None:
        if args.g is None:
            raise UsageError("--trials needs --g")
        report = random_metric_sweep(args.g, args.trials, args.seed, args.palette or DEFAULT_PALETTE,
                                     args.max_vertices)
        _emit(args, report.to_json(), report.to_text())
        return EXIT_OK if report.ok else EXIT_VIOLATION
    rep = verify_metric_bound(_metric(args))
    _emit(args, rep.to_json(),
          f"genus: {rep.genus}\norder: {rep.order}\nbound: {rep.bound}\nok: {rep.ok}\nclass: {rep.extremal_class}")
    consistent = (rep.order == rep.bound) == (rep.extremal_class != "none")
    return EXIT_OK if rep.ok and consistent else EXIT_VIOLATION


def _cmd_fixed_point(args) -> int:
    report = verify_fixed_point_bound(_spec(args), jobs=args.jobs)
    _emit(args, report.to_json(timing=args.timing), report.to_text())
    return EXIT_OK if report.ok else EXIT_VIOLATION


COMMANDS = {
    "aut": _cmd_aut,
    "metric-aut": _cmd_metric_aut,
    "bridges": _cmd_bridges,
    "contract": _cmd_contract,
    "core": _cmd_core,
    "canonical-model": _cmd_canonical_model,
    "classify": _cmd_classify,
    "family": _cmd_family,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
    "verify-metric": _cmd_verify_metric,
    "fixed-point": _cmd_fixed_point,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tropaut: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, IndexError, OSError) as exc:
        print(f"tropaut: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


run = main

if __name__ == "__main__":
    sys.exit(main())

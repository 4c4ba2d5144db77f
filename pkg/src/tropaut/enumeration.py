"""Isomorph-free enumeration of connected leafless multigraphs and the sweeps
that check the automorphism bounds over them.

Graphs with minimum degree >= 3 ("cores") are generated directly: fill the
multiplicity matrix row by row with degrees in non-increasing order, keep the
connected ones, and deduplicate by canonical form.  Every connected leafless
graph of Betti number ``g >= 2`` is a subdivision of exactly one core, so the
minimum-degree-2 stream is produced by subdividing cores and deduplicating
again.  :func:`enumerate_leafless_direct` distributes edges over all vertex
pairs without that shortcut; it is slow and kept as a cross-check.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .automorphism import (
    CellSet,
    automorphisms,
    canonical_form,
    graph_from_code,
    stabilizer,
)
from .families import (
    classify_extremal,
    classify_fixed_point_extremal,
    fixed_point_bound,
    hurwitz_bound,
)
from .graph import (
    Multigraph,
    betti_number,
    bridges,
    decompose_at,
    is_connected,
    subdivide,
)
from .metric import MetricGraph, verify_metric_bound

__all__ = [
    "EnumSpec",
    "ENUM_MAX_VERTICES",
    "enumerate_leafless",
    "enumerate_leafless_direct",
    "enumerate_connected",
    "VerificationReport",
    "verify_bound",
    "FixedPointReport",
    "verify_fixed_point_bound",
    "MetricSweepReport",
    "random_metric_sweep",
    "DEFAULT_PALETTE",
]

ENUM_MAX_VERTICES = 8
DEFAULT_PALETTE = (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2))
SWEEP_MAX_VERTICES = {2: 6, 3: 6, 4: 6, 5: 4}


@dataclass(frozen=True)
class EnumSpec:
    betti: int
    max_vertices: int
    min_degree: int = 2

    def __post_init__(self) -> None:
        if self.betti < 1:
            raise ValueError("betti must be at least 1")
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be at least 1")
        if self.min_degree not in (2, 3):
            raise ValueError("min_degree must be 2 or 3")
        if self.max_vertices > ENUM_MAX_VERTICES:
            raise ValueError(f"max_vertices is limited to {ENUM_MAX_VERTICES}")

    @property
    def vertex_limit(self) -> int:
        """Largest vertex count that can occur (handshake: sum(deg - 2) = 2g - 2)."""
        if self.min_degree == 3:
            return min(self.max_vertices, 2 * self.betti - 2)
        return self.max_vertices

    def to_json(self) -> dict:
        return {"betti": self.betti, "max_vertices": self.max_vertices, "min_degree": self.min_degree}


def _distribute(n: int, m: int, min_degree: int, sorted_degrees: bool = True) -> Iterator[Multigraph]:
    """Labelled connected multigraphs on ``n`` vertices with ``m`` edges and
    every degree ``>= min_degree``; with ``sorted_degrees`` only those whose
    degree sequence is non-increasing."""
    if n == 0:
        return
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    max_deg = 2 * m - min_degree * (n - 1)
    deg = [0] * n
    counts = [0] * len(slots)

    def rec(k: int, left: int) -> Iterator[Multigraph]:
        if k == len(slots):
            if left == 0:
                edges = tuple(p for p, c in zip(slots, counts) for _ in range(c))
                G = Multigraph(n, edges)
                if is_connected(G):
                    yield G
            return
        i, j = slots[k]
        weight = 2 if i == j else 1
        row_end = j == n - 1
        top = left
        for c in range(top + 1):
            deg[i] += weight * c
            if i != j:
                deg[j] += c
            ok = deg[i] <= max_deg and deg[j] <= max_deg
            if ok and row_end:
                ok = deg[i] >= min_degree and (not sorted_degrees or i == 0 or deg[i] <= deg[i - 1])
            if ok:
                need = sum(max(0, min_degree - deg[v]) for v in range(i + 1, n))
                ok = need <= 2 * (left - c)
            if ok:
                counts[k] = c
                yield from rec(k + 1, left - c)
                counts[k] = 0
            deg[i] -= weight * c
            if i != j:
                deg[j] -= c
            if deg[i] > max_deg:
                break

    yield from rec(0, m)


@functools.lru_cache(maxsize=None)
def _cores(g: int, max_n: int) -> dict[bytes, Multigraph]:
    out: dict[bytes, Multigraph] = {}
    for n in range(1, min(max_n, 2 * g - 2) + 1):
        for G in _distribute(n, n + g - 1, 3):
            code = canonical_form(G)
            if code not in out:
                out[code] = G
    return out


def _subdivisions(core: Multigraph, extra: int) -> Iterator[Multigraph]:
    m = core.num_edges
    for total in range(extra + 1):
        for bars in itertools.combinations(range(total + m - 1), m - 1):
            cuts = (-1,) + bars + (total + m - 1,)
            counts = [cuts[i + 1] - cuts[i] for i in range(m)]  # each >= 1, sum = total + m
            yield subdivide(core, counts)


@functools.lru_cache(maxsize=None)
def _leafless_codes(spec: EnumSpec) -> tuple[bytes, ...]:
    g, limit = spec.betti, spec.vertex_limit
    codes: set[bytes] = set()
    if spec.min_degree == 3:
        codes.update(_cores(g, limit))
    elif g == 1:
        for n in range(1, limit + 1):
            codes.add(canonical_form(subdivide(Multigraph(1, ((0, 0),)), [n])))
    else:
        for core in _cores(g, limit).values():
            for G in _subdivisions(core, limit - core.num_vertices):
                codes.add(canonical_form(G))
    return tuple(sorted(codes))


def enumerate_leafless(spec: EnumSpec) -> Iterator[Multigraph]:
    """One representative per isomorphism class of connected graphs with
    Betti number ``spec.betti``, minimum degree ``>= spec.min_degree`` and at
    most ``spec.max_vertices`` vertices, in canonical-code order.  Each
    representative is in canonical labelling."""
    for code in _leafless_codes(spec):
        yield graph_from_code(code)


def enumerate_leafless_direct(spec: EnumSpec) -> list[Multigraph]:
    """Same classes as :func:`enumerate_leafless`, by distributing
    ``n + g - 1`` edges over all vertex pairs and loop slots for every ``n``."""
    codes = set()
    for n in range(1, spec.vertex_limit + 1):
        for G in _distribute(n, n + spec.betti - 1, spec.min_degree, sorted_degrees=False):
            codes.add(canonical_form(G))
    return [graph_from_code(c) for c in sorted(codes)]


def enumerate_connected(max_vertices: int, max_edges: int) -> list[Multigraph]:
    """Every connected multigraph (loops allowed) up to isomorphism with
    ``1..max_vertices`` vertices and ``0..max_edges`` edges."""
    codes = set()
    for n in range(1, max_vertices + 1):
        for m in range(n - 1, max_edges + 1):
            for G in _distribute(n, m, 0, sorted_degrees=False):
                codes.add(canonical_form(G))
    return [graph_from_code(c) for c in sorted(codes)]


def _map(fn, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


@dataclass
class VerificationReport:
    spec: EnumSpec
    graph_count: int
    max_aut_order: int
    bound: int
    violations: list[dict]
    extremal: list[dict]
    mismatches: list[dict]
    runtime_ms: int = field(default=0, compare=False)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.mismatches

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "spec": self.spec.to_json(),
            "graph_count": self.graph_count,
            "max_aut_order": self.max_aut_order,
            "bound": self.bound,
            "violations": self.violations,
            "extremal": self.extremal,
            "mismatches": self.mismatches,
        }
        if timing:
            out["runtime_ms"] = self.runtime_ms
        return out

    def to_text(self) -> str:
        lines = [
            f"betti={self.spec.betti} max_vertices={self.spec.max_vertices} min_degree={self.spec.min_degree}",
            f"graphs: {self.graph_count}   max |Aut|: {self.max_aut_order}   bound: {self.bound}",
            f"violations: {len(self.violations)}   classification mismatches: {len(self.mismatches)}",
            f"{'|Aut|':>8}  {'class':<10}  parameters / code",
        ]
        for row in self.extremal:
            lines.append(f"{row['order']:>8}  {row['class']:<10}  {row['parameters']} {row['code']}")
        lines.append(f"runtime: {self.runtime_ms} ms")
        return "\n".join(lines)


def _bound_row(G: Multigraph) -> tuple[int, str, dict]:
    order = automorphisms(G, cap=0).order
    cls = classify_extremal(G)
    return order, cls.tag, dict(cls.parameters)


def verify_bound(spec: EnumSpec, jobs: int = 1) -> VerificationReport:
    """Check |Aut(G)| against the bound on every graph of the sweep, and that
    the structural classifier fires exactly on the graphs attaining it."""
    if spec.betti < 2:
        raise ValueError("the bound is stated for betti >= 2")
    start = time.perf_counter()
    graphs = list(enumerate_leafless(spec))
    bound = hurwitz_bound(spec.betti)
    rows = _map(_bound_row, graphs, jobs)
    violations, extremal, mismatches = [], [], []
    max_order = 0
    for G, (order, tag, params) in zip(graphs, rows):
        code = canonical_form(G).hex()
        max_order = max(max_order, order)
        if order > bound:
            violations.append({"code": code, "order": order})
        if order == bound:
            extremal.append({"code": code, "order": order, "class": tag, "parameters": params})
        if (order == bound) != (tag != "none"):
            mismatches.append({"code": code, "order": order, "class": tag})
    ms = int((time.perf_counter() - start) * 1000)
    return VerificationReport(spec, len(graphs), max_order, bound, violations, extremal, mismatches, ms)


@dataclass
class FixedPointReport:
    spec: EnumSpec
    graph_count: int
    pair_count: int
    claim_checks: int
    bound: int
    violations: list[dict]
    claim_violations: list[dict]
    equality: list[dict]
    mismatches: list[dict]
    runtime_ms: int = field(default=0, compare=False)

    @property
    def ok(self) -> bool:
        return not (self.violations or self.claim_violations or self.mismatches)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "spec": self.spec.to_json(),
            "graph_count": self.graph_count,
            "pair_count": self.pair_count,
            "claim_checks": self.claim_checks,
            "bound": self.bound,
            "violations": self.violations,
            "claim_violations": self.claim_violations,
            "equality": self.equality,
            "mismatches": self.mismatches,
        }
        if timing:
            out["runtime_ms"] = self.runtime_ms
        return out

    def to_text(self) -> str:
        lines = [
            f"betti={self.spec.betti} max_vertices={self.spec.max_vertices} min_degree={self.spec.min_degree}",
            f"graphs: {self.graph_count}   pairs (G, x): {self.pair_count}   bound: {self.bound}",
            f"refined-bound checks: {self.claim_checks}   refined violations: {len(self.claim_violations)}",
            f"violations: {len(self.violations)}   classification mismatches: {len(self.mismatches)}",
        ]
        for row in self.equality:
            lines.append(f"  equality: {row['code']} x={row['vertex']} -> {row['class']}")
        lines.append(f"runtime: {self.runtime_ms} ms")
        return "\n".join(lines)


def refined_fixed_point_bound(g: int, d: int) -> int:
    r = g - d + 1
    return 2 ** r * math.factorial(d) * math.factorial(r)


def _fixed_point_rows(G: Multigraph) -> list[tuple]:
    g = betti_number(G)
    bridgeless = not bridges(G)
    rows = []
    for x in G.vertices:
        order = stabilizer(G, CellSet.of([x]), cap=0).order
        refined = None
        if bridgeless and decompose_at(G, x).k == 1:
            d = len(G.incident_edges(x))
            refined = refined_fixed_point_bound(g, d)
        rows.append((x, order, refined, classify_fixed_point_extremal(G, x)))
    return rows


def verify_fixed_point_bound(spec: EnumSpec, jobs: int = 1) -> FixedPointReport:
    """|Aut(G)_x| <= 2^g g! for every enumerated G and vertex x, the refined
    bound when G is bridgeless and G - x is connected, and equality exactly
    on the recognised pointed graphs."""
    start = time.perf_counter()
    graphs = list(enumerate_leafless(spec))
    bound = fixed_point_bound(spec.betti)
    per_graph = _map(_fixed_point_rows, graphs, jobs)
    violations, claim_violations, equality, mismatches = [], [], [], []
    pairs = checks = 0
    for G, rows in zip(graphs, per_graph):
        code = canonical_form(G).hex()
        for x, order, refined, tag in rows:
            pairs += 1
            if order > bound:
                violations.append({"code": code, "vertex": x, "order": order})
            if refined is not None:
                checks += 1
                if order > refined:
                    claim_violations.append({"code": code, "vertex": x, "order": order, "refined": refined})
            if order == bound:
                equality.append({"code": code, "vertex": x, "class": tag})
            if (order == bound) != (tag != "none"):
                mismatches.append({"code": code, "vertex": x, "order": order, "class": tag})
    ms = int((time.perf_counter() - start) * 1000)
    return FixedPointReport(spec, len(graphs), pairs, checks, bound, violations, claim_violations,
                            equality, mismatches, ms)


@dataclass
class MetricSweepReport:
    genus: int
    trials: int
    seed: int
    max_vertices: int
    palette: tuple[Fraction, ...]
    rows: list[dict]

    @property
    def ok(self) -> bool:
        return all(r["ok"] and r["consistent"] for r in self.rows)

    @property
    def attained(self) -> int:
        return sum(1 for r in self.rows if r["order"] == r["bound"])

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "trials": self.trials,
            "seed": self.seed,
            "max_vertices": self.max_vertices,
            "palette": [str(x) for x in self.palette],
            "ok": self.ok,
            "attained": self.attained,
            "rows": self.rows,
        }

    def to_text(self) -> str:
        bad = [r for r in self.rows if not (r["ok"] and r["consistent"])]
        return (
            f"genus={self.genus} trials={self.trials} seed={self.seed} max_vertices={self.max_vertices}\n"
            f"all ok: {self.ok}   bound attained: {self.attained}   failures: {len(bad)}"
        )


def random_metric_sweep(
    g: int,
    trials: int,
    seed: int,
    palette: Sequence = DEFAULT_PALETTE,
    max_vertices: int | None = None,
) -> MetricSweepReport:
    """Random lengths on random graphs from the Betti-``g`` enumeration.

    A quarter of the trials (in expectation) use one palette value for every
    edge so that the equality cases come up; the rest draw each length
    independently.
    """
    if not 2 <= g <= 5:
        raise ValueError("random_metric_sweep supports 2 <= g <= 5")
    mv = max_vertices if max_vertices is not None else SWEEP_MAX_VERTICES[g]
    palette = tuple(Fraction(x) for x in palette)
    graphs = list(enumerate_leafless(EnumSpec(g, mv)))
    rng = random.Random(seed)
    rows = []
    for _ in range(trials):
        G = rng.choice(graphs)
        if rng.random() < 0.25:
            lengths = (rng.choice(palette),) * G.num_edges
        else:
            lengths = tuple(rng.choice(palette) for _ in range(G.num_edges))
        rep = verify_metric_bound(MetricGraph(G, lengths))
        rows.append({
            "code": canonical_form(G).hex(),
            "lengths": [str(x) for x in lengths],
            "order": rep.order,
            "bound": rep.bound,
            "ok": rep.ok,
            "class": rep.extremal_class,
            "consistent": (rep.order == rep.bound) == (rep.extremal_class != "none"),
        })
    return MetricSweepReport(g, trials, seed, mv, palette, rows)

"""Lower bounds for divisorial gonality: the reduction to a unit graph, and treewidth."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dhar import dhar_dgon
from .divisors import Divisor, dgon
from .errors import SizeLimit
from .ggon import DEFAULT_CAP, DEFAULT_VERTEX_LIMIT, ggon
from .graph import (
    MetrisedGraph,
    contract,
    remove_loops,
    restrict_to_lengths,
    simple_adjacency,
    subdivide_to_unit,
    underlying_graph,
)
from .monoid import find_positive_functional

TREEWIDTH_LIMIT = 14
DGON_VERTEX_LIMIT = 12


@dataclass
class PipelineResult:
    H: MetrisedGraph
    dgonH: int
    witness: Divisor
    trace: list[dict]

    def to_json(self) -> dict:
        return {"dgonH": self.dgonH, "witness": self.witness.to_json(), "trace": self.trace}


def combinatorial_lower_bound(g: MetrisedGraph) -> PipelineResult:
    """Reduce ``g`` to a unit graph ``H`` with ``dgon(H) <= dgon(g)`` and compute ``dgon(H)``."""
    trace: list[dict] = []
    g1 = remove_loops(g)
    trace.append({"step": "remove-loops", "removed": [e.id for e in g.loops]})

    g2 = restrict_to_lengths(g1)
    trace.append({"step": "restrict-monoid", "generators": [list(x) for x in g2.monoid.generator_list()]})

    f = find_positive_functional(g2.monoid)
    g3, vmap = contract(g2, f)
    contracted = sorted(v for v, r in vmap.items() if v != r)
    # the functional is positive on every length, so nothing may collapse
    assert len(g3.edges) == len(g2.edges) and not contracted, "strictly positive functional contracted an edge"
    trace.append(
        {
            "step": "contract",
            "functional": list(f.matrix[0]),
            "lengths": {e.id: e.length[0] for e in sorted(g3.edges, key=lambda e: e.id)},
            "contracted_edges": [],
        }
    )

    H = subdivide_to_unit(g3)
    trace.append(
        {
            "step": "subdivide",
            "subdivisions": {e.id: e.length[0] - 1 for e in sorted(g3.edges, key=lambda e: e.id)},
            "vertices": len(H.vertices),
            "edges": len(H.edges),
        }
    )

    d, witness = dhar_dgon(H)
    trace.append({"step": "dgon", "method": "burning", "dgon": d, "witness": witness.to_json()})
    return PipelineResult(H, d, witness, trace)


def treewidth(g: MetrisedGraph, limit: int = TREEWIDTH_LIMIT) -> int:
    """Exact treewidth of the simple graph underlying ``g``.

    Parallel edges and loops are ignored.  Uses the elimination-ordering
    recursion ``TW(S) = min_v max(TW(S - v), |Q(S - v, v)|)``, where
    ``Q(S, v)`` is the set of vertices outside ``S + v`` reachable from ``v``
    through ``S``.
    """
    n = len(g.vertices)
    if n > limit:
        raise SizeLimit(f"exact treewidth is limited to {limit} vertices")
    order = g.sorted_vertices
    pos = {v: i for i, v in enumerate(order)}
    nbr = [0] * n
    for v, ws in simple_adjacency(g).items():
        for w in ws:
            nbr[pos[v]] |= 1 << pos[w]
    full = (1 << n) - 1

    def q_size(S: int, v: int) -> int:
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            x = stack.pop()
            fresh = nbr[x] & ~seen
            seen |= fresh
            out |= fresh & ~S
            inner = fresh & S
            while inner:
                low = inner & -inner
                stack.append(low.bit_length() - 1)
                inner ^= low
        return bin(out).count("1")

    @lru_cache(maxsize=None)
    def tw(S: int) -> int:
        if S == 0:
            return -1
        best = n
        rest = S
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            best = min(best, max(tw(S ^ low), q_size(S ^ low, v)))
        return best

    return max(tw(full), 0)


def bounds_report(
    g: MetrisedGraph,
    cap: int = DEFAULT_CAP,
    ggon_limit: int | None = DEFAULT_VERTEX_LIMIT,
    dgon_limit: int = DGON_VERTEX_LIMIT,
) -> dict:
    """All implemented gonality bounds for ``g`` with the proven inequalities checked."""
    report: dict = {}
    pipe = combinatorial_lower_bound(g)
    report["dgonH"] = pipe.dgonH
    report["tw"] = treewidth(g)
    report["dgon_underlying"] = dhar_dgon(subdivide_to_unit(underlying_graph(g)))[0]
    report["sn"] = "not implemented"

    d = None
    if len(g.vertices) <= dgon_limit:
        d, witness = dgon(g)
        report["dgon"] = d
        report["dgon_witness"] = witness.to_json()
    else:
        report["dgon"] = "skipped"

    if ggon_limit is not None and len(g.vertices) > ggon_limit:
        report["ggon"] = "skipped"
    else:
        res = ggon(g, cap=cap, limit=ggon_limit)
        report["ggon"] = res.degree if res.kind == "finite" else res.kind
        report["cap"] = cap

    checks = []
    if d is not None:
        checks.append({"relation": "tw <= dgon", "holds": report["tw"] <= d})
        checks.append({"relation": "dgonH <= dgon", "holds": pipe.dgonH <= d})
        if isinstance(report["ggon"], int):
            checks.append({"relation": "dgon <= ggon", "holds": d <= report["ggon"]})
    report["checks"] = checks
    failed = [c["relation"] for c in checks if not c["holds"]]
    assert not failed, f"proven inequalities failed: {failed}"
    return report

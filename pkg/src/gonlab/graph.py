"""Monoid-metrised multigraphs in half-edge form, plus structural transforms.

Graphs are stored as a vertex list and an edge list; the element set ``X``,
the root map ``r``, the involution ``i`` and the length map ``l`` are derived
from those.  Edge ``e`` contributes the half-edges ``"e:0"`` (rooted at
``ends[0]``) and ``"e:1"`` (rooted at ``ends[1]``).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import HomRangeError, InvalidGraph, MalformedSpec, MonoidModeError
from .monoid import (
    Element,
    MonoidHom,
    MonoidSpec,
    ValidationReport,
    apply_hom,
    is_member,
    validate_spec,
)

VertexMap = dict[str, str]


def half_edge_id(edge_id: str, side: int) -> str:
    return f"{edge_id}:{side}"


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, str]
    length: Element

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(self.ends))
        object.__setattr__(self, "length", tuple(int(x) for x in self.length))

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]

    @property
    def half_edges(self) -> tuple[str, str]:
        return half_edge_id(self.id, 0), half_edge_id(self.id, 1)

    def other(self, v: str) -> str:
        return self.ends[1] if self.ends[0] == v else self.ends[0]


@dataclass(frozen=True)
class MetrisedGraph:
    """Connected multigraph (loops and parallel edges allowed) with lengths in a monoid.

    The plain constructor performs no checks so that malformed inputs can be
    reported by :func:`validate_graph`; use :meth:`build` to get a graph that
    is guaranteed to satisfy every axiom (connectivity included).
    """

    monoid: MonoidSpec
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @classmethod
    def build(cls, monoid: MonoidSpec, vertices: Iterable[str], edges: Iterable) -> "MetrisedGraph":
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        g = cls(monoid, tuple(vertices), edges)
        report = validate_graph(g)
        if not report.valid:
            raise InvalidGraph(report)
        return g

    # -- derived half-edge structure ------------------------------------
    @cached_property
    def _edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _half_index(self) -> dict[str, tuple[Edge, int]]:
        out = {}
        for e in self.edges:
            for side, h in enumerate(e.half_edges):
                out[h] = (e, side)
        return out

    @cached_property
    def elements(self) -> tuple[str, ...]:
        return self.vertices + tuple(h for e in self.edges for h in e.half_edges)

    @cached_property
    def half_edges(self) -> tuple[str, ...]:
        return tuple(h for e in self.edges for h in e.half_edges)

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def is_vertex(self, x: str) -> bool:
        return x in self.vertex_set

    def root(self, x: str) -> str:
        """The map ``r``: identity on vertices, endpoint for half-edges."""
        if x in self.vertex_set:
            return x
        e, side = self._half_index[x]
        return e.ends[side]

    def inv(self, x: str) -> str:
        """The involution ``i``."""
        if x in self.vertex_set:
            return x
        e, side = self._half_index[x]
        return e.half_edges[1 - side]

    def length(self, x: str) -> Element:
        if x in self.vertex_set:
            return self.monoid.zero
        return self._half_index[x][0].length

    def edge(self, edge_id: str) -> Edge:
        return self._edge_by_id[edge_id]

    def edge_of(self, half: str) -> Edge:
        return self._half_index[half][0]

    @cached_property
    def _incident(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for side, h in enumerate(e.half_edges):
                inc.setdefault(e.ends[side], []).append(h)
        return {v: tuple(hs) for v, hs in inc.items()}

    def half_edges_at(self, v: str) -> tuple[str, ...]:
        """``H_v``: half-edges rooted at ``v``."""
        return self._incident.get(v, ())

    @cached_property
    def sorted_vertices(self) -> tuple[str, ...]:
        return tuple(sorted(self.vertices))

    @property
    def loops(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.is_loop)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = e.ends
            if a in adj and b in adj:
                adj[a].add(b)
                adj[b].add(a)
        seen = {self.vertices[0]}
        todo = deque(seen)
        while todo:
            v = todo.popleft()
            for w in adj[v] - seen:
                seen.add(w)
                todo.append(w)
        return len(seen) == len(adj)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self.vertices) - 1

    def is_unit(self) -> bool:
        """All lengths equal to 1 over a rank-1 monoid."""
        return self.monoid.rank == 1 and all(e.length == (1,) for e in self.edges)

    def with_lengths(self, monoid: MonoidSpec, lengths: Mapping[str, Element]) -> "MetrisedGraph":
        return MetrisedGraph(
            monoid, self.vertices, tuple(replace(e, length=lengths[e.id]) for e in self.edges)
        )

    def relabel(self, vertex_names: Mapping[str, str], edge_names: Mapping[str, str] | None = None):
        edge_names = edge_names or {}
        return MetrisedGraph(
            self.monoid,
            tuple(vertex_names.get(v, v) for v in self.vertices),
            tuple(
                Edge(edge_names.get(e.id, e.id), tuple(vertex_names.get(x, x) for x in e.ends), e.length)
                for e in self.edges
            ),
        )


def validate_graph(g: MetrisedGraph) -> ValidationReport:
    """Check every graph and metric axiom, naming the first violation."""
    try:
        spec_report = validate_spec(g.monoid)
    except MalformedSpec as exc:
        return ValidationReport(False, "MonoidSpec", None, str(exc))
    if not spec_report.valid:
        return ValidationReport(False, "MonoidSpec", spec_report.element, spec_report.detail)

    seen: set[str] = set()
    for v in g.vertices:
        if v in seen:
            return ValidationReport(False, "UniqueIds", v, "duplicate vertex id")
        seen.add(v)
    edge_ids: set[str] = set()
    for e in g.edges:
        if e.id in edge_ids:
            return ValidationReport(False, "UniqueIds", e.id, "duplicate edge id")
        edge_ids.add(e.id)
        for h in e.half_edges:
            if h in seen:
                return ValidationReport(False, "UniqueIds", h, "half-edge id collides with another element")
            seen.add(h)
        for end in e.ends:
            if end not in g.vertex_set:
                return ValidationReport(False, "EdgeEnds", e.id, f"endpoint {end!r} is not a vertex")

    for x in g.elements:
        rx = g.root(x)
        if g.root(rx) != rx:
            return ValidationReport(False, "RootIdempotent", x, "r(r(x)) != r(x)")
        if g.inv(g.inv(x)) != x:
            return ValidationReport(False, "Involution", x, "i(i(x)) != x")
        if (g.inv(x) == x) != (rx == x):
            return ValidationReport(False, "FixedPointAxiom", x, "i(x) = x must hold exactly when r(x) = x")

    for x in g.elements:
        lx = g.length(x)
        if len(lx) != g.monoid.rank:
            return ValidationReport(False, "LengthDimension", x, f"length {lx} has wrong rank")
        if g.length(g.inv(x)) != lx:
            return ValidationReport(False, "LengthSymmetry", x, "l(i(x)) != l(x)")
        if (not any(lx)) != g.is_vertex(x):
            return ValidationReport(False, "LengthAxiom", x, "l(x) = 0 must hold exactly on vertices")
        if not g.is_vertex(x) and not is_member(lx, g.monoid):
            return ValidationReport(False, "LengthMembership", x, f"length {lx} is not in the monoid")

    if not g.is_connected():
        return ValidationReport(False, "Connectivity", None, "graph is empty or disconnected")
    return ValidationReport(True)


def _require_free1(g: MetrisedGraph) -> None:
    if g.monoid.rank != 1 or not (g.monoid.is_free or all(x[0] > 0 for x in g.monoid.generator_list())):
        raise MonoidModeError("operation needs an N-metrised graph (rank-1 monoid of positive integers)")


def subdivision_vertex_id(edge_id: str, index: int) -> str:
    return f"{edge_id}.{index}"


def subdivision_edge_id(edge_id: str, index: int) -> str:
    return f"{edge_id}#{index}"


def subdivide_to_unit(g: MetrisedGraph) -> MetrisedGraph:
    """Replace each edge of length ``n`` by a path of ``n`` unit edges.

    Interior vertices of edge ``e`` are ``e.1 .. e.(n-1)`` and the new edges
    ``e#1 .. e#n`` run from ``ends[0]`` to ``ends[1]``.  Unit edges keep their
    id.  The result lives over ``N``.
    """
    _require_free1(g)
    vertices = list(g.vertices)
    edges: list[Edge] = []
    taken = set(g.elements)
    for e in g.edges:
        n = e.length[0]
        if n == 1:
            edges.append(Edge(e.id, e.ends, (1,)))
            continue
        path = [e.ends[0]] + [subdivision_vertex_id(e.id, j) for j in range(1, n)] + [e.ends[1]]
        for w in path[1:-1]:
            if w in taken:
                raise InvalidGraph(ValidationReport(False, "UniqueIds", w, "fresh subdivision id is taken"))
            taken.add(w)
            vertices.append(w)
        for j in range(n):
            edges.append(Edge(subdivision_edge_id(e.id, j + 1), (path[j], path[j + 1]), (1,)))
    return MetrisedGraph(MonoidSpec.free(1), tuple(vertices), tuple(edges))


def remove_loops(g: MetrisedGraph) -> MetrisedGraph:
    return MetrisedGraph(g.monoid, g.vertices, tuple(e for e in g.edges if not e.is_loop))


def contract(g: MetrisedGraph, f: MonoidHom) -> tuple[MetrisedGraph, VertexMap]:
    """Edge contraction along ``f``: relabel lengths by ``f`` and collapse zero edges.

    Each class of identified vertices is named after its smallest vertex id.
    Returns the contracted graph over ``f.target`` and the vertex map.
    Zero-length loops that arise are dropped.
    """
    if f.source.rank != g.monoid.rank:
        raise HomRangeError("hom source rank does not match the graph monoid")
    images = {}
    for e in g.edges:
        img = apply_hom(f, e.length)
        if not is_member(img, f.target):
            raise HomRangeError(f"edge {e.id}: image {img} is not in the target monoid")
        images[e.id] = img

    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        if not any(images[e.id]):
            a, b = find(e.ends[0]), find(e.ends[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    vmap = {v: find(v) for v in g.vertices}
    vertices = tuple(v for v in g.vertices if vmap[v] == v)
    edges = tuple(
        Edge(e.id, (vmap[e.ends[0]], vmap[e.ends[1]]), images[e.id])
        for e in g.edges
        if any(images[e.id])
    )
    return MetrisedGraph(f.target, vertices, edges), vmap


def underlying_graph(g: MetrisedGraph) -> MetrisedGraph:
    """Same combinatorial structure with every edge of length 1 over ``N``."""
    return MetrisedGraph(
        MonoidSpec.free(1), g.vertices, tuple(Edge(e.id, e.ends, (1,)) for e in g.edges)
    )


def restrict_to_lengths(g: MetrisedGraph) -> MetrisedGraph:
    """Re-present ``g`` over the submonoid generated by its edge lengths."""
    gens = sorted({e.length for e in g.edges})
    return MetrisedGraph(MonoidSpec(g.monoid.rank, tuple(gens)), g.vertices, g.edges)


def simple_adjacency(g: MetrisedGraph) -> dict[str, set[str]]:
    """Neighbour sets of the simple graph underlying ``g`` (loops dropped)."""
    adj: dict[str, set[str]] = {v: set() for v in g.vertices}
    for e in g.edges:
        a, b = e.ends
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def multiplicity_matrix(g: MetrisedGraph, order: Sequence[str]) -> list[list[int]]:
    """Edge counts between vertices in ``order``; loops are ignored."""
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    mat = [[0] * n for _ in range(n)]
    for e in g.edges:
        if e.is_loop:
            continue
        a, b = pos[e.ends[0]], pos[e.ends[1]]
        mat[a][b] += 1
        mat[b][a] += 1
    return mat

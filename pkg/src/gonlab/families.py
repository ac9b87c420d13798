"""Named graph families used by the shipped examples, tests and CLI."""
from __future__ import annotations

from typing import Sequence

from .graph import Edge, MetrisedGraph
from .monoid import MonoidSpec

N = MonoidSpec.free(1)
N2 = MonoidSpec.free(2)


def two_gon(lengths: Sequence[Sequence[int]] = ((1,), (1,)), monoid: MonoidSpec | None = None) -> MetrisedGraph:
    """Vertices ``u``, ``v`` joined by one edge per entry of ``lengths``."""
    monoid = monoid or MonoidSpec.free(len(lengths[0]))
    edges = [Edge(f"e{j + 1}", ("u", "v"), tuple(l)) for j, l in enumerate(lengths)]
    return MetrisedGraph.build(monoid, ("u", "v"), edges)


def cycle(n: int, lengths: Sequence[int] | None = None) -> MetrisedGraph:
    lengths = lengths or [1] * n
    vs = [f"c{j}" for j in range(n)]
    edges = [Edge(f"e{j}", (vs[j], vs[(j + 1) % n]), (lengths[j],)) for j in range(n)]
    return MetrisedGraph.build(N, vs, edges)


def path(n: int, lengths: Sequence[int] | None = None) -> MetrisedGraph:
    lengths = lengths or [1] * (n - 1)
    vs = [f"p{j}" for j in range(n)]
    edges = [Edge(f"e{j}", (vs[j], vs[j + 1]), (lengths[j],)) for j in range(n - 1)]
    return MetrisedGraph.build(N, vs, edges)


def star(leaves: int) -> MetrisedGraph:
    vs = ["hub"] + [f"leaf{j}" for j in range(leaves)]
    edges = [Edge(f"e{j}", ("hub", f"leaf{j}"), (1,)) for j in range(leaves)]
    return MetrisedGraph.build(N, vs, edges)


def complete_graph(n: int) -> MetrisedGraph:
    vs = [f"k{j}" for j in range(n)]
    edges = [
        Edge(f"e{a}{b}", (vs[a], vs[b]), (1,))
        for a in range(n) for b in range(a + 1, n)
    ]
    return MetrisedGraph.build(N, vs, edges)


def single_vertex(monoid: MonoidSpec = N) -> MetrisedGraph:
    return MetrisedGraph.build(monoid, ("v",), ())


def glued_cycles(k: int) -> MetrisedGraph:
    """Chain of ``k`` cycles on ``2k+1`` edges, glued end to end, over ``N``.

    In copy ``i`` the short arc from ``v{i}`` to ``w{i}`` has ``k`` unit edges
    and the long arc has one edge of length ``k`` (at ``w{i}``) followed by
    ``k`` unit edges.  ``w{i}`` is identified with ``v{i+1}``, so the joints
    are named ``v1 .. vk`` and the far end ``w{k}``.
    """
    if k < 1:
        raise ValueError("k must be positive")

    def joint(i: int) -> str:
        return f"v{i}" if i <= k else f"w{k}"

    vertices: list[str] = [joint(i) for i in range(1, k + 2)]
    edges: list[Edge] = []
    for i in range(1, k + 1):
        v, w = joint(i), joint(i + 1)
        short = [v] + [f"a{i}_{j}" for j in range(1, k)] + [w]
        long = [w] + [f"b{i}_{j}" for j in range(1, k + 1)] + [v]
        vertices += short[1:-1] + long[1:-1]
        for j in range(k):
            edges.append(Edge(f"s{i}_{j + 1}", (short[j], short[j + 1]), (1,)))
        edges.append(Edge(f"heavy{i}", (long[0], long[1]), (k,)))
        for j in range(1, k + 1):
            edges.append(Edge(f"l{i}_{j}", (long[j], long[j + 1]), (1,)))
    return MetrisedGraph.build(N, vertices, edges)

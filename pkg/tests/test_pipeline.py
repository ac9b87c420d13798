from itertools import permutations

import pytest

from gonlab.divisors import dgon
from gonlab.errors import SizeLimit
from gonlab.families import N, N2, complete_graph, cycle, glued_cycles, path, single_vertex, star, two_gon
from gonlab.graph import Edge, MetrisedGraph, simple_adjacency
from gonlab.pipeline import bounds_report, combinatorial_lower_bound, treewidth


def elimination_width(g):
    """Treewidth as the best elimination ordering, tried exhaustively."""
    adj0 = simple_adjacency(g)
    if len(adj0) == 1:
        return 0
    best = None
    for order in permutations(sorted(adj0)):
        adj = {v: set(ws) for v, ws in adj0.items()}
        width = 0
        for v in order:
            nbrs = adj.pop(v)
            width = max(width, len(nbrs))
            for a in nbrs:
                adj[a].discard(v)
                adj[a] |= nbrs - {a}
        best = width if best is None else min(best, width)
    return best


def test_treewidth_examples():
    assert treewidth(path(5)) == 1
    assert treewidth(star(4)) == 1
    assert treewidth(cycle(5)) == 2
    assert treewidth(complete_graph(4)) == 3
    assert treewidth(single_vertex()) == 0
    assert treewidth(two_gon(((1, 0), (0, 1)), N2)) == 1


def test_treewidth_limit():
    with pytest.raises(SizeLimit):
        treewidth(glued_cycles(3))


def test_treewidth_matches_elimination_orderings(small_corpus):
    for g in small_corpus:
        assert treewidth(g) == elimination_width(g)
    for n in (5, 6):
        for k in range(n):
            g = complete_graph(n)
            sparse = MetrisedGraph.build(N, g.vertices, [e for j, e in enumerate(g.edges) if (j + k) % 3])
            if sparse.is_connected():
                assert treewidth(sparse) == elimination_width(sparse)


def test_pipeline_unit_cycle():
    res = combinatorial_lower_bound(cycle(4))
    assert res.H == cycle(4) and res.dgonH == 2


def test_pipeline_nn_2gon():
    res = combinatorial_lower_bound(two_gon(((1, 0), (0, 1)), N2))
    contract_step = res.trace[2]
    assert contract_step["functional"] == [1, 1]
    assert contract_step["lengths"] == {"e1": 1, "e2": 1}
    assert contract_step["contracted_edges"] == []
    assert res.H == two_gon() and res.dgonH == 2


def test_pipeline_glued_cycles():
    res = combinatorial_lower_bound(glued_cycles(2))
    assert len(res.H.vertices) == 11 and res.H.is_unit()
    assert res.trace[3]["subdivisions"]["heavy1"] == 1
    assert res.dgonH <= 3


def test_pipeline_ignores_loops():
    base = glued_cycles(2)
    looped = MetrisedGraph.build(N, base.vertices, base.edges + (Edge("x", ("v2", "v2"), (5,)),))
    a, b = combinatorial_lower_bound(base), combinatorial_lower_bound(looped)
    assert a.H == b.H and a.dgonH == b.dgonH
    assert b.trace[0]["removed"] == ["x"]


def test_bounds_report_examples():
    tree = bounds_report(path(3, [2, 1]))
    assert (tree["dgon"], tree["ggon"], tree["tw"], tree["dgonH"]) == (1, 1, 1, 1)
    nn = bounds_report(two_gon(((1, 0), (0, 1)), N2))
    assert (nn["dgon"], nn["ggon"], nn["tw"], nn["dgonH"]) == (2, "infinite", 1, 2)
    glued = bounds_report(glued_cycles(2))
    assert glued["dgon_underlying"] == 2
    assert glued["ggon"] == "skipped" and glued["sn"] == "not implemented"
    assert all(c["holds"] for c in glued["checks"])

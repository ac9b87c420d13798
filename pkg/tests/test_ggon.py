import random
from itertools import product

import pytest

from gonlab.corpus import CorpusBounds, generate_corpus
from gonlab.divisors import Divisor, rank
from gonlab.errors import SizeLimit
from gonlab.families import N, N2, cycle, path, single_vertex, star, two_gon
from gonlab.ggon import ggon, harmonic_maps_to_trees, verify_witness
from gonlab.graph import Edge, MetrisedGraph, half_edge_id
from gonlab.morphisms import (
    GraphMorphism,
    identity_morphism,
    is_harmonic,
    is_nondegenerate,
    pullback_divisor,
    validate_morphism,
)
from gonlab.trees import enumerate_trees


def test_trees_have_gonality_one():
    for g in [path(4, [1, 2, 3]), star(3), single_vertex(N2)]:
        res = ggon(g)
        assert res.kind == "finite" and res.degree == 1
        assert verify_witness(res.witness)["degree"] == 1


def test_tree_witness_is_an_isomorphism():
    res = ggon(path(3, [2, 3]))
    phi = res.witness
    assert sorted(e.length for e in phi.target.edges) == [(2,), (3,)]
    assert len(set(phi.vertex_map.values())) == 3


def test_nn_2gon_is_infinite():
    res = ggon(two_gon(((1, 0), (0, 1)), N2))
    assert res.kind == "infinite"
    kinds = {c["obstruction"]["kind"] for c in res.certificate["candidates"]}
    assert kinds == {"ray-mismatch"}
    assert res.to_json()["ggon"] == "infinite"
    assert res.certificate["ray_lcm_cap"] == 64


def test_unit_2gon_has_banana_witness():
    res = ggon(two_gon())
    assert res.kind == "finite" and res.degree == 2
    assert len(res.witness.target.edges) == 1
    assert verify_witness(res.witness) == {
        "degree": 2,
        "failed": None,
        "checks": [{"check": c, "passed": True} for c in ("morphism", "tree", "harmonic", "nondegenerate")],
    }


def test_verify_witness_reports_failures(banana):
    assert verify_witness(banana)["degree"] == 2
    assert verify_witness(identity_morphism(cycle(3)))["failed"] == "tree"
    src = two_gon(((1, 0), (0, 1)), N2)
    tgt = MetrisedGraph.build(N2, ("a", "b"), [Edge("t", ("a", "b"), (1, 1))])
    mapping = {"u": "a", "v": "b", "e1:0": "t:0", "e1:1": "t:1", "e2:0": "t:0", "e2:1": "t:1"}
    assert verify_witness(GraphMorphism(src, tgt, mapping))["failed"] == "morphism"


def test_scale_cap_gives_exceeded():
    g = MetrisedGraph.build(
        N, ["x0", "x1", "x2"],
        [Edge("a", ("x0", "x1"), (1,)), Edge("b", ("x0", "x1"), (2,)), Edge("c", ("x0", "x1"), (3,)),
         Edge("d", ("x0", "x2"), (1,))],
    )
    res = ggon(g, cap=8)
    assert res.kind == "exceeded" and res.lower_bound == 9
    assert res.to_json()["ggon"] == "exceeded"
    wide = ggon(g, cap=11)
    assert wide.kind == "finite" and wide.degree == 11
    assert ggon(g, cap=30).degree == 11


def test_size_limit():
    with pytest.raises(SizeLimit):
        ggon(cycle(8))
    assert ggon(cycle(8), limit=None).degree == 2


def test_finite_witnesses_verify_and_pull_back_winning_divisors(small_corpus):
    for g in small_corpus:
        res = ggon(g)
        if res.kind != "finite" or len(g.vertices) == 1:
            continue
        assert verify_witness(res.witness)["degree"] == res.degree
        t = next(iter(res.witness.target.vertices))
        D = pullback_divisor(res.witness, Divisor({t: 1}))
        assert D.degree == res.degree
        assert rank(g, D) >= 1


def test_relabelling_invariance(small_corpus):
    rng = random.Random(3)
    for g in small_corpus.graphs[::4]:
        names = list(g.vertices)
        rng.shuffle(names)
        vmap = {v: f"r{n}" for v, n in zip(g.vertices, names)}
        emap = {e.id: f"f{len(g.edges) - j}" for j, e in enumerate(g.edges)}
        h = g.relabel(vmap, emap)
        a, b = ggon(g), ggon(h)
        assert (a.kind, a.degree) == (b.kind, b.degree)


def test_harmonic_maps_are_valid(small_corpus):
    count = 0
    for g in small_corpus.graphs[::9]:
        for phi in harmonic_maps_to_trees(g):
            assert validate_morphism(phi).valid and phi.target.is_tree()
            assert is_nondegenerate(phi)
            count += 1
    assert count > 20


# -- brute-force oracle -----------------------------------------------------


def _length_box(rank):
    if rank == 1:
        return [(n,) for n in range(1, 25)]
    return [v for v in product(range(7), repeat=2) if any(v)]


def brute_force_ggon(g):
    """Minimum degree over all vertex maps to small trees and all boxed target lengths."""
    order = g.sorted_vertices
    best = None
    box = _length_box(g.monoid.rank)
    for tree in enumerate_trees(len(order)):
        if tree.size < 2:
            continue
        adj = tree.adjacency()
        for psi in product(range(tree.size), repeat=len(order)):
            image = dict(zip(order, psi))
            if any(image[a] != image[b] and not adj[image[a]][image[b]] for a, b in (e.ends for e in g.edges)):
                continue
            for lengths in product(box, repeat=len(tree.edges)):
                tgt = MetrisedGraph(
                    g.monoid, tuple(f"t{i}" for i in range(tree.size)),
                    tuple(Edge(f"t{a}-t{b}", (f"t{a}", f"t{b}"), l) for (a, b), l in zip(tree.edges, lengths)),
                )
                ends = {frozenset((a, b)): (f"t{a}-t{b}", a) for a, b in tree.edges}
                mapping = {v: f"t{image[v]}" for v in order}
                for e in g.edges:
                    a, b = image[e.ends[0]], image[e.ends[1]]
                    for side, r in ((0, a), (1, b)):
                        if a == b:
                            mapping[half_edge_id(e.id, side)] = f"t{a}"
                        else:
                            tid, first = ends[frozenset((a, b))]
                            mapping[half_edge_id(e.id, side)] = half_edge_id(tid, 0 if r == first else 1)
                phi = GraphMorphism(g, tgt, mapping)
                if not validate_morphism(phi).valid:
                    continue
                data = is_harmonic(phi)
                if data is not None and all(m > 0 for m in data.multiplicities.values()):
                    if best is None or data.degree < best:
                        best = data.degree
    return best


def test_search_matches_brute_force():
    corpus = generate_corpus(0, CorpusBounds(3, 3))
    graphs = [g for g in corpus if 2 <= len(g.vertices) <= 3]
    checked = 0
    for g in graphs[::11]:
        res = ggon(g, cap=24)
        oracle = brute_force_ggon(g)
        if res.kind == "infinite":
            assert oracle is None, g
        elif res.kind == "finite":
            assert oracle is not None and oracle >= res.degree, g
            if all(e.length in _length_box(g.monoid.rank) for e in res.witness.target.edges):
                assert oracle == res.degree, g
        checked += 1
    assert checked > 20

from gonlab.corpus import CorpusBounds, generate_corpus, multigraph_shapes
from gonlab.families import N2, two_gon
from gonlab.graph import validate_graph


def test_determinism():
    a = generate_corpus(0, CorpusBounds(3, 3, random_count=5))
    b = generate_corpus(0, CorpusBounds(3, 3, random_count=5))
    assert a.graphs == b.graphs
    c = generate_corpus(1, CorpusBounds(3, 3, random_count=5))
    assert a.graphs[:-5] == c.graphs[:-5] and a.graphs[-5:] != c.graphs[-5:]


def test_contains_the_nn_2gon():
    corpus = generate_corpus(0, CorpusBounds(3, 3))
    target = two_gon(((1, 0), (0, 1)), N2)
    found = [g for g in corpus if g.monoid == N2 and not g.loops and len(g.vertices) == 2
             and sorted((e.length for e in g.edges)) == sorted(e.length for e in target.edges)]
    assert len(found) == 1
    assert len(found[0].vertices) == len(target.vertices)


def test_single_vertex_bounds():
    corpus = generate_corpus(0, CorpusBounds(1, 0))
    assert len(corpus) == 2  # one per length pool
    assert all(len(g.vertices) == 1 and not g.edges for g in corpus)


def test_every_member_is_valid():
    for g in generate_corpus(7, CorpusBounds(3, 4, random_count=10)):
        assert validate_graph(g).valid


def test_shape_counts():
    # connected multigraphs with loops on 2 vertices: 1 edge -> 1, 2 edges -> 2, 3 edges -> 4
    assert [len(multigraph_shapes(2, m)) for m in (1, 2, 3)] == [1, 2, 4]
    assert len(multigraph_shapes(3, 2)) == 1

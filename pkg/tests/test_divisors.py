import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gonlab.divisors import (
    Divisor,
    dgon,
    effective_divisors,
    effective_vectors,
    is_piecewise_linear,
    is_principal,
    laplacian,
    linear_system_nonempty,
    prin_basis,
    pushforward_contraction,
    random_pl,
    rank,
)
from gonlab.errors import NotPiecewiseLinear, UnknownVertex
from gonlab.families import N, N2, cycle, glued_cycles, path, single_vertex, star, two_gon
from gonlab.graph import Edge, MetrisedGraph, contract
from gonlab.lattice import Lattice
from gonlab.monoid import MonoidHom

NN = two_gon(((1, 0), (0, 1)), N2)
UNIT2 = two_gon()


def prin_lattice(g):
    b = prin_basis(g)
    return Lattice(b.rows, len(b.vertices) - 1)


def brute_force_prin(g, span):
    """Lattice spanned by Laplacians of PL functions with small values."""
    order = g.sorted_vertices
    k = g.monoid.rank
    values = list(product(range(-span, span + 1), repeat=k))
    images = []
    for combo in product(values, repeat=len(order) - 1):
        f = {order[0]: (0,) * k, **dict(zip(order[1:], combo))}
        if is_piecewise_linear(g, f):
            images.append(laplacian(g, f).vector(order)[:-1])
    return Lattice(images, len(order) - 1)


def test_divisor_arithmetic():
    D = Divisor(u=2, v=-1)
    assert D.degree == 1 and not D.is_effective()
    assert D + Divisor(v=1) == Divisor(u=2)
    assert -D == Divisor(u=-2, v=1)
    assert D * 0 == Divisor()
    assert Divisor(u=2) >= Divisor(u=1)
    assert Divisor(u=0) == Divisor()
    with pytest.raises(UnknownVertex):
        Divisor(w=1).vector(["u", "v"])


def test_effective_vectors_are_colex_and_complete():
    vecs = list(effective_vectors(3, 2))
    assert vecs[0] == (2, 0, 0)
    assert len(vecs) == len(set(vecs)) == 6
    assert all(sum(v) == 2 and min(v) >= 0 for v in vecs)


def test_laplacian_unit_2gon():
    assert laplacian(UNIT2, {"u": (0,), "v": (1,)}) == Divisor(u=-2, v=2)


def test_laplacian_of_constant_is_zero():
    g = glued_cycles(2)
    assert laplacian(g, {v: (4,) for v in g.vertices}) == Divisor()


def test_only_constants_are_pl_on_nn_2gon():
    assert not is_piecewise_linear(NN, {"u": (0, 0), "v": (1, 0)})
    with pytest.raises(NotPiecewiseLinear):
        laplacian(NN, {"u": (0, 0), "v": (1, 0)})
    assert laplacian(NN, {"u": (2, 3), "v": (2, 3)}) == Divisor()


def test_prin_basis_examples():
    assert prin_basis(NN).rows == ()
    basis = prin_basis(UNIT2)
    assert basis.pivot == "v"
    assert basis.divisors() == [Divisor(u=2, v=-2)]
    tree = path(4, [1, 2, 3])
    assert prin_basis(tree).rank == 3
    assert prin_lattice(tree).basis == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_prin_basis_matches_brute_force_on_small_graphs(small_corpus):
    graphs = [g for g in small_corpus if len(g.vertices) <= 3 and len(g.edges) <= 3]
    for g in graphs[::7]:
        span = 2 if g.monoid.rank == 2 else 6
        expected = brute_force_prin(g, span)
        got = prin_lattice(g)
        assert got.basis == expected.basis, g


def test_is_principal_examples():
    assert is_principal(NN, {}) == (True, [])
    assert is_principal(UNIT2, {}) == (True, [0])
    assert is_principal(UNIT2, Divisor(v=1, u=-1))[0] is False
    ok, combo = is_principal(glued_cycles(2), Divisor(v1=3, w2=-3))
    assert ok
    rows = prin_basis(glued_cycles(2)).divisors()
    total = Divisor()
    for c, r in zip(combo, rows):
        total = total + r * c
    assert total == Divisor(v1=3, w2=-3)


def test_linear_system_examples():
    assert linear_system_nonempty(UNIT2, Divisor(u=1)) == Divisor(u=1)
    assert linear_system_nonempty(UNIT2, Divisor(v=-1)) is None
    D = Divisor(v=2) - Divisor(u=-2, v=2)
    assert linear_system_nonempty(UNIT2, D) == Divisor(u=2)


def test_rank_examples():
    assert rank(NN, Divisor(v=1)) == 0
    assert rank(UNIT2, Divisor(v=2)) == 1
    assert rank(UNIT2, Divisor(v=-1)) == -1
    assert rank(cycle(3), Divisor()) == 0
    assert rank(glued_cycles(2), Divisor(v1=3)) >= 1


def test_dgon_examples():
    assert dgon(path(3, [2, 5])) == (1, Divisor(p0=1))
    assert dgon(star(3))[0] == 1
    assert dgon(NN) == (2, Divisor(u=1, v=1))
    assert dgon(cycle(4))[0] == 2
    assert dgon(single_vertex()) == (1, Divisor(v=1))


def test_pushforward_contraction_examples():
    D = Divisor(u=1, v=-1)
    assert pushforward_contraction({"u": "u", "v": "v"}, D) == D
    _, vmap = contract(NN, MonoidHom.build(((1, 0),), N2, N))
    assert pushforward_contraction(vmap, Divisor(u=1, v=1)) == Divisor(u=2)
    assert pushforward_contraction(vmap, D) == Divisor()
    with pytest.raises(UnknownVertex):
        pushforward_contraction(vmap, Divisor(w=1))


def test_rank_never_exceeds_degree_for_effective(small_corpus):
    for g in small_corpus.graphs[::5]:
        for d in range(3):
            for D in effective_divisors(g, d):
                assert 0 <= rank(g, D) <= d


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_laplacian_degree_zero_and_kernel(seed):
    rng = random.Random(seed)
    from gonlab.corpus import CorpusBounds, generate_corpus

    corpus = generate_corpus(0, CorpusBounds(3, 3))
    g = corpus.graphs[rng.randrange(len(corpus))]
    f = random_pl(g, rng)
    D = laplacian(g, f)
    assert D.degree == 0
    assert is_principal(g, D)[0]
    constant = len({f[v] for v in g.vertices}) == 1
    if constant:
        assert D == Divisor()


def test_zero_laplacian_only_for_constants(small_corpus):
    # nonzero slopes always leave a nonzero divisor: the kernel is the constants
    from gonlab.divisors import pl_from_slopes, slope_lattice

    for g in small_corpus.graphs[::3]:
        lat = slope_lattice(g)
        for b in lat.basis:
            f = pl_from_slopes(g, dict(zip(lat.edges, b)))
            assert laplacian(g, f) != Divisor()

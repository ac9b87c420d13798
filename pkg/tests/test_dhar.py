import pytest

from gonlab.dhar import BurningGraph, dhar_dgon, dhar_rank, q_reduced_divisor
from gonlab.divisors import Divisor, dgon, effective_divisors, is_principal, rank
from gonlab.errors import MonoidModeError
from gonlab.families import complete_graph, cycle, glued_cycles, path, two_gon
from gonlab.graph import subdivide_to_unit, underlying_graph


def test_rank_examples():
    assert dhar_rank(two_gon(), Divisor(v=2)) == 1
    assert dhar_rank(cycle(3), Divisor(c0=1)) == 0
    assert dhar_rank(complete_graph(4), Divisor()) == 0
    assert dhar_rank(cycle(3), Divisor(c0=-1)) == -1


def test_needs_unit_lengths():
    with pytest.raises(MonoidModeError):
        dhar_rank(path(2, [2]), Divisor())


def test_q_reduced_moves_chips_towards_q():
    # on a path every divisor is equivalent to deg * [q]
    assert q_reduced_divisor(path(4), Divisor(p0=1, p3=2), "p1") == Divisor(p1=3)
    # two chips on one side of the unit 2-gon are already reduced
    assert q_reduced_divisor(two_gon(), Divisor(u=1), "v") == Divisor(u=1)
    assert q_reduced_divisor(two_gon(), Divisor(u=2), "v") == Divisor(v=2)


def test_q_reduced_is_equivalent_and_reduced():
    g = complete_graph(4)
    bg = BurningGraph(g)
    for D in effective_divisors(g, 3):
        R = q_reduced_divisor(g, D, "k0")
        assert is_principal(g, R - D)[0]
        assert all(R[v] >= 0 for v in g.vertices if v != "k0")
        # reducing again changes nothing
        assert bg.q_reduced(R.vector(bg.order), 0) == R.vector(bg.order)


@pytest.mark.parametrize("g", [cycle(5), complete_graph(4), two_gon(((1,), (1,), (1,)))])
def test_agrees_with_lattice_rank(g):
    for d in range(4):
        for D in effective_divisors(g, d):
            assert dhar_rank(g, D) == rank(g, D)


def test_dgon_of_glued_cycles():
    G = underlying_graph(glued_cycles(2))
    assert dhar_dgon(G)[0] == 2
    H = subdivide_to_unit(glued_cycles(2))
    assert dhar_dgon(H)[0] == 2


def test_glued_cycles_k3_has_gonality_three():
    # both oracles agree; every effective degree-2 divisor has rank 0
    G = underlying_graph(glued_cycles(3))
    assert dhar_dgon(G) == dgon(G) == (3, Divisor(a2_1=3))
    assert all(rank(G, D) == 0 for D in effective_divisors(G, 2))
    assert rank(G, Divisor(a2_1=3)) == 1

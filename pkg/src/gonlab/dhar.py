"""Chip-firing oracle for unit-length graphs via q-reduced divisors.

This path shares nothing with the lattice machinery in :mod:`gonlab.divisors`
except the enumeration of effective divisors; it is used to cross-check
ranks and to compute gonality of large unit graphs.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from .divisors import Divisor, effective_vectors
from .errors import MonoidModeError
from .graph import MetrisedGraph, multiplicity_matrix


class BurningGraph:
    """Adjacency data for burning; vertices are indexed in sorted order."""

    def __init__(self, g: MetrisedGraph):
        if not g.is_unit():
            raise MonoidModeError("the burning oracle needs unit edge lengths over N")
        # loops never move chips, so they are ignored rather than rejected
        self.order = g.sorted_vertices
        self.n = len(self.order)
        mult = multiplicity_matrix(g, self.order)
        self.nbrs = [[(j, m) for j, m in enumerate(row) if m] for row in mult]
        self.valence = [sum(row) for row in mult]

    def q_reduced(self, vec: Sequence[int], q: int) -> list[int]:
        D = list(vec)
        n = self.n
        # stage 1: clear debt away from q by borrowing (sandpile toppling in disguise)
        stack = [v for v in range(n) if v != q and D[v] < 0]
        while stack:
            v = stack.pop()
            if D[v] >= 0:
                continue
            t = (-D[v] + self.valence[v] - 1) // self.valence[v]
            D[v] += t * self.valence[v]
            for w, m in self.nbrs[v]:
                D[w] -= t * m
                if w != q and D[w] < 0:
                    stack.append(w)
        # stage 2: Dhar burning from q, firing the unburnt set until everything burns
        while True:
            burnt = [False] * n
            burnt[q] = True
            heat = [0] * n
            front = [q]
            while front:
                v = front.pop()
                for w, m in self.nbrs[v]:
                    if burnt[w]:
                        continue
                    heat[w] += m
                    if heat[w] > D[w]:
                        burnt[w] = True
                        front.append(w)
            if all(burnt):
                return D
            for v in range(n):
                if not burnt[v]:
                    for w, m in self.nbrs[v]:
                        if burnt[w]:
                            D[v] -= m
                            D[w] += m

    def winnable(self, vec: Sequence[int], q: int = 0) -> bool:
        if sum(vec) < 0:
            return False
        return self.q_reduced(vec, q)[q] >= 0

    def rank(self, vec: Sequence[int]) -> int:
        vec = tuple(vec)
        if not self.winnable(vec):
            return -1
        d = sum(vec)
        for k in range(1, d + 1):
            for F in effective_vectors(self.n, k):
                if not self.winnable([x - y for x, y in zip(vec, F)]):
                    return k - 1
        return d

    def has_positive_rank(self, vec: Sequence[int]) -> bool:
        # D - [q] is winnable iff the q-reduced form of D keeps a chip on q
        return all(self.q_reduced(vec, q)[q] >= 1 for q in range(self.n))

    def dgon(self) -> tuple[int, tuple[int, ...]]:
        for d in range(1, self.n + 1):
            for vec in effective_vectors(self.n, d):
                if self.has_positive_rank(vec):
                    return d, vec
        raise AssertionError("the all-ones divisor always has positive rank")


def dhar_rank(g: MetrisedGraph, D: Mapping[str, int]) -> int:
    bg = BurningGraph(g)
    return bg.rank(Divisor(D).vector(bg.order))


def q_reduced_divisor(g: MetrisedGraph, D: Mapping[str, int], q: str) -> Divisor:
    bg = BurningGraph(g)
    return Divisor.from_vector(bg.order, bg.q_reduced(Divisor(D).vector(bg.order), bg.order.index(q)))


def dhar_dgon(g: MetrisedGraph) -> tuple[int, Divisor]:
    bg = BurningGraph(g)
    d, vec = bg.dgon()
    return d, Divisor.from_vector(bg.order, vec)

"""Deterministic graph corpora for property tests and the CLI.

The exhaustive part lists every connected multigraph (loops allowed) with at
most ``max_vertices`` vertices and ``max_edges`` edges, each edge carrying a
length from a pool, once per isomorphism class of length-labelled graph.  A
seeded random part adds a few larger graphs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product

from .graph import Edge, MetrisedGraph
from .monoid import MonoidSpec

FREE1_POOL: tuple[tuple[int, ...], ...] = ((1,), (2,), (3,))
FREE2_POOL: tuple[tuple[int, ...], ...] = ((1, 0), (0, 1), (1, 1))
DEFAULT_POOLS = ((1, FREE1_POOL), (2, FREE2_POOL))


@dataclass(frozen=True)
class CorpusBounds:
    max_vertices: int = 4
    max_edges: int = 5
    pools: tuple = DEFAULT_POOLS
    random_count: int = 0
    random_max_vertices: int = 7
    random_extra_edges: int = 3

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_edges < 0:
            raise ValueError("bounds must allow at least one vertex")


@dataclass
class Corpus:
    seed: int
    bounds: CorpusBounds
    graphs: list[MetrisedGraph] = field(default_factory=list)

    def __len__(self):
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)


Shape = tuple[tuple[int, int], ...]


def _connected(n: int, pairs) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(v) for v in range(n)}) == 1


def _canonical(n: int, edges) -> tuple:
    """Smallest relabelled sorted edge list over all vertex permutations."""
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted((min(perm[a], perm[b]), max(perm[a], perm[b]), *rest) for a, b, *rest in edges))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def multigraph_shapes(n: int, m: int) -> tuple[Shape, ...]:
    """Connected multigraphs with ``n`` vertices and ``m`` edges, one per isomorphism class."""
    slots = [(a, b) for a in range(n) for b in range(a, n)]
    found = set()
    for combo in combinations_with_replacement(slots, m):
        if _connected(n, combo):
            found.add(_canonical(n, combo))
    return tuple(sorted(found))


def labelled_graphs(n: int, m: int, pool) -> list[tuple]:
    """Length-labelled connected multigraphs up to isomorphism, as canonical edge lists."""
    found = set()
    for shape in multigraph_shapes(n, m):
        for lengths in product(range(len(pool)), repeat=m):
            found.add(_canonical(n, [(a, b, l) for (a, b), l in zip(shape, lengths)]))
    return sorted(found)


def _build(rank: int, n: int, labelled, pool) -> MetrisedGraph:
    vs = [f"x{j}" for j in range(n)]
    edges = [Edge(f"e{j}", (vs[a], vs[b]), tuple(pool[l])) for j, (a, b, l) in enumerate(labelled)]
    return MetrisedGraph.build(MonoidSpec.free(rank), vs, edges)


def exhaustive_graphs(bounds: CorpusBounds):
    for rank, pool in bounds.pools:
        for n in range(1, bounds.max_vertices + 1):
            for m in range(0, bounds.max_edges + 1):
                for labelled in labelled_graphs(n, m, pool):
                    yield _build(rank, n, labelled, pool)


def random_graph(rng: random.Random, n: int, extra: int, rank: int, pool) -> MetrisedGraph:
    pairs = [(rng.randrange(v), v) for v in range(1, n)]
    for _ in range(extra):
        a, b = rng.randrange(n), rng.randrange(n)
        pairs.append((min(a, b), max(a, b)))
    return _build(rank, n, [(a, b, rng.randrange(len(pool))) for a, b in pairs], pool)


def generate_corpus(seed: int = 0, bounds: CorpusBounds | None = None) -> Corpus:
    bounds = bounds or CorpusBounds()
    corpus = Corpus(seed, bounds, list(exhaustive_graphs(bounds)))
    rng = random.Random(seed)
    lo = min(bounds.max_vertices + 1, bounds.random_max_vertices)
    for _ in range(bounds.random_count):
        rank, pool = bounds.pools[rng.randrange(len(bounds.pools))]
        n = rng.randint(lo, bounds.random_max_vertices)
        corpus.graphs.append(random_graph(rng, n, rng.randint(0, bounds.random_extra_edges), rank, pool))
    return corpus

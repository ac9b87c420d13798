"""Divisors, piecewise linear functions, the Laplacian and Baker-Norine rank.

Principal divisors are computed from slopes rather than vertex potentials:
every non-loop edge ``a -> b`` (oriented from ``ends[0]`` to ``ends[1]``)
carries an integer slope ``s`` with ``g(b) - g(a) = s * l(e)``.  A slope
vector comes from a potential exactly when it sums to zero (weighted by the
lengths, in the ambient lattice) around each fundamental cycle.  The image of
the slope lattice under the incidence map is the principal lattice.

Linear equivalence is decided by reducing a divisor modulo the Hermite basis
of that lattice, which yields a canonical coset key.
"""
from __future__ import annotations

import random
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import NotPiecewiseLinear, UnknownVertex
from .graph import MetrisedGraph, VertexMap
from .lattice import Lattice, kernel_basis
from .monoid import integer_multiple

PLFunction = dict[str, tuple[int, ...]]


class Divisor(Mapping):
    """Finitely supported integer function on vertex ids; zero entries are dropped."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[str, int] | None = None, **kw: int):
        c = dict(coeffs or {})
        c.update(kw)
        self._c = {str(v): int(n) for v, n in c.items() if n}

    @classmethod
    def point(cls, v: str, n: int = 1) -> "Divisor":
        return cls({v: n})

    @classmethod
    def from_vector(cls, order: Sequence[str], vec: Sequence[int]) -> "Divisor":
        return cls(dict(zip(order, vec)))

    def __getitem__(self, v: str) -> int:
        return self._c.get(v, 0)

    def __contains__(self, v) -> bool:
        return v in self._c

    def __iter__(self):
        return iter(sorted(self._c))

    def __len__(self):
        return len(self._c)

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self._c == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __repr__(self):
        return f"Divisor({dict(sorted(self._c.items()))})"

    @property
    def degree(self) -> int:
        return sum(self._c.values())

    def support(self) -> list[str]:
        return sorted(self._c)

    def is_effective(self) -> bool:
        return all(n >= 0 for n in self._c.values())

    def __add__(self, other: Mapping) -> "Divisor":
        c = dict(self._c)
        for v, n in other.items():
            c[v] = c.get(v, 0) + n
        return Divisor(c)

    def __neg__(self) -> "Divisor":
        return Divisor({v: -n for v, n in self._c.items()})

    def __sub__(self, other: Mapping) -> "Divisor":
        return self + Divisor(other).__neg__()

    def __mul__(self, k: int) -> "Divisor":
        return Divisor({v: k * n for v, n in self._c.items()})

    __rmul__ = __mul__

    def __ge__(self, other: Mapping) -> bool:
        keys = set(self._c) | set(other)
        return all(self[v] >= other.get(v, 0) for v in keys)

    def __le__(self, other: Mapping) -> bool:
        return Divisor(other) >= self

    def vector(self, order: Sequence[str]) -> list[int]:
        extra = set(self._c) - set(order)
        if extra:
            raise UnknownVertex(f"divisor mentions unknown vertices {sorted(extra)}")
        return [self._c.get(v, 0) for v in order]

    def to_json(self) -> dict[str, int]:
        return dict(sorted(self._c.items()))


def effective_vectors(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """All nonnegative ``n``-tuples summing to ``d``, in colexicographic order."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for last in range(d + 1):
        for head in effective_vectors(n - 1, d - last):
            yield head + (last,)


def effective_divisors(g: MetrisedGraph, d: int) -> Iterator[Divisor]:
    order = g.sorted_vertices
    for vec in effective_vectors(len(order), d):
        yield Divisor.from_vector(order, vec)


# -- piecewise linear functions and the Laplacian -------------------------

def pl_violation(g: MetrisedGraph, f: Mapping[str, Sequence[int]]) -> str | None:
    """Id of the first edge across which ``f`` is not an integer multiple of the length."""
    for e in g.edges:
        diff = tuple(x - y for x, y in zip(f[e.ends[0]], f[e.ends[1]]))
        if integer_multiple(diff, e.length) is None:
            return e.id
    return None


def is_piecewise_linear(g: MetrisedGraph, f: Mapping[str, Sequence[int]]) -> bool:
    return pl_violation(g, f) is None


def laplacian(g: MetrisedGraph, f: Mapping[str, Sequence[int]]) -> Divisor:
    """Sum over half-edges at ``v`` of ``(f(v) - f(far end)) / l(e)``."""
    coeffs = {v: 0 for v in g.vertices}
    for v in g.vertices:
        if v not in f:
            raise UnknownVertex(f"PL function has no value at {v!r}")
    for e in g.edges:
        if e.is_loop:
            continue
        a, b = e.ends
        diff = tuple(x - y for x, y in zip(f[a], f[b]))
        s = integer_multiple(diff, e.length)
        if s is None:
            raise NotPiecewiseLinear(e.id, f"(difference {diff}, length {e.length})")
        coeffs[a] += s
        coeffs[b] -= s
    return Divisor(coeffs)


@dataclass(frozen=True)
class SlopeLattice:
    """Integer slope vectors (one per non-loop edge) realised by some PL function."""

    edges: tuple[str, ...]
    basis: tuple[tuple[int, ...], ...]


def _spanning_tree(g: MetrisedGraph):
    """BFS spanning tree from the first sorted vertex: parent half-edge per vertex."""
    root = g.sorted_vertices[0]
    via: dict[str, tuple[str, int] | None] = {root: None}
    order = [root]
    todo = deque([root])
    while todo:
        v = todo.popleft()
        for h in sorted(g.half_edges_at(v)):
            e = g.edge_of(h)
            if e.is_loop:
                continue
            w = g.root(g.inv(h))
            if w not in via:
                # sign: +1 when the edge is traversed from ends[0] to ends[1]
                via[w] = (e.id, 1 if e.ends[0] == v else -1)
                order.append(w)
                todo.append(w)
    return root, via, order


def _tree_path_to_root(g: MetrisedGraph, via, v: str) -> dict[str, int]:
    """Signed edge multiset of the tree path from the root to ``v``."""
    out: dict[str, int] = {}
    while via[v] is not None:
        eid, sign = via[v]
        out[eid] = out.get(eid, 0) + sign
        e = g.edge(eid)
        v = e.ends[0] if sign == 1 else e.ends[1]
    return out


@lru_cache(maxsize=512)
def slope_lattice(g: MetrisedGraph) -> SlopeLattice:
    edges = [e for e in g.edges if not e.is_loop]
    idx = {e.id: j for j, e in enumerate(edges)}
    _, via, _ = _spanning_tree(g)
    tree_edges = {x[0] for x in via.values() if x is not None}
    rows = []
    for e in edges:
        if e.id in tree_edges:
            continue
        # fundamental cycle: root -> a, then a -> b along e, then b -> root
        cycle = dict(_tree_path_to_root(g, via, e.ends[0]))
        cycle[e.id] = cycle.get(e.id, 0) + 1
        for eid, s in _tree_path_to_root(g, via, e.ends[1]).items():
            cycle[eid] = cycle.get(eid, 0) - s
        for t in range(g.monoid.rank):
            row = [0] * len(edges)
            for eid, c in cycle.items():
                row[idx[eid]] = c * g.edge(eid).length[t]
            if any(row):
                rows.append(row)
    basis = kernel_basis(rows, len(edges))
    return SlopeLattice(tuple(e.id for e in edges), tuple(basis))


def pl_from_slopes(
    g: MetrisedGraph, slopes: Mapping[str, int], base: Sequence[int] | None = None
) -> PLFunction:
    """Integrate edge slopes from the root vertex; ``slopes`` must lie in the slope lattice."""
    root, via, order = _spanning_tree(g)
    f: PLFunction = {root: tuple(base) if base is not None else g.monoid.zero}
    for v in order[1:]:
        eid, sign = via[v]
        e = g.edge(eid)
        prev = e.ends[0] if sign == 1 else e.ends[1]
        step = sign * slopes.get(eid, 0)
        f[v] = tuple(x + step * l for x, l in zip(f[prev], e.length))
    bad = pl_violation(g, f)
    if bad is not None or any(
        integer_multiple(tuple(x - y for x, y in zip(f[e.ends[1]], f[e.ends[0]])), e.length)
        != slopes.get(e.id, 0)
        for e in g.edges if not e.is_loop
    ):
        raise NotPiecewiseLinear(bad or "?", "(slopes are not realised by a potential)")
    return f


def random_pl(g: MetrisedGraph, rng: random.Random, spread: int = 3) -> PLFunction:
    """Random PL function: random slope-lattice combination plus random constant."""
    lat = slope_lattice(g)
    slopes = [0] * len(lat.edges)
    for b in lat.basis:
        c = rng.randint(-spread, spread)
        slopes = [s + c * x for s, x in zip(slopes, b)]
    base = [rng.randint(-spread, spread) for _ in range(g.monoid.rank)]
    return pl_from_slopes(g, dict(zip(lat.edges, slopes)), base)


# -- principal divisors ---------------------------------------------------

@dataclass(frozen=True)
class PrinBasis:
    """Hermite basis of the principal lattice.

    Rows are coordinate vectors over ``vertices[:-1]``; the last sorted vertex
    is the pivot whose coefficient is implied by degree zero.
    """

    vertices: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def pivot(self) -> str:
        return self.vertices[-1]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def divisors(self) -> list[Divisor]:
        out = []
        for r in self.rows:
            out.append(Divisor.from_vector(self.vertices, list(r) + [-sum(r)]))
        return out

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.rows, len(self.vertices) - 1)


@lru_cache(maxsize=512)
def prin_basis(g: MetrisedGraph) -> PrinBasis:
    order = g.sorted_vertices
    pos = {v: i for i, v in enumerate(order)}
    lat = slope_lattice(g)
    images = []
    for b in lat.basis:
        vec = [0] * len(order)
        for eid, s in zip(lat.edges, b):
            a, c = g.edge(eid).ends
            vec[pos[a]] -= s
            vec[pos[c]] += s
        images.append(vec[:-1])
    rows = Lattice(images, len(order) - 1).basis
    return PrinBasis(order, tuple(rows))


class LinearSystems:
    """Cached linear-equivalence machinery for one graph.

    Divisors are handled as coefficient vectors in sorted vertex order.  The
    coset key of ``D`` is ``(deg D, reduced head)``, where the head drops the
    pivot coordinate; two divisors are equivalent iff their keys agree.
    """

    def __init__(self, g: MetrisedGraph):
        self.graph = g
        self.basis = prin_basis(g)
        self.order = self.basis.vertices
        self.n = len(self.order)
        self._lattice = self.basis.lattice
        self._index: dict[int, dict] = {}
        self._ranks: dict = {}

    def vector(self, D: Mapping[str, int]) -> tuple[int, ...]:
        return tuple(Divisor(D).vector(self.order))

    def key(self, vec: Sequence[int]):
        rem, _ = self._lattice.reduce(vec[:-1])
        return sum(vec), rem

    def principal_combination(self, vec: Sequence[int]) -> list[int] | None:
        if sum(vec) != 0:
            return None
        return self._lattice.combination(vec[:-1])

    def _class_index(self, d: int) -> dict:
        idx = self._index.get(d)
        if idx is None:
            idx = {}
            for vec in effective_vectors(self.n, d):
                idx.setdefault(self.key(vec), vec)
            self._index[d] = idx
        return idx

    def effective_representative(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        d = sum(vec)
        if d < 0:
            return None
        if all(x >= 0 for x in vec):
            return tuple(vec)
        return self._class_index(d).get(self.key(vec))

    def nonempty(self, vec: Sequence[int]) -> bool:
        d = sum(vec)
        if d < 0:
            return False
        if all(x >= 0 for x in vec):
            return True
        return self.key(vec) in self._class_index(d)

    def rank(self, vec: Sequence[int]) -> int:
        # rank is a class invariant, so it is cached by coset key
        vec = tuple(vec)
        key = self.key(vec)
        r = self._ranks.get(key)
        if r is None:
            r = self._rank(vec)
            self._ranks[key] = r
        return r

    def _rank(self, vec: tuple[int, ...]) -> int:
        d = sum(vec)
        if not self.nonempty(vec):
            return -1
        for k in range(1, d + 1):
            for F in effective_vectors(self.n, k):
                if not self.nonempty(tuple(x - y for x, y in zip(vec, F))):
                    return k - 1
        return d

    def has_positive_rank(self, vec: Sequence[int]) -> bool:
        vec = list(vec)
        for i in range(self.n):
            vec[i] -= 1
            ok = self.nonempty(vec)
            vec[i] += 1
            if not ok:
                return False
        return True

    def dgon(self) -> tuple[int, tuple[int, ...]]:
        for d in range(1, self.n + 1):
            for vec in effective_vectors(self.n, d):
                if self.has_positive_rank(vec):
                    return d, vec
        raise AssertionError("the all-ones divisor always has positive rank")


@lru_cache(maxsize=256)
def linear_systems(g: MetrisedGraph) -> LinearSystems:
    return LinearSystems(g)


def is_principal(g: MetrisedGraph, D: Mapping[str, int]) -> tuple[bool, list[int] | None]:
    """Membership in the principal lattice with the combination of basis rows."""
    ls = linear_systems(g)
    combo = ls.principal_combination(ls.vector(D))
    return combo is not None, combo


def linear_system_nonempty(g: MetrisedGraph, D: Mapping[str, int]) -> Divisor | None:
    """First effective divisor (colex order) linearly equivalent to ``D``, if any."""
    ls = linear_systems(g)
    rep = ls.effective_representative(ls.vector(D))
    return None if rep is None else Divisor.from_vector(ls.order, rep)


def rank(g: MetrisedGraph, D: Mapping[str, int]) -> int:
    ls = linear_systems(g)
    return ls.rank(ls.vector(D))


def dgon(g: MetrisedGraph) -> tuple[int, Divisor]:
    """Divisorial gonality and the first winning divisor in colex order."""
    ls = linear_systems(g)
    d, vec = ls.dgon()
    return d, Divisor.from_vector(ls.order, vec)


def pushforward_contraction(vm: VertexMap, D: Mapping[str, int]) -> Divisor:
    out: dict[str, int] = {}
    for v, n in D.items():
        if v not in vm:
            raise UnknownVertex(f"vertex {v!r} is not in the contraction map")
        out[vm[v]] = out.get(vm[v], 0) + n
    return Divisor(out)

"""Exact integer lattice routines: Hermite normal form, integer kernels and
coset reduction.

Everything works on plain Python ``int`` lists, so there is no overflow and
no floating point anywhere.
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def _echelonize(rows: list[list[int]], width: int) -> tuple[list[list[int]], list[list[int]]]:
    """Row-reduce ``rows`` on their first ``width`` coordinates.

    Returns ``(pivots, rest)``: ``pivots`` is in Hermite normal form on the
    leading ``width`` columns (positive pivots, entries above each pivot
    reduced into ``[0, pivot)``), ``rest`` holds the rows whose leading part
    became zero.  Only unimodular row operations are used, so ``pivots + rest``
    spans the same lattice as the input.
    """
    pending = [r[:] for r in rows]
    pivots: list[list[int]] = []
    rest: list[list[int]] = []
    for col in range(width):
        active = [r for r in pending if r[col]]
        if not active:
            continue
        pending = [r for r in pending if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            survivors = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                (survivors if r[col] else pending).append(r)
            active = survivors
        p = active[0]
        if p[col] < 0:
            p = [-a for a in p]
        for b in pivots:
            q = b[col] // p[col]
            if q:
                b[:] = [x - q * y for x, y in zip(b, p)]
        pivots.append(p)
    for r in pending:
        if any(r[:width]):
            raise AssertionError("echelon reduction left a nonzero leading part")
        rest.append(r)
    return pivots, rest


def hermite_basis(vectors: Iterable[Sequence[int]], dim: int) -> list[Vector]:
    """Row-style Hermite normal form basis of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    for r in rows:
        if len(r) != dim:
            raise ValueError(f"vector of length {len(r)} in a rank-{dim} lattice")
    pivots, _ = _echelonize(rows, dim)
    return [tuple(p) for p in pivots]


def kernel_basis(matrix: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Basis of ``{x in Z^ncols : matrix @ x == 0}`` in Hermite normal form."""
    m = len(matrix)
    if m == 0:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    augmented = [
        [matrix[i][j] for i in range(m)] + [int(j == k) for k in range(ncols)]
        for j in range(ncols)
    ]
    _, rest = _echelonize(augmented, m)
    return hermite_basis((r[m:] for r in rest), ncols)


def primitive(v: Sequence[int]) -> Vector:
    """Divide ``v`` by the gcd of its entries (``v`` must be nonzero)."""
    d = 0
    for x in v:
        d = gcd(d, x)
    if d == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // d for x in v)


class Lattice:
    """A sublattice of ``Z^dim`` stored by its Hermite basis.

    ``reduce`` maps a vector to the canonical representative of its coset, so
    two vectors are congruent modulo the lattice iff their reductions agree.
    """

    __slots__ = ("dim", "basis", "pivot_cols")

    def __init__(self, vectors: Iterable[Sequence[int]], dim: int):
        self.dim = dim
        self.basis = hermite_basis(vectors, dim)
        self.pivot_cols = [next(j for j, x in enumerate(b) if x) for b in self.basis]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, vec: Sequence[int]) -> tuple[Vector, list[int]]:
        """Return ``(remainder, coefficients)`` with ``vec == remainder + sum(c*b)``."""
        v = list(vec)
        coeffs = []
        for b, c in zip(self.basis, self.pivot_cols):
            q = v[c] // b[c]
            if q:
                v = [x - q * y for x, y in zip(v, b)]
            coeffs.append(q)
        return tuple(v), coeffs

    def __contains__(self, vec) -> bool:
        rem, _ = self.reduce(vec)
        return not any(rem)

    def combination(self, vec) -> list[int] | None:
        rem, coeffs = self.reduce(vec)
        return None if any(rem) else coeffs

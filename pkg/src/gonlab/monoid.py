"""Sharp, integral, finitely generated monoids presented inside ``Z^k``.

A :class:`MonoidSpec` is either the full orthant ``N^k`` (free mode) or the
submonoid generated by a finite list of integer vectors.  Elements are plain
tuples of ints; the groupification is modelled by the ambient lattice, so
monoids with torsion in their groupification cannot be expressed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from typing import Sequence

from .errors import DimensionError, EmptyInput, HomRangeError, MalformedSpec, ZeroDivisor
from .lattice import kernel_basis, primitive

Element = tuple[int, ...]

#: candidate functional coefficients range over [-cap, cap] with
#: cap = FUNCTIONAL_CAP_FACTOR * max |generator coordinate|
FUNCTIONAL_CAP_FACTOR = 10
#: multiples of lcm tried by :func:`ray_lcm`
RAY_LCM_CAP = 64


@dataclass(frozen=True)
class MonoidSpec:
    rank: int
    generators: tuple[Element, ...] | None = None

    def __post_init__(self):
        if self.generators is not None:
            gens = tuple(tuple(int(x) for x in g) for g in self.generators)
            for g in gens:
                if len(g) != self.rank:
                    raise DimensionError(f"generator {g} does not have {self.rank} coordinates")
            object.__setattr__(self, "generators", gens)

    @classmethod
    def free(cls, rank: int) -> "MonoidSpec":
        return cls(rank)

    @classmethod
    def generated(cls, generators: Sequence[Sequence[int]], rank: int | None = None) -> "MonoidSpec":
        gens = tuple(tuple(g) for g in generators)
        if rank is None:
            if not gens:
                raise MalformedSpec("rank is required for an empty generator list")
            rank = len(gens[0])
        return cls(rank, gens)

    @property
    def is_free(self) -> bool:
        return self.generators is None

    def generator_list(self) -> tuple[Element, ...]:
        """Generators, with the standard basis standing in for free mode."""
        if self.generators is None:
            return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))
        return self.generators

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def to_json(self) -> dict:
        if self.is_free:
            return {"rank": self.rank, "mode": "free"}
        return {"rank": self.rank, "generators": [list(g) for g in self.generators]}


@dataclass
class ValidationReport:
    """Outcome of a report-style check.

    ``axiom`` names the violated condition and ``element`` the offending id
    when ``valid`` is false; ``witness`` carries supporting data for a pass.
    """

    valid: bool
    axiom: str | None = None
    element: str | None = None
    detail: str = ""
    witness: object = field(default=None, repr=False)

    def __bool__(self):
        return self.valid

    def to_json(self) -> dict:
        out = {"valid": self.valid}
        if not self.valid:
            out["axiom"] = self.axiom
            out["element"] = self.element
            out["detail"] = self.detail
        return out


def _dot(f: Sequence[int], m: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(f, m))


def _check_dim(m: Sequence[int], rank: int) -> Element:
    m = tuple(m)
    if len(m) != rank:
        raise DimensionError(f"expected {rank} coordinates, got {len(m)}")
    return m


def _candidate_functionals(rank: int, cap: int):
    # all-ones first, then by (max |c|, sum |c|, lexicographically descending)
    yield (1,) * rank
    for bound in range(1, cap + 1):
        shell = [
            c for c in itertools.product(range(bound, -bound - 1, -1), repeat=rank)
            if max(map(abs, c)) == bound
        ]
        shell.sort(key=lambda c: sum(map(abs, c)))
        yield from shell


def _rational_functional(gens: Sequence[Element], rank: int) -> Element | None:
    """Exact LP fallback: find f with f.g >= 1 for every generator, or None."""
    from sympy.solvers.simplex import InfeasibleLPError, linprog

    # f = p - n with p, n >= 0; constraint -(p - n).g <= -1
    a = [[-x for x in g] + list(g) for g in gens]
    b = [-1] * len(gens)
    c = [1] * (2 * rank)
    try:
        _, x = linprog(c, a, b)
    except InfeasibleLPError:
        return None
    f = [Fraction(str(x[i])) - Fraction(str(x[rank + i])) for i in range(rank)]
    den = reduce(lcm, (q.denominator for q in f), 1)
    return tuple(int(q * den) for q in f)


@lru_cache(maxsize=None)
def _witness_functional(spec: MonoidSpec) -> Element | None:
    gens = spec.generator_list()
    if spec.is_free:
        return (1,) * spec.rank
    if not gens:
        return (1,) * spec.rank
    cap = FUNCTIONAL_CAP_FACTOR * max(abs(x) for g in gens for x in g)
    # exhaustive search is (2*cap+1)^rank; keep it for small ranks only
    if (2 * cap + 1) ** spec.rank <= 200_000:
        for f in _candidate_functionals(spec.rank, cap):
            if all(_dot(f, g) > 0 for g in gens):
                return f
    f = _rational_functional(gens, spec.rank)
    if f is not None and all(_dot(f, g) > 0 for g in gens):
        return f
    return None


def validate_spec(spec: MonoidSpec) -> ValidationReport:
    """Check that ``spec`` presents a sharp monoid; the witness is a positive functional."""
    if spec.rank <= 0:
        raise MalformedSpec("ambient rank must be positive")
    for idx, g in enumerate(spec.generator_list()):
        if not any(g):
            return ValidationReport(False, "NonzeroGenerator", f"generators/{idx}", "generator is zero")
    f = _witness_functional(spec)
    if f is None:
        return ValidationReport(
            False, "Sharpness", None,
            "no strictly positive functional: 0 lies in the convex hull of the generators",
        )
    return ValidationReport(True, witness=f)


def is_member(m: Sequence[int], spec: MonoidSpec) -> bool:
    """Exact membership by enumeration bounded through the witness functional."""
    m = _check_dim(m, spec.rank)
    if spec.is_free:
        return all(x >= 0 for x in m)
    if not any(m):
        return True
    f = _witness_functional(spec)
    if f is None:
        raise MalformedSpec("membership is only decided for sharp specs")
    gens = spec.generators
    weights = [_dot(f, g) for g in gens]

    @lru_cache(maxsize=None)
    def search(i: int, rem: Element) -> bool:
        if not any(rem):
            return True
        if i == len(gens):
            return False
        budget = _dot(f, rem)
        if budget <= 0:
            return False
        g = gens[i]
        for c in range(budget // weights[i], -1, -1):
            if search(i + 1, tuple(r - c * x for r, x in zip(rem, g))):
                return True
        return False

    return search(0, m)


def integer_multiple(m: Sequence[int], n: Sequence[int]) -> int | None:
    """The integer ``a`` (any sign, possibly 0) with ``a*n == m``, if one exists."""
    if len(m) != len(n):
        raise DimensionError("dimension mismatch")
    if not any(n):
        raise ZeroDivisor("cannot divide by the zero element")
    j = next(i for i, x in enumerate(n) if x)
    if m[j] % n[j]:
        return None
    a = m[j] // n[j]
    if any(x != a * y for x, y in zip(m, n)):
        return None
    return a


def divide(m: Sequence[int], n: Sequence[int]) -> int | None:
    """Unique positive ``a`` with ``a*n == m``, or None."""
    a = integer_multiple(m, n)
    return a if a is not None and a > 0 else None


def find_positive_functional(spec: MonoidSpec) -> "MonoidHom":
    """Deterministic functional positive on every generator, as a hom into ``N``.

    Candidates are tried in a fixed order: the all-ones vector, then integer
    vectors by increasing max-norm, then increasing 1-norm, then
    lexicographically descending.  Beyond the coefficient cap an exact LP is
    solved instead.
    """
    report = validate_spec(spec)
    if not report.valid:
        raise MalformedSpec(f"{report.axiom}: {report.detail}")
    return MonoidHom((report.witness,), spec, MonoidSpec.free(1))


@dataclass(frozen=True)
class MonoidHom:
    """Integer matrix ``(target.rank x source.rank)`` between two specs."""

    matrix: tuple[tuple[int, ...], ...]
    source: MonoidSpec
    target: MonoidSpec

    def __post_init__(self):
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(mat) != self.target.rank or any(len(row) != self.source.rank for row in mat):
            raise DimensionError(
                f"matrix shape does not match {self.target.rank}x{self.source.rank}"
            )
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def build(cls, matrix, source: MonoidSpec, target: MonoidSpec) -> "MonoidHom":
        """Construct and check that every source generator lands in the target."""
        hom = cls(matrix, source, target)
        for g in source.generator_list():
            img = apply_hom(hom, g)
            if not is_member(img, target):
                raise HomRangeError(f"generator {g} maps to {img}, outside the target monoid")
        return hom

    @classmethod
    def identity(cls, spec: MonoidSpec, target: MonoidSpec | None = None) -> "MonoidHom":
        k = spec.rank
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), spec, target or spec)

    def __call__(self, m):
        return apply_hom(self, m)

    def is_injective(self) -> bool:
        """Injective on the source monoid (equivalently on its groupification)."""
        gens = self.source.generator_list()
        if not gens:
            return True
        # images of generators, as columns
        img_cols = [apply_hom(self, g) for g in gens]
        mat = [[col[i] for col in img_cols] for i in range(self.target.rank)]
        for k in kernel_basis(mat, len(gens)):
            combo = [sum(c * g[i] for c, g in zip(k, gens)) for i in range(self.source.rank)]
            if any(combo):
                return False
        return True


def apply_hom(f: MonoidHom, m: Sequence[int]) -> Element:
    m = _check_dim(m, f.source.rank)
    return tuple(_dot(row, m) for row in f.matrix)


def common_ray(ms: Sequence[Sequence[int]]) -> tuple[Element, list[int]] | None:
    """Primitive ``p`` and positive ``a_i`` with ``ms[i] == a_i * p``, or None."""
    if not ms:
        raise EmptyInput("common_ray needs at least one element")
    p = primitive(ms[0])
    coeffs = []
    for m in ms:
        if not any(m):
            raise ZeroDivisor("zero element has no ray")
        a = integer_multiple(m, p)
        if a is None or a <= 0:
            return None
        coeffs.append(a)
    return p, coeffs


def ray_lcm(
    ms: Sequence[Sequence[int]], spec: MonoidSpec, cap: int = RAY_LCM_CAP
) -> tuple[Element, list[int]] | None:
    """Smallest member ``L`` on the common ray of ``ms`` divisible by each of them.

    ``L = lcm(a_i) * t * p`` for the first ``t`` in ``1..cap`` that passes
    membership.  Returns ``(L, [L / m_i])`` or None when the elements do not
    share a ray or no member is found within the cap.
    """
    if not ms:
        raise EmptyInput("ray_lcm needs at least one element")
    ms = [_check_dim(m, spec.rank) for m in ms]
    ray = common_ray(ms)
    if ray is None:
        return None
    p, coeffs = ray
    base = reduce(lcm, coeffs)
    for t in range(1, cap + 1):
        c = base * t
        cand = tuple(c * x for x in p)
        if is_member(cand, spec):
            return cand, [c // a for a in coeffs]
    return None


__all__ = [
    "Element", "MonoidSpec", "MonoidHom", "ValidationReport",
    "validate_spec", "is_member", "divide", "integer_multiple",
    "find_positive_functional", "apply_hom", "common_ray", "ray_lcm",
]

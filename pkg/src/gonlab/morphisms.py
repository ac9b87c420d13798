"""Morphisms of metrised graphs, harmonicity, pullbacks and pushforwards."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .divisors import Divisor, PLFunction, is_piecewise_linear, laplacian
from .errors import NotHarmonic, NotPiecewiseLinear, SingleVertexTarget, UnknownVertex
from .graph import MetrisedGraph
from .monoid import ValidationReport, divide


@dataclass(frozen=True)
class HarmonicData:
    multiplicities: dict[str, int]
    degree: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "multiplicities": dict(sorted(self.multiplicities.items()))}


@dataclass(frozen=True, eq=False)
class GraphMorphism:
    """Map on element ids; half-edges may go to half-edges or be contracted to vertices."""

    source: MetrisedGraph
    target: MetrisedGraph
    mapping: Mapping[str, str]

    @cached_property
    def vertex_map(self) -> dict[str, str]:
        return {v: self.mapping[v] for v in self.source.vertices}

    def image(self, x: str) -> str:
        return self.mapping[x]

    @cached_property
    def slopes(self) -> dict[str, int]:
        """Slope per source half-edge; 0 on contracted ones."""
        out = {}
        for h in self.source.half_edges:
            img = self.mapping[h]
            if self.target.is_vertex(img):
                out[h] = 0
            else:
                out[h] = divide(self.target.length(img), self.source.length(h))
        return out

    def multiplicity_table(self) -> dict[str, dict[str, int]]:
        """``m_{phi,v}(e')`` for every vertex ``v`` and target half-edge at ``phi(v)``."""
        table = {}
        for v in self.source.vertices:
            row = {h2: 0 for h2 in self.target.half_edges_at(self.mapping[v])}
            for h in self.source.half_edges_at(v):
                img = self.mapping[h]
                if img in row:
                    row[img] += self.slopes[h]
            table[v] = row
        return table


def identity_morphism(g: MetrisedGraph) -> GraphMorphism:
    return GraphMorphism(g, g, {x: x for x in g.elements})


def validate_morphism(phi: GraphMorphism) -> ValidationReport:
    src, tgt, m = phi.source, phi.target, phi.mapping
    target_elements = set(tgt.elements)
    for x in src.elements:
        if x not in m:
            return ValidationReport(False, "Totality", x, "element has no image")
        if m[x] not in target_elements:
            return ValidationReport(False, "Totality", x, f"image {m[x]!r} is not an element of the target")
    for v in src.vertices:
        if not tgt.is_vertex(m[v]):
            return ValidationReport(False, "VertexToVertex", v, "vertex mapped to a half-edge")
    for h in src.half_edges:
        img = m[h]
        u, w = src.root(h), src.root(src.inv(h))
        if tgt.is_vertex(img):
            if m[u] != img or m[w] != img:
                return ValidationReport(
                    False, "ContractedEdgeEnds", h, "contracted half-edge must have both ends mapped to its image"
                )
            if m[src.inv(h)] != img:
                return ValidationReport(False, "InvolutionCompatibility", h, "partner half-edge is not contracted")
            continue
        if m[u] != tgt.root(img) or m[w] != tgt.root(tgt.inv(img)):
            return ValidationReport(False, "RootCompatibility", h, "roots do not match the image half-edge")
        if m[src.inv(h)] != tgt.inv(img):
            return ValidationReport(False, "InvolutionCompatibility", h, "phi(i(e)) != i'(phi(e))")
        if divide(tgt.length(img), src.length(h)) is None:
            return ValidationReport(
                False, "LengthDivisibility", h,
                f"target length {tgt.length(img)} is not a positive multiple of {src.length(h)}",
            )
    return ValidationReport(True)


def is_harmonic(phi: GraphMorphism) -> HarmonicData | None:
    """Horizontal multiplicities and degree, or None when not horizontally conformal."""
    if not phi.target.half_edges:
        raise SingleVertexTarget("target has no half-edges, so the degree is undefined")
    table = phi.multiplicity_table()
    mult = {}
    for v, row in table.items():
        values = set(row.values())
        if len(values) != 1:
            return None
        mult[v] = values.pop()
    # m_phi(e') summed over the fibre above r'(e'); equal for all e' when conformal
    degrees = set()
    for h2 in phi.target.half_edges:
        base = phi.target.root(h2)
        degrees.add(sum(table[v][h2] for v in phi.source.vertices if phi.mapping[v] == base))
    if len(degrees) != 1:
        raise AssertionError(f"harmonic morphism with inconsistent edge multiplicities {sorted(degrees)}")
    return HarmonicData(mult, degrees.pop())


def is_nondegenerate(phi: GraphMorphism) -> bool:
    data = is_harmonic(phi)
    if data is None:
        raise NotHarmonic("non-degeneracy is only defined for harmonic morphisms")
    return all(m > 0 for m in data.multiplicities.values())


def pullback_divisor(phi: GraphMorphism, D: Mapping[str, int]) -> Divisor:
    data = is_harmonic(phi)
    if data is None:
        raise NotHarmonic("pullback needs a harmonic morphism")
    for v in D:
        if not phi.target.is_vertex(v):
            raise UnknownVertex(f"{v!r} is not a target vertex")
    return Divisor({v: D.get(phi.mapping[v], 0) * data.multiplicities[v] for v in phi.source.vertices})


def pushforward_divisor(phi: GraphMorphism, D: Mapping[str, int]) -> Divisor:
    out: dict[str, int] = {}
    for v, n in D.items():
        if not phi.source.is_vertex(v):
            raise UnknownVertex(f"{v!r} is not a source vertex")
        t = phi.mapping[v]
        out[t] = out.get(t, 0) + n
    return Divisor(out)


def pullback_pl(phi: GraphMorphism, h: Mapping) -> PLFunction:
    g = {v: tuple(h[phi.mapping[v]]) for v in phi.source.vertices}
    if not is_piecewise_linear(phi.source, g):
        raise NotPiecewiseLinear("?", "(pullback of a PL function failed the PL check)")
    return g


def check_commuting_square(phi: GraphMorphism, h: Mapping) -> bool:
    """Compare ``phi^*(Delta'(h))`` with ``Delta(phi^*(h))``."""
    return pullback_divisor(phi, laplacian(phi.target, h)) == laplacian(phi.source, pullback_pl(phi, h))

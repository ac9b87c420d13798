"""Geometric gonality: exhaustive search for harmonic non-degenerate maps to trees.

Search space.  A non-degenerate harmonic morphism onto a tree ``T`` is
surjective on vertices: if ``w`` were missed, pick a tree edge ``t`` from a
hit vertex ``w'`` towards ``w``; any ``v`` over ``w'`` has positive
multiplicity on ``t``, so some half-edge at ``v`` maps onto ``t`` and its far
end lands on ``w``.  Hence ``T`` has at most ``|V|`` vertices and it suffices
to enumerate surjections ``psi: V -> V(T)``.

Given ``psi`` the combinatorial map is forced: trees have neither loops nor
parallel edges, so loops and edges with identified ends are contracted and
every other edge must go to the tree edge between the images of its ends.
The only freedom is the length of each tree edge ``t``, which has to be a
common multiple of the lengths mapped onto it; these lie on one ray
``p``, and the admissible lengths are ``s_t * lcm(a_e) * p`` for integers
``s_t >= 1``.  Horizontal conformality reads ``s_t * B(v, t) = s_t' * B(v, t')``
at every vertex, which fixes the ratios of the ``s_t``; the smallest integer
solution minimises the degree.

Tree-edge scales above ``cap`` are not accepted.  ``Infinite`` is reported
only when every candidate fails for a reason no choice of scales can fix
(non-adjacent images, lengths on different rays, a vertex with no edge over
some incident tree edge, or contradictory scale ratios).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from ._parallel import pmap
from .errors import SizeLimit, SingleVertexTarget
from .graph import Edge, MetrisedGraph, half_edge_id
from .monoid import RAY_LCM_CAP, common_ray, ray_lcm
from .morphisms import (
    GraphMorphism,
    is_harmonic,
    is_nondegenerate,
    validate_morphism,
)
from .trees import Tree, enumerate_trees

DEFAULT_CAP = 8
DEFAULT_VERTEX_LIMIT = 7


@dataclass
class GonalityResult:
    kind: str  # "finite", "infinite" or "exceeded"
    degree: int | None = None
    witness: GraphMorphism | None = None
    certificate: dict | None = None
    cap: int = DEFAULT_CAP
    lower_bound: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "cap": self.cap}
        if self.kind == "finite":
            out["ggon"] = self.degree
        elif self.kind == "infinite":
            out["ggon"] = "infinite"
            out["certificate"] = self.certificate
        else:
            out["ggon"] = "exceeded"
            out["lower_bound"] = self.lower_bound
            out["certificate"] = self.certificate
        return out


@dataclass
class Candidate:
    tree: Tree
    assignment: tuple[int, ...]
    degree: int | None = None
    scales: dict | None = None
    obstruction: dict | None = None
    morphism: GraphMorphism | None = field(default=None, repr=False)

    @property
    def succeeded(self) -> bool:
        return self.obstruction is None


def tree_vertex(i: int) -> str:
    return f"t{i}"


def tree_edge_id(a: int, b: int) -> str:
    return f"t{a}-t{b}"


def _surjections(g: MetrisedGraph, tree: Tree, pruned: dict):
    """Vertex assignments onto ``tree`` in lexicographic order.

    Partial assignments that put the ends of an edge on distinct,
    non-adjacent tree vertices are cut off and counted in ``pruned``.
    """
    order = g.sorted_vertices
    pos = {v: i for i, v in enumerate(order)}
    n, m = len(order), tree.size
    adj = tree.adjacency()
    earlier: list[list[tuple[int, str]]] = [[] for _ in range(n)]
    for e in g.edges:
        if e.is_loop:
            continue
        a, b = pos[e.ends[0]], pos[e.ends[1]]
        lo, hi = min(a, b), max(a, b)
        earlier[hi].append((lo, e.id))
    psi = [0] * n
    hits = [0] * m

    def rec(i: int):
        if i == n:
            yield tuple(psi)
            return
        unhit = sum(1 for c in hits if c == 0)
        for t in range(m):
            if unhit - (hits[t] == 0) > n - i - 1:
                continue
            clash = next((eid for j, eid in earlier[i] if psi[j] != t and not adj[psi[j]][t]), None)
            if clash is not None:
                pruned[clash] = pruned.get(clash, 0) + 1
                continue
            psi[i] = t
            hits[t] += 1
            yield from rec(i + 1)
            hits[t] -= 1

    yield from rec(0)


def _evaluate(g: MetrisedGraph, tree: Tree, psi: tuple[int, ...], cap: int) -> Candidate:
    order = g.sorted_vertices
    image = {v: psi[i] for i, v in enumerate(order)}
    cand = Candidate(tree, psi)

    groups: dict[tuple[int, int], list[Edge]] = {}
    for e in g.edges:
        a, b = image[e.ends[0]], image[e.ends[1]]
        if a != b:
            groups.setdefault((min(a, b), max(a, b)), []).append(e)

    base_len: dict[tuple[int, int], tuple[int, ...]] = {}
    beta: dict[str, int] = {}
    for t in sorted(groups):
        lengths = [e.length for e in groups[t]]
        if common_ray(lengths) is None:
            cand.obstruction = {
                "kind": "ray-mismatch",
                "tree_edge": tree_edge_id(*t),
                "edges": [e.id for e in groups[t]],
                "lengths": [list(l) for l in lengths],
            }
            return cand
        found = ray_lcm(lengths, g.monoid)
        if found is None:
            cand.obstruction = {"kind": "no-member", "tree_edge": tree_edge_id(*t), "scale_dependent": True}
            return cand
        base_len[t], mults = found
        for e, mu in zip(groups[t], mults):
            beta[e.id] = mu

    incident: list[list[tuple[int, int]]] = [[] for _ in range(tree.size)]
    for a, b in tree.edges:
        t = (min(a, b), max(a, b))
        incident[a].append(t)
        incident[b].append(t)

    weight: dict[str, dict[tuple[int, int], int]] = {}
    for v in order:
        row = {t: 0 for t in incident[image[v]]}
        for h in g.half_edges_at(v):
            e = g.edge_of(h)
            if e.id in beta:
                a, b = image[e.ends[0]], image[e.ends[1]]
                row[(min(a, b), max(a, b))] += beta[e.id]
        for t, w in row.items():
            if w == 0:
                cand.obstruction = {"kind": "degenerate", "vertex": v, "tree_edge": tree_edge_id(*t)}
                return cand
        weight[v] = row

    tree_edges = sorted((min(a, b), max(a, b)) for a, b in tree.edges)
    scale: dict[tuple[int, int], Fraction] = {tree_edges[0]: Fraction(1)}
    changed = True
    while changed:
        changed = False
        for v in order:
            row = weight[v]
            known = [t for t in row if t in scale]
            if not known:
                continue
            level = scale[known[0]] * row[known[0]]
            for t, w in row.items():
                val = level / w
                if t not in scale:
                    scale[t] = val
                    changed = True
                elif scale[t] != val:
                    cand.obstruction = {"kind": "non-conformal", "vertex": v}
                    return cand
    den = reduce(lcm, (s.denominator for s in scale.values()), 1)
    ints = {t: int(s * den) for t, s in scale.items()}
    common = reduce(gcd, ints.values())
    ints = {t: s // common for t, s in ints.items()}

    t0 = tree_edges[0]
    cand.degree = sum(ints[t0] * weight[v][t0] for v in order if image[v] == t0[0])
    cand.scales = {tree_edge_id(*t): s for t, s in sorted(ints.items())}
    if max(ints.values()) > cap:
        cand.obstruction = {"kind": "scale-cap", "scales": cand.scales, "scale_dependent": True}
        return cand

    target = MetrisedGraph(
        g.monoid,
        tuple(tree_vertex(i) for i in range(tree.size)),
        tuple(
            Edge(tree_edge_id(*t), (tree_vertex(t[0]), tree_vertex(t[1])), tuple(ints[t] * x for x in base_len[t]))
            for t in tree_edges
        ),
    )
    mapping = {v: tree_vertex(image[v]) for v in order}
    for e in g.edges:
        a, b = image[e.ends[0]], image[e.ends[1]]
        for side in (0, 1):
            h = half_edge_id(e.id, side)
            root = a if side == 0 else b
            if a == b:
                mapping[h] = tree_vertex(a)
            else:
                mapping[h] = half_edge_id(tree_edge_id(min(a, b), max(a, b)), 0 if root == min(a, b) else 1)
    cand.morphism = GraphMorphism(g, target, mapping)
    return cand


def _tree_candidates(args) -> tuple[list[Candidate], dict]:
    g, tree, cap = args
    pruned: dict[str, int] = {}
    return [_evaluate(g, tree, psi, cap) for psi in _surjections(g, tree, pruned)], pruned


def iter_candidates(g: MetrisedGraph, cap: int = DEFAULT_CAP, pruned: dict | None = None):
    """Evaluate every surjection onto every tree with 2..|V| vertices, in search order.

    Trees are handled independently (in parallel under ``GONLAB_THREADS``);
    results are replayed in the fixed enumeration order.
    """
    pruned = {} if pruned is None else pruned
    trees = [t for t in enumerate_trees(len(g.vertices)) if t.size >= 2]
    for cands, cut in pmap(_tree_candidates, [(g, t, cap) for t in trees]):
        for k, v in cut.items():
            pruned[k] = pruned.get(k, 0) + v
        yield from cands


def harmonic_maps_to_trees(g: MetrisedGraph, cap: int = DEFAULT_CAP):
    """All successful candidates (harmonic non-degenerate maps onto trees)."""
    for cand in iter_candidates(g, cap):
        if cand.succeeded:
            yield cand.morphism


def _single_vertex_witness(g: MetrisedGraph) -> GraphMorphism:
    v = g.vertices[0]
    target = MetrisedGraph(g.monoid, (tree_vertex(0),), ())
    mapping = {x: tree_vertex(0) for x in g.elements}
    assert g.root(v) == v
    return GraphMorphism(g, target, mapping)


def ggon(g: MetrisedGraph, cap: int = DEFAULT_CAP, limit: int | None = DEFAULT_VERTEX_LIMIT) -> GonalityResult:
    if limit is not None and len(g.vertices) > limit:
        raise SizeLimit(f"geometric gonality search is limited to {limit} vertices")
    if len(g.vertices) == 1:
        return GonalityResult("finite", 1, _single_vertex_witness(g), cap=cap)

    pruned: dict[str, int] = {}
    best: Candidate | None = None
    best_beyond: int | None = None
    failures = []
    scale_dependent = False
    for cand in iter_candidates(g, cap, pruned):
        if cand.succeeded:
            if best is None or cand.degree < best.degree:
                best = cand
            continue
        obs = cand.obstruction
        if obs.get("scale_dependent"):
            scale_dependent = True
            if cand.degree is not None and (best_beyond is None or cand.degree < best_beyond):
                best_beyond = cand.degree
        failures.append(
            {
                "tree": [[a, b] for a, b in cand.tree.edges],
                "assignment": {v: tree_vertex(t) for v, t in zip(g.sorted_vertices, cand.assignment)},
                "obstruction": obs,
            }
        )

    if best is not None and (best_beyond is None or best.degree <= best_beyond):
        return GonalityResult("finite", best.degree, best.morphism, cap=cap)
    certificate = {
        "candidates": failures,
        "pruned_non_adjacent": dict(sorted(pruned.items())),
        "max_tree_size": len(g.vertices),
        "ray_lcm_cap": RAY_LCM_CAP,
    }
    if best is None and not scale_dependent:
        certificate["reason"] = "every candidate fails for a scale-independent reason"
        return GonalityResult("infinite", certificate=certificate, cap=cap)
    certificate["reason"] = "some candidates need tree-edge scales above the cap"
    return GonalityResult("exceeded", certificate=certificate, cap=cap, lower_bound=cap + 1)


def verify_witness(phi: GraphMorphism) -> dict:
    """Re-run every check on a claimed witness; report degree or first failure."""
    checks = []

    def record(name, ok):
        checks.append({"check": name, "passed": bool(ok)})
        return ok

    report = validate_morphism(phi)
    if not record("morphism", report.valid):
        return {"degree": None, "failed": "morphism", "detail": report.to_json(), "checks": checks}
    if not record("tree", phi.target.is_tree()):
        return {"degree": None, "failed": "tree", "checks": checks}
    try:
        data = is_harmonic(phi)
    except SingleVertexTarget:
        if len(phi.source.vertices) == 1:
            record("harmonic", True)
            record("nondegenerate", True)
            return {"degree": 1, "failed": None, "checks": checks, "convention": "single vertex"}
        record("harmonic", False)
        return {"degree": None, "failed": "harmonic", "checks": checks}
    if not record("harmonic", data is not None):
        return {"degree": None, "failed": "harmonic", "checks": checks}
    if not record("nondegenerate", is_nondegenerate(phi)):
        return {"degree": None, "failed": "nondegenerate", "checks": checks}
    return {"degree": data.degree, "failed": None, "checks": checks}

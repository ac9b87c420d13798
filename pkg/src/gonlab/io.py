"""Reading and writing JSON documents for graphs, morphisms and homomorphisms.

Documents are checked against the schemas in :mod:`gonlab.schemas`; problems
raise :class:`ParseError` with a JSON pointer to the offending node.  Output is
canonical: sorted keys, two-space indent, integers only, trailing newline.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema

from . import schemas
from .divisors import Divisor
from .errors import DimensionError, GonlabError, InvalidGraph, MalformedSpec, ParseError
from .graph import Edge, MetrisedGraph, validate_graph
from .monoid import MonoidHom, MonoidSpec
from .morphisms import GraphMorphism


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _pointer(path) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def _no_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ParseError("", f"duplicate key {k!r}")
        out[k] = v
    return out


def loads(text: str | bytes) -> Any:
    try:
        return json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError("", f"malformed JSON: {exc}") from None


def check_schema(data: Any, schema: dict, prefix: str = "") -> None:
    error = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(schema).iter_errors(data))
    if error is not None:
        raise ParseError(prefix + _pointer(error.absolute_path), error.message)


# -- graphs ---------------------------------------------------------------


@dataclass
class GraphDocument:
    graph: MetrisedGraph
    name: str | None = None
    divisors: dict[str, Divisor] = field(default_factory=dict)
    pl: dict[str, dict[str, tuple[int, ...]]] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = graph_to_json(self.graph)
        if self.name is not None:
            out["name"] = self.name
        if self.divisors:
            out["divisors"] = {k: dict(v.to_json()) for k, v in self.divisors.items()}
        if self.pl:
            out["pl"] = {k: {v: list(x) for v, x in f.items()} for k, f in self.pl.items()}
        return out


def monoid_from_json(data: dict, prefix: str = "/monoid") -> MonoidSpec:
    gens = data.get("generators")
    mode = data.get("mode", "generated" if gens is not None else "free")
    if mode == "free" and gens is not None:
        raise ParseError(prefix + "/generators", "free monoids take no generators")
    if mode == "generated" and gens is None:
        raise ParseError(prefix, "generated monoids need a generators list")
    try:
        return MonoidSpec(data["rank"], None if gens is None else tuple(tuple(g) for g in gens))
    except (DimensionError, MalformedSpec) as exc:
        raise ParseError(prefix + "/generators", str(exc)) from None


def graph_to_json(g: MetrisedGraph) -> dict:
    return {
        "monoid": g.monoid.to_json(),
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "ends": list(e.ends), "length": list(e.length)} for e in g.edges],
    }


def _graph_from_checked(data: dict, prefix: str) -> MetrisedGraph:
    monoid = monoid_from_json(data["monoid"], prefix + "/monoid")
    seen: dict[str, str] = {}
    for j, v in enumerate(data["vertices"]):
        if v in seen:
            raise ParseError(f"{prefix}/vertices/{j}", f"duplicate vertex id {v!r}")
        seen[v] = "vertex"
    for j, e in enumerate(data["edges"]):
        if e["id"] in seen:
            raise ParseError(f"{prefix}/edges/{j}/id", f"duplicate id {e['id']!r}")
        seen[e["id"]] = "edge"
    edges = [Edge(e["id"], tuple(e["ends"]), tuple(e["length"])) for e in data["edges"]]
    return MetrisedGraph(monoid, tuple(data["vertices"]), tuple(edges))


def _sections(data: dict, g_vertices, prefix: str):
    divisors = {}
    for name, d in data.get("divisors", {}).items():
        for v in d:
            if v not in g_vertices:
                raise ParseError(f"{prefix}/divisors/{name}/{v}", "not a vertex")
        divisors[name] = Divisor(d)
    pl = {}
    for name, f in data.get("pl", {}).items():
        pl[name] = {v: tuple(x) for v, x in f.items()}
    return divisors, pl


def graph_document_from_json(data: Any, prefix: str = "") -> GraphDocument:
    check_schema(data, schemas.GRAPH, prefix)
    g = _graph_from_checked(data, prefix)
    divisors, pl = _sections(data, g.vertex_set, prefix)
    return GraphDocument(g, data.get("name"), divisors, pl)


def parse_graph(text: str | bytes) -> GraphDocument:
    """Parse a graph document; the graph is not yet checked against the axioms."""
    return graph_document_from_json(loads(text))


def checked(g: MetrisedGraph) -> MetrisedGraph:
    report = validate_graph(g)
    if not report.valid:
        raise InvalidGraph(report)
    return g


def serialize(doc: GraphDocument) -> bytes:
    return canonical_dumps(doc.to_json()).encode()


def read_graph(path: str | Path) -> GraphDocument:
    doc = parse_graph(Path(path).read_bytes())
    checked(doc.graph)
    return doc


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(canonical_dumps(obj))


# -- morphisms ------------------------------------------------------------


@dataclass
class MorphismDocument:
    morphism: GraphMorphism
    divisors: dict[str, Divisor] = field(default_factory=dict)
    pl: dict[str, dict[str, tuple[int, ...]]] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = morphism_to_json(self.morphism)
        if self.divisors:
            out["divisors"] = {k: dict(v.to_json()) for k, v in self.divisors.items()}
        if self.pl:
            out["pl"] = {k: {v: list(x) for v, x in f.items()} for k, f in self.pl.items()}
        return out


def morphism_to_json(phi: GraphMorphism) -> dict:
    return {
        "source": graph_to_json(phi.source),
        "target": graph_to_json(phi.target),
        "map": dict(sorted(phi.mapping.items())),
    }


def morphism_document_from_json(data: Any) -> MorphismDocument:
    check_schema(data, schemas.MORPHISM)
    src = checked(_graph_from_checked(data["source"], "/source"))
    tgt = checked(_graph_from_checked(data["target"], "/target"))
    divisors = {}
    for name, d in data.get("divisors", {}).items():
        divisors[name] = Divisor(d)
    pl = {name: {v: tuple(x) for v, x in f.items()} for name, f in data.get("pl", {}).items()}
    return MorphismDocument(GraphMorphism(src, tgt, dict(data["map"])), divisors, pl)


def parse_morphism(text: str | bytes) -> MorphismDocument:
    return morphism_document_from_json(loads(text))


def read_morphism(path: str | Path) -> MorphismDocument:
    return parse_morphism(Path(path).read_bytes())


# -- homomorphisms, divisors, PL functions --------------------------------


def hom_from_json(data: Any, source: MonoidSpec) -> MonoidHom:
    check_schema(data, schemas.HOM)
    target = monoid_from_json(data["target"], "/target")
    try:
        return MonoidHom.build(tuple(tuple(r) for r in data["matrix"]), source, target)
    except GonlabError as exc:
        raise ParseError("/matrix", str(exc)) from None


def divisor_from_json(data: Any) -> Divisor:
    check_schema(data, schemas.DIVISOR)
    return Divisor(data)


def pl_from_json(data: Any) -> dict[str, tuple[int, ...]]:
    check_schema(data, schemas.PL)
    return {v: tuple(x) for v, x in data.items()}


def read_json(path: str | Path) -> Any:
    return loads(Path(path).read_bytes())

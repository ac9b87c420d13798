"""JSON schemas for input documents and for every CLI output."""
from __future__ import annotations

ID = {"type": "string", "minLength": 1}
INT_VECTOR = {"type": "array", "items": {"type": "integer"}}
DIVISOR = {"type": "object", "additionalProperties": {"type": "integer"}}
PL = {"type": "object", "additionalProperties": INT_VECTOR}

MONOID = {
    "type": "object",
    "required": ["rank"],
    "properties": {
        "rank": {"type": "integer"},
        "mode": {"enum": ["free", "generated"]},
        "generators": {"type": "array", "items": INT_VECTOR},
    },
    "additionalProperties": False,
}

EDGE = {
    "type": "object",
    "required": ["id", "ends", "length"],
    "properties": {
        "id": ID,
        "ends": {"type": "array", "items": ID, "minItems": 2, "maxItems": 2},
        "length": INT_VECTOR,
    },
    "additionalProperties": False,
}

GRAPH = {
    "type": "object",
    "required": ["monoid", "vertices", "edges"],
    "properties": {
        "name": {"type": "string"},
        "monoid": MONOID,
        "vertices": {"type": "array", "items": ID},
        "edges": {"type": "array", "items": EDGE},
        "divisors": {"type": "object", "additionalProperties": DIVISOR},
        "pl": {"type": "object", "additionalProperties": PL},
    },
    "additionalProperties": False,
}

MORPHISM = {
    "type": "object",
    "required": ["source", "target", "map"],
    "properties": {
        "source": GRAPH,
        "target": GRAPH,
        "map": {"type": "object", "additionalProperties": ID},
        "divisors": {"type": "object", "additionalProperties": DIVISOR},
        "pl": {"type": "object", "additionalProperties": PL},
    },
    "additionalProperties": False,
}

HOM = {
    "type": "object",
    "required": ["matrix", "target"],
    "properties": {"matrix": {"type": "array", "items": INT_VECTOR}, "target": MONOID},
    "additionalProperties": False,
}

REPORT = {
    "type": "object",
    "required": ["valid"],
    "properties": {
        "valid": {"type": "boolean"},
        "axiom": {"type": "string"},
        "element": {"type": ["string", "null"]},
        "detail": {"type": "string"},
    },
}

ERROR = {
    "type": "object",
    "required": ["error", "message"],
    "properties": {"error": {"type": "string"}, "message": {"type": "string"}, "pointer": {"type": "string"}},
}


def _obj(required, **props):
    return {"type": "object", "required": list(required), "properties": props}


GONALITY = {
    "type": "object",
    "required": ["ggon", "kind", "cap"],
    "properties": {
        "kind": {"enum": ["finite", "infinite", "exceeded"]},
        "ggon": {"oneOf": [{"type": "integer", "minimum": 1}, {"enum": ["infinite", "exceeded"]}]},
        "cap": {"type": "integer"},
        "lower_bound": {"type": "integer"},
        "certificate": {"type": "object"},
        "witness": MORPHISM,
        "verification": {"type": "object"},
    },
}

OUTPUTS = {
    "validate": REPORT,
    "rank": _obj(["rank", "divisor"], rank={"type": "integer", "minimum": -1}, divisor=DIVISOR, method={"type": "string"}),
    "dgon": _obj(["dgon", "witness"], dgon={"type": "integer", "minimum": 1}, witness=DIVISOR),
    "ggon": GONALITY,
    "prin": _obj(["pivot", "basis"], pivot={"type": ["string", "null"]}, basis={"type": "array", "items": DIVISOR}),
    "is-principal": _obj(
        ["principal", "divisor"], principal={"type": "boolean"}, divisor=DIVISOR,
        certificate={"type": ["object", "null"]},
    ),
    "check-morphism": _obj(["valid"], valid={"type": "boolean"}, harmonic={"type": "boolean"},
                           nondegenerate={"type": "boolean"}, degree={"type": ["integer", "null"]}),
    "pullback": _obj(["divisor"], divisor=DIVISOR),
    "pushforward": _obj(["divisor"], divisor=DIVISOR),
    "square-check": _obj(["commutes", "lhs", "rhs"], commutes={"type": "boolean"}, lhs=DIVISOR, rhs=DIVISOR),
    "contract": _obj(["graph", "vertex_map"], graph=GRAPH, vertex_map={"type": "object", "additionalProperties": ID}),
    "subdivide": GRAPH,
    "remove-loops": GRAPH,
    "pipeline": _obj(["dgonH", "trace", "witness"], dgonH={"type": "integer"}, trace={"type": "array"},
                     witness=DIVISOR, H=GRAPH),
    "treewidth": _obj(["treewidth"], treewidth={"type": "integer", "minimum": 0}),
    "bounds-report": _obj(["dgonH", "tw", "dgon", "ggon", "checks"]),
    "gen-corpus": _obj(["seed", "bounds", "graphs"], seed={"type": "integer"}, bounds={"type": "object"},
                       graphs={"type": "array", "items": GRAPH}),
}

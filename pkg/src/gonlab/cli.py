"""Command-line interface: JSON documents in, canonical JSON out.

Exit codes: 0 on success, 1 on invalid input (parse errors, failed axioms,
invalid morphisms), 2 when a size limit or the search cap is exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import io
from .corpus import CorpusBounds, generate_corpus
from .dhar import dhar_rank
from .divisors import Divisor, dgon, is_principal, laplacian, prin_basis, random_pl, rank
from .errors import GonlabError, InvalidGraph, ParseError, SizeLimit
from .ggon import DEFAULT_CAP, DEFAULT_VERTEX_LIMIT, ggon, verify_witness
from .graph import contract, remove_loops, subdivide_to_unit, validate_graph
from .morphisms import (
    is_harmonic,
    is_nondegenerate,
    pullback_divisor,
    pullback_pl,
    pushforward_divisor,
    validate_morphism,
)
from .pipeline import TREEWIDTH_LIMIT, bounds_report, combinatorial_lower_bound, treewidth

EXIT_OK, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2


class Failure(Exception):
    def __init__(self, payload: dict, code: int):
        super().__init__(payload.get("message", ""))
        self.payload = payload
        self.code = code


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(x, sort_keys=True)}" for x in obj)
    return pad + json.dumps(obj)


def _emit(obj, fmt: str) -> None:
    if fmt == "pretty":
        sys.stdout.write(_pretty(obj) + "\n")
    else:
        sys.stdout.write(io.canonical_dumps(obj))


def _inline_or_named(raw: str, named: dict, what: str):
    if raw in named:
        return named[raw]
    try:
        data = io.loads(raw)
    except ParseError:
        raise ParseError("", f"{what} {raw!r} is neither a named section entry nor inline JSON") from None
    return data


def _divisor_arg(args, named: dict) -> Divisor:
    if args.divisor is None:
        if len(named) == 1:
            return next(iter(named.values()))
        raise ParseError("", "pass --divisor NAME or --divisor '{\"v\": 1}'")
    d = _inline_or_named(args.divisor, named, "divisor")
    return d if isinstance(d, Divisor) else io.divisor_from_json(d)


def _graph(args):
    return io.read_graph(args.input)


def _check_limit(g, limit: int | None, what: str):
    if limit is not None and len(g.vertices) > limit:
        raise SizeLimit(f"{what}: graph has {len(g.vertices)} vertices, limit is {limit}")


# -- subcommands ----------------------------------------------------------


def cmd_validate(args):
    doc = io.parse_graph(open(args.input, "rb").read())
    report = validate_graph(doc.graph)
    return report.to_json(), EXIT_OK if report.valid else EXIT_INVALID


def cmd_rank(args):
    doc = _graph(args)
    D = _divisor_arg(args, doc.divisors)
    _check_limit(doc.graph, args.limit, "rank")
    if args.method == "burning":
        r = dhar_rank(doc.graph, D)
    else:
        r = rank(doc.graph, D)
    return {"rank": r, "divisor": D.to_json(), "method": args.method}, EXIT_OK


def cmd_dgon(args):
    doc = _graph(args)
    _check_limit(doc.graph, args.limit, "dgon")
    d, witness = dgon(doc.graph)
    return {"dgon": d, "witness": witness.to_json()}, EXIT_OK


def cmd_ggon(args):
    doc = _graph(args)
    limit = args.limit if args.limit is not None else DEFAULT_VERTEX_LIMIT
    result = ggon(doc.graph, cap=args.cap, limit=limit)
    out = result.to_json()
    if result.kind == "finite":
        out["verification"] = verify_witness(result.witness)
        if args.emit_witness:
            io.write_json(args.emit_witness, io.morphism_to_json(result.witness))
    return out, EXIT_LIMIT if result.kind == "exceeded" else EXIT_OK


def cmd_prin(args):
    g = _graph(args).graph
    basis = prin_basis(g)
    return {"pivot": basis.pivot, "basis": [D.to_json() for D in basis.divisors()]}, EXIT_OK


def cmd_is_principal(args):
    doc = _graph(args)
    D = _divisor_arg(args, doc.divisors)
    ok, combo = is_principal(doc.graph, D)
    cert = None
    if ok:
        basis = prin_basis(doc.graph).divisors()
        cert = {"combination": combo, "basis": [b.to_json() for b in basis]}
    return {"principal": ok, "divisor": D.to_json(), "certificate": cert}, EXIT_OK


def cmd_check_morphism(args):
    phi = io.read_morphism(args.input).morphism
    report = validate_morphism(phi)
    out = {"valid": report.valid}
    if not report.valid:
        out.update(report.to_json())
        return out, EXIT_INVALID
    try:
        data = is_harmonic(phi)
    except GonlabError as exc:
        out.update({"harmonic": False, "detail": str(exc)})
        return out, EXIT_OK
    out["harmonic"] = data is not None
    if data is not None:
        out["degree"] = data.degree
        out["multiplicities"] = dict(sorted(data.multiplicities.items()))
        out["nondegenerate"] = is_nondegenerate(phi)
    return out, EXIT_OK


def _morphism(args):
    doc = io.read_morphism(args.input)
    report = validate_morphism(doc.morphism)
    if not report.valid:
        raise Failure({"error": "InvalidMorphism", "message": report.detail, **report.to_json()}, EXIT_INVALID)
    return doc


def cmd_pullback(args):
    doc = _morphism(args)
    D = _divisor_arg(args, doc.divisors)
    return {"divisor": pullback_divisor(doc.morphism, D).to_json()}, EXIT_OK


def cmd_pushforward(args):
    doc = _morphism(args)
    D = _divisor_arg(args, doc.divisors)
    return {"divisor": pushforward_divisor(doc.morphism, D).to_json()}, EXIT_OK


def cmd_square_check(args):
    doc = _morphism(args)
    phi = doc.morphism
    if args.pl is not None:
        functions = [doc.pl[args.pl] if args.pl in doc.pl else io.pl_from_json(io.loads(args.pl))]
    elif doc.pl and not args.random:
        functions = list(doc.pl.values())
    else:
        rng = random.Random(args.seed)
        functions = [random_pl(phi.target, rng) for _ in range(args.random or 1)]
    results = []
    for h in functions:
        lhs = pullback_divisor(phi, laplacian(phi.target, h))
        rhs = laplacian(phi.source, pullback_pl(phi, h))
        results.append({"lhs": lhs.to_json(), "rhs": rhs.to_json(), "commutes": lhs == rhs})
    out = dict(results[0])
    out["commutes"] = all(r["commutes"] for r in results)
    out["checked"] = len(results)
    return out, EXIT_OK


def cmd_contract(args):
    g = _graph(args).graph
    data = io.loads(args.hom) if args.hom.lstrip().startswith("{") else io.read_json(args.hom)
    f = io.hom_from_json(data, g.monoid)
    h, vmap = contract(g, f)
    return {"graph": io.graph_to_json(h), "vertex_map": dict(sorted(vmap.items()))}, EXIT_OK


def cmd_subdivide(args):
    return io.graph_to_json(subdivide_to_unit(_graph(args).graph)), EXIT_OK


def cmd_remove_loops(args):
    return io.graph_to_json(remove_loops(_graph(args).graph)), EXIT_OK


def cmd_pipeline(args):
    g = _graph(args).graph
    res = combinatorial_lower_bound(g)
    out = res.to_json()
    out["H"] = io.graph_to_json(res.H)
    if args.report:
        io.write_json(args.report, out)
    return out, EXIT_OK


def cmd_treewidth(args):
    g = _graph(args).graph
    return {"treewidth": treewidth(g, limit=args.limit or TREEWIDTH_LIMIT)}, EXIT_OK


def cmd_bounds_report(args):
    g = _graph(args).graph
    limit = args.limit if args.limit is not None else DEFAULT_VERTEX_LIMIT
    return bounds_report(g, cap=args.cap, ggon_limit=limit), EXIT_OK


def cmd_gen_corpus(args):
    bounds = CorpusBounds(args.max_vertices, args.max_edges, random_count=args.random)
    corpus = generate_corpus(args.seed, bounds)
    out = {
        "seed": args.seed,
        "bounds": {"max_vertices": bounds.max_vertices, "max_edges": bounds.max_edges, "random": bounds.random_count},
        "graphs": [io.graph_to_json(g) for g in corpus],
    }
    return out, EXIT_OK


COMMANDS = {
    "validate": (cmd_validate, "check a graph document against every axiom"),
    "rank": (cmd_rank, "rank of a divisor"),
    "dgon": (cmd_dgon, "divisorial gonality with a witness divisor"),
    "ggon": (cmd_ggon, "geometric gonality by exhaustive search"),
    "prin": (cmd_prin, "Hermite basis of the principal divisors"),
    "is-principal": (cmd_is_principal, "decide whether a divisor is principal"),
    "check-morphism": (cmd_check_morphism, "validate a morphism and test harmonicity"),
    "pullback": (cmd_pullback, "pull a target divisor back along a harmonic morphism"),
    "pushforward": (cmd_pushforward, "push a source divisor forward"),
    "square-check": (cmd_square_check, "compare pullback of the Laplacian with the Laplacian of the pullback"),
    "contract": (cmd_contract, "contract edges along a monoid homomorphism"),
    "subdivide": (cmd_subdivide, "subdivide an N-metrised graph into unit edges"),
    "remove-loops": (cmd_remove_loops, "drop every loop"),
    "pipeline": (cmd_pipeline, "unit-graph lower bound for divisorial gonality"),
    "treewidth": (cmd_treewidth, "exact treewidth of the underlying simple graph"),
    "bounds-report": (cmd_bounds_report, "all gonality bounds side by side"),
    "gen-corpus": (cmd_gen_corpus, "generate the test corpus"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "pretty"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest scale per tree edge in ggon")
    common.add_argument("--limit", type=int, default=None, help="vertex limit for exhaustive searches")

    parser = argparse.ArgumentParser(prog="gonlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (fn, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        if name != "gen-corpus":
            p.add_argument("input", help="graph or morphism JSON document")
        if name in ("rank", "is-principal", "pullback", "pushforward"):
            p.add_argument("--divisor", help="name in the document's divisors section, or inline JSON")
        if name == "rank":
            p.add_argument("--method", choices=["lattice", "burning"], default="lattice")
        if name == "ggon":
            p.add_argument("--emit-witness", metavar="PATH")
        if name == "square-check":
            p.add_argument("--pl", help="name in the document's pl section, or inline JSON")
            p.add_argument("--random", type=int, default=0, help="number of random PL functions to test")
        if name == "contract":
            p.add_argument("--hom", required=True, help="hom JSON file or inline JSON")
        if name == "pipeline":
            p.add_argument("--report", metavar="PATH")
        if name == "gen-corpus":
            p.add_argument("--max-vertices", type=int, default=3)
            p.add_argument("--max-edges", type=int, default=3)
            p.add_argument("--random", type=int, default=0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except Failure as exc:
        out, code = exc.payload, exc.code
    except ParseError as exc:
        out, code = {"error": "ParseError", "pointer": exc.pointer, "message": exc.message}, EXIT_INVALID
    except InvalidGraph as exc:
        out = {"error": "InvalidGraph", "message": str(exc), **exc.report.to_json()}
        code = EXIT_INVALID
    except SizeLimit as exc:
        out, code = {"error": "SizeLimit", "message": str(exc)}, EXIT_LIMIT
    except GonlabError as exc:
        out, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_INVALID
    except OSError as exc:
        out, code = {"error": "IOError", "message": str(exc)}, EXIT_INVALID
    _emit(out, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())

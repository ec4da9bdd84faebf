"""Command-line front end.

Exit codes: 0 success, 1 the inputs are mathematically distinguished (or not
isomorphic), 2 input errors, 3 strictness or search-bound errors, 4 internal
consistency failures.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .amplified import CanonicalBoundError, are_LPA_isomorphic_amplified, canonical_form
from .config import OUTPUT_FORMATS, Config
from .graph import Graph, GraphError, format_graph, parse_graph, satisfies_condition_K, to_dot
from .invariant import (ConventionError, ExactnessFailure, LatticeIsoBoundError, VertexBoundError,
                        build_kweb, compare_kwebs)
from .lattice import ConditionKError, LatticeBoundError, enumerate_lattice
from .moves import MOVES, amplified_transitive_closure

EXIT_OK, EXIT_DISTINGUISHED, EXIT_INPUT, EXIT_STRICT, EXIT_INTERNAL = 0, 1, 2, 3, 4

_BOUND_ERRORS = (ConditionKError, LatticeBoundError, VertexBoundError, CanonicalBoundError,
                 LatticeIsoBoundError, ConventionError)


class StrictError(Exception):
    pass


def load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def graph_report(g: Graph) -> dict:
    return {
        "vertices": g.n,
        "edges": "inf" if g.edge_count() == float("inf") else int(g.edge_count()),
        "sinks": [g.labels[v] for v in g.sinks],
        "infinite_emitters": [g.labels[v] for v in g.infinite_emitters],
        "row_finite": g.is_row_finite,
        "amplified": g.is_amplified,
        "condition_K": satisfies_condition_K(g),
    }


def cmd_validate(args, cfg: Config, out) -> int:
    g = load_graph(args.file)
    rep = graph_report(g)
    if cfg.output == "json":
        _emit(rep, out)
    elif cfg.output == "dot":
        out.write(to_dot(g))
    else:
        for k, v in rep.items():
            out.write(f"{k}: {', '.join(v) if isinstance(v, list) else v}\n")
    if cfg.strict_condition_k and not rep["condition_K"]:
        raise StrictError("graph fails Condition (K)")
    return EXIT_OK


def cmd_lattice(args, cfg: Config, out) -> int:
    g = load_graph(args.file)
    lat = enumerate_lattice(g, cfg.lattice_enum_bound, cfg.strict_condition_k)
    if cfg.output == "json":
        _emit(lat.to_json(), out)
    elif cfg.output == "dot":
        out.write(lat.to_dot())
    else:
        for i in range(len(lat)):
            out.write("{" + ",".join(lat.labels(i)) + "}\n")
    return EXIT_OK


def cmd_kweb(args, cfg: Config, out) -> int:
    g = load_graph(args.file)
    w = build_kweb(g, cfg)
    if cfg.output == "json":
        _emit(w.to_json(), out)
    elif cfg.output == "dot":
        out.write(w.to_dot())
    else:
        for (i, j), kg in w.groups.items():
            if i != j:
                out.write(f"{w.pair_key(i, j)}: K0 = {kg.k0}, K1 = {kg.k1}, "
                          f"unit = {list(kg.unit_class)}\n")
        for k, v in w.metadata.items():
            out.write(f"{k}: {v}\n")
    return EXIT_OK


def cmd_compare(args, cfg: Config, out) -> int:
    w1 = build_kweb(load_graph(args.file1), cfg)
    w2 = build_kweb(load_graph(args.file2), cfg)
    verdict = compare_kwebs(w1, w2, require_unit=args.unit, config=cfg)
    if cfg.output == "text":
        out.write(verdict.category + (f": {verdict.witness}" if verdict.witness else "") + "\n")
    else:
        _emit(verdict.to_json(), out)
    return EXIT_DISTINGUISHED if verdict.distinguished else EXIT_OK


def cmd_move(args, cfg: Config, out) -> int:
    g = load_graph(args.file)
    fn = MOVES[args.move]
    if args.move == "move-T":
        if not args.arg:
            raise GraphError("move-T needs a path argument like v,w,x")
        res = fn(g, args.arg.split(","))
    elif args.move == "remove-source":
        if not args.arg:
            raise GraphError("remove-source needs a vertex argument")
        res = fn(g, args.arg)
    else:
        res = fn(g)
    out.write(to_dot(res) if cfg.output == "dot" else format_graph(res))
    return EXIT_OK


def cmd_classify_amplified(args, cfg: Config, out) -> int:
    g1, g2 = load_graph(args.file1), load_graph(args.file2)
    iso, bij = are_LPA_isomorphic_amplified(g1, g2, cfg.iso_search_bound)
    forms = [canonical_form(amplified_transitive_closure(g), cfg.iso_search_bound).hex()
             for g in (g1, g2)]
    res = {
        "isomorphic": iso,
        "witness": [[a, b] for a, b in bij.items()] if bij else None,
        "canonical_forms": forms,
        "classifies": "L_C(amplify(E1)) vs L_C(amplify(E2))",
    }
    if cfg.output == "text":
        out.write(f"{'isomorphic' if iso else 'not isomorphic'} "
                  f"(classifies {res['classifies']})\n")
    else:
        _emit(res, out)
    return EXIT_OK if iso else EXIT_DISTINGUISHED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true",
                        help="treat Condition (K) failures and convention violations as errors")
    common.add_argument("--output", choices=OUTPUT_FORMATS, default=None)
    common.add_argument("--bound", type=int, default=None,
                        help="vertex bound for exhaustive isomorphism search")

    p = argparse.ArgumentParser(prog="kweb", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="summarise a graph file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("lattice", parents=[common], help="saturated hereditary subsets")
    s.add_argument("file")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("kweb", parents=[common], help="ideal-related K-theory")
    s.add_argument("file")
    s.set_defaults(func=cmd_kweb)

    s = sub.add_parser("compare", parents=[common], help="compare two invariants")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--unit", action="store_true", help="also match the unit classes")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("move", parents=[common], help="apply a graph move")
    s.add_argument("file")
    s.add_argument("move", choices=sorted(MOVES))
    s.add_argument("arg", nargs="?", help="path v0,v1,... for move-T; vertex for remove-source")
    s.set_defaults(func=cmd_move)

    s = sub.add_parser("classify-amplified", parents=[common],
                       help="decide isomorphism of the amplifications' Leavitt path algebras")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=cmd_classify_amplified)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = Config.from_env(strict_condition_k=args.strict or None,
                              output=args.output, iso_search_bound=args.bound)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, cfg, out)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (StrictError, *_BOUND_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRICT
    except ExactnessFailure as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: ``tautilt <command> [options]``.

Exit codes:
  0  success
  1  bad input (parse errors, unknown presets, malformed modules or relations)
  2  a mutation could not be certified (ExchangeFailure)
  3  exploration hit the budget while --require-complete was given
  4  the algebra could not be built (not admissible within the length cap, bad vertex set)
  5  a verification check failed (fan violations, disconnected graph, oracle mismatch, ...)
  6  any other computational error
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import (AlgebraPresentation, parse_algebra_text, quotient_by_idempotent,
                      quotient_by_relations)
from .errors import (BadParams, EmptyOrFullVertexSet, ExchangeFailure, InvalidModule,
                     MalformedRelation, NotAdmissibleWithinCap, ParseError, TauTiltError,
                     UnsupportedFamily)
from .exchange import (explore, g_matrix_determinant, graph_to_dot, graph_to_json_dict,
                       is_connected, regularity_violations)
from .fan import chamber_containment, check_fan, coverage
from .fields import Field, fraction_str
from .modules import indec_projective, parse_module_literal, simple
from .reduction import tau_reduction, verify_reduction
from .stability import is_theta_semistable, submodule_dim_vectors
from .tilting import TauPair, shifted_projective
from .zoo import oracle_support_tau_tilting, parse_preset, preset

SCHEMA = 1

EXIT_OK, EXIT_INPUT, EXIT_EXCHANGE, EXIT_INCOMPLETE, EXIT_ALGEBRA, EXIT_CHECK, EXIT_OTHER = range(7)


class CheckFailed(Exception):
    """A verification step produced a negative verdict; carries the report."""

    def __init__(self, report: dict):
        super().__init__("verification failed")
        self.report = report


class Incomplete(Exception):
    def __init__(self, report: dict):
        super().__init__("exploration incomplete")
        self.report = report


# argument helpers --------------------------------------------------------------

def parse_exclusion(text: str) -> tuple[tuple[Fraction, ...], Fraction]:
    """``x,y,...:radius`` -> (ray, radius)."""
    ray, sep, rad = text.rpartition(":")
    if not sep:
        raise ParseError(f"exclusion {text!r} must look like x,y,...:radius")
    try:
        return tuple(Fraction(x) for x in ray.split(",")), Fraction(rad)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad exclusion {text!r}") from None


def load_presentation(args) -> AlgebraPresentation:
    field = Field.parse(args.field) if getattr(args, "field", None) else None
    if args.file:
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {args.file}: {exc}") from None
        pres = parse_algebra_text(text)
        return pres.with_field(field) if field is not None else pres
    if args.preset:
        family, params = parse_preset(args.preset)
        return preset(family, params, field or Field())
    raise ParseError("give --preset or --file")


def _rational_list(xs) -> list[str]:
    return [fraction_str(x) for x in xs]


def _graph_summary(g) -> dict:
    dets = sorted({g_matrix_determinant(p) for p in g.nodes.values()})
    out = {
        "nodes": len(g.nodes),
        "edges": len(g.edges),
        "complete": g.complete,
        "connected": is_connected(g),
        "determinants": [int(d) for d in dets],
        "determinants_unimodular": all(abs(d) == 1 for d in dets),
    }
    out["regular"] = not regularity_violations(g) if g.complete else None
    return out


def _algebra_info(pres: AlgebraPresentation) -> dict:
    A = pres.build()
    return {"vertices": list(pres.quiver.vertices), "dimension": A.dim,
            "field": pres.field.name, "text": pres.to_text()}


# commands ------------------------------------------------------------------------

def cmd_explore(args) -> dict:
    pres = load_presentation(args)
    A = pres.build()
    g = explore(TauPair.free(A), args.budget, threads=args.threads)
    report = {"command": "explore", "algebra": _algebra_info(pres), "budget": args.budget,
              "seed": args.seed, "summary": _graph_summary(g), "graph": graph_to_json_dict(g)}
    report["_dot"] = graph_to_dot(g)
    s = report["summary"]
    if args.require_complete and not g.complete:
        raise Incomplete(report)
    if not s["connected"] or not s["determinants_unimodular"] or s["regular"] is False:
        raise CheckFailed(report)
    return report


def cmd_fan(args) -> dict:
    pres = load_presentation(args)
    A = pres.build()
    g = explore(TauPair.free(A), args.budget, threads=args.threads)
    fan = check_fan(g)
    cov = coverage(g, args.samples, [parse_exclusion(e) for e in args.exclude_ray], seed=args.seed)
    report = {"command": "fan", "algebra": _algebra_info(pres), "budget": args.budget,
              "seed": args.seed, "summary": _graph_summary(g), "fan": fan.to_dict(),
              "coverage": cov.to_dict()}
    if args.require_complete and not g.complete:
        raise Incomplete(report)
    if not fan.ok:
        raise CheckFailed(report)
    return report


def cmd_quotient(args) -> dict:
    pres = load_presentation(args)
    quot = pres
    extra = list(args.kill_arrow) + list(args.relation)
    if extra:
        quot = quotient_by_relations(quot, extra)
    if args.drop_vertex:
        quot = quotient_by_idempotent(quot, args.drop_vertex)
    if args.quotient_file:
        if quot is not pres:
            raise ParseError("--quotient-file cannot be combined with other quotient flags")
        try:
            quot = parse_algebra_text(Path(args.quotient_file).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ParseError(f"cannot read {args.quotient_file}: {exc}") from None
    if quot is pres:
        raise ParseError("give --kill-arrow, --relation, --drop-vertex or --quotient-file")
    A, B = pres.build(), quot.build()
    gA = explore(TauPair.free(A), args.budget, threads=args.threads)
    gB = explore(TauPair.free(B), args.budget, threads=args.threads)
    report = {"command": "quotient", "algebra": _algebra_info(pres), "quotient": _algebra_info(quot),
              "budget": args.budget, "seed": args.seed,
              "a_summary": _graph_summary(gA), "b_summary": _graph_summary(gB)}
    if A.n == B.n:
        cont = chamber_containment(gA, gB, args.samples,
                                   [parse_exclusion(e) for e in args.exclude_ray], seed=args.seed)
        report["containment"] = cont.to_dict()
    if args.require_complete and not gB.complete:
        raise Incomplete(report)
    if gB.complete and not is_connected(gB):
        raise CheckFailed(report)
    return report


def parse_pin(A, text: str) -> TauPair:
    """``P<label>`` projective, ``S<label>`` simple, ``Q<label>`` shifted projective,
    or a module literal."""
    text = text.strip()
    kind, label = text[:1], text[1:]
    if kind in "PSQ" and label in A.quiver.vertex_index:
        v = A.quiver.vertex(label)
        if kind == "P":
            return TauPair.from_modules(A, [indec_projective(A, v)])
        if kind == "S":
            return TauPair.from_modules(A, [simple(A, v)])
        return TauPair(A, [shifted_projective(A, v)])
    return TauPair.from_modules(A, [parse_module_literal(A, text)])


def cmd_reduce(args) -> dict:
    pres = load_presentation(args)
    A = pres.build()
    g = explore(TauPair.free(A), args.budget, threads=args.threads)
    if not g.complete:
        raise Incomplete({"command": "reduce", "summary": _graph_summary(g), "seed": args.seed})
    u = parse_pin(A, args.pin)
    red = tau_reduction(g, u)
    ver = verify_reduction(g, u, red)
    report = {"command": "reduce", "algebra": _algebra_info(pres), "seed": args.seed,
              "pin": [list(k) for k in u.key], "completion": [list(k) for k in red.completion.key],
              "reduced_algebra": _algebra_info(red.presentation) if red.presentation else None,
              "verification": ver,
              "node_map": [{"node": [list(v) for v in k],
                            "image": [list(v) for v in q.key] if q is not None else []}
                           for k, q in red.node_map.items()]}
    if not ver["isomorphic"]:
        raise CheckFailed(report)
    return report


def cmd_oracle_check(args) -> dict:
    if not args.preset:
        raise ParseError("oracle-check needs --preset")
    family, params = parse_preset(args.preset)
    oracle = oracle_support_tau_tilting(family, params)
    A = oracle[0].algebra
    g = explore(TauPair.free(A), args.budget, threads=args.threads)
    ok = {p.key for p in oracle}
    report = {"command": "oracle-check", "preset": args.preset, "seed": args.seed,
              "oracle_pairs": len(ok), "explored_pairs": len(g.nodes),
              "agree": ok == set(g.nodes), "summary": _graph_summary(g)}
    if not report["agree"]:
        raise CheckFailed(report)
    return report


def cmd_stability(args) -> dict:
    if not args.field:
        args.field = "F2"
    pres = load_presentation(args)
    A = pres.build()
    if not args.module:
        raise ParseError("stability needs --module")
    M = parse_module_literal(A, args.module)
    thetas = [tuple(Fraction(x) for x in t.split(",")) for t in args.theta]
    subs = sorted(submodule_dim_vectors(M))
    report = {"command": "stability", "algebra": _algebra_info(pres), "seed": args.seed,
              "dim_vector": list(M.dims),
              "submodule_dim_vectors": [list(d) for d in subs],
              "theta": [{"theta": _rational_list(t), "semistable": is_theta_semistable(M, t)}
                        for t in thetas]}
    return report


COMMANDS = {"explore": cmd_explore, "fan": cmd_fan, "quotient": cmd_quotient,
            "reduce": cmd_reduce, "oracle-check": cmd_oracle_check, "stability": cmd_stability}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tautilt", description=__doc__.splitlines()[0],
                                     epilog="\n".join(__doc__.splitlines()[2:]),
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--preset", help="e.g. linear_A:3, kronecker, cyclic_nakayama:3,2")
        src.add_argument("--file", help="algebra in the text format")
        p.add_argument("--field", help="override the field: Q or F<p>")
        p.add_argument("--budget", type=int, default=None, help="node limit for exploration")
        p.add_argument("--samples", type=int, default=1000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--exclude-ray", action="append", default=[], metavar="X,Y,...:R")
        p.add_argument("--require-complete", action="store_true")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "dot"), default="json")
        p.add_argument("--threads", type=int, default=1)
        if name == "quotient":
            p.add_argument("--kill-arrow", action="append", default=[])
            p.add_argument("--relation", action="append", default=[])
            p.add_argument("--drop-vertex", action="append", default=[])
            p.add_argument("--quotient-file", help="the quotient algebra given directly")
        if name == "reduce":
            p.add_argument("--pin", required=True, help="P<v>, S<v>, Q<v> or a module literal")
        if name == "stability":
            p.add_argument("--module", help="module literal DIMS;ARROW=ROWS;...")
            p.add_argument("--theta", action="append", default=[], metavar="T1,T2,...")
    return parser


def _validate(args) -> None:
    if args.budget is not None and args.budget < 1:
        raise BadParams("--budget must be at least 1")
    if args.samples < 1:
        raise BadParams("--samples must be at least 1")
    if args.threads < 1:
        raise BadParams("--threads must be at least 1")


def _emit(report: dict, args) -> None:
    dot = report.pop("_dot", None)
    if args.format == "dot":
        if dot is None:
            raise BadParams("--format dot is only available for explore")
        text = dot
    else:
        report = {"schema": SCHEMA, **report}
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; report them as bad input
        return EXIT_INPUT if exc.code else EXIT_OK
    code = EXIT_OK
    try:
        _validate(args)
        report = COMMANDS[args.command](args)
    except Incomplete as exc:
        report, code = exc.report, EXIT_INCOMPLETE
    except CheckFailed as exc:
        report, code = exc.report, EXIT_CHECK
    except (ParseError, BadParams, InvalidModule, MalformedRelation, UnsupportedFamily) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ExchangeFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXCHANGE
    except (NotAdmissibleWithinCap, EmptyOrFullVertexSet) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALGEBRA
    except TauTiltError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_OTHER
    try:
        _emit(report, args)
    except BadParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())

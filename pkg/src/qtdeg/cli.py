"""Command-line surface: decide, set, verify, conjecture, charpair, dominate.

Exit codes: 0 realizable/success, 1 obstructed/none-exists, 2 unknown or
budget exhausted, 3 usage error.  JSON output (--json) is the stable machine
interface; the human tables are tab-delimited and not stability-guaranteed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import charpair as charpair_mod
from . import classify, obstructions
from .manifold import SpecSyntaxError, format_spec, parse_spec
from .quadform import determinant, parity, signature
from .search import verify_certificate

EXIT_OK = 0
EXIT_OBSTRUCTED = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qtdeg", description=__doc__)
    parser.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("QTDEG_THREADS", "0") or 0),
        help="reserved worker count (the current engine is sequential; "
        "results do not depend on this value)",
    )
    parser.add_argument(
        "--deterministic",
        action="store_true",
        help="force deterministic collection order (already the default)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide realizability of one degree")
    p.add_argument("--from", dest="domain", required=True, help="domain spec, e.g. '2*CP2 # S2xS2'")
    p.add_argument("--to", dest="target", required=True, help="target spec")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--bound", type=int, default=None, help="search box for indefinite domains")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("set", help="tabulate a degree range")
    p.add_argument("--from", dest="domain", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--min", dest="kmin", type=int, required=True)
    p.add_argument("--max", dest="kmax", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--plot", default=None, metavar="FILE", help="render the table to an image file")

    p = sub.add_parser("verify", help="check a certificate matrix")
    p.add_argument("--from", dest="domain", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--matrix", required=True, help="row-major JSON array of integers")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("conjecture", help="scan self-maps of a CP^2 sum against the two-square set")
    p.add_argument("--copies", type=int, required=True)
    p.add_argument("--max-degree", dest="max_degree", type=int, default=19)
    p.add_argument("--json", action="store_true")
    p.add_argument("--plot", default=None, metavar="FILE")

    p = sub.add_parser("charpair", help="intersection form of a characteristic pair")
    p.add_argument("--vectors", required=True, help="semicolon-separated pairs, e.g. '1,0;0,1;-1,-1'")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("dominate", help="a domain mapping onto the target with every degree")
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--json", action="store_true")
    return parser


def _emit(doc, as_json, human_lines):
    if as_json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _cmd_decide(args) -> int:
    m = parse_spec(args.domain)
    n = parse_spec(args.target)
    k = args.degree
    obs = obstructions.run_all(m, n, k)
    outcome = classify.realize(m, n, k, box_bound=args.bound)
    doc = outcome.to_json()
    doc["obstructions"] = [o.to_json() for o in obs]
    doc.setdefault("domain", format_spec(m))
    doc.setdefault("target", format_spec(n))
    doc["degree"] = k
    lines = [f"{format_spec(m)} -> {format_spec(n)}, degree {k}: {outcome.status}"]
    for o in obs:
        lines.append(f"obstruction\t{o.kind}\t{o.detail}")
    if outcome.status == "found":
        for row in outcome.certificate.matrix:
            lines.append("\t".join(str(x) for x in row))
    elif outcome.reason:
        lines.append(outcome.reason)
    _emit(doc, args.json, lines)
    if outcome.status == "found":
        return EXIT_OK
    if outcome.status == "none":
        return EXIT_OBSTRUCTED
    return EXIT_UNKNOWN


def _cmd_set(args) -> int:
    m = parse_spec(args.domain)
    n = parse_spec(args.target)
    if args.kmin > args.kmax:
        raise _UsageError("--min must not exceed --max")
    ans = classify.degree_set(m, n)
    rows = []
    for k in range(args.kmin, args.kmax + 1):
        status = ans.membership(k)
        sources = list(ans.sources)
        if status == "unknown":
            obs = obstructions.run_all(m, n, k)
            if obs:
                status = "non_member"
                sources = [o.source for o in obs]
        rows.append({"k": k, "status": status, "sources": sources})
    doc = {
        "from": format_spec(m),
        "to": format_spec(n),
        "answer": ans.to_json(window=(args.kmin, args.kmax)),
        "rows": rows,
    }
    lines = [
        f"D({format_spec(m)}, {format_spec(n)}): {ans.status} {ans.degree_set.name}"
        + (" [conjecture]" if ans.conjecture else ""),
        "k\tstatus\tsources",
    ]
    for row in rows:
        lines.append(f"{row['k']}\t{row['status']}\t{','.join(row['sources'])}")
    _emit(doc, args.json, lines)
    if args.plot:
        from .plotting import render_degree_strip

        render_degree_strip(
            [(row["k"], row["status"]) for row in rows],
            f"D({format_spec(m)}, {format_spec(n)})",
            args.plot,
        )
        if not args.json:
            print(f"plot written to {args.plot}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    m = parse_spec(args.domain)
    n = parse_spec(args.target)
    try:
        matrix = json.loads(args.matrix)
    except json.JSONDecodeError as e:
        raise _UsageError(f"--matrix is not valid JSON: {e}") from e
    ok = verify_certificate(tuple(map(tuple, matrix)), m, n, args.degree)
    doc = {
        "domain": format_spec(m),
        "target": format_spec(n),
        "degree": args.degree,
        "valid": ok,
    }
    _emit(doc, args.json, ["valid" if ok else "invalid"])
    return EXIT_OK if ok else EXIT_OBSTRUCTED


def _cmd_conjecture(args) -> int:
    try:
        report = classify.conjecture_scan(args.copies, args.max_degree)
    except ValueError as e:
        raise _UsageError(str(e)) from e
    doc = report.to_json()
    lines = [
        f"{args.copies}-fold CP^2 self-maps, degrees 0..{args.max_degree}",
        f"realized\t{' '.join(map(str, report.realized))}",
        f"non-realizable\t{' '.join(map(str, report.non_realizable))}",
    ]
    if report.bugs:
        lines.append(f"REALIZATION FAILURES (bug)\t{' '.join(map(str, report.bugs))}")
    if report.refutations:
        lines.append(f"REFUTING CERTIFICATES\t{' '.join(map(str, report.refutations))}")
    lines.append("consistent" if report.consistent else "INCONSISTENT")
    _emit(doc, args.json, lines)
    if args.plot:
        from .plotting import render_conjecture_report

        render_conjecture_report(report, args.plot)
        if not args.json:
            print(f"plot written to {args.plot}")
    if report.refutations:
        return EXIT_UNKNOWN
    if report.bugs:
        return EXIT_OBSTRUCTED
    return EXIT_OK


def _cmd_charpair(args) -> int:
    vectors = charpair_mod.parse_vectors(args.vectors)
    try:
        pair = charpair_mod.validate_pair(len(vectors), vectors)
    except charpair_mod.InvalidPairError as e:
        print(f"invalid pair: {e}", file=sys.stderr)
        return EXIT_OBSTRUCTED
    form = charpair_mod.cohomology_form(pair)
    ident = charpair_mod.identify_manifold(pair)
    doc = {
        "facets": pair.m,
        "form": [list(row) for row in form],
        "rank": len(form),
        "signature": signature(form),
        "parity": parity(form),
        "determinant": determinant(form),
        "triple": None if ident.triple is None else format_spec(ident.triple),
        "warning": ident.warning,
    }
    lines = [f"rank {doc['rank']}, signature {doc['signature']}, {doc['parity']}, det {doc['determinant']}"]
    for row in form:
        lines.append("\t".join(str(x) for x in row))
    if ident.triple is not None:
        lines.append(f"manifold: {format_spec(ident.triple)}")
    else:
        lines.append(f"manifold: undetermined ({ident.warning})")
    _emit(doc, args.json, lines)
    return EXIT_OK


def _cmd_dominate(args) -> int:
    n = parse_spec(args.target)
    dom = classify.universal_dominator(n)
    doc = {
        "target": format_spec(n),
        "dominator": format_spec(dom),
        "triple": [dom.a, dom.b, dom.c],
    }
    _emit(doc, args.json, [format_spec(dom)])
    return EXIT_OK


_COMMANDS = {
    "decide": _cmd_decide,
    "set": _cmd_set,
    "verify": _cmd_verify,
    "conjecture": _cmd_conjecture,
    "charpair": _cmd_charpair,
    "dominate": _cmd_dominate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SpecSyntaxError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 ok, 1 parse error, 2 unknown invariant, 3 probe found a
certificate, 4 probe budget exhausted, 5 twist rejected (planarity or bad
region), 6 census verification mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys

from knotforge import __version__, census
from knotforge.algebra import LaurentPoly
from knotforge.diagram import Diagram, DiagramError, TwistRegion, connected_sum, insert_full_twists
from knotforge.finitetype import default_budget, probe_finite_type, probe_nq_finite
from knotforge.invariants import InvariantError, UnknownInvariant, format_value, get_invariant, value_to_json
from knotforge.notation import (
    ParseError,
    diagram_from_braid,
    diagram_from_json,
    diagram_to_json,
    emit_gauss,
    emit_pd,
    parse_any,
    parse_gauss,
    parse_pd,
)
from knotforge.reports import csv_text, dumps, probe_figure, write_csv, write_json

EXIT_OK, EXIT_PARSE, EXIT_UNKNOWN, EXIT_CERT, EXIT_BUDGET, EXIT_TWIST, EXIT_VERIFY = range(7)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _add_input(p: argparse.ArgumentParser, dest: str = "diagram") -> None:
    p.add_argument(dest, nargs="?", help="diagram: census name, file, or any notation")
    p.add_argument("--pd", help="PD code, e.g. 'X[1,4,2,5];X[3,6,4,1];X[5,2,6,3] / (1..6)'")
    p.add_argument("--gauss", help="signed Gauss code, e.g. 'O1+U2+O3+U1+O2+U3+'")
    p.add_argument("--braid", help="braid word, e.g. 's=2 w=[1,1,1]'")
    p.add_argument("--json", dest="json_in", help="diagram JSON (literal or file)")


def _resolve(text: str) -> Diagram:
    names = {e.name for e in census.ENTRIES}
    if text in names:
        return census.build(text)
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    return parse_any(text)


def _read_input(args, dest: str = "diagram") -> Diagram:
    if args.pd is not None:
        return parse_pd(args.pd)
    if args.gauss is not None:
        return parse_gauss(args.gauss)
    if args.braid is not None:
        return diagram_from_braid(args.braid)
    if args.json_in is not None:
        text = args.json_in
        if os.path.isfile(text):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        return diagram_from_json(text)
    raw = getattr(args, dest)
    if raw is None:
        raise ParseError("no diagram given")
    return _resolve(raw)


def _flags(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------

def cmd_parse(args) -> int:
    d = _read_input(args)
    payload = {
        "pd": emit_pd(d),
        "gauss": emit_gauss(d),
        "diagram": diagram_to_json(d),
        "crossings": d.n_crossings,
        "components": d.n_components,
        "writhe": d.writhe,
    }
    if args.to == "json":
        _emit(dumps(payload), args.output)
    elif args.to == "gauss":
        _emit(payload["gauss"] + "\n", args.output)
    else:
        _emit(payload["pd"] + "\n", args.output)
    return EXIT_OK


def _poly_stats(p: LaurentPoly) -> dict:
    if p.is_zero():
        return {"span": 0, "lowest": None, "highest": None}
    return {
        "span": p.span(),
        "lowest": [p.min_degree, p.coeff(p.min_degree)],
        "highest": [p.max_degree, p.coeff(p.max_degree)],
    }


def cmd_invariant(args) -> int:
    try:
        inv = get_invariant(args.name)
    except UnknownInvariant as exc:
        print(f"unknown invariant: {exc.args[0]}", file=sys.stderr)
        return EXIT_UNKNOWN
    d = _read_input(args)
    value = inv(d)
    shown = value
    if args.name == "jones" and d.n_components == 1:
        shown = value.divide_exponents(4, "t")
    if args.format == "json":
        payload = {
            "tool": "knotforge",
            "version": __version__,
            "invariant": inv.name,
            "value_kind": inv.value_kind,
            "value": value_to_json(value),
            "text": format_value(shown),
            "diagram_pd": emit_pd(d),
            "flags": _flags(args),
        }
        if args.stats and isinstance(shown, LaurentPoly):
            payload["stats"] = _poly_stats(shown)
        _emit(dumps(payload), args.output)
    else:
        lines = [format_value(shown)]
        if args.stats and isinstance(shown, LaurentPoly):
            s = _poly_stats(shown)
            lines.append(f"span {s['span']}; lowest {s['lowest']}; highest {s['highest']}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _corpus(name: str):
    try:
        return census.corpus(name)
    except KeyError:
        pass
    out = []
    with open(name, encoding="utf-8") as fh:
        for i, line in enumerate(fh):
            line = line.strip()
            if line and not line.startswith("#"):
                out.append((f"line{i + 1}", parse_any(line)))
    return out


def cmd_probe(args) -> int:
    try:
        inv = get_invariant(args.invariant)
    except UnknownInvariant as exc:
        print(f"unknown invariant: {exc.args[0]}", file=sys.stderr)
        return EXIT_UNKNOWN
    corpus = _corpus(args.corpus)
    budget = args.budget if args.budget is not None else default_budget()
    if args.kind == "ft":
        report = probe_finite_type(inv, corpus, args.order, budget, args.cap)
    else:
        report = probe_nq_finite(
            inv, corpus, args.n, args.q, args.order, args.strict_q, budget, args.max_k, args.cap
        )
    report.corpus = args.corpus
    report.flags = _flags(args)
    payload = report.to_json()
    if args.output:
        write_json(args.output, payload)
    if args.csv:
        write_csv(args.csv, ["diagram", "collections_tested"], report.per_diagram)
    if args.figure:
        probe_figure(payload, args.figure)
    sys.stdout.write(dumps(payload))
    return {"vanished": EXIT_OK, "certificate": EXIT_CERT, "budget_exhausted": EXIT_BUDGET}[report.status]


def parse_region(text: str) -> TwistRegion:
    """``"3:+1,7:-1"``: arc label and the direction it crosses the path."""
    strands = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        arc, _, sign = part.partition(":")
        try:
            a = int(arc)
            e = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}[sign.strip() or "+"]
        except (ValueError, KeyError):
            raise ParseError(f"bad region strand {part!r}; expected ARC:+1 or ARC:-1") from None
        strands.append((a, e))
    return TwistRegion(tuple(strands))


def cmd_twist(args) -> int:
    d = _read_input(args)
    try:
        region = parse_region(args.region)
        out = insert_full_twists(d, region, args.n)
    except DiagramError as exc:
        print(f"twist rejected: {exc}", file=sys.stderr)
        return EXIT_TWIST
    delta = out.n_crossings - d.n_crossings
    if args.format == "json":
        payload = {
            "tool": "knotforge",
            "version": __version__,
            "pd": emit_pd(out),
            "region": region.to_json(),
            "q": region.q,
            "crossing_delta": delta,
            "flags": _flags(args),
        }
        _emit(dumps(payload), args.output)
    else:
        _emit(f"{emit_pd(out)}\nq={region.q}\ncrossings {delta:+d}\n", args.output)
    return EXIT_OK


def cmd_csum(args) -> int:
    d1 = _resolve(args.first)
    d2 = _resolve(args.second)
    try:
        out = connected_sum(d1, d2)
    except DiagramError as exc:
        raise ParseError(str(exc)) from exc
    _emit(emit_pd(out) + "\n", args.output)
    return EXIT_OK


def cmd_census(args) -> int:
    rows = census.table()
    if args.csv:
        write_csv(args.csv, list(rows[0]), [list(r.values()) for r in rows])
    if args.format == "json":
        sys.stdout.write(dumps({"tool": "knotforge", "version": __version__, "entries": rows}))
    elif args.format == "csv":
        sys.stdout.write(csv_text(list(rows[0]), [list(r.values()) for r in rows]))
    else:
        for r in rows:
            print(f"{r['name']:10s} {r['crossings']:3d}  {r['recipe']}")
    if args.verify:
        problems = census.verify()
        for p in problems:
            print(f"mismatch: {p}", file=sys.stderr)
        print(f"verify: {'ok' if not problems else f'{len(problems)} mismatches'}", file=sys.stderr)
        if problems:
            return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knotforge", description="Knot diagrams, invariants and finite-type probes.")
    p.add_argument("--version", action="version", version=f"knotforge {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("parse", help="read a diagram and print it in canonical form")
    _add_input(sp)
    sp.add_argument("--to", choices=["pd", "gauss", "json"], default="pd")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("invariant", help="evaluate an invariant")
    _add_input(sp)
    sp.add_argument("--name", required=True, help="jones, conway, det, colorings:m, arf, a:n, c:n, components")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--stats", action="store_true", help="span and extreme coefficients of a polynomial value")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("probe", help="search alternating sums for a non-zero value")
    sp.add_argument("kind", choices=["ft", "nq"])
    sp.add_argument("--invariant", required=True)
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--q", type=int, default=0)
    sp.add_argument("--strict-q", action="store_true")
    sp.add_argument("--budget", type=int, default=None, help="evaluation budget (default $KNOTFORGE_BUDGET)")
    sp.add_argument("--corpus", default="census", help="census, knots, links, empty, or a file of diagrams")
    sp.add_argument("--max-k", type=int, default=2, help="largest bundle size for nq probes")
    sp.add_argument("--cap", type=int, default=None, help="collections tested per diagram")
    sp.add_argument("-o", "--output", help="write the JSON report here")
    sp.add_argument("--csv", help="write per-diagram counts as CSV")
    sp.add_argument("--figure", help="write a PNG summary")
    sp.set_defaults(func=cmd_probe)

    sp = sub.add_parser("twist", help="insert n full twists at a region")
    _add_input(sp)
    sp.add_argument("--region", required=True, help="strands as ARC:+1,ARC:-1,...")
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_twist)

    sp = sub.add_parser("csum", help="connected sum of two knots")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_csum)

    sp = sub.add_parser("census", help="list (and optionally verify) the built-in census")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
    sp.add_argument("--csv", help="also write the table as CSV")
    sp.set_defaults(func=cmd_census)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: ``pclie {info,nf,decompose,centralizer,table} GRAPH ...``.

Exit codes: 0 success, 2 input error, 3 cap exceeded, 4 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import analysis
from .analysis import Variety, build_table, compare_centralizer, format_subspace, format_vertices
from .errors import CapExceeded, InputError, InvariantViolation, PclieError
from .graphs import Graph
from .metabelian import MetabelianAlgebra
from .nilpotent import build_structure
from .oracle import DEFAULT_ORACLE_CAP, search_decomposition
from .scalars import field_from_spec
from .terms import parse_expr

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INVARIANT = 0, 2, 3, 4


def _load(args):
    return Graph.load(args.graph), field_from_spec(args.field)


def _fmt_mdeg(d) -> str:
    return "(" + ",".join(map(str, d)) + ")"


def cmd_info(args, out) -> int:
    g, field = _load(args)
    variety = Variety.parse(args.variety)
    tbl = build_table(g, variety, field, cap=args.cap)
    dims = tbl.dims_by_degree()
    out.write(", ".join(f"deg{k}: {d}" for k, d in enumerate(dims, 1)) + f", total {tbl.dim}\n")
    for d, k in tbl.dims_by_mdeg().items():
        out.write(f"mdeg {_fmt_mdeg(d)}: {k}\n")
    if args.format == "human":
        out.write(f"# {variety} over {field!r}, graph on {g.n} vertices with {len(g.edges)} edges\n")
        for i, key in enumerate(tbl.keys):
            out.write(f"# basis {i}: {tbl.format_key(key)}\n")
    return EXIT_OK


def _context(g, variety_text, field, cap):
    variety = Variety.parse(variety_text)
    if variety.kind == "metabelian":
        return MetabelianAlgebra(g, field)
    return build_table(g, variety, field, cap=cap)


def cmd_nf(args, out) -> int:
    g, field = _load(args)
    ctx = _context(g, args.variety, field, args.cap)
    for text in args.expr:
        p = ctx.nf(parse_expr(text, g.n))
        if args.format == "human" and len(args.expr) > 1:
            out.write(f"{text} = {p}\n")
        else:
            out.write(f"{p}\n")
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    g, field = _load(args)
    verdict = analysis.is_decomposable(g)
    lines = []
    if verdict.decomposable:
        dec = analysis.split(g, args.variety, field, full=args.full)
        parts = " ".join(f"A{k}={format_vertices(p)}" for k, p in enumerate(dec.parts, 1))
        status = "verified" if dec.report.ok else "VERIFICATION FAILED"
        lines.append(f"decomposable: yes; {parts}; {status}")
        if args.format == "machine":
            lines.append(dec.to_text().rstrip("\n"))
        else:
            r = dec.report
            lines.append(f"# {dec.variety}: total dim {r.total_dim} = "
                         + " + ".join(map(str, r.part_dims)))
            for name in analysis.CHECKS:
                lines.append(f"# {name}: {'pass' if r.checks[name] else 'FAIL'}")
        failed = not dec.report.ok
    else:
        lines.append("decomposable: no; complement graph is connected")
        failed = False
    if args.oracle:
        p, m = args.oracle
        res = search_decomposition(g, m, p, cap=args.oracle_cap)
        if res.found:
            tbl = build_structure(g, m, field_from_spec(p))
            lines.append(res.to_text(tbl).rstrip("\n"))
        else:
            lines.append(res.to_text().rstrip("\n"))
        if res.found != verdict.decomposable:
            lines.append("oracle: DISAGREES with the complement criterion")
            failed = True
    out.write("\n".join(lines) + "\n")
    if failed:
        raise InvariantViolation("decomposition checks failed")
    return EXIT_OK


def cmd_centralizer(args, out) -> int:
    g, field = _load(args)
    tbl = build_structure(g, args.m, field, cap=args.cap)
    x = tbl.nf(parse_expr(args.expr, g.n))
    if not x:
        raise InputError(f"{args.expr!r} is zero in N_{args.m}")
    cmp = compare_centralizer(tbl, x)
    desc = cmp.description
    out.write(f"element: {x}\n")
    out.write(f"window: degrees <= {cmp.window}\n")
    out.write("components: " + "; ".join(
        f"{format_vertices(s)}: {p}" for s, p in desc.parts) + "\n")
    out.write(f"hull: {format_vertices(desc.hull)}\n")
    out.write(f"computed: {format_subspace(cmp.computed, tbl)}\n")
    out.write(f"predicted: {format_subspace(cmp.predicted, tbl)}\n")
    if args.format == "human":
        out.write(f"# full kernel in N_{args.m}: dim {cmp.full_kernel.dim} of {tbl.dim}\n")
    out.write("MATCH\n" if cmp.match else "MISMATCH\n")
    return EXIT_OK if cmp.match else EXIT_INVARIANT


def cmd_table(args, out) -> int:
    g, field = _load(args)
    tbl = build_table(g, Variety.parse(args.variety), field, cap=args.cap)
    out.write(tbl.basis_listing())
    out.write("--\n")
    out.write(tbl.dump())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pclie", description="Partially commutative Lie algebras defined by graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, variety=True, default_variety="nilpotent:3"):
        p.add_argument("graph", help="graph file ('n <count>' then 'e <i> <j>' lines)")
        if variety:
            p.add_argument("--variety", default=default_variety,
                           help="metabelian[:k] | nilpotent:m | free:k (default %(default)s)")
        p.add_argument("--field", default=None, help="prime p for GF(p); rationals by default")
        p.add_argument("--format", choices=("human", "machine"), default="human")
        p.add_argument("--cap", type=int, default=20000, help="dimension cap for tables")

    p = sub.add_parser("info", help="graded dimensions")
    common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("nf", help="normal form of expressions")
    common(p, default_variety="metabelian")
    p.add_argument("expr", nargs="+")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("decompose", help="direct-sum decomposition")
    common(p)
    p.add_argument("--full", action="store_true", help="one summand per complement component")
    p.add_argument("--oracle", nargs=2, type=int, metavar=("P", "M"),
                   help="also run the exhaustive GF(P) search in N_M")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("centralizer", help="centralizer: computed vs component prediction")
    common(p, variety=False)
    p.add_argument("m", type=int, help="nilpotency degree")
    p.add_argument("expr")
    p.set_defaults(func=cmd_centralizer)

    p = sub.add_parser("table", help="basis and structure constants")
    common(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except PclieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

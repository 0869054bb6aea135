"""Command-line front end.

Exit status: 0 success, 1 invalid input, 2 internal inconsistency, 3 a
checked identity does not hold.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .cartan import build_cartan, inverse_qcartan
from .correspondence import fundamental_dictionary, transport
from .errors import QtGrothError, ValidationError
from .io import (dumps, element_to_json, laurent_to_json, monomial_to_json, parse_monomial,
                 quiver_from_json, quiver_to_dot, quiver_to_json)
from .qtchar import kl_decompose
from .quivers import QuiverSpec, ar_quiver, twist, window
from .torus import YMonomial, torus_for

__all__ = ["main", "build_parser", "format_descending"]


def format_descending(m: YMonomial) -> str:
    """Monomial literal with spectral parameters decreasing, the order used in dictionaries."""
    if m.is_one():
        return "1"
    parts = []
    for i, r, e in sorted(m.items, key=lambda x: (-x[1], x[0])):
        parts.append(f"Y({i},{r})" + ("" if e == 1 else f"^{e}"))
    return "".join(parts)


def _quiver_from_args(args):
    if args.config:
        with open(args.config) as fh:
            return quiver_from_json(json.load(fh))
    if args.xi:
        spec = QuiverSpec.from_xi([int(x) for x in args.xi.split(",")])
    elif args.arrows:
        pairs = [tuple(int(v) for v in a.split(">")) for a in args.arrows.split(",")]
        spec = QuiverSpec.from_arrows(args.rank, pairs)
    else:
        spec = QuiverSpec.sink_chain(args.rank)
    return twist(spec, args.flat) if args.flat else spec


def _table_text(table, n: int, depth: int) -> str:
    blocks = []
    for i in range(1, n + 1):
        rows = {j: [table.value(j, i, r) for r in range(-1, -depth - 1, -1)] for j in range(1, n + 1)}
        live = [k for k in range(depth) if any(rows[j][k] for j in rows)]
        parity = {k % 2 for k in live}
        cols = [k for k in range(depth) if k % 2 in parity] if len(parity) == 1 else list(range(depth))
        width = max(3, len(str(-depth)) + 1)
        head = f"c~_j{i}(r)".ljust(10) + "".join(str(-1 - k).rjust(width) for k in cols)
        lines = [head]
        for j in range(1, n + 1):
            cells = "".join((str(rows[j][k]) if rows[j][k] else "").rjust(width) for k in cols)
            lines.append(f"j={j}".ljust(10) + cells)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


def cmd_invcartan(args) -> int:
    cartan = build_cartan(args.type, args.n)
    table = inverse_qcartan(cartan, args.depth)
    if args.format == "json":
        data = {"type": cartan.kind, "n": cartan.n, "depth": args.depth,
                "entries": [[j, i, r, table.value(j, i, r)]
                            for i in cartan.nodes for j in cartan.nodes
                            for r in range(-1, -args.depth - 1, -1)]}
        print(dumps(data))
    else:
        print(_table_text(table, cartan.n, args.depth))
    return 0


def cmd_klpoly(args) -> int:
    torus = torus_for(args.type, args.n)
    m = parse_monomial(args.monomial)
    res = kl_decompose(torus, m)
    order = sorted(res.P, key=lambda x: (x != m, str(x)))
    if args.format == "json":
        data = {"monomial": monomial_to_json(m),
                "P": [{"mono": monomial_to_json(k), "coeff": laurent_to_json(res.P[k])} for k in order]}
        if args.with_lt:
            data["Lt"] = element_to_json(res.Lt)
        print(dumps(data))
    else:
        for k in order:
            label = "self" if k == m else str(k)
            print(f"{label}: {res.P[k]}")
        if args.with_lt:
            print(f"L_t = {len(res.Lt.terms)} terms")
    return 0


def cmd_correspond(args) -> int:
    direction = args.dir
    if args.fundamental:
        src = parse_monomial(args.fundamental)
        table = {str(a): b for a, b in fundamental_dictionary(args.n, direction)}
        if str(src) not in table:
            raise ValidationError(f"{src} is not a fundamental monomial of the source window")
        out = table[str(src)]
    elif args.monomial:
        src = parse_monomial(args.monomial)
        if not src.is_dominant():
            raise ValidationError(f"{src} is not dominant")
        out = YMonomial(transport({(i, r): e for i, r, e in src.items}, args.n, direction))
    else:
        rows = fundamental_dictionary(args.n, direction)
        if args.format == "json":
            print(dumps([[monomial_to_json(a), monomial_to_json(b)] for a, b in rows]))
        else:
            for a, b in rows:
                print(f"{format_descending(a)} -> {format_descending(b)}")
        return 0
    if args.format == "json":
        print(dumps({"source": monomial_to_json(src), "image": monomial_to_json(out)}))
    else:
        print(format_descending(out))
    return 0


def cmd_selftest(args) -> int:
    from .selftest import run
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run(args.level, only)
    for check in results:
        print(check.line())
    return 0 if all(c.ok and c.within_budget for c in results) else 3


def cmd_export_quiver(args) -> int:
    q = _quiver_from_args(args)
    if args.format == "json":
        text = dumps(quiver_to_json(q))
    else:
        graph = q if not isinstance(q, QuiverSpec) else ar_quiver(q)
        text = quiver_to_dot(graph)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    return 0


def cmd_window(args) -> int:
    q = _quiver_from_args(args)
    win = window(q if not isinstance(q, QuiverSpec) else ar_quiver(q))
    print(dumps({"flavor": win.flavor, "cells": [list(c) for c in win]}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtgroth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invcartan", help="inverse quantum Cartan matrix coefficients")
    p.add_argument("--type", default="B")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_invcartan)

    p = sub.add_parser("klpoly", help="Kazhdan-Lusztig polynomials of a standard module")
    p.add_argument("--type", default="B")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--monomial", required=True)
    p.add_argument("--with-lt", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_klpoly)

    p = sub.add_parser("correspond", help="simple modules across the A/B correspondence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dir", choices=("AtoB", "BtoA"), required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--fundamental")
    group.add_argument("--monomial")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_correspond)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--only", help="comma-separated check numbers")
    p.set_defaults(func=cmd_selftest)

    for name, func, helptext in (("export_quiver", cmd_export_quiver, "DOT or JSON export of a quiver"),
                                 ("window", cmd_window, "variables allowed in a quiver's window")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="quiver JSON file")
        p.add_argument("--rank", type=int, default=2, help="rank of the type A Dynkin quiver")
        p.add_argument("--xi", help="height function values, comma separated")
        p.add_argument("--arrows", help="arrows like 2>1,3>2")
        p.add_argument("--flat", choices=("<", ">"))
        if name == "export_quiver":
            p.add_argument("--format", choices=("dot", "json"), default="dot")
            p.add_argument("--output")
        p.set_defaults(func=func)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except QtGrothError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

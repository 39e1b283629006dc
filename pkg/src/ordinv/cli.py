"""Command-line front end.

Exit status: 0 on success, 1 when a verification finds a disagreement,
2 on parse or realization errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .corpus import finitary_corpus
from .expr import ExprSyntaxError, PosetExpr, finite_size, format_expr, parse_expr
from .games import Kind, winner
from .invariants import (
    Exact,
    Opaque,
    Range,
    InvariantTriple,
    construct_poset_with_width,
    invariants,
    value_to_json,
)
from .oracle import (
    Bounds,
    FinitePoset,
    OracleCapError,
    RealizationError,
    height_rank,
    max_antichain_size,
    motype_rank,
    realize,
    width_rank,
)
from .ordinal import Ordinal, OrdinalSyntaxError, format_ordinal, parse_ordinal

__all__ = ["main", "oracle_ranks", "verify_expr", "VerifyReport", "TABLE_ROWS"]

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

# width and motype use the residual recursion up to this many elements
RECURSION_LIMIT = 18

TABLE_ROWS = [
    ("ordinal", "w^2 + 3"),
    ("antichain", "A5"),
    ("Rado", "Rado"),
    ("lex sum", "w ++ A2"),
    ("disjoint sum", "w U w"),
    ("direct product", "A2 . w"),
    ("direct product", "w . A2"),
    ("Cartesian", "w x w"),
    ("Cartesian", "w^2 x w^2"),
    ("Cartesian", "w x w x w"),
    ("Cartesian", "w x w x w x w"),
    ("multisets", "M(A3)"),
    ("multisets", "M(w)"),
    ("sequences", "Seq(2)"),
    ("sequences", "Seq(w)"),
    ("trees", "Tree(2)"),
]


def oracle_ranks(p: FinitePoset) -> tuple[int, int, int]:
    """``(o, h, w)`` of a finite poset."""
    if p.n <= RECURSION_LIMIT:
        return motype_rank(p), height_rank(p), width_rank(p)
    # o is the cardinality and w follows from Dilworth's theorem
    return p.n, height_rank(p), max_antichain_size(p)


@dataclass
class VerifyReport:
    expr: str
    finite: bool
    symbolic: InvariantTriple
    oracle: tuple[int, int, int]
    failures: list[str]
    notes: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "expr": self.expr,
            "finite": self.finite,
            "symbolic": self.symbolic.to_json(),
            "oracle": dict(zip("ohw", self.oracle)),
            "ok": self.ok,
            "failures": self.failures,
            "notes": self.notes,
        }

    def lines(self) -> list[str]:
        o, h, w = self.oracle
        out = [f"expr: {self.expr}", f"symbolic: {self.symbolic}", f"oracle: {{o: {o}, h: {h}, w: {w}}}"]
        out += [f"note: {n}" for n in self.notes]
        out += [f"FAIL: {f}" for f in self.failures]
        out.append("verified" if self.ok else "verification failed")
        return out


def _upper(v) -> Ordinal | None:
    if isinstance(v, Exact):
        return v.value
    if isinstance(v, Range):
        return v.hi
    return None


def verify_expr(e: PosetExpr, bounds: Bounds) -> VerifyReport:
    sym = invariants(e)
    ranks = oracle_ranks(realize(e, bounds))
    finite = finite_size(e) is not None
    failures, notes = [], []
    for (name, v), r in zip(sym.items(), ranks):
        if finite:
            if v != Exact(Ordinal.of(r)):
                failures.append(f"{name}: symbolic {v} but oracle {r}")
            continue
        # a truncation is a substructure, so its ranks cannot exceed the invariant
        hi = _upper(v)
        if hi is not None and hi < r:
            failures.append(f"{name}: truncation rank {r} exceeds symbolic bound {v}")
    if not finite:
        notes.extend(_trend(e, bounds))
    return VerifyReport(format_expr(e), finite, sym, ranks, failures, notes)


def _trend(e: PosetExpr, bounds: Bounds) -> list[str]:
    cuts = range(max(1, bounds.omega_cut - 2), bounds.omega_cut + 1)
    series = []
    for c in cuts:
        try:
            p = realize(e, Bounds(c, bounds.bag_cut, bounds.max_elements))
            series.append(oracle_ranks(p))
        except (RealizationError, OracleCapError):
            return []
    notes = []
    for k, name in enumerate("ohw"):
        vals = [s[k] for s in series]
        shape = "nondecreasing" if all(a <= b for a, b in zip(vals, vals[1:])) else "not monotone"
        notes.append(f"{name} over cuts {list(cuts)}: {vals} ({shape}; informational)")
    return notes


# -- commands ----------------------------------------------------------------


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _bounds(args) -> Bounds:
    return Bounds(args.omega_cut, args.bag_cut, args.max_elements)


def cmd_inv(args) -> int:
    e = parse_expr(args.expr)
    t = invariants(e)
    _emit(args, {"expr": format_expr(e), **t.to_json()}, [str(t), *t.describe()])
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.expr is None and not args.corpus:
        raise SystemExit("verify needs an expression or --corpus N")
    bounds = _bounds(args)
    exprs = [parse_expr(args.expr)] if args.expr is not None else finitary_corpus(args.corpus, args.seed)
    reports = [verify_expr(e, bounds) for e in exprs]
    failed = sum(not r.ok for r in reports)
    if args.json:
        print(json.dumps({"reports": [r.to_json() for r in reports], "failed": failed}, indent=2))
    elif len(reports) == 1:
        print("\n".join(reports[0].lines()))
    else:
        for i, r in enumerate(reports):
            status = "ok" if r.ok else "FAIL " + "; ".join(r.failures)
            print(f"{i:4d} {status}: {r.expr}")
        print(f"{len(reports) - failed}/{len(reports)} verified")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_construct_width(args) -> int:
    a = parse_ordinal(args.ordinal)
    e = construct_poset_with_width(a)
    w = invariants(e).w
    _emit(
        args,
        {"witness": format_expr(e), "width": value_to_json(w)},
        [f"witness: {format_expr(e)}", f"w: exact {w}", "verified"],
    )
    return EXIT_OK


def cmd_game(args) -> int:
    p = FinitePoset.from_json(Path(args.poset).read_text())
    who = winner(p, args.alpha, args.kind)
    _emit(args, {"winner": str(who), "alpha": args.alpha, "kind": args.kind}, [str(who)])
    return EXIT_OK


def cmd_table(args) -> int:
    rows = []
    for name, text in TABLE_ROWS:
        t = invariants(parse_expr(text))
        rows.append((name, text, str(t.o), str(t.h), str(t.w), t))
    if args.json:
        print(json.dumps([{"name": r[0], "expr": r[1], **r[5].to_json()} for r in rows], indent=2))
        return EXIT_OK
    header = ("poset", "expr", "o", "h", "w")
    widths = [max(len(str(r[k])) for r in [header, *rows]) for k in range(5)]
    for r in [header, *rows]:
        print("  ".join(str(r[k]).ljust(widths[k]) for k in range(5)).rstrip())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordinv", description="Ordinal invariants of well-partial-orders.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inv", help="print (o, h, w) of an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_inv)

    p = sub.add_parser("verify", help="compare the engine with the finite oracle")
    p.add_argument("expr", nargs="?")
    p.add_argument("--omega-cut", type=int, default=4)
    p.add_argument("--bag-cut", type=int, default=3)
    p.add_argument("--max-elements", type=int, default=5000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus", type=int, default=0, help="verify N random finitary expressions instead")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct-width", help="build a poset of the given width")
    p.add_argument("ordinal")
    p.set_defaults(func=cmd_construct_width)

    p = sub.add_parser("game", help="solve a rank game on a poset file")
    p.add_argument("poset", help='JSON file {"n": k, "leq": [[i, j], ...]}')
    p.add_argument("alpha", type=int)
    p.add_argument("kind", choices=[k.value for k in Kind])
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("table", help="invariants of the standard examples")
    p.set_defaults(func=cmd_table)

    for sp in sub.choices.values():
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ExprSyntaxError, OrdinalSyntaxError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except RealizationError as exc:
        print(f"realization error: {exc}", file=sys.stderr)
    except (OracleCapError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

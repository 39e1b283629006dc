"""Ordinal invariants (maximal order type, height, width) of well-partial-orders."""

from .expr import (
    Antichain,
    CartProd,
    DirectProd,
    DisjointSum,
    LexSum,
    Multiset,
    Ord,
    PosetExpr,
    Rado,
    Seq,
    Tree,
    format_expr,
    parse_expr,
)
from .invariants import (
    Exact,
    InvariantTriple,
    Opaque,
    Range,
    construct_poset_with_width,
    invariants,
    kt_refine,
    width_cart,
    wprod2,
)
from .ordinal import OMEGA, ONE, ZERO, Ordinal, format_ordinal, parse_ordinal

__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "parse_ordinal",
    "format_ordinal",
    "PosetExpr",
    "Ord",
    "Antichain",
    "Rado",
    "LexSum",
    "DisjointSum",
    "DirectProd",
    "CartProd",
    "Multiset",
    "Seq",
    "Tree",
    "parse_expr",
    "format_expr",
    "Exact",
    "Range",
    "Opaque",
    "InvariantTriple",
    "invariants",
    "kt_refine",
    "width_cart",
    "wprod2",
    "construct_poset_with_width",
]

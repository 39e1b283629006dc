"""Poset expressions: base posets and constructors, with a text syntax.

Grammar (``x`` is n-ary and binds loosest)::

    cart := union ('x' union)*
    union := lex ('U' lex)*
    lex  := dprod ('++' dprod)*
    dprod := atom ('.' atom)*          # left-associative P.Q
    atom := 'A' nat | 'Rado' | ordinal
          | 'M(' cart ')' | 'Seq(' cart ')' | 'Tree(' cart ')' | '(' cart ')'
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .ordinal import (
    Ordinal,
    OrdinalLike,
    OrdinalSyntaxError,
    as_ordinal,
    format_ordinal,
    parse_ordinal_prefix,
)

__all__ = [
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
    "ExprSyntaxError",
    "parse_expr",
    "format_expr",
    "finite_size",
    "subexpressions",
]


@dataclass(frozen=True)
class Ord:
    """The ordinal ``a`` as a chain."""

    a: Ordinal

    def __init__(self, a: OrdinalLike):
        object.__setattr__(self, "a", as_ordinal(a))


@dataclass(frozen=True)
class Antichain:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("antichain size must be a natural number")


@dataclass(frozen=True)
class Rado:
    pass


@dataclass(frozen=True)
class LexSum:
    """Lexicographic sum along the finite chain of its summands."""

    items: tuple

    def __init__(self, items):
        object.__setattr__(self, "items", tuple(items))


@dataclass(frozen=True)
class DisjointSum:
    items: tuple

    def __init__(self, items):
        object.__setattr__(self, "items", tuple(items))


@dataclass(frozen=True)
class DirectProd:
    """``P.Q``: copies of ``p`` placed along ``q``."""

    p: "PosetExpr"
    q: "PosetExpr"


@dataclass(frozen=True)
class CartProd:
    items: tuple

    def __init__(self, items):
        items = tuple(items)
        if len(items) < 2:
            raise ValueError("a Cartesian product needs at least two factors")
        object.__setattr__(self, "items", items)


@dataclass(frozen=True)
class Multiset:
    p: "PosetExpr"


@dataclass(frozen=True)
class Seq:
    p: "PosetExpr"


@dataclass(frozen=True)
class Tree:
    p: "PosetExpr"


PosetExpr = Union[Ord, Antichain, Rado, LexSum, DisjointSum, DirectProd, CartProd, Multiset, Seq, Tree]


def subexpressions(e: PosetExpr) -> tuple:
    if isinstance(e, (LexSum, DisjointSum, CartProd)):
        return e.items
    if isinstance(e, DirectProd):
        return (e.p, e.q)
    if isinstance(e, (Multiset, Seq, Tree)):
        return (e.p,)
    return ()


def finite_size(e: PosetExpr) -> int | None:
    """Number of elements if the denoted poset is finite, else ``None``."""
    if isinstance(e, Ord):
        return int(e.a) if e.a.is_finite else None
    if isinstance(e, Antichain):
        return e.n
    if isinstance(e, Rado):
        return None
    if isinstance(e, (LexSum, DisjointSum)):
        sizes = [finite_size(x) for x in e.items]
        return None if None in sizes else sum(sizes)
    if isinstance(e, (DirectProd, CartProd)):
        sizes = [finite_size(x) for x in subexpressions(e)]
        if 0 in sizes:
            return 0
        if None in sizes:
            return None
        out = 1
        for s in sizes:
            out *= s
        return out
    # the empty multiset / sequence exists even over an empty base
    base = finite_size(e.p)
    if base == 0:
        return 0 if isinstance(e, Tree) else 1
    return None


# -- printing ----------------------------------------------------------------

_PREC = {CartProd: 0, DisjointSum: 1, LexSum: 2, DirectProd: 3}


def _prec(e: PosetExpr) -> float:
    if isinstance(e, (LexSum, DisjointSum)) and len(e.items) < 2:
        return 4 if e.items else 5
    if isinstance(e, Ord) and len(e.a.terms) > 1:
        return 2.5
    return _PREC.get(type(e), 5)


def format_expr(e: PosetExpr) -> str:
    """Render an expression; ``parse_expr`` reads the output back.

    Empty sums print as ``0`` and single-item sums print their item, so those
    two shapes come back normalised.
    """
    if isinstance(e, Ord):
        return format_ordinal(e.a)
    if isinstance(e, Antichain):
        return f"A{e.n}"
    if isinstance(e, Rado):
        return "Rado"
    if isinstance(e, Multiset):
        return f"M({format_expr(e.p)})"
    if isinstance(e, Seq):
        return f"Seq({format_expr(e.p)})"
    if isinstance(e, Tree):
        return f"Tree({format_expr(e.p)})"
    if isinstance(e, (LexSum, DisjointSum)) and len(e.items) < 2:
        return format_expr(e.items[0]) if e.items else "0"
    if isinstance(e, DirectProd):
        left = _wrap(e.p, _PREC[DirectProd], strict=False)
        right = _wrap(e.q, _PREC[DirectProd], strict=True)
        return f"{left} . {right}"
    sep = {CartProd: " x ", DisjointSum: " U ", LexSum: " ++ "}[type(e)]
    level = _PREC[type(e)]
    return sep.join(_wrap(x, level, strict=True) for x in e.items)


def _wrap(e: PosetExpr, level: int, strict: bool) -> str:
    p = _prec(e)
    s = format_expr(e)
    if p < level or (strict and p == level):
        return f"({s})"
    return s


# -- parsing -----------------------------------------------------------------


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek_word(self, word: str) -> bool:
        self.skip()
        if not self.text.startswith(word, self.pos):
            return False
        end = self.pos + len(word)
        if word[-1].isalpha() and end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
            return False
        return True

    def expect(self, tok: str) -> None:
        self.skip()
        if not self.text.startswith(tok, self.pos):
            raise ExprSyntaxError(f"expected {tok!r}", self.text, self.pos)
        self.pos += len(tok)

    def error(self, message: str):
        return ExprSyntaxError(message, self.text, self.pos)

    def cart(self) -> PosetExpr:
        items = [self.union()]
        while self.peek_word("x"):
            self.pos += 1
            items.append(self.union())
        return items[0] if len(items) == 1 else CartProd(items)

    def union(self) -> PosetExpr:
        items = [self.lex()]
        while self.peek_word("U"):
            self.pos += 1
            items.append(self.lex())
        return items[0] if len(items) == 1 else DisjointSum(items)

    def lex(self) -> PosetExpr:
        items = [self.dprod()]
        while self.peek_word("++"):
            self.pos += 2
            items.append(self.dprod())
        return items[0] if len(items) == 1 else LexSum(items)

    def dprod(self) -> PosetExpr:
        out = self.atom()
        while self.peek_word("."):
            self.pos += 1
            out = DirectProd(out, self.atom())
        return out

    def atom(self) -> PosetExpr:
        self.skip()
        t, i = self.text, self.pos
        if i >= len(t):
            raise self.error("unexpected end of input")
        for name, ctor in (("M(", Multiset), ("Seq(", Seq), ("Tree(", Tree)):
            if t.startswith(name, i):
                self.pos += len(name)
                inner = self.cart()
                self.expect(")")
                return ctor(inner)
        if t[i] == "(":
            self.pos += 1
            inner = self.cart()
            self.expect(")")
            return inner
        if self.peek_word("Rado"):
            self.pos += 4
            return Rado()
        if t[i] == "A" and i + 1 < len(t) and t[i + 1].isdigit():
            j = i + 1
            while j < len(t) and t[j].isdigit():
                j += 1
            self.pos = j
            return Antichain(int(t[i + 1 : j]))
        try:
            val, self.pos = parse_ordinal_prefix(t, i)
        except OrdinalSyntaxError as exc:
            raise ExprSyntaxError("expected poset expression", t, exc.pos) from None
        return Ord(val)


def parse_expr(text: str) -> PosetExpr:
    """Parse e.g. ``"w x w x w"``, ``"M(A3)"`` or ``"(w^2 x w) U A2"``."""
    p = _Parser(text)
    e = p.cart()
    p.skip()
    if p.pos != len(text):
        raise p.error("unexpected trailing input")
    return e

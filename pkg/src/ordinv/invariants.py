"""Symbolic computation of maximal order type, height and width.

``invariants(expr)`` walks a :mod:`ordinv.expr` tree and combines the
children's invariants with the known closed forms.  Every component is an
exact ordinal when a rule pins it down; Cartesian products (and a few
multiset cases) fall back to certified intervals, and the maximal order type
of finite trees is carried as an opaque theta term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Callable, Sequence, Union

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
    finite_size,
    format_expr,
)
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalLike,
    add,
    as_ordinal,
    format_ordinal,
    heisenberg,
    hsup,
    is_additively_principal,
    is_multiplicatively_principal,
    min_natural_cofactor,
    mul,
    nat_prod,
    nat_sum,
    omega_pow,
    omega_quotient,
    to_json,
)

__all__ = [
    "Exact",
    "Range",
    "Opaque",
    "InvariantValue",
    "InvariantTriple",
    "InconsistentInvariants",
    "bounded",
    "theta",
    "invariants",
    "h_star",
    "wprod2",
    "width_cart",
    "is_transferable",
    "kt_refine",
    "construct_poset_with_width",
    "is_epsilon_number",
    "seq_motype",
    "check_triple",
]

# finite Cartesian products up to this size get their width by explicit matching
FINITE_CAP = 4096


class InconsistentInvariants(ArithmeticError):
    pass


@dataclass(frozen=True)
class Exact:
    value: Ordinal

    def __str__(self) -> str:
        return format_ordinal(self.value)


@dataclass(frozen=True)
class Range:
    lo: Ordinal
    hi: Ordinal

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]; use bounded()")

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class Opaque:
    """A value outside the ordinal universe, kept only as a symbolic term.

    ``theta_arg`` is set for a bare ``theta(w^w * arg)``; derived terms keep
    their rendering only.
    """

    term: str
    theta_arg: Ordinal | None = None

    def __str__(self) -> str:
        return self.term


InvariantValue = Union[Exact, Range, Opaque]


def bounded(lo: OrdinalLike, hi: OrdinalLike) -> InvariantValue:
    lo, hi = as_ordinal(lo), as_ordinal(hi)
    if lo == hi:
        return Exact(lo)
    if hi < lo:
        raise InconsistentInvariants(f"empty interval [{lo}, {hi}]")
    return Range(lo, hi)


def theta(arg: OrdinalLike) -> Opaque:
    arg = as_ordinal(arg)
    shown = format_ordinal(arg)
    if len(arg.terms) > 1:
        shown = f"({shown})"
    return Opaque(f"theta(w^w * {shown})", arg)


def _exact(x: OrdinalLike) -> Exact:
    return Exact(as_ordinal(x))


def _bounds(v: InvariantValue) -> tuple[Ordinal, Ordinal] | None:
    if isinstance(v, Exact):
        return v.value, v.value
    if isinstance(v, Range):
        return v.lo, v.hi
    return None


def _lift(symbol: str, f: Callable[..., Ordinal], *vals: InvariantValue) -> InvariantValue:
    """Apply an operation that is monotone in every argument."""
    bs = [_bounds(v) for v in vals]
    if any(b is None for b in bs):
        if len(vals) == 1:
            return Opaque(f"{symbol}({vals[0]})")
        return Opaque("(" + f" {symbol} ".join(str(v) for v in vals) + ")")
    return bounded(f(*(b[0] for b in bs)), f(*(b[1] for b in bs)))


def _fold(symbol: str, f: Callable[[Ordinal, Ordinal], Ordinal], vals: Sequence[InvariantValue]) -> InvariantValue:
    if not vals:
        return Exact(ZERO)
    return reduce(lambda a, b: _lift(symbol, f, a, b), vals)


@dataclass(frozen=True)
class InvariantTriple:
    o: InvariantValue
    h: InvariantValue
    w: InvariantValue

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Exact) for v in (self.o, self.h, self.w))

    def items(self):
        return (("o", self.o), ("h", self.h), ("w", self.w))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{k}: {v}" for k, v in self.items()) + "}"

    def describe(self) -> list[str]:
        kind = {Exact: "exact", Range: "range", Opaque: "opaque"}
        return [f"{k}: {kind[type(v)]} {v}" for k, v in self.items()]

    def to_json(self) -> dict:
        return {k: value_to_json(v) for k, v in self.items()}


def value_to_json(v: InvariantValue) -> dict:
    if isinstance(v, Exact):
        return {"exact": to_json(v.value)}
    if isinstance(v, Range):
        return {"range": [to_json(v.lo), to_json(v.hi)]}
    if v.theta_arg is not None:
        return {"theta_of": to_json(v.theta_arg)}
    return {"opaque": v.term}


def check_triple(t: InvariantTriple) -> None:
    """Raise unless an all-exact triple satisfies ``w <= o <= h (x) w``."""
    if not t.is_exact:
        return
    o, h, w = t.o.value, t.h.value, t.w.value
    if not (w <= o <= nat_prod(h, w)):
        raise InconsistentInvariants(f"w <= o <= h(x)w fails for {t}")


# -- scalar rules ------------------------------------------------------------


def h_star(h: OrdinalLike) -> Ordinal:
    """Height of multisets, sequences and trees over a poset of height ``h``."""
    h = as_ordinal(h)
    if not h:
        return ZERO
    if h >= OMEGA and is_additively_principal(h):
        return h
    return mul(h, OMEGA)


def is_epsilon_number(a: OrdinalLike) -> bool:
    # never true below epsilon_0; kept so the sequence rule reads in full
    a = as_ordinal(a)
    return bool(a) and omega_pow(a) == a


def seq_motype(o: OrdinalLike) -> Ordinal:
    """Maximal order type of finite sequences over a poset with ``o(Q) = o >= 1``."""
    o = as_ordinal(o)
    if not o:
        raise ValueError("needs a non-empty base")
    if o.is_finite:
        return omega_pow(omega_pow(int(o) - 1))
    lim, _ = o.split_finite()
    if is_epsilon_number(lim):  # unreachable below epsilon_0
        return omega_pow(omega_pow(add(o, ONE)))
    return omega_pow(omega_pow(o))


def _wprod_limits(a: Ordinal, b: Ordinal) -> Ordinal:
    """Width of ``w*a x w*b`` for ``a, b >= 1``, by recursion on leading terms."""
    if not a or not b:
        return ZERO
    if a == 1:
        return mul(OMEGA, b)
    if b == 1:
        return mul(OMEGA, a)
    (a0, m0), rho = a.terms[0], Ordinal(a.terms[1:])
    (b0, n0), sigma = b.terms[0], Ordinal(b.terms[1:])
    lead = mul(OMEGA, Ordinal(((nat_sum(a0, b0), m0 + n0 - 1),)))
    return nat_sum(
        nat_sum(lead, _wprod_limits(omega_pow(a0), sigma)),
        _wprod_limits(omega_pow(b0), rho),
    )


def wprod2(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Exact width of the product of the ordinals ``a`` and ``b``."""
    a, b = as_ordinal(a), as_ordinal(b)
    if not a or not b:
        return ZERO
    if a.is_finite or b.is_finite:
        return min(a, b)
    la, m = a.split_finite()
    lb, n = b.split_finite()
    # w(x (x) (y+1)) = w(x (x) y) + 1 once the other factor is infinite
    core = _wprod_limits(omega_quotient(la), omega_quotient(lb))
    return add(core, m + n)


# -- expression helpers ------------------------------------------------------


def _flatten_cart(items: Sequence[PosetExpr]) -> list[PosetExpr]:
    out: list[PosetExpr] = []
    for x in items:
        if isinstance(x, CartProd):
            out.extend(_flatten_cart(x.items))
        else:
            out.append(x)
    return out


def _expand_factors(items: Sequence[PosetExpr]) -> list[PosetExpr]:
    """Flatten, also splitting M(P U Q) into M(P) x M(Q)."""
    out: list[PosetExpr] = []
    for x in _flatten_cart(items):
        parts = _disjoint_parts(x.p) if isinstance(x, Multiset) else [x]
        if len(parts) >= 2:
            out.extend(_expand_factors([Multiset(y) for y in parts]))
        else:
            out.append(x)
    return out


def _chain_type(e: PosetExpr) -> Ordinal | None:
    """The ordinal ``e`` is isomorphic to, when it denotes a chain."""
    if isinstance(e, Ord):
        return e.a
    if isinstance(e, Antichain) and e.n <= 1:
        return as_ordinal(e.n)
    if isinstance(e, LexSum):
        parts = [_chain_type(x) for x in e.items]
        return None if None in parts else reduce(add, parts, ZERO)
    if isinstance(e, DirectProd):
        p, q = _chain_type(e.p), _chain_type(e.q)
        return None if p is None or q is None else mul(p, q)
    if isinstance(e, DisjointSum):
        nonempty = [x for x in e.items if finite_size(x) != 0]
        if not nonempty:
            return ZERO
        return _chain_type(nonempty[0]) if len(nonempty) == 1 else None
    if isinstance(e, (Multiset, Seq)) and finite_size(e.p) == 1:
        return OMEGA
    return None


def _is_omega_power(e: PosetExpr) -> bool:
    return isinstance(e, Ord) and is_additively_principal(e.a) and e.a.leading_exponent >= 1


def is_transferable(e: PosetExpr) -> bool:
    """Conservative test: products of powers ``w^a`` with ``a >= 1``."""
    if isinstance(e, CartProd):
        return all(_is_omega_power(x) for x in _flatten_cart(e.items))
    return _is_omega_power(e)


def _product(items: Sequence[PosetExpr]) -> PosetExpr:
    return items[0] if len(items) == 1 else CartProd(items)


def _product_width(items: Sequence[PosetExpr]) -> InvariantValue:
    return invariants(_product(items)).w


def _lower(v: InvariantValue) -> Ordinal:
    b = _bounds(v)
    return b[0] if b else ZERO


# -- Cartesian products ------------------------------------------------------


def width_cart(exprs: Sequence[PosetExpr], factors: Sequence[InvariantTriple] | None = None) -> InvariantValue:
    """Width of a Cartesian product: exact where a rule applies, else an interval."""
    flat = _flatten_cart(exprs)
    exprs = _expand_factors(flat)
    if factors is None or len(factors) != len(exprs) or exprs != flat:
        factors = [invariants(x) for x in exprs]
    if any(t.o == Exact(ZERO) for t in factors):
        return Exact(ZERO)
    # a singleton factor changes nothing
    kept = [(x, t) for x, t in zip(exprs, factors) if t.o != Exact(ONE)]
    if not kept:
        return Exact(ONE)
    if len(kept) == 1:
        return kept[0][1].w
    items = [x for x, _ in kept]
    triples = [t for _, t in kept]
    if any(isinstance(t.w, Opaque) or isinstance(t.o, Opaque) for t in triples):
        return Opaque(f"w({format_expr(CartProd(items))})")

    sizes = [finite_size(x) for x in items]
    if None not in sizes and _prod(sizes) <= FINITE_CAP:
        from .oracle import Bounds, max_antichain_size, realize

        return Exact(as_ordinal(max_antichain_size(realize(CartProd(items), Bounds(max_elements=FINITE_CAP)))))

    # P x A_n is n disjoint copies of P
    for i, x in enumerate(items):
        if isinstance(x, Antichain):
            rest = items[:i] + items[i + 1 :]
            return _lift("(x)", nat_prod, _product_width(rest), Exact(as_ordinal(x.n)))

    chains = [_chain_type(x) for x in items]
    items = [Ord(c) if c is not None else x for x, c in zip(items, chains)]
    if None not in chains:
        if len(chains) == 2:
            return Exact(wprod2(*chains))
        if len(chains) == 3 and all(c == OMEGA for c in chains):
            return Exact(nat_prod(OMEGA, OMEGA))

    # transferable P with w(P) = w^g, times a finite chain m
    for i, c in enumerate(chains):
        if c is not None and c.is_finite:
            rest = items[:i] + items[i + 1 :]
            if is_transferable(_product(rest)):
                wr = _product_width(rest)
                if isinstance(wr, Exact) and is_additively_principal(wr.value):
                    return Exact(mul(wr.value, c))

    return _cart_bounds(items, triples)


def _prod(xs: Sequence[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _cart_bounds(items: list[PosetExpr], triples: list[InvariantTriple]) -> InvariantValue:
    n = len(items)
    lo = ONE
    hi = reduce(nat_prod, (_bounds(t.o)[1] for t in triples))

    # sub-products embed as substructures
    for i in range(n):
        lo = max(lo, _lower(_product_width(items[:i] + items[i + 1 :])))

    # the product of the heights embeds as well
    heights = [_bounds(t.h) for t in triples]
    if any(not isinstance(x, Ord) for x in items):
        lo = max(lo, _lower(_product_width([Ord(hb[0]) for hb in heights])))

    # a transferable sub-product P times a chain of the remaining height d
    # has width at least w(P)*d
    powers = [i for i, x in enumerate(items) if _is_omega_power(x)]
    for r in range(1, len(powers) + 1):
        for chosen in itertools.combinations(powers, r):
            others = [i for i in range(n) if i not in chosen]
            if not others:
                continue
            wp = _lower(_product_width([items[i] for i in chosen]))
            d = reduce(hsup, (heights[i][0] for i in others))
            lo = max(lo, mul(wp, d))

    # P x F with |F| = m augments m disjoint copies of P
    for i, x in enumerate(items):
        m = finite_size(x)
        if m is not None:
            rest = _bounds(_product_width(items[:i] + items[i + 1 :]))
            hi = min(hi, nat_prod(rest[1], m))

    return bounded(lo, hi)


# -- refinement --------------------------------------------------------------


def kt_refine(t: InvariantTriple) -> InvariantTriple:
    """Narrow bounds with ``w <= o <= h (x) w`` and its multiplicative corollary."""
    o, h, w = t.o, t.h, t.w
    wb, ob, hb = _bounds(w), _bounds(o), _bounds(h)
    if wb is None or ob is None:
        return t
    wlo, whi = wb
    olo, ohi = ob
    whi = min(whi, ohi)
    if hb is not None and hb[0] >= ONE:
        wlo = max(wlo, min_natural_cofactor(hb[0], olo))
    if hb is not None and isinstance(o, Exact) and is_multiplicatively_principal(o.value) and hb[1] < o.value:
        if not (wlo <= o.value <= whi):
            raise InconsistentInvariants(f"width bounds [{wlo}, {whi}] exclude o = {o.value}")
        wlo = whi = o.value
    olo = max(olo, wlo)
    if hb is not None:
        ohi = min(ohi, nat_prod(hb[1], whi))
    if wlo > whi or olo > ohi:
        raise InconsistentInvariants(f"refinement emptied an interval in {t}")
    return InvariantTriple(bounded(olo, ohi), h, bounded(wlo, whi))


# -- the dispatcher ----------------------------------------------------------

_ZEROS = InvariantTriple(Exact(ZERO), Exact(ZERO), Exact(ZERO))
_ONES = InvariantTriple(Exact(ONE), Exact(ONE), Exact(ONE))
# M(1) and Seq(1) are both the chain w
_OMEGA_CHAIN = InvariantTriple(Exact(OMEGA), Exact(OMEGA), Exact(ONE))


@lru_cache(maxsize=None)
def invariants(e: PosetExpr) -> InvariantTriple:
    """The triple ``(o, h, w)`` of the poset denoted by ``e``."""
    t = kt_refine(_raw(e))
    check_triple(t)
    size = finite_size(e)
    if size is not None and t.o != Exact(as_ordinal(size)):
        raise InconsistentInvariants(f"o({format_expr(e)}) = {t.o} but the poset has {size} elements")
    return t


def _raw(e: PosetExpr) -> InvariantTriple:
    if isinstance(e, Ord):
        if not e.a:
            return _ZEROS
        return InvariantTriple(Exact(e.a), Exact(e.a), Exact(ONE))
    if isinstance(e, Antichain):
        if not e.n:
            return _ZEROS
        return InvariantTriple(_exact(e.n), Exact(ONE), _exact(e.n))
    if isinstance(e, Rado):
        return InvariantTriple(_exact(nat_prod(OMEGA, OMEGA)), Exact(OMEGA), Exact(OMEGA))
    if isinstance(e, LexSum):
        ts = [invariants(x) for x in e.items]
        return InvariantTriple(
            _fold("+", add, [t.o for t in ts]),
            _fold("+", add, [t.h for t in ts]),
            _fold("max", max, [t.w for t in ts]),
        )
    if isinstance(e, DisjointSum):
        ts = [invariants(x) for x in e.items]
        return InvariantTriple(
            _fold("(+)", nat_sum, [t.o for t in ts]),
            _fold("max", max, [t.h for t in ts]),
            _fold("(+)", nat_sum, [t.w for t in ts]),
        )
    if isinstance(e, DirectProd):
        p, q = invariants(e.p), invariants(e.q)
        if Exact(ZERO) in (p.o, q.o):
            return _ZEROS
        return InvariantTriple(
            _lift("*", mul, p.o, q.o),
            _lift("*", mul, p.h, q.h),
            _lift("(.)", heisenberg, p.w, q.w),
        )
    if isinstance(e, CartProd):
        items = _flatten_cart(e.items)
        ts = [invariants(x) for x in items]
        if any(t.o == Exact(ZERO) for t in ts):
            return _ZEROS
        return InvariantTriple(
            _fold("(x)", nat_prod, [t.o for t in ts]),
            _fold("hsup", hsup, [t.h for t in ts]),
            width_cart(items, ts),
        )
    if isinstance(e, Multiset):
        return _multiset(e)
    if isinstance(e, Seq):
        return _sequences(e)
    if isinstance(e, Tree):
        return _trees(e)
    raise TypeError(f"not a poset expression: {e!r}")


def _base(e: PosetExpr) -> tuple[InvariantTriple, Ordinal | None]:
    t = invariants(e)
    return t, t.o.value if isinstance(t.o, Exact) else None


def _multiset(e: Multiset) -> InvariantTriple:
    tq, oq = _base(e.p)
    if oq == 0:
        return _ONES
    if oq == 1:
        return _OMEGA_CHAIN
    # below epsilon_0 the hat on exponents is the identity
    o = _lift("w^", omega_pow, tq.o)
    h = _lift("h*", h_star, tq.h)
    if oq is not None and is_additively_principal(oq):
        return InvariantTriple(o, h, o)
    parts = _disjoint_parts(e.p)
    if len(parts) >= 2:
        # M(P U Q) is isomorphic to M(P) x M(Q)
        return InvariantTriple(o, h, invariants(CartProd([Multiset(x) for x in parts])).w)
    if isinstance(o, Opaque):
        return InvariantTriple(o, h, Opaque(f"w({format_expr(e)})"))
    # Q embeds into M(Q) as singletons
    return InvariantTriple(o, h, bounded(max(ONE, _lower(tq.w)), _bounds(o)[1]))


def _disjoint_parts(e: PosetExpr) -> list[PosetExpr]:
    if isinstance(e, Antichain):
        return [Ord(1)] * e.n
    if isinstance(e, DisjointSum):
        out = []
        for x in e.items:
            out.extend(_disjoint_parts(x) if isinstance(x, (Antichain, DisjointSum)) else [x])
        return [x for x in out if finite_size(x) != 0]
    return [e]


def _sequences(e: Seq) -> InvariantTriple:
    tq, oq = _base(e.p)
    if oq == 0:
        return _ONES
    if oq == 1:
        return _OMEGA_CHAIN
    o = _lift("w^w^", seq_motype, tq.o)
    h = _lift("h*", h_star, tq.h)
    return InvariantTriple(o, h, o)


def _trees(e: Tree) -> InvariantTriple:
    tq, oq = _base(e.p)
    if oq == 0:
        return _ZEROS
    h = _lift("h*", h_star, tq.h)
    o = theta(oq) if oq is not None else Opaque(f"theta(w^w * {tq.o})")
    return InvariantTriple(o, h, o)


# -- witnesses ---------------------------------------------------------------


def construct_poset_with_width(a: OrdinalLike) -> PosetExpr:
    """An expression whose width is exactly ``a``, checked by the engine."""
    a = as_ordinal(a)
    parts: list[PosetExpr] = []
    for g, c in a.terms:
        if g:
            parts.extend([CartProd([Ord(omega_pow(g)), Ord(OMEGA)])] * c)
        else:
            parts.append(Antichain(c))
    e = parts[0] if len(parts) == 1 else DisjointSum(parts)
    got = invariants(e).w
    if got != Exact(a):
        raise InconsistentInvariants(f"witness {format_expr(e)} has width {got}, wanted {a}")
    return e

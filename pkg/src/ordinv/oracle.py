"""Brute-force ground truth on explicit finite posets.

Posets are stored as up-set bitmasks: bit ``j`` of ``up[i]`` is set iff
``i <= j``.  The three invariants are computed as ranks of the trees of
antichain, decreasing and bad sequences, by recursion over residuals with
a memo keyed on the residual carrier (a bitmask).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

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
)
from .ordinal import OMEGA

__all__ = [
    "FinitePoset",
    "RealizationError",
    "OracleCapError",
    "Bounds",
    "realize",
    "realized_size",
    "width_rank",
    "height_rank",
    "motype_rank",
    "antichain_rank",
    "longest_chain",
    "downset_height",
    "max_linearisation",
    "max_antichain_size",
    "reverse",
    "is_augmentation",
    "chain",
    "antichain",
    "grid",
    "random_poset",
    "delete_element",
    "bits",
]

RANK_CAP = 22
ENUM_CAP = 20


class RealizationError(ValueError):
    """Raised when an expression has no finite truncation or is too large."""

    def __init__(self, message: str, subexpr: PosetExpr | None = None):
        where = f" (in {format_expr(subexpr)})" if subexpr is not None else ""
        super().__init__(message + where)
        self.subexpr = subexpr


class OracleCapError(ValueError):
    pass


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FinitePoset:
    n: int
    up: tuple
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        up = tuple(int(m) for m in self.up)
        object.__setattr__(self, "up", up)
        if len(up) != self.n:
            raise ValueError("need one up-set per element")
        full = self.full
        for i, m in enumerate(up):
            if not (m >> i) & 1:
                raise ValueError(f"not reflexive at {i}")
            if m & ~full:
                raise ValueError(f"relation of {i} leaves the carrier")
            for j in bits(m):
                if j != i and (up[j] >> i) & 1:
                    raise ValueError(f"not antisymmetric at {i}, {j}")
                if up[j] & ~m:
                    raise ValueError(f"not transitive at {i} <= {j}")
        down = [0] * self.n
        for i, m in enumerate(up):
            for j in bits(m):
                down[j] |= 1 << i
        object.__setattr__(self, "down", tuple(down))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    @classmethod
    def from_relation(cls, n: int, leq: Callable[[int, int], bool], labels=None) -> "FinitePoset":
        up = []
        for i in range(n):
            m = 0
            for j in range(n):
                if leq(i, j):
                    m |= 1 << j
            up.append(m)
        return cls(n, tuple(up), tuple(labels) if labels is not None else None)

    @classmethod
    def from_pairs(cls, n: int, pairs: Sequence[Sequence[int]], labels=None) -> "FinitePoset":
        """Reflexive-transitive closure of the given pairs ``i <= j``."""
        up = [1 << i for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"pair ({i}, {j}) out of range")
            up[i] |= 1 << j
        changed = True
        while changed:
            changed = False
            for i in range(n):
                m = up[i]
                for j in bits(m):
                    m |= up[j]
                if m != up[i]:
                    up[i] = m
                    changed = True
        return cls(n, tuple(up), tuple(labels) if labels is not None else None)

    # residual carriers, one mask per element

    def incomparable(self) -> tuple:
        full = self.full
        return tuple(full & ~(u | d) for u, d in zip(self.up, self.down))

    def strictly_below(self) -> tuple:
        return tuple(d & ~(1 << i) for i, d in enumerate(self.down))

    def not_above(self) -> tuple:
        full = self.full
        return tuple(full & ~u for u in self.up)

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            for j in bits(strict):
                between = strict & self.down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    def to_json(self, covers: bool = True) -> dict:
        if covers:
            pairs = self.covers()
        else:
            pairs = [(i, j) for i in range(self.n) for j in bits(self.up[i])]
        return {"n": self.n, "leq": [list(p) for p in pairs]}

    @classmethod
    def from_json(cls, data: dict | str) -> "FinitePoset":
        """Read ``{"n": k, "leq": [[i, j], ...]}``; covers or full relation both work."""
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_pairs(int(data["n"]), data.get("leq", []))

    def to_dot(self, name: str = "P") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i in range(self.n):
            label = str(self.labels[i]) if self.labels else str(i)
            lines.append(f'  {i} [label="{label}"];')
        for i, j in self.covers():
            lines.append(f"  {i} -> {j};")
        lines.append("}")
        return "\n".join(lines)


def chain(n: int) -> FinitePoset:
    return FinitePoset(n, tuple(((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)))


def antichain(n: int) -> FinitePoset:
    return FinitePoset(n, tuple(1 << i for i in range(n)))


def grid(n: int, m: int) -> FinitePoset:
    return _cart(chain(n), chain(m))


def reverse(p: FinitePoset) -> FinitePoset:
    return FinitePoset(p.n, p.down, p.labels)


def is_augmentation(p: FinitePoset, q: FinitePoset) -> bool:
    """Whether ``q`` has the carrier of ``p`` and extends its order."""
    if p.n != q.n:
        raise ValueError("augmentation needs a common carrier")
    return all(a & ~b == 0 for a, b in zip(p.up, q.up))


def delete_element(p: FinitePoset, k: int) -> FinitePoset:
    keep = [i for i in range(p.n) if i != k]
    labels = [p.labels[i] for i in keep] if p.labels else None
    return FinitePoset.from_relation(len(keep), lambda i, j: p.leq(keep[i], keep[j]), labels)


def random_poset(rng, n: int, density: float = 0.3) -> FinitePoset:
    """Random poset: transitive closure of a random DAG on a random linear order."""
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return FinitePoset.from_pairs(n, pairs)


# -- ranks -------------------------------------------------------------------


def _residual_rank(full: int, residual: tuple) -> int:
    memo: dict[int, int] = {0: 0}
    # larger residuals first: reaches the |S| ceiling early on finite posets
    order = sorted(range(len(residual)), key=lambda x: -residual[x].bit_count())

    def rank(s: int) -> int:
        got = memo.get(s)
        if got is not None:
            return got
        size = s.bit_count()
        best = 0
        for x in order:
            if not (s >> x) & 1:
                continue
            r = s & residual[x]
            if r.bit_count() + 1 <= best:
                continue
            v = rank(r) + 1
            if v > best:
                best = v
                if best == size:
                    break
        memo[s] = best
        return best

    return rank(full)


def _check_cap(p: FinitePoset, cap: int, what: str) -> None:
    if p.n > cap:
        raise OracleCapError(f"{what} limited to {cap} elements, got {p.n}")


def width_rank(p: FinitePoset, cap: int = RANK_CAP) -> int:
    """Rank of the tree of antichain sequences (via incomparability residuals)."""
    _check_cap(p, cap, "width_rank")
    return _residual_rank(p.full, p.incomparable())


def height_rank(p: FinitePoset) -> int:
    """Rank of the tree of decreasing sequences (via strict down-set residuals)."""
    # residuals of the form P_{<x} are shared, so the memo stays linear in n
    return _residual_rank(p.full, p.strictly_below())


def motype_rank(p: FinitePoset, cap: int = RANK_CAP) -> int:
    """Rank of the tree of bad sequences (via not-above residuals)."""
    _check_cap(p, cap, "motype_rank")
    return _residual_rank(p.full, p.not_above())


def antichain_rank(p: FinitePoset, cap: int = ENUM_CAP) -> int:
    """Height of the non-empty antichains ordered by reverse inclusion."""
    _check_cap(p, cap, "antichain_rank")
    inc = p.incomparable()
    # longest chain ending at A = 1 + longest chain ending at some A - {a}
    length: dict[int, int] = {}
    frontier = {1 << i: 1 for i in range(p.n)}
    best = 0
    while frontier:
        length.update(frontier)
        best = max(best, max(frontier.values()))
        nxt: dict[int, int] = {}
        for a, la in frontier.items():
            common = p.full
            for x in bits(a):
                common &= inc[x]
            for y in bits(common):
                b = a | (1 << y)
                if b in nxt:
                    continue
                nxt[b] = 1 + max(length[b & ~(1 << z)] for z in bits(b))
        frontier = nxt
    return best


def longest_chain(p: FinitePoset) -> int:
    """Number of elements in a longest chain, by longest path in the DAG."""
    below = p.strictly_below()
    depth: list[int | None] = [None] * p.n

    def d(i: int) -> int:
        if depth[i] is None:
            depth[i] = 1 + max((d(j) for j in bits(below[i])), default=0)
        return depth[i]

    return max((d(i) for i in range(p.n)), default=0)


def downset_height(p: FinitePoset, cap: int = ENUM_CAP) -> int:
    """Height of the down-closed subsets (including the empty one) under inclusion."""
    _check_cap(p, cap, "downset_height")
    memo: dict[int, int] = {0: 1}

    def h(d: int) -> int:
        got = memo.get(d)
        if got is None:
            got = 1
            for x in bits(d):
                if p.up[x] & d == 1 << x:  # x is maximal in d
                    got = max(got, 1 + h(d & ~(1 << x)))
            memo[d] = got
        return got

    return h(p.full)


def max_linearisation(p: FinitePoset) -> int:
    """Length of a linear extension (all of them have length n here)."""
    below = list(p.strictly_below())
    placed = 0
    order = []
    while len(order) < p.n:
        ready = [i for i in range(p.n) if not (placed >> i) & 1 and below[i] & ~placed == 0]
        if not ready:
            raise ValueError("relation has a cycle")
        order.append(ready[0])
        placed |= 1 << ready[0]
    return len(order)


def max_antichain_size(p: FinitePoset) -> int:
    """Largest antichain, as ``n`` minus a maximum matching of the strict order."""
    if p.n == 0:
        return 0
    rows, cols = [], []
    for i in range(p.n):
        for j in bits(p.up[i] & ~(1 << i)):
            rows.append(i)
            cols.append(j)
    if not rows:
        return p.n
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(p.n, p.n))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return p.n - int(np.count_nonzero(match >= 0))


# -- realization -------------------------------------------------------------


@dataclass(frozen=True)
class Bounds:
    omega_cut: int = 4
    bag_cut: int = 3
    max_elements: int = 5000

    def __post_init__(self):
        if self.omega_cut < 1 or self.bag_cut < 1 or self.max_elements < 1:
            raise ValueError("truncation bounds must be positive")


def _lex(parts: Sequence[FinitePoset]) -> FinitePoset:
    up, labels, offset = [], [], 0
    total = sum(q.n for q in parts)
    for k, q in enumerate(parts):
        later = ((1 << total) - 1) & ~((1 << (offset + q.n)) - 1)
        up.extend((m << offset) | later for m in q.up)
        labels.extend((k, lab) for lab in _labels(q))
        offset += q.n
    return FinitePoset(total, tuple(up), tuple(labels))


def _disjoint(parts: Sequence[FinitePoset]) -> FinitePoset:
    up, labels, offset = [], [], 0
    for k, q in enumerate(parts):
        up.extend(m << offset for m in q.up)
        labels.extend((k, lab) for lab in _labels(q))
        offset += q.n
    return FinitePoset(offset, tuple(up), tuple(labels))


def _direct(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    # element (b, a) of copy b of p sits at index b*|p| + a
    block = (1 << p.n) - 1
    up, labels = [], []
    for b in range(q.n):
        above = 0
        for c in bits(q.up[b] & ~(1 << b)):
            above |= block << (c * p.n)
        for a in range(p.n):
            up.append((p.up[a] << (b * p.n)) | above)
            labels.append((_labels(q)[b], _labels(p)[a]))
    return FinitePoset(p.n * q.n, tuple(up), tuple(labels))


def _cart(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    up, labels = [], []
    for a in range(p.n):
        for b in range(q.n):
            m = 0
            for c in bits(p.up[a]):
                m |= q.up[b] << (c * q.n)
            up.append(m)
            labels.append((_labels(p)[a], _labels(q)[b]))
    return FinitePoset(p.n * q.n, tuple(up), tuple(labels))


def _labels(p: FinitePoset) -> tuple:
    return p.labels if p.labels is not None else tuple(range(p.n))


def _injective_embedding(xs: Sequence[int], ys: Sequence[int], base: FinitePoset) -> bool:
    """Is there an injective f with xs[i] <= ys[f(i)]?  (augmenting paths)"""
    if len(xs) > len(ys):
        return False
    owner: dict[int, int] = {}

    def augment(i: int, seen: set) -> bool:
        for j, y in enumerate(ys):
            if j in seen or not base.leq(xs[i], y):
                continue
            seen.add(j)
            if j not in owner or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(xs)))


def _subsequence_embedding(xs: Sequence[int], ys: Sequence[int], base: FinitePoset) -> bool:
    # greedy leftmost matching is optimal for subsequence embeddings
    j = 0
    for x in xs:
        while j < len(ys) and not base.leq(x, ys[j]):
            j += 1
        if j == len(ys):
            return False
        j += 1
    return True


def _words(base: FinitePoset, bag_cut: int, *, multiset: bool) -> FinitePoset:
    words: list[tuple] = []
    for size in range(bag_cut + 1):
        if multiset:
            words.extend(itertools.combinations_with_replacement(range(base.n), size))
        else:
            words.extend(itertools.product(range(base.n), repeat=size))
    embed = _injective_embedding if multiset else _subsequence_embedding
    labels = tuple(tuple(_labels(base)[i] for i in w) for w in words)
    return FinitePoset.from_relation(len(words), lambda i, j: embed(words[i], words[j], base), labels)


def _rado(cut: int) -> FinitePoset:
    # the order is only transitive on pairs with a < b
    elems = [(a, b) for a in range(cut) for b in range(a + 1, cut)]

    def leq(i: int, j: int) -> bool:
        (a, b), (a2, b2) = elems[i], elems[j]
        return (a == a2 and b <= b2) or b < a2

    return FinitePoset.from_relation(len(elems), leq, elems)


def realized_size(e: PosetExpr, bounds: Bounds = Bounds()) -> int:
    """Element count of ``realize(e, bounds)`` without building it."""
    if isinstance(e, Ord):
        if e.a.is_finite:
            return int(e.a)
        if e.a == OMEGA:
            return bounds.omega_cut
        raise RealizationError(f"no truncation for the ordinal {e.a}", e)
    if isinstance(e, Antichain):
        return e.n
    if isinstance(e, Rado):
        return bounds.omega_cut * (bounds.omega_cut - 1) // 2
    if isinstance(e, (LexSum, DisjointSum)):
        return sum(realized_size(x, bounds) for x in e.items)
    if isinstance(e, (DirectProd, CartProd)):
        parts = (e.p, e.q) if isinstance(e, DirectProd) else e.items
        out = 1
        for x in parts:
            out *= realized_size(x, bounds)
        return out
    if isinstance(e, Tree):
        raise RealizationError("finite trees are not realized", e)
    k = realized_size(e.p, bounds)
    if isinstance(e, Seq):
        return sum(k**s for s in range(bounds.bag_cut + 1))
    from math import comb

    if k == 0:
        return 1
    return sum(comb(k + s - 1, s) for s in range(bounds.bag_cut + 1))


def realize(e: PosetExpr, bounds: Bounds = Bounds()) -> FinitePoset:
    """Explicit finite poset for ``e``, truncating w, Rado, M and Seq.

    Arguments are truncated first and the constructor applied afterwards.
    """
    size = realized_size(e, bounds)
    if size > bounds.max_elements:
        raise RealizationError(f"realization has {size} elements, cap is {bounds.max_elements}", e)
    if isinstance(e, Ord):
        return chain(size)
    if isinstance(e, Antichain):
        return antichain(e.n)
    if isinstance(e, Rado):
        return _rado(bounds.omega_cut)
    if isinstance(e, LexSum):
        return _lex([realize(x, bounds) for x in e.items])
    if isinstance(e, DisjointSum):
        return _disjoint([realize(x, bounds) for x in e.items])
    if isinstance(e, DirectProd):
        return _direct(realize(e.p, bounds), realize(e.q, bounds))
    if isinstance(e, CartProd):
        out = realize(e.items[0], bounds)
        for x in e.items[1:]:
            out = _cart(out, realize(x, bounds))
        return out
    if isinstance(e, Multiset):
        return _words(realize(e.p, bounds), bounds.bag_cut, multiset=True)
    if isinstance(e, Seq):
        return _words(realize(e.p, bounds), bounds.bag_cut, multiset=False)
    raise RealizationError("finite trees are not realized", e)

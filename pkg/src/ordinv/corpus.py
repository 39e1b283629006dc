"""Random generators for expressions and ordinals, seeded for reproducibility."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .expr import (
    Antichain,
    CartProd,
    DirectProd,
    DisjointSum,
    LexSum,
    Multiset,
    Ord,
    PosetExpr,
    Seq,
    finite_size,
)
from .ordinal import ZERO, Ordinal, omega_pow

__all__ = ["CorpusConfig", "random_finitary_expr", "finitary_corpus", "random_ordinal"]


@dataclass(frozen=True)
class CorpusConfig:
    max_depth: int = 3
    max_leaf: int = 4
    max_arity: int = 3
    max_size: int = 200
    min_size: int = 0


def _leaf(rng: random.Random, cfg: CorpusConfig) -> PosetExpr:
    k = rng.randint(0, cfg.max_leaf)
    return Ord(k) if rng.random() < 0.5 else Antichain(k)


def _node(rng: random.Random, cfg: CorpusConfig, depth: int) -> PosetExpr:
    if depth >= cfg.max_depth or rng.random() < 0.3:
        return _leaf(rng, cfg)
    kind = rng.choice(["lex", "union", "dprod", "cart", "empty_bag"])
    if kind == "empty_bag":
        # M(0) and Seq(0) are the only finitary bag constructions
        return rng.choice([Multiset, Seq])(rng.choice([Ord(0), Antichain(0)]))
    if kind == "dprod":
        return DirectProd(_node(rng, cfg, depth + 1), _node(rng, cfg, depth + 1))
    arity = rng.randint(2, cfg.max_arity)
    items = [_node(rng, cfg, depth + 1) for _ in range(arity)]
    return {"lex": LexSum, "union": DisjointSum, "cart": CartProd}[kind](items)


def random_finitary_expr(rng: random.Random, cfg: CorpusConfig = CorpusConfig()) -> PosetExpr:
    """A random expression denoting a finite poset of size within the config."""
    while True:
        e = _node(rng, cfg, 0)
        size = finite_size(e)
        if size is not None and cfg.min_size <= size <= cfg.max_size:
            return e


def finitary_corpus(n: int, seed: int = 0, cfg: CorpusConfig = CorpusConfig()) -> list[PosetExpr]:
    rng = random.Random(seed)
    return [random_finitary_expr(rng, cfg) for _ in range(n)]


def random_ordinal(rng: random.Random, depth: int = 1, max_terms: int = 3, max_coeff: int = 4) -> Ordinal:
    """Random ordinal whose exponents nest at most ``depth`` levels.

    ``depth=0`` gives naturals and ``depth=1`` ordinals below ``w^w``.
    """
    if depth == 0:
        return Ordinal.of(rng.randint(0, max_coeff * max_terms))
    exps = {random_ordinal(rng, depth - 1, max_terms, max_coeff) for _ in range(rng.randint(0, max_terms))}
    out = ZERO
    for e in sorted(exps, reverse=True):
        out = out + omega_pow(e) * Ordinal.of(rng.randint(1, max_coeff))
    return out

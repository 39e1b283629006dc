"""Falsifiers for the closed forms: evaluate suprema along fundamental sequences.

Sampling cannot prove that a supremum is least, so these functions only
guess the limit of an increasing sample from its stabilising CNF shape.
They are used in tests to catch mistakes in the closed forms.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .ordinal import (
    ONE,
    ZERO,
    Ordinal,
    OrdinalLike,
    add,
    as_ordinal,
    fundamental_sequence,
    nat_sum,
    omega_pow,
    predecessor,
)

__all__ = ["guess_sup", "recursive_heisenberg", "sampled_hsup", "SAMPLE_START", "SAMPLE_COUNT"]

SAMPLE_START = 4
SAMPLE_COUNT = 4


def guess_sup(samples: Sequence[Ordinal]) -> Ordinal:
    """Guess the supremum of a non-decreasing sequence from its tail."""
    xs = [as_ordinal(x) for x in samples]
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise ValueError("samples must be non-decreasing")
    if xs[-1] == xs[-2]:
        return xs[-1]
    x, y = xs[-2], xs[-1]
    i = 0
    while i < len(x.terms) and x.terms[i] == y.terms[i]:
        i += 1
    prefix = Ordinal(y.terms[:i])
    tails = [s for s in xs if s.terms[:i] == y.terms[:i] and len(s.terms) > i]
    if i < len(x.terms) and x.terms[i][0] == y.terms[i][0]:
        # the coefficient of a fixed power grows without bound
        return add(prefix, omega_pow(add(y.terms[i][0], ONE)))
    exps = [s.terms[i][0] for s in tails]
    if len(exps) < 2:
        exps = [ZERO, y.terms[i][0]]
    return add(prefix, omega_pow(guess_sup(exps)))


@lru_cache(maxsize=None)
def recursive_heisenberg(a: Ordinal, b: Ordinal) -> Ordinal:
    """The defining recursion of the Heisenberg product, evaluated directly.

    For ``a = 0`` the limit clause yields 1 rather than 0, so callers should
    sample ``a >= 1``.
    """
    if not b:
        return ZERO
    if b.is_successor:
        return nat_sum(recursive_heisenberg(a, predecessor(b)), a)
    samples = [
        add(recursive_heisenberg(a, fundamental_sequence(b, n)), ONE)
        for n in range(SAMPLE_START, SAMPLE_START + SAMPLE_COUNT)
    ]
    return guess_sup(samples)


def _approach(a: Ordinal, n: int) -> Ordinal:
    return fundamental_sequence(a, n) if a.is_limit else predecessor(a)


def hsup_samples(a: OrdinalLike, b: OrdinalLike, ns: Sequence[int]) -> list[Ordinal]:
    """``a' (+) b' + 1`` along a cofinal diagonal of pairs below ``(a, b)``."""
    a, b = as_ordinal(a), as_ordinal(b)
    return [add(nat_sum(_approach(a, n), _approach(b, n)), ONE) for n in ns]


def sampled_hsup(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = as_ordinal(a), as_ordinal(b)
    if not a or not b:
        return ZERO
    return guess_sup(hsup_samples(a, b, range(SAMPLE_START, SAMPLE_START + SAMPLE_COUNT)))

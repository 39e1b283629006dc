"""Exhaustive solver for the rank games on finite posets.

In a position ``(budget, seq)`` Player 1 lowers the budget to any smaller
natural and Player 2 must extend ``seq`` legally for the chosen invariant:
antichain sequences for width, strictly decreasing ones for height and bad
ones for the maximal order type.  Player 2 wins once the budget hits 0 and
loses as soon as she cannot answer.  She wins from ``(alpha, [])`` exactly
when the invariant is at least ``alpha``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .oracle import FinitePoset, bits

__all__ = ["Player", "Kind", "GamePosition", "winner", "winner_from", "legal_moves"]


class Player(enum.Enum):
    PLAYER1 = "Player1"
    PLAYER2 = "Player2"

    def __str__(self) -> str:
        return self.value


class Kind(enum.Enum):
    HEIGHT = "height"
    MOTYPE = "motype"
    WIDTH = "width"

    def __str__(self) -> str:
        return self.value


def _residual(p: FinitePoset, kind: Kind) -> tuple:
    if kind is Kind.WIDTH:
        return p.incomparable()
    if kind is Kind.HEIGHT:
        return p.strictly_below()
    return p.not_above()


@dataclass(frozen=True)
class GamePosition:
    budget: int
    seq: tuple[int, ...]
    kind: Kind

    def carrier(self, p: FinitePoset) -> int:
        """Elements that legally extend ``seq``."""
        res = _residual(p, self.kind)
        c = p.full
        for x in self.seq:
            c &= res[x]
        return c


def legal_moves(p: FinitePoset, pos: GamePosition) -> list[int]:
    return list(bits(pos.carrier(p)))


def winner_from(p: FinitePoset, pos: GamePosition) -> Player:
    kind = Kind(pos.kind)
    res = _residual(p, kind)
    if pos.budget < 0:
        raise ValueError("budget must be a natural number")
    if pos.budget > p.n + 1:
        raise ValueError(f"budget {pos.budget} exceeds |P| + 1 = {p.n + 1}")

    @lru_cache(maxsize=None)
    def p2_wins(budget: int, carrier: int) -> bool:
        if budget == 0:
            return True
        # Player 1 may pick any smaller budget; Player 2 needs an answer to each
        return all(any(p2_wins(b, carrier & res[x]) for x in bits(carrier)) for b in range(budget))

    return Player.PLAYER2 if p2_wins(pos.budget, pos.carrier(p)) else Player.PLAYER1


def winner(p: FinitePoset, alpha: int, kind: Kind | str) -> Player:
    """Winner of the game with budget ``alpha`` from the empty sequence."""
    return winner_from(p, GamePosition(alpha, (), Kind(kind)))

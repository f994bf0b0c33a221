"""Finite two-player strategic-form games with exact rational payoffs.

Every payoff, probability and derived utility in this package is a
`fractions.Fraction`; no floating point is used anywhere, so set-valued
results (survivor sets, belief events) are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError

# Outcomes of lexicographic comparison.
GREATER = 1
EQUAL = 0
LESS = -1


def other(i: int) -> int:
    """The opponent of player ``i``; players are indexed 0 and 1."""
    if i not in (0, 1):
        raise InputError(f"player index must be 0 or 1, got {i!r}")
    return 1 - i


@dataclass(frozen=True)
class Game:
    """A finite two-player strategic-form game.

    ``strategies`` keeps the file order of strategy labels; every
    enumeration (elimination rounds, reports, tie-breaking) follows it.
    ``payoffs`` maps each profile ``(s1, s2)`` to the payoff pair
    ``(u1, u2)``.
    """

    players: tuple[str, str]
    strategies: tuple[tuple[str, ...], tuple[str, ...]]
    payoffs: Mapping[tuple[str, str], tuple[Fraction, Fraction]]

    def __post_init__(self) -> None:
        for i in (0, 1):
            if not self.strategies[i]:
                raise InputError(f"player {self.players[i]!r} has an empty strategy set")
            if len(set(self.strategies[i])) != len(self.strategies[i]):
                raise InputError(f"duplicate strategy label for player {self.players[i]!r}")
        for s1 in self.strategies[0]:
            for s2 in self.strategies[1]:
                if (s1, s2) not in self.payoffs:
                    raise InputError(f"missing payoff cell {s1},{s2}")

    def payoff(self, i: int, s1: str, s2: str) -> Fraction:
        """Payoff of player ``i`` at the pure profile ``(s1, s2)``."""
        return self.payoffs[(s1, s2)][i]

    def check_strategy(self, i: int, s: str) -> None:
        if s not in self.strategies[i]:
            raise InputError(f"unknown strategy {s!r} for player {self.players[i]!r}")

    def profiles(self) -> Iterable[tuple[str, str]]:
        for s1 in self.strategies[0]:
            for s2 in self.strategies[1]:
                yield (s1, s2)


@dataclass(frozen=True)
class MixedStrategy:
    """A mixed strategy of ``owner``; zero-weight entries are dropped."""

    owner: int
    weights: Mapping[str, Fraction]

    def __post_init__(self) -> None:
        cleaned = {}
        total = Fraction(0)
        for label, w in self.weights.items():
            w = Fraction(w)
            if w < 0:
                raise InputError(f"negative weight {w} on strategy {label!r}")
            if w > 0:
                cleaned[label] = w
            total += w
        if total != 1:
            raise InputError(f"mixed-strategy weights sum to {total}, expected 1")
        object.__setattr__(self, "weights", cleaned)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self.weights)

    def __call__(self, label: str) -> Fraction:
        return self.weights.get(label, Fraction(0))


def point_mass(owner: int, s: str) -> MixedStrategy:
    return MixedStrategy(owner, {s: Fraction(1)})


def uniform(owner: int, labels: Sequence[str]) -> MixedStrategy:
    n = len(labels)
    if n == 0:
        raise InputError("uniform mixture over an empty strategy list")
    return MixedStrategy(owner, {s: Fraction(1, n) for s in labels})


def expected_utility(game: Game, i: int, s_i: str, mix_j: MixedStrategy) -> Fraction:
    """Expected payoff of ``s_i`` against the opponent mixture ``mix_j``."""
    game.check_strategy(i, s_i)
    j = other(i)
    if mix_j.owner != j:
        raise InputError(f"mixture owner is player index {mix_j.owner}, expected {j}")
    total = Fraction(0)
    for s_j, w in mix_j.weights.items():
        game.check_strategy(j, s_j)
        profile = (s_i, s_j) if i == 0 else (s_j, s_i)
        total += w * game.payoff(i, *profile)
    return total


def lex_utility_vector(
    game: Game, i: int, s_i: str, beliefs: Sequence[MixedStrategy]
) -> tuple[Fraction, ...]:
    """Level-wise expected utilities of ``s_i`` against a belief sequence."""
    if not beliefs:
        raise InputError("belief sequence is empty")
    return tuple(expected_utility(game, i, s_i, b) for b in beliefs)


def lex_compare(u: Sequence[Fraction], v: Sequence[Fraction]) -> int:
    """Lexicographic comparison; GREATER/EQUAL/LESS, first difference decides."""
    if len(u) != len(v):
        raise InputError(f"vector lengths differ: {len(u)} vs {len(v)}")
    for a, b in zip(u, v):
        if a > b:
            return GREATER
        if a < b:
            return LESS
    return EQUAL


def optimal_pure(game: Game, i: int, mix_j: MixedStrategy) -> frozenset[str]:
    """Strategies of ``i`` maximizing expected utility against ``mix_j``."""
    values = {s: expected_utility(game, i, s, mix_j) for s in game.strategies[i]}
    best = max(values.values())
    return frozenset(s for s, v in values.items() if v == best)

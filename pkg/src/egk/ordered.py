"""Ordered Kripke models: an injective sequence of belief levels per world.

Each world carries, per player, a finite injective sequence of probability
distributions over its accessible worlds; level 1 is the primary belief.
Levels are 0-based internally and rendered 1-based in reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InputError
from .games import (
    GREATER,
    Game,
    MixedStrategy,
    lex_compare,
    lex_utility_vector,
    other,
)
from .kripke import EventSet, StandardKripkeModel, Violation, validate_standard

LevelSeq = tuple  # tuple of per-level weight mappings


@dataclass(frozen=True)
class OrderedKripkeModel:
    base: StandardKripkeModel
    lam: tuple[Mapping[str, LevelSeq], Mapping[str, LevelSeq]]

    def __post_init__(self) -> None:
        wset = set(self.base.worlds)
        cleaned = []
        for i in (0, 1):
            if set(self.lam[i]) != wset:
                raise InputError(f"belief levels of player {self.game.players[i]!r} do not cover the worlds")
            per = {}
            for w, levels in self.lam[i].items():
                if not levels:
                    raise InputError(f"world {w!r} has an empty level sequence")
                fixed = []
                for dist in levels:
                    bad = set(dist) - wset
                    if bad:
                        raise InputError(f"level belief at {w!r} weights unknown worlds {sorted(bad)}")
                    fixed.append({t: Fraction(v) for t, v in dist.items() if Fraction(v) != 0})
                per[w] = tuple(fixed)
            cleaned.append(per)
        object.__setattr__(self, "lam", tuple(cleaned))

    @property
    def game(self) -> Game:
        return self.base.game

    @property
    def worlds(self) -> tuple[str, ...]:
        return self.base.worlds

    @property
    def access(self):
        return self.base.access

    @property
    def sigma(self):
        return self.base.sigma

    def levels(self, i: int, w: str) -> LevelSeq:
        return self.lam[i][w]

    def event(self, labels: Iterable[str]) -> EventSet:
        return self.base.event(labels)

    def order(self, event: Iterable[str]) -> tuple[str, ...]:
        return self.base.order(event)


def validate_ordered(model: OrderedKripkeModel) -> list[Violation]:
    """Standard axioms plus measure, support, and injectivity of the levels."""
    out = validate_standard(model.base)
    for i in (0, 1):
        name = model.game.players[i]
        for w in model.worlds:
            levels = model.lam[i][w]
            for k, dist in enumerate(levels):
                total = sum(dist.values(), Fraction(0))
                if total != 1:
                    out.append(Violation(
                        "lambda-sum", i, (w,),
                        f"player {name}: level {k + 1} at {w} sums to {total}"))
                extra = set(dist) - model.access[i][w]
                for t in sorted(extra):
                    out.append(Violation(
                        "lambda-support", i, (w, t),
                        f"player {name}: level {k + 1} at {w} weights {t}, not accessible"))
            for k in range(len(levels)):
                for k2 in range(k + 1, len(levels)):
                    if levels[k] == levels[k2]:
                        out.append(Violation(
                            "lambda-injectivity", i, (w,),
                            f"player {name}: levels {k + 1} and {k2 + 1} at {w} are identical"))
    return out


def check_lambda_constancy(model: OrderedKripkeModel) -> list[Violation]:
    """Constancy of the level sequence on accessibility classes.

    Not required for validity (the defining condition only ties levels to
    R_i supports) but assumed by the type-extraction constructions; checked
    separately so callers can decide.
    """
    out = []
    for i in (0, 1):
        name = model.game.players[i]
        for w in model.worlds:
            for w1 in model.access[i][w]:
                if model.lam[i][w1] != model.lam[i][w]:
                    out.append(Violation(
                        "lambda-constancy", i, (w, w1),
                        f"player {name}: levels at {w1} differ from levels at {w} "
                        f"although {w1} is accessible from {w}"))
    return out


def check_caution(model: OrderedKripkeModel) -> list[Violation]:
    """Every opponent strategy must get positive weight at some level, everywhere."""
    out = []
    for i in (0, 1):
        j = other(i)
        name = model.game.players[i]
        for w in model.worlds:
            seen = set()
            for dist in model.lam[i][w]:
                for w1 in dist:
                    seen.add(model.sigma[j][w1])
            for s_j in model.game.strategies[j]:
                if s_j not in seen:
                    out.append(Violation(
                        "caution", i, (w, s_j),
                        f"player {name}: no level at {w} gives positive weight to a world "
                        f"where the opponent plays {s_j!r}"))
    return out


def level_mixture(model: OrderedKripkeModel, i: int, w: str, k: int) -> MixedStrategy:
    """Opponent-strategy mixture induced by level ``k`` (0-based) at ``w``."""
    j = other(i)
    weights: dict[str, Fraction] = {}
    for w1, v in model.lam[i][w][k].items():
        s = model.sigma[j][w1]
        weights[s] = weights.get(s, Fraction(0)) + v
    return MixedStrategy(j, weights)


def _lex_vector(model: OrderedKripkeModel, i: int, w: str, s: str):
    beliefs = [level_mixture(model, i, w, k) for k in range(len(model.lam[i][w]))]
    return lex_utility_vector(model.game, i, s, beliefs)


def lex_prefers(model: OrderedKripkeModel, i: int, w: str, s_i: str, s_i2: str) -> int:
    """Lexicographic preference at ``w``: GREATER, EQUAL (indifferent) or LESS."""
    model.game.check_strategy(i, s_i)
    model.game.check_strategy(i, s_i2)
    return lex_compare(_lex_vector(model, i, w, s_i), _lex_vector(model, i, w, s_i2))


def lrat(model: OrderedKripkeModel) -> tuple[tuple[EventSet, EventSet], EventSet]:
    """Per-player lexicographic rationality events and their intersection."""
    per = []
    for i in (0, 1):
        ok = set()
        for w in model.worlds:
            vec = _lex_vector(model, i, w, model.sigma[i][w])
            beaten = any(
                lex_compare(_lex_vector(model, i, w, s), vec) == GREATER
                for s in model.game.strategies[i]
            )
            if not beaten:
                ok.add(w)
        per.append(frozenset(ok))
    return (per[0], per[1]), per[0] & per[1]


def level1_access(model: OrderedKripkeModel, i: int, w: str) -> frozenset[str]:
    return frozenset(model.lam[i][w][0])


def level1_belief(model: OrderedKripkeModel, i: int, event: Iterable[str]) -> EventSet:
    """Worlds whose primary-belief support for player ``i`` lies inside the event."""
    ev = model.event(event)
    return frozenset(w for w in model.worlds if level1_access(model, i, w) <= ev)


def common_level1_belief(model: OrderedKripkeModel, event: Iterable[str]) -> EventSet:
    """Worlds whose union of primary-belief supports lies inside the event."""
    ev = model.event(event)
    return frozenset(
        w for w in model.worlds
        if (level1_access(model, 0, w) | level1_access(model, 1, w)) <= ev
    )


@dataclass(frozen=True)
class StructuralReport:
    disjoint_supports: bool
    surjection: bool
    violations: tuple[Violation, ...]


def check_structural_conditions(model: OrderedKripkeModel) -> StructuralReport:
    """Disjoint level supports, and every accessible world weighted at some level."""
    out = []
    for i in (0, 1):
        name = model.game.players[i]
        for w in model.worlds:
            levels = model.lam[i][w]
            for k in range(len(levels)):
                for k2 in range(k + 1, len(levels)):
                    overlap = set(levels[k]) & set(levels[k2])
                    for t in sorted(overlap):
                        out.append(Violation(
                            "disjoint-supports", i, (w, t),
                            f"player {name}: levels {k + 1} and {k2 + 1} at {w} both weight {t}"))
            covered = set()
            for dist in levels:
                covered |= set(dist)
            for w1 in sorted(model.access[i][w] - covered):
                out.append(Violation(
                    "surjection", i, (w, w1),
                    f"player {name}: {w1} is accessible from {w} but no level weights it"))
    kinds = {v.kind for v in out}
    return StructuralReport(
        "disjoint-supports" not in kinds, "surjection" not in kinds, tuple(out))

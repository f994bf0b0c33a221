"""Finite epistemic type models and the bridges to Kripke models.

Two flavors: lexicographic types carry an injective-by-use sequence of
belief levels over opponent (strategy, type) pairs; probabilistic types
carry a single distribution.  Common full belief in a property is the
greatest fixed point reached by eliminating types that deem an eliminated
opponent type possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import InputError
from .games import (
    GREATER,
    Game,
    MixedStrategy,
    expected_utility,
    lex_compare,
    other,
)
from .kripke import ProbKripkeModel, StandardKripkeModel
from .ordered import OrderedKripkeModel
from . import dominance

Pair = tuple  # (opponent strategy, opponent type)


def _clean_dist(dist: Mapping[Pair, Fraction], where: str) -> dict[Pair, Fraction]:
    out = {}
    total = Fraction(0)
    for pair, v in dist.items():
        v = Fraction(v)
        if v < 0:
            raise InputError(f"{where}: negative weight {v} on {pair}")
        if v > 0:
            out[pair] = v
        total += v
    if total != 1:
        raise InputError(f"{where}: weights sum to {total}, expected 1")
    return out


@dataclass(frozen=True)
class LexEpistemicModel:
    game: Game
    types: tuple[tuple[str, ...], tuple[str, ...]]
    beliefs: tuple[Mapping[str, tuple], Mapping[str, tuple]]

    def __post_init__(self) -> None:
        cleaned = []
        for i in (0, 1):
            j = other(i)
            if len(set(self.types[i])) != len(self.types[i]):
                raise InputError(f"duplicate type label for player {self.game.players[i]!r}")
            if set(self.beliefs[i]) != set(self.types[i]):
                raise InputError(f"beliefs of player {self.game.players[i]!r} do not cover the types")
            per = {}
            for t, levels in self.beliefs[i].items():
                if not levels:
                    raise InputError(f"type {t!r} has no belief levels")
                fixed = []
                for k, dist in enumerate(levels):
                    where = f"type {t!r} level {k + 1}"
                    d = _clean_dist(dist, where)
                    for (s_j, t_j) in d:
                        self.game.check_strategy(j, s_j)
                        if t_j not in self.types[j]:
                            raise InputError(f"{where}: unknown opponent type {t_j!r}")
                    fixed.append(d)
                per[t] = tuple(fixed)
            cleaned.append(per)
        object.__setattr__(self, "beliefs", tuple(cleaned))

    def check_type(self, i: int, t: str) -> None:
        if t not in self.types[i]:
            raise InputError(f"unknown type {t!r} for player {self.game.players[i]!r}")

    def levels(self, i: int, t: str) -> tuple:
        self.check_type(i, t)
        return self.beliefs[i][t]


@dataclass(frozen=True)
class ProbEpistemicModel:
    game: Game
    types: tuple[tuple[str, ...], tuple[str, ...]]
    beliefs: tuple[Mapping[str, Mapping[Pair, Fraction]], Mapping[str, Mapping[Pair, Fraction]]]

    def __post_init__(self) -> None:
        cleaned = []
        for i in (0, 1):
            j = other(i)
            if len(set(self.types[i])) != len(self.types[i]):
                raise InputError(f"duplicate type label for player {self.game.players[i]!r}")
            if set(self.beliefs[i]) != set(self.types[i]):
                raise InputError(f"beliefs of player {self.game.players[i]!r} do not cover the types")
            per = {}
            for t, dist in self.beliefs[i].items():
                d = _clean_dist(dist, f"type {t!r}")
                for (s_j, t_j) in d:
                    self.game.check_strategy(j, s_j)
                    if t_j not in self.types[j]:
                        raise InputError(f"type {t!r}: unknown opponent type {t_j!r}")
                per[t] = d
            cleaned.append(per)
        object.__setattr__(self, "beliefs", tuple(cleaned))

    def check_type(self, i: int, t: str) -> None:
        if t not in self.types[i]:
            raise InputError(f"unknown type {t!r} for player {self.game.players[i]!r}")

    def belief(self, i: int, t: str) -> Mapping[Pair, Fraction]:
        self.check_type(i, t)
        return self.beliefs[i][t]


EpistemicModel = LexEpistemicModel | ProbEpistemicModel


def _level_dists(model: EpistemicModel, i: int, t: str) -> tuple:
    if isinstance(model, LexEpistemicModel):
        return model.levels(i, t)
    return (model.belief(i, t),)


def deems_possible(model: EpistemicModel, i: int, t: str) -> frozenset[str]:
    """Opponent types receiving positive weight at any level of ``t``."""
    model.check_type(i, t)
    out = set()
    for dist in _level_dists(model, i, t):
        for (_, t_j) in dist:
            out.add(t_j)
    return frozenset(out)


def deems_pair_possible(model: EpistemicModel, i: int, t: str, pair: Pair) -> bool:
    return any(pair in dist for dist in _level_dists(model, i, t))


def type_caution(model: EpistemicModel, i: int, t: str) -> bool:
    """Each deemed opponent type must be paired with every opponent strategy."""
    j = other(i)
    for t_j in deems_possible(model, i, t):
        for s_j in model.game.strategies[j]:
            if not deems_pair_possible(model, i, t, (s_j, t_j)):
                return False
    return True


def strategy_marginal(model: EpistemicModel, i: int, t: str, k: int = 0) -> MixedStrategy:
    """Marginal of level ``k`` (0-based) on opponent strategies."""
    dists = _level_dists(model, i, t)
    weights: dict[str, Fraction] = {}
    for (s_j, _), v in dists[k].items():
        weights[s_j] = weights.get(s_j, Fraction(0)) + v
    return MixedStrategy(other(i), weights)


def _utility_vector(model: EpistemicModel, i: int, t: str, s: str):
    dists = _level_dists(model, i, t)
    return tuple(
        expected_utility(model.game, i, s, strategy_marginal(model, i, t, k))
        for k in range(len(dists))
    )


def optimal_strategies(model: EpistemicModel, i: int, t: str) -> frozenset[str]:
    """Strategies not lexicographically beaten under ``t``'s belief levels."""
    model.check_type(i, t)
    vectors = {s: _utility_vector(model, i, t, s) for s in model.game.strategies[i]}
    out = set()
    for s, vec in vectors.items():
        if not any(lex_compare(v2, vec) == GREATER for v2 in vectors.values()):
            out.add(s)
    return frozenset(out)


def primary_belief_in_rationality(model: LexEpistemicModel, i: int, t: str) -> bool:
    """The primary belief weights only pairs whose strategy is optimal for its type."""
    model.check_type(i, t)
    j = other(i)
    primary = model.levels(i, t)[0]
    for (s_j, t_j) in primary:
        if s_j not in optimal_strategies(model, j, t_j):
            return False
    return True


def eps_trembling(model: ProbEpistemicModel, i: int, t: str, eps: Fraction) -> bool:
    """Pairs whose strategy is not optimal for its type weigh at most ``eps``."""
    model.check_type(i, t)
    eps = Fraction(eps)
    j = other(i)
    for (s_j, t_j), v in model.belief(i, t).items():
        if s_j not in optimal_strategies(model, j, t_j) and v > eps:
            return False
    return True


@dataclass(frozen=True)
class TypeProperty:
    name: str
    holds: tuple[Mapping[str, bool], Mapping[str, bool]]


def caution_property(model: EpistemicModel) -> TypeProperty:
    return TypeProperty("caution", tuple(
        {t: type_caution(model, i, t) for t in model.types[i]} for i in (0, 1)))


def primary_rationality_property(model: LexEpistemicModel) -> TypeProperty:
    return TypeProperty("primary-rationality", tuple(
        {t: primary_belief_in_rationality(model, i, t) for t in model.types[i]} for i in (0, 1)))


def trembling_property(model: ProbEpistemicModel, eps: Fraction) -> TypeProperty:
    return TypeProperty(f"trembling({eps})", tuple(
        {t: eps_trembling(model, i, t, eps) for t in model.types[i]} for i in (0, 1)))


def conjoin(*props: TypeProperty) -> TypeProperty:
    if not props:
        raise InputError("conjunction of no properties")
    name = " and ".join(p.name for p in props)
    holds = tuple(
        {t: all(p.holds[i][t] for p in props) for t in props[0].holds[i]} for i in (0, 1))
    return TypeProperty(name, holds)


def common_full_belief(
    model: EpistemicModel, prop: TypeProperty
) -> tuple[frozenset[str], frozenset[str]]:
    """Greatest set of property-satisfying types deeming only survivors possible."""
    alive = [
        {t for t in model.types[i] if prop.holds[i][t]}
        for i in (0, 1)
    ]
    changed = True
    while changed:
        changed = False
        for i in (0, 1):
            j = other(i)
            for t in list(alive[i]):
                if not deems_possible(model, i, t) <= alive[j]:
                    alive[i].discard(t)
                    changed = True
    return frozenset(alive[0]), frozenset(alive[1])


def permissible(model: LexEpistemicModel) -> tuple[frozenset[str], frozenset[str]]:
    """Strategies optimal for a surviving type under caution and primary rationality.

    Model-relative: it quantifies over this model's types.  The global
    notion coincides with survival of the Dekel-Fudenberg procedure.
    """
    prop = conjoin(caution_property(model), primary_rationality_property(model))
    alive = common_full_belief(model, prop)
    return tuple(
        frozenset().union(*(optimal_strategies(model, i, t) for t in alive[i]))
        if alive[i] else frozenset()
        for i in (0, 1)
    )


def eps_permissible(
    model: ProbEpistemicModel, eps: Fraction
) -> tuple[frozenset[str], frozenset[str]]:
    """Strategies optimal for a surviving type under caution and eps-trembling."""
    prop = conjoin(caution_property(model), trembling_property(model, eps))
    alive = common_full_belief(model, prop)
    return tuple(
        frozenset().union(*(optimal_strategies(model, i, t) for t in alive[i]))
        if alive[i] else frozenset()
        for i in (0, 1)
    )


# ---------------------------------------------------------------------------
# Bridges between type models and Kripke models.


def _world_label(t1: str, t2: str, s1: str, s2: str) -> str:
    return f"{t1}|{t2}|{s1}|{s2}"


def _product_worlds(game: Game, types):
    for t1 in types[0]:
        for t2 in types[1]:
            for s1 in game.strategies[0]:
                for s2 in game.strategies[1]:
                    yield (t1, t2, s1, s2)


def kripke_from_lex_types(model: LexEpistemicModel) -> OrderedKripkeModel:
    """Ordered Kripke model over (type pair, profile) worlds.

    Worlds sharing a player's (type, strategy) coordinate form that player's
    accessibility cluster, restricted to worlds appearing in the type's
    belief supports; level k weighs a world by the type's level-k weight on
    the world's (opponent strategy, opponent type) coordinate.

    Requires every type to be cautious.  Exact duplicate adjacent levels are
    merged; any remaining duplicate levels are rejected because the induced
    level sequence must be injective.
    """
    game = model.game
    for i in (0, 1):
        for t in model.types[i]:
            if not type_caution(model, i, t):
                raise InputError(
                    f"type {t!r} of player {game.players[i]!r} is not cautious; "
                    "extend the model with cautious types first")

    levels_of: list[dict[str, tuple]] = [{}, {}]
    for i in (0, 1):
        for t in model.types[i]:
            raw = list(model.levels(i, t))
            merged = [raw[0]]
            for dist in raw[1:]:
                if dist != merged[-1]:
                    merged.append(dist)
            if len(set(map(lambda d: tuple(sorted(d.items())), merged))) != len(merged):
                raise InputError(
                    f"type {t!r} of player {game.players[i]!r} repeats a belief level; "
                    "the induced level sequence would not be injective")
            levels_of[i][t] = tuple(merged)

    coords = list(_product_worlds(game, model.types))
    worlds = tuple(_world_label(*c) for c in coords)
    sigma = ({}, {})
    for c in coords:
        w = _world_label(*c)
        sigma[0][w] = c[2]
        sigma[1][w] = c[3]

    access: list[dict[str, frozenset[str]]] = [{}, {}]
    lam: list[dict[str, tuple]] = [{}, {}]
    for (t1, t2, s1, s2) in coords:
        w = _world_label(t1, t2, s1, s2)
        for i in (0, 1):
            t_i = (t1, t2)[i]
            s_i = (s1, s2)[i]
            dists = []
            support = set()
            for dist in levels_of[i][t_i]:
                level = {}
                for (s_j, t_j), v in dist.items():
                    coords2 = (t_i, t_j, s_i, s_j) if i == 0 else (t_j, t_i, s_j, s_i)
                    w2 = _world_label(*coords2)
                    level[w2] = v
                dists.append(level)
                support |= set(level)
            access[i][w] = frozenset(support)
            lam[i][w] = tuple(dists)
    base = StandardKripkeModel(game, worlds, (access[0], access[1]), (sigma[0], sigma[1]))
    return OrderedKripkeModel(base, (lam[0], lam[1]))


def kripke_from_prob_types(model: ProbEpistemicModel) -> ProbKripkeModel:
    """Probabilistic Kripke model over (type pair, profile) worlds."""
    game = model.game
    coords = list(_product_worlds(game, model.types))
    worlds = tuple(_world_label(*c) for c in coords)
    sigma = ({}, {})
    for c in coords:
        w = _world_label(*c)
        sigma[0][w] = c[2]
        sigma[1][w] = c[3]
    access: list[dict[str, frozenset[str]]] = [{}, {}]
    p: list[dict[str, dict[str, Fraction]]] = [{}, {}]
    for (t1, t2, s1, s2) in coords:
        w = _world_label(t1, t2, s1, s2)
        for i in (0, 1):
            t_i = (t1, t2)[i]
            s_i = (s1, s2)[i]
            dist = {}
            for (s_j, t_j), v in model.belief(i, t_i).items():
                coords2 = (t_i, t_j, s_i, s_j) if i == 0 else (t_j, t_i, s_j, s_i)
                dist[_world_label(*coords2)] = v
            access[i][w] = frozenset(dist)
            p[i][w] = dist
    base = StandardKripkeModel(game, worlds, (access[0], access[1]), (sigma[0], sigma[1]))
    return ProbKripkeModel(base, (p[0], p[1]))


def types_from_kripke(
    model: ProbKripkeModel,
) -> tuple[ProbEpistemicModel, dict[str, tuple[str, str]]]:
    """Quotient a probabilistic Kripke model into an epistemic type model.

    Worlds are partitioned per player by behavioral equivalence: two worlds
    get one type exactly when their beliefs induce the same distribution
    over (opponent strategy, opponent class) pairs, computed as the coarsest
    such partition.  The belief of a type totals the world-belief weight of
    each class on each strategy, so it is independent of the representative.
    """
    worlds = model.worlds
    classes = [{w: 0 for w in worlds}, {w: 0 for w in worlds}]
    while True:
        changed = False
        for i in (0, 1):
            j = other(i)
            sigs = {}
            for w in worlds:
                agg: dict[tuple[str, int], Fraction] = {}
                for w1, v in model.p[i][w].items():
                    key = (model.sigma[j][w1], classes[j][w1])
                    agg[key] = agg.get(key, Fraction(0)) + v
                sigs[w] = (classes[i][w], tuple(sorted(agg.items())))
            relabel: dict[tuple, int] = {}
            new = {}
            for w in worlds:  # first occurrence fixes the class id
                new[w] = relabel.setdefault(sigs[w], len(relabel))
            if new != classes[i]:
                classes[i] = new
                changed = True
        if not changed:
            break

    labels = []
    reps = []
    for i in (0, 1):
        ordered_ids = []
        rep = {}
        for w in worlds:
            cid = classes[i][w]
            if cid not in rep:
                rep[cid] = w
                ordered_ids.append(cid)
        labels.append({cid: f"t{i + 1}_{k + 1}" for k, cid in enumerate(ordered_ids)})
        reps.append(rep)

    # Types in first-occurrence order of their representative world.
    types = tuple(
        tuple(labels[i][classes[i][w]] for w in worlds
              if reps[i][classes[i][w]] == w)
        for i in (0, 1)
    )
    beliefs = []
    for i in (0, 1):
        j = other(i)
        per = {}
        for cid, w in reps[i].items():
            dist: dict[Pair, Fraction] = {}
            for w1, v in model.p[i][w].items():
                pair = (model.sigma[j][w1], labels[j][classes[j][w1]])
                dist[pair] = dist.get(pair, Fraction(0)) + v
            per[labels[i][cid]] = dist
        beliefs.append(per)
    tmodel = ProbEpistemicModel(model.game, types, (beliefs[0], beliefs[1]))
    world_types = {
        w: (labels[0][classes[0][w]], labels[1][classes[1][w]]) for w in worlds}
    return tmodel, world_types


def df_witness_types(game: Game) -> LexEpistemicModel:
    """A lexicographic model whose surviving types rationalize every DF survivor.

    One type per surviving strategy.  Its primary belief justifies the
    strategy against surviving opponent strategies, paired with the types
    those strategies name; its secondary belief is a full-support justifier
    over all opponent strategies, spread uniformly over all opponent types,
    which makes every type cautious.
    """
    survivors, _ = dominance.dekel_fudenberg(game)
    full = dominance.Restriction.full(game)
    tlabel = [{s: f"th_{s}" for s in survivors.sets[i]} for i in (0, 1)]
    types = tuple(tuple(tlabel[i][s] for s in survivors.sets[i]) for i in (0, 1))
    beliefs: list[dict[str, tuple]] = [{}, {}]
    for i in (0, 1):
        j = other(i)
        n_j = len(survivors.sets[j])
        for s in survivors.sets[i]:
            primary_mix = dominance.justifying_belief(game, survivors, i, s)
            if primary_mix is None:
                raise InputError(f"no justifying belief for DF survivor {s!r}")
            secondary_mix = dominance.justifying_belief(game, full, i, s, full_support=True)
            if secondary_mix is None:
                raise InputError(f"no full-support justifier for DF survivor {s!r}")
            primary = {
                (s_j, tlabel[j][s_j]): v for s_j, v in primary_mix.weights.items()}
            secondary = {}
            for s_j, v in secondary_mix.weights.items():
                for t_j in survivors.sets[j]:
                    secondary[(s_j, tlabel[j][t_j])] = v / n_j
            beliefs[i][tlabel[i][s]] = (primary, secondary)
    return LexEpistemicModel(game, types, (beliefs[0], beliefs[1]))

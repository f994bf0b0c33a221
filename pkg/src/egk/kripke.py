"""Standard and probabilistic Kripke models of a game, with belief operators.

Accessibility is expected to be KD45 (serial, transitive, Euclidean) and a
player's own strategy constant on accessibility classes; ``validate_standard``
and ``validate_prob`` report violations as data rather than raising, so a
model checker can surface every defect at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .dominance import Restriction, iesds, justifying_belief
from .errors import InputError
from .games import Game, MixedStrategy, optimal_pure, other

EventSet = frozenset


@dataclass(frozen=True)
class Violation:
    kind: str
    player: int | None
    where: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        return self.detail


@dataclass(frozen=True)
class StandardKripkeModel:
    game: Game
    worlds: tuple[str, ...]
    access: tuple[Mapping[str, frozenset[str]], Mapping[str, frozenset[str]]]
    sigma: tuple[Mapping[str, str], Mapping[str, str]]

    def __post_init__(self) -> None:
        if len(set(self.worlds)) != len(self.worlds):
            raise InputError("duplicate world labels")
        wset = set(self.worlds)
        access = tuple({w: frozenset(t) for w, t in self.access[i].items()} for i in (0, 1))
        object.__setattr__(self, "access", access)
        for i in (0, 1):
            if set(self.access[i]) != wset:
                raise InputError(f"accessibility map of player {self.game.players[i]!r} does not cover the worlds")
            if set(self.sigma[i]) != wset:
                raise InputError(f"strategy assignment of player {self.game.players[i]!r} does not cover the worlds")
            for w, targets in self.access[i].items():
                bad = targets - wset
                if bad:
                    raise InputError(f"accessibility from {w!r} points at unknown worlds {sorted(bad)}")
            for w, s in self.sigma[i].items():
                self.game.check_strategy(i, s)

    def event(self, labels: Iterable[str]) -> EventSet:
        ev = frozenset(labels)
        bad = ev - set(self.worlds)
        if bad:
            raise InputError(f"event contains unknown worlds {sorted(bad)}")
        return ev

    def order(self, event: Iterable[str]) -> tuple[str, ...]:
        """Event members in model (file) order, for deterministic reports."""
        ev = set(event)
        return tuple(w for w in self.worlds if w in ev)

    def profile(self, w: str) -> tuple[str, str]:
        return (self.sigma[0][w], self.sigma[1][w])


@dataclass(frozen=True)
class ProbKripkeModel:
    base: StandardKripkeModel
    p: tuple[Mapping[str, Mapping[str, Fraction]], Mapping[str, Mapping[str, Fraction]]]

    def __post_init__(self) -> None:
        wset = set(self.base.worlds)
        cleaned = []
        for i in (0, 1):
            if set(self.p[i]) != wset:
                raise InputError(f"belief map of player {self.game.players[i]!r} does not cover the worlds")
            per = {}
            for w, dist in self.p[i].items():
                bad = set(dist) - wset
                if bad:
                    raise InputError(f"belief at {w!r} weights unknown worlds {sorted(bad)}")
                per[w] = {t: Fraction(v) for t, v in dist.items() if Fraction(v) != 0}
            cleaned.append(per)
        object.__setattr__(self, "p", tuple(cleaned))

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

    def event(self, labels: Iterable[str]) -> EventSet:
        return self.base.event(labels)

    def order(self, event: Iterable[str]) -> tuple[str, ...]:
        return self.base.order(event)


def validate_standard(model: StandardKripkeModel) -> list[Violation]:
    """KD45 axioms plus constancy of a player's own strategy on R_i classes."""
    out = []
    for i in (0, 1):
        name = model.game.players[i]
        acc = model.access[i]
        for w in model.worlds:
            if not acc[w]:
                out.append(Violation("seriality", i, (w,), f"player {name}: no world accessible from {w}"))
        for w in model.worlds:
            for w1 in acc[w]:
                for w2 in acc[w1]:
                    if w2 not in acc[w]:
                        out.append(Violation(
                            "transitivity", i, (w, w1, w2),
                            f"player {name}: {w}R{w1} and {w1}R{w2} but not {w}R{w2}"))
        for w in model.worlds:
            for w1 in acc[w]:
                for w2 in acc[w]:
                    if w2 not in acc[w1]:
                        out.append(Violation(
                            "euclideanness", i, (w, w1, w2),
                            f"player {name}: {w}R{w1} and {w}R{w2} but not {w1}R{w2}"))
        for w in model.worlds:
            for w1 in acc[w]:
                if model.sigma[i][w1] != model.sigma[i][w]:
                    out.append(Violation(
                        "sigma-constancy", i, (w, w1),
                        f"player {name}: strategy at {w1} is {model.sigma[i][w1]!r}, "
                        f"but {w1} is accessible from {w} playing {model.sigma[i][w]!r}"))
    return out


def validate_prob(model: ProbKripkeModel) -> list[Violation]:
    """Standard axioms plus measure constraints and constancy of p_i."""
    out = validate_standard(model.base)
    for i in (0, 1):
        name = model.game.players[i]
        for w in model.worlds:
            dist = model.p[i][w]
            total = sum(dist.values(), Fraction(0))
            if total != 1:
                out.append(Violation("p-sum", i, (w,), f"player {name}: weights at {w} sum to {total}"))
            extra = set(dist) - model.access[i][w]
            for t in sorted(extra):
                out.append(Violation(
                    "p-support", i, (w, t),
                    f"player {name}: positive weight on {t}, not accessible from {w}"))
        for w in model.worlds:
            for w1 in model.access[i][w]:
                if model.p[i][w1] != model.p[i][w]:
                    out.append(Violation(
                        "p-constancy", i, (w, w1),
                        f"player {name}: belief at {w1} differs from belief at {w} "
                        f"although {w1} is accessible from {w}"))
    return out


def belief(model: StandardKripkeModel | ProbKripkeModel, i: int, event: Iterable[str]) -> EventSet:
    """Worlds whose accessible set for player ``i`` lies inside the event."""
    base = model.base if isinstance(model, ProbKripkeModel) else model
    ev = base.event(event)
    return frozenset(w for w in base.worlds if base.access[i][w] <= ev)


def common_belief(model: StandardKripkeModel | ProbKripkeModel, event: Iterable[str]) -> EventSet:
    """Worlds whose union of accessible sets lies inside the event."""
    base = model.base if isinstance(model, ProbKripkeModel) else model
    ev = base.event(event)
    return frozenset(w for w in base.worlds if (base.access[0][w] | base.access[1][w]) <= ev)


def induced_mixture(model: ProbKripkeModel, i: int, w: str) -> MixedStrategy:
    """Opponent-strategy mixture induced by p_i(w) through the assignment."""
    j = other(i)
    weights: dict[str, Fraction] = {}
    for w1, v in model.p[i][w].items():
        s = model.sigma[j][w1]
        weights[s] = weights.get(s, Fraction(0)) + v
    return MixedStrategy(j, weights)


def rat(model: ProbKripkeModel) -> tuple[tuple[EventSet, EventSet], EventSet]:
    """Per-player rationality events and their intersection RAT."""
    per = []
    for i in (0, 1):
        ok = set()
        for w in model.worlds:
            mix = induced_mixture(model, i, w)
            if model.sigma[i][w] in optimal_pure(model.game, i, mix):
                ok.add(w)
        per.append(frozenset(ok))
    return (per[0], per[1]), per[0] & per[1]


@dataclass(frozen=True)
class IesdsInclusionReport:
    cb_rat: tuple[str, ...]
    survivors: Restriction
    failures: tuple[str, ...]
    holds: bool


def check_iesds_inclusion(model: ProbKripkeModel) -> IesdsInclusionReport:
    """Verify that worlds under common belief in rationality play IESDS survivors."""
    _, rat_event = rat(model)
    cb = common_belief(model, rat_event)
    survivors, _ = iesds(model.game)
    surviving = {(s1, s2) for s1 in survivors.sets[0] for s2 in survivors.sets[1]}
    failures = tuple(w for w in model.order(cb) if model.base.profile(w) not in surviving)
    return IesdsInclusionReport(model.order(cb), survivors, failures, not failures)


def iesds_witness_model(game: Game, profile: tuple[str, str]) -> tuple[ProbKripkeModel, str]:
    """A model and world showing the profile under common belief in rationality.

    Every surviving strategy gets a justifying belief over surviving opponent
    strategies; worlds are the surviving profiles, clustered by the owner's
    strategy, with the cluster belief given by that justifying belief.
    """
    survivors, _ = iesds(game)
    for i in (0, 1):
        if profile[i] not in survivors.sets[i]:
            raise InputError(
                f"strategy {profile[i]!r} of player {game.players[i]!r} does not survive"
                " iterated strict dominance")
    beliefs = []
    for i in (0, 1):
        per = {}
        for s in survivors.sets[i]:
            b = justifying_belief(game, survivors, i, s)
            if b is None:
                raise InputError(f"no justifying belief for surviving strategy {s!r}")
            per[s] = b
        beliefs.append(per)

    def label(s1: str, s2: str) -> str:
        return f"{s1},{s2}"

    worlds = tuple(label(s1, s2) for s1 in survivors.sets[0] for s2 in survivors.sets[1])
    sigma0 = {}
    sigma1 = {}
    for s1 in survivors.sets[0]:
        for s2 in survivors.sets[1]:
            sigma0[label(s1, s2)] = s1
            sigma1[label(s1, s2)] = s2
    access: list[dict[str, frozenset[str]]] = [{}, {}]
    p: list[dict[str, dict[str, Fraction]]] = [{}, {}]
    for s1 in survivors.sets[0]:
        for s2 in survivors.sets[1]:
            w = label(s1, s2)
            own = (s1, s2)
            for i in (0, 1):
                bel = beliefs[i][own[i]]
                targets = {}
                for sj, v in bel.weights.items():
                    tw = label(own[i], sj) if i == 0 else label(sj, own[i])
                    targets[tw] = v
                access[i][w] = frozenset(targets)
                p[i][w] = targets
    base = StandardKripkeModel(game, worlds, (access[0], access[1]), (sigma0, sigma1))
    model = ProbKripkeModel(base, (p[0], p[1]))
    return model, label(*profile)

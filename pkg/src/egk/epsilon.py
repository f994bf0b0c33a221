"""Caution, trembling bounds, and upper-threshold belief operators.

The upper operators restrict accessibility to worlds with belief weight
strictly above a threshold eps in (0, 1/2); weights equal to eps are
excluded.  eps is part of the query, never of the model, so one model can
be checked at several thresholds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import InputError
from .games import optimal_pure, other, point_mass
from .kripke import EventSet, ProbKripkeModel, Violation, rat

TREMBLING_READINGS = ("belief", "pointwise")


def check_prob_caution(model: ProbKripkeModel) -> list[Violation]:
    """Every opponent strategy must get positive weight in every belief."""
    out = []
    for i in (0, 1):
        j = other(i)
        name = model.game.players[i]
        for w in model.worlds:
            seen = {model.sigma[j][w1] for w1 in model.p[i][w]}
            for s_j in model.game.strategies[j]:
                if s_j not in seen:
                    out.append(Violation(
                        "caution", i, (w, s_j),
                        f"player {name}: belief at {w} gives no weight to a world "
                        f"where the opponent plays {s_j!r}"))
    return out


def check_trembling(
    model: ProbKripkeModel, eps: Fraction, reading: str = "belief"
) -> list[Violation]:
    """Worlds carrying a non-optimal strategy may weigh at most ``eps``.

    Under the default ``belief`` reading a supported world is a mistake when
    the opponent's assigned strategy there is not optimal against the
    opponent's own belief at that world.  The literal ``pointwise`` reading
    instead tests the believer's assigned strategy against the opponent's
    pure strategy at the supported world.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise InputError(f"trembling bound must lie in (0, 1), got {eps}")
    if reading not in TREMBLING_READINGS:
        raise InputError(f"unknown trembling reading {reading!r}")
    out = []
    if reading == "belief":
        (rat0, rat1), _ = rat(model)
        rational = (rat0, rat1)
        for i in (0, 1):
            j = other(i)
            name = model.game.players[i]
            for w in model.worlds:
                for w1, v in model.p[i][w].items():
                    if w1 not in rational[j] and v > eps:
                        out.append(Violation(
                            "trembling", i, (w, w1),
                            f"player {name}: weight {v} at {w} on {w1}, where the opponent's "
                            f"strategy {model.sigma[j][w1]!r} is not optimal"))
    else:
        for i in (0, 1):
            j = other(i)
            name = model.game.players[i]
            for w in model.worlds:
                for w1, v in model.p[i][w].items():
                    own = model.sigma[i][w1]
                    opp = model.sigma[j][w1]
                    if own not in optimal_pure(model.game, i, point_mass(j, opp)) and v > eps:
                        out.append(Violation(
                            "trembling", i, (w, w1),
                            f"player {name}: weight {v} at {w} on {w1}, where {own!r} is not a "
                            f"best reply to {opp!r}"))
    return out


def _check_eps(eps: Fraction) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise InputError(f"threshold must lie in (0, 1/2), got {eps}")
    return eps


def upper_access(model: ProbKripkeModel, i: int, w: str, eps: Fraction) -> frozenset[str]:
    """Accessible worlds with belief weight strictly above ``eps``."""
    eps = _check_eps(eps)
    return frozenset(w1 for w1, v in model.p[i][w].items() if v > eps)


def upper_belief(
    model: ProbKripkeModel, i: int, eps: Fraction, event: Iterable[str]
) -> EventSet:
    eps = _check_eps(eps)
    ev = model.event(event)
    return frozenset(
        w for w in model.worlds
        if frozenset(w1 for w1, v in model.p[i][w].items() if v > eps) <= ev
    )


def upper_common_belief(
    model: ProbKripkeModel, eps: Fraction, event: Iterable[str]
) -> EventSet:
    eps = _check_eps(eps)
    ev = model.event(event)
    out = set()
    for w in model.worlds:
        union = set()
        for i in (0, 1):
            union |= {w1 for w1, v in model.p[i][w].items() if v > eps}
        if union <= ev:
            out.add(w)
    return frozenset(out)

"""Probabilistic model families built from an ordered model, and their limit checks.

An ordered model with disjoint level supports and surjective levels induces,
for each eps, a probabilistic model on the same frame: level k receives
total mass proportional to eps^(k-1) (the ``perfect`` scheme), distributed
within the level proportionally to the level weights.  The ``proper``
scheme additionally forces every deeper-level weight to be at most eps
times every shallower-level weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .kripke import ProbKripkeModel, validate_prob
from .ordered import (
    OrderedKripkeModel,
    check_caution,
    check_lambda_constancy,
    check_structural_conditions,
    common_level1_belief,
    lrat,
)
from .epsilon import check_prob_caution, upper_common_belief
from .kripke import rat

SCHEMES = ("perfect", "proper")


@dataclass(frozen=True)
class EpsilonSchedule:
    """Finite strictly decreasing thresholds eps_n = ratio**(n+2), n = 0..count-1."""

    ratio: Fraction
    count: int
    kind: str = "geometric"

    def __post_init__(self) -> None:
        ratio = Fraction(self.ratio)
        object.__setattr__(self, "ratio", ratio)
        if self.kind != "geometric":
            raise InputError(f"unknown schedule kind {self.kind!r}")
        if not 0 < ratio < 1:
            raise InputError(f"schedule ratio must lie in (0, 1), got {ratio}")
        if ratio * ratio >= Fraction(1, 2):
            raise InputError(f"schedule must start below 1/2; ratio {ratio} is too large")
        if self.count < 1:
            raise InputError("schedule needs at least one threshold")

    def values(self) -> tuple[Fraction, ...]:
        return tuple(self.ratio ** (n + 2) for n in range(self.count))


def _check_scheme(scheme: str) -> None:
    if scheme not in SCHEMES:
        raise InputError(f"unknown weighting scheme {scheme!r}")


def _require_hypotheses(model: OrderedKripkeModel) -> None:
    caution = check_caution(model)
    if caution:
        raise InputError(f"ordered model is not cautious: {caution[0]}")
    structural = check_structural_conditions(model)
    if not structural.disjoint_supports:
        raise InputError(f"level supports are not disjoint: {structural.violations[0]}")
    if not structural.surjection:
        raise InputError(f"levels are not surjective: {structural.violations[0]}")


def _level_masses(levels, eps: Fraction, scheme: str) -> list[Fraction]:
    """Unnormalized per-level masses, scaled so that off-level-1 mass <= eps."""
    k = len(levels)
    if scheme == "perfect":
        masses = [eps ** idx for idx in range(k)]
    else:
        masses = [Fraction(1)]
        for idx in range(1, k):
            lo_prev = min(levels[idx - 1].values())
            hi_here = max(levels[idx].values())
            masses.append(masses[-1] * eps * lo_prev / hi_here)
    tail = sum(masses[1:], Fraction(0))
    if tail > 0:
        # Shrinking the tail preserves within-level proportions and the
        # cross-level ratio bound; it only tightens them.
        bound = eps * masses[0] / ((1 - eps) * tail)
        if bound < 1:
            masses = [masses[0]] + [m * bound for m in masses[1:]]
    return masses


def build_epsilon_model(
    model: OrderedKripkeModel, eps: Fraction, scheme: str = "perfect"
) -> ProbKripkeModel:
    """The probabilistic model at threshold ``eps`` over the same frame."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise InputError(f"eps must lie in (0, 1), got {eps}")
    _check_scheme(scheme)
    _require_hypotheses(model)
    p: list[dict[str, dict[str, Fraction]]] = [{}, {}]
    for i in (0, 1):
        for w in model.worlds:
            levels = model.lam[i][w]
            masses = _level_masses(levels, eps, scheme)
            total = sum(masses, Fraction(0))
            dist: dict[str, Fraction] = {}
            for mass, level in zip(masses, levels):
                for w1, v in level.items():
                    dist[w1] = mass * v / total
            p[i][w] = dist
    out = ProbKripkeModel(model.base, (p[0], p[1]))
    _check_output(model, out, eps)
    return out


def _check_output(source: OrderedKripkeModel, out: ProbKripkeModel, eps: Fraction) -> None:
    lam_constant = not check_lambda_constancy(source)
    for v in validate_prob(out):
        # Belief constancy can only fail where the source levels already
        # varied inside a class; everything else is a construction bug.
        if v.kind == "p-constancy" and not lam_constant:
            continue
        raise InputError(f"built model is invalid: {v}")
    if check_prob_caution(out):
        raise InputError("built model lost caution")
    for i in (0, 1):
        for w in out.worlds:
            level1 = set(source.lam[i][w][0])
            for w1, weight in out.p[i][w].items():
                if w1 not in level1 and weight > eps:
                    raise InputError(
                        f"weight {weight} on off-primary world {w1} exceeds eps {eps}")


def check_proper_ratio(
    source: OrderedKripkeModel, out: ProbKripkeModel, eps: Fraction
) -> list[str]:
    """Deeper-level weights must be at most eps times shallower-level weights."""
    eps = Fraction(eps)
    problems = []
    for i in (0, 1):
        for w in source.worlds:
            levels = source.lam[i][w]
            for hi in range(len(levels)):
                for lo in range(hi + 1, len(levels)):
                    for w_hi in levels[hi]:
                        for w_lo in levels[lo]:
                            if out.p[i][w][w_lo] > eps * out.p[i][w][w_hi]:
                                problems.append(
                                    f"player {source.game.players[i]}: at {w}, weight of {w_lo} "
                                    f"(level {lo + 1}) exceeds eps times weight of {w_hi} "
                                    f"(level {hi + 1})")
    return problems


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    eps: Fraction
    rat: tuple[str, ...]
    upper_cb: tuple[str, ...]


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple[ConvergenceRow, ...]
    cb1_lrat: tuple[str, ...]
    tails: tuple[tuple[int, tuple[str, ...]], ...]
    stabilization_index: int
    stabilized: tuple[str, ...]
    matches: bool


def verify_convergence(
    model: OrderedKripkeModel,
    schedule: EpsilonSchedule,
    scheme: str = "perfect",
) -> ConvergenceReport:
    """Compare the tail of upper common belief in rationality with its limit.

    Builds the family over the schedule, computes common belief above each
    threshold in rationality per member, and reports every tail
    intersection, the index where the tail stops changing, and whether the
    stabilized set equals common primary belief in lexicographic
    rationality on the source model.
    """
    _check_scheme(scheme)
    _require_hypotheses(model)
    eps_values = schedule.values()
    rows = []
    events = []
    for n, eps in enumerate(eps_values):
        built = build_epsilon_model(model, eps, scheme)
        _, rat_event = rat(built)
        cb = upper_common_belief(built, eps, rat_event)
        events.append(cb)
        rows.append(ConvergenceRow(n, eps, model.order(rat_event), model.order(cb)))
    _, lrat_event = lrat(model)
    limit = common_level1_belief(model, lrat_event)

    tails = []
    count = len(eps_values)
    for m in range(-1, count - 1):
        tail = frozenset(model.worlds)
        for n in range(m + 1, count):
            tail &= events[n]
        tails.append((m, model.order(tail)))
    stabilized = tails[-1][1]
    stab_index = next(m for m, t in tails if all(
        t2 == stabilized for m2, t2 in tails if m2 >= m))
    return ConvergenceReport(
        rows=tuple(rows),
        cb1_lrat=model.order(limit),
        tails=tuple(tails),
        stabilization_index=stab_index,
        stabilized=stabilized,
        matches=stabilized == model.order(limit),
    )


@dataclass(frozen=True)
class LimitReport:
    vanishing: tuple[str, ...]
    primary: tuple[str, ...]
    proportions: tuple[str, ...]

    @property
    def holds(self) -> bool:
        return not (self.vanishing or self.primary or self.proportions)


def check_limit_conditions(
    model: OrderedKripkeModel,
    family: Sequence[ProbKripkeModel],
    schedule: EpsilonSchedule,
) -> LimitReport:
    """Finite checks of the three convergence clauses along the family.

    Off-primary weights must stay below each threshold and decrease;
    primary-support weights must track the level-1 weight within the total
    off-level mass; within-level proportions must match the level weights
    exactly at every member.
    """
    eps_values = schedule.values()
    if len(family) != len(eps_values):
        raise InputError("family and schedule lengths differ")
    vanishing, primary, proportions = [], [], []
    for i in (0, 1):
        name = model.game.players[i]
        for w in model.worlds:
            levels = model.lam[i][w]
            level1 = levels[0]
            off_support = [w1 for dist in levels[1:] for w1 in dist]
            prev: dict[str, Fraction] = {}
            for n, (eps, built) in enumerate(zip(eps_values, family)):
                dist = built.p[i][w]
                off_mass = sum((v for w1, v in dist.items() if w1 not in level1), Fraction(0))
                for w1 in off_support:
                    v = dist.get(w1, Fraction(0))
                    if v > eps:
                        vanishing.append(
                            f"player {name}: off-primary weight of {w1} at {w} is {v} > {eps}")
                    if w1 in prev and v >= prev[w1]:
                        vanishing.append(
                            f"player {name}: off-primary weight of {w1} at {w} did not "
                            f"decrease at step {n}")
                    prev[w1] = v
                for w1, lv in level1.items():
                    if abs(dist.get(w1, Fraction(0)) - lv) > off_mass:
                        primary.append(
                            f"player {name}: weight of {w1} at {w} strays from its primary "
                            f"weight by more than the off-level mass at step {n}")
                for dist_k in levels:
                    items = list(dist_k.items())
                    for (wa, va), (wb, vb) in zip(items, items[1:]):
                        if dist.get(wa, Fraction(0)) * vb != dist.get(wb, Fraction(0)) * va:
                            proportions.append(
                                f"player {name}: within-level proportion of {wa}:{wb} at {w} "
                                f"broken at step {n}")
    return LimitReport(tuple(vanishing), tuple(primary), tuple(proportions))

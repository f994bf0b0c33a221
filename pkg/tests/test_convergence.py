import random
from fractions import Fraction as F

import pytest

from egk.convergence import (
    EpsilonSchedule,
    build_epsilon_model,
    check_limit_conditions,
    check_proper_ratio,
    verify_convergence,
)
from egk.epsilon import check_prob_caution, check_trembling
from egk.errors import InputError
from egk.fixtures import myerson_game, myerson_ordered_model, myerson_prob_model
from egk.games import Game
from egk.kripke import StandardKripkeModel, validate_prob
from egk.ordered import OrderedKripkeModel

from generators import random_game, random_ordered_model

ONE = F(1)


def test_schedule_values_and_validation():
    sched = EpsilonSchedule(F(1, 2), 9)
    values = sched.values()
    assert values[0] == F(1, 4) and values[-1] == F(1, 1024)
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(0 < v < F(1, 2) for v in values)
    with pytest.raises(InputError):
        EpsilonSchedule(F(3, 4), 5)
    with pytest.raises(InputError):
        EpsilonSchedule(F(1, 2), 0)
    with pytest.raises(InputError):
        EpsilonSchedule(F(2, 1), 3)


def test_build_weights_on_fixture():
    model = myerson_ordered_model()
    eps = F(1, 4)
    built = build_epsilon_model(model, eps)
    # Two point-mass levels: primary keeps 1/(1+eps), secondary eps/(1+eps).
    assert built.p[0]["w1"] == {"w1": F(4, 5), "w2": F(1, 5)}
    assert built.p[1]["w1"] == {"w1": F(4, 5), "w3": F(1, 5)}
    # Same supports as the probabilistic fixture, primary world heavy.
    reference = myerson_prob_model(eps)
    for i in (0, 1):
        for w in model.worlds:
            assert set(built.p[i][w]) == set(reference.p[i][w])
            assert set(built.p[i][w]) <= model.access[i][w]
    assert check_prob_caution(built) == []


def test_build_single_level_copies_lambda():
    game = Game(("1", "2"), (("A",), ("C", "D")),
                {("A", "C"): (F(1), F(1)), ("A", "D"): (F(0), F(0))})
    worlds = ("u", "v")
    cluster = frozenset(worlds)
    access = ({"u": cluster, "v": cluster},
              {"u": frozenset({"u"}), "v": frozenset({"v"})})
    sigma = ({"u": "A", "v": "A"}, {"u": "C", "v": "D"})
    lam1 = {w: ({"u": F(2, 3), "v": F(1, 3)},) for w in worlds}
    lam2 = {"u": ({"u": ONE},), "v": ({"v": ONE},)}
    model = OrderedKripkeModel(
        StandardKripkeModel(game, worlds, access, sigma), (lam1, lam2))
    for eps in (F(1, 4), F(1, 10)):
        built = build_epsilon_model(model, eps)
        assert built.p[0]["u"] == {"u": F(2, 3), "v": F(1, 3)}


def test_build_preserves_within_level_proportions():
    game = Game(("1", "2"), (("A",), ("C", "D")),
                {("A", "C"): (F(1), F(1)), ("A", "D"): (F(0), F(0))})
    worlds = ("u", "v", "x", "y")
    cluster = frozenset(worlds)
    access1 = {w: cluster for w in worlds}
    access2 = {"u": frozenset({"u"}), "v": frozenset({"v"}),
               "x": frozenset({"x"}), "y": frozenset({"y"})}
    sigma = ({w: "A" for w in worlds}, {"u": "C", "v": "D", "x": "C", "y": "D"})
    lam1 = {w: ({"u": ONE}, {"v": F(1, 3), "x": F(1, 3), "y": F(1, 3)}) for w in worlds}
    lam2 = {w: ({w: ONE},) for w in worlds}
    model = OrderedKripkeModel(
        StandardKripkeModel(game, worlds, (access1, access2), sigma), (lam1, lam2))
    built = build_epsilon_model(model, F(1, 5))
    dist = built.p[0]["u"]
    assert dist["v"] == dist["x"] == dist["y"]
    assert dist["v"] <= F(1, 5)


def test_build_rejects_broken_hypotheses():
    game = myerson_game()
    worlds = ("u", "v")
    cluster = frozenset(worlds)
    access = ({"u": cluster, "v": cluster},) * 2
    sigma = ({"u": "A", "v": "A"}, {"u": "C", "v": "D"})
    # Not cautious: both levels sit on the C world for player 1.
    lam_bad = {w: ({"u": ONE},) for w in worlds}
    lam_ok = {w: ({"u": F(1, 2), "v": F(1, 2)},) for w in worlds}
    model = OrderedKripkeModel(
        StandardKripkeModel(game, worlds, access, sigma), (lam_bad, lam_ok))
    with pytest.raises(InputError):
        build_epsilon_model(model, F(1, 4))
    # Overlapping supports: disjointness fails.
    lam_overlap = {w: ({"u": F(1, 2), "v": F(1, 2)}, {"u": ONE}) for w in worlds}
    model2 = OrderedKripkeModel(
        StandardKripkeModel(game, worlds, access, sigma), (lam_overlap, lam_ok))
    with pytest.raises(InputError):
        build_epsilon_model(model2, F(1, 4))


def test_built_model_is_valid_for_class_constant_source():
    # A class-constant variant of the ordered fixture: each cluster's primary
    # belief points at its rational diagonal world, so the built model also
    # meets the trembling bound at its own eps.
    game = myerson_game()
    worlds = ("w1", "w2", "w3", "w4")
    profiles = {"w1": ("A", "C"), "w2": ("A", "D"), "w3": ("B", "C"), "w4": ("B", "D")}
    sigma = ({w: profiles[w][0] for w in worlds}, {w: profiles[w][1] for w in worlds})
    c1 = {"w1": frozenset({"w1", "w2"}), "w2": frozenset({"w1", "w2"}),
          "w3": frozenset({"w3", "w4"}), "w4": frozenset({"w3", "w4"})}
    c2 = {"w1": frozenset({"w1", "w3"}), "w3": frozenset({"w1", "w3"}),
          "w2": frozenset({"w2", "w4"}), "w4": frozenset({"w2", "w4"})}
    lam1 = {"w1": ({"w1": ONE}, {"w2": ONE}), "w2": ({"w1": ONE}, {"w2": ONE}),
            "w3": ({"w3": ONE}, {"w4": ONE}), "w4": ({"w3": ONE}, {"w4": ONE})}
    lam2 = {"w1": ({"w1": ONE}, {"w3": ONE}), "w3": ({"w1": ONE}, {"w3": ONE}),
            "w2": ({"w2": ONE}, {"w4": ONE}), "w4": ({"w2": ONE}, {"w4": ONE})}
    model = OrderedKripkeModel(
        StandardKripkeModel(game, worlds, (c1, c2), sigma), (lam1, lam2))
    eps = F(1, 4)
    built = build_epsilon_model(model, eps)
    assert validate_prob(built) == []
    assert check_prob_caution(built) == []
    assert check_trembling(built, eps) == []


def test_convergence_on_fixture():
    model = myerson_ordered_model()
    report = verify_convergence(model, EpsilonSchedule(F(1, 2), 9))
    assert all(row.upper_cb == ("w1",) for row in report.rows)
    assert report.stabilized == ("w1",)
    assert report.cb1_lrat == ("w1",)
    assert report.matches


def test_convergence_trivial_game():
    game = Game(("1", "2"), (("A",), ("C",)), {("A", "C"): (F(1), F(1))})
    worlds = ("u",)
    access = ({"u": frozenset(worlds)},) * 2
    sigma = ({"u": "A"}, {"u": "C"})
    lam = ({"u": ({"u": ONE},)},) * 2
    model = OrderedKripkeModel(StandardKripkeModel(game, worlds, access, sigma), lam)
    report = verify_convergence(model, EpsilonSchedule(F(1, 2), 5))
    assert all(row.rat == ("u",) and row.upper_cb == ("u",) for row in report.rows)
    assert report.matches


def test_convergence_on_random_models():
    rng = random.Random(43)
    for _ in range(10):
        game = random_game(rng)
        model = random_ordered_model(rng, game)
        report = verify_convergence(model, EpsilonSchedule(F(1, 2), 9))
        assert report.matches


def test_limit_conditions_on_fixture_family():
    model = myerson_ordered_model()
    sched = EpsilonSchedule(F(1, 2), 6)
    family = [build_epsilon_model(model, eps) for eps in sched.values()]
    report = check_limit_conditions(model, family, sched)
    assert report.holds


def test_limit_conditions_catch_broken_proportions():
    model = myerson_ordered_model()
    sched = EpsilonSchedule(F(1, 2), 3)
    family = [build_epsilon_model(model, eps) for eps in sched.values()]
    # Tamper with one member: move mass between two primary-support worlds
    # of the same level by swapping the weights at a single world.
    victim = family[1]
    p0 = {w: dict(victim.p[0][w]) for w in victim.worlds}
    p0["w1"] = {"w1": F(7, 10), "w2": F(3, 10)}
    p0["w2"] = dict(p0["w1"])
    tampered = type(victim)(victim.base, (p0, victim.p[1]))
    report = check_limit_conditions(model, [family[0], tampered, family[2]], sched)
    assert not report.holds
    assert report.vanishing or report.proportions


def test_limit_conditions_single_level_model_vacuous():
    game = Game(("1", "2"), (("A",), ("C", "D")),
                {("A", "C"): (F(1), F(1)), ("A", "D"): (F(0), F(0))})
    worlds = ("u", "v")
    cluster = frozenset(worlds)
    access = ({"u": cluster, "v": cluster},
              {"u": frozenset({"u"}), "v": frozenset({"v"})})
    sigma = ({"u": "A", "v": "A"}, {"u": "C", "v": "D"})
    lam1 = {w: ({"u": F(1, 2), "v": F(1, 2)},) for w in worlds}
    lam2 = {"u": ({"u": ONE},), "v": ({"v": ONE},)}
    model = OrderedKripkeModel(
        StandardKripkeModel(game, worlds, access, sigma), (lam1, lam2))
    sched = EpsilonSchedule(F(1, 2), 4)
    family = [build_epsilon_model(model, eps) for eps in sched.values()]
    assert check_limit_conditions(model, family, sched).holds


def _uneven_levels_model() -> OrderedKripkeModel:
    # Level 1 splits 3/4-1/4; the deep world under plain geometric masses
    # would outweigh eps times the light primary world.
    game = Game(("1", "2"), (("A",), ("C", "D")),
                {("A", "C"): (F(1), F(1)), ("A", "D"): (F(0), F(0))})
    worlds = ("u", "v", "x")
    cluster = frozenset(worlds)
    access1 = {w: cluster for w in worlds}
    access2 = {"u": frozenset({"u", "x"}), "x": frozenset({"u", "x"}),
               "v": frozenset({"v"})}
    sigma = ({w: "A" for w in worlds}, {"u": "C", "v": "D", "x": "C"})
    lam1 = {w: ({"u": F(3, 4), "v": F(1, 4)}, {"x": ONE}) for w in worlds}
    lam2 = {"u": ({"u": F(1, 2), "x": F(1, 2)},), "x": ({"u": F(1, 2), "x": F(1, 2)},),
            "v": ({"v": ONE},)}
    return OrderedKripkeModel(
        StandardKripkeModel(game, worlds, (access1, access2), sigma), (lam1, lam2))


def test_proper_scheme_enforces_cross_level_ratios():
    model = _uneven_levels_model()
    eps = F(1, 4)
    geometric = build_epsilon_model(model, eps, "perfect")
    assert check_proper_ratio(model, geometric, eps) != []
    proper = build_epsilon_model(model, eps, "proper")
    assert check_proper_ratio(model, proper, eps) == []
    assert validate_prob(proper) == []
    # The proper family still verifies the limit clauses.
    sched = EpsilonSchedule(F(1, 2), 4)
    family = [build_epsilon_model(model, eps_n, "proper") for eps_n in sched.values()]
    assert check_limit_conditions(model, family, sched).holds


def test_proper_scheme_on_random_models():
    rng = random.Random(47)
    for _ in range(10):
        game = random_game(rng)
        model = random_ordered_model(rng, game)
        eps = F(1, 8)
        built = build_epsilon_model(model, eps, "proper")
        assert check_proper_ratio(model, built, eps) == []
        report = verify_convergence(model, EpsilonSchedule(F(1, 2), 9), "proper")
        assert report.matches

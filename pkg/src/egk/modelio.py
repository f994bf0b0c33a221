"""JSON formats for games, Kripke models, type models, and events.

Rationals are strings, either an integer like ``"2"`` or ``"p/q"`` in
lowest terms; nothing is ever serialized as a float.  Model and type files
embed their game under the ``"game"`` key so a single file is
self-contained.  All dumps preserve file order, so identical inputs produce
byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .epistemic import LexEpistemicModel, ProbEpistemicModel
from .errors import FormatError
from .games import Game
from .kripke import ProbKripkeModel, StandardKripkeModel
from .ordered import OrderedKripkeModel

KripkeModel = StandardKripkeModel | ProbKripkeModel | OrderedKripkeModel
TypeModel = LexEpistemicModel | ProbEpistemicModel


def parse_rational(text: Any, where: str) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise FormatError(f"{where}: expected a rational string, got {text!r}")
    parts = text.split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            num, den = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"{where}: malformed rational {text!r}")
    if len(parts) != 2:
        raise FormatError(f"{where}: malformed rational {text!r}")
    if den == 0:
        raise FormatError(f"{where}: zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _expect(data: Mapping, key: str, where: str):
    if key not in data:
        raise FormatError(f"{where}: missing key {key!r}")
    return data[key]


def game_from_json(data: Mapping, where: str = "game") -> Game:
    players = _expect(data, "players", where)
    strategies = _expect(data, "strategies", where)
    payoffs_raw = _expect(data, "payoffs", where)
    if len(players) != 2 or len(strategies) != 2:
        raise FormatError(f"{where}: exactly two players are supported")
    strategies = (tuple(strategies[0]), tuple(strategies[1]))
    payoffs = {}
    for s1 in strategies[0]:
        for s2 in strategies[1]:
            key = f"{s1},{s2}"
            if key not in payoffs_raw:
                raise FormatError(f"{where}.payoffs: missing cell {key!r}")
            cell = payoffs_raw[key]
            if len(cell) != 2:
                raise FormatError(f"{where}.payoffs.{key}: expected two payoffs")
            payoffs[(s1, s2)] = (
                parse_rational(cell[0], f"{where}.payoffs.{key}[0]"),
                parse_rational(cell[1], f"{where}.payoffs.{key}[1]"),
            )
    extra = set(payoffs_raw) - {f"{a},{b}" for a in strategies[0] for b in strategies[1]}
    if extra:
        raise FormatError(f"{where}.payoffs: unknown cell {sorted(extra)[0]!r}")
    return Game((players[0], players[1]), strategies, payoffs)


def game_to_json(game: Game) -> dict:
    return {
        "players": list(game.players),
        "strategies": [list(game.strategies[0]), list(game.strategies[1])],
        "payoffs": {
            f"{s1},{s2}": [format_rational(game.payoffs[(s1, s2)][0]),
                           format_rational(game.payoffs[(s1, s2)][1])]
            for s1 in game.strategies[0] for s2 in game.strategies[1]
        },
    }


def _player_maps(data: Mapping, key: str, game: Game, where: str):
    raw = _expect(data, key, where)
    out = []
    for i in (0, 1):
        name = game.players[i]
        if name not in raw:
            raise FormatError(f"{where}.{key}: missing player {name!r}")
        out.append(raw[name])
    return out


def model_from_json(data: Mapping, game: Game | None = None, where: str = "model") -> KripkeModel:
    """Load a standard, probabilistic, or ordered model, by the keys present."""
    if game is None:
        game = game_from_json(_expect(data, "game", where), f"{where}.game")
    worlds = tuple(_expect(data, "worlds", where))
    access_raw = _player_maps(data, "access", game, where)
    sigma_raw = _player_maps(data, "sigma", game, where)
    access = tuple(
        {w: frozenset(access_raw[i].get(w, ())) for w in worlds} for i in (0, 1))
    sigma = tuple({w: sigma_raw[i].get(w) for w in worlds} for i in (0, 1))
    for i in (0, 1):
        for w in worlds:
            if sigma[i][w] is None:
                raise FormatError(f"{where}.sigma: missing world {w!r} for player {game.players[i]!r}")
    base = StandardKripkeModel(game, worlds, access, sigma)
    if "p" in data and "lambda" in data:
        raise FormatError(f"{where}: both 'p' and 'lambda' present; split the file")
    if "p" in data:
        p_raw = _player_maps(data, "p", game, where)
        p = tuple(
            {w: {t: parse_rational(v, f"{where}.p.{game.players[i]}.{w}.{t}")
                 for t, v in p_raw[i].get(w, {}).items()}
             for w in worlds}
            for i in (0, 1))
        return ProbKripkeModel(base, p)
    if "lambda" in data:
        lam_raw = _player_maps(data, "lambda", game, where)
        lam = []
        for i in (0, 1):
            per = {}
            for w in worlds:
                if w not in lam_raw[i]:
                    raise FormatError(f"{where}.lambda: missing world {w!r} for player {game.players[i]!r}")
                levels = lam_raw[i][w]
                per[w] = tuple(
                    {t: parse_rational(v, f"{where}.lambda.{game.players[i]}.{w}[{k}].{t}")
                     for t, v in level.items()}
                    for k, level in enumerate(levels))
            lam.append(per)
        return OrderedKripkeModel(base, tuple(lam))
    return base


def model_to_json(model: KripkeModel) -> dict:
    base = model.base if isinstance(model, (ProbKripkeModel, OrderedKripkeModel)) else model
    game = base.game
    out: dict = {
        "game": game_to_json(game),
        "worlds": list(base.worlds),
        "access": {
            game.players[i]: {w: [t for t in base.worlds if t in base.access[i][w]]
                              for w in base.worlds}
            for i in (0, 1)
        },
        "sigma": {
            game.players[i]: {w: base.sigma[i][w] for w in base.worlds} for i in (0, 1)
        },
    }
    if isinstance(model, ProbKripkeModel):
        out["p"] = {
            game.players[i]: {
                w: {t: format_rational(v) for t, v in model.p[i][w].items()}
                for w in base.worlds}
            for i in (0, 1)
        }
    if isinstance(model, OrderedKripkeModel):
        out["lambda"] = {
            game.players[i]: {
                w: [{t: format_rational(v) for t, v in level.items()}
                    for level in model.lam[i][w]]
                for w in base.worlds}
            for i in (0, 1)
        }
    return out


def _parse_pair(key: str, where: str) -> tuple[str, str]:
    parts = key.split(",")
    if len(parts) != 2:
        raise FormatError(f"{where}: expected 'strategy,type', got {key!r}")
    return parts[0], parts[1]


def types_from_json(data: Mapping, game: Game | None = None, where: str = "types") -> TypeModel:
    """Load a type model; a belief given as a list of levels is lexicographic."""
    if game is None:
        game = game_from_json(_expect(data, "game", where), f"{where}.game")
    types_raw = _expect(data, "types", where)
    if len(types_raw) != 2:
        raise FormatError(f"{where}.types: expected two type lists")
    types = (tuple(types_raw[0]), tuple(types_raw[1]))
    beliefs_raw = _player_maps(data, "beliefs", game, where)
    lex = None
    parsed = []
    for i in (0, 1):
        per = {}
        for t in types[i]:
            if t not in beliefs_raw[i]:
                raise FormatError(f"{where}.beliefs: missing type {t!r}")
            entry = beliefs_raw[i][t]
            entry_is_lex = isinstance(entry, list)
            if lex is None:
                lex = entry_is_lex
            elif lex != entry_is_lex:
                raise FormatError(f"{where}.beliefs: mixing single and level-list beliefs")
            levels = entry if entry_is_lex else [entry]
            fixed = []
            for k, level in enumerate(levels):
                spot = f"{where}.beliefs.{game.players[i]}.{t}[{k}]"
                fixed.append({
                    _parse_pair(pair, spot): parse_rational(v, f"{spot}.{pair}")
                    for pair, v in level.items()})
            per[t] = tuple(fixed) if entry_is_lex else fixed[0]
        parsed.append(per)
    if lex:
        return LexEpistemicModel(game, types, (parsed[0], parsed[1]))
    return ProbEpistemicModel(game, types, (parsed[0], parsed[1]))


def types_to_json(model: TypeModel) -> dict:
    game = model.game
    beliefs: dict = {}
    for i in (0, 1):
        per = {}
        for t in model.types[i]:
            if isinstance(model, LexEpistemicModel):
                per[t] = [
                    {f"{s},{tj}": format_rational(v) for (s, tj), v in level.items()}
                    for level in model.beliefs[i][t]]
            else:
                per[t] = {
                    f"{s},{tj}": format_rational(v)
                    for (s, tj), v in model.beliefs[i][t].items()}
        beliefs[game.players[i]] = per
    return {
        "game": game_to_json(game),
        "types": [list(model.types[0]), list(model.types[1])],
        "beliefs": beliefs,
    }


def event_from_json(data: Mapping, where: str = "event") -> tuple[str, ...]:
    return tuple(_expect(data, "worlds", where))


def event_to_json(worlds) -> dict:
    return {"worlds": list(worlds)}


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def load_file(path: str) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise FormatError(f"{path}: no such file")
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})")

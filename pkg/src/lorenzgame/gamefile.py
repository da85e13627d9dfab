"""Reading and writing game files.

A game file is a JSON object::

    {"n": 3, "v": {"1": 40, "2": 60, "3": 80, "1,2": 110, ...}}

Keys of ``"v"`` list 1-based players in strictly ascending order, separated
by commas.  Every nonempty coalition appears exactly once and the empty
coalition is never listed.  An optional ``"note"`` string is carried along
for humans and otherwise ignored.
"""
from __future__ import annotations

import json
import re
from typing import Optional

from .errors import GameFileError
from .game import INT64_MAX, INT64_MIN, MAX_PLAYERS, Game, format_coalition

_KEY = re.compile(r"[1-9][0-9]*(,[1-9][0-9]*)*\Z")
_TOP_KEYS = {"n", "v", "note"}


class _Duplicate(Exception):
    def __init__(self, key):
        self.key = key


def _no_duplicates(pairs):
    seen = {}
    for k, v in pairs:
        if k in seen:
            raise _Duplicate(k)
        seen[k] = v
    return seen


def _locate(text: str, key: str, occurrence: int = 1):
    """Line and column (1-based) of the ``occurrence``-th ``"key"`` in ``text``."""
    needle = json.dumps(key)
    pos = -1
    for _ in range(occurrence):
        pos = text.find(needle, pos + 1)
        if pos < 0:
            return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def _fail(text, message, key=None, occurrence=1):
    line, col = _locate(text, key, occurrence) if key is not None else (None, None)
    raise GameFileError(message, line, col)


def _integer(value, what: str, text: str, key: Optional[str]) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(text, f"{what} must be an integer, got {json.dumps(value)}", key)
    if not INT64_MIN <= value <= INT64_MAX:
        _fail(text, f"{what} = {value} is outside the signed 64-bit range", key)
    return value


def parse_coalition(key: str, n: int) -> int:
    """Mask of a coalition written as ascending 1-based ids (``"1,3"``)."""
    if not _KEY.match(key):
        raise ValueError(f"malformed coalition {key!r}: expected ascending ids like '1,3'")
    ids = [int(p) for p in key.split(",")]
    if any(a >= b for a, b in zip(ids, ids[1:])):
        raise ValueError(f"coalition {key!r} must list players in strictly ascending order")
    if ids[-1] > n:
        raise ValueError(f"coalition {key!r} names player {ids[-1]} but n = {n}")
    mask = 0
    for p in ids:
        mask |= 1 << (p - 1)
    return mask


def parse_payoff(text: str) -> tuple:
    """A comma-separated integer vector such as ``"60,70,80"``."""
    parts = [p.strip() for p in text.split(",")]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"malformed payoff vector {text!r}: expected integers like '60,70,80'")


def parse_game(text: str) -> Game:
    """Parse game-file text into a :class:`Game`; raises :class:`GameFileError`."""
    try:
        data = json.loads(text, object_pairs_hook=_no_duplicates)
    except _Duplicate as dup:
        _fail(text, f"duplicate key {dup.key!r}", dup.key, occurrence=2)
    except json.JSONDecodeError as exc:
        raise GameFileError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise GameFileError("top level must be a JSON object with keys 'n' and 'v'")
    extra = sorted(set(data) - _TOP_KEYS)
    if extra:
        _fail(text, f"unexpected key {extra[0]!r}", extra[0])
    if "n" not in data or "v" not in data:
        raise GameFileError("game file needs both 'n' and 'v'")
    if "note" in data and not isinstance(data["note"], str):
        _fail(text, "'note' must be a string", "note")
    n = _integer(data["n"], "n", text, "n")
    if not 1 <= n <= MAX_PLAYERS:
        _fail(text, f"n must be between 1 and {MAX_PLAYERS}, got {n}", "n")
    values = data["v"]
    if not isinstance(values, dict):
        _fail(text, "'v' must be an object mapping coalitions to worths", "v")
    worth = [None] * (1 << n)
    worth[0] = 0
    for key, value in values.items():
        if key.strip() in ("", "∅", "{}"):
            _fail(text, "the empty coalition must not be listed (its worth is 0)", key)
        try:
            mask = parse_coalition(key, n)
        except ValueError as exc:
            _fail(text, str(exc), key)
        worth[mask] = _integer(value, f"v({key})", text, key)
    missing = [m for m, w in enumerate(worth) if w is None]
    if missing:
        raise GameFileError(f"missing coalition \"{format_coalition(missing[0])}\""
                            f" ({len(missing)} of {(1 << n) - 1} absent)")
    return Game(n, tuple(worth))


def read_game(path: str) -> Game:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def game_to_dict(g: Game, note: Optional[str] = None) -> dict:
    out = {"n": g.n, "v": {format_coalition(m): g.worth[m] for m in _file_order(g.n)}}
    if note:
        out["note"] = note
    return out


def dump_game(g: Game, note: Optional[str] = None) -> str:
    """Game-file text; coalitions by size, then by ascending player ids."""
    return json.dumps(game_to_dict(g, note), indent=2, ensure_ascii=False) + "\n"


def _file_order(n: int) -> list:
    return sorted(range(1, 1 << n),
                  key=lambda m: (bin(m).count("1"), [i for i in range(n) if m >> i & 1]))

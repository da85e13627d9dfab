"""Integer-valued cooperative games with bitmask-indexed coalitions.

Players are numbered ``0 .. n-1`` and a coalition is an ``int`` whose bit
``i`` says whether player ``i`` belongs to it.  The grand coalition of an
``n``-player game is ``(1 << n) - 1`` and the empty coalition is ``0``.

A :class:`Game` stores the worth of every coalition in a tuple indexed by
mask.  Games derived from other games (restrictions, reduced games) carry a
``labels`` tuple mapping their player indices back to the 0-based players of
the game they were built from.
"""
from __future__ import annotations

import operator
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .errors import ContractError, InvalidGameError, WorthOverflowError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1
MAX_PLAYERS = 16

Payoff = tuple  # tuple[int, ...], one entry per player


# -- coalition helpers -------------------------------------------------------

def mask_of(players: Iterable[int]) -> int:
    """Bitmask of a collection of 0-based player indices."""
    mask = 0
    for p in players:
        mask |= 1 << p
    return mask


def members(mask: int) -> list[int]:
    """Sorted 0-based players of a coalition."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask`` (including 0 and ``mask``), ascending."""
    bits = members(mask)
    for k in range(1 << len(bits)):
        yield expand_mask(k, bits)


def expand_mask(local: int, positions: Sequence[int]) -> int:
    """Map a mask over ``range(len(positions))`` onto the given positions."""
    out = 0
    for idx, pos in enumerate(positions):
        if local >> idx & 1:
            out |= 1 << pos
    return out


def format_coalition(mask: int, labels: Optional[Sequence[int]] = None) -> str:
    """1-based, comma separated, e.g. ``"2,3"``; the empty set is ``"{}"``."""
    players = members(mask)
    if labels is not None:
        players = [labels[p] for p in players]
    if not players:
        return "{}"
    return ",".join(str(p + 1) for p in players)


def check_int64(value: int, what: str = "value") -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise WorthOverflowError(f"{what} = {value} is outside the signed 64-bit range")
    return value


def _as_int(value, what: str) -> int:
    if isinstance(value, bool):
        raise InvalidGameError(f"{what} must be an integer, got a bool")
    try:
        return operator.index(value)
    except TypeError:
        raise InvalidGameError(f"{what} must be an integer, got {value!r}") from None


# -- the game ----------------------------------------------------------------

@dataclass(frozen=True)
class Game:
    """An ``n``-player game with an exact integer worth for every coalition.

    Parameters
    ----------
    n : int
        Number of players, ``1 <= n <= 16``.
    worth : sequence of int
        ``worth[mask]`` is the value of the coalition encoded by ``mask``;
        ``len(worth) == 2**n`` and ``worth[0] == 0``.
    labels : tuple of int, optional
        Original 0-based player indices of this game's players.  Defaults to
        ``(0, ..., n-1)``.
    """

    n: int
    worth: tuple
    labels: tuple = field(default=None, compare=False)

    def __post_init__(self):
        n = _as_int(self.n, "n")
        if not 1 <= n <= MAX_PLAYERS:
            raise InvalidGameError(f"n must be between 1 and {MAX_PLAYERS}, got {n}")
        worth = tuple(_as_int(w, "worth") for w in self.worth)
        if len(worth) != 1 << n:
            raise InvalidGameError(
                f"expected {1 << n} coalition worths for n={n}, got {len(worth)}"
            )
        if worth[0] != 0:
            raise InvalidGameError("the empty coalition must have worth 0")
        for mask, w in enumerate(worth):
            check_int64(w, f"v({format_coalition(mask)})")
        labels = tuple(range(n)) if self.labels is None else tuple(self.labels)
        if len(labels) != n:
            raise InvalidGameError("labels must name every player exactly once")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "worth", worth)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_function(cls, n: int, f: Callable[[frozenset], int], labels=None) -> "Game":
        """Build a game from ``f(frozenset_of_players)``; ``f`` is not called on the empty set."""
        worth = [0] + [f(frozenset(members(m))) for m in range(1, 1 << n)]
        return cls(n, tuple(worth), labels)

    @classmethod
    def from_mapping(cls, n: int, values: Mapping[Iterable[int], int]) -> "Game":
        """Build a game from ``{players: worth}`` with 0-based player collections.

        Every nonempty coalition must be present.
        """
        worth = [None] * (1 << n)
        worth[0] = 0
        for players, w in values.items():
            m = mask_of(players)
            if m == 0:
                raise InvalidGameError("the empty coalition must not be listed")
            if m >= 1 << n:
                raise InvalidGameError(f"coalition {sorted(players)} has players outside 0..{n - 1}")
            if worth[m] is not None:
                raise InvalidGameError(f"coalition {format_coalition(m)} given twice")
            worth[m] = w
        missing = [m for m, w in enumerate(worth) if w is None]
        if missing:
            raise InvalidGameError(f"missing coalition {format_coalition(missing[0])}")
        return cls(n, tuple(worth))

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    def __call__(self, mask: int) -> int:
        return self.worth[mask]

    def value(self, players: Iterable[int]) -> int:
        """Worth of the coalition formed by 0-based ``players``."""
        return self.worth[mask_of(players)]

    def restrict(self, s: int) -> "Game":
        """The subgame on coalition ``s``, players relabeled in ascending order."""
        s = _check_coalition(self, s, allow_grand=True)
        if s == self.grand:
            return self
        pos = members(s)
        worth = tuple(self.worth[expand_mask(t, pos)] for t in range(1 << len(pos)))
        return Game(len(pos), worth, tuple(self.labels[p] for p in pos))

    def worth_array(self) -> np.ndarray:
        return np.array(self.worth, dtype=np.int64)

    def __repr__(self):
        return f"Game(n={self.n}, worth={self.worth!r})"


def _check_coalition(g: Game, s: int, allow_grand: bool = True) -> int:
    s = operator.index(s)
    if s <= 0:
        raise ContractError("coalition must be nonempty")
    if s > g.grand:
        raise ContractError(f"coalition mask {s} has players outside the {g.n}-player game")
    if not allow_grand and s == g.grand:
        raise ContractError("coalition must be a proper subset of the grand coalition")
    return s


def check_payoff(x, length: int) -> Payoff:
    """Coerce ``x`` to a tuple of ints and check its length."""
    try:
        out = tuple(operator.index(v) for v in x)
    except TypeError:
        raise ContractError(f"payoff entries must be integers, got {x!r}") from None
    if len(out) != length:
        raise ContractError(f"payoff has {len(out)} entries, expected {length}")
    return out


# -- predicates ---------------------------------------------------------------

@dataclass(frozen=True)
class SupermodularityReport:
    holds: bool
    witness: Optional[tuple] = None  # (S mask, T mask) with v(S)+v(T) > v(S|T)+v(S&T)

    def __bool__(self):
        return self.holds


def is_supermodular(g: Game) -> SupermodularityReport:
    """Check ``v(S) + v(T) <= v(S | T) + v(S & T)`` for all coalitions.

    The fast path uses the local criterion on pairs of players outside a
    coalition.  When it fails, the lexicographically first violating pair
    ``(S, T)`` by mask is located by a direct scan.
    """
    w = np.array(g.worth, dtype=object)
    masks = np.arange(1 << g.n)
    violated = False
    for i in range(g.n):
        for j in range(i + 1, g.n):
            base = masks[(masks >> i & 1 == 0) & (masks >> j & 1 == 0)]
            lhs = w[base | 1 << i] + w[base | 1 << j]
            rhs = w[base | 1 << i | 1 << j] + w[base]
            if np.any(lhs > rhs):
                violated = True
                break
        if violated:
            break
    if not violated:
        return SupermodularityReport(True)
    for s in range(1 << g.n):
        bad = w[s] + w > w[s | masks] + w[s & masks]
        if bad.any():
            return SupermodularityReport(False, (s, int(np.argmax(bad))))
    raise AssertionError("local criterion found a violation the full scan did not")


def is_feasible_payoff(g: Game, x) -> bool:
    x = check_payoff(x, g.n)
    return all(v >= 0 for v in x) and sum(x) <= g.worth[g.grand]


def is_imputation(g: Game, x) -> bool:
    x = check_payoff(x, g.n)
    return sum(x) == g.worth[g.grand] and all(x[i] >= g.worth[1 << i] for i in range(g.n))


def coalition_sum(x: Sequence[int], mask: int) -> int:
    return sum(x[i] for i in members(mask))


# -- constructions -----------------------------------------------------------

def marginal_vector(g: Game, order: Sequence[int]) -> Payoff:
    """Greedy marginal contributions along ``order`` (0-based players).

    For a supermodular game this is a vertex of the core.
    """
    order = [operator.index(p) for p in order]
    if sorted(order) != list(range(g.n)):
        raise ContractError(f"order {order} is not a permutation of 0..{g.n - 1}")
    x = [0] * g.n
    prefix = 0
    for p in order:
        x[p] = g.worth[prefix | 1 << p] - g.worth[prefix]
        prefix |= 1 << p
    return tuple(check_int64(v, "marginal contribution") for v in x)


def reduced_game(g: Game, s: int, x) -> Game:
    """Davis-Maschler reduced game on ``s`` with respect to payoff ``x``.

    Outsiders are paid according to ``x``; a proper subcoalition ``T`` of
    ``s`` may recruit any set ``Q`` of outsiders at cost ``x(Q)``.  Players
    of ``s`` keep their relative order; ``result.labels`` maps the new
    indices to the players of the original game.
    """
    s = _check_coalition(g, s, allow_grand=False)
    x = check_payoff(x, g.n)
    inside = members(s)
    outside = members(g.grand & ~s)
    q_masks = [expand_mask(k, outside) for k in range(1 << len(outside))]
    q_costs = [coalition_sum(x, q) for q in q_masks]
    k = len(inside)
    worth = [0] * (1 << k)
    for t in range(1, (1 << k) - 1):
        tm = expand_mask(t, inside)
        worth[t] = max(g.worth[tm | q] - c for q, c in zip(q_masks, q_costs))
    worth[(1 << k) - 1] = g.worth[g.grand] - coalition_sum(x, g.grand & ~s)
    for t, w in enumerate(worth):
        check_int64(w, "reduced worth")
    return Game(k, tuple(worth), tuple(g.labels[p] for p in inside))


def additive_game(a: Sequence[int]) -> Game:
    """The modular game ``v(S) = sum(a[i] for i in S)``."""
    a = [operator.index(v) for v in a]
    return Game.from_function(len(a), lambda S: sum(a[i] for i in S))


def random_supermodular_game(seed: int, n: int, weight_bound: int,
                             synergy_bound: Optional[int] = None) -> Game:
    """A reproducible random convex game.

    ``v(S) = sum_{i in S} a_i + sum_{T subset S, |T| >= 2} w_T`` with
    ``a_i`` uniform on ``[-weight_bound, weight_bound]`` and ``w_T`` uniform
    on ``[0, synergy_bound]`` (``synergy_bound`` defaults to
    ``weight_bound``; pass 0 for an additive game).
    """
    if not 2 <= n <= 8:
        raise ContractError(f"n must be between 2 and 8, got {n}")
    if weight_bound < 1:
        raise ContractError("weight_bound must be at least 1")
    if synergy_bound is None:
        synergy_bound = weight_bound
    if synergy_bound < 0:
        raise ContractError("synergy_bound must be nonnegative")
    rng = random.Random(seed)
    a = [rng.randint(-weight_bound, weight_bound) for _ in range(n)]
    w = [0] * (1 << n)
    for t in range(1, 1 << n):
        if popcount(t) >= 2:
            w[t] = rng.randint(0, synergy_bound)
    # zeta transform: v(S) = modular part + sum of w over subsets of S
    total = list(w)
    for i in range(n):
        bit = 1 << i
        for m in range(1 << n):
            if m & bit:
                total[m] += total[m ^ bit]
    worth = [total[m] + sum(a[i] for i in members(m)) for m in range(1 << n)]
    return Game(n, tuple(worth))


def random_game(seed: int, n: int, weight_bound: int, noise: int = 2) -> Game:
    """A reproducible random integer game, usually not convex.

    A random convex game whose nonempty worths are each perturbed by a
    uniform integer in ``[-noise, noise]``; cores are often nonempty, which
    keeps the consistency checks non-vacuous.
    """
    base = random_supermodular_game(seed, n, weight_bound)
    rng = random.Random(f"noise:{seed}")
    worth = [0] + [w + rng.randint(-noise, noise) for w in base.worth[1:]]
    return Game(n, tuple(worth))

"""The core of an integer game as an M-convex set.

For a convex (supermodular) game ``v`` the integer core is the M-convex set
``{x in Z^N : x(N) = v(N), x(S) >= v(S)}``.  This module enumerates it,
searches it for decreasingly-minimal (dec-min) elements by 1-tightening
steps, computes the canonical chain and partition that describe every dec-min
element, and builds the Lorenz stable set.

All enumeration is exponential in the number of players and is guarded by a
candidate budget.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import (BudgetExceededError, ContractError, InternalConsistencyError,
                     NotSupermodularError)
from .game import (Game, _check_coalition, check_payoff, expand_mask, format_coalition,
                   is_supermodular, marginal_vector, members, popcount)
from .orders import lorenz_filter
from .vectors import VectorSet, safe_dtype

DEFAULT_BUDGET = 10**7


def _require_supermodular(g: Game):
    report = is_supermodular(g)
    if not report.holds:
        s, t = report.witness
        raise NotSupermodularError(
            f"game is not supermodular: v({format_coalition(s)}) + v({format_coalition(t)})"
            f" > v({format_coalition(s | t)}) + v({format_coalition(s & t)})"
        )


# -- enumeration -------------------------------------------------------------

def _worths(g: Game, extra: int = 0) -> np.ndarray:
    dtype = safe_dtype(*g.worth, extra, terms=2 * g.n + 2)
    return np.array(g.worth, dtype=dtype)


def enumerate_base(g: Game, lower: Optional[Sequence[int]] = None,
                   upper: Optional[Sequence[int]] = None,
                   budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All integer points of the core of ``g`` (optionally inside a box).

    Players are fixed one at a time.  When player ``k`` is chosen, every
    coalition ``T`` whose largest member is ``k`` gets its lower bound
    ``x(T) >= v(T)`` enforced exactly, and the implied upper bound
    ``x(T) <= v(N) - v(N - T)`` prunes the search.  Rows come out in
    lexicographic order.  ``budget`` caps the total number of partial and
    complete candidates generated.
    """
    n, full = g.n, g.grand
    total_worth = g.worth[full]
    box = [abs(b) for b in (lower or ())] + [abs(b) for b in (upper or ())]
    W = _worths(g, max(box, default=0))
    dtype = W.dtype
    F = np.zeros((1, 0), dtype=dtype)
    PS = np.zeros((1, 1), dtype=dtype)  # PS[:, t] = x(t) for t over assigned players
    generated = 0
    for k in range(n - 1):
        bit = 1 << k
        prev = np.arange(1 << k)
        lo = (W[prev | bit] - PS).max(axis=1)
        cap = total_worth - W[full ^ (prev | bit)]
        hi = (cap - PS).min(axis=1)
        if lower is not None:
            lo = np.maximum(lo, lower[k])
        if upper is not None:
            hi = np.minimum(hi, upper[k])
        counts = np.maximum(hi - lo + 1, 0)
        size = int(counts.sum())
        generated += size
        if generated > budget:
            raise BudgetExceededError(generated, budget)
        counts = counts.astype(np.int64)
        rep = np.repeat(np.arange(len(F)), counts)
        start = np.repeat(np.cumsum(counts) - counts, counts)
        col = lo[rep] + (np.arange(size) - start).astype(dtype)
        F = np.concatenate([F[rep], col[:, None]], axis=1)
        PS = PS[rep]
        PS = np.concatenate([PS, PS + col[:, None]], axis=1)
    # The last coordinate is forced by efficiency.  Every constraint on a
    # coalition containing it is the complement of an upper bound enforced
    # above, so only the optional box can still cut.
    last = total_worth - PS[:, -1]
    keep = np.ones(len(F), dtype=bool)
    if lower is not None:
        keep &= last >= lower[n - 1]
    if upper is not None:
        keep &= last <= upper[n - 1]
    if n == 1:
        keep &= last >= W[1]
    generated += int(keep.sum())
    if generated > budget:
        raise BudgetExceededError(generated, budget)
    F = np.concatenate([F[keep], last[keep, None]], axis=1)
    return F


def core_enumerate(g: Game, s: Optional[int] = None, budget: int = DEFAULT_BUDGET) -> VectorSet:
    """Integer core of coalition ``s`` (default: the grand coalition).

    Vectors list the members of ``s`` in ascending player order.  Games
    with an empty core give an empty set.
    """
    h = g if s is None else g.restrict(s)
    return VectorSet.from_array(enumerate_base(h, budget=budget), presorted=True)


@dataclass(frozen=True)
class CoreViolation:
    """A core constraint that fails: ``x(coalition) < v(coalition)``, or the sum is off."""

    coalition: int  # mask in the indexing of the game passed in
    payoff_sum: int
    worth: int
    kind: str  # "coalition" or "efficiency"
    labels: tuple = ()

    def __str__(self):
        c = "{" + format_coalition(self.coalition, self.labels or None) + "}"
        if self.kind == "efficiency":
            return f"x({c}) = {self.payoff_sum} != {self.worth} = v({c})"
        return f"x({c}) = {self.payoff_sum} < {self.worth} = v({c})"


def _subset_sums(x: Sequence[int]) -> list:
    sums = [0] * (1 << len(x))
    for m in range(1, len(sums)):
        low = m & -m
        sums[m] = sums[m ^ low] + x[low.bit_length() - 1]
    return sums


def core_violation(g: Game, s: Optional[int], x) -> Optional[CoreViolation]:
    """First violated core constraint for ``x`` on coalition ``s``, if any.

    The efficiency constraint is checked first, then proper subcoalitions in
    ascending mask order.
    """
    s = g.grand if s is None else _check_coalition(g, s)
    pos = members(s)
    x = check_payoff(x, len(pos))
    sums = _subset_sums(x)
    k = len(pos)
    full = (1 << k) - 1
    if sums[full] != g.worth[s]:
        return CoreViolation(s, sums[full], g.worth[s], "efficiency", g.labels)
    for t in range(1, full):
        tm = expand_mask(t, pos)
        if sums[t] < g.worth[tm]:
            return CoreViolation(tm, sums[t], g.worth[tm], "coalition", g.labels)
    return None


def core_membership(g: Game, s: Optional[int], x) -> bool:
    """``x(s) = v(s)`` and ``x(T) >= v(T)`` for every ``T`` strictly inside ``s``."""
    return core_violation(g, s, x) is None


# -- 1-tightening ------------------------------------------------------------

@dataclass(frozen=True)
class Tightening:
    """Move one unit from player ``j`` to player ``i``."""

    i: int
    j: int

    def apply(self, x) -> tuple:
        x = list(x)
        x[self.i] += 1
        x[self.j] -= 1
        return tuple(x)


def find_tightening(g: Game, x) -> Optional[Tightening]:
    """A 1-tightening step for core vector ``x``, or ``None``.

    Candidate pairs need ``x[j] >= x[i] + 2``; they are tried by decreasing
    gap ``x[j] - x[i]`` and then lexicographically by ``(j, i)``.  Each
    candidate is accepted only after a full core membership check.
    """
    x = check_payoff(x, g.n)
    if not core_membership(g, None, x):
        raise ContractError(f"{x} is not in the core")
    pairs = [(x[j] - x[i], j, i) for j in range(g.n) for i in range(g.n)
             if i != j and x[j] >= x[i] + 2]
    pairs.sort(key=lambda p: (-p[0], p[1], p[2]))
    for _, j, i in pairs:
        step = Tightening(i, j)
        if core_membership(g, None, step.apply(x)):
            return step
    return None


def tightening_free(g: Game, X: np.ndarray, chunk: int = 1 << 16) -> np.ndarray:
    """Boolean mask: rows of core array ``X`` admitting no 1-tightening step.

    Batch route: moving a unit from ``j`` to ``i`` leaves the core exactly
    when some tight coalition (``x(T) = v(T)``) contains ``j`` but not ``i``.
    """
    n = g.n
    masks = np.arange(1 << n)
    W = np.array(g.worth, dtype=X.dtype)
    out = np.ones(len(X), dtype=bool)
    for lo in range(0, len(X), chunk):
        Y = X[lo:lo + chunk]
        sums = np.zeros((len(Y), 1), dtype=X.dtype)
        for k in range(n):
            sums = np.concatenate([sums, sums + Y[:, k:k + 1]], axis=1)
        tight = sums == W
        movable = np.zeros(len(Y), dtype=bool)
        for j in range(n):
            for i in range(n):
                if i == j:
                    continue
                gap = Y[:, j] - Y[:, i] >= 2
                if not gap.any():
                    continue
                cols = np.flatnonzero((masks >> j & 1 == 1) & (masks >> i & 1 == 0))
                rows = np.flatnonzero(gap & ~movable)
                blocked = tight[np.ix_(rows, cols)].any(axis=1)
                movable[rows[~blocked]] = True
        out[lo:lo + chunk] = ~movable
    return out


def dec_min_by_tightening(g: Game) -> tuple:
    """A dec-min core element, reached by 1-tightening from a greedy vertex.

    Starts at the marginal vector of the identity order and applies
    :func:`find_tightening` until none exists.
    """
    _require_supermodular(g)
    x = marginal_vector(g, range(g.n))
    while (step := find_tightening(g, x)) is not None:
        x = step.apply(x)
    return x


def dec_min_set_by_tightening(g: Game, budget: int = DEFAULT_BUDGET) -> VectorSet:
    """Core points with no 1-tightening step (batch route over the enumerated core)."""
    X = enumerate_base(g, budget=budget)
    return VectorSet.from_array(X[tightening_free(g, X)], presorted=True)


# -- canonical chain and partition -------------------------------------------

@dataclass(frozen=True)
class CanonicalDecomposition:
    """Essential value-sequence, canonical chain and canonical partition (masks)."""

    beta: tuple
    chain: tuple
    partition: tuple

    def __post_init__(self):
        if any(a <= b for a, b in zip(self.beta, self.beta[1:])):
            raise InternalConsistencyError(f"beta {self.beta} is not strictly decreasing")
        prev = 0
        for c, s in zip(self.chain, self.partition):
            if s == 0 or c != prev | s or prev & s:
                raise InternalConsistencyError("chain and partition do not match")
            prev = c

    def block_of(self, player: int) -> int:
        for k, s in enumerate(self.partition):
            if s >> player & 1:
                return k
        raise ValueError(f"player {player} is in no block")


def _smallest_maximizer(values: dict) -> int:
    """Smallest maximizer of a set function given as ``{mask: value}``.

    For supermodular objectives the maximizers are closed under
    intersection, so the minimum-cardinality maximizer is unique and lies
    inside every maximizer; both facts are checked.
    """
    best = max(values.values())
    argmax = [m for m, val in values.items() if val == best]
    smallest = min(argmax, key=popcount)
    for m in argmax:
        if m & smallest != smallest:
            raise InternalConsistencyError(
                f"maximizers {format_coalition(m)} and {format_coalition(smallest)}"
                " are not nested; the smallest maximizer is not unique"
            )
    return smallest


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def canonical_decomposition(g: Game) -> CanonicalDecomposition:
    """Canonical chain/partition by the iterative construction.

    With ``C`` the union of the blocks found so far::

        beta_k = max over nonempty X outside C of ceil((g(X|C) - g(C)) / |X|)
        h_k(X) = g(X|C) - (beta_k - 1)|X| - g(C)
        S_k    = smallest X outside C maximizing h_k
    """
    _require_supermodular(g)
    w = g.worth
    chain, partition, beta = [], [], []
    c = 0
    while c != g.grand:
        rest = list(submasks_outside(g, c))
        b = max(_ceil_div(w[x | c] - w[c], popcount(x)) for x in rest if x)
        h = {x: w[x | c] - (b - 1) * popcount(x) - w[c] for x in rest}
        s = _smallest_maximizer(h)
        if s == 0:
            raise InternalConsistencyError("empty block in canonical partition")
        beta.append(b)
        partition.append(s)
        c |= s
        chain.append(c)
    return CanonicalDecomposition(tuple(beta), tuple(chain), tuple(partition))


def submasks_outside(g: Game, c: int):
    pos = members(g.grand & ~c)
    for k in range(1 << len(pos)):
        yield expand_mask(k, pos)


def threshold_maximizer(g: Game, beta: int) -> int:
    """Smallest maximizer of ``g(X) - beta * |X|`` over all coalitions."""
    return _smallest_maximizer({x: g.worth[x] - beta * popcount(x) for x in range(1 << g.n)})


def canonical_decomposition_by_threshold(g: Game) -> CanonicalDecomposition:
    """Canonical chain/partition from the breakpoints of ``L(beta)``.

    ``L(beta)`` is the smallest maximizer of ``g(X) - beta|X|``; it shrinks
    as ``beta`` grows.  The essential values are the integers ``beta`` with
    ``L(beta) != L(beta - 1)``, found by bisection, and ``C_k = L(beta_k - 1)``.
    """
    _require_supermodular(g)
    w, full, n = g.worth, g.grand, g.n
    hi = max(_ceil_div(w[x], popcount(x)) for x in range(1, full + 1))
    lo = min(_ceil_div(w[full] - w[x], n - popcount(x)) for x in range(full)) - 1
    cache = {}

    def L(b):
        if b not in cache:
            cache[b] = threshold_maximizer(g, b)
        return cache[b]

    if L(hi) != 0 or L(lo) != full:
        raise InternalConsistencyError("threshold bracket does not span empty..full")
    breaks = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        if L(a) == L(b):
            continue
        if b == a + 1:
            breaks.append(b)
            continue
        mid = (a + b) // 2
        stack += [(a, mid), (mid, b)]
    beta = sorted(breaks, reverse=True)
    chain = [L(b - 1) for b in beta]
    partition = [c ^ p for c, p in zip(chain, [0] + chain[:-1])]
    return CanonicalDecomposition(tuple(beta), tuple(chain), tuple(partition))


def block_game(g: Game, dec: CanonicalDecomposition, k: int) -> Game:
    """The game on block ``S_k``: ``X -> g(X | C_{k-1}) - g(C_{k-1})``."""
    prev = dec.chain[k - 1] if k else 0
    pos = members(dec.partition[k])
    worth = tuple(g.worth[expand_mask(t, pos) | prev] - g.worth[prev]
                  for t in range(1 << len(pos)))
    return Game(len(pos), worth, tuple(g.labels[p] for p in pos))


def dec_min_set_structural(g: Game, dec: Optional[CanonicalDecomposition] = None,
                           budget: int = DEFAULT_BUDGET) -> VectorSet:
    """Every dec-min core element, as a direct sum of per-block sets.

    Block ``k`` contributes the integer points of its block game's base
    polyhedron inside the box ``beta_k - 1 <= x_i <= beta_k``.
    """
    if dec is None:
        dec = canonical_decomposition(g)
    parts = []
    count = 1
    for k, b in enumerate(dec.beta):
        h = block_game(g, dec, k)
        pts = enumerate_base(h, [b - 1] * h.n, [b] * h.n, budget=budget)
        parts.append((members(dec.partition[k]), [tuple(int(v) for v in row) for row in pts]))
        count *= len(pts)
        if count > budget:
            raise BudgetExceededError(count, budget)
    out = []
    for combo in itertools.product(*(p for _, p in parts)):
        x = [0] * g.n
        for (pos, _), block in zip(parts, combo):
            for p, v in zip(pos, block):
                x[p] = v
        out.append(x)
    return VectorSet(out, dim=g.n)


# -- Lorenz stable set ---------------------------------------------------------

@lru_cache(maxsize=4096)
def _lss_cached(g: Game, budget: int) -> VectorSet:
    result = lorenz_filter(core_enumerate(g, budget=budget))
    if is_supermodular(g).holds:
        structural = dec_min_set_structural(g, budget=budget)
        if structural != result:
            raise InternalConsistencyError(
                f"Lorenz filter {result} disagrees with structural dec-min set {structural}"
            )
    return result


def lss(g: Game, budget: int = DEFAULT_BUDGET) -> VectorSet:
    """Lorenz stable set: core elements no other core element Lorenz-dominates.

    For convex games the result is cross-checked against the structural
    dec-min set; a disagreement raises :class:`InternalConsistencyError`.
    For other games only the filter definition is evaluated.
    """
    return _lss_cached(g, budget)

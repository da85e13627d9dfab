"""Lorenz cores, discrete egalitarian solutions and the Dutta-Ray algorithm.

The Lorenz core ``L(S)`` is built bottom-up over coalitions.  A singleton's
Lorenz core is its worth; a larger coalition keeps every efficient integer
vector ``x`` unless some proper subcoalition ``T`` has an egalitarian
allocation ``y`` in ``E(L(T))`` with ``y > x_T`` componentwise (all entries at
least as large, one strictly larger).  Note that the exclusion uses the
componentwise order, not Lorenz domination.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import BudgetExceededError, InternalConsistencyError
from .game import Game, _check_coalition, expand_mask, members, popcount
from .mconvex import DEFAULT_BUDGET, _require_supermodular
from .orders import lorenz_filter
from .vectors import VectorSet, safe_dtype


def box_sum_points(lower, upper, total, budget=DEFAULT_BUDGET) -> np.ndarray:
    """Integer vectors with ``lower <= x <= upper`` and ``sum(x) == total``, lex order."""
    n = len(lower)
    dtype = safe_dtype(*lower, *upper, total, terms=n + 2)
    lower = np.array(lower, dtype=dtype)
    upper = np.array(upper, dtype=dtype)
    # sums the remaining coordinates can still reach
    rest_lo = np.concatenate([np.cumsum(lower[::-1])[::-1][1:], np.zeros(1, dtype=dtype)])
    rest_hi = np.concatenate([np.cumsum(upper[::-1])[::-1][1:], np.zeros(1, dtype=dtype)])
    F = np.zeros((1, 0), dtype=dtype)
    acc = np.zeros(1, dtype=dtype)
    generated = 0
    for k in range(n):
        lo = np.maximum(lower[k], total - acc - rest_hi[k])
        hi = np.minimum(upper[k], total - acc - rest_lo[k])
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
        acc = acc[rep] + col
    return F


@dataclass(frozen=True)
class LorenzCoreEntry:
    lorenz_core: VectorSet  # L(S), members of S in ascending order
    egalitarian: VectorSet  # E(L(S))


def lorenz_core_table(g: Game, s: Optional[int] = None,
                      budget: int = DEFAULT_BUDGET) -> dict:
    """``{mask: LorenzCoreEntry}`` for every nonempty coalition inside ``s``.

    Candidates for ``L(T)`` satisfy ``x(T) = v(T)`` and
    ``v({i}) <= x_i <= v(T) - sum_{j in T, j != i} v({j})``.
    """
    s = g.grand if s is None else _check_coalition(g, s)
    pos = members(s)
    order = sorted((expand_mask(t, pos) for t in range(1, 1 << len(pos))),
                   key=lambda m: (popcount(m), m))
    table = {}
    for t in order:
        tp = members(t)
        singles = [g.worth[1 << i] for i in tp]
        slack_total = sum(singles)
        upper = [g.worth[t] - (slack_total - a) for a in singles]
        X = box_sum_points(singles, upper, g.worth[t], budget=budget)
        alive = np.ones(len(X), dtype=bool)
        for u in range(1, (1 << len(tp)) - 1):
            sub = expand_mask(u, tp)
            cols = [k for k in range(len(tp)) if u >> k & 1]
            XU = X[:, cols]
            for y in table[sub].egalitarian:
                y = np.array(y, dtype=X.dtype)
                alive &= ~(np.all(y >= XU, axis=1) & np.any(y > XU, axis=1))
        L = VectorSet.from_array(X[alive], presorted=True) if len(X) else VectorSet(dim=len(tp))
        table[t] = LorenzCoreEntry(L, lorenz_filter(L))
    return table


def lorenz_core(g: Game, s: Optional[int] = None, budget: int = DEFAULT_BUDGET) -> VectorSet:
    s = g.grand if s is None else s
    return lorenz_core_table(g, s, budget)[s].lorenz_core


def egalitarian_set(g: Game, budget: int = DEFAULT_BUDGET) -> VectorSet:
    """All discrete egalitarian solutions: Lorenz-undominated members of ``L(N)``."""
    return lorenz_core_table(g, budget=budget)[g.grand].egalitarian


# -- continuous egalitarian solution -----------------------------------------

@dataclass(frozen=True)
class DecompositionRun:
    steps: tuple  # ((mask, Fraction average), ...)
    solution: tuple  # Fraction per player


def dutta_ray_decomposition(g: Game) -> DecompositionRun:
    """Continuous egalitarian solution of a convex game, in exact rationals.

    Each step takes the largest coalition of remaining players with the
    highest average worth in the current game, pays each member that
    average, and contracts it away:
    ``v_next(S) = v_cur(S_k | S) - v_cur(S_k)``.
    """
    _require_supermodular(g)
    remaining = g.grand
    current = {m: g.worth[m] for m in range(1 << g.n)}  # v_k on subsets of `remaining`
    solution = [None] * g.n
    steps = []
    while remaining:
        pos = members(remaining)
        cands = [expand_mask(t, pos) for t in range(1, 1 << len(pos))]
        avg = {m: Fraction(current[m], popcount(m)) for m in cands}
        best = max(avg.values())
        winners = [m for m in cands if avg[m] == best]
        largest = max(winners, key=popcount)
        if any(m | largest != largest for m in winners):
            raise InternalConsistencyError("largest coalition with top average is not unique")
        for p in members(largest):
            solution[p] = best
        steps.append((largest, best))
        base = current[largest]
        remaining &= ~largest
        nxt = {0: 0}
        for t in range(1, 1 << popcount(remaining)):
            m = expand_mask(t, members(remaining))
            nxt[m] = current[largest | m] - base
        current = nxt
    return DecompositionRun(tuple(steps), tuple(solution))

"""Exhaustive checks of consistency properties on a single game.

Each checker returns a :class:`PropertyReport`.  A refuted property carries
a self-contained counterexample: the payoff vector and coalition are enough
to rebuild the reduced game with :func:`lorenzgame.game.reduced_game` and
watch the membership test fail again.

Coalitions ``S`` are visited by ascending mask of the removed players
``N - S`` (equivalently, descending mask of ``S``), payoff vectors in
lexicographic order; the first failure in that order is reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ContractError
from .game import (Game, expand_mask, format_coalition, is_supermodular,
                   members, popcount, reduced_game)
from .lorenz import box_sum_points, egalitarian_set, lorenz_core_table
from .mconvex import DEFAULT_BUDGET, _require_supermodular, core_membership, enumerate_base, lss
from .orders import _prefix_matrix

SOLUTIONS = ("core", "lss", "egalitarian")

# properties whose failure on some convex game is a known, documented result
KNOWN_FAILURES = {"ega-rgp"}


@dataclass(frozen=True)
class Counterexample:
    x: tuple
    coalition: int  # mask of S in the original game; 0 for whole-game checks
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PropertyReport:
    property: str
    holds: bool
    counterexample: Optional[Counterexample] = None
    checked: int = 0
    note: str = ""
    skipped: bool = False

    def __post_init__(self):
        if not self.holds and self.counterexample is None:
            raise ValueError("a refuted property needs a counterexample")

    @property
    def status(self) -> str:
        if self.skipped:
            return "skipped"
        if self.holds:
            return "holds"
        if self.property in KNOWN_FAILURES:
            return "refuted (known failure)"
        return "refuted"


def proper_coalitions(n: int) -> list:
    """Nonempty proper coalitions, ordered by ascending mask of their complement."""
    full = (1 << n) - 1
    return [full ^ r for r in range(1, full)]


def _sigma(name: str, g: Game, budget: int):
    if name == "core":
        return None  # membership is checked directly
    if name == "lss":
        return lss(g, budget)
    if name == "egalitarian":
        return egalitarian_set(g, budget)
    raise ContractError(f"unknown solution {name!r}; expected one of {SOLUTIONS}")


def _reduced_detail(r: Game) -> dict:
    return {format_coalition(t, r.labels): r.worth[t] for t in range(1, 1 << r.n)}


def reduced_worth_matrix(g: Game, s: int, X: np.ndarray) -> np.ndarray:
    """Reduced-game worths for many payoff vectors at once.

    Row ``r`` holds the worths of the reduced game on ``s`` with respect to
    ``X[r]``, indexed by masks over the members of ``s`` (same layout as
    :func:`lorenzgame.game.reduced_game`).
    """
    inside = members(s)
    outside = members(g.grand & ~s)
    q_masks = np.array([expand_mask(k, outside) for k in range(1 << len(outside))])
    cost = np.zeros((len(X), 1), dtype=X.dtype)
    for p in outside:
        cost = np.concatenate([cost, cost + X[:, p:p + 1]], axis=1)
    W = np.array(g.worth, dtype=X.dtype)
    k = len(inside)
    out = np.zeros((len(X), 1 << k), dtype=X.dtype)
    for t in range(1, (1 << k) - 1):
        out[:, t] = (W[expand_mask(t, inside) | q_masks] - cost).max(axis=1)
    out[:, -1] = g.worth[g.grand] - cost[:, -1]
    return out


def _int64_ok(arr: np.ndarray) -> np.ndarray:
    if arr.dtype != object:
        return np.ones(len(arr), dtype=bool)
    ok = [all(-(2**63) <= int(v) < 2**63 for v in row) for row in arr]
    return np.array(ok, dtype=bool)


def _core_rgp(g: Game, budget: int) -> PropertyReport:
    X = enumerate_base(g, budget=budget)
    coalitions = proper_coalitions(g.n)
    fail = np.zeros((len(X), len(coalitions)), dtype=bool)
    for c, s in enumerate(coalitions):
        R = reduced_worth_matrix(g, s, X)
        inside = members(s)
        sums = np.zeros((len(X), 1), dtype=X.dtype)
        for p in inside:
            sums = np.concatenate([sums, sums + X[:, p:p + 1]], axis=1)
        ok = (sums[:, -1] == R[:, -1]) & np.all(sums[:, 1:-1] >= R[:, 1:-1], axis=1)
        fail[:, c] = ~(ok & _int64_ok(R))
    checked = fail.size
    if not fail.any():
        return PropertyReport("core-rgp", True, checked=checked,
                              note=f"{len(X)} core vectors x {len(coalitions)} coalitions")
    row = int(np.argmax(fail.any(axis=1)))
    s = coalitions[int(np.argmax(fail[row]))]
    x = tuple(int(v) for v in X[row])
    r = reduced_game(g, s, x)
    xs = tuple(x[p] for p in members(s))
    detail = {"reduced_worths": _reduced_detail(r), "x_S": xs,
              "reason": "x_S is not in the core of the reduced game"}
    return PropertyReport("core-rgp", False, Counterexample(x, s, detail), checked=checked)


def verify_rgp(g: Game, solution: str, budget: int = DEFAULT_BUDGET) -> PropertyReport:
    """Reduced game property of ``solution`` on ``g``.

    For every ``x`` in the solution set and every nonempty proper ``S``,
    the reduced game must stay in the solution's class of games and
    ``x_S`` must belong to the solution of the reduced game.  The core is
    checked over all integer games; the Lorenz stable set and the discrete
    egalitarian set over convex games, so for them the reduced game must
    also be supermodular.
    """
    if solution not in SOLUTIONS:
        raise ContractError(f"unknown solution {solution!r}; expected one of {SOLUTIONS}")
    if solution == "core":
        return _core_rgp(g, budget)
    _require_supermodular(g)
    name = "lss-rgp" if solution == "lss" else "ega-rgp"
    sol = _sigma(solution, g, budget)
    checked = 0
    for x in sol:
        for s in proper_coalitions(g.n):
            checked += 1
            r = reduced_game(g, s, x)
            xs = tuple(x[p] for p in members(s))
            reason = None
            if not is_supermodular(r).holds:
                reason = "the reduced game is not supermodular"
            else:
                reduced_sol = _sigma(solution, r, budget)
                if xs not in reduced_sol:
                    reason = f"x_S is not in the {solution} set of the reduced game"
            if reason:
                detail = {"reduced_worths": _reduced_detail(r), "x_S": xs, "reason": reason}
                if reason.startswith("x_S"):
                    detail["reduced_solution"] = [list(v) for v in reduced_sol]
                return PropertyReport(name, False, Counterexample(tuple(x), s, detail),
                                      checked=checked)
    return PropertyReport(name, True, checked=checked,
                          note=f"{len(sol)} solution vectors x {len(proper_coalitions(g.n))} coalitions")


def verify_reduced_convexity(g: Game, budget: int = DEFAULT_BUDGET) -> PropertyReport:
    """Every reduced game at a Lorenz stable vector is supermodular."""
    _require_supermodular(g)
    checked = 0
    for x in lss(g, budget):
        for s in proper_coalitions(g.n):
            checked += 1
            r = reduced_game(g, s, x)
            report = is_supermodular(r)
            if not report.holds:
                a, b = report.witness
                detail = {"reduced_worths": _reduced_detail(r),
                          "witness": [format_coalition(a, r.labels), format_coalition(b, r.labels)]}
                return PropertyReport("lss-reduced-convex", False,
                                      Counterexample(tuple(x), s, detail), checked=checked)
    return PropertyReport("lss-reduced-convex", True, checked=checked)


def verify_crgp(g: Game, solution: str, margin: int = 2,
                budget: int = DEFAULT_BUDGET) -> PropertyReport:
    """Converse reduced game property of ``solution`` (``core`` or ``lss``).

    The candidates are the integer ``x`` with ``x(N) = v(N)`` inside the
    box ``v({i}) - margin <= x_i <= v(N) - v(N - i) + margin``.  A candidate
    satisfies the hypothesis when ``x_S`` solves the reduced game on every
    two-player ``S``; each such candidate must solve the whole game.
    """
    if solution not in ("core", "lss"):
        raise ContractError(f"converse property is checked for 'core' or 'lss', not {solution!r}")
    name = f"{solution}-crgp"
    if solution == "lss":
        _require_supermodular(g)
    if g.n <= 2:
        return PropertyReport(name, True, skipped=True,
                              note="needs n >= 3: the only two-player coalition is N itself")
    full = g.grand
    lower = [g.worth[1 << i] - margin for i in range(g.n)]
    upper = [g.worth[full] - g.worth[full ^ 1 << i] + margin for i in range(g.n)]
    X = box_sum_points(lower, upper, g.worth[full], budget=budget)
    alive = np.ones(len(X), dtype=bool)
    pairs = [s for s in proper_coalitions(g.n) if popcount(s) == 2]
    cache = {}
    for s in pairs:
        a, b = members(s)
        R = reduced_worth_matrix(g, s, X)
        ok = (X[:, a] >= R[:, 1]) & (X[:, b] >= R[:, 2]) & (X[:, a] + X[:, b] == R[:, 3])
        alive &= ok & _int64_ok(R)
        if solution == "lss":
            for r in np.flatnonzero(alive):
                key = (int(R[r, 1]), int(R[r, 2]), int(R[r, 3]))
                if key not in cache:
                    cache[key] = lss(Game(2, (0,) + key), budget)
                if (int(X[r, a]), int(X[r, b])) not in cache[key]:
                    alive[r] = False
    hyp = np.flatnonzero(alive)
    sol = lss(g, budget) if solution == "lss" else None
    for r in hyp:
        x = tuple(int(v) for v in X[r])
        inside = core_membership(g, None, x) if solution == "core" else x in sol
        if not inside:
            detail = {"reason": f"x satisfies every two-player reduced {solution} condition"
                                f" but is not in the {solution} of the game",
                      "margin": margin}
            return PropertyReport(name, False, Counterexample(x, 0, detail), checked=len(X))
    return PropertyReport(name, True, checked=len(X),
                          note=f"{len(X)} candidates, {len(hyp)} satisfy the hypothesis,"
                               f" margin {margin}")


def verify_external_lorenz_stability(g: Game, budget: int = DEFAULT_BUDGET) -> PropertyReport:
    """Each Lorenz core element outside ``E(L(N))`` is Lorenz-dominated from inside it."""
    entry = lorenz_core_table(g, budget=budget)[g.grand]
    L, E = entry.lorenz_core, entry.egalitarian
    outside = [y for y in L if y not in E]
    if not outside:
        return PropertyReport("external-stability", True, checked=0,
                              note=f"|L(N)| = {len(L)}, every element is egalitarian")
    PE = _prefix_matrix(E.array()) if len(E) else None
    for y in outside:
        py = _prefix_matrix(np.array([y], dtype=object))[0]
        dominated = False
        if PE is not None:
            le = np.all(PE <= py, axis=1) & np.any(PE != py, axis=1)
            dominated = bool(le.any())
        if not dominated:
            detail = {"reason": "no egalitarian solution Lorenz-dominates this Lorenz core element",
                      "egalitarian": [list(v) for v in E]}
            return PropertyReport("external-stability", False, Counterexample(y, 0, detail),
                                  checked=len(outside))
    return PropertyReport("external-stability", True, checked=len(outside),
                          note=f"|L(N)| = {len(L)}, |E(L(N))| = {len(E)}")


PROPERTIES = ("core-rgp", "lss-rgp", "ega-rgp", "core-crgp", "lss-crgp", "external-stability",
              "lss-reduced-convex")


def check_property(name: str, g: Game, budget: int = DEFAULT_BUDGET, margin: int = 2) -> PropertyReport:
    """Run one named check (the names used by the command line)."""
    if name == "core-rgp":
        return verify_rgp(g, "core", budget)
    if name == "lss-rgp":
        return verify_rgp(g, "lss", budget)
    if name == "ega-rgp":
        return verify_rgp(g, "egalitarian", budget)
    if name == "core-crgp":
        return verify_crgp(g, "core", margin, budget)
    if name == "lss-crgp":
        return verify_crgp(g, "lss", margin, budget)
    if name == "external-stability":
        return verify_external_lorenz_stability(g, budget)
    if name == "lss-reduced-convex":
        return verify_reduced_convexity(g, budget)
    raise ContractError(f"unknown property {name!r}; expected one of {PROPERTIES}")

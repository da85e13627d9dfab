"""
The continuous egalitarian solution
===================================

Repeatedly pick the largest coalition with the best average worth, pay
its members that average and contract it away.  Everything stays exact.
"""

from lorenzgame import Game, dutta_ray_decomposition, fixture_path, format_coalition, read_game
from lorenzgame.cli import rational

for name in ("ex29.json", "ex46.json"):
    run = dutta_ray_decomposition(read_game(fixture_path(name)))
    steps = ", ".join(f"{{{format_coalition(m)}}}@{rational(a)}" for m, a in run.steps)
    print(name, steps, "->", [rational(q) for q in run.solution])

# a game whose answer is not integral
g = Game.from_function(3, lambda s: {1: 0, 2: 1, 3: 4}[len(s)])
print([rational(q) for q in dutta_ray_decomposition(g).solution])

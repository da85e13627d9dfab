"""
The integer core and its decreasingly-minimal points
====================================================

A three-player convex game: enumerate its integer core, then find the
fairest allocations in it three different ways.
"""

from lorenzgame import (core_enumerate, dec_min_by_tightening, dec_min_set_structural,
                        fixture_path, is_supermodular, lorenz_filter, read_game)

g = read_game(fixture_path("ex46.json"))
print("supermodular:", is_supermodular(g).holds)

# every integer allocation no coalition can block
core = core_enumerate(g)
print(len(core), "integer core points, e.g.", core[0], core[-1])

# 1) keep the points nothing Lorenz-dominates
print("Lorenz filter:", list(lorenz_filter(core)))

# 2) walk from a greedy vertex, moving one unit at a time from rich to poor
print("1-tightening walk:", dec_min_by_tightening(g))

# 3) read the answer off the canonical partition
print("structural:", list(dec_min_set_structural(g)))

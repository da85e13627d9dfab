"""
Consistency under reduced games
===============================

Pay some players their share and let the rest renegotiate.  The Lorenz
stable set survives this; the discrete egalitarian solution does not.
"""

from lorenzgame import (check_property, egalitarian_set, fixture_path, random_supermodular_game,
                        read_game, reduced_game)

g = read_game(fixture_path("ex46.json"))

# players 2 and 3 renegotiate after player 1 takes 64
r = reduced_game(g, 0b110, (64, 65, 81))
print("reduced worths:", r.worth[1:])
print("egalitarian in the reduced game:", list(egalitarian_set(r)), "but x_S = (65, 81)")

for name in ("core-rgp", "lss-rgp", "lss-crgp", "ega-rgp"):
    report = check_property(name, g)
    print(f"{name:10s} {report.status}")

# the positive results on a batch of random convex games
for seed in range(20):
    h = random_supermodular_game(seed, 4, 5)
    assert check_property("lss-rgp", h).holds
    assert check_property("lss-crgp", h).holds
print("lss-rgp and lss-crgp hold on 20 random four-player games")

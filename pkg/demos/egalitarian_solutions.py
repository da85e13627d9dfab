"""
Lorenz cores and discrete egalitarian solutions
===============================================

Build the Lorenz core coalition by coalition and list the egalitarian
solutions of each.  With integer payoffs there can be several, and some
of them may lie outside the core.
"""

from lorenzgame import core_membership, fixture_path, format_coalition, read_game
from lorenzgame.lorenz import lorenz_core_table

g = read_game(fixture_path("ex46.json"))
table = lorenz_core_table(g)

for mask in sorted(table, key=lambda m: (bin(m).count("1"), m)):
    entry = table[mask]
    print(f"{{{format_coalition(mask)}}}: v={g.worth[mask]:4d}  "
          f"|L|={len(entry.lorenz_core):4d}  E(L)={list(entry.egalitarian)}")

# which egalitarian solutions of the whole game are in the core?
for x in table[g.grand].egalitarian:
    print(x, "in core" if core_membership(g, None, x) else "not in core")

# two players, one unit: the discrete solution cannot split it
pair = read_game(fixture_path("ex41-2p.json"))
print(list(lorenz_core_table(pair)[pair.grand].egalitarian))

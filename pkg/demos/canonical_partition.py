"""
Canonical chain and partition
=============================

The dec-min points of a convex game are pinned down by a chain of
coalitions and one integer level per block.  Two independent
constructions must give the same answer.
"""

from lorenzgame import (canonical_decomposition, canonical_decomposition_by_threshold,
                        format_coalition, lss, random_supermodular_game)

# small synergies keep the players apart, so several blocks appear
g = random_supermodular_game(seed=6, n=5, weight_bound=6, synergy_bound=1)
print("worths:", g.worth)

dec = canonical_decomposition(g)
assert dec == canonical_decomposition_by_threshold(g)

for b, block, c in zip(dec.beta, dec.partition, dec.chain):
    print(f"beta={b:4d}  block {{{format_coalition(block)}}}  chain {{{format_coalition(c)}}}")

# every dec-min point takes beta or beta-1 on each block
for x in lss(g):
    print(x)

"""The Hasse norm principle for a biquadratic extension.

With only cyclic decomposition groups the knot group of a V4-extension is
Z/2.  The first obstruction, computed inside V4 itself, misses it, because V4
has a non-trivial Schur multiplier; passing to an order-8 cover recovers it.

Run:  python3 demos/hasse_knot.py
"""

from multinorm.engine import ScenarioInput, first_obstruction, obstructions
from multinorm.groups import cyclic_subgroup, trivial_subgroup
from multinorm.library import elementary_abelian

G = elementary_abelian(2, 2)
E = trivial_subgroup(G)                      # L = N, a single biquadratic field
A = cyclic_subgroup(G, G.gens[0])

for label, ramified in [("no ramified places", []),
                        ("one cyclic ramified place", [A]),
                        ("a place with full decomposition group", [G])]:
    sc = ScenarioInput(G, [E], ramified)
    first = first_obstruction(sc).first_obstruction
    rep = obstructions(sc)
    print(f"{label:40} F = {list(first.invariants)!s:6} Sha = {list(rep.sha.invariants)!s:6} "
          f"H1 = {list(rep.h1.invariants)!s:6} A = {list(rep.a.invariants)!s:6} [{rep.strategy}]")

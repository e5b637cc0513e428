"""When can the computation stay inside G?

If some index [G:H_j] is square-free, or if p^2 does not divide it for every
prime p dividing |M(G)|, the diagram evaluated in G already gives Sha, H^1 and
A.  Otherwise the engine builds a covering group.  For a single subgroup the
unramified part is the focal subgroup modulo [H, H].

Run:  python3 demos/strategy_hints.py
"""

import random

from multinorm.engine import DiagramInstance, ScenarioInput, focal_image, obstructions
from multinorm.groups import subgroup_generated
from multinorm.library import small_groups
from multinorm.theorems import strategy_hints

groups = small_groups()
rng = random.Random(5)
for name in ("V4", "D8", "A4", "C2xQ8", "S4"):
    G = groups[name]
    H = subgroup_generated(G, [rng.choice(G.elements)])
    sc = ScenarioInput(G, [H])
    hints = {h["hint"]: h for h in strategy_hints(sc)}
    D = DiagramInstance(G, [H])
    rep = obstructions(sc)
    print(f"{name:6} |H|={H.order:<3} multiplier={hints['multiplier'].get('invariants')!s:6} "
          f"direct={hints['direct_in_G']['holds']!s:5} -> {rep.strategy:12} "
          f"H1={list(rep.h1.invariants)!s:6} focal image = unramified image: "
          f"{D.unramified_kernel_image() == focal_image(G, H)}")

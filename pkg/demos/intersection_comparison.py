"""Comparing the multinorm torus with the norm one torus of F = L_1 ∩ ... ∩ L_n.

The partition search looks for indices i0, j0 and splits I_i | J_i with
B_I B_J ⊇ H_i.  When it succeeds the two H^1 groups agree.  The tuple
Q(√2,√3), Q(√2,√5), Q(√3,√5) has no such splitting (each product B_I B_J
is H_1 or H_2, neither contains H_3), yet both groups are trivial anyway.

Run:  python3 demos/intersection_comparison.py
"""

from multinorm.scenario import bundled_scenarios, parse_scenario
from multinorm.theorems import check_dw_hypothesis, compare_with_intersection

for name, text in bundled_scenarios().items():
    sc = parse_scenario(text).build()
    w = check_dw_hypothesis(sc)
    r = compare_with_intersection(sc)
    h1x = list(r.torus.h1.invariants)
    h1y = list(r.intersection.h1.invariants)
    print(f"{name:20} witness={'yes' if w else 'no ':3}  H1(X)={h1x!s:8} H1(Y)={h1y!s:8} "
          f"flags consistent: {r.ok}")

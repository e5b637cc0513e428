"""n distinct cyclic degree-p extensions with bicyclic compositum.

H^1(K, Pic X) is (Z/p)^(n-2).  When every ramified decomposition group is
cyclic the whole group is a failure of the multinorm principle; one place
with decomposition group G moves all of it into the defect of weak
approximation instead.

Run:  python3 demos/cyclic_prime_family.py
"""

from itertools import islice

from multinorm.engine import ScenarioInput, obstructions
from multinorm.groups import cyclic_subgroup, is_cyclic
from multinorm.library import elementary_abelian
from multinorm.theorems import eva_closed_form, eva_wa_criterion


def index_p_subgroups(G, p):
    seen = {}
    for x in G.elements:
        C = cyclic_subgroup(G, x)
        if C.order == G.order // p:
            seen.setdefault(C.frozen(), C)
    return list(seen.values())


for p in (2, 3, 5):
    G = elementary_abelian(p, 2)
    subs = index_p_subgroups(G, p)
    for n in range(2, p + 2):
        Hs = list(islice(subs, n))
        cyc = ScenarioInput(G, Hs, Hs)               # all ramified groups cyclic
        full = ScenarioInput(G, Hs, [Hs[0], G])      # one place with G_v = G
        r1, r2 = obstructions(cyc), obstructions(full)
        e1, e2 = eva_wa_criterion(cyc), eva_wa_criterion(full)
        closed = eva_closed_form(p, n, p * p)
        assert r1.h1 == closed and all(is_cyclic(S) for S in cyc.ramified)
        print(f"p={p} n={n}: H1={list(closed.invariants)!s:12} "
              f"cyclic: Sha={list(r1.sha.invariants)!s:10} A={list(r1.a.invariants)!s:8} "
              f"full: Sha={list(r2.sha.invariants)!s:5} A={list(r2.a.invariants)!s:12} "
              f"criterion agrees: {e1['agree'] and e2['agree']}")

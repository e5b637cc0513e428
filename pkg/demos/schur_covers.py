"""Schur multipliers and covering groups for the small group library.

Run:  python3 demos/schur_covers.py
"""

from multinorm import library
from multinorm.cover import (build_generalized_rep_group, cohomology_h2, extension_from_projection,
                             schur_multiplier, verify_cover)
from multinorm.groups import abelianization

# M(G) is read off from H^2(G, Z/|G|): the classes that do not come from
# G^ab (the Bockstein part) form the multiplier.
print(f"{'group':8} {'|G|':>4} {'G^ab':12} {'H^2(G,Z/|G|)':16} {'M(G)':10} {'|cover|':>8}")
for name, G in library.small_groups().items():
    if G.order > 16:
        continue
    ab = list(abelianization(G).group.invariants)
    H2, _ = cohomology_h2(G, G.order)
    M = list(schur_multiplier(G).invariants)
    ext = build_generalized_rep_group(G)
    assert verify_cover(ext, G).ok
    print(f"{name:8} {G.order:>4} {str(ab):12} {str(list(H2.invariants)):16} {str(M):10} {ext.group.order:>8}")

# The Klein four group has two non-isomorphic covers of order 8.  Both pass
# the same verification: surjective, central kernel, kernel inside [Gt, Gt].
V = library.elementary_abelian(2, 2)
a, b = V.gens
D = library.dihedral(4)
ext = extension_from_projection(D, V, D.gens[:2], (a, b))
check = verify_cover(ext, V)
print("\ndihedral cover of V4:", check.ok, "Schur:", check.is_schur, "kernel order", ext.kernel.order)

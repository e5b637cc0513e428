"""Small hand-checkable values, each confirmed by enumeration before being fixed here."""

from oracles import GROUPS, enumerate_h2_order

from multinorm.cover import build_generalized_rep_group, cohomology_h2, verify_cover
from multinorm.engine import DiagramInstance, ScenarioInput, first_obstruction, obstructions
from multinorm.groups import (abelianization, center, commutator_subgroup,
                              cyclic_subgroup, cyclic_subgroup_classes, derived_subgroup,
                              double_cosets, focal_subgroup, generate_group, intersection,
                              is_normal)
from multinorm.scenario import parse_permutation
from multinorm.theorems import check_dw_hypothesis, compare_with_intersection, strategy_hints
from multinorm.zlin import (AbHom, AbSubgroup, FinAb, hom_kernel, smith_normal_form,
                            subgroup_contains, subgroup_quotient)

import oracles

BUNDLED = oracles.bundled()
S3 = GROUPS["S3"]
V4 = GROUPS["V4"]


def perm(s, n):
    return parse_permutation(s, n)


def order2(G):
    return [cyclic_subgroup(G, x) for x in G.elements if x != G.identity and G.mul(x, x) == G.identity]


def order3(G):
    return next(cyclic_subgroup(G, x) for x in G.elements if cyclic_subgroup(G, x).order == 3)


def test_generation():
    G = generate_group([perm("(0 1)", 3), perm("(0 1 2)", 3)])
    assert G.order == 6
    G = generate_group([perm("(0 1)", 4), perm("(2 3)", 4)])
    assert G.order == 4 and G.is_abelian()


def test_commutators_and_abelianization():
    assert commutator_subgroup(S3, S3).order == 3
    assert derived_subgroup(S3).order == 3
    assert abelianization(S3).group.invariants == (2,)


def test_double_coset_counts():
    A = order2(V4)[0]
    dc = double_cosets(V4, A, A)
    assert len(dc) == 2
    dc = double_cosets(S3, order2(S3)[0], order3(S3))
    assert len(dc) == 1


def test_focal_of_normal_subgroup():
    C3 = order3(S3)
    assert is_normal(C3, S3)
    assert focal_subgroup(S3, C3) == C3


def test_cyclic_classes():
    assert len(cyclic_subgroup_classes(V4)) == 4
    D8 = GROUPS["D8"]
    cyclic = {cyclic_subgroup(D8, x).frozen() for x in D8.elements}
    assert len(cyclic) == 7
    assert len(cyclic_subgroup_classes(D8)) == 5


def test_smith_forms():
    _, D, _ = smith_normal_form([[2, 0], [0, 3]])
    assert D == [[1, 0], [0, 6]]
    _, D, _ = smith_normal_form([[2, 4], [6, 8]])
    assert D == [[2, 0], [0, 4]]


def test_kernels_and_quotients():
    A = FinAb((2, 2))
    f = AbHom(A, FinAb((2,)), ((1,), (1,)))
    K = hom_kernel(f)
    assert K.order == 2 and (1, 1) in K
    C = AbSubgroup.generated(A, [(1, 1)])
    assert subgroup_quotient(A, AbSubgroup.full(A), C).invariants == (2,)
    Z4 = FinAb((4,))
    assert subgroup_quotient(Z4, AbSubgroup.full(Z4), AbSubgroup.generated(Z4, [(2,)])).invariants == (2,)
    assert not subgroup_contains(C, AbSubgroup.generated(A, [(0, 1)]))


def test_second_cohomology_orders():
    C2 = GROUPS["C2"]
    H2, _ = cohomology_h2(C2, 2)
    assert H2.order == 2 == enumerate_h2_order(C2, 2)
    H2, _ = cohomology_h2(V4, 4)
    assert H2.order == 8


def test_small_covers():
    ext = build_generalized_rep_group(V4)
    Gt = ext.group
    assert Gt.order == 8
    D = derived_subgroup(Gt)
    assert center(Gt).frozen() == D.frozen() == ext.kernel.frozen()
    assert intersection(ext.kernel, D).order == 2
    assert verify_cover(ext, V4).ok
    assert build_generalized_rep_group(S3).group.order == 6


def test_blocks_of_places():
    a, b = V4.gens
    A, B = cyclic_subgroup(V4, a), cyclic_subgroup(V4, b)
    P = DiagramInstance(V4, [A]).place(B)
    # <a><b> is all of V4: a single double coset with trivial block
    dc = double_cosets(V4, A, B)
    assert len(dc) == 1 and dc.intersections[0].order == 1 and P.blocks == []
    P = DiagramInstance(S3, [S3]).place(S3)
    assert len(P.blocks) == 1
    assert all(P.psi2(v) == v for v in P.psi2.domain.basis())
    P = DiagramInstance(S3, [order2(S3)[0]]).place(order3(S3))
    assert P.blocks == [] and len(double_cosets(S3, order2(S3)[0], order3(S3))) == 1


def test_full_place_gives_the_full_kernel():
    sc = BUNDLED["bicyclic-p2-n3"]
    D = DiagramInstance(sc.G, sc.H_list)
    assert D.local_kernel_image(sc.G) == D.kernel_psi1
    assert D.kernel_psi1.order == 2


def test_first_obstruction_examples():
    assert first_obstruction(BUNDLED["bicyclic-p2-n3"]).first_obstruction.invariants == (2,)
    assert first_obstruction(BUNDLED["bicyclic-p2-n3-full"]).first_obstruction.invariants == ()


def test_knot_examples():
    r = obstructions(BUNDLED["knot-v4-cyclic"])
    assert (r.sha.invariants, r.a.invariants, r.h1.invariants) == ((2,), (), (2,))
    r = obstructions(BUNDLED["knot-v4-full"])
    assert (r.sha.invariants, r.a.invariants, r.h1.invariants) == ((), (2,), (2,))


def test_partition_examples():
    assert check_dw_hypothesis(BUNDLED["bicyclic-p2-n3"]) is None
    r = compare_with_intersection(BUNDLED["three-biquadratic"])
    assert r.intersection.h1.order == 1 and r.torus.h1.order == 1


def test_fast_path_hint_with_odd_multiplier():
    Q8 = GROUPS["Q8"]
    H = order2(Q8)[0]
    assert Q8.order // H.order == 4
    hints = {h["hint"]: h for h in strategy_hints(ScenarioInput(Q8, [H]))}
    assert hints["multiplier"]["invariants"] == []
    assert hints["direct_in_G"]["holds"] is True

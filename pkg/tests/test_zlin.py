import itertools
from math import gcd, prod

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from multinorm.errors import NotContained
from multinorm.zlin import (AbHom, AbSubgroup, FinAb, Quotient, canonical_invariants,
                            direct_sum, smith_normal_form, subgroup_join, xgcd)

small_ints = st.integers(min_value=-12, max_value=12)
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))
moduli = st.lists(st.integers(2, 12), min_size=1, max_size=3)


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def det(M):
    return int(Matrix(M).det())


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_xgcd_bezout(a, b):
    g, x, y = xgcd(a, b)
    assert g >= 0 and a * x + b * y == g
    if a or b:
        assert a % g == 0 and b % g == 0


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_form_is_a_unimodular_diagonal_chain(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nonzero = [d for d in diag if d]
    assert diag[:len(nonzero)] == nonzero and all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    # same elementary divisors as sympy
    ref = [abs(int(x)) for x in invariant_factors(Matrix(M)) if int(x) != 0]
    assert nonzero == ref


@given(moduli)
def test_canonical_invariants_preserve_order_and_chain(ms):
    inv = canonical_invariants(ms)
    assert prod(inv) == prod(ms)
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    assert 1 not in inv


def test_canonical_invariants_examples():
    assert canonical_invariants([2, 3]) == (6,)
    assert canonical_invariants([4, 6]) == (2, 12)
    assert canonical_invariants([1, 1]) == ()


@st.composite
def homs(draw):
    dom = draw(moduli)
    cod = draw(moduli)
    imgs = []
    for m in dom:
        # the image of a generator of Z/m must be killed by m: take a
        # multiple of c / gcd(c, m) in each coordinate
        imgs.append(tuple(draw(st.integers(0, gcd(c, m) - 1)) * (c // gcd(c, m)) for c in cod))
    return AbHom(FinAb(tuple(dom)), FinAb(tuple(cod)), tuple(imgs))


@settings(max_examples=80, deadline=None)
@given(homs())
def test_kernel_and_image_sizes_match_enumeration(f):
    els = list(f.domain.elements())
    images = {f(v) for v in els}
    kernel = {v for v in els if not any(f(v))}
    assert f.image().order == len(images)
    assert f.kernel().order == len(kernel)
    assert f.kernel().order * f.image().order == f.domain.order
    assert set(f.kernel().elements()) == kernel


@settings(max_examples=60, deadline=None)
@given(moduli, st.data())
def test_subgroups_are_canonical(ms, data):
    A = FinAb(tuple(ms))
    gens = [tuple(data.draw(st.integers(0, m - 1)) for m in ms) for _ in range(data.draw(st.integers(0, 3)))]
    S = AbSubgroup.generated(A, gens)
    # any generating set of the same subgroup gives an equal object
    T = AbSubgroup.generated(A, list(S.elements()))
    assert S == T and hash(S) == hash(T)
    assert S.order == len(set(S.elements()))
    for g in gens:
        assert A.reduce(g) in S


@settings(max_examples=60, deadline=None)
@given(moduli, st.data())
def test_quotient_orders_and_projection(ms, data):
    A = FinAb(tuple(ms))
    pick = lambda: tuple(data.draw(st.integers(0, m - 1)) for m in ms)
    B = AbSubgroup.generated(A, [pick() for _ in range(2)])
    C = AbSubgroup.generated(A, [A.scale(data.draw(st.integers(0, 3)), g) for g in B.gens])
    Q = Quotient(B, C)
    assert Q.group.order * C.order == B.order
    # projection is a surjective homomorphism with kernel C
    fibres = {}
    for v in B.elements():
        fibres.setdefault(Q.project(v), set()).add(v)
    assert len(fibres) == Q.group.order
    assert fibres[Q.group.zero()] == set(C.elements())
    for k, g in enumerate(Q.generators):
        e = [0] * Q.group.rank
        e[k] = 1
        assert Q.project(g) == Q.group.reduce(e)


def test_quotient_requires_containment():
    A = FinAb((4,))
    with pytest.raises(NotContained):
        Quotient(AbSubgroup.generated(A, [(2,)]), AbSubgroup.full(A))


def test_direct_sum_and_join():
    S, offs = direct_sum([FinAb((2,)), FinAb((3, 3))])
    assert S.moduli == (2, 3, 3) and offs == [0, 1]
    a = AbSubgroup.generated(S, [(1, 0, 0)])
    b = AbSubgroup.generated(S, [(0, 1, 0)])
    assert subgroup_join([a, b], S).order == 6
    assert subgroup_join([a, b], S).invariants == (6,)


def test_preimage_solves_when_possible():
    f = AbHom(FinAb((4, 2)), FinAb((4,)), ((2,), (2,)))
    for t in itertools.product(range(4)):
        sol = f.preimage(t)
        if t[0] % 2:
            assert sol is None
        else:
            assert f(sol) == t

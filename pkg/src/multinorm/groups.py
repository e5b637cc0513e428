"""Finite groups by enumeration.

A :class:`Group` is a sorted, enumerated set of elements living in a
*carrier*, an object that knows how to multiply and invert elements.  Two
carriers are provided: :class:`PermCarrier` (0-based image tuples) and
:class:`PairCarrier` (central extensions built from 2-cocycles).  Every
algorithm below only talks to the carrier, so subgroup machinery runs
unchanged on covering groups.

Permutations compose left to right: ``(a*b)[i] == b[a[i]]``.
Commutators follow ``[x, y] = x^-1 y^-1 x y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Hashable, Iterable, Sequence

from .errors import CarrierMismatch, OrderCapExceeded
from .zlin import FinAb, _echelon, _snf

DEFAULT_ORDER_CAP = 10000

Element = Hashable


class Carrier:
    """Interface for element arithmetic."""

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def identity(self):
        raise NotImplementedError

    def validate(self, x) -> None:
        """Raise ``ValueError`` unless ``x`` is an element of this carrier."""


@dataclass(frozen=True)
class PermCarrier(Carrier):
    degree: int

    @property
    def identity(self):
        return tuple(range(self.degree))

    def mul(self, a, b):
        return tuple(b[i] for i in a)

    def inv(self, a):
        out = [0] * len(a)
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    def validate(self, x) -> None:
        if len(x) != self.degree or sorted(x) != list(range(self.degree)):
            raise ValueError(f"{x!r} is not a permutation of {self.degree} points")


class PairCarrier(Carrier):
    """Elements ``(g, a)`` with ``g`` an index into ``base`` and ``a`` in ``A``.

    The product is ``(g, a)(h, b) = (gh, a + b + f(g, h))`` where ``f`` is a
    normalized 2-cocycle with values in ``A = Z/m_1 + ... + Z/m_k`` stored as
    one integer table per summand.
    """

    def __init__(self, base: "Group", moduli: Sequence[int], tables: Sequence[Sequence[Sequence[int]]]):
        self.base = base
        self.moduli = tuple(int(m) for m in moduli)
        self.tables = [[list(map(int, row)) for row in t] for t in tables]
        n = base.order
        els = base.elements
        self._mt = [[base.index(base.mul(x, y)) for y in els] for x in els]
        self._inv = [base.index(base.inv(x)) for x in els]
        self._e = base.index(base.identity)

    @property
    def identity(self):
        return (self._e, (0,) * len(self.moduli))

    def mul(self, x, y):
        g, a = x
        h, b = y
        return (self._mt[g][h],
                tuple((ai + bi + t[g][h]) % m
                      for ai, bi, t, m in zip(a, b, self.tables, self.moduli)))

    def inv(self, x):
        g, a = x
        gi = self._inv[g]
        # (g,a)(g^-1,b) = (1, a + b + f(g,g^-1)) = (1, 0)
        return (gi, tuple((-ai - t[g][gi]) % m for ai, t, m in zip(a, self.tables, self.moduli)))

    def validate(self, x) -> None:
        g, a = x
        if not (0 <= g < self.base.order) or len(a) != len(self.moduli):
            raise ValueError(f"{x!r} is not a pair element")

    def project(self, x):
        return self.base.elements[x[0]]


class Group:
    """An enumerated finite group.

    ``elements`` is sorted by the carrier's natural element order, which
    fixes canonical representatives everywhere.  Generators are computed
    lazily when the group was built from an element set.
    """

    def __init__(self, carrier: Carrier, elements: Iterable, gens: Sequence | None = None):
        self.carrier = carrier
        self.elements = tuple(sorted(set(elements)))
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._gens = None if gens is None else tuple(gens)
        self._cache: dict = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def index(self, x) -> int:
        return self._index[x]

    @property
    def identity(self):
        return self.carrier.identity

    def mul(self, a, b):
        return self.carrier.mul(a, b)

    def inv(self, a):
        return self.carrier.inv(a)

    def conj(self, h, x):
        """``x h x^-1``."""
        c = self.carrier
        return c.mul(c.mul(x, h), c.inv(x))

    def power(self, a, k: int):
        c = self.carrier
        if k < 0:
            a, k = c.inv(a), -k
        out = c.identity
        base = a
        while k:
            if k & 1:
                out = c.mul(out, base)
            base = c.mul(base, base)
            k >>= 1
        return out

    @property
    def gens(self) -> tuple:
        if self._gens is None:
            self._gens = tuple(_greedy_generators(self))
        return self._gens

    def is_abelian(self) -> bool:
        g = self.gens
        return all(self.mul(a, b) == self.mul(b, a) for a in g for b in g)

    def frozen(self) -> frozenset:
        if "fs" not in self._cache:
            self._cache["fs"] = frozenset(self.elements)
        return self._cache["fs"]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return self.carrier == other.carrier and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other: "Group") -> bool:
        return self.carrier == other.carrier and all(x in other for x in self.elements)

    def __repr__(self) -> str:
        return f"<Group of order {self.order}>"


def _same_carrier(*groups: Group) -> Carrier:
    c = groups[0].carrier
    for g in groups[1:]:
        if g.carrier != c:
            raise CarrierMismatch("groups live in different carriers")
    return c


def _closure(carrier: Carrier, gens: Sequence, order_cap: int, start: Iterable = ()) -> set:
    seen = set(start) or {carrier.identity}
    seen.add(carrier.identity)
    frontier = list(seen)
    gens = [g for g in gens if g != carrier.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = carrier.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > order_cap:
                        raise OrderCapExceeded(
                            f"group closure exceeded order cap {order_cap}")
        frontier = nxt
    return seen


def _greedy_generators(G: Group) -> list:
    gens = []
    current = {G.identity}
    for x in G.elements:
        if x not in current:
            gens.append(x)
            current = _closure(G.carrier, gens, max(G.order, 1), start=current)
            if len(current) == G.order:
                break
    return gens


def generate_group(generators: Sequence, carrier: Carrier | None = None,
                   order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Closure of ``generators`` under multiplication.

    The carrier is inferred for permutations (tuples of ints).  An empty
    generator list without a carrier gives the trivial group of degree 0.
    """
    if order_cap < 1:
        raise ValueError("order_cap must be >= 1")
    gens = [tuple(g) if isinstance(g, list) else g for g in generators]
    if carrier is None:
        if not gens:
            carrier = PermCarrier(0)
        else:
            carrier = PermCarrier(len(gens[0]))
    for g in gens:
        carrier.validate(g)
    els = _closure(carrier, gens, order_cap)
    return Group(carrier, els, [g for g in gens if g != carrier.identity])


def subgroup_generated(ambient: Group, gens: Sequence) -> Group:
    for g in gens:
        if g not in ambient:
            raise CarrierMismatch(f"{g!r} is not an element of the ambient group")
    return Group(ambient.carrier, _closure(ambient.carrier, list(gens), ambient.order),
                 [g for g in gens if g != ambient.identity])


def _incremental(ambient_carrier: Carrier, candidates: Iterable, cap: int) -> tuple[set, list]:
    gens: list = []
    current = {ambient_carrier.identity}
    for c in candidates:
        if c not in current:
            gens.append(c)
            current = _closure(ambient_carrier, gens, cap, start=current)
    return current, gens


def trivial_subgroup(G: Group) -> Group:
    return Group(G.carrier, [G.identity], [])


def intersection(A: Group, B: Group) -> Group:
    _same_carrier(A, B)
    small, big = (A, B) if A.order <= B.order else (B, A)
    return Group(A.carrier, [x for x in small.elements if x in big])


def conjugate(A: Group, x) -> Group:
    """``x A x^-1``."""
    c = A.carrier
    xi = c.inv(x)
    return Group(c, [c.mul(c.mul(x, a), xi) for a in A.elements],
                 [c.mul(c.mul(x, a), xi) for a in A.gens])


def join(*groups: Group) -> Group:
    if not groups:
        raise ValueError("join of no groups")
    c = _same_carrier(*groups)
    gens = [g for H in groups for g in H.gens]
    cap = max(DEFAULT_ORDER_CAP, max(H.order for H in groups))
    return Group(c, _closure(c, gens, cap), gens)


def _normal_closure(carrier: Carrier, seeds: Sequence, conj_by: Sequence, cap: int) -> Group:
    els, gens = _incremental(carrier, seeds, cap)
    changed = True
    while changed:
        changed = False
        for n in list(gens):
            for g in conj_by:
                y = carrier.mul(carrier.mul(carrier.inv(g), n), g)
                if y not in els:
                    gens.append(y)
                    els = _closure(carrier, gens, cap, start=els)
                    changed = True
    return Group(carrier, els, gens)


def commutator(G_or_carrier, x, y):
    c = G_or_carrier.carrier if isinstance(G_or_carrier, Group) else G_or_carrier
    return c.mul(c.mul(c.inv(x), c.inv(y)), c.mul(x, y))


def commutator_subgroup(A: Group, B: Group) -> Group:
    """``[A, B]``: normal closure in ``<A, B>`` of commutators of generators."""
    c = _same_carrier(A, B)
    seeds = sorted({commutator(c, a, b) for a in A.gens for b in B.gens})
    cap = max(DEFAULT_ORDER_CAP, A.order * B.order)
    return _normal_closure(c, seeds, list(A.gens) + list(B.gens), cap)


def derived_subgroup(A: Group) -> Group:
    if "derived" not in A._cache:
        A._cache["derived"] = commutator_subgroup(A, A)
    return A._cache["derived"]


def center(A: Group) -> Group:
    g = A.gens
    return Group(A.carrier, [x for x in A.elements
                             if all(A.mul(x, y) == A.mul(y, x) for y in g)])


def is_normal(A: Group, G: Group) -> bool:
    _same_carrier(A, G)
    return all(G.conj(a, x) in A for a in A.gens for x in G.gens)


def normal_core(A: Group, G: Group) -> Group:
    """Largest normal subgroup of ``G`` contained in ``A``."""
    _same_carrier(A, G)
    if is_normal(A, G):
        return A
    core = set(A.elements)
    for x in G.elements:
        core &= {G.conj(a, x) for a in A.elements}
    return Group(A.carrier, core)


def index(G: Group, A: Group) -> int:
    _same_carrier(A, G)
    return G.order // A.order


def element_order(G: Group, x) -> int:
    k, y = 1, x
    e = G.identity
    while y != e:
        y = G.mul(y, x)
        k += 1
    return k


def cyclic_subgroup(G: Group, x) -> Group:
    els = [G.identity]
    y = x
    while y != G.identity:
        els.append(y)
        y = G.mul(y, x)
    return Group(G.carrier, els, [x] if x != G.identity else [])


def is_cyclic(A: Group) -> bool:
    return any(element_order(A, x) == A.order for x in A.elements)


def preimage(G_tilde: Group, projection, B: Group) -> Group:
    """``{x in G_tilde : projection(x) in B}``."""
    return Group(G_tilde.carrier, [x for x in G_tilde.elements if projection(x) in B])


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    ambient: Group
    left: Group
    right: Group
    representatives: tuple
    intersections: tuple      # left ∩ x right x^-1 per representative
    sizes: tuple

    def __len__(self) -> int:
        return len(self.representatives)


def right_coset_labels(G: Group, H: Group) -> dict:
    """Map each element of ``G`` to the minimal element of its coset ``H y``."""
    key = ("rc", G.frozen())
    if key not in H._cache:
        labels: dict = {}
        for y in G.elements:
            if y not in labels:
                for h in H.elements:
                    labels[G.mul(h, y)] = y
        H._cache[key] = labels
    return H._cache[key]


def double_cosets(G: Group, H: Group, S: Group) -> DoubleCosetDecomposition:
    """``G = U H x_k S`` with ``x_k`` the minimal element of each double coset."""
    _same_carrier(G, H, S)
    labels = right_coset_labels(G, H)
    seen: set = set()
    reps, inters, sizes = [], [], []
    for x in G.elements:
        if labels[x] in seen:
            continue
        # H x S is the union of the right cosets H x s
        orbit = {labels[G.mul(x, s)] for s in S.elements}
        seen |= orbit
        reps.append(x)
        sizes.append(len(orbit) * H.order)
        inters.append(intersection(H, conjugate(S, x)))
    return DoubleCosetDecomposition(G, H, S, tuple(reps), tuple(inters), tuple(sizes))


def conjugates(G: Group, A: Group) -> list[Group]:
    """The conjugacy class of the subgroup ``A``, found by conjugating with generators."""
    out = {A.frozen(): A}
    todo = [A]
    while todo:
        B = todo.pop()
        for g in G.gens:
            C = conjugate(B, g)
            if C.frozen() not in out:
                out[C.frozen()] = C
                todo.append(C)
    return list(out.values())


def focal_subgroup(G: Group, H: Group) -> Group:
    """``<[h, x] : x in G, h in H ∩ x H x^-1>``.

    ``x`` runs over representatives of the cosets ``xH``; replacing ``x`` by
    ``xh'`` only changes the generator by an element of ``[H, H]``, which is
    added separately.
    """
    _same_carrier(G, H)
    if is_normal(H, G):
        return commutator_subgroup(H, G)
    seeds = list(derived_subgroup(H).gens)
    covered: set = set()
    Hset = H.frozen()
    for x in G.elements:
        if x in covered:
            continue
        covered |= {G.mul(x, h) for h in H.elements}
        xi = G.inv(x)
        for h in H.elements:
            # h in x H x^-1  <=>  x^-1 h x in H
            if G.mul(G.mul(xi, h), x) in Hset:
                seeds.append(commutator(G, h, x))
    els, gens = _incremental(G.carrier, sorted(set(seeds)), G.order)
    return Group(G.carrier, els, gens)


def cyclic_subgroup_classes(G: Group) -> list[Group]:
    """One cyclic subgroup per conjugacy class, trivial subgroup first.

    The representative of each class is generated by the smallest element
    (in the element order) among all generators of all members.
    """
    seen: set = set()
    reps = []
    for x in G.elements:
        C = cyclic_subgroup(G, x)
        key = C.frozen()
        if key in seen:
            continue
        reps.append(C)
        seen.update(D.frozen() for D in conjugates(G, C))
    return reps


def conjugacy_class(G: Group, x) -> frozenset:
    return frozenset(G.conj(x, y) for y in G.elements)


class Abelianization:
    """``H -> H^ab`` as coordinates in invariant-factor form.

    ``coords[h]`` is the image of ``h``; ``lift(v)`` returns an element of ``H``
    with image ``v``.  Iterating yields ``(group, coords)``.
    """

    def __init__(self, H: Group):
        self.source = H
        gens = list(H.gens)
        t = len(gens)
        e = H.identity
        vec = {e: (0,) * t}
        frontier = [e]
        rels = []
        while frontier:
            nxt = []
            for x in frontier:
                cx = vec[x]
                for j, g in enumerate(gens):
                    y = H.mul(x, g)
                    step = tuple(c + (1 if k == j else 0) for k, c in enumerate(cx))
                    if y in vec:
                        rels.append([a - b for a, b in zip(step, vec[y])])
                    else:
                        vec[y] = step
                        nxt.append(y)
            frontier = nxt
        n = max(H.order, 1)
        ech = _echelon(rels, [n] * t) if t else []
        _, D, V, Vinv = _snf(ech, want_u=False, want_v=True) if t else (None, [], [], [])
        diag = [D[i][i] for i in range(t)]
        keep = [i for i, d in enumerate(diag) if d != 1]
        self.group = FinAb(tuple(diag[i] for i in keep))
        self.coords = {}
        for x, c in vec.items():
            self.coords[x] = self.group.reduce(
                [sum(c[r] * V[r][col] for r in range(t)) for col in keep])
        self._gen_lifts = []
        for i in keep:
            y = e
            for j, g in enumerate(gens):
                y = H.mul(y, H.power(g, Vinv[i][j]))
            self._gen_lifts.append(y)
        self.generator_images = {g: self.coords[g] for g in gens}

    def __iter__(self):
        return iter((self.group, self.coords))

    def __call__(self, h) -> tuple:
        return self.coords[h]

    def lift(self, v: Sequence[int]):
        H = self.source
        y = H.identity
        for c, g in zip(self.group.reduce(v), self._gen_lifts):
            if c:
                y = H.mul(y, H.power(g, c))
        return y

    def kernel(self) -> Group:
        z = self.group.zero()
        return Group(self.source.carrier, [x for x, c in self.coords.items() if c == z])


def abelianization(H: Group) -> Abelianization:
    if "ab" not in H._cache:
        H._cache["ab"] = Abelianization(H)
    return H._cache["ab"]


def exponent(G: Group) -> int:
    e = 1
    for x in G.elements:
        o = element_order(G, x)
        e = e * o // gcd(e, o)
    return e

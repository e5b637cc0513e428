"""Independent brute-force oracles and random scenario generators for the tests."""

from __future__ import annotations

import itertools
import random

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from multinorm.engine import ScenarioInput
from multinorm.groups import Group, abelianization, conjugate, subgroup_generated
from multinorm.library import small_groups
from multinorm.scenario import bundled_scenarios, parse_scenario

GROUPS = small_groups()


def bar_multiplier(G: Group) -> list[int]:
    """Invariant factors of ``H_2(G, Z)`` from the normalized bar complex.

    ``H_2`` is finite, so it is the torsion of ``C_2 / im d_3`` with
    ``d_3[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]``.  Every triple is used,
    and the elementary divisors come from sympy.
    """
    e = G.identity
    nz = [x for x in G.elements if x != e]
    if not nz:
        return []
    row = {pair: i for i, pair in enumerate(itertools.product(nz, nz))}
    M = [[0] * len(nz) ** 3 for _ in row]
    for j, (g, h, k) in enumerate(itertools.product(nz, nz, nz)):
        for sign, a, b in ((1, h, k), (-1, G.mul(g, h), k), (1, g, G.mul(h, k)), (-1, g, h)):
            if a != e and b != e:
                M[row[a, b]][j] += sign
    return sorted(abs(int(x)) for x in invariant_factors(Matrix(M)) if abs(int(x)) > 1)


def enumerate_h2_order(G: Group, d: int) -> int:
    """``|H^2(G, Z/d)|`` by listing every normalized 2-cochain.

    Only feasible for tiny groups: there are ``d^((|G|-1)^2)`` cochains.
    """
    els = G.elements
    e = G.identity
    nz = [x for x in els if x != e]
    pairs = list(itertools.product(nz, nz))

    def value(f, a, b):
        return 0 if a == e or b == e else f[a, b]

    cocycles = 0
    for vals in itertools.product(range(d), repeat=len(pairs)):
        f = dict(zip(pairs, vals))
        if all((value(f, h, k) - value(f, G.mul(g, h), k) + value(f, g, G.mul(h, k))
                - value(f, g, h)) % d == 0 for g in nz for h in nz for k in nz):
            cocycles += 1
    boundaries = set()
    for vals in itertools.product(range(d), repeat=len(nz)):
        c = dict(zip(nz, vals))
        c[e] = 0
        boundaries.add(tuple((c[g] + c[h] - c[G.mul(g, h)]) % d for g, h in pairs))
    return cocycles // len(boundaries)


def random_subgroup(G: Group, rng: random.Random, max_gens: int = 2) -> Group:
    k = rng.randint(1, max_gens)
    return subgroup_generated(G, [rng.choice(G.elements) for _ in range(k)])


def random_scenario(rng: random.Random, names=None, max_order: int = 16,
                    n_range=(1, 3), ramified_range=(0, 2)) -> ScenarioInput:
    pool = [k for k, G in GROUPS.items() if G.order <= max_order and (names is None or k in names)]
    G = GROUPS[rng.choice(pool)]
    n = rng.randint(*n_range)
    Hs = [random_subgroup(G, rng) for _ in range(n)]
    ram = [random_subgroup(G, rng) for _ in range(rng.randint(*ramified_range))]
    return ScenarioInput(G, Hs, ram)


def conjugated(sc: ScenarioInput, x) -> ScenarioInput:
    """Every subgroup conjugated by ``x`` (a relabelling of the same fields)."""
    return sc.replace(H_list=[conjugate(H, x) for H in sc.H_list],
                      ramified=[conjugate(S, x) for S in sc.ramified])


def bundled() -> dict[str, ScenarioInput]:
    return {name: parse_scenario(text).build() for name, text in bundled_scenarios().items()}


def corpus(seed: int = 7, extra: int = 25) -> list[tuple[str, ScenarioInput]]:
    """Bundled scenarios plus seeded random ones with ``|G| <= 16``."""
    out = list(bundled().items())
    rng = random.Random(seed)
    out += [(f"random-{k}", random_scenario(rng)) for k in range(extra)]
    return out


def ab_order(H: Group) -> int:
    return abelianization(H).group.order


# -- element-level evaluation of the diagram ---------------------------------


def _closure(G: Group, gens) -> frozenset:
    els = {G.identity}
    frontier = [G.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in els:
                    els.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(els)


def _derived(G: Group, A: frozenset) -> frozenset:
    return _closure(G, {G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b)) for a in A for b in A})


class _AbClasses:
    """``A / [A, A]`` with each class named by its minimal element."""

    def __init__(self, G: Group, A: frozenset):
        self.G = G
        self.D = _derived(G, A)
        self.name = {a: min(G.mul(a, d) for d in self.D) for a in A}
        self.reps = sorted(set(self.name.values()))


def _subgroup_closure(vectors: set, mul) -> set:
    out = set(vectors)
    frontier = list(out)
    while frontier:
        nxt = []
        for u in frontier:
            for v in list(out):
                w = mul(u, v)
                if w not in out:
                    out.add(w)
                    nxt.append(w)
        frontier = nxt
    return out


def brute_diagram(G: Group, Hs, ramified) -> dict:
    """Orders of ``ker psi1``, ``phi(total)`` and ``phi(nr)`` by enumeration.

    Vectors of ``(+) H_i^ab`` are tuples of class names.  Unramified places run
    over every cyclic subgroup of ``G``, ramified ones over the given subgroups.
    """
    Hsets = [H.frozen() for H in Hs]
    abH = [_AbClasses(G, A) for A in Hsets]
    DG = _derived(G, G.frozen())

    def mul(u, v):
        return tuple(ab.name[G.mul(a, b)] for ab, a, b in zip(abH, u, v))

    kernel = set()
    for t in itertools.product(*(ab.reps for ab in abH)):
        p = G.identity
        for h in t:
            p = G.mul(p, h)
        if p in DG:
            kernel.add(t)

    def local_image(S: frozenset) -> set:
        DS = _derived(G, S)
        blocks = []   # (i, x, class reps of the block)
        for i, A in enumerate(Hsets):
            seen = set()
            for x in G.elements:
                if x in seen:
                    continue
                seen |= {G.mul(G.mul(h, x), s) for h in A for s in S}
                xi = G.inv(x)
                B = frozenset(h for h in A if G.mul(G.mul(xi, h), x) in S)
                blocks.append((i, x, _AbClasses(G, B).reps))
        image = set()
        for choice in itertools.product(*(reps for _, _, reps in blocks)):
            p = G.identity
            comp = [G.identity] * len(Hsets)
            for (i, x, _), b in zip(blocks, choice):
                p = G.mul(p, G.mul(G.mul(G.inv(x), b), x))
                comp[i] = G.mul(comp[i], b)
            if p in DS:
                image.add(tuple(ab.name[c] for ab, c in zip(abH, comp)))
        return image

    cyclic = {_closure(G, [x]) for x in G.elements}
    nr_gens = set()
    for S in cyclic:
        nr_gens |= local_image(S)
    nr = _subgroup_closure(nr_gens, mul)
    total_gens = set(nr)
    for S in ramified:
        total_gens |= local_image(S.frozen())
    total = _subgroup_closure(total_gens, mul)
    return {"kernel": len(kernel), "total": len(total), "nr": len(nr),
            "sha": len(kernel) // len(total), "h1": len(kernel) // len(nr), "a": len(total) // len(nr)}

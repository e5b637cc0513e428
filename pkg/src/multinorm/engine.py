"""Obstructions to the multinorm principle and weak approximation.

Everything is computed on the group side.  With ``H_1..H_n <= G`` and a
list of place subgroups ``S`` the maps are

* ``psi1 : (+) H_i^ab -> G^ab`` induced by inclusion;
* per place ``S`` and per ``i``, double cosets ``H_i x S`` give blocks
  ``H_i ∩ x S x^-1``; ``psi2`` sends a block element ``h`` to
  ``x^-1 h x`` in ``S^ab`` and ``phi1`` sends it to its class in ``H_i^ab``.

The obstruction groups are quotients of ``ker psi1`` by images
``phi1(ker psi2)`` joined over ramified places (taken from the input) and
over unramified places (all cyclic subgroups of the ambient group).
When a direct computation in ``G`` is not justified, the same diagram is
evaluated in a Schur covering group.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

from .cover import (COVER_ORDER_CAP, CentralExtension, build_generalized_rep_group,
                    schur_multiplier, verify_cover)
from .errors import InvalidConfiguration, NotContained, OrderCapExceeded, ValidationError
from .groups import (Group, abelianization, center, conjugate, conjugates, cyclic_subgroup_classes,
                     double_cosets, focal_subgroup, intersection, join, preimage)
from .zlin import AbHom, AbSubgroup, FinAb, Quotient, direct_sum, subgroup_join
from .numtheory import prime_factors, is_squarefree

STRATEGIES = ("auto", "direct", "cover")
TAG_DIRECT = "direct-in-G"
TAG_COVER = "via-cover"
TAG_USER = "user-cover"

log = logging.getLogger(__name__)


@dataclass
class ScenarioInput:
    """``G``, the tuple ``H_1..H_n`` and the ramified place subgroups."""

    G: Group
    H_list: Sequence[Group]
    ramified: Sequence[Group] = ()
    h_names: Sequence[str] | None = None
    ramified_names: Sequence[str] | None = None
    strategy: str = "auto"
    cap: int = COVER_ORDER_CAP
    cover: CentralExtension | None = None

    def __post_init__(self):
        self.H_list = tuple(self.H_list)
        self.ramified = tuple(self.ramified)
        if not self.H_list:
            raise ValidationError("the subgroup tuple must be non-empty")
        for k, H in enumerate(self.H_list):
            if not H <= self.G:
                raise ValidationError(f"H_{k + 1} is not a subgroup of G")
        for k, S in enumerate(self.ramified):
            if not S <= self.G:
                raise ValidationError(f"ramified subgroup {k + 1} is not a subgroup of G")
        if self.strategy not in STRATEGIES:
            raise ValidationError(f"unknown strategy {self.strategy!r}")
        if self.h_names is None:
            self.h_names = tuple(f"H{k + 1}" for k in range(len(self.H_list)))
        if self.ramified_names is None:
            self.ramified_names = tuple(f"v{k + 1}" for k in range(len(self.ramified)))

    @property
    def n(self) -> int:
        return len(self.H_list)

    def replace(self, **changes) -> "ScenarioInput":
        kw = dict(G=self.G, H_list=self.H_list, ramified=self.ramified, h_names=self.h_names,
                  ramified_names=self.ramified_names, strategy=self.strategy, cap=self.cap,
                  cover=self.cover)
        kw.update(changes)
        if "H_list" in changes and "h_names" not in changes:
            kw["h_names"] = None
        if "ramified" in changes and "ramified_names" not in changes:
            kw["ramified_names"] = None
        return ScenarioInput(**kw)


@dataclass
class PlaceData:
    """Blocks of one place subgroup ``S`` and the two block maps."""

    subgroup: Group
    blocks: list            # (i, x, block subgroup)
    psi2: AbHom             # blocks -> S^ab
    phi1: AbHom             # blocks -> (+) H_i^ab


class DiagramInstance:
    """The diagram for ``H_1..H_n`` inside ``ambient`` with lazily added places."""

    def __init__(self, ambient: Group, H_list: Sequence[Group]):
        self.ambient = ambient
        self.H_list = tuple(H_list)
        self.ab_H = [abelianization(H) for H in self.H_list]
        self.domain, self.offsets = direct_sum([a.group for a in self.ab_H])
        self.ab_G = abelianization(ambient)
        images = []
        for a in self.ab_H:
            for v in a.group.basis():
                images.append(self.ab_G.coords[a.lift(v)])
        self.psi1 = AbHom(self.domain, self.ab_G.group, tuple(images))
        self._places: dict = {}
        self._local: dict = {}

    # -- coordinates -------------------------------------------------------
    def embed(self, i: int, h) -> tuple[int, ...]:
        """``h in H_i`` as a vector of ``(+) H_j^ab``."""
        v = [0] * self.domain.rank
        off = self.offsets[i]
        for j, c in enumerate(self.ab_H[i].coords[h]):
            v[off + j] = c
        return self.domain.reduce(v)

    def embed_tuple(self, hs: Sequence) -> tuple[int, ...]:
        out = self.domain.zero()
        for i, h in enumerate(hs):
            out = self.domain.add(out, self.embed(i, h))
        return out

    def component_lifts(self, v: Sequence[int]) -> tuple:
        """Elements ``h_i in H_i`` whose classes give the vector ``v``."""
        out = []
        for i, a in enumerate(self.ab_H):
            off = self.offsets[i]
            out.append(a.lift(v[off:off + a.group.rank]))
        return tuple(out)

    @property
    def kernel_psi1(self) -> AbSubgroup:
        if "ker" not in self._local:
            self._local["ker"] = self.psi1.kernel()
        return self._local["ker"]

    # -- places ------------------------------------------------------------
    def place(self, S: Group) -> PlaceData:
        key = S.frozen()
        if key not in self._places:
            self._places[key] = self._build_place(S)
        return self._places[key]

    def _build_place(self, S: Group) -> PlaceData:
        G = self.ambient
        ab_S = abelianization(S)
        blocks, abs_ = [], []
        for i, H in enumerate(self.H_list):
            dc = double_cosets(G, H, S)
            for x, B in zip(dc.representatives, dc.intersections):
                if B.order == 1:
                    continue
                blocks.append((i, x, B))
                abs_.append(abelianization(B))
        bdom, _ = direct_sum([a.group for a in abs_])
        psi2_imgs, phi1_imgs = [], []
        for (i, x, B), a in zip(blocks, abs_):
            xi = G.inv(x)
            for v in a.group.basis():
                b = a.lift(v)
                psi2_imgs.append(ab_S.coords[G.mul(G.mul(xi, b), x)])
                phi1_imgs.append(self.embed(i, b))
        psi2 = AbHom(bdom, ab_S.group, tuple(psi2_imgs))
        phi1 = AbHom(bdom, self.domain, tuple(phi1_imgs))
        return PlaceData(S, blocks, psi2, phi1)

    def local_kernel_image(self, S: Group) -> AbSubgroup:
        key = ("loc", S.frozen())
        if key not in self._local:
            P = self.place(S)
            K = P.psi2.kernel()
            self._local[key] = AbSubgroup.generated(self.domain, [P.phi1(g) for g in K.gens])
        return self._local[key]

    def unramified_places(self, reduce: bool = True) -> list[Group]:
        """Place subgroups whose images join to the unramified image.

        Without reduction this is one cyclic subgroup per conjugacy class.
        With reduction each ``S`` is replaced by ``S M`` for
        ``M = Z ∩ (∩ H_i)`` (same image) and only subgroups not contained in
        a conjugate of an already kept one survive (monotone images).
        """
        G = self.ambient
        classes = cyclic_subgroup_classes(G)
        if not reduce:
            return classes
        M = center(G)
        for H in self.H_list:
            M = intersection(M, H)
        enlarged = {}
        for S in classes:
            T = join(S, M) if M.order > 1 else S
            enlarged.setdefault(T.frozen(), T)
        cands = sorted(enlarged.values(), key=lambda T: (-T.order, min(T.elements)))
        kept: list[Group] = []
        kept_conj: list[list[frozenset]] = []
        for T in cands:
            tset = T.frozen()
            if any(tset <= c for conj in kept_conj for c in conj):
                continue
            kept.append(T)
            kept_conj.append([C.frozen() for C in conjugates(G, T)])
        return kept

    def unramified_kernel_image(self, reduce: bool = True) -> AbSubgroup:
        key = ("nr", reduce)
        if key not in self._local:
            parts = [self.local_kernel_image(S) for S in self.unramified_places(reduce)]
            self._local[key] = subgroup_join(parts, self.domain)
        return self._local[key]

    def ramified_kernel_image(self, ramified: Sequence[Group]) -> AbSubgroup:
        nr = self.unramified_kernel_image()
        return subgroup_join([nr] + [self.local_kernel_image(S) for S in ramified], self.domain)


def build_diagram(G_like: Group, H_list: Sequence[Group], place_subgroups: Sequence[Group] = ()) -> DiagramInstance:
    D = DiagramInstance(G_like, H_list)
    for S in place_subgroups:
        if not S <= G_like:
            raise ValidationError("place subgroup is not contained in the ambient group")
        D.place(S)
    return D


def local_kernel_image(D: DiagramInstance, S: Group) -> AbSubgroup:
    return D.local_kernel_image(S)


def unramified_kernel_image(D: DiagramInstance, reduce: bool = True) -> AbSubgroup:
    return D.unramified_kernel_image(reduce)


# -- reports -----------------------------------------------------------------


@dataclass
class ObstructionReport:
    strategy: str
    first_obstruction: FinAb | None = None
    sha: FinAb | None = None
    h1: FinAb | None = None
    a: FinAb | None = None
    places: list = field(default_factory=list)
    witnesses: list | None = None
    ambient_order: int | None = None

    def __post_init__(self):
        if None not in (self.sha, self.h1, self.a) and self.h1.order != self.sha.order * self.a.order:
            raise AssertionError(f"|H1| = {self.h1.order} differs from |Sha|*|A| = "
                                 f"{self.sha.order * self.a.order}")

    def groups(self) -> dict:
        """Invariant factors of the computed groups, keyed by name."""
        out = {}
        for key in ("first_obstruction", "sha", "h1", "a"):
            g = getattr(self, key)
            if g is not None:
                out[key] = list(g.invariants)
        return out


def _quotient(B: AbSubgroup, C: AbSubgroup, what: str) -> Quotient:
    if not C <= B:
        raise NotContained(f"chain violated: {what}")
    return Quotient(B, C)


@dataclass
class _Evaluation:
    diagram: DiagramInstance
    kernel: AbSubgroup
    total: AbSubgroup
    nr: AbSubgroup
    sha: Quotient
    h1: Quotient
    a: Quotient


def evaluate(ambient: Group, H_list: Sequence[Group], ramified: Sequence[Group],
             reduce: bool = True) -> _Evaluation:
    """Run the diagram in ``ambient`` and return all subgroups and quotients."""
    D = DiagramInstance(ambient, H_list)
    ker = D.kernel_psi1
    nr = D.unramified_kernel_image(reduce)
    total = D.ramified_kernel_image(ramified) if reduce else subgroup_join(
        [nr] + [D.local_kernel_image(S) for S in ramified], D.domain)
    sha = _quotient(ker, total, "phi1(ker psi2) ⊆ ker psi1")
    h1 = _quotient(ker, nr, "phi1(ker psi2_nr) ⊆ ker psi1")
    a = _quotient(total, nr, "phi1(ker psi2_nr) ⊆ phi1(ker psi2)")
    return _Evaluation(D, ker, total, nr, sha, h1, a)


def _witness_tuples(ev: _Evaluation) -> list:
    return [ev.diagram.component_lifts(g) for g in ev.sha.generators]


def _place_contributions(ev: _Evaluation, ramified: Sequence[Group], names: Sequence[str]) -> list:
    out = []
    D = ev.diagram
    for name, S in zip(names, ramified):
        local = subgroup_join([ev.nr, D.local_kernel_image(S)], D.domain)
        q = Quotient(local, ev.nr).group
        out.append({"name": name, "order": S.order, "defect": list(q.invariants)})
    return out


def first_obstruction(scenario: ScenarioInput, witnesses: bool = False) -> ObstructionReport:
    """``F(N, L, K) = ker psi1 / phi1(ker psi2)`` computed in ``G``."""
    ev = evaluate(scenario.G, scenario.H_list, scenario.ramified)
    rep = ObstructionReport(TAG_DIRECT, first_obstruction=FinAb(ev.sha.group.moduli),
                            ambient_order=scenario.G.order)
    if witnesses:
        rep.witnesses = _witness_tuples(ev)
    return rep


def squarefree_indices(scenario: ScenarioInput) -> list[int]:
    G = scenario.G
    return [k for k, H in enumerate(scenario.H_list) if is_squarefree(G.order // H.order)]


def fast_path_indices(scenario: ScenarioInput, multiplier_order: int) -> list[int]:
    """Indices ``j`` with ``p^2 ∤ [G:H_j]`` for every prime ``p | |M(G)|``."""
    G = scenario.G
    primes = prime_factors(multiplier_order)
    return [k for k, H in enumerate(scenario.H_list)
            if all((G.order // H.order) % (p * p) for p in primes)]


def select_strategy(scenario: ScenarioInput, strategy: str | None = None) -> str:
    """Resolve ``auto`` to ``direct`` or ``cover``; explicit choices pass through."""
    strategy = strategy or scenario.strategy
    if strategy not in STRATEGIES:
        raise ValidationError(f"unknown strategy {strategy!r}")
    if strategy != "auto":
        return strategy
    if scenario.cover is not None:
        return "cover"
    if squarefree_indices(scenario):
        return "direct"
    try:
        M = schur_multiplier(scenario.G, scenario.cap)
    except OrderCapExceeded as exc:
        raise OrderCapExceeded(
            f"{exc}. No index [G:H_i] is square-free, so the multiplier is needed: "
            "supply a covering group (--cover) or shrink the instance") from None
    return "direct" if fast_path_indices(scenario, M.order) else "cover"


def obstructions(scenario: ScenarioInput, strategy: str | None = None,
                 cover: CentralExtension | None = None, witnesses: bool = False,
                 reduce: bool = True) -> ObstructionReport:
    """``F``, ``Sha(T)``, ``H^1(K, Pic X)`` and ``A(T)`` for the scenario."""
    t0 = time.perf_counter()
    if cover is not None:
        scenario = scenario.replace(cover=cover)
    chosen = select_strategy(scenario, strategy)
    G = scenario.G
    first = evaluate(G, scenario.H_list, scenario.ramified, reduce)
    if chosen == "direct":
        ev, tag, St = first, TAG_DIRECT, scenario.ramified
    else:
        if scenario.cover is not None:
            ext = scenario.cover
            check = verify_cover(ext, G, scenario.cap)
            if not check.ok:
                raise ValidationError(f"supplied cover fails clause ({check.clause}): {check.message}")
            tag = TAG_USER
        else:
            ext = build_generalized_rep_group(G, scenario.cap)
            tag = TAG_COVER
        Ht = [ext.lift(H) for H in scenario.H_list]
        St = [ext.lift(S) for S in scenario.ramified]
        ev = evaluate(ext.group, Ht, St, reduce)
    rep = ObstructionReport(
        tag,
        first_obstruction=FinAb(first.sha.group.moduli),
        sha=FinAb(ev.sha.group.moduli),
        h1=FinAb(ev.h1.group.moduli),
        a=FinAb(ev.a.group.moduli),
        places=_place_contributions(ev, St, scenario.ramified_names),
        ambient_order=ev.diagram.ambient.order,
    )
    if witnesses:
        rep.witnesses = _witness_tuples(ev)
    log.info("obstructions: %s, |ambient| = %d, %.3fs", tag, ev.diagram.ambient.order,
             time.perf_counter() - t0)
    return rep


# -- structural checks -------------------------------------------------------


def structural_checks(ambient: Group, H_list: Sequence[Group], ramified: Sequence[Group] = ()) -> dict:
    """Evaluate the invariants every diagram must satisfy.

    Returns a dict of booleans: the subgroup chain, the order identity,
    Lemma-3.5-type memberships ``(.., m, .., m^-1, ..)``, the product bound
    ``h_1...h_n in Phi(H)`` for the unramified image, and the inclusion of
    each ``Phi(H_i)`` block.
    """
    ev = evaluate(ambient, H_list, ramified)
    D = ev.diagram
    nr = ev.nr
    out = {
        "chain": ev.nr <= ev.total and ev.total <= ev.kernel,
        "order_identity": ev.h1.group.order == ev.sha.group.order * ev.a.group.order,
    }
    ok = True
    n = len(H_list)
    for i1 in range(n):
        for i2 in range(i1 + 1, n):
            for m in intersection(H_list[i1], H_list[i2]).elements:
                hs = [ambient.identity] * n
                hs[i1], hs[i2] = m, ambient.inv(m)
                if D.embed_tuple(hs) not in nr:
                    ok = False
    out["simultaneous_intersection"] = ok
    H = join(*H_list)
    focal_H = focal_subgroup(ambient, H)
    ok = True
    for g in nr.gens:
        prod = ambient.identity
        for h in D.component_lifts(g):
            prod = ambient.mul(prod, h)
        if prod not in focal_H:
            ok = False
    out["product_in_focal"] = ok
    ok = True
    for i, Hi in enumerate(H_list):
        for h in focal_subgroup(ambient, Hi).gens:
            if D.embed(i, h) not in nr:
                ok = False
    out["focal_blocks_included"] = ok
    return out


def focal_image(G: Group, H: Group) -> AbSubgroup:
    """The image of ``Phi^G(H)`` in ``H^ab``."""
    ab = abelianization(H)
    return AbSubgroup.generated(ab.group, [ab.coords[x] for x in focal_subgroup(G, H).gens])

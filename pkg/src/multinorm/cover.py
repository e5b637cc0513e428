"""Second cohomology, Schur multipliers and Schur covering groups.

``H^2(G, Z/d)`` (trivial action) is computed from normalized 2-cochains.
The cocycle identity is imposed only for triples ``(g, h, k)`` with ``k`` a
generator: for a normalized cochain this already forces the twisted product
on ``G x Z/d`` to be associative, so the solution space is the full cocycle
group while the system shrinks from ``|G|^3`` to ``|G|^2 * #gens`` rows.
The system is diagonalized over ``Z/d`` with numpy.

The multiplier is ``M(G) ~ H^2(G, Z/d) / Ext(G^ab, Z/d)`` for ``d = |G|``,
the ``Ext`` part being the image of the Bockstein (carry) cocycles of
``Hom(G, Z/d)``.  A Schur cover is assembled from cocycles whose classes
form a basis of that quotient, then verified independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Sequence

import numpy as np

from .errors import CoverSearchExhausted, OrderCapExceeded
from .groups import (Group, PairCarrier, abelianization, center, derived_subgroup,
                     intersection)
from .zlin import AbHom, AbSubgroup, FinAb, Quotient, xgcd

COVER_ORDER_CAP = 32

__all__ = [
    "Cocycle",
    "SecondCohomology",
    "CentralExtension",
    "CoverVerification",
    "cohomology_h2",
    "schur_multiplier",
    "build_generalized_rep_group",
    "extension_from_cocycles",
    "extension_from_projection",
    "verify_cover",
]


@dataclass(frozen=True, eq=False)
class Cocycle:
    """A normalized 2-cochain ``G x G -> Z/d`` indexed by element positions."""

    group: Group
    modulus: int
    table: tuple[tuple[int, ...], ...]

    def __call__(self, g, h) -> int:
        G = self.group
        return self.table[G.index(g)][G.index(h)]

    def is_normalized(self) -> bool:
        e = self.group.index(self.group.identity)
        return not any(self.table[e]) and not any(row[e] for row in self.table)

    def is_cocycle(self) -> bool:
        """Check the cocycle identity on every triple."""
        G = self.group
        n = G.order
        mt = _mult_table(G)
        f = self.table
        d = self.modulus
        for g in range(n):
            for h in range(n):
                gh = mt[g][h]
                for k in range(n):
                    if (f[g][h] + f[gh][k] - f[h][k] - f[g][mt[h][k]]) % d:
                        return False
        return True


def _mult_table(G: Group) -> list[list[int]]:
    if "mt" not in G._cache:
        els = G.elements
        G._cache["mt"] = [[G.index(G.mul(x, y)) for y in els] for x in els]
    return G._cache["mt"]


def _check_cap(G: Group, cap: int) -> None:
    if G.order > cap:
        raise OrderCapExceeded(
            f"|G| = {G.order} exceeds the cocycle cap {cap}; supply a covering group "
            "or use an instance where the direct (non-cover) strategy applies")


def _unit_towards(p: int, d: int) -> int:
    """A unit ``u`` mod ``d`` with ``u * p == gcd(p, d) (mod d)``."""
    g = gcd(p, d)
    dg = d // g
    u0 = pow((p // g) % dg, -1, dg) if dg > 1 else 1
    for k in range(g + 1):
        u = u0 + k * dg
        if gcd(u, d) == 1:
            return u % d
    raise AssertionError("no unit found")  # unreachable


def _diagonalize_mod(E: np.ndarray, d: int):
    """Diagonalize ``E`` over ``Z/d`` by unimodular row/column operations.

    Only column operations are tracked.  Returns ``(pivots, V, Vinv)`` where
    ``(U E V)`` is diagonal mod ``d`` with the given pivot values (each a
    divisor of ``d``) in its leading positions.
    """
    A = np.array(E, dtype=np.int64) % d
    m, k = A.shape
    V = np.eye(k, dtype=np.int64)
    Vinv = np.eye(k, dtype=np.int64)
    pivots: list[int] = []
    t = 0
    while t < min(m, k):
        sub = A[t:, t:]
        live = np.flatnonzero(sub.any(axis=1))
        if live.size == 0:
            break
        # drop zero rows now and then to keep the active block small
        if live.size < 0.75 * (m - t):
            A = np.vstack([A[:t], A[t:][live]])
            m = A.shape[0]
            sub = A[t:, t:]
            live = np.arange(m - t)
        # prefer a unit pivot found in a small window of rows
        i = j = None
        for lo in range(0, live.size, 64):
            win = sub[live[lo:lo + 64]]
            unit = np.flatnonzero(((win == 1) | (win == d - 1)).ravel())
            if unit.size:
                r, j = divmod(int(unit[0]), win.shape[1])
                i = int(live[lo + r])
                break
        if i is None:
            g_all = np.where(sub != 0, np.gcd(sub, d), d + 1)
            i, j = np.unravel_index(int(np.argmin(g_all)), sub.shape)
        i += t
        j += t
        if i != t:
            A[[t, i]] = A[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            Vinv[[t, j]] = Vinv[[j, t]]
        while True:
            p = int(A[t, t])
            u = _unit_towards(p, d)
            if u != 1:
                A[t] = (A[t] * u) % d
            g = int(A[t, t])
            # clear column t below the pivot with row operations
            col = A[t + 1:, t]
            nz = np.flatnonzero(col)
            if nz.size:
                q = col[nz]
                div = q % g == 0
                rows = nz[div] + t + 1
                if rows.size:
                    A[rows] = (A[rows] - (q[div] // g)[:, None] * A[t]) % d
                bad = nz[~div]
                if bad.size:
                    r = int(bad[0]) + t + 1
                    b = int(A[r, t])
                    h, s, tt = xgcd(g, b)
                    rt, rr = A[t].copy(), A[r].copy()
                    A[t] = (s * rt + tt * rr) % d
                    A[r] = ((g // h) * rr - (b // h) * rt) % d
                    continue
            # clear row t right of the pivot with tracked column operations
            row = A[t, t + 1:]
            nz = np.flatnonzero(row)
            if nz.size:
                q = row[nz]
                div = q % g == 0
                cols = nz[div] + t + 1
                if cols.size:
                    qq = q[div] // g
                    # column t is zero below the pivot, so only row t changes
                    A[t, cols] = 0
                    V[:, cols] = (V[:, cols] - V[:, [t]] * qq[None, :]) % d
                    Vinv[t] = (Vinv[t] + qq @ Vinv[cols]) % d
                bad = nz[~div]
                if bad.size:
                    c = int(bad[0]) + t + 1
                    b = int(A[t, c])
                    h, s, tt = xgcd(g, b)
                    ct, cc = A[:, t].copy(), A[:, c].copy()
                    A[:, t] = (s * ct + tt * cc) % d
                    A[:, c] = ((g // h) * cc - (b // h) * ct) % d
                    vt, vc = V[:, t].copy(), V[:, c].copy()
                    V[:, t] = (s * vt + tt * vc) % d
                    V[:, c] = ((g // h) * vc - (b // h) * vt) % d
                    wt, wc = Vinv[t].copy(), Vinv[c].copy()
                    Vinv[t] = ((g // h) * wt + (b // h) * wc) % d
                    Vinv[c] = (s * wc - tt * wt) % d
                    continue
            break
        pivots.append(int(A[t, t]))
        t += 1
    return pivots, V, Vinv


class SecondCohomology:
    """``H^2(G, Z/d)`` with trivial action, plus class bookkeeping.

    ``group`` is the cohomology group in invariant-factor form;
    ``representatives`` holds one normalized cocycle per canonical
    generator; ``classify`` maps any normalized cocycle to its class.
    """

    def __init__(self, G: Group, d: int, cap: int = COVER_ORDER_CAP):
        if d < 1:
            raise ValueError("modulus must be >= 1")
        _check_cap(G, cap)
        self.G = G
        self.d = d
        n = G.order
        e = G.index(G.identity)
        nonid = [i for i in range(n) if i != e]
        self._var = {}
        for a in nonid:
            for b in nonid:
                self._var[(a, b)] = len(self._var)
        k = len(self._var)
        self._k = k
        if d == 1 or k == 0:
            self.group = FinAb(())
            self.representatives: list[Cocycle] = []
            self._trivial = True
            return
        self._trivial = False
        mt = _mult_table(G)
        gens = [G.index(x) for x in G.gens]
        rows = []
        for g in nonid:
            for h in nonid:
                gh = mt[g][h]
                for kk in gens:
                    row = np.zeros(k, dtype=np.int64)
                    # f(g,h) + f(gh,k) - f(h,k) - f(g,hk)
                    for (a, b), s in (((g, h), 1), ((gh, kk), 1), ((h, kk), -1), ((g, mt[h][kk]), -1)):
                        if a != e and b != e:
                            row[self._var[(a, b)]] += s
                    if row.any():
                        rows.append(row)
        E = np.array(rows, dtype=np.int64) if rows else np.zeros((0, k), dtype=np.int64)
        pivots, V, Vinv = _diagonalize_mod(E, d)
        self._V = V
        self._Vinv = Vinv
        self._pivots = pivots
        r = len(pivots)
        # Z^2 coordinates: y = Vinv x; y_i = (d/g_i) z_i for pivots, free beyond
        self._zslots = [(i, g) for i, g in enumerate(pivots) if g > 1] + [(i, d) for i in range(r, k)]
        self.cocycles = FinAb(tuple(g for _, g in self._zslots))
        bgens = []
        for x in nonid:
            vec = np.zeros(k, dtype=np.int64)
            for a in nonid:
                for b in nonid:
                    s = int(a == x) + int(b == x) - int(mt[a][b] == x)
                    if s:
                        vec[self._var[(a, b)]] += s
            bgens.append(self._zcoords(vec))
        self.coboundaries = AbSubgroup.generated(self.cocycles, bgens)
        self._quot = Quotient(AbSubgroup.full(self.cocycles), self.coboundaries)
        self.group = self._quot.group
        self.representatives = [self.cocycle_of(v) for v in self.group.basis()]

    def _zcoords(self, vec: np.ndarray) -> tuple[int, ...]:
        d = self.d
        y = (self._Vinv @ (np.asarray(vec, dtype=np.int64) % d)) % d
        z = []
        r = len(self._pivots)
        for i, g in enumerate(self._pivots):
            step = d // g
            if y[i] % step:
                raise ValueError("cochain is not a cocycle")
            if g > 1:
                z.append(int(y[i]) // step)
        z.extend(int(y[i]) for i in range(r, self._k))
        return self.cocycles.reduce(z)

    def _vector(self, c: Cocycle | Sequence[Sequence[int]]) -> np.ndarray:
        table = c.table if isinstance(c, Cocycle) else c
        vec = np.zeros(self._k, dtype=np.int64)
        for (a, b), idx in self._var.items():
            vec[idx] = int(table[a][b]) % self.d
        return vec

    def classify(self, c: Cocycle | Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Class of a normalized cocycle in ``self.group`` coordinates."""
        if self._trivial:
            return ()
        return self._quot.project(self._zcoords(self._vector(c)))

    def cocycle_of(self, coords: Sequence[int]) -> Cocycle:
        """A normalized cocycle representing the class with these coordinates."""
        n = self.G.order
        table = [[0] * n for _ in range(n)]
        if not self._trivial:
            z = self._quot.lift(coords)
            d = self.d
            y = np.zeros(self._k, dtype=np.int64)
            for (i, g), zi in zip(self._zslots, z):
                y[i] = (zi * (d // g)) % d
            x = (self._V @ y) % d
            for (a, b), idx in self._var.items():
                table[a][b] = int(x[idx])
        return Cocycle(self.G, self.d, tuple(tuple(r) for r in table))


def cohomology_h2(G: Group, d: int, cap: int = COVER_ORDER_CAP):
    """``(H^2(G, Z/d), representative cocycles)``."""
    h = _h2(G, d, cap)
    return h.group, list(h.representatives)


def _h2(G: Group, d: int, cap: int = COVER_ORDER_CAP) -> SecondCohomology:
    key = ("h2", d)
    if key not in G._cache:
        G._cache[key] = SecondCohomology(G, d, cap)
    return G._cache[key]


def bockstein_cocycles(G: Group, d: int) -> list[Cocycle]:
    """Carry cocycles ``(phi(g) + phi(h) - phi(gh)) / d`` for generators of ``Hom(G, Z/d)``."""
    ab = abelianization(G)
    n = G.order
    mt = _mult_table(G)
    out = []
    for j, e in enumerate(ab.group.moduli):
        if d % e:
            raise ValueError(f"modulus {d} is not a multiple of the exponent of G^ab")
        phi = [(ab.coords[x][j] * (d // e)) % d for x in G.elements]
        table = tuple(tuple((phi[a] + phi[b] - phi[mt[a][b]]) // d for b in range(n))
                      for a in range(n))
        out.append(Cocycle(G, d, table))
    return out


class _Multiplier:
    def __init__(self, G: Group, cap: int):
        d = max(G.order, 1)
        self.d = d
        self.h2 = _h2(G, d, cap)
        ext_gens = [self.h2.classify(c) for c in bockstein_cocycles(G, d)]
        self.ext = AbSubgroup.generated(self.h2.group, ext_gens)
        self.quotient = Quotient(AbSubgroup.full(self.h2.group), self.ext)
        self.group = FinAb(self.quotient.group.moduli)
        ab = abelianization(G).group
        if self.h2.group.order != ab.order * self.group.order:
            raise AssertionError(
                f"|H^2(G,Z/{d})| = {self.h2.group.order} but |G^ab||M(G)| = "
                f"{ab.order * self.group.order}")


def _multiplier(G: Group, cap: int = COVER_ORDER_CAP) -> _Multiplier:
    if "schur" not in G._cache:
        G._cache["schur"] = _Multiplier(G, cap)
    return G._cache["schur"]


def schur_multiplier(G: Group, cap: int = COVER_ORDER_CAP) -> FinAb:
    """``M(G)`` in invariant-factor form."""
    return _multiplier(G, cap).group


# -- central extensions ------------------------------------------------------


@dataclass(eq=False)
class CentralExtension:
    """``1 -> kernel -> group -> base -> 1`` with ``projection`` onto ``base``."""

    group: Group
    base: Group
    projection: Callable
    kernel: Group
    moduli: tuple = ()
    cocycles: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False)

    def lift(self, B: Group) -> Group:
        """Full preimage of a subgroup ``B`` of the base."""
        key = B.frozen()
        if key not in self._cache:
            lam = self.projection
            self._cache[key] = Group(self.group.carrier,
                                     [x for x in self.group.elements if lam(x) in B])
        return self._cache[key]


def extension_from_cocycles(G: Group, cocycles: Sequence[Cocycle]) -> CentralExtension:
    """Pair group ``G x (Z/d_1 + ... + Z/d_k)`` twisted by the given cocycles."""
    moduli = tuple(c.modulus for c in cocycles)
    carrier = PairCarrier(G, moduli, [c.table for c in cocycles])
    coeffs = list(itertools.product(*(range(m) for m in moduli)))
    els = [(g, a) for g in range(G.order) for a in coeffs]
    Gt = Group(carrier, els)
    e = G.index(G.identity)
    kernel = Group(carrier, [(e, a) for a in coeffs])
    return CentralExtension(Gt, G, carrier.project, kernel, moduli, tuple(cocycles))


def extension_from_projection(Gt: Group, G: Group, gens: Sequence, images: Sequence) -> CentralExtension:
    """Extension given by a group and the images of its generators in ``G``.

    The projection is extended along words; an inconsistent assignment is
    kept as-is (first value wins) so that :func:`verify_cover` can report it.
    """
    table = {Gt.identity: G.identity}
    frontier = [Gt.identity]
    pairs = list(zip(gens, images))
    while frontier:
        nxt = []
        for x in frontier:
            for g, im in pairs:
                y = Gt.mul(x, g)
                if y not in table:
                    table[y] = G.mul(table[x], im)
                    nxt.append(y)
        frontier = nxt
    kernel = Group(Gt.carrier, [x for x, v in table.items() if v == G.identity])
    return CentralExtension(Gt, G, table.__getitem__, kernel)


@dataclass
class CoverVerification:
    ok: bool
    clause: str | None = None
    message: str = ""
    is_schur: bool = False
    kernel_meet_derived: tuple = ()
    multiplier: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_cover(ext: CentralExtension, G: Group, cap: int = COVER_ORDER_CAP) -> CoverVerification:
    """Check the generalized-representation-group conditions.

    Clauses: ``a`` projection is a surjective homomorphism, ``b`` its kernel
    is the stated central subgroup, ``c`` ``kernel ∩ [Gt, Gt]`` matches
    ``M(G)``.
    """
    Gt = ext.group
    lam = ext.projection
    try:
        for x in Gt.elements:
            if lam(x) not in G:
                return CoverVerification(False, "a", f"projection leaves G at {x!r}")
            for s in Gt.gens:
                if lam(Gt.mul(x, s)) != G.mul(lam(x), lam(s)):
                    return CoverVerification(False, "a", f"projection is not multiplicative at {x!r}, {s!r}")
    except KeyError as exc:
        return CoverVerification(False, "a", f"projection undefined at {exc}")
    if {lam(x) for x in Gt.elements} != set(G.elements):
        return CoverVerification(False, "a", "projection is not surjective")
    ker = {x for x in Gt.elements if lam(x) == G.identity}
    if ker != set(ext.kernel.elements):
        return CoverVerification(False, "b", "kernel of the projection differs from the stated kernel")
    Z = center(Gt)
    if not all(x in Z for x in ext.kernel.elements):
        return CoverVerification(False, "b", "kernel is not central")
    D = derived_subgroup(Gt)
    meet = intersection(ext.kernel, D)
    meet_inv = abelianization(meet).group.invariants
    mult = schur_multiplier(G, cap).invariants
    is_schur = all(x in D for x in ext.kernel.elements)
    if meet_inv != mult:
        return CoverVerification(False, "c", f"kernel ∩ [Gt,Gt] has invariants {list(meet_inv)}, "
                                 f"M(G) has {list(mult)}", is_schur, meet_inv, mult)
    return CoverVerification(True, None, "ok", is_schur, meet_inv, mult)


def build_generalized_rep_group(G: Group, cap: int = COVER_ORDER_CAP) -> CentralExtension:
    """Construct and verify a Schur covering group of ``G``."""
    if "cover" in G._cache:
        return G._cache["cover"]
    mult = _multiplier(G, cap)
    Q = mult.quotient
    invariants = mult.group.moduli
    d = mult.d
    chosen: list[Cocycle] = []
    candidates: list[list[Cocycle]] = []
    for i, e in enumerate(invariants):
        he = _h2(G, e, cap)
        images = []
        for c in he.representatives:
            scaled = tuple(tuple((v * (d // e)) % d for v in row) for row in c.table)
            images.append(Q.project(mult.h2.classify(scaled)))
        f = AbHom(he.group, Q.group, tuple(images))
        target = tuple(int(j == i) for j in range(len(invariants)))
        x = f.preimage(target)
        if x is None:
            raise CoverSearchExhausted(f"no Z/{e}-valued class reaches multiplier generator {i}")
        chosen.append(he.cocycle_of(x))
        # alternatives for the fallback search: shift by kernel generators
        alts = [he.cocycle_of(he.group.add(x, kv)) for kv in f.kernel().gens[:3]]
        candidates.append([chosen[-1]] + alts)
    ext = extension_from_cocycles(G, chosen)
    report = verify_cover(ext, G, cap)
    if not report.ok:
        for combo in itertools.product(*candidates):
            ext = extension_from_cocycles(G, list(combo))
            report = verify_cover(ext, G, cap)
            if report.ok:
                break
        else:
            raise CoverSearchExhausted(f"no candidate cover verified: {report.message}")
    G._cache["cover"] = ext
    return ext

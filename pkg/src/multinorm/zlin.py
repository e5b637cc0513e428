"""Exact integer linear algebra and finite abelian groups.

Everything here works over Python integers, so there is no overflow to worry
about.  A finite abelian group is stored as a list of cyclic moduli; direct
sums just concatenate those lists so each summand stays addressable.  The
canonical invariant-factor form is computed on demand.

Subgroups are stored as full-rank lattices in ``Z^k`` containing the relation
lattice ``diag(moduli) Z^k``.  The Hermite normal form of that lattice is
unique, which makes subgroup equality a tuple comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from .errors import CarrierMismatch, NotContained

__all__ = [
    "xgcd",
    "smith_normal_form",
    "FinAb",
    "AbHom",
    "AbSubgroup",
    "Quotient",
    "hom_kernel",
    "hom_image",
    "subgroup_quotient",
    "quotient_map",
    "subgroup_join",
    "subgroup_contains",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _snf(M: Sequence[Sequence[int]], want_u: bool = True, want_v: bool = True):
    """Smith normal form with optional transform tracking.

    Returns ``(U, D, V, Vinv)``; untracked transforms come back as ``None``.
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if want_u else None
    V = _identity(n) if want_v else None
    Vinv = _identity(n) if want_v else None

    def swap_rows(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_addmul(dst, src, q):
        # row[dst] += q * row[src]
        if q == 0:
            return
        rd, rs = A[dst], A[src]
        for k in range(len(rd)):
            if rs[k]:
                rd[k] += q * rs[k]
        if U is not None:
            ud, us = U[dst], U[src]
            for k in range(len(ud)):
                if us[k]:
                    ud[k] += q * us[k]

    def col_addmul(dst, src, q):
        # col[dst] += q * col[src]; inverse is row[src] -= q * row[dst] on Vinv
        if q == 0:
            return
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            vs, vd = Vinv[src], Vinv[dst]
            for k in range(len(vs)):
                if vd[k]:
                    vs[k] -= q * vd[k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, bi, bj = best
        swap_rows(t, bi)
        swap_cols(t, bj)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    row_addmul(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    col_addmul(j, t, -(A[t][j] // p))
            # a nonzero remainder is strictly smaller than the pivot: move it in
            cand = None
            for i in range(t + 1, m):
                if A[i][t] and (cand is None or abs(A[i][t]) < cand[0]):
                    cand = (abs(A[i][t]), "r", i)
            for j in range(t + 1, n):
                if A[t][j] and (cand is None or abs(A[t][j]) < cand[0]):
                    cand = (abs(A[t][j]), "c", j)
            if cand is not None:
                if cand[1] == "r":
                    swap_rows(t, cand[2])
                else:
                    swap_cols(t, cand[2])
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    return U, A, V, Vinv


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns ``(U, D, V)`` as lists of lists with ``U @ M @ V == D``, ``U`` and
    ``V`` unimodular and the diagonal of ``D`` a non-negative divisibility
    chain (zeros last).
    """
    U, D, V, _ = _snf(M)
    return U, D, V


def _diagonal(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def canonical_invariants(moduli: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of ``Z/m_1 + ... + Z/m_k`` (trivial factors dropped)."""
    moduli = [int(m) for m in moduli]
    if not moduli:
        return ()
    diag = [[moduli[i] if i == j else 0 for j in range(len(moduli))] for i in range(len(moduli))]
    _, D, _, _ = _snf(diag, want_u=False, want_v=False)
    return tuple(d for d in _diagonal(D) if d != 1)


@dataclass(frozen=True)
class FinAb:
    """Finite abelian group ``Z/m_1 + ... + Z/m_k``.

    Elements are integer tuples reduced coordinatewise.  ``moduli`` need not
    form a divisibility chain; ``invariants`` gives the canonical form.
    """

    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        mods = tuple(int(m) for m in self.moduli)
        if any(m < 2 for m in mods):
            raise ValueError(f"cyclic moduli must be >= 2, got {mods}")
        object.__setattr__(self, "moduli", mods)

    @classmethod
    def from_invariants(cls, invariants: Iterable[int]) -> "FinAb":
        return cls(tuple(m for m in invariants if m != 1))

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def invariants(self) -> tuple[int, ...]:
        return canonical_invariants(self.moduli)

    @property
    def exponent(self) -> int:
        e = 1
        for m in self.moduli:
            e = e * m // gcd(e, m)
        return e

    def is_trivial(self) -> bool:
        return not self.moduli

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.moduli)

    def basis(self) -> list[tuple[int, ...]]:
        k = len(self.moduli)
        return [tuple(int(i == j) for j in range(k)) for i in range(k)]

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != len(self.moduli):
            raise ValueError(f"vector of length {len(v)} in group of rank {len(self.moduli)}")
        return tuple(int(x) % m for x, m in zip(v, self.moduli))

    def add(self, u, v):
        return tuple((a + b) % m for a, b, m in zip(u, v, self.moduli))

    def scale(self, c: int, v):
        return tuple((c * a) % m for a, m in zip(v, self.moduli))

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(m) for m in self.moduli))

    def element_order(self, v) -> int:
        o = 1
        for a, m in zip(v, self.moduli):
            c = m // gcd(a % m, m)
            o = o * c // gcd(o, c)
        return o

    def __str__(self) -> str:
        inv = self.invariants
        return " x ".join(f"Z/{d}" for d in inv) if inv else "trivial"


def direct_sum(groups: Iterable[FinAb]) -> tuple[FinAb, list[int]]:
    """Concatenate moduli; also return the starting offset of every summand."""
    mods: list[int] = []
    offsets = []
    for g in groups:
        offsets.append(len(mods))
        mods.extend(g.moduli)
    return FinAb(tuple(mods)), offsets


# -- modular echelon ---------------------------------------------------------


def _echelon(rows: Iterable[Sequence[int]], moduli: Sequence[int]) -> list[list[int]]:
    """Row echelon basis of ``span(rows) + diag(moduli) Z^k``.

    Every column ends up with a pivot dividing its modulus; non-pivot entries
    are reduced modulo the column modulus, which is a lattice operation here
    because the relation vectors are part of the span.
    """
    k = len(moduli)
    piv: list[list[int]] = [[moduli[j] if c == j else 0 for c in range(k)] for j in range(k)]
    for v in rows:
        _insert(piv, [int(x) for x in v], moduli)
    return piv


def _insert(piv: list[list[int]], v: list[int], moduli: Sequence[int]) -> None:
    k = len(moduli)
    for j in range(k):
        v[j] %= moduli[j]
        if v[j] == 0:
            continue
        r = piv[j]
        p = r[j]
        if v[j] % p == 0:
            q = v[j] // p
            for c in range(j, k):
                if r[c]:
                    v[c] = (v[c] - q * r[c]) % moduli[c]
            continue
        g, s, t = xgcd(p, v[j])
        a, b = p // g, v[j] // g
        new_r = [0] * k
        new_v = [0] * k
        for c in range(j, k):
            new_r[c] = s * r[c] + t * v[c]
            new_v[c] = a * v[c] - b * r[c]
        for c in range(j + 1, k):
            new_r[c] %= moduli[c]
            new_v[c] %= moduli[c]
        new_v[j] = 0
        piv[j] = new_r
        v[:] = new_v


def _hermite_reduce(piv: list[list[int]], moduli: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    k = len(moduli)
    H = [list(r) for r in piv]
    for j in range(k):
        p = H[j][j]
        for i in range(j):
            q = H[i][j] // p
            if q:
                for c in range(j, k):
                    H[i][c] -= q * H[j][c]
    return tuple(tuple(r) for r in H)


@dataclass(frozen=True, eq=False)
class AbSubgroup:
    """Subgroup of a :class:`FinAb` in canonical (Hermite) form.

    ``hnf`` is the upper-triangular basis of the lattice
    ``span(gens) + diag(moduli) Z^k``; two subgroups are equal exactly when
    their ambients and ``hnf`` agree.
    """

    ambient: FinAb
    hnf: tuple[tuple[int, ...], ...]

    @classmethod
    def generated(cls, ambient: FinAb, gens: Iterable[Sequence[int]]) -> "AbSubgroup":
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != ambient.rank:
                raise ValueError("generator length does not match ambient rank")
        piv = _echelon(gens, ambient.moduli)
        return cls(ambient, _hermite_reduce(piv, ambient.moduli))

    @classmethod
    def trivial(cls, ambient: FinAb) -> "AbSubgroup":
        return cls.generated(ambient, [])

    @classmethod
    def full(cls, ambient: FinAb) -> "AbSubgroup":
        return cls.generated(ambient, ambient.basis())

    @property
    def gens(self) -> list[tuple[int, ...]]:
        out = []
        for r in self.hnf:
            v = self.ambient.reduce(r)
            if any(v):
                out.append(v)
        return out

    @property
    def order(self) -> int:
        return prod(m // self.hnf[j][j] for j, m in enumerate(self.ambient.moduli))

    def is_trivial(self) -> bool:
        return self.order == 1

    def __contains__(self, v) -> bool:
        if len(v) != self.ambient.rank:
            return False
        w = [int(x) for x in v]
        k = self.ambient.rank
        for j in range(k):
            w[j] %= self.ambient.moduli[j]
            if w[j] == 0:
                continue
            p = self.hnf[j][j]
            if w[j] % p:
                return False
            q = w[j] // p
            row = self.hnf[j]
            for c in range(j, k):
                if row[c]:
                    w[c] -= q * row[c]
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, AbSubgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.hnf == other.hnf

    def __hash__(self):
        return hash((self.ambient, self.hnf))

    def __le__(self, other: "AbSubgroup") -> bool:
        return subgroup_contains(other, self)

    def elements(self) -> Iterator[tuple[int, ...]]:
        """Enumerate elements (small groups only)."""
        seen = {self.ambient.zero()}
        frontier = [self.ambient.zero()]
        gens = self.gens
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.ambient.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return iter(sorted(seen))

    @property
    def invariants(self) -> tuple[int, ...]:
        return subgroup_quotient(self.ambient, self, AbSubgroup.trivial(self.ambient)).invariants


@dataclass(frozen=True, eq=False)
class AbHom:
    """Homomorphism between finite abelian groups given by generator images."""

    domain: FinAb
    codomain: FinAb
    images: tuple[tuple[int, ...], ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        imgs = tuple(self.codomain.reduce(v) for v in self.images)
        if len(imgs) != self.domain.rank:
            raise ValueError(
                f"need {self.domain.rank} generator images, got {len(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def zero(cls, domain: FinAb, codomain: FinAb) -> "AbHom":
        return cls(domain, codomain, tuple(codomain.zero() for _ in domain.moduli))

    @classmethod
    def identity(cls, group: FinAb) -> "AbHom":
        return cls(group, group, tuple(group.basis()))

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.codomain.rank
        for c, img in zip(v, self.images):
            if c:
                for l, x in enumerate(img):
                    out[l] += c * x
        return self.codomain.reduce(out)

    def is_well_defined(self) -> bool:
        return all(not any(self.codomain.scale(m, img))
                   for m, img in zip(self.domain.moduli, self.images))

    def _solver(self) -> list[list[int]]:
        if "ech" not in self._cache:
            m = self.codomain.rank
            k = self.domain.rank
            rows = []
            for j, img in enumerate(self.images):
                rows.append(list(img) + [int(c == j) for c in range(k)])
            self._cache["ech"] = _echelon(rows, self.codomain.moduli + self.domain.moduli)
        return self._cache["ech"]

    def kernel(self) -> AbSubgroup:
        return hom_kernel(self)

    def image(self) -> AbSubgroup:
        return hom_image(self)

    def preimage(self, target: Sequence[int]):
        """Some ``x`` with ``self(x) == target``, or ``None`` if there is none."""
        m = self.codomain.rank
        k = self.domain.rank
        mods = self.codomain.moduli + self.domain.moduli
        piv = self._solver()
        v = list(self.codomain.reduce(target)) + [0] * k
        for j in range(m):
            v[j] %= mods[j]
            if v[j] == 0:
                continue
            p = piv[j][j]
            if v[j] % p:
                return None
            q = v[j] // p
            for c in range(j, m + k):
                if piv[j][c]:
                    v[c] = (v[c] - q * piv[j][c]) % mods[c]
        x = self.domain.reduce([-c for c in v[m:]])
        assert self(x) == self.codomain.reduce(target)
        return x

    def compose(self, inner: "AbHom") -> "AbHom":
        """``self o inner``."""
        if inner.codomain != self.domain:
            raise CarrierMismatch("codomain of inner map differs from domain")
        return AbHom(inner.domain, self.codomain, tuple(self(img) for img in inner.images))


def hom_kernel(f: AbHom) -> AbSubgroup:
    """Exact kernel of ``f`` as a canonical subgroup of its domain."""
    m = f.codomain.rank
    piv = f._solver()
    gens = [row[m:] for row in piv[m:]]
    return AbSubgroup.generated(f.domain, gens)


def hom_image(f: AbHom) -> AbSubgroup:
    return AbSubgroup.generated(f.codomain, f.images)


def subgroup_join(parts: Sequence[AbSubgroup], ambient: FinAb | None = None) -> AbSubgroup:
    """Subgroup generated by all ``parts`` (``ambient`` needed only if empty)."""
    if not parts:
        if ambient is None:
            raise ValueError("ambient group required for an empty join")
        return AbSubgroup.trivial(ambient)
    amb = parts[0].ambient
    if ambient is not None and ambient != amb:
        raise CarrierMismatch("join parts do not live in the given ambient")
    if any(p.ambient != amb for p in parts):
        raise CarrierMismatch("join parts live in different ambient groups")
    piv = [list(r) for r in parts[0].hnf]
    for p in parts[1:]:
        for r in p.hnf:
            _insert(piv, list(r), amb.moduli)
    return AbSubgroup(amb, _hermite_reduce(piv, amb.moduli))


def subgroup_contains(B: AbSubgroup, C: AbSubgroup) -> bool:
    """True when ``C`` is a subgroup of ``B``."""
    if B.ambient != C.ambient:
        raise CarrierMismatch("subgroups live in different ambient groups")
    return all(r in B for r in C.hnf)


def _coords_in(H: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    """Solve ``x @ H == v`` for upper-triangular, full-rank ``H`` (exact)."""
    k = len(H)
    x = [0] * k
    w = [int(c) for c in v]
    for j in range(k):
        p = H[j][j]
        if w[j] % p:
            raise NotContained("vector is not in the lattice")
        x[j] = w[j] // p
        if x[j]:
            row = H[j]
            for c in range(j, k):
                if row[c]:
                    w[c] -= x[j] * row[c]
    return x


class Quotient:
    """The quotient ``B / C`` together with its projection and a section."""

    def __init__(self, B: AbSubgroup, C: AbSubgroup):
        if not subgroup_contains(B, C):
            raise NotContained("quotient denominator is not contained in numerator")
        self.numerator = B
        self.denominator = C
        HB = B.hnf
        rel = [_coords_in(HB, row) for row in C.hnf]
        _, D, V, Vinv = _snf(rel, want_u=False, want_v=True)
        diag = _diagonal(D)
        self._keep = [i for i, d in enumerate(diag) if d != 1]
        self.group = FinAb(tuple(diag[i] for i in self._keep))
        self._V = V
        self._lifts = []
        k = len(HB)
        for i in self._keep:
            x = Vinv[i]
            vec = [sum(x[r] * HB[r][c] for r in range(k)) for c in range(k)]
            self._lifts.append(B.ambient.reduce(vec))

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of ``v`` (an element of the numerator) in the quotient."""
        amb = self.numerator.ambient
        x = _coords_in(self.numerator.hnf, amb.reduce(v))
        k = len(x)
        y = [sum(x[r] * self._V[r][c] for r in range(k)) for c in self._keep]
        return self.group.reduce(y)

    def lift(self, coords: Sequence[int]) -> tuple[int, ...]:
        amb = self.numerator.ambient
        out = amb.zero()
        for c, g in zip(coords, self._lifts):
            out = amb.add(out, amb.scale(c, g))
        return out

    @property
    def generators(self) -> list[tuple[int, ...]]:
        """Numerator elements projecting onto the canonical quotient basis."""
        return list(self._lifts)


def quotient_map(B: AbSubgroup, C: AbSubgroup) -> Quotient:
    return Quotient(B, C)


def subgroup_quotient(A: FinAb, B: AbSubgroup, C: AbSubgroup) -> FinAb:
    """Invariant-factor form of ``B / C`` for ``C <= B <= A``.

    Raises :class:`NotContained` when ``C`` is not inside ``B``.
    """
    if B.ambient != A or C.ambient != A:
        raise CarrierMismatch("subgroups do not live in the given ambient group")
    q = Quotient(B, C)
    return FinAb(q.group.moduli)

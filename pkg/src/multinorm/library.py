"""Small permutation groups used in examples, tests and scenario files."""

from __future__ import annotations

from .groups import Group, PermCarrier, generate_group


def perm_from_cycles(cycles, degree: int) -> tuple[int, ...]:
    """Build an image tuple from 0-based cycles, e.g. ``[(0, 1, 2)]``."""
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


def cyclic(n: int) -> Group:
    if n == 1:
        return generate_group([], PermCarrier(1))
    return generate_group([perm_from_cycles([tuple(range(n))], n)])


def dihedral(n: int) -> Group:
    """Symmetries of the ``n``-gon, order ``2n`` (``n >= 3``)."""
    r = perm_from_cycles([tuple(range(n))], n)
    s = tuple((-i) % n for i in range(n))
    return generate_group([r, s])


def symmetric(n: int) -> Group:
    if n < 2:
        return generate_group([], PermCarrier(n))
    return generate_group([perm_from_cycles([(0, 1)], n), perm_from_cycles([tuple(range(n))], n)])


def alternating(n: int) -> Group:
    gens = [perm_from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return generate_group(gens, PermCarrier(n))


def direct_product(*factors: Group) -> Group:
    """Direct product acting on the disjoint union of the factors' points."""
    degs = [f.carrier.degree for f in factors]
    total = sum(degs)
    gens = []
    off = 0
    for f, d in zip(factors, degs):
        for g in f.gens:
            img = list(range(total))
            for i in range(d):
                img[off + i] = off + g[i]
            gens.append(tuple(img))
        off += d
    return generate_group(gens, PermCarrier(total))


def abelian(*orders: int) -> Group:
    """``Z/n_1 x ... x Z/n_k`` as a product of cycles."""
    return direct_product(*(cyclic(n) for n in orders))


def elementary_abelian(p: int, k: int) -> Group:
    return abelian(*([p] * k))


def regular_from_table(table) -> Group:
    """Right-regular permutation representation of a Cayley table."""
    n = len(table)
    gens = [tuple(table[i][g] for i in range(n)) for g in range(n)]
    return generate_group(gens, PermCarrier(n))


def quaternion() -> Group:
    """Quaternion group of order 8, regular on 8 points."""
    # unit products: _QMUL[a][b] = (sign, unit) for units 1, i, j, k
    _QMUL = [[(1, 0), (1, 1), (1, 2), (1, 3)],
             [(1, 1), (-1, 0), (1, 3), (-1, 2)],
             [(1, 2), (-1, 3), (-1, 0), (1, 1)],
             [(1, 3), (1, 2), (-1, 1), (-1, 0)]]
    # element 2*u + (sign == -1) encodes sign * unit
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            s, u = _QMUL[a // 2][b // 2]
            if (a % 2) ^ (b % 2):
                s = -s
            row.append(2 * u + (s == -1))
        table.append(row)
    return regular_from_table(table)


def small_groups() -> dict[str, Group]:
    """A handful of named groups of order at most 24."""
    return {
        "C1": cyclic(1),
        "C2": cyclic(2),
        "C3": cyclic(3),
        "C4": cyclic(4),
        "V4": elementary_abelian(2, 2),
        "C5": cyclic(5),
        "C6": cyclic(6),
        "S3": symmetric(3),
        "C8": cyclic(8),
        "C2xC4": abelian(2, 4),
        "C2^3": elementary_abelian(2, 3),
        "D8": dihedral(4),
        "Q8": quaternion(),
        "C3^2": elementary_abelian(3, 2),
        "D10": dihedral(5),
        "C12": cyclic(12),
        "A4": alternating(4),
        "D12": dihedral(6),
        "C2xC6": abelian(2, 6),
        "C4^2": abelian(4, 4),
        "C2^4": elementary_abelian(2, 4),
        "C2xD8": direct_product(cyclic(2), dihedral(4)),
        "C2xQ8": direct_product(cyclic(2), quaternion()),
        "S4": symmetric(4),
        "C2xA4": direct_product(cyclic(2), alternating(4)),
        "S3xC3": direct_product(symmetric(3), cyclic(3)),
    }

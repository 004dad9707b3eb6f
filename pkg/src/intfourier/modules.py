"""Finitely generated modules over Lambda = Z[1/N] and maps between them.

A module is given by generator orders: 0 for a free generator, otherwise
a positive integer o with the generator killed by o. Elements are vectors
over Lambda; the entry at a torsion generator only matters modulo its
order. Homomorphisms are matrices whose columns are the images of the
source generators.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .lambda_arith import (
    InvertedPrimeSet,
    Matrix,
    inverse,
    is_prime,
    prime_factors,
    smith_normal_form,
    vp,
    zeros,
)

Vector = list[Fraction]


@dataclass(frozen=True)
class ModuleType:
    """Isomorphism type: free rank plus primary torsion orders, sorted."""

    free_rank: int
    torsion: tuple[tuple[int, int], ...] = ()  # (p, k) per cyclic summand Z/p^k

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "ModuleType":
        free = sum(1 for o in orders if o == 0)
        tors = []
        for o in orders:
            if o:
                for p in prime_factors(o):
                    tors.append((p, vp(o, p)))
        return cls(free, tuple(sorted(tors)))

    def orders(self) -> list[int]:
        return [0] * self.free_rank + [p**k for p, k in self.torsion]

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def torsion_counts(self) -> list[list[int]]:
        """[[p, k, count], ...] in sorted order."""
        counts: dict[tuple[int, int], int] = {}
        for pk in self.torsion:
            counts[pk] = counts.get(pk, 0) + 1
        return [[p, k, c] for (p, k), c in sorted(counts.items())]

    @classmethod
    def from_counts(cls, free_rank: int, counts: Sequence[Sequence[int]]) -> "ModuleType":
        tors = []
        for p, k, c in counts:
            if not is_prime(p) or k < 1 or c < 0:
                raise DomainError(f"bad torsion entry {[p, k, c]}")
            tors += [(p, k)] * c
        return cls(free_rank, tuple(sorted(tors)))

    def to_json(self) -> dict:
        return {"freeRank": self.free_rank, "torsion": self.torsion_counts()}

    def __str__(self):
        parts = [f"L^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{p}^{k}" for p, k in self.torsion]
        return " + ".join(parts) or "0"


def check_orders(orders: Sequence[int], ring: InvertedPrimeSet):
    for o in orders:
        if o < 0 or o == 1:
            raise DomainError(f"generator order {o} must be 0 or > 1")
        if o and any(o % p == 0 for p in ring.primes):
            raise DomainError(f"torsion order {o} shares a prime with the inverted set {ring}")


def reduce_vector(v: Sequence[Fraction], orders: Sequence[int], ring: InvertedPrimeSet) -> Vector:
    """Canonical representative: torsion entries as integers in [0, o)."""
    out = []
    for x, o in zip(v, orders):
        out.append(Fraction(ring.residue(x, o)) if o else ring.check(x))
    return out


def reduce_matrix(a: Matrix, row_orders: Sequence[int], ring: InvertedPrimeSet) -> Matrix:
    return [reduce_vector(row, [o] * len(row), ring) for row, o in zip(a, row_orders)]


def is_zero_vector(v: Sequence[Fraction], orders: Sequence[int], ring: InvertedPrimeSet) -> bool:
    return not any(reduce_vector(v, orders, ring))


def is_zero_map(a: Matrix, row_orders: Sequence[int], ring: InvertedPrimeSet) -> bool:
    return not any(any(row) for row in reduce_matrix(a, row_orders, ring))


def relation_matrix(orders: Sequence[int]) -> Matrix:
    """Columns o_j e_j for the torsion generators."""
    tors = [j for j, o in enumerate(orders) if o]
    out = zeros(len(orders), len(tors))
    for c, j in enumerate(tors):
        out[j][c] = Fraction(orders[j])
    return out


def hstack(*mats: Matrix, nrows: int) -> Matrix:
    return [sum((list(m[i]) for m in mats), []) for i in range(nrows)]


def columns(a: Matrix, nrows: int) -> list[Vector]:
    ncols = len(a[0]) if nrows and a else 0
    return [[a[i][j] for i in range(nrows)] for j in range(ncols)]


def from_columns(cols: Sequence[Sequence[Fraction]], nrows: int) -> Matrix:
    return [[Fraction(c[i]) for c in cols] for i in range(nrows)]


def is_well_defined(a: Matrix, src: Sequence[int], tgt: Sequence[int], ring: InvertedPrimeSet) -> bool:
    """o_j * (column j) vanishes in the target for every torsion source generator."""
    for j, o in enumerate(src):
        if o and not is_zero_vector([a[i][j] * o for i in range(len(tgt))], tgt, ring):
            return False
    return True


def null_space(a: Matrix, ncols: int, ring: InvertedPrimeSet) -> list[Vector]:
    """A Lambda-basis of {x : a x = 0} (a has ncols columns)."""
    if ncols == 0:
        return []
    if not a:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    _, d, v = smith_normal_form(a, ring)
    r = sum(1 for i in range(min(len(d), ncols)) if d[i][i])
    return [[v[i][j] for i in range(ncols)] for j in range(r, ncols)]


def span_basis(gens: Sequence[Vector], n: int, ring: InvertedPrimeSet) -> list[Vector]:
    """A Lambda-basis of the span of the given vectors in Lambda^n."""
    if not gens:
        return []
    m = from_columns(gens, n)
    u, d, _ = smith_normal_form(m, ring)
    uinv = inverse(u)
    out = []
    for j in range(min(n, len(gens))):
        if d[j][j]:
            out.append([uinv[i][j] * d[j][j] for i in range(n)])
    return out


def solve(a: Matrix, y: Sequence[Fraction], nrows: int, ring: InvertedPrimeSet) -> Vector | None:
    """A Lambda-solution x of a x = y, or None."""
    ncols = len(a[0]) if a and nrows else 0
    if ncols == 0:
        return [] if not any(y) else None
    u, d, v = smith_normal_form(a, ring)
    uy = [sum((u[i][k] * y[k] for k in range(nrows)), Fraction(0)) for i in range(nrows)]
    z = [Fraction(0)] * ncols
    for i in range(nrows):
        di = d[i][i] if i < ncols else Fraction(0)
        if di:
            q = uy[i] / di
            if not ring.contains(q):
                return None
            z[i] = q
        elif uy[i]:
            return None
    return [sum((v[i][k] * z[k] for k in range(ncols)), Fraction(0)) for i in range(ncols)]


@dataclass
class Kernel:
    """ker(A: S -> T) as generators in S with an isomorphism type."""

    generators: list[Vector]  # minimal generators, one per cyclic summand
    orders: list[int]
    type: ModuleType


def split_primary(gens: list[Vector], orders: list[int]) -> tuple[list[Vector], list[int]]:
    """Replace a generator of composite order by its primary parts."""
    out_g, out_o = [], []
    for v, o in zip(gens, orders):
        if o == 0:
            out_g.append(v)
            out_o.append(0)
            continue
        for p in prime_factors(o):
            pk = p ** vp(o, p)
            out_g.append([x * (o // pk) for x in v])
            out_o.append(pk)
    return out_g, out_o


def present_quotient(basis: list[Vector], relations: list[Vector], n: int, ring: InvertedPrimeSet):
    """Span(basis) / span(relations), with relations inside span(basis).

    Returns cyclic generators (in ambient coordinates) and their orders.
    """
    k = len(basis)
    if k == 0:
        return [], []
    b = from_columns(basis, n)
    coords = []
    for r in relations:
        c = solve(b, r, n, ring)
        if c is None:
            raise DomainError("relation outside the lattice")
        coords.append(c)
    if not coords:
        return [list(v) for v in basis], [0] * k
    cmat = from_columns(coords, k)
    u, d, _ = smith_normal_form(cmat, ring)
    uinv = inverse(u)
    # new generators: columns of B * U^{-1}; relation orders: diagonal of D
    newb = [[sum((b[i][m] * uinv[m][j] for m in range(k)), Fraction(0)) for i in range(n)] for j in range(k)]
    gens, orders = [], []
    for j in range(k):
        dj = d[j][j] if j < len(coords) else Fraction(0)
        if dj and ring.is_unit(dj):
            continue
        gens.append(newb[j])
        orders.append(int(dj))
    return split_primary(gens, orders)


def hom_kernel(a: Matrix, src: Sequence[int], tgt: Sequence[int], ring: InvertedPrimeSet) -> Kernel:
    """Kernel of the map a: (+ Lambda/src_j) -> (+ Lambda/tgt_i)."""
    m, n = len(tgt), len(src)
    if n == 0:
        return Kernel([], [], ModuleType(0))
    if m:
        dt = relation_matrix(tgt)
        big = hstack(a, [[-x for x in row] for row in dt], nrows=m)
        ker = null_space(big, n + len(dt[0]), ring)
    else:
        ker = null_space([], n, ring)
    lattice = span_basis([v[:n] for v in ker], n, ring)
    rels = columns(relation_matrix(src), n)
    gens, orders = present_quotient(lattice, rels, n, ring)
    return Kernel(gens, orders, ModuleType.from_orders(orders))


def is_surjective(a: Matrix, src: Sequence[int], tgt: Sequence[int], ring: InvertedPrimeSet) -> bool:
    m = len(tgt)
    if m == 0:
        return True
    big = hstack(a, relation_matrix(tgt), nrows=m)
    if not big[0]:
        return False
    _, d, _ = smith_normal_form(big, ring)
    return all(i < len(d[0]) and d[i][i] and ring.is_unit(d[i][i]) for i in range(m))


def is_isomorphism(a: Matrix, src: Sequence[int], tgt: Sequence[int], ring: InvertedPrimeSet) -> bool:
    return hom_kernel(a, src, tgt, ring).type.is_zero() and is_surjective(a, src, tgt, ring)


def in_submodule(y: Vector, gens: Sequence[Vector], orders: Sequence[int], ring: InvertedPrimeSet) -> bool:
    """Is y in span(gens) inside the module with the given generator orders?"""
    n = len(orders)
    cols = [list(g) for g in gens] + columns(relation_matrix(orders), n)
    if not cols:
        return not any(y)
    return solve(from_columns(cols, n), y, n, ring) is not None


def submodule_contains(big: Sequence[Vector], small: Sequence[Vector], orders, ring) -> bool:
    return all(in_submodule(list(v), big, orders, ring) for v in small)

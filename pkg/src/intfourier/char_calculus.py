"""Integral Todd and Chern-character polynomials.

Two independent routes are provided. The default route works in the ring
of Chern classes directly: power sums p_k come from Newton's identities
and multiplicative sequences are exp(sum a_k p_k). The root route expands
the product of one-variable series over explicit Chern roots and reduces
it with :func:`intfourier.series.roots_to_chern`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError, InvariantFailure
from .lambda_arith import big_t, divisibility_witness
from .polynomials import GradedPolynomial, chern, exp_truncated
from .series import (
    BundleSpec,
    RootSeries,
    log_todd_univariate,
    roots_to_chern,
    todd_product,
)

P = GradedPolynomial


@lru_cache(maxsize=None)
def power_sums(n: int, tag: str = "", primed: bool = False) -> tuple[GradedPolynomial, ...]:
    """(p_0, ..., p_n) as polynomials in c_1..c_n via Newton's identities.

    p_0 is returned as 0; callers supply the rank separately.
    """
    c = [P.const(1)] + [P.var(chern(i, tag, primed)) for i in range(1, n + 1)]
    p = [P()]
    for k in range(1, n + 1):
        s = P()
        for i in range(1, k):
            s = s + c[i] * p[k - i] * (-1) ** (i - 1)
        s = s + c[k] * ((-1) ** (k - 1) * k)
        p.append(s)
    return tuple(p)


def kill_above_rank(poly: GradedPolynomial, rank: int | None, tag: str = "", primed: bool = False, upto: int = 0):
    """Set c_i = 0 for i > rank (no-op in symbolic-rank mode)."""
    if rank is None:
        return poly
    zero = {chern(i, tag, primed): 0 for i in range(rank + 1, max(upto, rank) + 1)}
    return poly.subs(zero) if zero else poly


@lru_cache(maxsize=None)
def _todd_total(cap: int, tag: str, inverse: bool) -> GradedPolynomial:
    a = log_todd_univariate(cap)
    p = power_sums(cap, tag)
    x = P()
    for k in range(1, cap + 1):
        if a[k]:
            x = x + p[k] * (-a[k] if inverse else a[k])
    return exp_truncated(x, cap)


def todd_component(m: int, rank: int | None = None, tag: str = "") -> GradedPolynomial:
    """Td_m, the weight-m part of prod_i Q(alpha_i), in c_1..c_m."""
    if m < 0:
        raise DomainError("degree must be >= 0")
    return kill_above_rank(_todd_total(m, tag, False).component(m), rank, tag, upto=m)


def _integral(poly: GradedPolynomial, what: str) -> GradedPolynomial:
    if not poly.is_integral():
        raise InvariantFailure(f"{what} has non-integral coefficients: {poly}")
    return poly


def ftd(m: int, rank: int | None = None, tag: str = "") -> GradedPolynomial:
    """fTd_m = T_m * Td_m, checked integral."""
    return _integral(todd_component(m, rank, tag) * big_t(m), f"fTd_{m}")


def chern_char_component(m: int, tag: str = "", primed: bool = True) -> GradedPolynomial:
    """fs_m = m! ch_m in r, c'_1..c'_m (equal to the power sum p_m for m >= 1)."""
    if m < 0:
        raise DomainError("degree must be >= 0")
    if m == 0:
        return P.var("r")
    return power_sums(m, tag, primed)[m]


def ftd_inv(rank: int, n: int, tag: str = "") -> GradedPolynomial:
    """fTd^inv_n = (n+rank)! * {prod_i Q(alpha_i)^-1}_n, checked integral."""
    if rank < 1 or n < 0:
        raise DomainError("need rank >= 1 and n >= 0")
    part = kill_above_rank(_todd_total(n, tag, True).component(n), rank, tag, upto=n)
    return _integral(part * factorial(n + rank), f"fTd^inv_{n} (rank {rank})")


def fct_coefficient(m: int, j: int) -> int:
    """T_m / (j! T_{m-j}), via the divisibility lemma."""
    # j! = ((j-1)+1)!, so the lemma applies with ms = [j-1], ns = [m-j]
    if j == 0:
        return divisibility_witness([], [m], m)
    return divisibility_witness([j - 1], [m - j], m)


def fct(m: int, rank: int | None = None) -> GradedPolynomial:
    """fCT_m = sum_j T_m/(j! T_{m-j}) fs_j(r, c') fTd_{m-j}(c)."""
    out = P()
    for j in range(m + 1):
        out = out + chern_char_component(j) * ftd(m - j, rank) * fct_coefficient(m, j)
    return _integral(out, f"fCT_{m}")


def dual(poly: GradedPolynomial) -> GradedPolynomial:
    """Chern polynomial of the dual bundle: c_i -> (-1)^i c_i."""
    return poly.weight_sign()


def whitney_substitution(total: BundleSpec, parts: list[BundleSpec], max_weight: int) -> dict:
    """c_i(total) = sum over compositions of products c_j(part)."""
    c_total = P.const(1)
    for b in parts:
        cb = P.const(1)
        for i in range(1, b.rank + 1):
            cb = cb + P.var(b.chern_var(i))
        c_total = c_total.mul(cb, max_weight)
    return {total.chern_var(i): c_total.component(i) for i in range(1, max_weight + 1)}


# ---------------------------------------------------------------------------
# root route


def ftd_roots(m: int, bundle: BundleSpec, sign: int = 1) -> GradedPolynomial:
    """fTd_m of the bundle (sign=+1) or of its dual (sign=-1) via root series."""
    s = todd_product(bundle.roots, m, sign).component(m).scale(big_t(m))
    return roots_to_chern(s, [bundle])


def ftd_inv_roots(n: int, bundle: BundleSpec, sign: int = 1) -> GradedPolynomial:
    s = todd_product(bundle.roots, n, sign, inverse=True).component(n).scale(factorial(n + bundle.rank))
    return roots_to_chern(s, [bundle])


def chern_char_roots(m: int, bundle: BundleSpec) -> GradedPolynomial:
    """m! ch_m from sum exp(alpha_i), in the bundle's Chern variables (m >= 1)."""
    if m == 0:
        return P.const(bundle.rank)
    roots = bundle.roots
    total = RootSeries(roots, {}, m)
    for i in range(len(roots)):
        total = total + RootSeries.linear(roots, [int(i == j) for j in range(len(roots))], m) ** m
    return roots_to_chern(total, [bundle])


def todd_roots(m: int, bundle: BundleSpec) -> GradedPolynomial:
    """Td_m via root series (rational coefficients)."""
    return roots_to_chern(todd_product(bundle.roots, m).component(m), [bundle])

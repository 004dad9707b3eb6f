"""Truncated power series in Chern roots and their reduction to Chern classes."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Mapping, Sequence

from .errors import DomainError
from .polynomials import GradedPolynomial, chern

Exponents = tuple[int, ...]


# ---------------------------------------------------------------------------
# univariate coefficient lists


def series_inverse(a: Sequence[Fraction], n: int) -> list[Fraction]:
    """First n+1 coefficients of 1/a(x); a[0] must be nonzero."""
    if not a[0]:
        raise DomainError("series is not invertible")
    b = [Fraction(0)] * (n + 1)
    b[0] = 1 / Fraction(a[0])
    for k in range(1, n + 1):
        s = sum((a[j] * b[k - j] for j in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        b[k] = -s * b[0]
    return b


@lru_cache(maxsize=None)
def todd_univariate(n: int) -> tuple[Fraction, ...]:
    """Coefficients of Q(x) = x / (1 - exp(-x)) up to x^n."""
    # (1 - exp(-x)) / x = sum (-1)^k x^k / (k+1)!
    a = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]
    return tuple(series_inverse(a, n))


@lru_cache(maxsize=None)
def todd_inverse_univariate(n: int) -> tuple[Fraction, ...]:
    """Coefficients of 1/Q(x) = (1 - exp(-x)) / x up to x^n."""
    return tuple(Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1))


@lru_cache(maxsize=None)
def log_todd_univariate(n: int) -> tuple[Fraction, ...]:
    """Coefficients of log Q(x) up to x^n (constant term 0)."""
    q = todd_univariate(n)
    y = list(q)
    y[0] = Fraction(0)
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for j in range(1, n + 1):
        power = [sum((power[i] * y[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1)]
        sign = Fraction((-1) ** (j - 1), j)
        out = [o + sign * p for o, p in zip(out, power)]
    return tuple(out)


# ---------------------------------------------------------------------------
# bundles and root series


@dataclass(frozen=True)
class BundleSpec:
    """A formal vector bundle given by its Chern roots."""

    name: str
    rank: int
    roots: tuple[str, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError("rank must be positive")
        roots = self.roots or tuple(f"a{i + 1}[{self.name}]" for i in range(self.rank))
        if len(roots) != self.rank or len(set(roots)) != self.rank:
            raise DomainError("need exactly `rank` distinct root symbols")
        object.__setattr__(self, "roots", tuple(roots))

    def chern_var(self, i: int) -> str:
        return chern(i, self.name)


@dataclass(frozen=True)
class RootSeries:
    """Truncated power series in the given roots with rational coefficients.

    Exponent vectors follow the order of ``roots``; everything of total
    degree above ``cap`` is dropped eagerly.
    """

    roots: tuple[str, ...]
    coefficients: Mapping[Exponents, Fraction] = field(default_factory=dict)
    cap: int = 1

    def __post_init__(self):
        n = len(self.roots)
        clean = {}
        for e, c in self.coefficients.items():
            if len(e) != n:
                raise DomainError("exponent vector length does not match roots")
            if c and sum(e) <= self.cap:
                clean[tuple(e)] = Fraction(c)
        object.__setattr__(self, "coefficients", clean)

    @classmethod
    def one(cls, roots, cap) -> "RootSeries":
        return cls(tuple(roots), {(0,) * len(roots): Fraction(1)}, cap)

    @classmethod
    def univariate(cls, roots, index: int, coeffs: Sequence[Fraction], cap: int, scale: int = 1):
        """f(scale * root_index) for the series f with the given coefficients."""
        n = len(roots)
        out = {}
        for k, c in enumerate(coeffs[: cap + 1]):
            e = [0] * n
            e[index] = k
            out[tuple(e)] = c * scale**k
        return cls(tuple(roots), out, cap)

    @classmethod
    def linear(cls, roots, weights: Sequence[int], cap: int) -> "RootSeries":
        n = len(roots)
        out = {}
        for i, w in enumerate(weights):
            if w:
                e = [0] * n
                e[i] = 1
                out[tuple(e)] = Fraction(w)
        return cls(tuple(roots), out, cap)

    def _check(self, other: "RootSeries"):
        if other.roots != self.roots:
            raise DomainError("series over different roots")

    def __add__(self, other: "RootSeries") -> "RootSeries":
        self._check(other)
        out = dict(self.coefficients)
        for e, c in other.coefficients.items():
            out[e] = out.get(e, 0) + c
        return RootSeries(self.roots, out, min(self.cap, other.cap))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "RootSeries":
        c = Fraction(c)
        return RootSeries(self.roots, {e: c * x for e, x in self.coefficients.items()}, self.cap)

    def __mul__(self, other: "RootSeries") -> "RootSeries":
        self._check(other)
        cap = min(self.cap, other.cap)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.coefficients.items():
            d1 = sum(e1)
            for e2, c2 in other.coefficients.items():
                if d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return RootSeries(self.roots, out, cap)

    def __pow__(self, n: int) -> "RootSeries":
        out = RootSeries.one(self.roots, self.cap)
        for _ in range(n):
            out = out * self
        return out

    def component(self, m: int) -> "RootSeries":
        return RootSeries(self.roots, {e: c for e, c in self.coefficients.items() if sum(e) == m}, self.cap)

    def exp(self) -> "RootSeries":
        if self.coefficients.get((0,) * len(self.roots)):
            raise DomainError("exp needs zero constant term")
        out = RootSeries.one(self.roots, self.cap)
        term = RootSeries.one(self.roots, self.cap)
        for j in range(1, self.cap + 1):
            term = (term * self).scale(Fraction(1, j))
            out = out + term
        return out

    def is_zero(self) -> bool:
        return not self.coefficients


def todd_product(roots: Sequence[str], cap: int, sign: int = 1, inverse: bool = False) -> RootSeries:
    """prod_i Q(sign * alpha_i), or of 1/Q when inverse is set."""
    coeffs = todd_inverse_univariate(cap) if inverse else todd_univariate(cap)
    out = RootSeries.one(roots, cap)
    for i in range(len(roots)):
        out = out * RootSeries.univariate(roots, i, coeffs, cap, sign)
    return out


# ---------------------------------------------------------------------------
# symmetric reduction


def _elementary(n_roots: int, offset: int, size: int, i: int) -> dict[Exponents, int]:
    out = {}
    for combo in combinations(range(offset, offset + size), i):
        e = [0] * n_roots
        for j in combo:
            e[j] = 1
        out[tuple(e)] = 1
    return out


def roots_to_chern(series: RootSeries, bundles: Sequence[BundleSpec]) -> GradedPolynomial:
    """Rewrite a series symmetric in each bundle's roots in Chern classes.

    Iterated leading-term elimination (lex order on the concatenated roots)
    against products of elementary symmetric functions of each bundle. The
    result uses the bundles' Chern variable names.
    """
    order = [r for b in bundles for r in b.roots]
    if sorted(order) != sorted(series.roots) or len(set(order)) != len(order):
        raise DomainError("bundles must partition the series roots")
    perm = [series.roots.index(r) for r in order]
    n = len(order)
    work: dict[Exponents, Fraction] = {
        tuple(e[p] for p in perm): c for e, c in series.coefficients.items()
    }
    cap = series.cap
    blocks = []
    off = 0
    for b in bundles:
        blocks.append((off, b.rank, b))
        off += b.rank
    elem = {
        (bi, i): _elementary(n, o, size, i)
        for bi, (o, size, _) in enumerate(blocks)
        for i in range(1, size + 1)
    }
    result: dict = {}
    while work:
        lead = max(work)
        coeff = work[lead]
        factors = []  # (block index, i, power)
        mono = []
        for bi, (o, size, b) in enumerate(blocks):
            part = lead[o : o + size]
            if any(part[j] < part[j + 1] for j in range(size - 1)):
                raise DomainError("series is not symmetric in the roots of " + b.name)
            for i in range(1, size + 1):
                k = part[i - 1] - (part[i] if i < size else 0)
                if k:
                    factors.append((bi, i, k))
                    mono.append((b.chern_var(i), k))
        prod_poly: dict[Exponents, int] = {(0,) * n: 1}
        for bi, i, k in factors:
            for _ in range(k):
                new: dict[Exponents, int] = {}
                for e1, c1 in prod_poly.items():
                    for e2, c2 in elem[(bi, i)].items():
                        e = tuple(a + b for a, b in zip(e1, e2))
                        new[e] = new.get(e, 0) + c1 * c2
                prod_poly = new
        for e, c in prod_poly.items():
            s = work.get(e, 0) - coeff * c
            if s:
                work[e] = s
            else:
                work.pop(e, None)
        if lead in work:
            raise AssertionError("leading term did not cancel")
        result[tuple(mono)] = result.get(tuple(mono), 0) + coeff
    return GradedPolynomial(result)


def chern_to_roots(poly: GradedPolynomial, bundles: Sequence[BundleSpec], cap: int) -> RootSeries:
    """Expand Chern variables of the given bundles as elementary symmetric functions."""
    order = tuple(r for b in bundles for r in b.roots)
    n = len(order)
    subst = {}
    off = 0
    for b in bundles:
        for i in range(1, b.rank + 1):
            subst[b.chern_var(i)] = RootSeries(order, {e: Fraction(c) for e, c in _elementary(n, off, b.rank, i).items()}, cap)
        off += b.rank
    out = RootSeries(order, {}, cap)
    for mono, c in poly.terms.items():
        term = RootSeries.one(order, cap).scale(c)
        for v, e in mono:
            if v not in subst:
                if v.startswith("c") and any(v == b.chern_var(i) for b in bundles for i in range(b.rank + 1, cap + 1)):
                    term = RootSeries(order, {}, cap)
                    break
                raise DomainError(f"variable {v} is not a Chern class of the given bundles")
            term = term * subst[v] ** e
        out = out + term
    return out

"""Exact arithmetic over Z, Q and the localizations Lambda = Z[1/N].

Also houses the Todd denominators T_m, the divisibility facts about them,
and Smith normal forms over Lambda and over Z/p^k.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import DomainError, InvariantFailure, UndefinedValuation

Matrix = list[list[Fraction]]


# ---------------------------------------------------------------------------
# primes and valuations


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def primes_upto(n: int) -> tuple[int, ...]:
    """All primes p <= n (sieve of Eratosthenes)."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of a nonzero integer, ascending."""
    n = abs(n)
    if n == 0:
        raise DomainError("0 has no finite prime factorization")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def vp(n: int, p: int) -> int:
    """Largest e with p**e dividing n."""
    if n == 0:
        raise UndefinedValuation("v_p(0) is undefined")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def vp_factorial(m: int, p: int) -> int:
    """Legendre's formula for v_p(m!)."""
    e, q = 0, p
    while q <= m:
        e += m // q
        q *= p
    return e


# ---------------------------------------------------------------------------
# T_m and divisibility facts


@lru_cache(maxsize=None)
def big_t(m: int) -> int:
    """T_m = prod over primes p of p**floor(m/(p-1)).

    Only p <= m+1 contribute. big_t(0) == 1.
    """
    if m < 0:
        raise DomainError("T_m needs m >= 0")
    return prod(p ** (m // (p - 1)) for p in primes_upto(m + 1))


def divisibility_witness(ms: Sequence[int], ns: Sequence[int], m: int) -> int:
    """Return T_m / ((m_1+1)!...(m_r+1)! * T_{n_1}...T_{n_s}).

    The quotient is an integer whenever sum(ms) + sum(ns) <= m; a
    non-integral quotient raises InvariantFailure.
    """
    if any(x < 0 for x in ms) or any(x < 0 for x in ns) or m < 0:
        raise DomainError("arguments must be natural numbers")
    if sum(ms) + sum(ns) > m:
        raise DomainError(f"sum(ms) + sum(ns) = {sum(ms) + sum(ns)} exceeds m = {m}")
    den = prod(factorial(x + 1) for x in ms) * prod(big_t(x) for x in ns)
    q, r = divmod(big_t(m), den)
    if r:
        raise InvariantFailure(f"{den} does not divide T_{m} = {big_t(m)}")
    return q


def lemma_n(h: int) -> int:
    """The integer N with T_h | N * h!^2 (2 if h = 3, h+1 if prime, else 1)."""
    if h < 1:
        raise DomainError("h must be positive")
    if h == 3:
        n = 2
    elif is_prime(h + 1):
        n = h + 1
    else:
        n = 1
    if (n * factorial(h) ** 2) % big_t(h):
        raise InvariantFailure(f"T_{h} does not divide {n} * {h}!^2")
    return n


# ---------------------------------------------------------------------------
# Lambda = Z[1/N]


@dataclass(frozen=True)
class InvertedPrimeSet:
    """The primes inverted in Lambda; Z itself is the empty set."""

    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        for p in ps:
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def inverting(cls, n: int) -> "InvertedPrimeSet":
        """Lambda = Z[1/n]."""
        if n == 0:
            raise DomainError("cannot invert 0")
        return cls(prime_factors(n) if abs(n) > 1 else ())

    def union(self, other: "InvertedPrimeSet") -> "InvertedPrimeSet":
        return InvertedPrimeSet(self.primes + other.primes)

    def strip(self, n: int) -> int:
        """|n| with all inverted prime factors removed."""
        n = abs(n)
        for p in self.primes:
            while n and n % p == 0:
                n //= p
        return n

    def contains(self, x) -> bool:
        return self.strip(Fraction(x).denominator) == 1

    def is_unit(self, x) -> bool:
        x = Fraction(x)
        return x != 0 and self.contains(x) and self.strip(x.numerator) == 1

    def norm(self, x) -> int:
        """Euclidean norm on Lambda: the numerator with inverted primes removed."""
        return self.strip(Fraction(x).numerator)

    def check(self, x) -> Fraction:
        x = Fraction(x)
        if not self.contains(x):
            raise DomainError(f"{x} is not in Z[1/{prod(self.primes) or 1}]")
        return x

    def residue(self, x, modulus: int) -> int:
        """Image of x under Lambda -> Z/modulus (modulus prime to the inverted primes)."""
        x = self.check(x)
        if modulus == 1:
            return 0
        return x.numerator * pow(x.denominator, -1, modulus) % modulus

    def __str__(self):
        if not self.primes:
            return "Z"
        return "Z[1/" + "*".join(map(str, self.primes)) + "]"


@dataclass(frozen=True)
class LambdaScalar:
    """An element of Lambda, stored as a reduced fraction."""

    value: Fraction
    ring: InvertedPrimeSet = InvertedPrimeSet()

    def __post_init__(self):
        object.__setattr__(self, "value", self.ring.check(self.value))

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def _coerce(self, other) -> Fraction:
        if isinstance(other, LambdaScalar):
            if other.ring != self.ring:
                raise DomainError("scalars live in different rings")
            return other.value
        return self.ring.check(other)

    def __add__(self, other):
        return LambdaScalar(self.value + self._coerce(other), self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        return LambdaScalar(self.value - self._coerce(other), self.ring)

    def __rsub__(self, other):
        return LambdaScalar(self._coerce(other) - self.value, self.ring)

    def __mul__(self, other):
        return LambdaScalar(self.value * self._coerce(other), self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return LambdaScalar(-self.value, self.ring)

    def __truediv__(self, other):
        d = self._coerce(other)
        if not self.ring.is_unit(d):
            raise DomainError(f"{d} is not a unit of {self.ring}")
        return LambdaScalar(self.value / d, self.ring)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def __eq__(self, other):
        if isinstance(other, LambdaScalar):
            return self.value == other.value and self.ring == other.ring
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"LambdaScalar({self.value}, {self.ring})"


# ---------------------------------------------------------------------------
# dense matrices with Fraction entries


def mat(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def mat_mul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * b[k][j] for k, x in nz), Fraction(0)) for j in range(ncols)])
    return out


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v) if x), Fraction(0)) for row in a]


def transpose(a: Matrix, nrows: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(nrows or 0)]
    return [list(col) for col in zip(*a)]


def det(a: Matrix) -> Fraction:
    n = len(a)
    m = [row[:] for row in a]
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    m = [row[:] + idrow for row, idrow in zip(a, identity(n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            raise DomainError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


# ---------------------------------------------------------------------------
# Smith normal form over Lambda


def _lambda_divmod(a: Fraction, b: Fraction, ring: InvertedPrimeSet) -> tuple[Fraction, Fraction]:
    """Euclidean division in Lambda: a = q*b + r with norm(r) < norm(b)."""
    nb = ring.norm(b)
    if nb == 1:
        return a / b, Fraction(0)
    unit = b / nb
    a1 = a / unit
    r = a1.numerator * pow(a1.denominator, -1, nb) % nb
    if 2 * r > nb:
        r -= nb
    q = (a1 - r) / nb
    return q, unit * r


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(m_in, ring: InvertedPrimeSet = InvertedPrimeSet()):
    """Return (U, D, V) with U*M*V = D over Lambda.

    D is diagonal with nonnegative integer entries prime to the inverted
    primes, each dividing the next (zeros last). U and V have entries in
    Lambda and unit determinants. Pivots are chosen by least Lambda-norm,
    ties broken row-major, so the output is deterministic.
    """
    a = [[ring.check(x) for x in row] for row in m_in]
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def pivot_search(t, rows, cols):
        best = None
        for i in rows:
            for j in cols:
                x = a[i][j]
                if x:
                    key = (ring.norm(x), i, j)
                    if best is None or key < best:
                        best = key
        return best

    for t in range(min(m, n)):
        best = pivot_search(t, range(t, m), range(t, n))
        if best is None:
            break
        _, i, j = best
        _swap_rows(a, t, i)
        _swap_rows(u, t, i)
        _swap_cols(a, t, j)
        _swap_cols(v, t, j)
        while True:
            clean = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q, _ = _lambda_divmod(a[i][t], p, ring)
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q, _ = _lambda_divmod(a[t][j], p, ring)
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        clean = False
            if not clean:
                # move the smallest leftover of row/column t into the pivot
                cand = [(ring.norm(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                cand += [(ring.norm(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                _, i, j = min(cand)
                _swap_rows(a, t, i)
                _swap_rows(u, t, i)
                _swap_cols(a, t, j)
                _swap_cols(v, t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] and not ring.contains(a[i][j] / p):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        p = a[t][t]
        unit = p / ring.norm(p)
        if unit != 1:
            a[t] = [x / unit for x in a[t]]
            u[t] = [x / unit for x in u[t]]
    return u, a, v


def diagonal(d: Matrix) -> list[Fraction]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def rank_from_snf(d: Matrix) -> int:
    return sum(1 for x in diagonal(d) if x)


# ---------------------------------------------------------------------------
# Smith normal form over Z/p^k


def _val(x: int, p: int, k: int) -> int:
    if x == 0:
        return k
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def smith_normal_form_mod(m_in, p: int, k: int):
    """Smith normal form over Z/p^k with minimal-valuation pivots.

    Returns integer matrices (U, D, V) with U*M*V == D mod p^k; the
    diagonal of D consists of powers p^v (v < k) followed by zeros.
    """
    if not is_prime(p) or k < 1:
        raise DomainError("need a prime p and k >= 1")
    q = p**k
    a = [[int(x) % q for x in row] for row in m_in]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j]:
                    key = (_val(a[i][j], p, k), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        e, i, j = best
        _swap_rows(a, t, i)
        _swap_rows(u, t, i)
        _swap_cols(a, t, j)
        _swap_cols(v, t, j)
        unit_inv = pow(a[t][t] // p**e, -1, q)
        a[t] = [x * unit_inv % q for x in a[t]]
        u[t] = [x * unit_inv % q for x in u[t]]
        pe = p**e
        for i in range(t + 1, m):
            if a[i][t]:
                f = a[i][t] // pe
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[t])]
                u[i] = [(x - f * y) % q for x, y in zip(u[i], u[t])]
        for j in range(t + 1, n):
            if a[t][j]:
                f = a[t][j] // pe
                for row in a:
                    row[j] = (row[j] - f * row[t]) % q
                for row in v:
                    row[j] = (row[j] - f * row[t]) % q
    return u, a, v


def kernel_mod(m_in, ncols: int, p: int, k: int) -> list[list[int]]:
    """Generators (as columns) of the kernel of M acting on (Z/p^k)^ncols."""
    q = p**k
    if not m_in:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    _, d, v = smith_normal_form_mod(m_in, p, k)
    gens = []
    for j in range(ncols):
        dj = d[j][j] if j < len(d) else 0
        scale = 1 if dj == 0 else q // dj
        if scale % q == 0:
            continue
        gens.append([v[i][j] * scale % q for i in range(ncols)])
    return [list(col) for col in zip(*gens)] if gens else [[] for _ in range(ncols)]


def is_injective_mod(m_in, ncols: int, p: int, k: int) -> bool:
    """True iff M : (Z/p^k)^ncols -> (Z/p^k)^rows is injective."""
    if ncols == 0:
        return True
    if not m_in:
        return False
    _, d, _ = smith_normal_form_mod(m_in, p, k)
    return all(j < len(d) and d[j][j] == 1 for j in range(ncols))

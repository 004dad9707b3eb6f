from fractions import Fraction
from itertools import product
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intfourier.errors import DomainError, UndefinedValuation
from intfourier.lambda_arith import (
    InvertedPrimeSet,
    LambdaScalar,
    big_t,
    det,
    diagonal,
    divisibility_witness,
    is_injective_mod,
    is_prime,
    kernel_mod,
    lemma_n,
    mat,
    mat_mul,
    primes_upto,
    smith_normal_form,
    smith_normal_form_mod,
    vp,
)


def naive_vp(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def naive_t(m):
    out = 1
    for p in range(2, m + 2):
        if all(p % q for q in range(2, p)):
            out *= p ** (m // (p - 1))
    return out


@pytest.mark.parametrize("n,p,expected", [(12, 2, 2), (720, 3, 2), (1, 5, 0), (-8, 2, 3)])
def test_vp_examples(n, p, expected):
    assert vp(n, p) == expected


def test_vp_errors():
    with pytest.raises(UndefinedValuation):
        vp(0, 2)
    with pytest.raises(DomainError):
        vp(12, 4)


@given(st.integers(1, 10**12), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_vp_matches_repeated_division(n, p):
    assert vp(n, p) == naive_vp(n, p)


def test_t_table():
    assert [big_t(m) for m in range(7)] == [1, 2, 12, 24, 720, 1440, 60480]


@pytest.mark.parametrize("m", range(0, 31))
def test_t_valuations(m):
    t = big_t(m)
    assert t == naive_t(m)
    for p in primes_upto(m + 1):
        assert vp(t, p) == m // (p - 1)
        t //= p ** (m // (p - 1))
    assert t == 1


def test_divisibility_witness_examples():
    assert divisibility_witness([1], [1], 3) == 6
    assert divisibility_witness([], [], 5) == big_t(5)
    assert divisibility_witness([2, 2], [], 4) == 20
    with pytest.raises(DomainError):
        divisibility_witness([3], [3], 5)


def compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def test_divisibility_witness_exhaustive():
    count = 0
    for m in range(13):
        for r, s in product(range(3), range(3)):
            for budget in range(m + 1):
                for ms in compositions(budget, r):
                    for ns in compositions(m - budget, s) if s else [()]:
                        if sum(ms) + sum(ns) > m:
                            continue
                        q = divisibility_witness(list(ms), list(ns), m)
                        denom = 1
                        for x in ms:
                            denom *= factorial(x + 1)
                        for x in ns:
                            denom *= big_t(x)
                        assert q * denom == big_t(m)
                        count += 1
    assert count > 1000


@pytest.mark.parametrize("h,n", [(1, 2), (2, 3), (3, 2), (4, 5), (5, 1), (6, 7), (7, 1)])
def test_lemma_n_cases(h, n):
    assert lemma_n(h) == n


def test_lemma_n_exhaustive():
    for h in range(1, 31):
        assert (lemma_n(h) * factorial(h) ** 2) % big_t(h) == 0
    assert lemma_n(4) * 24**2 // 720 == 4
    assert 5040**2 // big_t(7) == 210


def test_inverted_prime_set():
    ring = InvertedPrimeSet.inverting(720)
    assert ring.primes == (2, 3, 5)
    assert ring.contains(Fraction(7, 12))
    assert not ring.contains(Fraction(1, 7))
    assert ring.is_unit(Fraction(-15, 4))
    assert not ring.is_unit(7)
    with pytest.raises(DomainError):
        InvertedPrimeSet((2, 4))


def test_lambda_scalar_membership():
    ring = InvertedPrimeSet.inverting(6)
    assert LambdaScalar(Fraction(5, 6), ring).denominator == 6
    with pytest.raises(DomainError):
        LambdaScalar(Fraction(1, 5), ring)
    with pytest.raises(DomainError):
        LambdaScalar(Fraction(1), ring) / 5


scalars = st.builds(
    lambda n, a, b: LambdaScalar(Fraction(n, 2**a * 3**b), InvertedPrimeSet((2, 3))),
    st.integers(-1000, 1000),
    st.integers(0, 4),
    st.integers(0, 4),
)


@given(scalars, scalars, scalars)
def test_lambda_scalars_form_a_commutative_ring(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0


def test_snf_examples():
    _, d, _ = smith_normal_form(mat([[2, 0], [0, 3]]), InvertedPrimeSet.inverting(6))
    assert diagonal(d) == [1, 1]
    _, d, _ = smith_normal_form(mat([[0]]))
    assert d == [[0]]
    _, d, _ = smith_normal_form(mat([[2, 4], [6, 8]]))
    assert diagonal(d) == [2, 4]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([(), (2,), (3,), (2, 3), (5,)]))
def test_snf_properties(rows, primes):
    ring = InvertedPrimeSet(primes)
    a = mat(rows)
    u, d, v = smith_normal_form(a, ring)
    assert mat_mul(mat_mul(u, a), v) == d
    assert ring.is_unit(det(u)) and ring.is_unit(det(v))
    diag = diagonal(d)
    for i in range(len(d)):
        for j in range(len(d[0])):
            if i != j:
                assert d[i][j] == 0
    nonzero = [x for x in diag if x]
    assert all(x > 0 and x.denominator == 1 and ring.strip(int(x)) == x for x in nonzero)
    assert diag[: len(nonzero)] == nonzero
    for x, y in zip(nonzero, nonzero[1:]):
        assert y % x == 0


@settings(max_examples=100, deadline=None)
@given(matrices, st.sampled_from([(2, 3), (3, 2), (5, 1), (7, 2)]))
def test_snf_mod_prime_power(rows, pk):
    p, k = pk
    q = p**k
    u, d, v = smith_normal_form_mod(rows, p, k)
    prod = mat_mul(mat_mul(u, mat(rows)), v)
    assert all((int(prod[i][j]) - int(d[i][j])) % q == 0 for i in range(len(d)) for j in range(len(d[0])))
    n = len(rows[0])
    ker = kernel_mod(rows, n, p, k)
    for vec in zip(*ker):
        assert all(sum(r[j] * vec[j] for j in range(n)) % q == 0 for r in rows)
    # kernel size from the diagonal: each entry p^v contributes p^v elements
    size = 1
    for j in range(n):
        dj = d[j][j] if j < len(d) else 0
        size *= q if dj == 0 else dj
    if q**n <= 4096:
        assert size == brute_kernel_size(rows, n, q)


def brute_kernel_size(rows, n, q):
    return sum(
        all(sum(r[j] * x[j] for j in range(n)) % q == 0 for r in rows) for x in product(range(q), repeat=n)
    )


def test_injectivity_mod():
    assert is_injective_mod([[1, 0], [0, 7]], 2, 7, 1) is False
    assert is_injective_mod([[1, 0], [0, 3]], 2, 7, 2) is True


def test_primes():
    assert [n for n in range(30) if is_prime(n)] == list(primes_upto(29))

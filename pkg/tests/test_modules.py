from fractions import Fraction
from itertools import product
from math import lcm, prod

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from intfourier.errors import DomainError
from intfourier.lambda_arith import InvertedPrimeSet
from intfourier.modules import (
    ModuleType,
    check_orders,
    from_columns,
    hom_kernel,
    in_submodule,
    is_isomorphism,
    is_surjective,
    is_well_defined,
    is_zero_vector,
    span_basis,
)

RING = InvertedPrimeSet((2,))


def apply(a, v, m):
    return [sum((a[i][j] * v[j] for j in range(len(v))), Fraction(0)) for i in range(m)]


def test_module_type():
    t = ModuleType.from_orders([0, 0, 9, 15])
    assert t == ModuleType(2, ((3, 1), (3, 2), (5, 1)))
    assert t.torsion_counts() == [[3, 1, 1], [3, 2, 1], [5, 1, 1]]
    assert ModuleType.from_counts(2, t.torsion_counts()) == t
    assert str(ModuleType(0)) == "0" and ModuleType(0).is_zero()
    with pytest.raises(DomainError):
        ModuleType.from_counts(0, [[4, 1, 1]])


def test_check_orders():
    check_orders([0, 9, 25], RING)
    with pytest.raises(DomainError):
        check_orders([6], RING)
    with pytest.raises(DomainError):
        check_orders([1], RING)


def test_kernel_of_multiplication_by_p():
    # multiplication by 5 on Z/25 has kernel 5 Z/25 = Z/5
    k = hom_kernel([[Fraction(5)]], [25], [25], RING)
    assert k.type == ModuleType(0, ((5, 1),))
    # on Lambda it is injective, but not surjective unless 5 is inverted
    assert hom_kernel([[Fraction(5)]], [0], [0], RING).type.is_zero()
    assert not is_surjective([[Fraction(5)]], [0], [0], RING)
    assert is_isomorphism([[Fraction(5)]], [0], [0], InvertedPrimeSet((5,)))


def test_projection_onto_torsion():
    # Lambda -> Z/9 has kernel 9 Lambda, free of rank one
    k = hom_kernel([[Fraction(1)]], [0], [9], RING)
    assert k.type == ModuleType(1)
    assert k.generators in ([[Fraction(9)]], [[Fraction(-9)]])


small_orders = st.lists(st.sampled_from([3, 9, 5, 25, 15]), min_size=1, max_size=3)


@settings(max_examples=120, deadline=None)
@given(small_orders, small_orders, st.data())
def test_torsion_kernel_matches_brute_force(src, tgt, data):
    assume(prod(src) <= 2000)
    a = [[Fraction(data.draw(st.integers(-30, 30))) for _ in src] for _ in tgt]
    assume(is_well_defined(a, src, tgt, RING))
    k = hom_kernel(a, src, tgt, RING)
    assert k.type.free_rank == 0
    count = 0
    for x in product(*(range(o) for o in src)):
        if is_zero_vector(apply(a, [Fraction(c) for c in x], len(tgt)), tgt, RING):
            count += 1
    assert prod(k.orders) == count
    for g, o in zip(k.generators, k.orders):
        assert is_zero_vector(apply(a, g, len(tgt)), tgt, RING)
        assert is_zero_vector([o * x for x in g], src, RING)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_free_kernel_rank(m, n, data):
    a = [[Fraction(data.draw(st.integers(-6, 6))) for _ in range(n)] for _ in range(m)]
    k = hom_kernel(a, [0] * n, [0] * m, RING)
    rank = sympy.Matrix([[int(x) for x in row] for row in a]).rank()
    assert k.type == ModuleType(n - rank)
    for g in k.generators:
        assert not any(apply(a, g, m))
    # the kernel is saturated: anything in ker over Q with Lambda entries lies in the span
    nullspace = sympy.Matrix([[int(x) for x in row] for row in a]).nullspace()
    for v in nullspace:
        denom = lcm(*[int(sympy.fraction(x)[1]) for x in v])
        vec = [Fraction(int(x * denom)) for x in v]
        assert in_submodule(vec, k.generators, [0] * n, RING)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_span_basis_spans(n, count, data):
    gens = [[Fraction(data.draw(st.integers(-9, 9))) for _ in range(n)] for _ in range(count)]
    basis = span_basis(gens, n, RING)
    assert len(basis) == sympy.Matrix([[int(x) for x in g] for g in gens]).rank()
    for g in gens:
        assert in_submodule(g, basis, [0] * n, RING)
    for b in basis:
        assert in_submodule(b, gens, [0] * n, RING)


def test_surjectivity_with_torsion_target():
    # Lambda^2 -> Z/3 + Z/9 given by the identity matrix is onto
    a = from_columns([[1, 0], [0, 1]], 2)
    assert is_surjective(a, [0, 0], [3, 9], RING)
    assert not is_surjective(from_columns([[3, 0], [0, 1]], 2), [0, 0], [9, 9], RING)

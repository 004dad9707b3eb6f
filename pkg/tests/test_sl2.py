import json
import random
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intfourier.errors import DomainError, NotARepresentation
from intfourier.lambda_arith import InvertedPrimeSet
from intfourier.modules import ModuleType
from intfourier.sl2 import (
    RandomModuleConfig,
    Sl2Module,
    build_chow_sl2,
    decompose,
    default_ring,
    direct_sum,
    dual_module,
    flek_coefficient,
    flek_matrix_check,
    homogeneous_split,
    parity_check,
    primitive_string_checks,
    random_module,
    round_trip,
    scramble,
    sym_power,
    tensor_sym,
    torsion_injectivity_demo,
    verify_flek,
)


def test_standard_representation():
    st_ = sym_power(1)
    # basis (x_-1, x_1): e x_-1 = x_1, f x_1 = x_-1
    assert st_.e_maps[-1] == [[1]]
    assert st_.f_maps[1] == [[1]]
    assert st_.e_maps[1] == [] and st_.f_maps[-1] == []
    assert not st_.relation_defects()


def test_sym_two_and_zero():
    s2 = sym_power(2)
    assert s2.e_maps[-2] == [[2]] and s2.e_maps[0] == [[1]]
    assert s2.f_maps[2] == [[2]] and s2.f_maps[0] == [[1]]
    s0 = sym_power(0, 2)
    assert all(not any(any(r) for r in m) for m in s0.e_maps.values())
    assert s0.rank(0) == 1


def test_ring_must_invert_factorial():
    with pytest.raises(DomainError):
        sym_power(2, 3, InvertedPrimeSet((2, 3)))


def test_dual():
    for n in range(4):
        v = sym_power(n, 3)
        dd = dual_module(dual_module(v))
        assert dd.e_maps == v.e_maps and dd.f_maps == v.f_maps and dd.orders == v.orders
    assert not dual_module(sym_power(1)).relation_defects()
    # Sym^2 is self-dual with the identity matching x_i and x_-i
    s2 = sym_power(2)
    d2 = dual_module(s2)
    assert d2.e_maps == s2.e_maps and d2.f_maps == s2.f_maps


def test_flek_examples():
    for n in range(1, 7):
        assert flek_coefficient(n, n, 1) == n
        assert flek_coefficient(n, n, n) == factorial(n) ** 2
        assert flek_coefficient(n, 1, 3) == 0
    with pytest.raises(DomainError):
        flek_coefficient(2, 3, 0)


@pytest.mark.parametrize("n", range(7))
def test_flek_matches_matrices(n):
    assert flek_matrix_check(n) == []


def test_verify_flek_instances():
    assert verify_flek(sym_power(3)).passed
    v = direct_sum([(1, [0]), (2, [0])], 2, default_ring(2))
    rep = verify_flek(v)
    assert rep.passed
    for n in (1, 2):
        assert v.kernel_f(n).type.is_zero()


def test_homogeneous_split():
    st_ = sym_power(1)
    split = homogeneous_split(st_, [{-1: [1], 1: [1]}])
    assert split[0][-1]["component"] == [1] and split[0][1]["component"] == [1]
    assert homogeneous_split(st_, []) == []
    s2 = sym_power(2)
    whole = homogeneous_split(s2, [{-2: [1], 0: [0], 2: [0]}, {-2: [0], 0: [1], 2: [0]}, {-2: [0], 0: [0], 2: [1]}])
    assert [sorted(c) for c in whole] == [[-2], [0], [2]]


def test_decompose_examples():
    dec = decompose(sym_power(2))
    assert {c.n: c.type for c in dec.nonzero()} == {2: ModuleType(1)}
    ring = InvertedPrimeSet.inverting(24)
    v = tensor_sym(1, [5], 2, ring)
    assert decompose(v).multiplicities()[1] == ModuleType(0, ((5, 1),))


def test_decompose_mixed_with_scrambling():
    ring = default_ring(2)
    base = direct_sum([(0, [0]), (2, [0]), (1, [25])], 2, ring)
    v = scramble(base, random.Random(5), 20)
    assert v.e_maps != base.e_maps or v.f_maps != base.f_maps
    m = decompose(v).multiplicities()
    assert m[0] == ModuleType(1) and m[1] == ModuleType(0, ((5, 2),)) and m[2] == ModuleType(1)


def test_not_a_representation():
    bad = Sl2Module(1, default_ring(1), {-1: [0], 1: [0]}, {-1: [[2]]}, {1: [[1]]})
    assert bad.relation_defects() == [-1, 1]
    with pytest.raises(NotARepresentation):
        decompose(bad)


def test_bad_map_shapes():
    with pytest.raises(DomainError):
        Sl2Module(1, default_ring(1), {-1: [0], 1: [0]}, {-1: [[1, 2]]}, {})
    with pytest.raises(DomainError):
        Sl2Module(1, default_ring(1), {-1: [0], 1: [5]}, {}, {1: [[1]]})  # Z/5 -> Lambda is not well defined


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_round_trip_property(g, seed):
    rep = round_trip(RandomModuleConfig(g, seed))
    assert rep.passed, rep.failures


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_module_invariants(g, seed):
    v, mult = random_module(RandomModuleConfig(g, seed))
    assert not v.relation_defects()
    assert primitive_string_checks(v) == []
    assert verify_flek(v).passed
    back = Sl2Module.from_json(json.loads(json.dumps(v.to_json())))
    assert back.e_maps == v.e_maps and back.f_maps == v.f_maps and back.orders == v.orders
    # total rank is the sum over components of (n+1) * rank(M_n)
    total = sum(v.rank(w) for w in v.weights())
    assert total == sum((n + 1) * len(t.orders()) for n, t in mult.items())


def test_json_without_generator_orders():
    data = tensor_sym(1, [7, 0], 2, default_ring(2)).to_json()
    for piece in data["pieces"]:
        piece.pop("generatorOrders")
    v = Sl2Module.from_json(data)
    assert decompose(v).multiplicities()[1] == ModuleType(1, ((7, 1),))
    with pytest.raises(DomainError):
        Sl2Module.from_json({"g": 1})


@pytest.mark.parametrize("g", range(1, 9))
def test_chow_module(g):
    v, dec = build_chow_sl2(g)
    assert not v.relation_defects()
    assert [c.n for c in dec.nonzero()] == [g]
    assert dec.multiplicities()[g] == ModuleType(1)
    assert parity_check(dec, g)


def test_chow_genus_one_and_two():
    v, _ = build_chow_sl2(1)
    # basis l^0, l^1 at weights -1, 1: e(1) = l, f(l) = 1
    assert v.e_maps[-1] == [[1]] and v.f_maps[1] == [[1]]
    v2, _ = build_chow_sl2(2)
    assert [w for w in v2.weights() if v2.rank(w)] == [-2, 0, 2]


def test_parity_detects_wrong_parity():
    dec = decompose(direct_sum([(0, [0]), (1, [0])], 1, default_ring(1)))
    assert not parity_check(dec, 0) and not parity_check(dec, 1)


@pytest.mark.parametrize("g,p,k", [(1, 5, 1), (2, 7, 2), (3, 11, 2), (3, 11, 1)])
def test_torsion_demo(g, p, k):
    rep = torsion_injectivity_demo(g, p, k)
    assert rep.passed
    assert all(rep.details["injective"].values())
    assert rep.details["rank"] == 2 * g


def test_torsion_demo_preconditions():
    with pytest.raises(DomainError):
        torsion_injectivity_demo(2, 5, 1)
    with pytest.raises(DomainError):
        torsion_injectivity_demo(2, 9, 1)

from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intfourier.char_calculus import chern_char_component, dual, ftd, ftd_inv
from intfourier.errors import DomainError
from intfourier.identities import (
    key_collapse_sums,
    pappas_shape_check,
    tdinv_sum,
    verify_all_identities,
    verify_binom_identity,
    verify_dual_identity,
    verify_exact_seq_identity,
    verify_key_collapse,
    verify_tdinv_identity,
)
from intfourier.lambda_arith import big_t
from intfourier.polynomials import GradedPolynomial as P
from intfourier.reports import IdentityReport

c1 = P.var("c1[E]")


def test_dual_identity_rank_one_by_hand():
    # fTd_1(E) = c1 ; right side: (T_1/(T_1 0!)) fTd_1(E^v) + (T_1/(T_0 1!)) fs_1(det E) = -c1 + 2 c1
    lhs = ftd(1, 1, "E")
    rhs = dual(ftd(1, 1, "E")) * 1 + c1 * 2
    assert lhs == rhs == c1
    # degree 2 at rank 1: fTd_2 = c1^2; right side 12/12 c1^2 + 12/(2*1) (-c1)(c1) + 12/2 c1^2
    terms = [(0, 2), (1, 1), (2, 0)]
    rhs2 = P()
    for j, k in terms:
        fs_k = c1**k
        rhs2 = rhs2 + dual(ftd(j, 1, "E")) * fs_k * Fraction(big_t(2), big_t(j) * factorial(k))
    assert rhs2 == ftd(2, 1, "E") == c1 * c1


def test_tdinv_rank_one_degree_one_by_hand():
    # T_2/(T_0 2!) fTdInv_1 + T_2/(T_1 1!) fTd_1 fTdInv_0 = 6(-c1) + 6 c1
    first = ftd_inv(1, 1, "E") * Fraction(big_t(2), 2)
    second = ftd(1, 1, "E") * ftd_inv(1, 0, "E") * Fraction(big_t(2), big_t(1))
    assert first == c1 * -6 and second == c1 * 6
    assert tdinv_sum(1, 1).is_zero()


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_tdinv_constant_term(r):
    assert tdinv_sum(r, 0) == P.const(big_t(r))


def test_exact_sequence_rank_one_degree_one():
    rep = verify_exact_seq_identity(1, 1, 1)
    assert rep.passed and rep.residual.is_zero()


@pytest.mark.parametrize("r1", [1, 2, 3])
@pytest.mark.parametrize("r2", [1, 2, 3])
def test_exact_sequence(r1, r2):
    rep = verify_exact_seq_identity(r1, r2, 6)
    assert rep.passed, rep.failures


@pytest.mark.parametrize("r", [1, 2, 3])
def test_dual_and_tdinv(r):
    assert verify_dual_identity(r, 6).passed
    assert verify_tdinv_identity(r, 6).passed


def test_dual_rank_three_degree_five():
    assert verify_dual_identity(3, 5).passed


def test_binomial():
    assert verify_binom_identity(6).passed
    assert verify_binom_identity(0).passed


def test_key_collapse_values():
    quad, double = key_collapse_sums(1, 0)
    assert quad == double == P.const(12)
    quad, double = key_collapse_sums(1, 1)
    assert quad.is_zero() and double.is_zero()
    for g, t in [(1, 12), (2, 720), (3, 60480)]:
        assert key_collapse_sums(g, 0)[1] == P.const(t) == P.const(big_t(2 * g))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_key_collapse_each_step(g):
    for mu in range(4):
        for route in ("chern", "roots"):
            quad, double = key_collapse_sums(g, mu, route)
            assert quad == double
            assert double == P.const(big_t(2 * g) if mu == 0 else 0)
    rep = verify_key_collapse(g, 3)
    assert rep.passed
    assert rep.details["doubleSum"]["0"] == str(big_t(2 * g))


def test_key_collapse_individual_terms_do_not_vanish():
    # the collapse is a genuine cancellation, not a sum of zero terms
    quad, _ = key_collapse_sums(2, 2)
    assert quad.is_zero()
    term = ftd_inv(2, 2, "E") * Fraction(big_t(6), factorial(4))
    assert not term.is_zero()


def test_key_collapse_domain():
    with pytest.raises(DomainError):
        verify_key_collapse(4, 1)
    with pytest.raises(DomainError):
        verify_key_collapse(1, 4)


def test_pappas_examples():
    rep = pappas_shape_check(1, 0)
    assert rep.passed and rep.details["constants"]["T_1/0!"] == "2"
    # T_5 = 2^5 * 3^2 * 5 = 1440, so T_5/3! = 240
    rep = pappas_shape_check(2, 3)
    assert big_t(5) == 1440
    assert rep.details["constants"]["T_5/3!"] == "240"
    with pytest.raises(DomainError):
        pappas_shape_check(6, 7)


def test_pappas_exhaustive():
    for g in range(1, 13):
        for n in range(0, 13 - g):
            assert pappas_shape_check(g, n).passed


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.data())
def test_pappas_binomials(g, data):
    n = data.draw(st.integers(0, 12 - g))
    consts = pappas_shape_check(g, n).details["constants"]
    for a in range(n + 1):
        assert consts[f"C({n},{a})"] == str(comb(n, a))


def test_verify_all_is_sorted_and_deterministic():
    a = verify_all_identities(2, 4)
    b = verify_all_identities(2, 4)
    assert [r.identity_name for r in a] == ["binomial", "dual-bundle", "exact-sequence", "todd-inverse"]
    assert [r.to_json() for r in a] == [r.to_json() for r in b]
    assert all(r.passed for r in a)


def test_failed_report_serializes_residual():
    rep = IdentityReport("probe", {}, residual=chern_char_component(2))
    data = rep.to_json()
    assert data["status"] == "fail"
    assert data["residual"] == chern_char_component(2).to_json()
    assert "elapsed" not in data and "elapsed" in rep.to_json(timings=True)

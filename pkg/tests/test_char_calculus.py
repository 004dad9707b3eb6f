from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.polyfuncs import symmetrize

from intfourier.char_calculus import (
    chern_char_component,
    fct,
    ftd,
    ftd_inv,
    ftd_inv_roots,
    ftd_roots,
    todd_component,
    todd_roots,
)
from intfourier.errors import DomainError
from intfourier.lambda_arith import big_t
from intfourier.polynomials import GradedPolynomial as P
from intfourier.series import BundleSpec, RootSeries, chern_to_roots, roots_to_chern, todd_product

c1, c2, c3 = P.var("c1"), P.var("c2"), P.var("c3")
d1, d2, d3 = P.var("c'1"), P.var("c'2"), P.var("c'3")
r = P.var("r")


def sympy_todd(m, rank):
    """Td_m via sympy series in explicit roots, reduced with sympy's symmetrize."""
    xs = sympy.symbols(f"x1:{rank + 1}")
    t = sympy.Symbol("t")
    q = sympy.series(t / (1 - sympy.exp(-t)), t, 0, m + 1).removeO()
    prod = sympy.Integer(1)
    for x in xs:
        prod = sympy.expand(prod * q.subs(t, x))
    part = sum(
        term for term in sympy.Add.make_args(prod) if sympy.Poly(term, *xs).total_degree() == m
    )
    sym, rest, defs = symmetrize(sympy.expand(part), *xs, formal=True)
    assert rest == 0
    names = {s: "c" + str(s)[1:] for s, _ in defs}  # s1, s2, ... are the elementary symmetric functions
    out = P()
    for term in sympy.Add.make_args(sympy.expand(sym)):
        coeff, factors = term.as_coeff_Mul()
        mono = P.const(Fraction(int(coeff.p), int(coeff.q)))
        for base, e in factors.as_powers_dict().items():
            if base != 1:
                mono = mono * P.var(names[base], int(e))
        out = out + mono
    return out


def test_todd_examples():
    assert todd_component(0) == P.const(1)
    assert todd_component(1) == c1 * Fraction(1, 2)
    assert todd_component(2) == (c1 * c1 + c2) * Fraction(1, 12)
    assert todd_component(3) == c1 * c2 * Fraction(1, 24)
    assert ftd(1) == c1
    assert ftd(2) == c1 * c1 + c2
    assert ftd(0) == P.const(1)


@pytest.mark.parametrize("m,rank", [(2, 2), (3, 3), (4, 3), (4, 4), (5, 3)])
def test_todd_against_sympy(m, rank):
    assert todd_component(m, rank) == sympy_todd(m, rank)


@pytest.mark.parametrize("m", range(1, 11))
def test_todd_denominator_is_t(m):
    assert todd_component(m).lcd() == big_t(m)


@pytest.mark.parametrize("m", range(0, 11))
def test_ftd_integral(m):
    assert ftd(m).is_integral()


@pytest.mark.parametrize("rank", range(1, 5))
@pytest.mark.parametrize("n", range(0, 9))
def test_ftd_inv_integral(rank, n):
    assert ftd_inv(rank, n).is_integral()


def test_ftd_inv_examples():
    assert ftd_inv(1, 0) == P.const(1)
    assert ftd_inv(3, 0) == P.const(6)
    assert ftd_inv(1, 1) == -c1
    assert ftd_inv(1, 2) == c1 * c1


def test_chern_char_examples():
    assert chern_char_component(0) == r
    assert chern_char_component(1) == d1
    assert chern_char_component(2) == d1 * d1 - d2 * 2
    assert chern_char_component(3) == d1**3 - d1 * d2 * 3 + d3 * 3


@pytest.mark.parametrize("m", range(0, 9))
def test_chern_char_of_line_bundle(m):
    line = chern_char_component(m).subs({"r": 1, **{f"c'{i}": 0 for i in range(2, m + 1)}})
    assert line == d1**m


@pytest.mark.parametrize("m", range(0, 9))
def test_fct_integral(m):
    assert fct(m).is_integral()


def test_fct_examples():
    assert fct(0) == r
    assert fct(1) == d1 * 2 + r * c1


@pytest.mark.parametrize("m", range(0, 7))
@pytest.mark.parametrize("rank", range(1, 4))
def test_root_and_chern_routes_agree(m, rank):
    b = BundleSpec("", rank, tuple(f"a{i}" for i in range(rank)))
    assert todd_roots(m, b) == todd_component(m, rank)
    assert ftd_roots(m, b) == ftd(m, rank)
    assert ftd_inv_roots(m, b) == ftd_inv(rank, m)


def test_dual_roots_flip_signs():
    b = BundleSpec("", 2, ("a", "b"))
    assert ftd_roots(1, b, sign=-1) == -c1
    assert ftd_roots(2, b, sign=-1) == ftd(2)


def test_roots_to_chern_examples():
    b = BundleSpec("E", 2, ("a1", "a2"))
    roots = b.roots
    lin = RootSeries.linear(roots, [1, 1], 4)
    assert roots_to_chern(lin, [b]) == P.var("c1[E]")
    prod = RootSeries(roots, {(1, 1): 1}, 4)
    assert roots_to_chern(prod, [b]) == P.var("c2[E]")
    squares = RootSeries(roots, {(2, 0): 1, (0, 2): 1}, 4)
    assert roots_to_chern(squares, [b]) == P.var("c1[E]", 2) - P.var("c2[E]") * 2
    with pytest.raises(DomainError):
        roots_to_chern(RootSeries(roots, {(1, 0): 1}, 4), [b])


@pytest.mark.parametrize("ra,rb", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_whitney_additivity(ra, rb):
    a = BundleSpec("A", ra)
    b = BundleSpec("B", rb)
    for m in range(7):
        joint = roots_to_chern(todd_product(a.roots + b.roots, m).component(m), [a, b])
        split = sum(
            (todd_component(j, ra, "A") * todd_component(m - j, rb, "B") for j in range(m + 1)), P()
        )
        assert joint == split


monomials = st.lists(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1), st.integers(-5, 5)), max_size=4
)


@settings(max_examples=60, deadline=None)
@given(monomials)
def test_chern_to_roots_round_trip(terms):
    b = BundleSpec("E", 3, ("x1", "x2", "x3"))
    poly = P()
    for e1, e2, e3, c in terms:
        poly = poly + P.const(c) * P.var("c1[E]", e1) * P.var("c2[E]", e2) * P.var("c3[E]", e3)
    cap = max([e1 + 2 * e2 + 3 * e3 for e1, e2, e3, _ in terms] + [0])
    assert roots_to_chern(chern_to_roots(poly, [b], cap), [b]) == poly


@settings(max_examples=60, deadline=None)
@given(monomials, monomials)
def test_polynomial_ring_laws(a_terms, b_terms):
    def build(terms):
        out = P()
        for e1, e2, e3, c in terms:
            out = out + P.const(c) * c1**e1 * c2**e2 * r**e3
        return out

    a, b = build(a_terms), build(b_terms)
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a
    assert P.from_json(a.to_json()) == a
    assert sum((a.component(w) for w in range(0, 9)), P()) == a


def test_json_is_canonical():
    poly = c2 - c1 * c1 * Fraction(3, 4) + P.const(5)
    data = poly.to_json()
    assert [t["exponents"] for t in data] == [{"c1": 2}, {"c2": 1}, {}]
    assert data[0]["numerator"] == -3 and data[0]["denominator"] == 4
    assert P.from_json(data) == poly

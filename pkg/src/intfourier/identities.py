"""Symbolic checks of the integral Todd-class identities.

Each check evaluates both sides of an identity in the Chern-class ring.
The ingredients (fTd, fTd^inv, fs) are produced twice: once through the
Chern-variable algebra of :mod:`intfourier.char_calculus` and once through
root-level series. A report passes only if both residuals vanish.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .char_calculus import (
    chern_char_component,
    dual,
    ftd,
    ftd_inv,
    ftd_inv_roots,
    ftd_roots,
    kill_above_rank,
    whitney_substitution,
)
from .errors import DomainError
from .lambda_arith import big_t, divisibility_witness
from .polynomials import GradedPolynomial
from .reports import IdentityReport, timed
from .series import BundleSpec, RootSeries, roots_to_chern, todd_product

P = GradedPolynomial
MAX_CAP = 16
DELTA = "delta"


def _route_ingredients(route: str):
    """Functions (fTd, fTd of dual, fTd^inv, fTd^inv of dual) for a route."""
    if route == "chern":
        return (
            lambda m, b: ftd(m, b.rank, b.name),
            lambda m, b: dual(ftd(m, b.rank, b.name)),
            lambda n, b: ftd_inv(b.rank, n, b.name),
            lambda n, b: dual(ftd_inv(b.rank, n, b.name)),
        )
    if route == "roots":
        return (
            lambda m, b: ftd_roots(m, b),
            lambda m, b: ftd_roots(m, b, -1),
            lambda n, b: ftd_inv_roots(n, b),
            lambda n, b: ftd_inv_roots(n, b, -1),
        )
    raise DomainError(f"unknown route {route!r}")


def _run_routes(name: str, params: dict, residual_fn: Callable[[str], GradedPolynomial]) -> IdentityReport:
    report = IdentityReport(name, params)
    with timed(report):
        residuals = {route: residual_fn(route) for route in ("chern", "roots")}
        report.residual = residuals["chern"]
        if not residuals["roots"].is_zero():
            report.failures.append(f"root-route residual: {residuals['roots']}")
        if residuals["chern"] != residuals["roots"]:
            report.failures.append("routes disagree")
        report.details["routes"] = ["chern", "roots"]
    return report


def _check_cap(deg: int):
    if deg > MAX_CAP:
        raise DomainError(f"degree {deg} exceeds cap {MAX_CAP}")


def verify_exact_seq_identity(r1: int, r2: int, max_deg: int) -> IdentityReport:
    """fTd_i(H) = sum_{j+k=i} T_i/(T_j T_k) fTd_j(E1) fTd_k(E2) for 0 <= H extension."""
    if r1 < 1 or r2 < 1 or max_deg < 0:
        raise DomainError("ranks must be >= 1 and max_deg >= 0")
    _check_cap(max_deg)
    e1, e2 = BundleSpec("E1", r1), BundleSpec("E2", r2)
    h = BundleSpec("H", r1 + r2, e1.roots + e2.roots)

    def residual(route):
        f, _, _, _ = _route_ingredients(route)
        total = P()
        for i in range(max_deg + 1):
            if route == "chern":
                lhs = ftd(i, h.rank, "H").subs(whitney_substitution(h, [e1, e2], i))
            else:
                s = todd_product(h.roots, i).component(i).scale(big_t(i))
                lhs = roots_to_chern(s, [e1, e2])
            rhs = P()
            for j in range(i + 1):
                k = i - j
                coeff = divisibility_witness([], [j, k], i)
                rhs = rhs + f(j, e1) * f(k, e2) * coeff
            total = total + (lhs - rhs)
        return total

    return _run_routes("exact-sequence", {"r1": r1, "r2": r2, "maxDeg": max_deg}, residual)


def _fs_det(k: int, bundle: BundleSpec, route: str) -> GradedPolynomial:
    """fs_k(det E), written in the Chern classes of E."""
    if route == "chern":
        line = chern_char_component(k).subs({"r": 1, "c'1": P.var(bundle.chern_var(1))}, None)
        return kill_above_rank(line, 1, primed=True, upto=k)
    det = BundleSpec("det", 1, ("d",))
    series = RootSeries.linear(det.roots, [1], k) ** k if k else RootSeries.one(det.roots, 0)
    poly = roots_to_chern(series, [det])
    return poly.subs({det.chern_var(1): P.var(bundle.chern_var(1))})


def verify_dual_identity(r: int, max_deg: int) -> IdentityReport:
    """fTd_i(E) = sum_{j+k=i} T_i/(T_j k!) fTd_j(E^dual) fs_k(det E)."""
    if r < 1 or max_deg < 0:
        raise DomainError("rank must be >= 1 and max_deg >= 0")
    _check_cap(max_deg)
    e = BundleSpec("E", r)

    def residual(route):
        f, fdual, _, _ = _route_ingredients(route)
        total = P()
        for i in range(max_deg + 1):
            rhs = P()
            for j in range(i + 1):
                k = i - j
                coeff = divisibility_witness([k - 1] if k else [], [j], i)
                rhs = rhs + fdual(j, e) * _fs_det(k, e, route) * coeff
            total = total + (f(i, e) - rhs)
        return total

    return _run_routes("dual-bundle", {"r": r, "maxDeg": max_deg}, residual)


def tdinv_sum(r: int, m: int, route: str = "chern") -> GradedPolynomial:
    """sum_i T_{r+m}/(T_i (r+m-i)!) fTd_i(E) fTd^inv_{m-i}(E)."""
    e = BundleSpec("E", r)
    f, _, finv, _ = _route_ingredients(route)
    out = P()
    for i in range(m + 1):
        coeff = divisibility_witness([r + m - i - 1], [i], r + m)
        out = out + f(i, e) * finv(m - i, e) * coeff
    return out


def verify_tdinv_identity(r: int, max_m: int) -> IdentityReport:
    """The fTd / fTd^inv pairing equals T_r at m = 0 and vanishes for m >= 1."""
    if r < 1 or max_m < 0:
        raise DomainError("rank must be >= 1 and max_m >= 0")
    _check_cap(r + max_m)

    def residual(route):
        total = P()
        for m in range(max_m + 1):
            expected = big_t(r) if m == 0 else 0
            total = total + (tdinv_sum(r, m, route) - expected)
        return total

    return _run_routes("todd-inverse", {"r": r, "maxM": max_m}, residual)


def verify_binom_identity(max_m: int) -> IdentityReport:
    """sum_i C(m,i) delta^i (-delta)^(m-i) = [m = 0]."""
    report = IdentityReport("binomial", {"maxM": max_m})
    with timed(report):
        d = P.var(DELTA)
        total = P()
        for m in range(max_m + 1):
            s = P()
            for i in range(m + 1):
                s = s + d**i * (-d) ** (m - i) * comb(m, i)
            total = total + (s - (1 if m == 0 else 0))
        report.residual = total
    return report


def key_collapse_sums(g: int, mu: int, route: str = "chern") -> tuple[GradedPolynomial, GradedPolynomial]:
    """The quadruple and the double sum from the collapse, for E of rank g.

    Classes are those of E^dual; delta is a free weight-1 variable.
    """
    e = BundleSpec("E", g)
    _, fdual, _, finv_dual = _route_ingredients(route)
    d = P.var(DELTA)
    top = big_t(2 * g + mu)
    quad = P()
    for k in range(mu + 1):
        for l in range(mu - k + 1):
            for a in range(mu - k - l + 1):
                c = mu - k - l - a
                coeff = Fraction(top, big_t(k) * factorial(l) * factorial(a) * factorial(g + c))
                quad = quad + (-d) ** a * finv_dual(c, e) * fdual(k, e) * d**l * coeff
    double = P()
    for k in range(mu + 1):
        c = mu - k
        coeff = Fraction(top, big_t(k) * factorial(g + c))
        double = double + finv_dual(c, e) * fdual(k, e) * coeff
    return quad, double


def verify_key_collapse(g: int, mu_max: int) -> IdentityReport:
    """Quadruple sum -> double sum -> T_{2g} [mu = 0], for mu <= mu_max."""
    if not 1 <= g <= 3 or not 0 <= mu_max <= 3:
        raise DomainError("desk scale: 1 <= g <= 3 and 0 <= mu_max <= 3")

    values = {}

    def residual(route):
        total = P()
        for mu in range(mu_max + 1):
            quad, double = key_collapse_sums(g, mu, route)
            expected = big_t(2 * g) if mu == 0 else 0
            total = total + (quad - double) + (double - expected)
            if route == "chern":
                values[str(mu)] = str(double)
        return total

    report = _run_routes("key-collapse", {"g": g, "muMax": mu_max}, residual)
    report.details["doubleSum"] = values
    return report


def pappas_shape_check(g: int, n: int) -> IdentityReport:
    """Integrality of the structural constants around fCT_{g+n} and fs_n."""
    if g < 1 or n < 0 or g + n > 12:
        raise DomainError("need g >= 1, n >= 0, g + n <= 12")
    report = IdentityReport("pappas-shape", {"g": g, "n": n})
    with timed(report):
        m = g + n
        constants = {}
        checks = [(f"T_{m}/{n}!", big_t(m), factorial(n))]
        checks += [(f"T_{m}/({j}!T_{m - j})", big_t(m), factorial(j) * big_t(m - j)) for j in range(m + 1)]
        checks += [(f"T_{m}/(({g}+{i})!T_{n - i})", big_t(m), factorial(g + i) * big_t(n - i)) for i in range(n + 1)]
        checks += [(f"C({n},{a})", factorial(n), factorial(a) * factorial(n - a)) for a in range(n + 1)]
        for label, num, den in checks:
            q = Fraction(num, den)
            constants[label] = str(q)
            if q.denominator != 1:
                report.failures.append(f"{label} = {q} is not integral")
        report.details["constants"] = constants
    return report


def verify_all_identities(rank: int, max_deg: int) -> list[IdentityReport]:
    """The four identities at a single rank (r1 = r2 = rank for the first)."""
    reports = [
        verify_exact_seq_identity(rank, rank, max_deg),
        verify_dual_identity(rank, max_deg),
        verify_tdinv_identity(rank, max_deg),
        verify_binom_identity(max_deg),
    ]
    return sorted(reports, key=lambda r: r.identity_name)

"""Brute-force cohomology model used as an independent Fourier oracle.

H^*(X) is the exterior algebra on x_1, y_1, ..., x_g, y_g, and X x X^t
adds primed copies. Monomials are bitmasks over generator indices, with
x_k = 2k, y_k = 2k+1 on X and an offset of 2g on the second factor. The
orientation of X is x_1 y_1 x_2 y_2 ..., so [pt] = l^g / g! with
l = sum x_k y_k.

Fourier is pr_{2,*}(pr_1^* a . exp(P)) with P = sum (x_k y'_k - y_k x'_k),
X^t being identified with X by x' -> x. The Pontryagin product is defined
without Fourier, as the adjoint of m^* under the Poincare pairing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial

from .beauville import CorrespondenceElement, build_model, fourier
from .errors import DomainError
from .reports import IdentityReport, timed

Vector = dict[int, Fraction]
MAX_G = 3


def _sign(a: int, b: int) -> int:
    """Sign of reordering (monomial a)(monomial b) into increasing order."""
    inversions = 0
    while b:
        low = b & -b
        j = low.bit_length() - 1
        inversions += bin(a >> (j + 1)).count("1")
        b ^= low
    return -1 if inversions & 1 else 1


def wedge(u: Vector, v: Vector) -> Vector:
    out: Vector = {}
    for a, ca in u.items():
        for b, cb in v.items():
            if a & b:
                continue
            m = a | b
            out[m] = out.get(m, 0) + _sign(a, b) * ca * cb
    return {m: c for m, c in out.items() if c}


def add(u: Vector, v: Vector, scale=1) -> Vector:
    out = dict(u)
    for m, c in v.items():
        out[m] = out.get(m, 0) + scale * c
    return {m: c for m, c in out.items() if c}


def scaled(u: Vector, c) -> Vector:
    return {m: c * x for m, x in u.items() if c * x}


def degree(mask: int) -> int:
    return bin(mask).count("1")


@dataclass
class CohomologyOracle:
    g: int
    _fourier_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not 1 <= self.g <= MAX_G:
            raise DomainError(f"oracle supports 1 <= g <= {MAX_G} (2^(4g) basis)")

    # generators ---------------------------------------------------------
    @property
    def n(self) -> int:
        return 2 * self.g

    @property
    def top(self) -> int:
        return (1 << self.n) - 1

    def gen(self, k: int, primed: bool = False) -> Vector:
        return {1 << (k + (self.n if primed else 0)): Fraction(1)}

    def x(self, k: int, primed: bool = False) -> Vector:
        return self.gen(2 * k, primed)

    def y(self, k: int, primed: bool = False) -> Vector:
        return self.gen(2 * k + 1, primed)

    def basis(self) -> list[int]:
        return list(range(1 << self.n))

    def one(self) -> Vector:
        return {0: Fraction(1)}

    # tautological classes -------------------------------------------------
    @cached_property
    def ell(self) -> Vector:
        out: Vector = {}
        for k in range(self.g):
            out = add(out, wedge(self.x(k), self.y(k)))
        return out

    def ell_power(self, i: int) -> Vector:
        out = self.one()
        for _ in range(i):
            out = wedge(out, self.ell)
        return out

    def divided_power(self, i: int) -> Vector:
        return {m: c / factorial(i) for m, c in self.ell_power(i).items()}

    def point(self) -> Vector:
        return {self.top: Fraction(1)}

    @cached_property
    def poincare(self) -> Vector:
        out: Vector = {}
        for k in range(self.g):
            out = add(out, wedge(self.x(k), self.y(k, True)))
            out = add(out, wedge(self.y(k), self.x(k, True)), -1)
        return out

    @cached_property
    def exp_poincare(self) -> Vector:
        out = {0: Fraction(1)}
        power = {0: Fraction(1)}
        for j in range(1, self.n + 1):
            power = {m: c / j for m, c in wedge(power, self.poincare).items()}
            out = add(out, power)
        return out

    # integration and transforms -------------------------------------------
    def integrate(self, v: Vector) -> Fraction:
        return v.get(self.top, Fraction(0))

    def fourier(self, v: Vector) -> Vector:
        out: Vector = {}
        for m, c in v.items():
            if m not in self._fourier_cache:
                self._fourier_cache[m] = self._fourier_monomial(m)
            out = add(out, self._fourier_cache[m], c)
        return out

    def _fourier_monomial(self, m: int) -> Vector:
        prod = wedge({m: Fraction(1)}, self.exp_poincare)
        out: Vector = {}
        for mask, c in prod.items():
            # the X-part comes first in every sorted monomial
            if mask & self.top == self.top:
                out[mask >> self.n] = out.get(mask >> self.n, 0) + c
        return {k: c for k, c in out.items() if c}

    def mult_pull(self, n: int, v: Vector) -> Vector:
        """[n]^* acts by n^k on H^k."""
        return {m: c * Fraction(n) ** degree(m) for m, c in v.items() if n or not degree(m)}

    def mult_push(self, n: int, v: Vector) -> Vector:
        """[n]_*, adjoint of [n]^*: n^(2g-k) on H^k."""
        return {m: c * Fraction(n) ** (self.n - degree(m)) for m, c in v.items() if n or degree(m) == self.n}

    @cached_property
    def _pontryagin_constants(self) -> dict[tuple[int, int], Vector]:
        """(a, b) -> a * b, from int_X (a*b) c = int_{XxX} (a x b) m^*c."""
        n, top = self.n, self.top
        table: dict[tuple[int, int], Vector] = {}
        for c in self.basis():
            pulled = {0: Fraction(1)}
            for k in range(n):
                if c >> k & 1:
                    pulled = wedge(pulled, {1 << k: Fraction(1), 1 << (k + n): Fraction(1)})
            comp = top ^ c
            for mask, coeff in pulled.items():
                a, b = top ^ (mask & top), top ^ (mask >> n)
                # a x b = a . b'' is already sorted; pairing it with mask lands on the top class
                value = _sign(a | (b << n), mask) * coeff
                vec = table.setdefault((a, b), {})
                vec[comp] = vec.get(comp, 0) + value * _sign(comp, c)
        return {k: {m: c for m, c in v.items() if c} for k, v in table.items()}

    def pontryagin(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        consts = self._pontryagin_constants
        for a, ca in u.items():
            for b, cb in v.items():
                if (a, b) in consts:
                    out = add(out, consts[(a, b)], ca * cb)
        return out

    def act(self, c: CorrespondenceElement, v: Vector) -> Vector:
        """Gamma_[n] acts through [n]_*."""
        out: Vector = {}
        for n, a in c.support().items():
            out = add(out, self.mult_push(n, v), a)
        return out

    # comparisons -------------------------------------------------------------
    def fourier_on_divided_powers(self) -> list[list[Fraction]]:
        """Row i: coordinates of F(l^i/i!) on l^0/0!, ..., l^g/g!."""
        rows = []
        for i in range(self.g + 1):
            img = self.fourier(self.divided_power(i))
            rows.append(self.tautological_coordinates(img))
        return rows

    def tautological_coordinates(self, v: Vector) -> list[Fraction]:
        """Coordinates of v on the divided powers; raises if v is not tautological."""
        coords = []
        rest = dict(v)
        for j in range(self.g + 1):
            b = self.divided_power(j)
            lead = min(b)  # any monomial of b; all coefficients of b_j are +-1
            c = rest.get(lead, Fraction(0)) / b[lead]
            coords.append(c)
            rest = add(rest, b, -c)
        if rest:
            raise DomainError("class is not in the tautological subalgebra")
        return coords


def build_oracle(g: int) -> CohomologyOracle:
    return CohomologyOracle(g)


def oracle_report(g: int) -> IdentityReport:
    """Agreement of oracle and model, and the scaled relations on H^*."""
    report = IdentityReport("cohomology-oracle", {"g": g})
    with timed(report):
        orc = build_oracle(g)
        model = build_model(g)
        frozen = [list(fourier(b).divided) for b in model.basis()]
        computed = orc.fourier_on_divided_powers()
        if computed != frozen:
            report.failures.append(f"oracle Fourier {computed} != model {frozen}")
        for i in range(g + 1):
            for n in (-2, -1, 0, 1, 2, 3):
                pulled = orc.mult_pull(n, orc.ell_power(i))
                if pulled != scaled(orc.ell_power(i), Fraction(n) ** (2 * i)):
                    report.failures.append(f"[{n}]^* l^{i} is not n^{2 * i} l^{i}")
        report.failures += scaled_fourier_failures(orc)
    return report


def scaled_fourier_failures(orc: CohomologyOracle) -> list[str]:
    g, failures = orc.g, []
    s = factorial(2 * g)
    sign = (-1) ** g
    everything = [{m: Fraction(1)} for m in orc.basis()]
    for v in everything:
        if orc.fourier(orc.fourier(v)) != scaled(orc.mult_pull(-1, v), sign):
            failures.append(f"F o F != (-1)^g [-1]^* on {v}")
            break
    for u in everything:
        for v in everything:
            lhs = scaled(orc.fourier(orc.pontryagin(u, v)), s * s)
            rhs = wedge(scaled(orc.fourier(u), s), scaled(orc.fourier(v), s))
            if lhs != rhs:
                failures.append(f"(2g)! sF(x*y) != sF(x) sF(y) for {u}, {v}")
                return failures
    for n in (-2, -1, 0, 1, 2):
        for v in everything:
            if orc.fourier(orc.mult_push(n, v)) != orc.mult_pull(n, orc.fourier(v)):
                failures.append(f"F o [{n}]_* != [{n}]^* o F")
                break
    return failures


def annihilation_exponent_check(g: int, exponent: int) -> bool:
    """Does (Gamma_[1] - Gamma_[0])^{*exponent} act as zero on all of H^*(X)?"""
    orc = build_oracle(g)
    nil = exponent + 1
    u = CorrespondenceElement.gamma(1, nil) - CorrespondenceElement.gamma(0, nil)
    power = u.star_power(exponent)
    # expand in Gamma_[n] without reduction: the support of u^k has n <= k < nil
    return all(not orc.act(power, {m: Fraction(1)}) for m in orc.basis())


def binomial_action(g: int, exponent: int, cohomological_degree: int) -> int:
    """Scalar of (Gamma_[1]-Gamma_[0])^{*k} on H^j: sum_n C(k,n)(-1)^(k-n) n^(2g-j)."""
    k, e = exponent, 2 * g - cohomological_degree
    return sum(comb(k, n) * (-1) ** (k - n) * n**e for n in range(k + 1))

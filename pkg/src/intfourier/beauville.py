"""Tautological Chow model of a polarized abelian variety over a point.

The model ring is Lambda[l]/(l^{g+1}) with Lambda = Z[1/(nu (2g+1)!)].
Internally classes are stored on the divided-power basis b_i = l^i / i!,
on which the Fourier transform and the Pontryagin product have integral
structure constants:

    F(b_i) = (-1)^(g-i) b_{g-i}
    b_i * b_j (Pontryagin) = C(2g-i-j, g-i) b_{i+j-g}

The Fourier coefficients are frozen data; ``tests/test_oracle.py``
recomputes them from the exterior-algebra model in :mod:`intfourier.oracle`.

Correspondences of the form sum a_n Gamma_[n] live in
Lambda[t, 1/t]/((t-1)^N), with Gamma_[n] -> t^n, the convolution product
being multiplication. They are stored in the basis u^j, u = t - 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import DomainError, InvariantFailure, UnsupportedModel
from .lambda_arith import InvertedPrimeSet, LambdaScalar
from .reports import IdentityReport, timed


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class TautModel:
    g: int
    nu: int = 1
    d: int = 0

    def __post_init__(self):
        if self.g < 1 or self.nu < 1:
            raise DomainError("need g >= 1 and nu >= 1")
        if self.d != 0:
            raise UnsupportedModel("the tautological model lives over a point (d = 0)")

    @property
    def ring(self) -> InvertedPrimeSet:
        return InvertedPrimeSet.inverting(self.nu * factorial(2 * self.g + 1))

    @property
    def dim(self) -> int:
        return self.g + 1

    def element(self, coefficients: Sequence) -> "TautClass":
        """Class from coefficients on l^0, ..., l^g."""
        if len(coefficients) != self.dim:
            raise DomainError(f"need {self.dim} coefficients")
        return TautClass(self, tuple(Fraction(c) * factorial(i) for i, c in enumerate(coefficients)))

    def basis(self) -> list["TautClass"]:
        """The divided powers b_i = l^i / i!."""
        return [self.divided_power(i) for i in range(self.dim)]

    def divided_power(self, i: int) -> "TautClass":
        v = [Fraction(0)] * self.dim
        if 0 <= i <= self.g:
            v[i] = Fraction(1)
        return TautClass(self, tuple(v))

    def zero(self) -> "TautClass":
        return TautClass(self, (Fraction(0),) * self.dim)

    def one(self) -> "TautClass":
        return self.divided_power(0)

    def ell(self) -> "TautClass":
        return self.divided_power(1)

    def __str__(self):
        return f"TautModel(g={self.g}, nu={self.nu}, ring={self.ring})"


def build_model(g: int, nu: int = 1) -> TautModel:
    return TautModel(g, nu)


@dataclass(frozen=True)
class TautClass:
    """A class in the model, stored on the divided-power basis."""

    model: TautModel
    divided: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.divided) != self.model.dim:
            raise DomainError("wrong vector length")
        ring = self.model.ring
        object.__setattr__(self, "divided", tuple(ring.check(c) for c in self.divided))

    @property
    def coefficients(self) -> tuple[LambdaScalar, ...]:
        """Coefficients on the powers l^i."""
        ring = self.model.ring
        return tuple(LambdaScalar(c / factorial(i), ring) for i, c in enumerate(self.divided))

    def _same(self, other: "TautClass"):
        if not isinstance(other, TautClass) or other.model != self.model:
            raise DomainError("classes from different models")

    def __add__(self, other):
        self._same(other)
        return TautClass(self.model, tuple(a + b for a, b in zip(self.divided, other.divided)))

    def __sub__(self, other):
        self._same(other)
        return TautClass(self.model, tuple(a - b for a, b in zip(self.divided, other.divided)))

    def __neg__(self):
        return TautClass(self.model, tuple(-a for a in self.divided))

    def scale(self, c) -> "TautClass":
        c = self.model.ring.check(c)
        return TautClass(self.model, tuple(c * a for a in self.divided))

    def __mul__(self, other):
        """Intersection product: b_i b_j = C(i+j, i) b_{i+j}."""
        if not isinstance(other, TautClass):
            return self.scale(other)
        self._same(other)
        g = self.model.g
        out = [Fraction(0)] * (g + 1)
        for i, a in enumerate(self.divided):
            if a:
                for j, b in enumerate(other.divided):
                    if b and i + j <= g:
                        out[i + j] += comb(i + j, i) * a * b
        return TautClass(self.model, tuple(out))

    __rmul__ = scale

    def __pow__(self, n: int) -> "TautClass":
        out = self.model.one()
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not any(self.divided)

    def degree(self) -> Fraction:
        """pi_*, using l^g / g! = nu [pt]."""
        return self.divided[self.model.g] * self.model.nu

    def to_json(self) -> dict:
        return {
            "g": self.model.g,
            "nu": self.model.nu,
            "coefficients": [frac_str(c.value) for c in self.coefficients],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TautClass":
        return build_model(data["g"], data["nu"]).element([Fraction(c) for c in data["coefficients"]])

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c.value:
                terms.append(frac_str(c.value) + ("" if i == 0 else "*l" if i == 1 else f"*l^{i}"))
        return " + ".join(terms) or "0"


def point_class(m: TautModel) -> TautClass:
    """[e] = l^g / (nu g!)."""
    return m.divided_power(m.g).scale(Fraction(1, m.nu))


def lambda_class(m: TautModel) -> TautClass:
    """l^{g-1} / (nu (g-1)!)."""
    return m.divided_power(m.g - 1).scale(Fraction(1, m.nu))


def exp_ell(m: TautModel, sign: int = 1) -> TautClass:
    return TautClass(m, tuple(Fraction(sign) ** i for i in range(m.dim)))


def _principal(m: TautModel):
    if m.nu != 1:
        raise UnsupportedModel("Fourier transform and Pontryagin product need nu = 1")


def fourier(x: TautClass) -> TautClass:
    m = x.model
    _principal(m)
    g = m.g
    out = [Fraction(0)] * (g + 1)
    for i, c in enumerate(x.divided):
        out[g - i] = (-1) ** (g - i) * c
    return TautClass(m, tuple(out))


def inverse_fourier(x: TautClass) -> TautClass:
    """F^{-1} = (-1)^g [-1]^* F, and [-1]^* is trivial on the model."""
    return fourier(x).scale((-1) ** x.model.g)


def pontryagin(x: TautClass, y: TautClass) -> TautClass:
    """x * y := F^{-1}(F(x) F(y))."""
    x._same(y)
    return inverse_fourier(fourier(x) * fourier(y))


def pontryagin_table(m: TautModel, i: int, j: int) -> TautClass:
    """Closed form b_i * b_j = C(2g-i-j, g-i) b_{i+j-g}."""
    g = m.g
    k = i + j - g
    if k < 0:
        return m.zero()
    return m.divided_power(k).scale(comb(2 * g - i - j, g - i))


def mult_pull(n: int, x: TautClass) -> TautClass:
    """[n]^* l^i = n^{2i} l^i."""
    return TautClass(x.model, tuple(Fraction(n) ** (2 * i) * c for i, c in enumerate(x.divided)))


def mult_push(n: int, x: TautClass) -> TautClass:
    """[n]_* l^i = n^{2(g-i)} l^i."""
    g = x.model.g
    return TautClass(x.model, tuple(Fraction(n) ** (2 * (g - i)) * c for i, c in enumerate(x.divided)))


def lambda_characterization(m: TautModel) -> bool:
    """F(l) = (-1)^{g-1} lambda, and lambda is the only class of degree g-1 doing so."""
    lam = lambda_class(m)
    if fourier(m.ell()) != lam.scale((-1) ** (m.g - 1)):
        return False
    # uniqueness: F is injective on the codimension g-1 line
    return not fourier(m.divided_power(m.g - 1)).is_zero()


def theta_fourier_check(m: TautModel) -> bool:
    """theta^* F(exp l) = nu exp(-l), through pi^* pi_*(exp l) exp(-l).

    For nu = 1 theta is the identity and the left side is computed with
    the model Fourier transform as well.
    """
    lhs = exp_ell(m, -1).scale(exp_ell(m).degree())
    rhs = exp_ell(m, -1).scale(m.nu)
    if m.nu == 1 and fourier(exp_ell(m)) != rhs:
        return False
    return lhs == rhs


def sl2_operators(m: TautModel):
    """Matrices of e = l., f = lambda*, h on the basis b_0..b_g (columns = inputs)."""
    basis = m.basis()
    lam = lambda_class(m)
    e = [[Fraction(0)] * m.dim for _ in range(m.dim)]
    f = [[Fraction(0)] * m.dim for _ in range(m.dim)]
    for j, b in enumerate(basis):
        for i, c in enumerate((m.ell() * b).divided):
            e[i][j] = c
        for i, c in enumerate(pontryagin(lam, b).divided):
            f[i][j] = c
    h = [[Fraction(2 * i - m.g) if i == j else Fraction(0) for j in range(m.dim)] for i in range(m.dim)]
    return e, f, h


# ---------------------------------------------------------------------------
# correspondence algebra


def _gbinom(n: int, j: int) -> int:
    """Generalized binomial n(n-1)...(n-j+1)/j!, valid for negative n."""
    num = 1
    for k in range(j):
        num *= n - k
    return num // factorial(j)


@dataclass(frozen=True)
class CorrespondenceElement:
    """An element of Lambda[t, 1/t]/((t-1)^nil_index), stored on powers of u = t-1."""

    u_coefficients: tuple[Fraction, ...]
    ring: InvertedPrimeSet = InvertedPrimeSet()

    def __post_init__(self):
        if not self.u_coefficients:
            raise DomainError("nil index must be positive")
        object.__setattr__(self, "u_coefficients", tuple(self.ring.check(c) for c in self.u_coefficients))

    @property
    def nil_index(self) -> int:
        return len(self.u_coefficients)

    @classmethod
    def gamma(cls, n: int, nil_index: int, ring: InvertedPrimeSet = InvertedPrimeSet()):
        return cls(tuple(Fraction(_gbinom(n, j)) for j in range(nil_index)), ring)

    @classmethod
    def u_power(cls, j: int, nil_index: int, ring: InvertedPrimeSet = InvertedPrimeSet()):
        return cls(tuple(Fraction(int(k == j)) for k in range(nil_index)), ring)

    @classmethod
    def from_support(cls, support: dict[int, Fraction], nil_index: int, ring=InvertedPrimeSet()):
        out = cls((Fraction(0),) * nil_index, ring)
        for n, a in support.items():
            out = out + cls.gamma(n, nil_index, ring).scale(a)
        return out

    def _same(self, other):
        if other.nil_index != self.nil_index or other.ring != self.ring:
            raise DomainError("correspondences from different quotients")

    def __add__(self, other):
        self._same(other)
        return CorrespondenceElement(tuple(a + b for a, b in zip(self.u_coefficients, other.u_coefficients)), self.ring)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "CorrespondenceElement":
        c = Fraction(c)
        return CorrespondenceElement(tuple(c * a for a in self.u_coefficients), self.ring)

    def star(self, other) -> "CorrespondenceElement":
        """Convolution: Gamma_[m] * Gamma_[n] = Gamma_[m+n]."""
        self._same(other)
        n = self.nil_index
        out = [Fraction(0)] * n
        for i, a in enumerate(self.u_coefficients):
            if a:
                for j in range(n - i):
                    out[i + j] += a * other.u_coefficients[j]
        return CorrespondenceElement(tuple(out), self.ring)

    def star_power(self, k: int) -> "CorrespondenceElement":
        out = CorrespondenceElement.gamma(0, self.nil_index, self.ring)
        for _ in range(k):
            out = out.star(self)
        return out

    def moments(self, upto: int | None = None) -> list[Fraction]:
        """sum_n a_n n^j for j < nil_index (well defined on the quotient)."""
        upto = self.nil_index - 1 if upto is None else upto
        if upto >= self.nil_index:
            raise DomainError("moments beyond the nil index are not defined on the quotient")
        sup = self.support()
        return [sum((a * Fraction(n) ** j for n, a in sup.items()), Fraction(0)) for j in range(upto + 1)]

    def compose(self, other) -> "CorrespondenceElement":
        """Composition Gamma_[m] o Gamma_[n] = Gamma_[mn]: pointwise product of moments."""
        self._same(other)
        a, b = self.support(), other.support()
        out: dict[int, Fraction] = {}
        for m, x in a.items():
            for n, y in b.items():
                out[m * n] = out.get(m * n, 0) + x * y
        return CorrespondenceElement.from_support(out, self.nil_index, self.ring)

    def support(self) -> dict[int, Fraction]:
        """Canonical representative sum_{n < nil_index} a_n Gamma_[n]."""
        out: dict[int, Fraction] = {}
        for j, c in enumerate(self.u_coefficients):
            if c:
                for n in range(j + 1):
                    out[n] = out.get(n, 0) + c * comb(j, n) * (-1) ** (j - n)
        return {n: a for n, a in sorted(out.items()) if a}

    def reduce(self, nil_index: int) -> "CorrespondenceElement":
        """Image in the smaller quotient by (t-1)^nil_index."""
        if nil_index > self.nil_index:
            raise DomainError("can only pass to a coarser quotient")
        return CorrespondenceElement(self.u_coefficients[:nil_index], self.ring)

    def is_zero(self) -> bool:
        return not any(self.u_coefficients)

    def to_json(self) -> dict:
        return {
            "nilIndex": self.nil_index,
            "support": [{"n": n, "a": frac_str(a)} for n, a in self.support().items()],
        }

    def __str__(self):
        return " + ".join(f"{frac_str(a)}*G[{n}]" for n, a in self.support().items()) or "0"


def log_gamma1(nil_index: int, ring: InvertedPrimeSet | None = None) -> CorrespondenceElement:
    """log Gamma_[1] = sum_{j=1}^{N-1} (-1)^(j-1) u^j / j."""
    if ring is None:
        ring = InvertedPrimeSet.inverting(factorial(max(nil_index - 1, 1)))
    return CorrespondenceElement(
        (Fraction(0),) + tuple(Fraction((-1) ** (j - 1), j) for j in range(1, nil_index)), ring
    )


def log_coefficients_closed_form(nil_index: int) -> dict[int, Fraction]:
    """c_n = sum_{j=max(1,n)}^{N-1} (-1)^(n-1) C(j,n) / j."""
    top = nil_index - 1
    out = {}
    for n in range(top + 1):
        c = sum((Fraction((-1) ** (n - 1) * comb(j, n)) / j for j in range(max(1, n), top + 1)), Fraction(0))
        if c:
            out[n] = c
    return out


def projector_ring(g: int, d: int = 0, nu: int = 1) -> InvertedPrimeSet:
    return InvertedPrimeSet.inverting(nu * factorial(2 * g + d + 1))


def beauville_projectors(g: int, d: int = 0, nil_index: int | None = None) -> list[CorrespondenceElement]:
    """pi_i = (log Gamma_[1])^{2g-i} / (2g-i)! for i = 0..2g."""
    if g < 1 or d < 0:
        raise DomainError("need g >= 1 and d >= 0")
    nil = 2 * g + d + 1 if nil_index is None else nil_index
    if nil < 2 * g + 1:
        raise DomainError("nil index must be at least 2g+1 for the projector moments")
    ring = projector_ring(g, d)
    log = log_gamma1(nil, ring)
    out = []
    for i in range(2 * g + 1):
        k = 2 * g - i
        out.append(log.star_power(k).scale(Fraction(1, factorial(k))))
    for i, p in enumerate(out):
        moments = p.moments(2 * g)
        for j, mu in enumerate(moments):
            if mu != (1 if j == 2 * g - i else 0):
                raise InvariantFailure(f"moment {j} of pi_{i} is {mu}")
    return out


def projector_table(g: int, d: int = 0) -> list[dict]:
    """[{i, n, a}] with a = a_{i,n} as a reduced fraction string."""
    rows = []
    for i, p in enumerate(beauville_projectors(g, d)):
        for n, a in p.support().items():
            rows.append({"i": i, "n": n, "a": frac_str(a)})
    return rows


def act_on_model(c: CorrespondenceElement, x: TautClass) -> TautClass:
    """Gamma_[n] acts through [n]_*."""
    out = x.model.zero()
    for n, a in c.support().items():
        out = out + mult_push(n, x).scale(a)
    return out


def projector_report(g: int, d: int = 0) -> IdentityReport:
    """Moment relations, orthogonality and completeness of the projectors.

    Orthogonality uses composition. Completeness is checked modulo
    (t-1)^{2g+1}, where the augmentation ideal of relative zero-cycles on
    X x X over X already vanishes; the report also records whether it
    holds in the coarser presentation.
    """
    report = IdentityReport("projectors", {"g": g, "d": d, "nilIndex": 2 * g + d + 1})
    with timed(report):
        pis = beauville_projectors(g, d)
        nil = pis[0].nil_index
        for i, p in enumerate(pis):
            for j, q in enumerate(pis):
                comp = p.compose(q)
                expected = p if i == j else p.scale(0)
                if comp != expected:
                    report.failures.append(f"pi_{i} o pi_{j} != [i=j] pi_{i}")
        total = pis[0]
        for p in pis[1:]:
            total = total + p
        one = CorrespondenceElement.gamma(1, nil, pis[0].ring)
        sharp = 2 * g + 1
        if total.reduce(sharp) != one.reduce(sharp):
            report.failures.append("sum of projectors differs from Gamma_[1]")
        report.details["sumEqualsGamma1AtNilIndex"] = total == one
        report.details["coefficients"] = projector_table(g, d)
    return report


def model_report(g: int) -> IdentityReport:
    """Fourier, Pontryagin and sl2 identities on the principal model."""
    m = build_model(g, 1)
    report = IdentityReport("fourier-model", {"g": g, "nu": 1})
    with timed(report):
        basis = m.basis()
        sign = (-1) ** g
        for x in basis:
            if fourier(fourier(x)) != mult_pull(-1, x).scale(sign):
                report.failures.append(f"F o F != (-1)^g [-1]^* on {x}")
        for i, x in enumerate(basis):
            for j, y in enumerate(basis):
                if fourier(pontryagin(x, y)) != fourier(x) * fourier(y):
                    report.failures.append(f"F(x*y) != F(x)F(y) at ({i},{j})")
                if fourier(x * y) != pontryagin(fourier(x), fourier(y)).scale(sign):
                    report.failures.append(f"F(xy) != (-1)^g F(x)*F(y) at ({i},{j})")
                if pontryagin(x, y) != pontryagin_table(m, i, j):
                    report.failures.append(f"Pontryagin closed form fails at ({i},{j})")
        pt = point_class(m)
        if any(pontryagin(pt, x) != x for x in basis):
            report.failures.append("[pt] is not the Pontryagin unit")
        if m.ell() ** g != pt.scale(m.nu * factorial(g)):
            report.failures.append("l^g != nu g! [pt]")
        if not lambda_characterization(m):
            report.failures.append("lambda characterization fails")
    return report

"""Integral sl2-modules with weights in [-g, g] and their isotypic decomposition.

A module is graded: each weight piece V_i is a finitely generated module
over Lambda (which must invert (2g)!), e maps V_i -> V_{i+2} and f maps
V_i -> V_{i-2}. Every lowest-weight vector v of weight -n generates a copy
of Sym^n(St), and the decomposition

    phi: (+)_n Sym^n(St) (x) M_n -> V,   x_{-n+2i} (x) v -> ((n-i)!/n!) e^i(v)

is certified to be an isomorphism weight by weight, with M_n = ker f on V_{-n}.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Sequence

from .beauville import build_model, sl2_operators
from .errors import DomainError, InvariantFailure, NotARepresentation
from .lambda_arith import (
    InvertedPrimeSet,
    Matrix,
    identity,
    inverse,
    is_injective_mod,
    is_prime,
    mat_mul,
    zeros,
)
from .modules import (
    ModuleType,
    check_orders,
    columns,
    from_columns,
    hom_kernel,
    is_isomorphism,
    is_well_defined,
    is_zero_map,
    is_zero_vector,
    reduce_matrix,
    submodule_contains,
)
from .reports import IdentityReport, timed


def _frac_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _compose(outer: Matrix, inner: Matrix, mid: int, n: int) -> Matrix:
    """outer o inner for maps V -> M -> V with rank(V) = n, rank(M) = mid."""
    if mid == 0:
        return zeros(n, n)
    return mat_mul(outer, inner)


@dataclass
class Sl2Module:
    g: int
    ring: InvertedPrimeSet
    orders: dict[int, list[int]]  # weight -> generator orders (0 = free)
    e_maps: dict[int, Matrix] = field(default_factory=dict)  # weight i: V_i -> V_{i+2}
    f_maps: dict[int, Matrix] = field(default_factory=dict)  # weight i: V_i -> V_{i-2}

    def __post_init__(self):
        if self.g < 1:
            raise DomainError("g must be positive")
        if not self.ring.is_unit(factorial(2 * self.g)):
            raise DomainError(f"(2g)! = {factorial(2 * self.g)} is not invertible in {self.ring}")
        for w in list(self.orders):
            if abs(w) > self.g:
                raise DomainError(f"weight {w} outside [-g, g]")
            check_orders(self.orders[w], self.ring)
        for w in range(-self.g, self.g + 1):
            self.orders.setdefault(w, [])
        for w in self.weights():
            self.e_maps[w] = self._normalize(self.e_maps.get(w), w, w + 2)
            self.f_maps[w] = self._normalize(self.f_maps.get(w), w, w - 2)

    def weights(self) -> list[int]:
        return list(range(-self.g, self.g + 1))

    def rank(self, w: int) -> int:
        return len(self.orders.get(w, []))

    def _normalize(self, a, src: int, tgt: int) -> Matrix:
        m, n = self.rank(tgt), self.rank(src)
        if a is None or m == 0 or n == 0:
            if a is not None and any(any(Fraction(x) for x in row) for row in a):
                raise DomainError(f"nonzero map {src} -> {tgt} into or out of a zero piece")
            return zeros(m, n)
        a = [[Fraction(x) for x in row] for row in a]
        if len(a) != m or any(len(row) != n for row in a):
            raise DomainError(f"map {src} -> {tgt} must be {m}x{n}")
        a = reduce_matrix(a, self.orders[tgt], self.ring)
        if not is_well_defined(a, self.orders[src], self.orders[tgt], self.ring):
            raise DomainError(f"map {src} -> {tgt} does not respect the torsion orders")
        return a

    # operators ---------------------------------------------------------------
    def e(self, w: int, v: Sequence[Fraction]) -> list[Fraction]:
        return _apply(self.e_maps[w], v, self.rank(w + 2))

    def f(self, w: int, v: Sequence[Fraction]) -> list[Fraction]:
        return _apply(self.f_maps[w], v, self.rank(w - 2))

    def e_power(self, w: int, k: int, v):
        for j in range(k):
            v = self.e(w + 2 * j, v)
        return v

    def f_power(self, w: int, k: int, v):
        for j in range(k):
            v = self.f(w - 2 * j, v)
        return v

    def equal(self, w: int, a, b) -> bool:
        return is_zero_vector([x - y for x, y in zip(a, b)], self.orders.get(w, []), self.ring)

    def relation_defects(self) -> list[int]:
        """Weights where (ef - fe) differs from multiplication by the weight."""
        bad = []
        for w in self.weights():
            n = self.rank(w)
            if n == 0:
                continue
            ef = _compose(self.e_maps.get(w - 2, []), self.f_maps[w], self.rank(w - 2), n)
            fe = _compose(self.f_maps.get(w + 2, []), self.e_maps[w], self.rank(w + 2), n)
            diff = [[ef[i][j] - fe[i][j] - (w if i == j else 0) for j in range(n)] for i in range(n)]
            if not is_zero_map(diff, self.orders[w], self.ring):
                bad.append(w)
        return bad

    def check_relations(self):
        bad = self.relation_defects()
        if bad:
            raise NotARepresentation(f"[e,f] != h on weights {bad}")

    def kernel_f(self, w: int):
        return hom_kernel(self.f_maps[w], self.orders[w], self.orders.get(w - 2, []), self.ring)

    def kernel_e(self, w: int):
        return hom_kernel(self.e_maps[w], self.orders[w], self.orders.get(w + 2, []), self.ring)

    def piece_type(self, w: int) -> ModuleType:
        return ModuleType.from_orders(self.orders[w])

    # serialization ---------------------------------------------------------------
    def to_json(self) -> dict:
        pieces = []
        for w in self.weights():
            t = self.piece_type(w)
            pieces.append({"weight": w, **t.to_json(), "generatorOrders": self.orders[w]})
        return {
            "g": self.g,
            "invertedPrimes": list(self.ring.primes),
            "pieces": pieces,
            "eMaps": {str(w): [[_frac_json(x) for x in row] for row in self.e_maps[w]] for w in self.weights()},
            "fMaps": {str(w): [[_frac_json(x) for x in row] for row in self.f_maps[w]] for w in self.weights()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Sl2Module":
        try:
            ring = InvertedPrimeSet(tuple(data["invertedPrimes"]))
            orders = {}
            for piece in data["pieces"]:
                w = int(piece["weight"])
                if "generatorOrders" in piece:
                    orders[w] = [int(o) for o in piece["generatorOrders"]]
                else:
                    orders[w] = ModuleType.from_counts(piece.get("freeRank", 0), piece.get("torsion", [])).orders()
            conv = lambda maps: {int(w): [[Fraction(x) for x in row] for row in m] for w, m in maps.items()}
            return cls(int(data["g"]), ring, orders, conv(data.get("eMaps", {})), conv(data.get("fMaps", {})))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed module JSON: {exc}") from exc


def _apply(a: Matrix, v: Sequence[Fraction], m: int) -> list[Fraction]:
    return [sum((a[i][j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for i in range(m)]


def default_ring(g: int) -> InvertedPrimeSet:
    return InvertedPrimeSet.inverting(factorial(2 * g))


# ---------------------------------------------------------------------------
# constructions


def sym_power(n: int, g: int | None = None, ring: InvertedPrimeSet | None = None) -> Sl2Module:
    """Sym^n(St) on x_{-n}, x_{-n+2}, ..., x_n.

    e(x_{-n+2i}) = (n-i) x_{-n+2i+2},  f(x_{-n+2i}) = i x_{-n+2i-2}.
    """
    g = n if g is None else g
    g = max(g, 1)
    if not 0 <= n <= g:
        raise DomainError("need 0 <= n <= g")
    return tensor_sym(n, [0], g, ring or default_ring(g))


def tensor_sym(n: int, orders: Sequence[int], g: int, ring: InvertedPrimeSet) -> Sl2Module:
    """Sym^n(St) (x) M with M = (+) Lambda/o_j."""
    return direct_sum([(n, list(orders))], g, ring)


def direct_sum(parts: Sequence[tuple[int, Sequence[int]]], g: int, ring: InvertedPrimeSet) -> Sl2Module:
    """(+) Sym^n(St) (x) M_n; generators of each weight listed part by part."""
    layout: dict[int, list[tuple[int, int, int]]] = {w: [] for w in range(-g, g + 1)}
    for idx, (n, orders) in enumerate(parts):
        if not 0 <= n <= g:
            raise DomainError("need 0 <= n <= g")
        for i in range(n + 1):
            for j, _ in enumerate(orders):
                layout[-n + 2 * i].append((idx, i, j))
    gen_orders = {w: [parts[idx][1][j] for idx, _, j in layout[w]] for w in layout}
    pos = {w: {key: r for r, key in enumerate(layout[w])} for w in layout}
    e_maps, f_maps = {}, {}
    for w in layout:
        e = zeros(len(layout.get(w + 2, [])), len(layout[w]))
        f = zeros(len(layout.get(w - 2, [])), len(layout[w]))
        for c, (idx, i, j) in enumerate(layout[w]):
            n = parts[idx][0]
            if i < n:
                e[pos[w + 2][(idx, i + 1, j)]][c] = Fraction(n - i)
            if i > 0:
                f[pos[w - 2][(idx, i - 1, j)]][c] = Fraction(i)
        e_maps[w], f_maps[w] = e, f
    return Sl2Module(g, ring, gen_orders, e_maps, f_maps)


def dual_module(v: Sl2Module) -> Sl2Module:
    """Weights negated, e and f exchanged."""
    return Sl2Module(
        v.g,
        v.ring,
        {-w: list(o) for w, o in v.orders.items()},
        {-w: [row[:] for row in v.f_maps[w]] for w in v.weights()},
        {-w: [row[:] for row in v.e_maps[w]] for w in v.weights()},
    )


# ---------------------------------------------------------------------------
# flek calculus


def flek_coefficient(n: int, k: int, l: int) -> int:
    """f^l e^k v = c e^{k-l} v for v of weight -n with f v = 0."""
    if not 0 <= k <= n or l < 0:
        raise DomainError("need 0 <= k <= n and l >= 0")
    if l > k:
        return 0
    return factorial(n - k + l) * factorial(k) // (factorial(n - k) * factorial(k - l))


def verify_flek(v: Sl2Module, max_n: int | None = None) -> IdentityReport:
    max_n = v.g if max_n is None else min(max_n, v.g)
    report = IdentityReport("flek", {"g": v.g, "maxN": max_n})
    with timed(report):
        v.check_relations()
        checked = 0
        for n in range(max_n + 1):
            w0 = -n
            for x in v.kernel_f(w0).generators:
                for k in range(n + 1):
                    ek = v.e_power(w0, k, x)
                    for l in range(k + 2):
                        lhs = v.f_power(w0 + 2 * k, l, ek)
                        c = flek_coefficient(n, k, l)
                        wt = w0 + 2 * (k - l)
                        rhs = [c * y for y in v.e_power(w0, k - l, x)] if l <= k else [Fraction(0)] * len(lhs)
                        checked += 1
                        if not v.equal(wt, lhs, rhs):
                            report.failures.append(f"f^{l} e^{k} on weight {w0} generator")
                top = w0 + 2 * (n + 1)
                # above weight g the piece is zero and e^{n+1} v = 0 trivially
                if top <= v.g and not v.equal(top, v.e_power(w0, n + 1, x), [Fraction(0)] * v.rank(top)):
                    report.failures.append(f"e^{n + 1} v != 0 at weight {w0}")
        for n in range(1, v.g + 1):
            if not v.kernel_f(n).type.is_zero():
                report.failures.append(f"V_{n}[f] != 0")
        report.details["checks"] = checked
    return report


def flek_matrix_check(n: int) -> list[tuple[int, int]]:
    """(k, l) pairs where iterated matrices on Sym^n(St) disagree with the closed form."""
    s = sym_power(n, max(n, 1))
    x = [Fraction(1)]
    bad = []
    for k in range(n + 1):
        ek = s.e_power(-n, k, x)
        for l in range(k + 2):
            lhs = s.f_power(-n + 2 * k, l, ek)
            c = flek_coefficient(n, k, l)
            rhs = [c * y for y in s.e_power(-n, k - l, x)] if l <= k else [Fraction(0)] * len(lhs)
            if lhs != rhs:
                bad.append((k, l))
    return bad


# ---------------------------------------------------------------------------
# homogeneous splitting


def homogeneous_split(v: Sl2Module, generators: Sequence[dict[int, Sequence[Fraction]]]) -> list[dict]:
    """Weight components of each generator, with Vandermonde certificates.

    A generator is a dict weight -> vector. Each component w_a is written
    as sum_j c_{aj} h^j(w) with c_{aj} in Lambda, so it lies in every
    h-stable submodule containing w. The combination is re-evaluated on all
    weights as a certificate.
    """
    out = []
    for gen in generators:
        gen = {w: [Fraction(x) for x in vec] for w, vec in gen.items()}
        support = sorted(w for w, x in gen.items() if not is_zero_vector(x, v.orders[w], v.ring))
        comps = {}
        k = len(support)
        inv = inverse([[Fraction(w) ** j for w in support] for j in range(k)]) if k else []
        for a, wa in enumerate(support):
            coeffs = [v.ring.check(inv[a][j]) for j in range(k)]
            for w in support:
                # (sum_j c_j h^j gen) at weight w is (sum_j c_j w^j) gen_w
                factor = sum((c * Fraction(w) ** j for j, c in enumerate(coeffs)), Fraction(0))
                expected = gen[w] if w == wa else [Fraction(0)] * len(gen[w])
                if not v.equal(w, [factor * y for y in gen[w]], expected):
                    raise InvariantFailure("Vandermonde certificate failed")
            comps[wa] = {"component": gen[wa], "hPowerCoefficients": coeffs}
        out.append(comps)
    return out


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class IsotypicComponent:
    n: int
    type: ModuleType
    generators: list[list[Fraction]]  # lowest-weight vectors in V_{-n}
    orders: list[int]

    def to_json(self) -> dict:
        return {"n": self.n, **self.type.to_json()}


@dataclass
class IsotypicDecomposition:
    g: int
    components: list[IsotypicComponent]
    phi: dict[int, Matrix]  # weight -> matrix from the Sym side to V_w
    source_orders: dict[int, list[int]]

    def multiplicities(self) -> dict[int, ModuleType]:
        return {c.n: c.type for c in self.components}

    def nonzero(self) -> list[IsotypicComponent]:
        return [c for c in self.components if not c.type.is_zero()]

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "components": [c.to_json() for c in self.nonzero()],
            "phi": {str(w): [[_frac_json(x) for x in row] for row in m] for w, m in sorted(self.phi.items())},
        }


def decompose(v: Sl2Module) -> IsotypicDecomposition:
    v.check_relations()
    comps = []
    for n in range(v.g + 1):
        ker = v.kernel_f(-n)
        comps.append(IsotypicComponent(n, ker.type, ker.generators, ker.orders))
    phi: dict[int, Matrix] = {}
    src_orders: dict[int, list[int]] = {}
    layout: dict[int, list[tuple[int, int, int]]] = {}
    for w in v.weights():
        cols, orders, keys = [], [], []
        for c in comps:
            n = c.n
            if abs(w) > n or (w + n) % 2:
                continue
            i = (w + n) // 2
            scale = Fraction(factorial(n - i), factorial(n))
            for j, (x, o) in enumerate(zip(c.generators, c.orders)):
                cols.append([scale * y for y in v.e_power(-n, i, x)])
                orders.append(o)
                keys.append((n, i, j))
        phi[w] = from_columns(cols, v.rank(w)) if cols else zeros(v.rank(w), 0)
        src_orders[w] = orders
        layout[w] = keys
        if not is_isomorphism(phi[w], orders, v.orders[w], v.ring):
            raise InvariantFailure(f"phi is not an isomorphism in weight {w}")
    # equivariance: phi e_S = e_V phi and phi f_S = f_V phi
    for w in v.weights():
        for step, op_maps in ((2, v.e_maps), (-2, v.f_maps)):
            t = w + step
            if abs(t) > v.g:
                continue
            pos = {key: r for r, key in enumerate(layout[t])}
            for col, (n, i, j) in enumerate(layout[w]):
                img = [Fraction(0)] * len(layout[t])
                if step == 2 and i < n:
                    img[pos[(n, i + 1, j)]] = Fraction(n - i)
                if step == -2 and i > 0:
                    img[pos[(n, i - 1, j)]] = Fraction(i)
                lhs = [sum((phi[t][r][c] * img[c] for c in range(len(img))), Fraction(0)) for r in range(v.rank(t))]
                rhs = _apply(op_maps[w], [phi[w][r][col] for r in range(v.rank(w))], v.rank(t))
                if not v.equal(t, lhs, rhs):
                    raise InvariantFailure(f"phi is not equivariant at weight {w}")
    return IsotypicDecomposition(v.g, comps, phi, src_orders)


def primitive_string_checks(v: Sl2Module) -> list[str]:
    """Inverse pairs (1/n!)f^n, (1/n!)e^n and the image equality e^i(V_{-n}[f]) = f^{n-i}(V_n[e])."""
    failures = []
    for n in range(v.g + 1):
        low = v.kernel_f(-n).generators
        high = v.kernel_e(n).generators
        nf = Fraction(1, factorial(n))
        for x in low:
            back = [nf * nf * y for y in v.f_power(n, n, v.e_power(-n, n, x))]
            if not v.equal(-n, back, x):
                failures.append(f"f^n e^n / n!^2 != id on V_-{n}[f]")
        for x in high:
            back = [nf * nf * y for y in v.e_power(-n, n, v.f_power(n, n, x))]
            if not v.equal(n, back, x):
                failures.append(f"e^n f^n / n!^2 != id on V_{n}[e]")
        for i in range(n + 1):
            w = -n + 2 * i
            a = [v.e_power(-n, i, x) for x in low]
            b = [v.f_power(n, n - i, x) for x in high]
            if not (submodule_contains(a, b, v.orders[w], v.ring) and submodule_contains(b, a, v.orders[w], v.ring)):
                failures.append(f"e^{i}(V_-{n}[f]) != f^{n - i}(V_{n}[e])")
    return failures


def parity_check(dec: IsotypicDecomposition, parity: int) -> bool:
    """M_j = 0 unless j has the given parity."""
    return all(c.type.is_zero() or c.n % 2 == parity % 2 for c in dec.components)


# ---------------------------------------------------------------------------
# random instances


@dataclass(frozen=True)
class RandomModuleConfig:
    g: int
    seed: int
    max_free: int = 2
    max_torsion: int = 2
    max_exponent: int = 2
    prime_bound: int = 30
    scramble_steps: int = 12


def torsion_primes(g: int, bound: int = 30) -> list[int]:
    return [p for p in range(2 * g + 2, bound + 1) if is_prime(p)]


def random_multiplicities(cfg: RandomModuleConfig) -> dict[int, ModuleType]:
    rng = random.Random(cfg.seed)
    primes = torsion_primes(cfg.g, cfg.prime_bound)
    out = {}
    for n in range(cfg.g + 1):
        free = rng.randint(0, cfg.max_free)
        tors = tuple(sorted((rng.choice(primes), rng.randint(1, cfg.max_exponent)) for _ in range(rng.randint(0, cfg.max_torsion))))
        out[n] = ModuleType(free, tors)
    return out


def scramble(v: Sl2Module, rng: random.Random, steps: int) -> Sl2Module:
    """Conjugate e, f by random automorphisms of each weight piece.

    Moves: add c * (generator b) to generator a (allowed when it respects
    the orders), scale by -1, swap generators of equal order.
    """
    units = [Fraction(-1)] + [Fraction(p) for p in v.ring.primes] + [Fraction(1, p) for p in v.ring.primes]
    auts: dict[int, tuple[Matrix, Matrix]] = {}
    for w in v.weights():
        orders = v.orders[w]
        n = len(orders)
        a, ainv = identity(n), identity(n)
        for _ in range(steps if n else 0):
            move = rng.random()
            i, j = rng.randrange(n), rng.randrange(n)
            if move < 0.7 and i != j:
                oi, oj = orders[i], orders[j]
                if oi and not oj:
                    continue  # a torsion generator cannot absorb a free one
                step = oj // gcd(oj, oi) if oi and oj else 1
                c = Fraction(step * rng.choice([-2, -1, 1, 2, 3]))
                # gen_i -> gen_i + c gen_j: column op on A, row op on A^{-1}
                for row in a:
                    row[i] += c * row[j]
                ainv[j] = [x - c * y for x, y in zip(ainv[j], ainv[i])]
            elif move < 0.85:
                u = rng.choice(units)
                for row in a:
                    row[i] *= u
                ainv[i] = [x / u for x in ainv[i]]
            elif orders[i] == orders[j] and i != j:
                for row in a:
                    row[i], row[j] = row[j], row[i]
                ainv[i], ainv[j] = ainv[j], ainv[i]
        auts[w] = (a, ainv)

    def conj(m: Matrix, src: int, tgt: int) -> Matrix:
        if v.rank(src) == 0 or v.rank(tgt) == 0:
            return zeros(v.rank(tgt), v.rank(src))
        return mat_mul(mat_mul(auts[tgt][1], m), auts[src][0])

    e = {w: conj(v.e_maps[w], w, w + 2) if w + 2 <= v.g else v.e_maps[w] for w in v.weights()}
    f = {w: conj(v.f_maps[w], w, w - 2) if w - 2 >= -v.g else v.f_maps[w] for w in v.weights()}
    return Sl2Module(v.g, v.ring, {w: list(o) for w, o in v.orders.items()}, e, f)


def random_module(cfg: RandomModuleConfig) -> tuple[Sl2Module, dict[int, ModuleType]]:
    mult = random_multiplicities(cfg)
    ring = default_ring(cfg.g)
    base = direct_sum([(n, t.orders()) for n, t in mult.items()], cfg.g, ring)
    rng = random.Random(cfg.seed * 7919 + 1)
    return scramble(base, rng, cfg.scramble_steps), mult


def round_trip(cfg: RandomModuleConfig) -> IdentityReport:
    report = IdentityReport("sl2-round-trip", {"g": cfg.g, "seed": cfg.seed})
    with timed(report):
        v, expected = random_module(cfg)
        got = decompose(v).multiplicities()
        for n in range(cfg.g + 1):
            if got[n] != expected[n]:
                report.failures.append(f"M_{n}: expected {expected[n]}, got {got[n]}")
        report.details["multiplicities"] = {str(n): t.to_json() for n, t in expected.items()}
    return report


# ---------------------------------------------------------------------------
# Chow ring and torsion demo


def build_chow_sl2(g: int, nu: int = 1) -> tuple[Sl2Module, IsotypicDecomposition]:
    """The tautological model with weight(l^i) = 2i - g, on the basis l^i / i!."""
    model = build_model(g, nu)
    e, f, _ = sl2_operators(model)
    orders = {2 * i - g: [0] for i in range(g + 1)}
    e_maps = {2 * i - g: [[e[i + 1][i]]] if i < g else [] for i in range(g + 1)}
    f_maps = {2 * i - g: [[f[i - 1][i]]] if i > 0 else [] for i in range(g + 1)}
    v = Sl2Module(g, model.ring, orders, e_maps, f_maps)
    if v.relation_defects():
        raise InvariantFailure("[e,f] != h on the tautological model")
    dec = decompose(v)
    if [c.n for c in dec.nonzero()] != [g] or dec.multiplicities()[g] != ModuleType(1):
        raise InvariantFailure("tautological module is not a single Sym^g string")
    return v, dec


def torsion_injectivity_demo(g: int, p: int, k: int) -> IdentityReport:
    """e^{i-1} on the lowest piece of Sym^{g-1}(St) (x) (Z/p^k)^{2g}, i = 1..g."""
    if not is_prime(p) or p <= 2 * g + 1 or k < 1:
        raise DomainError("need a prime p > 2g+1 and k >= 1")
    ring = InvertedPrimeSet.inverting(factorial(2 * g + 1))
    if p in ring.primes:
        raise DomainError(f"{p} is inverted")
    report = IdentityReport("torsion-injectivity", {"g": g, "p": p, "k": k})
    with timed(report):
        w = tensor_sym(g - 1, [p**k] * (2 * g), g, ring)
        low = -(g - 1)
        n = w.rank(low)
        injective = {}
        for i in range(1, g + 1):
            # matrix of e^{i-1}: V_low -> V_{low + 2(i-1)}
            cols = [w.e_power(low, i - 1, [Fraction(int(r == c)) for r in range(n)]) for c in range(n)]
            rows = w.rank(low + 2 * (i - 1))
            m = [[int(cols[c][r]) for c in range(n)] for r in range(rows)]
            ok = is_injective_mod(m, n, p, k)
            lam_ok = hom_kernel(from_columns(cols, rows), w.orders[low], w.orders[low + 2 * (i - 1)], ring).type.is_zero()
            injective[str(i)] = ok and lam_ok
            if not (ok and lam_ok):
                report.failures.append(f"e^{i - 1} is not injective")
        report.details["injective"] = injective
        report.details["rank"] = n
    return report

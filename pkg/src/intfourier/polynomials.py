"""Sparse multivariate polynomials with exact rational coefficients.

Variables are plain strings. Chern symbols carry their weight in the name:
``c3`` (weight 3), ``c'2`` (weight 2, second bundle), ``c1[E1]`` (bundle
tag in brackets). ``r`` is the rank symbol (weight 0) and ``delta`` has
weight 1. Any other name gets weight 1.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Mapping

Monomial = tuple[tuple[str, int], ...]

_CHERN = re.compile(r"^(c'?)(\d+)(?:\[(.*)\])?$")


@lru_cache(maxsize=None)
def weight(var: str) -> int:
    m = _CHERN.match(var)
    if m:
        return int(m.group(2))
    if var == "r":
        return 0
    return 1


@lru_cache(maxsize=None)
def _var_key(var: str):
    m = _CHERN.match(var)
    if m:
        return (1, m.group(3) or "", m.group(1), int(m.group(2)))
    return (0 if var == "r" else 2, var, "", 0)


def chern(i: int, tag: str = "", primed: bool = False) -> str:
    """Name of the i-th Chern variable, optionally for a tagged bundle."""
    name = ("c'" if primed else "c") + str(i)
    return f"{name}[{tag}]" if tag else name


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda kv: _var_key(kv[0])))


def mono_weight(mono: Monomial) -> int:
    return sum(weight(v) * e for v, e in mono)


class GradedPolynomial:
    """Polynomial over Q in weighted variables, immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                mono = tuple(sorted(((v, e) for v, e in mono if e), key=lambda kv: _var_key(kv[0])))
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    # construction ----------------------------------------------------------
    @classmethod
    def const(cls, c) -> "GradedPolynomial":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "GradedPolynomial":
        return cls({((name, power),): Fraction(1)})

    @classmethod
    def zero(cls) -> "GradedPolynomial":
        return cls()

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return GradedPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedPolynomial):
            c = Fraction(other)
            if not c:
                return GradedPolynomial()
            return GradedPolynomial._raw({m: c * x for m, x in self.terms.items()})
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "GradedPolynomial", max_weight: int | None = None):
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            w1 = mono_weight(m1) if max_weight is not None else 0
            for m2, c2 in other.terms.items():
                if max_weight is not None and w1 + mono_weight(m2) > max_weight:
                    continue
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return GradedPolynomial._raw(out)

    def __pow__(self, n: int):
        out = GradedPolynomial.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    # structure ---------------------------------------------------------------
    def __eq__(self, other):
        try:
            other = _lift(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def component(self, w: int) -> "GradedPolynomial":
        """Homogeneous part of weight w."""
        return GradedPolynomial._raw({m: c for m, c in self.terms.items() if mono_weight(m) == w})

    def truncate(self, max_weight: int) -> "GradedPolynomial":
        return GradedPolynomial._raw({m: c for m, c in self.terms.items() if mono_weight(m) <= max_weight})

    def coefficient(self, mono: Iterable[tuple[str, int]] = ()) -> Fraction:
        key = tuple(sorted(((v, e) for v, e in mono if e), key=lambda kv: _var_key(kv[0])))
        return self.terms.get(key, Fraction(0))

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def lcd(self) -> int:
        """Lowest common denominator of the coefficients."""
        return lcm(1, *(c.denominator for c in self.terms.values()))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def subs(self, mapping: Mapping[str, "GradedPolynomial | int | Fraction"], max_weight: int | None = None):
        """Substitute polynomials for variables."""
        mapping = {k: _lift(v) for k, v in mapping.items()}
        cache: dict[tuple[str, int], GradedPolynomial] = {}

        def power(v, e):
            key = (v, e)
            if key not in cache:
                cache[key] = mapping[v] ** e if v in mapping else GradedPolynomial.var(v, e)
            return cache[key]

        out = GradedPolynomial()
        for mono, c in self.terms.items():
            term = GradedPolynomial.const(c)
            for v, e in mono:
                term = term.mul(power(v, e), max_weight)
            out = out + term
        return out

    def weight_sign(self) -> "GradedPolynomial":
        """Multiply every monomial of weight w by (-1)**w (c_i -> (-1)^i c_i)."""
        return GradedPolynomial._raw(
            {m: (-c if mono_weight(m) % 2 else c) for m, c in self.terms.items()}
        )

    # ordering / output ---------------------------------------------------------
    def sorted_terms(self):
        """Terms in graded-lex order: higher weight first, then lex on variables."""

        def key(item):
            mono, _ = item
            return (-mono_weight(mono), [(_var_key(v), -e) for v, e in mono])

        return sorted(self.terms.items(), key=key)

    def to_json(self) -> list[dict]:
        return [
            {
                "exponents": {v: e for v, e in mono},
                "numerator": c.numerator,
                "denominator": c.denominator,
            }
            for mono, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "GradedPolynomial":
        return cls(
            {
                tuple(data_item["exponents"].items()): Fraction(data_item["numerator"], data_item["denominator"])
                for data_item in data
            }
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            mon = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"GradedPolynomial({self})"


def _lift(x) -> GradedPolynomial:
    if isinstance(x, GradedPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return GradedPolynomial.const(x)
    raise TypeError(f"cannot convert {type(x).__name__} to GradedPolynomial")


def exp_truncated(x: GradedPolynomial, max_weight: int) -> GradedPolynomial:
    """exp(x) up to weight max_weight; x must have no constant term."""
    if x.constant():
        raise ValueError("exp needs a series without constant term")
    out = GradedPolynomial.const(1)
    power = GradedPolynomial.const(1)
    for j in range(1, max_weight + 1):
        power = power.mul(x, max_weight) * Fraction(1, j)
        if power.is_zero():
            break
        out = out + power
    return out

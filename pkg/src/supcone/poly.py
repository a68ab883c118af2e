"""Rational polynomials in the ramp index k, and their eventual behaviour."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Iterable

from .extreal import NEG_INF, POS_INF, ExtReal

__all__ = ["Poly", "last_exception"]


class Poly:
    """q(k) = c0 + c1 k + c2 k^2 + ...; coefficients are kept low-to-high, trailing zeros stripped."""

    __slots__ = ("coeffs", "_scaled")

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._scaled = None

    def scaled(self) -> tuple[int, tuple]:
        """(L, integer coefficients of L*q) with L the common denominator."""
        if self._scaled is None:
            den = lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
            self._scaled = (den, tuple(c.numerator * (den // c.denominator) for c in self.coeffs))
        return self._scaled

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_const(self) -> bool:
        return self.degree <= 0

    def __call__(self, k) -> Fraction:
        if type(k) is int:
            den, ints = self.scaled()
            return Fraction(_horner(ints, k), den)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    def sign_at(self, k: int) -> int:
        v = _horner(self.scaled()[1], k)
        return (v > 0) - (v < 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def shift(self, s: int) -> "Poly":
        """The polynomial k -> q(k + s)."""
        if s == 0 or self.degree <= 0:
            return self
        return _shift(self, s)

    def _shift(self, s: int) -> "Poly":
        out = [Fraction(0)] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            # (k + s)^i = sum_j C(i, j) s^(i-j) k^j
            for j in range(i + 1):
                out[j] += c * (comb(i, j) * s ** (i - j))
        return Poly(out)

    def eventual_sign(self) -> int:
        return (self.lead > 0) - (self.lead < 0)

    def limit(self) -> ExtReal:
        """lim q(k) as k -> infinity."""
        if self.degree <= 0:
            return ExtReal(self.lead)
        return POS_INF if self.lead > 0 else NEG_INF

    def root_bound(self) -> int:
        """An integer B with sign(q(k)) = eventual_sign for every k > B (Cauchy bound)."""
        if self.degree <= 0:
            return -1
        m = max(abs(c / self.lead) for c in self.coeffs[:-1])
        return int(1 + m) + 1

    def __str__(self) -> str:
        return "poly[" + ", ".join(str(c) for c in self.coeffs or (0,)) + "]"

    def __repr__(self) -> str:
        return f"Poly({list(map(str, self.coeffs))})"


def _horner(ints: tuple, k: int) -> int:
    acc = 0
    for c in reversed(ints):
        acc = acc * k + c
    return acc


@lru_cache(maxsize=65536)
def _shift(q: Poly, s: int) -> Poly:
    return q._shift(s)


def last_exception(q: Poly, start: int, accept) -> int:
    """Largest k >= start with ``accept(sign(q(k)))`` false, or ``start - 1`` if none.

    ``accept`` must hold for the eventual sign of ``q``; otherwise the
    exceptions never stop and ValueError is raised.
    """
    if not accept(q.eventual_sign()):
        raise ValueError(f"{q} is eventually rejected")
    if q.degree <= 0:
        return start - 1
    k = q.root_bound()
    while k >= start:
        if not accept(q.sign_at(k)):
            return k
        k -= 1
    return start - 1

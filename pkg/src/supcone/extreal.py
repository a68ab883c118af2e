"""Exact extended rationals: the scalar range [-inf, +inf] with 0*inf = 0."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

__all__ = [
    "ExtReal",
    "UndefinedSum",
    "POS_INF",
    "NEG_INF",
    "ZERO",
    "ONE",
    "xr",
    "xr_add",
    "xr_mul",
    "xr_cmp",
    "xr_min",
    "xr_max",
]

Scalar = Union["ExtReal", Fraction, int, str]

_NUMBER = re.compile(r"[+-]?\d+(/\d+)?\Z")


class UndefinedSum(ArithmeticError):
    """Raised for (+inf) + (-inf)."""


class ExtReal:
    """An exact rational, or one of the two infinities.

    Instances are immutable and hashable. Finite values are held as
    :class:`fractions.Fraction`, which keeps them in lowest terms.
    """

    __slots__ = ("_q", "_inf")

    def __init__(self, value: Scalar = 0):
        if isinstance(value, ExtReal):
            self._q, self._inf = value._q, value._inf
            return
        if isinstance(value, str):
            value = _parse_text(value)
            self._q, self._inf = value._q, value._inf
            return
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot build an exact extended real from {value!r}")
        self._q = Fraction(value)
        self._inf = 0

    @classmethod
    def _infinite(cls, sign: int) -> "ExtReal":
        obj = object.__new__(cls)
        obj._q = None
        obj._inf = sign
        return obj

    # -- inspection -----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self._inf == 0

    @property
    def is_pos_inf(self) -> bool:
        return self._inf > 0

    @property
    def is_neg_inf(self) -> bool:
        return self._inf < 0

    @property
    def fraction(self) -> Fraction:
        if self._inf:
            raise ValueError(f"{self} has no finite value")
        return self._q

    @property
    def sign(self) -> int:
        if self._inf:
            return self._inf
        return (self._q > 0) - (self._q < 0)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: Scalar) -> "ExtReal":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._inf and other._inf and self._inf != other._inf:
            raise UndefinedSum(f"{self} + {other}")
        if self._inf:
            return self
        if other._inf:
            return other
        return ExtReal(self._q + other._q)

    __radd__ = __add__

    def __neg__(self) -> "ExtReal":
        if self._inf:
            return ExtReal._infinite(-self._inf)
        return ExtReal(-self._q)

    def __sub__(self, other: Scalar) -> "ExtReal":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "ExtReal":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "ExtReal":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._inf and not other._inf:
            return ExtReal(self._q * other._q)
        s = self.sign * other.sign
        if s == 0:
            return ZERO
        return ExtReal._infinite(s)

    __rmul__ = __mul__

    def __abs__(self) -> "ExtReal":
        return -self if self.sign < 0 else self

    # -- order ----------------------------------------------------------

    def _key(self):
        # infinities compare before the fraction is looked at
        return (self._inf, self._q if self._q is not None else 0)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._inf == other._inf and self._q == other._q

    def __hash__(self) -> int:
        return hash((self._inf, self._q))

    def __lt__(self, other: Scalar) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() < other._key()

    def __le__(self, other: Scalar) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() <= other._key()

    def __gt__(self, other: Scalar) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() > other._key()

    def __ge__(self, other: Scalar) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() >= other._key()

    # -- text -----------------------------------------------------------

    def __str__(self) -> str:
        if self._inf > 0:
            return "+inf"
        if self._inf < 0:
            return "-inf"
        return str(self._q)

    def __repr__(self) -> str:
        return f"ExtReal('{self}')"

    @classmethod
    def parse(cls, text: str) -> "ExtReal":
        return _parse_text(text)


def _coerce(value) -> ExtReal:
    if isinstance(value, ExtReal):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return ExtReal(value)
    return NotImplemented


def _parse_text(text: str) -> ExtReal:
    t = text.strip()
    if t == "+inf":
        return POS_INF
    if t == "-inf":
        return NEG_INF
    if not _NUMBER.match(t):
        raise ValueError(f"not an extended rational: {text!r}")
    num, _, den = t.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return ExtReal(Fraction(int(num), int(den) if den else 1))


POS_INF = ExtReal._infinite(1)
NEG_INF = ExtReal._infinite(-1)
ZERO = ExtReal(0)
ONE = ExtReal(1)


def xr(value: Scalar) -> ExtReal:
    """Coerce ``value`` to :class:`ExtReal`."""
    return value if isinstance(value, ExtReal) else ExtReal(value)


def xr_add(a: Scalar, b: Scalar) -> ExtReal:
    return xr(a) + xr(b)


def xr_mul(a: Scalar, b: Scalar) -> ExtReal:
    return xr(a) * xr(b)


def xr_cmp(a: Scalar, b: Scalar) -> int:
    """Three-way comparison: -1, 0 or 1."""
    a, b = xr(a), xr(b)
    return (a > b) - (a < b)


def xr_min(a: Scalar, b: Scalar) -> ExtReal:
    a, b = xr(a), xr(b)
    return a if a <= b else b


def xr_max(a: Scalar, b: Scalar) -> ExtReal:
    a, b = xr(a), xr(b)
    return a if a >= b else b

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from supcone.extreal import NEG_INF, POS_INF, ExtReal
from supcone.poly import Poly, last_exception

coeff = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 4))
polys = st.lists(coeff, max_size=4).map(Poly)


def test_basic():
    q = Poly([2, Fraction(-1, 3), 1])
    assert q(3) == 2 - 1 + 9
    assert str(q) == "poly[2, -1/3, 1]"
    assert Poly([1, 0, 0]).degree == 0
    assert Poly().degree == -1 and str(Poly()) == "poly[0]"


def test_limits():
    assert Poly([1]).limit() == ExtReal(1)
    assert Poly([2, -3]).limit() == NEG_INF
    assert Poly([0, 0, 1]).limit() == POS_INF


@given(polys, polys, st.integers(-5, 30))
def test_ring_ops_pointwise(p, q, k):
    assert (p + q)(k) == p(k) + q(k)
    assert (p * q)(k) == p(k) * q(k)
    assert (p - q)(k) == p(k) - q(k)
    assert p.shift(3)(k) == p(k + 3)
    assert p(Fraction(k)) == p(k)


@given(polys)
def test_root_bound(q):
    if q.degree <= 0:
        return
    s = q.eventual_sign()
    for k in range(q.root_bound() + 1, q.root_bound() + 30):
        v = q(k)
        assert (v > 0) - (v < 0) == s


@given(polys, st.integers(0, 5))
def test_last_exception_against_scan(q, start):
    accept = lambda t: t >= 0
    if not accept(q.eventual_sign()):
        with pytest.raises(ValueError):
            last_exception(q, start, accept)
        return
    got = last_exception(q, start, accept)
    horizon = max(q.root_bound(), start) + 50
    bad = [k for k in range(start, horizon) if q(k) < 0]
    assert got == (bad[-1] if bad else start - 1)

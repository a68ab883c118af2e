import pytest

from supcone.extreal import POS_INF
from supcone.func import const, fn_add, fn_le, ramp, split
from supcone.generate import GenConfig, gen_flat
from supcone.iso import (
    FlatFn, NotRepresentable, flat_add, flat_le, flat_meet, j_formula_check, j_inverse,
    j_transport,
)
from supcone.rng import SplitMix64
from supcone.supcomp import ModelX


def test_transport_examples():
    assert j_transport(FlatFn(1, (2, 5))) == split(const(2), const(5))
    assert j_inverse(const(3), 2) == FlatFn(2, (3, 3, 3, 3))
    with pytest.raises(NotRepresentable):
        j_inverse(ramp(1, (), (0, 1)), 4)
    with pytest.raises(NotRepresentable):
        j_inverse(split(split(const(1), const(2)), const(0)), 1)


def test_transport_canonicalizes():
    assert j_transport(FlatFn(2, (1, 1, 1, 1))) == const(1)


def test_formula_examples():
    for model in ModelX:
        for n in (4, 5, 9):
            assert j_formula_check(FlatFn(0, (4,)), model, height=n)
        assert j_formula_check(FlatFn(1, (POS_INF, 1)), model)
        assert j_formula_check(FlatFn(2, (1, -2, 0, 3)), model)


def test_formula_failure_reports_a_cell(monkeypatch):
    import supcone.iso as iso

    real = iso.fn_sup
    # drop every member of the family but the first
    monkeypatch.setattr(iso, "fn_sup", lambda fam: real(fam[:1]))
    res = j_formula_check(FlatFn(1, (POS_INF, 7)), ModelX.FULL, height=3)
    assert not res.ok and res.separating_cell in ("0", "1")


def test_flat_ops_match_tree_ops():
    rng = SplitMix64(5)
    cfg = GenConfig()
    for _ in range(100):
        u, v = gen_flat(rng, cfg), gen_flat(rng, cfg)
        assert j_transport(flat_add(u, v)) == fn_add(j_transport(u), j_transport(v))
        assert flat_le(u, v) == fn_le(j_transport(u), j_transport(v))
        assert flat_le(flat_meet(u, v), u)
        d = max(u.depth, 3)
        assert j_inverse(j_transport(u), d) == u.refine(d)

from fractions import Fraction

import pytest

from oracle import naive_eval, resolved_points
from supcone.extreal import NEG_INF, POS_INF, ExtReal, xr_mul
from supcone.func import (
    CellNotResolved, Const, NotNegatable, Ramp, Split, SumUndefined, TreeFn, _unfold, align,
    canonicalize, classify, const, defined_set, eval_at, extend_from_dense, fn_add, fn_inf,
    fn_join, fn_le, fn_meet, fn_mul, fn_neg, fn_scalar, fn_sub, fn_sup, find_violation, leaves,
    ramp, split,
)
from supcone.generate import GenConfig, gen_fn
from supcone.grammar import parse_fn, parse_node
from supcone.poly import Poly
from supcone.rng import SplitMix64
from supcone.stone import BranchPoint, Cell, ClopenSet

K_RAMP = ramp(1, (), (0, 1))  # r(k) = k along 111...


def sample_fns(seed, n, **kw):
    rng = SplitMix64(seed)
    cfg = GenConfig(seed=seed, max_depth=3)
    return [gen_fn(rng, cfg, **kw) for _ in range(n)]


# -- evaluation ---------------------------------------------------------------------


def test_eval_examples():
    assert eval_at(const(5), Cell("0110")) == ExtReal(5)
    u = split(const(0), K_RAMP)
    assert eval_at(u, BranchPoint("1", 1)) == POS_INF
    assert eval_at(u, "1110") == ExtReal(2)
    on_one = parse_fn("split(const 0, ramp(1; ; poly[0, 1]))")
    # r(k) on [1 1^k 0]: the cell 1110 is k = 2 inside [1]
    assert eval_at(on_one, Cell("1110")) == naive_eval(on_one, Cell("1110")) == ExtReal(2)
    assert eval_at(K_RAMP, Cell("1110")) == naive_eval(K_RAMP, Cell("1110")) == ExtReal(3)


def test_eval_unresolved():
    with pytest.raises(CellNotResolved):
        eval_at(K_RAMP, Cell("111"))
    with pytest.raises(CellNotResolved):
        eval_at(split(const(1), const(2)), Cell(""))


# -- canonical form -----------------------------------------------------------------------


def test_sibling_consts_merge():
    assert TreeFn(Split(Const(ExtReal(1)), Const(ExtReal(1)))) == const(1)


def test_constant_tail_ramp_becomes_consts():
    u = TreeFn(Ramp(1, (ExtReal(4),), Poly([7])))
    assert str(u) == "split(const 4, const 7)"
    assert all(isinstance(n, Const) for _, n in leaves(u))


def test_const_absorbed_into_ramp():
    # const 0 on [0] next to r(k) = k + 1 on [1] is the ramp r(k) = k on K
    raw = Split(Const(ExtReal(0)), Ramp(1, (), Poly([1, 1])))
    assert TreeFn(raw) == K_RAMP


def test_stored_limit_is_checked():
    with pytest.raises(ValueError):
        Ramp(1, (), Poly([0, 1]), NEG_INF)


def _scramble(node, rng, depth=0):
    """A raw tree for the same function: random unfoldings, no canonicalization."""
    if depth < 4 and not isinstance(node, Split) and rng.below(2):
        lo, hi = _unfold(node)
        return Split(_scramble(lo, rng, depth + 1), _scramble(hi, rng, depth + 1))
    if isinstance(node, Split):
        return Split(_scramble(node.lo, rng, depth + 1), _scramble(node.hi, rng, depth + 1))
    if isinstance(node, Ramp) and rng.below(2):
        # pad the prefix with values the tail already produces
        extra = tuple(ExtReal(node.poly(k)) for k in range(node.start, node.start + 2))
        return Ramp(node.direction, node.prefix + extra, node.poly)
    return node


def test_canonical_form_is_unique():
    rng = SplitMix64(7)
    for u in sample_fns(11, 40):
        assert canonicalize(u.root) == u.root
        for _ in range(3):
            raw = _scramble(u.root, rng)
            assert TreeFn(raw) == u
            pts = resolved_points([u], depth=7, branch_prefix=5)
            for p in pts:
                assert naive_eval(raw, p) == naive_eval(u, p)


def test_align_examples():
    a, b = align(const(1), const(2))
    assert isinstance(a, Const) and isinstance(b, Const)
    a, b = align(split(const(1), const(2)), const(0))
    assert isinstance(a, Split) and isinstance(b, Split)
    up, down = ramp(1, (), (0, 1)), ramp(0, (), (5, 2))
    a, b = align(up, down)
    assert isinstance(a, Split) and isinstance(b, Split)
    assert b.lo == Ramp(0, (), Poly([7, 2]), POS_INF)  # r'(k) = r(k + 1)
    assert a.lo == Const(ExtReal(0)) and b.hi == Const(ExtReal(5))
    for p in resolved_points([up, down], depth=8):
        assert naive_eval(TreeFn(a), p) == naive_eval(up, p)
        assert naive_eval(TreeFn(b), p) == naive_eval(down, p)


# -- arithmetic ---------------------------------------------------------------------------


def test_add_examples():
    u = split(const(5), K_RAMP)
    s = fn_add(u, const(-3))
    assert s == split(const(2), ramp(1, (), (-3, 1)))
    for p in resolved_points([u], depth=8):
        assert naive_eval(s, p) == naive_eval(u, p) + ExtReal(-3)
    assert fn_add(u, const(0)) == u


def test_add_conflicting_limits_uses_the_sum_sequence():
    s = fn_add(ramp(1, (), (0, -1)), ramp(1, (), (0, 2)))
    assert s == K_RAMP
    assert eval_at(s, BranchPoint("", 1)) == POS_INF
    assert fn_add(ramp(1, (), (0, -1)), ramp(1, (), (3, 1))) == const(3)


def test_add_density_obstruction():
    with pytest.raises(SumUndefined):
        fn_add(split(const(NEG_INF), const(0)), const(POS_INF))
    with pytest.raises(SumUndefined):
        fn_add(split(const(NEG_INF), const(0)), const(1))


def test_scalar_and_neg_examples():
    assert fn_scalar(0, split(const(POS_INF), const(1))) == const(0)
    assert fn_scalar(2, K_RAMP) == ramp(1, (), (0, 2))
    with pytest.raises(NotNegatable):
        fn_neg(split(const(POS_INF), K_RAMP))
    assert fn_neg(K_RAMP) == ramp(1, (), (0, -1))
    assert fn_sub(K_RAMP, K_RAMP) == const(0)


def test_lattice_examples():
    u = split(const(NEG_INF), const(3))
    assert fn_meet(u, u) == u
    assert fn_join(u, const(0)) == split(const(0), const(3))
    m = fn_meet(K_RAMP, const(10))
    for k in range(14):
        cell = Cell("1" * k + "0")
        assert eval_at(m, cell) == ExtReal(min(k, 10))
    assert eval_at(m, BranchPoint("", 1)) == ExtReal(10)
    for p in resolved_points([K_RAMP], depth=14, branch_prefix=3):
        assert naive_eval(m, p) == min(naive_eval(K_RAMP, p), ExtReal(10))
    assert fn_sup([const(1), const(2), K_RAMP]) == fn_join(const(2), K_RAMP)
    assert fn_inf([const(POS_INF), K_RAMP]) == K_RAMP


def test_order():
    assert fn_le(const(0), K_RAMP)
    p = find_violation(K_RAMP, const(5))
    assert naive_eval(K_RAMP, p) > ExtReal(5)
    assert find_violation(fn_meet(K_RAMP, const(5)), const(5)) is None
    assert find_violation(ramp(1, (0,), (0, 1)), fn_join(K_RAMP, const(0))) is None
    assert K_RAMP <= const(POS_INF) and not (const(POS_INF) <= K_RAMP)


def test_classify_examples():
    c = classify(split(const(POS_INF), const(1)))
    assert not c.in_Cinfty and c.pos_inf_interior == ClopenSet(["0"])
    c = classify(K_RAMP)
    assert c.in_Cinfty and not c.in_CK
    assert classify(const(7)).in_CK


def test_extension_examples():
    assert extend_from_dense(Ramp(1, (), Poly([1]))) == const(1)
    u = extend_from_dense(Ramp(1, (), Poly([2, -3])))
    assert eval_at(u, BranchPoint("", 1)) == NEG_INF
    partial = Ramp(1, (ExtReal(0), ExtReal(9), ExtReal(2), ExtReal(-4)), Poly([0, 1]))
    assert eval_at(extend_from_dense(partial), BranchPoint("", 1)) == POS_INF
    assert BranchPoint("", 1) not in defined_set(partial)
    assert Cell("10") in defined_set(partial)


# -- pointwise oracle sweep ----------------------------------------------------------


def _seq_limit(f, g, p, combine):
    """Value of the combined function at a branch point, from far-out subcells."""
    d = "01"[p.tail]
    vals = []
    for j in (60, 61, 62):
        c = Cell(p.prefix + d * j + "01"[1 - p.tail])
        vals.append(combine(naive_eval(f, c), naive_eval(g, c)))
    if vals[0] == vals[1] == vals[2]:
        return vals[2]
    return POS_INF if vals[2] > vals[1] > vals[0] else NEG_INF


OPS = {
    "add": (fn_add, lambda x, y: x + y),
    "meet": (fn_meet, min),
    "join": (fn_join, max),
    "mul": (fn_mul, xr_mul),
}


@pytest.mark.parametrize("name", sorted(OPS))
def test_pointwise_oracle_depth_10(name):
    op, scalar = OPS[name]
    fns = sample_fns(101 + len(name), 8, neg_inf=name != "add")
    for f, g in zip(fns[::2], fns[1::2]):
        out = op(f, g)
        for p in resolved_points([f, g], depth=10):
            x, y = naive_eval(f, p), naive_eval(g, p)
            if isinstance(p, BranchPoint) and name in ("add", "mul") and any(
                    isinstance(n, Ramp) for n in (_leaf_at(f, p), _leaf_at(g, p))):
                want = _seq_limit(f, g, p, scalar)
            else:
                want = scalar(x, y)
            assert naive_eval(out, p) == want, (name, str(f), str(g), str(p))


def _leaf_at(u, p):
    node, i = u.root, 0
    while isinstance(node, Split):
        node = node.hi if p.bit(i) == "1" else node.lo
        i += 1
    return node


def test_scalar_pointwise_depth_10():
    for f in sample_fns(5, 4):
        for lam in (Fraction(0), Fraction(3, 2)):
            out = fn_scalar(lam, f)
            for p in resolved_points([f], depth=10):
                assert naive_eval(out, p) == xr_mul(ExtReal(lam), naive_eval(f, p))


def test_eval_agrees_with_oracle_depth_10():
    for f in sample_fns(9, 6):
        for p in resolved_points([f], depth=10):
            assert eval_at(f, p) == naive_eval(f, p)
        a, _ = align(f, K_RAMP)
        for p in resolved_points([f, K_RAMP], depth=8):
            assert naive_eval(a, p) == naive_eval(f, p)


def test_add_laws_on_random_triples():
    fns = sample_fns(21, 60, neg_inf=False)
    for a, b, c in zip(fns[::3], fns[1::3], fns[2::3]):
        assert fn_add(a, b) == fn_add(b, a)
        assert fn_add(fn_add(a, b), c) == fn_add(a, fn_add(b, c))
        lam, mu = Fraction(2, 3), Fraction(5)
        assert fn_scalar(lam, fn_add(a, b)) == fn_add(fn_scalar(lam, a), fn_scalar(lam, b))
        assert fn_scalar(lam + mu, a) == fn_add(fn_scalar(lam, a), fn_scalar(mu, a))


def test_parsed_raw_tree_matches():
    raw = parse_node("split(const 1, const 1)")
    assert isinstance(raw, Split) and TreeFn(raw) == const(1)

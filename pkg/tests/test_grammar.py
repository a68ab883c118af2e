import pytest

from supcone.extreal import NEG_INF, POS_INF, ExtReal
from supcone.func import eval_at, const
from supcone.generate import GenConfig, gen_flat, gen_fn
from supcone.grammar import ParseError, format_flat, parse_flat, parse_fn, parse_value
from supcone.iso import FlatFn
from supcone.rng import SplitMix64
from supcone.stone import BranchPoint, Cell


def test_parse_examples():
    assert parse_fn("const 3") == const(3)
    u = parse_fn("split(const -inf, ramp(1; ; poly[0,1]))")
    assert eval_at(u, Cell("0")) == NEG_INF
    assert eval_at(u, Cell("1110")) == ExtReal(2)
    assert eval_at(u, BranchPoint("1", 1)) == POS_INF


def test_whitespace_insensitive_and_canonical_print():
    u = parse_fn("  split( const 1 ,\n ramp( 0 ;2/4,+inf; poly[ 1, -1/3 ] ) )")
    assert str(u) == "split(const 1, ramp(0; 1/2, +inf; poly[1, -1/3]))"
    assert str(parse_fn("split(const 2, const 2)")) == "const 2"


@pytest.mark.parametrize("text, pos", [
    ("const 3/0", 6),
    ("const", 5),
    ("split(const 1)", 13),
    ("ramp(2; ; poly[1])", 5),
    ("const 1 const 2", 8),
    ("const #", 6),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_fn(text)
    assert err.value.position == pos


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as err:
        parse_fn("bogus")
    assert set(err.value.expected) == {"const", "split", "ramp"}


def test_flat_forms():
    f = parse_flat("flat d=1 [2, +inf]")
    assert f == FlatFn(1, (ExtReal(2), POS_INF))
    assert format_flat(f) == "flat d=1 [2, +inf]"
    assert isinstance(parse_value("flat d=0 [1]"), FlatFn)
    with pytest.raises(ParseError):
        parse_flat("flat d=2 [1, 2]")


def test_roundtrip_generated():
    rng = SplitMix64(3)
    cfg = GenConfig(max_depth=5)
    for _ in range(300):
        s = str(gen_fn(rng, cfg))
        assert str(parse_fn(s)) == s
        t = format_flat(gen_flat(rng, cfg))
        assert format_flat(parse_flat(t)) == t

"""Seeded random model elements."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .extreal import NEG_INF, POS_INF, ExtReal
from .func import Const, Ramp, Split, TreeFn, const, fn_join
from .poly import Poly
from .rng import SplitMix64
from .supcomp import ModelX, NotInCone, SupElement, member

__all__ = ["GenConfig", "gen_fn", "gen_x", "gen_element", "gen_positive", "gen_ramp_node",
           "gen_unbounded_ramp", "gen_flat"]


@dataclass(frozen=True)
class GenConfig:
    seed: int = 42
    max_depth: int = 4
    ramp_probability: Fraction = Fraction(1, 4)
    value_range: int = 5
    inf_probability: Fraction = Fraction(1, 8)
    model: ModelX = ModelX.FULL

    def with_model(self, model: ModelX) -> "GenConfig":
        return replace(self, model=model)

    def describe(self) -> str:
        return (f"model={self.model.value} seed={self.seed} max_depth={self.max_depth} "
                f"ramp_p={self.ramp_probability} value_range={self.value_range} "
                f"inf_p={self.inf_probability}")


def _rational(rng: SplitMix64, cfg: GenConfig) -> Fraction:
    r = cfg.value_range
    return Fraction(rng.between(-r, r), rng.between(1, 3))


def _value(rng: SplitMix64, cfg: GenConfig, neg_inf: bool) -> ExtReal:
    if rng.chance(cfg.inf_probability):
        if neg_inf and rng.chance(Fraction(1, 3)):
            return NEG_INF
        return POS_INF
    return ExtReal(_rational(rng, cfg))


def gen_poly(rng: SplitMix64, cfg: GenConfig, sign: int | None = None) -> Poly:
    """Degree 1 or 2 with small coefficients, so sign changes happen by k = 8."""
    deg = rng.between(1, 2)
    lead = Fraction(rng.between(1, 3), rng.between(1, 2))
    if sign is None:
        sign = rng.choice((-1, 1))
    coeffs = [Fraction(rng.between(-4, 4), rng.between(1, 2)) for _ in range(deg)]
    return Poly(coeffs + [sign * lead])


def gen_ramp_node(rng: SplitMix64, cfg: GenConfig, *, neg_inf: bool = True,
                  infinite_cells: bool = True, sign: int | None = None) -> Ramp:
    """A raw ramp leaf whose branch value is left unset."""
    n = rng.between(0, 3)
    if infinite_cells:
        prefix = tuple(_value(rng, cfg, neg_inf) for _ in range(n))
    else:
        prefix = tuple(ExtReal(_rational(rng, cfg)) for _ in range(n))
    return Ramp(rng.below(2), prefix, gen_poly(rng, cfg, sign))


def _tree(rng, cfg, depth, leaf):
    if depth < cfg.max_depth and rng.chance(Fraction(1, 2)):
        return Split(_tree(rng, cfg, depth + 1, leaf), _tree(rng, cfg, depth + 1, leaf))
    return leaf()


def gen_fn(rng: SplitMix64, cfg: GenConfig, *, neg_inf: bool = True,
           infinite_cells: bool = True, ramps: bool = True, ramp_sign: int | None = None) -> TreeFn:
    """A random element of C(K, [-inf, inf])."""

    # a ramp is unbounded, so it counts as an infinity
    ramps = ramps and cfg.inf_probability > 0

    def leaf():
        if ramps and rng.chance(cfg.ramp_probability):
            return gen_ramp_node(rng, cfg, neg_inf=neg_inf, infinite_cells=infinite_cells,
                                 sign=ramp_sign)
        if infinite_cells:
            return Const(_value(rng, cfg, neg_inf))
        return Const(ExtReal(_rational(rng, cfg)))

    return TreeFn(_tree(rng, cfg, 0, leaf))


def gen_x(rng: SplitMix64, cfg: GenConfig) -> TreeFn:
    """A random element of the ground lattice X."""
    if cfg.model is ModelX.BOUNDED:
        return gen_fn(rng, cfg, infinite_cells=False, ramps=False)
    return gen_fn(rng, cfg, infinite_cells=False)


def gen_element(rng: SplitMix64, cfg: GenConfig) -> SupElement:
    """A random cone element; draws that are not cone members are redrawn."""
    sign = 1 if cfg.model is ModelX.BOUNDED else None
    while True:
        u = gen_fn(rng, cfg, neg_inf=False, ramp_sign=sign)
        try:
            return SupElement(u, member(u, cfg.model), cfg.model)
        except NotInCone:
            continue


def gen_positive(rng: SplitMix64, cfg: GenConfig) -> SupElement:
    u = fn_join(gen_fn(rng, cfg, neg_inf=False), const(0))
    return SupElement(u, const(0), cfg.model)


def gen_unbounded_ramp(rng: SplitMix64, cfg: GenConfig) -> SupElement:
    """A positive function that is +inf only at branch points."""
    u = fn_join(gen_fn(rng, replace(cfg, ramp_probability=Fraction(1)), neg_inf=False,
                       infinite_cells=False, ramp_sign=1), const(0))
    return SupElement(u, const(0), cfg.model)


def gen_flat(rng: SplitMix64, cfg: GenConfig, depth: int | None = None, finite: bool = False):
    from .iso import FlatFn

    d = rng.between(0, 3) if depth is None else depth
    vals = []
    for _ in range(2 ** d):
        if not finite and rng.chance(cfg.inf_probability * 2):
            vals.append(POS_INF)
        else:
            vals.append(ExtReal(_rational(rng, cfg)))
    return FlatFn(d, tuple(vals))

"""A second encoding of the cone, and the canonical map J between encodings.

``FlatFn`` stores a locally constant function as its values on the 2^d
cells of depth d.  It is its own cone D with pointwise operations; J sends
it to the tree encoding C, and must be the structure preserving bijection
``J(u) = sup_C {x in X : x <= u}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .extreal import ExtReal, xr
from .func import Const, Ramp, TreeFn, _fn, _split, fn_meet, fn_sup, leaves
from .supcomp import ModelX, member

__all__ = [
    "FlatFn",
    "NotRepresentable",
    "j_transport",
    "j_inverse",
    "j_formula_check",
    "flat_add",
    "flat_scalar",
    "flat_le",
    "flat_meet",
]


class NotRepresentable(ValueError):
    pass


@dataclass(frozen=True)
class FlatFn:
    depth: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(xr(v) for v in self.values))
        if len(self.values) != 2 ** self.depth:
            raise ValueError(f"depth {self.depth} needs {2 ** self.depth} values")

    def refine(self, depth: int) -> "FlatFn":
        if depth < self.depth:
            raise ValueError("cannot coarsen a flat function")
        rep = 2 ** (depth - self.depth)
        return FlatFn(depth, tuple(v for v in self.values for _ in range(rep)))

    def __str__(self) -> str:
        from .grammar import format_flat

        return format_flat(self)


def _common(u: FlatFn, v: FlatFn) -> tuple[FlatFn, FlatFn]:
    d = max(u.depth, v.depth)
    return u.refine(d), v.refine(d)


def flat_add(u: FlatFn, v: FlatFn) -> FlatFn:
    u, v = _common(u, v)
    return FlatFn(u.depth, tuple(a + b for a, b in zip(u.values, v.values)))


def flat_scalar(lam, u: FlatFn) -> FlatFn:
    lam = xr(lam)
    return FlatFn(u.depth, tuple(lam * a for a in u.values))


def flat_meet(u: FlatFn, v: FlatFn) -> FlatFn:
    u, v = _common(u, v)
    return FlatFn(u.depth, tuple(min(a, b) for a, b in zip(u.values, v.values)))


def flat_le(u: FlatFn, v: FlatFn) -> bool:
    u, v = _common(u, v)
    return all(a <= b for a, b in zip(u.values, v.values))


def j_transport(u: FlatFn) -> TreeFn:
    def build(lo: int, hi: int):
        if hi - lo == 1:
            return Const(u.values[lo])
        mid = (lo + hi) // 2
        return _split(build(lo, mid), build(mid, hi))

    return _fn(build(0, len(u.values)))


def j_inverse(u: TreeFn, depth: int) -> FlatFn:
    if depth < u.depth:
        raise NotRepresentable(f"tree is deeper ({u.depth}) than {depth}")
    values = [None] * 2 ** depth
    for w, node in leaves(u):
        if isinstance(node, Ramp):
            raise NotRepresentable(f"ramp on cell {w or 'e'} has no flat encoding")
        span = 2 ** (depth - len(w))
        start = int(w, 2) * span if w else 0
        values[start:start + span] = [node.value] * span
    return FlatFn(depth, tuple(values))


@dataclass(frozen=True)
class FormulaCheck:
    ok: bool
    separating_cell: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def j_formula_check(u: FlatFn, model: ModelX = ModelX.FULL, height: int | None = None) -> FormulaCheck:
    """Check ``J(u) = sup_C {x in X : x <= u}`` on a budgeted family of minorants.

    The family is ``meet(J(u), g)`` for grid functions ``g`` in X that agree
    with a fixed witness off one cell and take a candidate value on it.  With
    height budget ``n`` the supremum must equal J(u) capped at n, and u itself
    wherever u is finite.
    """
    Ju = j_transport(u)
    if model.contains(Ju):
        # u is in X: the family may be taken to be {u}
        return FormulaCheck(fn_sup([Ju]) == Ju)
    finite = [v for v in u.values if v.is_finite]
    if height is None:
        height = int(max((abs(v.fraction) for v in finite), default=0)) + 1
    base = member(Ju, model)
    base_flat = j_inverse(base, max(u.depth, base.depth)).refine(max(u.depth, base.depth))
    uu = u.refine(base_flat.depth)
    candidates = sorted({v for v in finite} | {ExtReal(n) for n in range(1, height + 1)})
    family = [base]
    for i in range(len(uu.values)):
        for c in candidates:
            vals = list(base_flat.values)
            vals[i] = max(c, vals[i])
            g = j_transport(FlatFn(base_flat.depth, tuple(vals)))
            family.append(fn_meet(Ju, g))
    sup = fn_sup(family)
    capped = FlatFn(uu.depth, tuple(min(v, ExtReal(height)) if v.is_pos_inf else v for v in uu.values))
    expected = j_transport(capped)
    if sup == expected:
        return FormulaCheck(True)
    flat_sup = j_inverse(sup, uu.depth)
    for i, (a, b) in enumerate(zip(flat_sup.values, capped.values)):
        if a != b:
            return FormulaCheck(False, format(i, f"0{uu.depth}b") if uu.depth else "e")
    return FormulaCheck(False, None)

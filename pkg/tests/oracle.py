"""A naive evaluator written independently of supcone.func.

It walks the raw tree bit by bit and reads ramp values straight off the
prefix and polynomial coefficients, so it shares no code with eval_at,
align or the canonicalizer.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from supcone.extreal import NEG_INF, POS_INF, ExtReal
from supcone.func import Const, Ramp
from supcone.stone import BranchPoint, Cell


class Unresolved(Exception):
    pass


def poly_value(coeffs, k: int) -> Fraction:
    return sum((Fraction(c) * k ** i for i, c in enumerate(coeffs)), Fraction(0))


def poly_limit(coeffs) -> ExtReal:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return ExtReal(cs[0] if cs else 0)
    return POS_INF if cs[-1] > 0 else NEG_INF


def ramp_value(node: Ramp, k: int) -> ExtReal:
    if k < len(node.prefix):
        return node.prefix[k]
    return ExtReal(poly_value(node.poly.coeffs, k))


def naive_eval(u, point) -> ExtReal:
    node = u.root if hasattr(u, "root") else u
    if isinstance(point, str):
        point = BranchPoint.parse(point) if "^" in point else Cell.parse(point)
    if isinstance(point, Cell):
        word, tail = point.word, None
    else:
        word, tail = point.prefix, str(point.tail)

    def bit(i):
        if i < len(word):
            return word[i]
        return tail  # None past the end of a cell

    i = 0
    while True:
        if isinstance(node, Const):
            return node.value
        if isinstance(node, Ramp):
            d = str(node.direction)
            k = 0
            while True:
                b = bit(i + k)
                if b is None:
                    raise Unresolved(point)
                if b != d:
                    return ramp_value(node, k)
                if tail is not None and i + k >= len(word):
                    # the address continues with d forever: the branch point
                    return poly_limit(node.poly.coeffs)
                k += 1
        b = bit(i)
        if b is None:
            raise Unresolved(point)
        node = node.hi if b == "1" else node.lo
        i += 1


def all_cells(depth: int):
    for bits in product("01", repeat=depth):
        yield Cell("".join(bits))


def all_branch_points(max_prefix: int):
    for n in range(max_prefix + 1):
        for bits in product("01", repeat=n):
            for b in (0, 1):
                yield BranchPoint("".join(bits), b)


def resolved_points(fns, depth: int = 10, branch_prefix: int | None = None):
    """Every depth-``depth`` cell on which all ``fns`` are constant, and every branch point."""
    pts = []
    for c in all_cells(depth):
        try:
            for f in fns:
                naive_eval(f, c)
        except Unresolved:
            continue
        pts.append(c)
    bp = depth if branch_prefix is None else branch_prefix
    seen = set()
    for p in all_branch_points(bp):
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return pts

"""Exact sup-completion of C^inf(K) over the dyadic Stone space."""

from .extreal import NEG_INF, POS_INF, ExtReal
from .func import TreeFn, const, indicator, ramp, split
from .grammar import format_fn, parse_fn
from .stone import BranchPoint, Cell, ClopenSet

__all__ = [
    "ExtReal", "POS_INF", "NEG_INF", "TreeFn", "const", "ramp", "split", "indicator",
    "parse_fn", "format_fn", "Cell", "ClopenSet", "BranchPoint",
]

"""Finitely presented continuous functions K -> [-inf, +inf].

A function is a binary tree over the cells of K.  Internal nodes split a
cell into its two children; leaves are either constant or a *ramp*.  A ramp
in direction ``b`` on the cell ``[w]`` is constant ``r(k)`` on each subcell
``[w b^k (1-b)]`` and takes the value ``lim r(k)`` at the branch point
``w b b b ...``.  The sequence ``r`` is eventually polynomial: an explicit
prefix followed by a rational polynomial tail.

Trees are kept canonical by the smart constructors below, so two trees are
equal as data iff they denote the same function:

* sibling constants with equal values merge;
* a ramp whose tail is constant (finite or infinite limit of a constant
  sequence) is expanded into a finite tree of constants, so canonical ramps
  always have a polynomial tail of degree >= 1 and an infinite limit;
* a constant sitting on side ``1-b`` next to a ramp of direction ``b`` is
  absorbed into a ramp on the parent cell;
* ramp prefixes are as short as possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence, Union

from .extreal import POS_INF, ZERO, ExtReal, xr
from .poly import Poly, last_exception
from .stone import EMPTY, BranchPoint, Cell, ClopenSet, OpenDense, cell_relation

__all__ = [
    "Const",
    "Ramp",
    "Split",
    "TreeFn",
    "Classification",
    "CellNotResolved",
    "SumUndefined",
    "NotNegatable",
    "const",
    "ramp",
    "split",
    "indicator",
    "canonicalize",
    "eval_at",
    "align",
    "fn_add",
    "fn_scalar",
    "fn_neg",
    "fn_sub",
    "fn_meet",
    "fn_join",
    "fn_sup",
    "fn_inf",
    "fn_mul",
    "fn_le",
    "find_violation",
    "fn_restrict",
    "classify",
    "extend_from_dense",
    "leaves",
    "branch_points",
]


class CellNotResolved(ValueError):
    """The cell straddles several values of the function; evaluate deeper."""


class SumUndefined(ValueError):
    """The two summands are -inf together on a cell, so no dense set carries their sum."""


class NotNegatable(ValueError):
    """The function is infinite on a whole cell, hence not finite almost everywhere."""


# -- nodes --------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: ExtReal

    def __post_init__(self):
        object.__setattr__(self, "value", xr(self.value))


@dataclass(frozen=True)
class Ramp:
    direction: int
    prefix: tuple
    poly: Poly
    # value at the branch point; None only in a partial function awaiting extension
    limit: ExtReal | None = None

    def __post_init__(self):
        if self.direction not in (0, 1):
            raise ValueError("ramp direction must be 0 or 1")
        object.__setattr__(self, "prefix", tuple(xr(v) for v in self.prefix))
        if self.limit is not None:
            object.__setattr__(self, "limit", xr(self.limit))
            if self.limit != self.poly.limit():
                raise ValueError(
                    f"stored limit {self.limit} disagrees with lim r(k) = {self.poly.limit()}"
                )

    @property
    def start(self) -> int:
        return len(self.prefix)

    def value(self, k: int) -> ExtReal:
        if k < len(self.prefix):
            return self.prefix[k]
        return ExtReal(self.poly(k))


@dataclass(frozen=True)
class Split:
    lo: "Node"
    hi: "Node"

    def child(self, bit: int) -> "Node":
        return self.hi if bit else self.lo


Node = Union[Const, Ramp, Split]


# -- sequences: the data of one ramp leaf -------------------------------------
#
# A sequence is (prefix, tail) where tail is a Poly or an infinite ExtReal
# (a constant infinite tail: every subcell from some index on is +-inf).


def _tail_value(tail, k: int) -> ExtReal:
    return tail if isinstance(tail, ExtReal) else ExtReal(tail(k))


def _tail_is_const(tail) -> bool:
    return isinstance(tail, ExtReal) or tail.degree <= 0


def _tail_limit(tail) -> ExtReal:
    return tail if isinstance(tail, ExtReal) else tail.limit()


def _seq(node) -> tuple:
    if isinstance(node, Const):
        v = node.value
        return (), (v if not v.is_finite else Poly.const(v.fraction))
    return node.prefix, node.poly


def _materialize(prefix: tuple, tail, n: int) -> tuple:
    if len(prefix) >= n:
        return prefix
    return prefix + tuple(_tail_value(tail, k) for k in range(len(prefix), n))


def _seq_shift(prefix: tuple, tail, s: int) -> tuple:
    """The sequence k -> r(k + s), s >= 0."""
    prefix = _materialize(prefix, tail, s)
    new_tail = tail if isinstance(tail, ExtReal) else tail.shift(s)
    return prefix[s:], new_tail


# -- smart constructors -------------------------------------------------------


def _leaf(d: int, prefix: Sequence[ExtReal], tail) -> Node:
    """Canonical node for the sequence (prefix, tail) laid out in direction d."""
    prefix = list(prefix)
    while prefix and prefix[-1] == _tail_value(tail, len(prefix) - 1):
        prefix.pop()
    if _tail_is_const(tail):
        node: Node = Const(_tail_value(tail, 0))
        for v in reversed(prefix):
            node = _split_dir(d, Const(v), node)
        return node
    return Ramp(d, tuple(prefix), tail, tail.limit())


def _split_dir(d: int, side: Node, along: Node) -> Node:
    """Split with ``side`` on child 1-d and ``along`` on child d."""
    return _split(along, side) if d == 0 else _split(side, along)


def _split(lo: Node, hi: Node) -> Node:
    if isinstance(lo, Const) and isinstance(hi, Const) and lo.value == hi.value:
        return lo
    if isinstance(lo, Const) and isinstance(hi, Ramp) and hi.direction == 1:
        return _absorb(1, lo.value, hi)
    if isinstance(hi, Const) and isinstance(lo, Ramp) and lo.direction == 0:
        return _absorb(0, hi.value, lo)
    return Split(lo, hi)


def _absorb(d: int, c: ExtReal, r: Ramp) -> Node:
    return _leaf(d, (c,) + r.prefix, r.poly.shift(-1))


def _unfold(node: Node) -> tuple[Node, Node]:
    if isinstance(node, Split):
        return node.lo, node.hi
    if isinstance(node, Const):
        return node, node
    d = node.direction
    side = Const(node.value(0))
    along = _leaf(d, *_seq_shift(node.prefix, node.poly, 1))
    return (along, side) if d == 0 else (side, along)


def canonicalize(node: Node) -> Node:
    """Rebuild ``node`` bottom-up through the smart constructors."""
    if isinstance(node, Const):
        return node
    if isinstance(node, Ramp):
        if node.limit is not None and node.limit != node.poly.limit():
            raise ValueError("ramp limit is inconsistent with its tail")
        return _leaf(node.direction, node.prefix, node.poly)
    return _split(canonicalize(node.lo), canonicalize(node.hi))


# -- the public function type -------------------------------------------------


class TreeFn:
    """An element of C(K, [-inf, +inf]) given by a canonical tree."""

    __slots__ = ("root", "_hash")

    def __init__(self, root: Node, *, canonical: bool = False):
        self.root = root if canonical else canonicalize(root)
        self._hash = None

    def __eq__(self, other) -> bool:
        return isinstance(other, TreeFn) and self.root == other.root

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.root)
        return self._hash

    def __add__(self, other: "TreeFn") -> "TreeFn":
        return fn_add(self, other)

    def __and__(self, other: "TreeFn") -> "TreeFn":
        return fn_meet(self, other)

    def __or__(self, other: "TreeFn") -> "TreeFn":
        return fn_join(self, other)

    def __le__(self, other: "TreeFn") -> bool:
        return fn_le(self, other)

    def __ge__(self, other: "TreeFn") -> bool:
        return fn_le(other, self)

    def __call__(self, point) -> ExtReal:
        return eval_at(self, point)

    def __str__(self) -> str:
        from .grammar import format_fn

        return format_fn(self)

    def __repr__(self) -> str:
        return f"TreeFn('{self}')"

    @property
    def depth(self) -> int:
        return _depth(self.root)


def _depth(node: Node) -> int:
    if isinstance(node, Split):
        return 1 + max(_depth(node.lo), _depth(node.hi))
    return 0


def _fn(root: Node) -> TreeFn:
    return TreeFn(root, canonical=True)


def const(value) -> TreeFn:
    return _fn(Const(xr(value)))


def ramp(direction: int, prefix: Sequence = (), poly: Sequence | Poly = (0, 1)) -> TreeFn:
    """Ramp on the whole space, e.g. ``ramp(1, (), (0, 1))`` is r(k) = k along 111...."""
    q = poly if isinstance(poly, Poly) else Poly(poly)
    return _fn(_leaf(direction, [xr(v) for v in prefix], q))


def split(lo: TreeFn, hi: TreeFn) -> TreeFn:
    return _fn(_split(lo.root, hi.root))


def indicator(U: ClopenSet, inside=1, outside=0) -> TreeFn:
    return _fn(_indicator("", U, Const(xr(inside)), Const(xr(outside))))


def _indicator(w: str, U: ClopenSet, inside: Node, outside: Node) -> Node:
    rel = cell_relation(w, U)
    if rel == "in":
        return inside
    if rel == "out":
        return outside
    return _split(_indicator(w + "0", U, inside, outside), _indicator(w + "1", U, inside, outside))


def leaves(u: TreeFn) -> Iterator[tuple[str, Node]]:
    """Yield ``(cell word, leaf)`` for every leaf of ``u``."""
    stack = [("", u.root)]
    while stack:
        w, node = stack.pop()
        if isinstance(node, Split):
            stack.append((w + "1", node.hi))
            stack.append((w + "0", node.lo))
        else:
            yield w, node


def _subcell(w: str, d: int, k: int) -> str:
    return w + str(d) * k + str(1 - d)


def branch_points(u: TreeFn) -> list[tuple[BranchPoint, ExtReal]]:
    """The ramp branch points of ``u`` with their values."""
    return [
        (BranchPoint(w, node.direction), node.limit)
        for w, node in leaves(u)
        if isinstance(node, Ramp)
    ]


# -- evaluation ---------------------------------------------------------------


def eval_at(u: TreeFn, point: Cell | BranchPoint | str) -> ExtReal:
    """Value of ``u`` on a cell (which must be resolved) or at a branch point."""
    if isinstance(point, str):
        point = BranchPoint.parse(point) if "(" in point else Cell.parse(point)
    if isinstance(point, BranchPoint):
        return _eval_branch(u.root, point)
    w = point.word
    node, i = u.root, 0
    while isinstance(node, Split):
        if i == len(w):
            raise CellNotResolved(f"cell [{point}] straddles a split")
        node = node.child(int(w[i]))
        i += 1
    if isinstance(node, Const):
        return node.value
    d = str(node.direction)
    rest = w[i:]
    k = len(rest) - len(rest.lstrip(d))
    if k == len(rest):
        raise CellNotResolved(f"cell [{point}] contains a ramp branch point")
    return node.value(k)


def _eval_branch(node: Node, p: BranchPoint) -> ExtReal:
    i = 0
    while isinstance(node, Split):
        node = node.child(int(p.bit(i)))
        i += 1
    if isinstance(node, Const):
        return node.value
    d = str(node.direction)
    j = i
    while j < len(p.prefix) and p.prefix[j] == d:
        j += 1
    if j >= len(p.prefix) and p.tail == node.direction:
        if node.limit is None:
            raise ValueError("branch value is unassigned; extend the function first")
        return node.limit
    return node.value(j - i)


# -- alignment and leafwise combination ----------------------------------------


def _needs_unfold(a: Node, b: Node) -> bool:
    if isinstance(a, Split) or isinstance(b, Split):
        return True
    return isinstance(a, Ramp) and isinstance(b, Ramp) and a.direction != b.direction


def _align_nodes(a: Node, b: Node) -> tuple[Node, Node]:
    if not _needs_unfold(a, b):
        return a, b
    a0, a1 = _unfold(a)
    b0, b1 = _unfold(b)
    (x0, y0), (x1, y1) = _align_nodes(a0, b0), _align_nodes(a1, b1)
    return Split(x0, x1), Split(y0, y1)


def align(u: TreeFn, v: TreeFn) -> tuple[Node, Node]:
    """Raw (non-canonical) trees for ``u`` and ``v`` on one common skeleton.

    At every common leaf the pair is (const, const), (const, ramp) or two
    ramps of the same direction.
    """
    return _align_nodes(u.root, v.root)


def _combine(a: Node, b: Node, leaf_op) -> Node:
    if _needs_unfold(a, b):
        a0, a1 = _unfold(a)
        b0, b1 = _unfold(b)
        return _split(_combine(a0, b0, leaf_op), _combine(a1, b1, leaf_op))
    return leaf_op(a, b)


def _leafwise(scalar_op, tail_op):
    """Lift a scalar op plus a matching op on sequence tails to aligned leaves."""

    def op(a: Node, b: Node) -> Node:
        if isinstance(a, Const) and isinstance(b, Const):
            return Const(scalar_op(a.value, b.value))
        d = a.direction if isinstance(a, Ramp) else b.direction
        pa, ta = _seq(a)
        pb, tb = _seq(b)
        n = max(len(pa), len(pb))
        pa, pb = _materialize(pa, ta, n), _materialize(pb, tb, n)
        prefix = [scalar_op(x, y) for x, y in zip(pa, pb)]
        extra, tail = tail_op(ta, tb, n)
        return _leaf(d, prefix + extra, tail)

    return op


def _range_values(op, ta, tb, start: int, stop: int) -> list:
    return [op(_tail_value(ta, k), _tail_value(tb, k)) for k in range(start, stop + 1)]


# addition


def _add_scalar(x: ExtReal, y: ExtReal) -> ExtReal:
    if x.is_neg_inf or y.is_neg_inf:
        raise SumUndefined("a summand is -inf on a whole cell")
    return x + y


def _add_tail(ta, tb, start):
    if isinstance(ta, Poly) and isinstance(tb, Poly):
        return [], ta + tb
    for t in (ta, tb):
        if isinstance(t, ExtReal) and t.is_neg_inf:
            raise SumUndefined("a summand is -inf on a whole cell")
    return [], POS_INF


_add_leaf = _leafwise(_add_scalar, _add_tail)


def fn_add(u1: TreeFn, u2: TreeFn) -> TreeFn:
    """The continuous extension of u1(t) + u2(t) from the dense set where both exceed -inf.

    At a branch point the value is the limit of the summed sequence, which
    is well defined even when the two limits are +inf and -inf.
    """
    return _fn(_combine(u1.root, u2.root, _add_leaf))


# multiplication (a.e. product, 0 * inf = 0)


def _mul_tail(ta, tb, start):
    if isinstance(ta, Poly) and isinstance(tb, Poly):
        return [], ta * tb
    if isinstance(ta, ExtReal) and isinstance(tb, ExtReal):
        return [], ta * tb
    inf, q = (ta, tb) if isinstance(ta, ExtReal) else (tb, ta)
    s = q.eventual_sign()
    if s == 0:
        return [], Poly()
    last = last_exception(q, start, lambda t: t == s)
    extra = [inf * ExtReal(q(k)) for k in range(start, last + 1)]
    return extra, inf * ExtReal(s)


_mul_leaf = _leafwise(lambda x, y: x * y, _mul_tail)


def fn_mul(u: TreeFn, v: TreeFn) -> TreeFn:
    """Pointwise product on an open dense set, with 0 * inf = 0, extended by continuity."""
    return _fn(_combine(u.root, v.root, _mul_leaf))


# lattice operations


def _lattice_tail(pick_min: bool):
    def tail_op(ta, tb, start):
        if isinstance(ta, Poly) and isinstance(tb, Poly):
            diff = ta - tb
            s = diff.eventual_sign()
            if s == 0:
                return [], ta
            # eventually ta > tb when s > 0
            keep = (tb if s > 0 else ta) if pick_min else (ta if s > 0 else tb)
            last = last_exception(diff, start, lambda t: t != -s)
            choose = _min if pick_min else _max
            return _range_values(choose, ta, tb, start, last), keep
        if isinstance(ta, ExtReal) and isinstance(tb, ExtReal):
            return [], (_min if pick_min else _max)(ta, tb)
        inf, q = (ta, tb) if isinstance(ta, ExtReal) else (tb, ta)
        if inf.is_pos_inf:
            return [], (q if pick_min else inf)
        return [], (inf if pick_min else q)

    return tail_op


def _min(x: ExtReal, y: ExtReal) -> ExtReal:
    return x if x <= y else y


def _max(x: ExtReal, y: ExtReal) -> ExtReal:
    return x if x >= y else y


_meet_leaf = _leafwise(_min, _lattice_tail(True))
_join_leaf = _leafwise(_max, _lattice_tail(False))


def fn_meet(u: TreeFn, v: TreeFn) -> TreeFn:
    return _fn(_combine(u.root, v.root, _meet_leaf))


def fn_join(u: TreeFn, v: TreeFn) -> TreeFn:
    return _fn(_combine(u.root, v.root, _join_leaf))


def fn_sup(family: Sequence[TreeFn]) -> TreeFn:
    if not family:
        raise ValueError("supremum of an empty family")
    out = family[0]
    for f in family[1:]:
        out = fn_join(out, f)
    return out


def fn_inf(family: Sequence[TreeFn]) -> TreeFn:
    if not family:
        raise ValueError("infimum of an empty family")
    out = family[0]
    for f in family[1:]:
        out = fn_meet(out, f)
    return out


# scalar multiple and negation


def _map_leaves(node: Node, f: Callable[[Node], Node]) -> Node:
    if isinstance(node, Split):
        return _split(_map_leaves(node.lo, f), _map_leaves(node.hi, f))
    return f(node)


def fn_scalar(lam, u: TreeFn) -> TreeFn:
    """Pointwise ``lam * u`` for finite ``lam >= 0`` (so ``0 * u = 0``)."""
    lam = xr(lam)
    if not lam.is_finite or lam < 0:
        raise ValueError("scalar must be finite and non-negative")
    return _fn(_map_leaves(u.root, lambda n: _scale_leaf(lam, n)))


def _scale_leaf(lam: ExtReal, node: Node) -> Node:
    if isinstance(node, Const):
        return Const(lam * node.value)
    return _leaf(node.direction, [lam * v for v in node.prefix], node.poly * lam.fraction)


def fn_neg(u: TreeFn) -> TreeFn:
    if not classify(u).in_Cinfty:
        raise NotNegatable("function is infinite on a whole cell")
    return _fn(_map_leaves(u.root, _neg_leaf))


def _neg_leaf(node: Node) -> Node:
    if isinstance(node, Const):
        return Const(-node.value)
    return _leaf(node.direction, [-v for v in node.prefix], -node.poly)


def fn_sub(u: TreeFn, v: TreeFn) -> TreeFn:
    """``u + (-v)``; defined when ``v`` is finite almost everywhere."""
    return fn_add(u, fn_neg(v))


# order


def find_violation(u: TreeFn, v: TreeFn) -> Cell | BranchPoint | None:
    """A point where ``u > v``, or None when ``u <= v`` everywhere."""
    return _violation(u.root, v.root, "")


def fn_le(u: TreeFn, v: TreeFn) -> bool:
    return find_violation(u, v) is None


def _violation(a: Node, b: Node, w: str):
    if _needs_unfold(a, b):
        a0, a1 = _unfold(a)
        b0, b1 = _unfold(b)
        return _violation(a0, b0, w + "0") or _violation(a1, b1, w + "1")
    if isinstance(a, Const) and isinstance(b, Const):
        return Cell(w) if a.value > b.value else None
    d = a.direction if isinstance(a, Ramp) else b.direction
    pa, ta = _seq(a)
    pb, tb = _seq(b)
    n = max(len(pa), len(pb))
    pa, pb = _materialize(pa, ta, n), _materialize(pb, tb, n)
    for k, (x, y) in enumerate(zip(pa, pb)):
        if x > y:
            return Cell(_subcell(w, d, k))
    k = _tail_violation(ta, tb, n)
    if k is not None:
        return Cell(_subcell(w, d, k))
    if _tail_limit(ta) > _tail_limit(tb):
        return BranchPoint(w, d)
    return None


def _tail_violation(ta, tb, start: int) -> int | None:
    if isinstance(ta, Poly) and isinstance(tb, Poly):
        diff = ta - tb
        if diff.eventual_sign() > 0:
            return max(start, diff.root_bound() + 1)
        last = last_exception(diff, start, lambda t: t <= 0)
        return last if last >= start else None
    if _tail_value(ta, start) > _tail_value(tb, start):
        # an infinite tail against anything is compared at the first index
        return start
    if isinstance(ta, ExtReal) or isinstance(tb, ExtReal):
        return None
    return None


# restriction


def fn_restrict(u: TreeFn, U: ClopenSet, outside=ZERO) -> TreeFn:
    """``u`` on ``U`` and the constant ``outside`` off ``U``."""
    return _fn(_restrict(u.root, "", U, Const(xr(outside))))


def _restrict(node: Node, w: str, U: ClopenSet, outside: Node) -> Node:
    rel = cell_relation(w, U)
    if rel == "in":
        return node
    if rel == "out":
        return outside
    lo, hi = _unfold(node)
    return _split(_restrict(lo, w + "0", U, outside), _restrict(hi, w + "1", U, outside))


# classification


@dataclass(frozen=True)
class Classification:
    in_CK: bool
    in_Cinfty: bool
    neg_inf_interior_empty: bool
    pos_inf_interior: ClopenSet = field(default=EMPTY)
    neg_inf_interior: ClopenSet = field(default=EMPTY)


def classify(u: TreeFn) -> Classification:
    """Membership in C(K) and C^inf(K), and the interiors of {u = +inf}, {u = -inf}.

    Infinite values at branch points are ignored for C^inf(K): a finite set
    of branch points is nowhere dense.
    """
    pos: list[str] = []
    neg: list[str] = []
    has_ramp = False
    for w, node in leaves(u):
        if isinstance(node, Const):
            cells = [(w, node.value)]
        else:
            has_ramp = True
            cells = [(_subcell(w, node.direction, k), v) for k, v in enumerate(node.prefix)]
        for cw, v in cells:
            if v.is_pos_inf:
                pos.append(cw)
            elif v.is_neg_inf:
                neg.append(cw)
    in_cinf = not pos and not neg
    return Classification(
        in_CK=in_cinf and not has_ramp,
        in_Cinfty=in_cinf,
        neg_inf_interior_empty=not neg,
        pos_inf_interior=ClopenSet(pos),
        neg_inf_interior=ClopenSet(neg),
    )


# extension from a dense set


def extend_from_dense(partial: Node | TreeFn) -> TreeFn:
    """Unique continuous extension of a function given off its ramp branch points.

    ``partial`` may carry ramps whose branch value is unset (None); each is
    filled with the exact limit of its value sequence.  A ramp whose tail is
    eventually constant is folded into finitely many constant cells.
    """
    root = partial.root if isinstance(partial, TreeFn) else partial
    return _fn(canonicalize(root))


def defined_set(partial: Node) -> OpenDense:
    """The open dense set on which a partial function is given."""
    excluded = []
    stack = [("", partial)]
    while stack:
        w, node = stack.pop()
        if isinstance(node, Split):
            stack += [(w + "0", node.lo), (w + "1", node.hi)]
        elif isinstance(node, Ramp) and node.limit is None:
            excluded.append(BranchPoint(w, node.direction))
    return OpenDense(excluded)

"""The sup-completion cone C = {u in C(K, [-inf, inf]) : u >= f for some f in X}.

Two ground lattices are modelled: ``BOUNDED`` (X = C(K)) and ``FULL``
(X = C^inf(K)).  A :class:`SupElement` carries its function together with a
witness ``f`` in X below it, which makes cone membership a checked invariant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from .extreal import NEG_INF, ONE, POS_INF, ZERO, ExtReal
from .func import (
    Const,
    Ramp,
    TreeFn,
    _fn,
    _leaf,
    _map_leaves,
    _seq_shift,
    _split_dir,
    _subcell,
    classify,
    const,
    eval_at,
    find_violation,
    fn_add,
    fn_join,
    fn_le,
    fn_meet,
    fn_mul,
    fn_neg,
    fn_restrict,
    fn_scalar,
    fn_sub,
    fn_sup,
    fn_inf,
    indicator,
    leaves,
)
from .poly import Poly, last_exception
from .stone import BranchPoint, Cell, ClopenSet, clopen_complement

__all__ = [
    "ModelX",
    "SupElement",
    "Decomposition",
    "TruncationCertificate",
    "InfinityReport",
    "NotInCone",
    "NoLowerBound",
    "PreconditionFailed",
    "NotPositive",
    "member",
    "element",
    "cone_add",
    "cone_scalar",
    "cone_meet",
    "cone_join",
    "cone_sup",
    "cone_inf",
    "order_dense_witness",
    "band_project",
    "band_project_element",
    "support_closure",
    "principal_band_project",
    "fin_inf_decompose",
    "riesz_decompose",
    "truncation_check",
    "infinity_test",
    "pos_product",
    "cone_inverse",
]


class NotInCone(ValueError):
    def __init__(self, point: Cell | BranchPoint, reason: str):
        self.point = point
        kind = "branch" if isinstance(point, BranchPoint) else "cell"
        super().__init__(f"{kind} {point} {reason}")


class NoLowerBound(ValueError):
    pass


class PreconditionFailed(ValueError):
    def __init__(self, message: str, point: Cell | BranchPoint | None = None):
        self.point = point
        super().__init__(message if point is None else f"{message} at {point}")


class NotPositive(ValueError):
    def __init__(self, point: Cell | BranchPoint):
        self.point = point
        super().__init__(f"negative value at {point}")


class ModelX(enum.Enum):
    BOUNDED = "bounded"
    FULL = "full"

    def contains(self, f: TreeFn) -> bool:
        c = classify(f)
        return c.in_CK if self is ModelX.BOUNDED else c.in_Cinfty


@dataclass(frozen=True)
class SupElement:
    u: TreeFn
    witness: TreeFn
    model: ModelX = ModelX.FULL

    def __post_init__(self):
        if not self.model.contains(self.witness):
            raise ValueError(f"witness {self.witness} is not in X ({self.model.value})")
        p = find_violation(self.witness, self.u)
        if p is not None:
            raise ValueError(f"witness exceeds the function at {p}")

    def __str__(self) -> str:
        return str(self.u)


def _leaf_min(node) -> ExtReal:
    if isinstance(node, Const):
        return node.value
    vals = list(node.prefix)
    q = node.poly
    if q.eventual_sign() > 0:
        delta = q.shift(1) - q
        # q(k+1) >= q(k) for k past the last exception, so the tail minimum is attained early
        last = last_exception(delta, node.start, lambda t: t >= 0)
        vals += [ExtReal(q(k)) for k in range(node.start, last + 2)]
    else:
        vals.append(NEG_INF)
    return min(vals)


def member(u: TreeFn, model: ModelX = ModelX.FULL) -> TreeFn:
    """A witness ``f`` in X with ``f <= u``; raises NotInCone with a certificate otherwise."""
    cls = classify(u)
    if not cls.neg_inf_interior.is_empty():
        raise NotInCone(cls.neg_inf_interior.cells[0], "is -inf")
    if model is ModelX.BOUNDED:
        for w, node in leaves(u):
            if isinstance(node, Ramp) and node.limit.is_neg_inf:
                raise NotInCone(BranchPoint(w, node.direction), "limit -inf")
        finite = [m for m in (_leaf_min(n) for _, n in leaves(u)) if m.is_finite]
        return const(min(finite) if finite else ZERO)
    return _fn(_map_leaves(u.root, _full_witness_leaf))


def _full_witness_leaf(node):
    if isinstance(node, Const):
        return Const(ZERO) if node.value.is_pos_inf else node
    prefix = [ZERO if v.is_pos_inf else v for v in node.prefix]
    if node.limit.is_pos_inf:
        # truncate the divergent tail at 0
        tail_start = last_exception(node.poly, node.start, lambda t: t > 0) + 1
        prefix += [ExtReal(node.poly(k)) for k in range(node.start, tail_start)]
        prefix = [v if v <= 0 else ZERO for v in prefix]
        return _leaf(node.direction, prefix, Poly())
    return _leaf(node.direction, prefix, node.poly)


def element(u: TreeFn | str, model: ModelX = ModelX.FULL) -> SupElement:
    if isinstance(u, str):
        from .grammar import parse_fn

        u = parse_fn(u)
    return SupElement(u, member(u, model), model)


def _same_model(*elems: SupElement) -> ModelX:
    models = {e.model for e in elems}
    if len(models) != 1:
        raise ValueError("elements come from different ground lattices")
    return models.pop()


def cone_add(a: SupElement, b: SupElement) -> SupElement:
    model = _same_model(a, b)
    w = fn_add(a.witness, b.witness)
    return SupElement(fn_add(a.u, b.u), w, model)


def cone_scalar(lam, a: SupElement) -> SupElement:
    return SupElement(fn_scalar(lam, a.u), fn_scalar(lam, a.witness), a.model)


def cone_meet(a: SupElement, b: SupElement) -> SupElement:
    model = _same_model(a, b)
    return SupElement(fn_meet(a.u, b.u), fn_meet(a.witness, b.witness), model)


def cone_join(a: SupElement, b: SupElement) -> SupElement:
    model = _same_model(a, b)
    return SupElement(fn_join(a.u, b.u), a.witness, model)


def cone_sup(family: Sequence[SupElement]) -> SupElement:
    if not family:
        raise ValueError("supremum of an empty family")
    model = _same_model(*family)
    return SupElement(fn_sup([a.u for a in family]), family[0].witness, model)


def cone_inf(family: Sequence[SupElement], lower: SupElement | None) -> SupElement:
    """Infimum of a finite family that is bounded below by ``lower`` in C."""
    if not family:
        raise ValueError("infimum of an empty family")
    model = _same_model(*family)
    if lower is None:
        raise NoLowerBound("an explicit lower bound in the cone is required")
    for a in family:
        p = find_violation(lower.u, a.u)
        if p is not None:
            raise NoLowerBound(f"proposed bound exceeds a member at {p}")
    return SupElement(fn_inf([a.u for a in family]), lower.witness, model)


def cone_inverse(a: SupElement) -> SupElement | None:
    """The additive inverse of ``a`` inside the cone, if it exists."""
    try:
        neg = fn_neg(a.u)
        wit = member(neg, a.model)
    except (ValueError, NotInCone):
        return None
    inv = SupElement(neg, wit, a.model)
    if cone_add(a, inv).u != const(0):
        return None
    return inv


# -- order density -----------------------------------------------------------------


def _depth_truncate(u: TreeFn, depth: int) -> TreeFn:
    """Below ``u``: each +inf ramp keeps r(k) for k < depth and its tail infimum beyond."""

    def leaf(node):
        if isinstance(node, Const) or not node.limit.is_pos_inf:
            return node
        rest = _leaf(node.direction, *_seq_shift(node.prefix, node.poly, depth))
        node_out = Const(_leaf_min(rest))
        for k in reversed(range(depth)):
            node_out = _split_dir(node.direction, Const(node.value(k)), node_out)
        return node_out

    return _fn(_map_leaves(u.root, leaf))


def order_dense_witness(a: SupElement, depth: int, height: int) -> list[TreeFn]:
    """An increasing family in X below ``a`` whose supremum is ``a`` cut at ``depth`` and ``height``."""
    if a.model.contains(a.u):
        return [a.u]
    base = _depth_truncate(a.u, depth)
    family = [fn_meet(base, const(n)) for n in range(1, height + 1)]
    return family


def truncate(a: SupElement, depth: int, height: int) -> TreeFn:
    return fn_meet(_depth_truncate(a.u, depth), const(height))


# -- bands ----------------------------------------------------------------------


def band_project(U: ClopenSet, u: TreeFn) -> TreeFn:
    """``u * 1_U``: ``u`` on ``U`` and 0 elsewhere."""
    return fn_restrict(u, U, ZERO)


def band_project_element(U: ClopenSet, a: SupElement) -> SupElement:
    return SupElement(band_project(U, a.u), band_project(U, a.witness), a.model)


def support_closure(a: TreeFn) -> ClopenSet:
    """The clopen closure of ``{a != 0}``."""
    cells = []
    for w, node in leaves(a):
        if isinstance(node, Const):
            if node.value != ZERO:
                cells.append(w)
            continue
        d = node.direction
        zeros = [k for k in range(node.start) if node.prefix[k] == ZERO]
        last_zero = last_exception(node.poly, node.start, lambda t: t != 0)
        zeros += [k for k in range(node.start, last_zero + 1) if node.poly(k) == 0]
        cutoff = max(zeros, default=-1) + 1
        cells += [_subcell(w, d, k) for k in range(cutoff) if k not in zeros]
        # every subcell from the cutoff on is non-zero, so the branch point is a limit of them
        cells.append(w + str(d) * cutoff)
    return ClopenSet(cells)


def principal_band_project(a: TreeFn, x: TreeFn) -> TreeFn:
    return band_project(support_closure(a), x)


# -- finite and infinite parts ------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    finite_part: TreeFn
    infinite_part: TreeFn
    carrier: ClopenSet

    def report(self) -> list[tuple[str, str]]:
        return [
            ("finite_part", str(self.finite_part)),
            ("infinite_part", str(self.infinite_part)),
            ("carrier", str(self.carrier)),
        ]


def fin_inf_decompose(a: SupElement | TreeFn) -> Decomposition:
    u = a.u if isinstance(a, SupElement) else a
    carrier = clopen_complement(classify(u).pos_inf_interior)
    x = band_project(carrier, u)
    w = indicator(carrier, inside=ZERO, outside=POS_INF)
    return Decomposition(x, w, carrier)


# -- Riesz decomposition ----------------------------------------------------------------


def riesz_decompose(x: SupElement, u: SupElement, v: SupElement) -> tuple[SupElement, SupElement]:
    """Split ``x <= u + v`` (``v >= 0``) as ``x = y + z`` with ``y <= u`` and ``z <= v``."""
    model = _same_model(x, u, v)
    p = find_violation(const(0), v.u)
    if p is not None:
        raise PreconditionFailed("v is not positive", p)
    s = cone_add(u, v)
    p = find_violation(x.u, s.u)
    if p is not None:
        raise PreconditionFailed("x exceeds u + v", p)

    U = clopen_complement(classify(u.u).pos_inf_interior)
    Uc = clopen_complement(U)
    # on U^c, u is constantly +inf: y = x, z = 0
    meet_xu = fn_meet(x.u, u.u)
    y_fn = fn_add(band_project(U, meet_xu), band_project(Uc, x.u))
    # on U, meet_xu is finite a.e., so x - meet_xu is defined
    z_fn = band_project(U, fn_sub(band_project(U, x.u), band_project(U, meet_xu)))
    y = SupElement(y_fn, fn_meet(x.witness, u.witness), model)
    z = SupElement(z_fn, const(0), model)

    if fn_add(y.u, z.u) != x.u:
        raise AssertionError("riesz: x != y + z")
    if not fn_le(y.u, u.u):
        raise AssertionError("riesz: y > u")
    if not fn_le(z.u, v.u):
        raise AssertionError("riesz: z > v")
    return y, z


# -- truncation -----------------------------------------------------------------------


def _check_positive(u: TreeFn) -> None:
    p = find_violation(const(0), u)
    if p is not None:
        raise NotPositive(p)


@dataclass(frozen=True)
class TruncationCertificate:
    """For each piece of ``u``: where ``n e ^ u`` reaches ``u`` (finite) or tracks ``n`` (+inf)."""

    u: TreeFn
    entries: tuple  # (location, value of u, index n from which t_n = u there, or None if +inf)

    def term(self, n: int) -> TreeFn:
        return fn_meet(fn_scalar(n, const(ONE)), self.u)

    def verify(self) -> bool:
        cache = {}

        def t(n):
            if n not in cache:
                cache[n] = self.term(n)
            return cache[n]

        for loc, value, n0 in self.entries:
            if n0 is None:
                for n in (1, 2, 5, 13):
                    if eval_at(t(n), loc) != ExtReal(n):
                        return False
            else:
                if eval_at(t(n0), loc) != value or eval_at(t(n0 + 7), loc) != value:
                    return False
                if n0 > 0 and eval_at(t(n0 - 1), loc) > value:
                    return False
        # t_n increases to u: t_n <= t_(n+1) <= u
        return all(fn_le(t(n), t(n + 1)) and fn_le(t(n + 1), self.u) for n in (1, 2, 5))

    def report(self) -> list[tuple[str, str]]:
        rows = []
        for loc, value, n0 in self.entries:
            how = "t_n = n for all n" if n0 is None else f"t_n = u for n >= {n0}"
            rows.append((f"at {loc}", f"u = {value}; {how}"))
        return rows


def _stabilizes_at(value: ExtReal) -> int | None:
    if value.is_pos_inf:
        return None
    return max(0, ceil(value.fraction))


def truncation_check(a: SupElement | TreeFn, window: int = 6) -> TruncationCertificate:
    """Certificate that ``u = sup_n (n e ^ u)`` for ``u >= 0``, checked piece by piece."""
    u = a.u if isinstance(a, SupElement) else a
    _check_positive(u)
    entries = []
    for w, node in leaves(u):
        if isinstance(node, Const):
            entries.append((Cell(w), node.value, _stabilizes_at(node.value)))
            continue
        d = node.direction
        for k in range(node.start + window):
            v = node.value(k)
            entries.append((Cell(_subcell(w, d, k)), v, _stabilizes_at(v)))
        entries.append((BranchPoint(w, d), node.limit, _stabilizes_at(node.limit)))
    cert = TruncationCertificate(u, tuple(entries))
    if not cert.verify():
        raise AssertionError("truncation certificate failed")
    return cert


# -- the infinity test ------------------------------------------------------------------


@dataclass(frozen=True)
class InfinityReport:
    v: TreeFn
    in_Xu: bool
    lambda_trace: tuple  # (lambda, v_lambda)

    def report(self) -> list[tuple[str, str]]:
        rows = [("v", str(self.v)), ("in_Xu", str(self.in_Xu).lower())]
        rows += [(f"v_lambda[{lam}]", str(vl)) for lam, vl in self.lambda_trace]
        return rows


def _v_lambda(u: TreeFn, lam: Fraction) -> TreeFn:
    pos = fn_join(fn_add(u, const(-lam)), const(0))
    return band_project(support_closure(pos), const(1))


def _sweep_infimum(u: TreeFn) -> ClopenSet:
    """Interior of the intersection of the supports of (u - lam)^+ over all lam > 0.

    A constant cell survives every lam iff it is +inf; a ramp's subcells
    survive iff they are +inf, and its branch point alone has empty interior.
    """
    cells = []
    for w, node in leaves(u):
        if isinstance(node, Const):
            if node.value.is_pos_inf:
                cells.append(w)
        else:
            cells += [_subcell(w, node.direction, k)
                      for k, v in enumerate(node.prefix) if v.is_pos_inf]
    return ClopenSet(cells)


def _critical_lambdas(u: TreeFn) -> list[Fraction]:
    finite = set()
    for _, node in leaves(u):
        vals = [node.value] if isinstance(node, Const) else list(node.prefix)
        finite.update(v.fraction for v in vals if v.is_finite and v > 0)
    beyond = max(finite, default=Fraction(0)) + 1
    return sorted(finite) + [beyond]


def infinity_test(a: SupElement | TreeFn) -> InfinityReport:
    """inf over lam > 0 of P_{(u - lam e)^+} e, with e = 1, for ``u >= 0``."""
    u = a.u if isinstance(a, SupElement) else a
    _check_positive(u)
    trace = tuple((lam, _v_lambda(u, lam)) for lam in _critical_lambdas(u))
    v = indicator(_sweep_infimum(u))
    for _, vl in trace:
        if not fn_le(v, vl):
            raise AssertionError("infimum is not below the sweep")
    in_xu = v == const(0)
    if in_xu != classify(u).in_Cinfty:
        raise AssertionError("infinity test disagrees with classify")
    w = fin_inf_decompose(u).infinite_part
    if band_project(support_closure(w), const(1)) != v:
        raise AssertionError("infimum differs from P_w e")
    return InfinityReport(v, in_xu, trace)


# -- product on the positive cone ------------------------------------------------------------


def pos_product(a: SupElement | TreeFn, b: SupElement | TreeFn) -> SupElement | TreeFn:
    """Product of positive elements on an open dense set, with 0 * inf = 0."""
    ua = a.u if isinstance(a, SupElement) else a
    ub = b.u if isinstance(b, SupElement) else b
    _check_positive(ua)
    _check_positive(ub)
    prod = fn_mul(ua, ub)
    if isinstance(a, SupElement):
        return SupElement(prod, const(0), a.model)
    return prod

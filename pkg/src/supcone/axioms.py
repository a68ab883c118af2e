"""Seeded verification of the cone axioms and the structural properties.

Every check draws its inputs from a per-trial SplitMix64 stream, so a
failure is replayed exactly by ``(config, check name, trial index)``.  A
check returns None on success and a description of the counterexample on
failure; exceptions escaping a check are failures too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Callable

from . import func
from .extreal import NEG_INF, POS_INF, ExtReal
from .func import (
    CellNotResolved,
    _leaf,
    Ramp,
    TreeFn,
    branch_points,
    classify,
    const,
    eval_at,
    extend_from_dense,
    find_violation,
    fn_add,
    fn_join,
    fn_le,
    fn_meet,
    fn_mul,
    fn_neg,
    fn_scalar,
    fn_sup,
    indicator,
)
from .generate import (
    GenConfig,
    gen_element,
    gen_flat,
    gen_fn,
    gen_positive,
    gen_ramp_node,
    gen_unbounded_ramp,
    gen_x,
)
from .grammar import format_flat, parse_flat, parse_fn
from .iso import flat_add, flat_le, flat_scalar, j_formula_check, j_inverse, j_transport
from .poly import Poly
from .rng import SplitMix64, trial_seed
from .stone import BranchPoint, Cell, clopen_complement
from .supcomp import (
    ModelX,
    NoLowerBound,
    PreconditionFailed,
    SupElement,
    band_project,
    band_project_element,
    cone_add,
    cone_inf,
    cone_inverse,
    cone_meet,
    cone_join,
    cone_scalar,
    cone_sup,
    element,
    fin_inf_decompose,
    infinity_test,
    member,
    order_dense_witness,
    pos_product,
    riesz_decompose,
    support_closure,
    truncate,
    truncation_check,
)

__all__ = [
    "CHECKS",
    "CONE_AXIOMS",
    "Failure",
    "CheckResult",
    "SuiteReport",
    "run_suite",
    "run_check",
    "replay",
    "trial_rng",
    "probe_points",
    "majorant_oracle",
]

TOP = const(POS_INF)


# -- oracles ---------------------------------------------------------------------


def probe_points(fns, rng: SplitMix64, count: int = 16, depth: int = 10) -> list:
    """Random depth-``depth`` cells resolved for every function, plus every ramp branch point."""
    points: list = []
    for f in fns:
        points += [p for p, _ in branch_points(f)]
    tries = 0
    while len(points) < count and tries < 4 * count:
        tries += 1
        if rng.below(4) == 0:
            points.append(BranchPoint("".join(rng.choice("01") for _ in range(rng.below(depth))),
                                      rng.below(2)))
            continue
        c = Cell("".join(rng.choice("01") for _ in range(depth)))
        try:
            for f in fns:
                eval_at(f, c)
        except CellNotResolved:
            continue
        points.append(c)
    return points


def _pointwise(op, out: TreeFn, args, points) -> str | None:
    for p in points:
        want = op(*(eval_at(a, p) for a in args))
        got = eval_at(out, p)
        if got != want:
            return f"at {p}: got {got}, pointwise {want}"
    return None


def _finite_differences(values: list) -> list:
    table = [values]
    while len(table[-1]) > 1:
        row = table[-1]
        table.append([b - a for a, b in zip(row, row[1:])])
    return table


def _tail_direction(node: Ramp, depth: int) -> tuple[int, int]:
    """Sign of the eventual trend of r(k), read from finite differences of samples.

    Returns (direction, K) with r monotone in that direction for k >= K.  Once
    every difference of order 1..m at K has the sign of the (constant) top
    one, each lower order difference keeps that sign beyond K.
    """
    m = node.poly.degree
    if m <= 0:
        return 0, depth
    k_end = depth + m
    while True:
        table = _finite_differences([node.value(k).fraction for k in range(depth, k_end + 1)])
        sgn = 1 if table[m][0] > 0 else -1
        if all(table[j][-1] * sgn >= 0 for j in range(1, m + 1)):
            return sgn, k_end
        k_end += m + 1


def majorant_oracle(node: Ramp, depth: int = 12) -> ExtReal:
    """Branch value of a ramp as the infimum of continuous majorants.

    For truncation depth d the least majorant that is constant on the tail
    cell has level M_d = sup_{k >= d} r(k); the extension is inf_d M_d.  The
    levels are computed from explicit samples up to the monotone point K, and
    beyond it from the sampled trend.
    """
    if node.start > depth:
        raise ValueError("the ramp prefix must end before the truncation depth")
    direction, k_mono = _tail_direction(node, depth)
    if direction > 0:
        # every M_d is +inf
        return POS_INF
    if direction < 0:
        # M_d = r(d) for d >= K, and r decreases without bound
        return NEG_INF
    samples = [node.value(k) for k in range(0, k_mono + 1)]
    return min(max(samples[d:]) for d in range(len(samples)))


def _majorant_dominates(node: Ramp, level: ExtReal, depth: int) -> bool:
    """Does the function equal to r(k) before ``depth`` and ``level`` after lie above u on every cell?"""
    maj = TreeFn(_leaf(node.direction, [node.value(k) for k in range(depth)], Poly.const(level.fraction)))
    p = find_violation(extend_from_dense(node), maj)
    return p is None or isinstance(p, BranchPoint)


# -- checks ----------------------------------------------------------------------


def _fail(msg: str, *objs) -> str:
    return msg + "".join(f"\n    {o}" for o in objs)


def check_order(rng, cfg):
    a = gen_element(rng, cfg)
    b = cone_add(a, gen_positive(rng, cfg))
    c = gen_element(rng, cfg)
    lam = Fraction(rng.between(0, 6), rng.between(1, 3))
    if not fn_le(a.u, b.u):
        return _fail("a + p not above a", a, b)
    if not fn_le(cone_add(a, c).u, cone_add(b, c).u):
        return _fail("a <= b but a + c > b + c", a, b, c)
    if not fn_le(cone_scalar(lam, a).u, cone_scalar(lam, b).u):
        return _fail(f"a <= b but {lam} a > {lam} b", a, b)
    pts = probe_points([a.u, b.u], rng, 8)
    for p in pts:
        if eval_at(a.u, p) > eval_at(b.u, p):
            return _fail(f"pointwise order fails at {p}", a, b)
    return None


def check_lattice(rng, cfg):
    a, b = gen_element(rng, cfg), gen_element(rng, cfg)
    m, j = cone_meet(a, b), cone_join(a, b)
    for lo, hi in ((m.u, a.u), (m.u, b.u), (a.u, j.u), (b.u, j.u)):
        if not func.fn_le(lo, hi):
            return _fail("meet/join not a bound", a, b)
    if func.fn_meet(a.u, b.u) != func.fn_meet(b.u, a.u):
        return _fail("meet not commutative", a, b)
    if func.fn_meet(a.u, func.fn_join(a.u, b.u)) != a.u:
        return _fail("absorption fails", a, b)
    pts = probe_points([a.u, b.u], rng, 12)
    err = _pointwise(min, func.fn_meet(a.u, b.u), [a.u, b.u], pts) or _pointwise(
        max, func.fn_join(a.u, b.u), [a.u, b.u], pts)
    return _fail(err, a, b) if err else None


def check_greatest(rng, cfg):
    a = gen_element(rng, cfg)
    top = element(TOP, cfg.model)
    if not fn_le(a.u, top.u):
        return _fail("element above +inf", a)
    if cone_join(a, top).u != TOP or cone_meet(a, top).u != a.u:
        return _fail("+inf is not absorbing for join", a)
    return None


def check_ideal(rng, cfg):
    v = gen_element(rng, cfg)
    h = gen_x(rng, cfg)
    below = cone_meet(v, element(h, cfg.model))
    if not fn_le(below.u, h):
        return _fail("meet not below h", below, h)
    if not cfg.model.contains(below.u):
        return _fail("cone element below an element of X is not in X", below, h)
    # sandwiched between two elements of X
    f = below.witness
    if not cfg.model.contains(fn_meet(fn_join(v.u, f), h)):
        return _fail("f <= u <= h with u outside X", v, h)
    return None


def check_oc(rng, cfg):
    fam = [gen_element(rng, cfg) for _ in range(rng.between(2, 5))]
    s = cone_sup(fam)
    pts = probe_points([a.u for a in fam], rng, 10)
    err = _pointwise(lambda *xs: max(xs), s.u, [a.u for a in fam], pts)
    if err:
        return _fail("sup " + err, *fam)
    if any(not fn_le(a.u, s.u) for a in fam):
        return _fail("sup is not an upper bound", *fam)
    lower = element(func.fn_inf([a.witness for a in fam]), cfg.model)
    i = cone_inf(fam, lower)
    err = _pointwise(lambda *xs: min(xs), i.u, [a.u for a in fam], pts)
    if err:
        return _fail("inf " + err, *fam)
    bad = cone_add(s, element(const(1), cfg.model))
    if any(not fn_le(bad.u, a.u) for a in fam):
        try:
            cone_inf(fam, bad)
            return _fail("cone_inf accepted a bound that is not below the family", *fam)
        except NoLowerBound:
            pass
    return None


def _schedule_value(a: SupElement, p, steps):
    return [eval_at(truncate(a, d, n), p) for d, n in steps]


def check_o_dense(rng, cfg):
    a = gen_element(rng, cfg)
    d, n = rng.between(1, 6), rng.between(1, 6)
    fam = order_dense_witness(a, d, n)
    if cfg.model.contains(a.u):
        return None if fam == [a.u] else _fail("element of X not its own witness family", a)
    for f, g in zip(fam, fam[1:]):
        if not fn_le(f, g):
            return _fail("family is not increasing", a)
    for f in fam:
        if not cfg.model.contains(f) or not fn_le(f, a.u):
            return _fail(f"family member {f} not in X below u", a)
    if fn_sup(fam) != truncate(a, d, n):
        return _fail("family supremum is not the truncation", a)
    points = probe_points([a.u], rng, 10, depth=6)
    targets = [eval_at(a.u, p) for p in points]
    # the schedule must outgrow every finite target and the probe depth
    reach = max([7] + [ceil(t.fraction) + 1 for t in targets if t.is_finite])
    steps = [(1, 1)]
    while steps[-1][0] < reach:
        m = 2 * steps[-1][0]
        steps.append((m, m))
    for (d0, n0), (d1, n1) in zip(steps, steps[1:]):
        if not fn_le(truncate(a, d0, n0), truncate(a, d1, n1)):
            return _fail("truncations do not increase", a)
    for p, target in zip(points, targets):
        vals = _schedule_value(a, p, steps)
        if any(v > target for v in vals):
            return _fail(f"truncation exceeds u at {p}", a)
        if target.is_finite:
            if vals[-1] != target:
                return _fail(f"truncations at {p} stop at {vals[-1]}, not {target}", a)
        elif target.is_pos_inf:
            if not vals[-1] > vals[0]:
                return _fail(f"truncations at +inf point {p} do not grow", a)
    return None


def check_dist(rng, cfg):
    u, v = gen_element(rng, cfg), gen_element(rng, cfg)
    f = gen_x(rng, cfg)
    lhs = fn_add(u.u, fn_meet(f, v.u))
    rhs = fn_meet(fn_add(u.u, f), fn_add(u.u, v.u))
    return None if lhs == rhs else _fail("u + (f ^ v) != (u + f) ^ (u + v)", u, v, f)


def check_sup_sup(rng, cfg):
    A = [gen_element(rng, cfg) for _ in range(rng.between(2, 4))]
    g = gen_element(rng, cfg)
    sA = cone_sup(A)
    B = [sA] + [cone_meet(a, g) for a in A if rng.below(2)]
    if cone_sup(B).u != sA.u:
        return _fail("generator: sup B != sup A", *A)
    f = gen_x(rng, cfg)
    lhs = fn_sup([fn_meet(a.u, f) for a in A])
    rhs = fn_sup([fn_meet(b.u, f) for b in B])
    return None if lhs == rhs else _fail("sup(A ^ f) != sup(B ^ f)", *A, f)


def check_extension(rng, cfg):
    node = gen_ramp_node(rng, cfg, infinite_cells=False)
    if rng.below(4) == 0:
        # an eventually constant sequence, whose extension is finite
        node = Ramp(node.direction, node.prefix, Poly.const(Fraction(rng.between(-9, 9), rng.between(1, 3))))
    u = extend_from_dense(node)
    ext = eval_at(u, BranchPoint("", node.direction))
    oracle = majorant_oracle(node, 12)
    if ext != oracle:
        return _fail(f"extension {ext} != majorant infimum {oracle}", node)
    direction, k_mono = _tail_direction(node, 12)
    level = max(node.value(k) for k in range(12, k_mono + 1))
    if direction < 0 and not _majorant_dominates(node, level, 12):
        return _fail(f"level {level} majorant does not dominate a decreasing tail", node)
    if direction > 0 and _majorant_dominates(node, level, 12):
        return _fail(f"finite level {level} dominates an increasing tail", node)
    return None


def check_addition(rng, cfg):
    a, b, c = (gen_element(rng, cfg) for _ in range(3))
    if cone_add(a, b).u != cone_add(b, a).u:
        return _fail("a + b != b + a", a, b)
    if cone_add(cone_add(a, b), c).u != cone_add(a, cone_add(b, c)).u:
        return _fail("(a + b) + c != a + (b + c)", a, b, c)
    shifted = SupElement(a.u, fn_add(a.witness, const(-rng.between(1, 4))), cfg.model)
    if cone_add(shifted, b).u != cone_add(a, b).u:
        return _fail("sum depends on the witness", a, b)
    zero = element(const(0), cfg.model)
    if cone_add(a, zero).u != a.u:
        return _fail("a + 0 != a", a)
    lam = Fraction(rng.between(0, 5), rng.between(1, 2))
    mu = Fraction(rng.between(0, 5), rng.between(1, 2))
    if cone_scalar(lam, cone_add(a, b)).u != cone_add(cone_scalar(lam, a), cone_scalar(lam, b)).u:
        return _fail(f"{lam}(a + b) != {lam}a + {lam}b", a, b)
    if cone_scalar(lam + mu, a).u != cone_add(cone_scalar(lam, a), cone_scalar(mu, a)).u:
        return _fail(f"({lam} + {mu})a split fails", a)
    return None


def check_c0_is_x(rng, cfg):
    a = element(gen_x(rng, cfg), cfg.model) if rng.below(2) else gen_element(rng, cfg)
    inv = cone_inverse(a)
    if (inv is not None) != cfg.model.contains(a.u):
        return _fail(f"invertible={inv is not None} but in X={cfg.model.contains(a.u)}", a)
    return None


def check_distr(rng, cfg):
    u = gen_element(rng, cfg)
    A = [gen_x(rng, cfg) for _ in range(rng.between(1, 4))]
    lhs = fn_sup([fn_add(u.u, f) for f in A])
    rhs = fn_add(u.u, fn_sup(A))
    return None if lhs == rhs else _fail("sup(u + A) != u + sup A", u, *A)


def _riesz_inputs(rng, cfg):
    u = gen_element(rng, cfg)
    v = gen_positive(rng, cfg)
    x = cone_meet(gen_element(rng, cfg), cone_add(u, v))
    return x, u, v


def check_riesz(rng, cfg):
    x, u, v = _riesz_inputs(rng, cfg)
    y, z = riesz_decompose(x, u, v)
    if fn_add(y.u, z.u) != x.u or not fn_le(y.u, u.u) or not fn_le(z.u, v.u):
        return _fail("postcondition fails", x, u, v)
    if cfg.model.contains(x.u) and cfg.model.contains(u.u) and cfg.model.contains(v.u):
        if not (cfg.model.contains(y.u) and cfg.model.contains(z.u)):
            return _fail("decomposition of X elements leaves X", x, u, v)
    return None


def check_riesz_reject(rng, cfg):
    while True:
        u, v = gen_element(rng, cfg), gen_positive(rng, cfg)
        s = cone_add(u, v)
        if s.u != TOP:
            break
    x = cone_add(s, element(const(Fraction(rng.between(1, 4), rng.between(1, 3))), cfg.model))
    try:
        riesz_decompose(x, u, v)
    except PreconditionFailed as exc:
        p = exc.point
        if p is None or not eval_at(x.u, p) > eval_at(s.u, p):
            return _fail(f"reported point {p} does not separate", x, u, v)
        return None
    return _fail("x > u + v accepted", x, u, v)


def check_decomposition(rng, cfg):
    a = gen_element(rng, cfg) if rng.below(3) else _unbounded(rng, cfg)
    d = fin_inf_decompose(a)
    x, w = d.finite_part, d.infinite_part
    if fn_add(x, w) != a.u:
        return _fail("u != x + w", a)
    absx = fn_join(x, fn_neg(x))
    if fn_meet(absx, w) != const(0):
        return _fail("x and w are not disjoint", a)
    if not classify(x).in_Cinfty:
        return _fail("finite part not in X^u", a)
    band_project_element(d.carrier, a)
    if (w == const(0)) != classify(a.u).in_Cinfty:
        return _fail("u in X^u does not match w = 0", a)
    if classify(a.u).in_Cinfty and x != a.u:
        return _fail("finite-a.e. element not equal to its finite part", a)
    return None


def _unbounded(rng, cfg) -> SupElement:
    e = gen_unbounded_ramp(rng, cfg)
    return SupElement(e.u, member(e.u, cfg.model), cfg.model)


def check_infinity(rng, cfg):
    a = gen_unbounded_ramp(rng, cfg) if rng.below(3) == 0 else gen_positive(rng, cfg)
    rep = infinity_test(a)
    cls = classify(a.u)
    if rep.v != indicator(cls.pos_inf_interior):
        return _fail("v is not the indicator of the +inf cells", a)
    w = fin_inf_decompose(a).infinite_part
    if band_project(support_closure(w), const(1)) != rep.v:
        return _fail("v != P_w e", a)
    if (rep.v == const(0)) != cls.in_Cinfty:
        return _fail("v = 0 does not match finiteness a.e.", a)
    if not cls.in_CK and cls.in_Cinfty:
        if any(vl == const(0) for _, vl in rep.lambda_trace) or rep.v != const(0):
            return _fail("unbounded finite element: expected every v_lambda != 0 and v = 0", a)
    return None


def check_truncation(rng, cfg):
    a = gen_positive(rng, cfg)
    cert = truncation_check(a)
    return None if cert.verify() else _fail("certificate fails", a)


def check_transport(rng, cfg):
    u, v = gen_flat(rng, cfg), gen_flat(rng, cfg)
    if rng.below(2):
        v = flat_add(u, gen_flat(rng, cfg, depth=u.depth, finite=True))
        v = type(v)(v.depth, tuple(x if x >= y else y for x, y in zip(v.values, u.refine(v.depth).values)))
    Ju, Jv = j_transport(u), j_transport(v)
    if j_transport(flat_add(u, v)) != fn_add(Ju, Jv):
        return _fail("J(u + v) != Ju + Jv", u, v)
    lam = Fraction(rng.between(0, 5), rng.between(1, 2))
    if j_transport(flat_scalar(lam, u)) != fn_scalar(lam, Ju):
        return _fail(f"J({lam} u) != {lam} Ju", u)
    if flat_le(u, v) != fn_le(Ju, Jv) or flat_le(v, u) != fn_le(Jv, Ju):
        return _fail("order is not preserved both ways", u, v)
    x = gen_flat(rng, cfg, finite=True)
    Jx = j_transport(x)
    if not cfg.model.contains(Jx) or j_inverse(Jx, x.depth) != x:
        return _fail("J is not the identity on X", x)
    if j_inverse(Ju, u.depth) != u:
        return _fail("J^-1 J u != u", u)
    if not j_formula_check(u, cfg.model):
        return _fail("formula J(u) = sup {x in X : x <= u} fails", u)
    return None


def check_product(rng, cfg):
    a, b, c = (gen_positive(rng, cfg).u for _ in range(3))
    e = const(1)
    if fn_mul(e, a) != a:
        return _fail("e a != a", a)
    if fn_mul(a, b) != fn_mul(b, a):
        return _fail("ab != ba", a, b)
    if fn_mul(fn_mul(a, b), c) != fn_mul(a, fn_mul(b, c)):
        return _fail("(ab)c != a(bc)", a, b, c)
    if fn_mul(a, fn_add(b, c)) != fn_add(fn_mul(a, b), fn_mul(a, c)):
        return _fail("a(b + c) != ab + ac", a, b, c)
    U = support_closure(gen_fn(rng, cfg, infinite_cells=False, ramps=False))
    left = indicator(U)
    right = indicator(clopen_complement(U), inside=POS_INF)
    if pos_product(left, right) != const(0):
        return _fail("1_U (inf 1_U^c) != 0", U)
    x, y = band_project(U, a), band_project(clopen_complement(U), b)
    if fn_meet(x, y) != const(0) or fn_meet(fn_mul(x, c), y) != const(0):
        return _fail("product does not preserve disjointness", x, y, c)
    return None


def check_dense_sublattice(rng, cfg):
    a = gen_positive(rng, cfg) if rng.below(4) else gen_unbounded_ramp(rng, cfg)
    found = []
    for model in (ModelX.BOUNDED, ModelX.FULL):
        try:
            member(a.u, model)
            found.append(True)
        except ValueError:
            found.append(False)
    if found != [True, True]:
        return _fail(f"positive element membership bounded/full = {found}", a)
    return None


def check_roundtrip(rng, cfg):
    u = gen_fn(rng, cfg)
    s = str(u)
    if str(parse_fn(s)) != s:
        return _fail("function text does not round-trip", s)
    f = gen_flat(rng, cfg)
    t = format_flat(f)
    if format_flat(parse_flat(t)) != t:
        return _fail("flat text does not round-trip", t)
    return None


CONE_AXIOMS: dict[str, Callable] = {
    "order": check_order,
    "lattice": check_lattice,
    "greatest": check_greatest,
    "ideal": check_ideal,
    "oc": check_oc,
    "o-dense": check_o_dense,
    "dist": check_dist,
    "sup-sup": check_sup_sup,
}

CHECKS: dict[str, Callable] = {
    **CONE_AXIOMS,
    "extension": check_extension,
    "addition": check_addition,
    "c0-is-x": check_c0_is_x,
    "distr": check_distr,
    "riesz": check_riesz,
    "riesz-reject": check_riesz_reject,
    "decomposition": check_decomposition,
    "infinity": check_infinity,
    "truncation": check_truncation,
    "transport": check_transport,
    "product": check_product,
    "dense-sublattice": check_dense_sublattice,
    "roundtrip": check_roundtrip,
}


# -- the suite ---------------------------------------------------------------------


@dataclass(frozen=True)
class Failure:
    check: str
    trial: int
    config: GenConfig
    message: str

    def reproducer(self) -> str:
        return (f"supcone axioms --model {self.config.model.value} --seed {self.config.seed} "
                f"--depth {self.config.max_depth} --check {self.check} --trial {self.trial}")


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)


@dataclass
class SuiteReport:
    config: GenConfig
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(not r.failures for r in self.results)

    def format(self) -> str:
        lines = [f"config: {self.config.describe()}"]
        for r in self.results:
            status = "ok" if not r.failures else "FAIL"
            lines.append(f"check: {r.name} trials: {r.trials} failures: {len(r.failures)} status: {status}")
            for f in r.failures:
                lines.append(f"  failure: trial {f.trial}: {f.message}")
                lines.append(f"  replay: {f.reproducer()}")
        lines.append(f"result: {'pass' if self.ok else 'fail'}")
        return "\n".join(lines)


def trial_rng(name: str, cfg: GenConfig, trial: int) -> SplitMix64:
    """The random stream a check sees on one trial."""
    return SplitMix64(trial_seed(cfg.seed, f"{cfg.model.value}/{name}", trial))


def run_check(name: str, cfg: GenConfig, trial: int, check: Callable | None = None) -> str | None:
    check = check or CHECKS[name]
    rng = trial_rng(name, cfg, trial)
    try:
        return check(rng, cfg)
    except Exception as exc:  # a crash inside a check is a counterexample too
        return f"{type(exc).__name__}: {exc}"


def replay(name: str, cfg: GenConfig, trial: int) -> str | None:
    return run_check(name, cfg, trial)


def run_suite(cfg: GenConfig, trials: int, checks: dict[str, Callable] | None = None,
              first_trial: int = 0) -> SuiteReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    checks = CONE_AXIOMS if checks is None else checks
    report = SuiteReport(cfg)
    for name, check in checks.items():
        res = CheckResult(name)
        for t in range(first_trial, first_trial + trials):
            msg = run_check(name, cfg, t, check)
            res.trials += 1
            if msg is not None:
                res.failures.append(Failure(name, t, cfg, msg))
        report.results.append(res)
    return report

"""Command line entry point: ``supcone <command> [args]``.

Functions and flat functions are given in the canonical text grammar; an
argument of ``-`` is read from stdin.  Results print canonically, reports
as ``key: value`` lines.  Exit codes: 0 success, 1 domain error (the inner
error's name is printed), 2 usage error, 3 the axiom suite found failures.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .extreal import ExtReal
from .func import eval_at, fn_add, fn_join, fn_meet, fn_scalar
from .generate import GenConfig
from .grammar import format_flat, parse_flat, parse_fn, parse_value
from .iso import FlatFn, j_inverse, j_transport
from .stone import ClopenSet
from .supcomp import (
    ModelX,
    band_project,
    cone_inf,
    cone_sup,
    element,
    fin_inf_decompose,
    infinity_test,
    member,
    pos_product,
    riesz_decompose,
    support_closure,
    truncation_check,
)

EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_SUITE = 3


class _Stdin:
    """Hands out stdin: all of it to a single ``-``, one line each to several."""

    def __init__(self, count: int):
        self.count = count
        self.lines: list[str] | None = None

    def take(self) -> str:
        if self.lines is None:
            text = sys.stdin.read()
            self.lines = [text.strip()] if self.count == 1 else [
                ln.strip() for ln in text.splitlines() if ln.strip()]
        if not self.lines:
            raise ValueError("stdin has fewer inputs than '-' arguments")
        return self.lines.pop(0)


def _rows(rows) -> str:
    return "\n".join(f"{k}: {v}" for k, v in rows)


def _elem(args, text):
    return element(parse_fn(text), ModelX(args.model))


def _scalar(text: str) -> Fraction:
    v = ExtReal(text)
    if not v.is_finite or v.fraction < 0:
        raise ValueError(f"scalar must be a finite rational >= 0, got {text}")
    return v.fraction


def cmd_eval(args):
    return str(eval_at(parse_fn(args.fn), args.point))


def cmd_add(args):
    a, b = (_elem(args, t) for t in args.fns)
    s = fn_add(a.u, b.u)
    if args.witness:
        return _rows([("sum", s), ("witness", fn_add(a.witness, b.witness))])
    return str(s)


def cmd_meet(args):
    a, b = (parse_fn(t) for t in args.fns)
    return str(fn_meet(a, b))


def cmd_join(args):
    a, b = (parse_fn(t) for t in args.fns)
    return str(fn_join(a, b))


def cmd_sup(args):
    return str(cone_sup([_elem(args, t) for t in args.fns]).u)


def cmd_inf(args):
    fam = [_elem(args, t) for t in args.fns]
    if args.lower is not None:
        lower = _elem(args, args.lower)
    else:
        # the meet of a finite family of members is itself a member below it
        lower = fam[0]
        for a in fam[1:]:
            lower = element(fn_meet(lower.u, a.u), lower.model)
    return str(cone_inf(fam, lower).u)


def cmd_scalar(args):
    return str(fn_scalar(_scalar(args.lam), parse_fn(args.fn)))


def cmd_member(args):
    w = member(parse_fn(args.fn), ModelX(args.model))
    rows = [("member", "true")]
    if args.witness:
        rows.append(("witness", w))
    return _rows(rows)


def cmd_decompose(args):
    return _rows(fin_inf_decompose(_elem(args, args.fn)).report())


def cmd_riesz(args):
    x, u, v = (_elem(args, t) for t in (args.x, args.u, args.v))
    y, z = riesz_decompose(x, u, v)
    rows = [("y", y.u), ("z", z.u)]
    if args.witness:
        rows += [("y_witness", y.witness), ("z_witness", z.witness)]
    return _rows(rows)


def cmd_truncate(args):
    cert = truncation_check(parse_fn(args.fn))
    rows = [(f"t_{n}", cert.term(n)) for n in range(1, args.terms + 1)]
    rows.append(("sup_n t_n", cert.u))
    if args.witness:
        rows += cert.report()
    rows.append(("verified", "true"))
    return _rows(rows)


def cmd_inftest(args):
    rep = infinity_test(parse_fn(args.fn))
    rows = rep.report()
    return _rows(rows if args.witness else rows[:2])


def cmd_product(args):
    a, b = (parse_fn(t) for t in args.fns)
    return str(pos_product(a, b))


def cmd_project(args):
    return str(band_project(ClopenSet.parse(args.clopen), parse_fn(args.fn)))


def cmd_support(args):
    return str(support_closure(parse_fn(args.fn)))


def cmd_transport(args):
    if args.inverse is not None:
        return format_flat(j_inverse(parse_fn(args.value), args.inverse))
    return str(j_transport(parse_flat(args.value)))


def cmd_parse_check(args):
    v = parse_value(args.text)
    return format_flat(v) if isinstance(v, FlatFn) else str(v)


def cmd_axioms(args):
    from .axioms import CHECKS, CONE_AXIOMS, replay, run_suite

    models = list(ModelX) if args.model == "both" else [ModelX(args.model)]
    if args.check is not None and args.check not in CHECKS:
        raise _Usage(f"unknown check {args.check!r}; choose from {', '.join(CHECKS)}")
    lines, ok = [], True
    for m in models:
        cfg = GenConfig(seed=args.seed, max_depth=args.depth, model=m)
        if args.trial is not None:
            if args.check is None:
                raise _Usage("--trial needs --check")
            msg = replay(args.check, cfg, args.trial)
            lines.append(f"config: {cfg.describe()}")
            lines.append(f"check: {args.check} trial: {args.trial} status: {'ok' if msg is None else 'FAIL'}")
            if msg is not None:
                lines.append(f"  failure: {msg}")
            ok = ok and msg is None
            continue
        checks = CONE_AXIOMS if args.check is None else {args.check: CHECKS[args.check]}
        if args.all:
            checks = CHECKS
        report = run_suite(cfg, args.trials, checks)
        lines.append(report.format())
        ok = ok and report.ok
    return "\n".join(lines), (0 if ok else EXIT_SUITE)


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=[m.value for m in ModelX], default="full",
                        help="ground lattice X (default: full)")
    common.add_argument("--witness", action="store_true", help="also print certificates")

    p = argparse.ArgumentParser(
        prog="supcone", description="Exact computation in the sup-completion over the Cantor space.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text, *arguments):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        for a, kw in arguments:
            sp.add_argument(*a, **kw)
        sp.set_defaults(func=func)
        return sp

    fn = (("fn",), {"help": "function, or - for stdin"})
    two = (("fns",), {"nargs": 2, "metavar": "FN"})
    many = (("fns",), {"nargs": "+", "metavar": "FN"})
    add("eval", cmd_eval, "value at a cell or branch point", fn,
        (("point",), {"help": "cell word (e for the root) or branch point like 01(1)^w"}))
    add("add", cmd_add, "cone sum", two)
    add("meet", cmd_meet, "pointwise minimum", two)
    add("join", cmd_join, "pointwise maximum", two)
    add("sup", cmd_sup, "supremum of a finite family", many)
    add("inf", cmd_inf, "infimum of a finite family", many,
        (("--lower",), {"help": "lower bound in the cone (default: the meet itself)"}))
    add("scalar", cmd_scalar, "multiply by a rational >= 0", (("lam",), {}), fn)
    add("member", cmd_member, "cone membership", fn)
    add("decompose", cmd_decompose, "finite and infinite parts", fn)
    add("riesz", cmd_riesz, "split x <= u + v as y + z", (("x",), {}), (("u",), {}), (("v",), {}))
    add("truncate", cmd_truncate, "u = sup_n (n e ^ u) for u >= 0", fn,
        (("--terms",), {"type": int, "default": 3, "help": "number of terms t_n to print"}))
    add("inftest", cmd_inftest, "the lambda-sweep infinity test for u >= 0", fn)
    add("product", cmd_product, "product of positive functions", two)
    add("project", cmd_project, "band projection onto a clopen set",
        (("clopen",), {"help": "clopen set like {0,10}"}), fn)
    add("support", cmd_support, "closure of {u != 0}", fn)
    add("transport", cmd_transport, "flat function to tree (or back with --inverse)",
        (("value",), {}), (("--inverse",), {"type": int, "metavar": "DEPTH"}))
    add("parse-check", cmd_parse_check, "parse and print canonically", (("text",), {}))

    ax = sub.add_parser("axioms", help="run the seeded verification suite")
    ax.add_argument("--model", choices=[m.value for m in ModelX] + ["both"], default="both")
    ax.add_argument("--seed", type=int, default=42)
    ax.add_argument("--trials", type=_positive, default=1000)
    ax.add_argument("--depth", type=int, default=4, help="maximum generated tree depth")
    ax.add_argument("--check", help="run one named check")
    ax.add_argument("--trial", type=int, help="replay one trial of --check")
    ax.add_argument("--all", action="store_true", help="run every registered check")
    ax.set_defaults(func=cmd_axioms)
    return p


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _resolve_stdin(args) -> None:
    slots = [(k, i) for k, v in vars(args).items()
             for i, x in enumerate(v if isinstance(v, list) else [v]) if x == "-"]
    feed = _Stdin(len(slots))
    for key, i in slots:
        value = getattr(args, key)
        if isinstance(value, list):
            value[i] = feed.take()
        else:
            setattr(args, key, feed.take())


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _resolve_stdin(args)
        out = args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except (ValueError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    code = 0
    if isinstance(out, tuple):
        out, code = out
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

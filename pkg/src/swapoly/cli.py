"""Command-line entry point: ``swapoly <command> ...``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from . import constructions as C
from . import twobytwo as B
from . import verify as V
from .alternation import DEFAULT_BUDGET, BudgetExceeded
from .exact import ExactMatrix, TensorOperator, fmt_scalar
from .ncpoly import NcPoly, TensorPoly2, format_poly, parse_poly
from .symmetric import weingarten

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output


def _human(rep: V.CheckReport) -> str:
    lines = [f"[{rep.status}] {rep.check}: {rep.anchor} (seed {rep.seed})"]
    for m in rep.measured:
        lines.append(f"    {m['name']} = {m['value']}")
    for e in rep.expected:
        lines.append(f"    expected {e['name']} = {e['value']} ({e['provenance']})")
    return "\n".join(lines)


def _tsv(rep: V.CheckReport) -> str:
    pts = ",".join(str(p) for p in rep.points)
    return f"{rep.check}\t{rep.status}\t{rep.seed}\t{pts}\t{rep.anchor}"


def emit(reports: Sequence[V.CheckReport], fmt: str, out=None) -> int:
    out = out or sys.stdout
    if fmt == "json":
        out.write(V.reports_json(reports))
    elif fmt == "tsv":
        out.write("check\tstatus\tseed\tpoints\tanchor\n")
        for r in reports:
            out.write(_tsv(r) + "\n")
    else:
        for r in reports:
            out.write(_human(r) + "\n")
        fails = sum(r.status == V.FAIL for r in reports)
        out.write(f"{len(reports)} checks, {fails} failed\n")
    return EXIT_FAIL if any(r.status == V.FAIL for r in reports) else EXIT_OK


def _rows(m: ExactMatrix) -> list[str]:
    return [" ".join(fmt_scalar(m.entry(i, j)) for j in range(m.cols)) for i in range(m.rows)]


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    if args.poly:
        t = _read_poly(args.poly)
        d = args.d or 2
        if args.target == "swap":
            if not isinstance(t, TensorPoly2):
                raise UsageError("verify swap needs a tensor polynomial (lines with '|')")
            rep = V.verify_swap(t, d, args.trials, args.seed, check="swap.file")
        elif args.target == "central":
            zeta = V.ZETA if isinstance(t, TensorPoly2) else _zeta_var(t, args.zeta)
            rep = V.verify_central(t, d, args.trials, args.seed, zeta=zeta, check="central.file")
        else:
            raise UsageError("--poly only applies to verify swap and verify central")
        return emit([rep], args.format)
    specs = V.select_checks(args.target, args.d)
    return emit(V.run_checks(specs, args.seed, args.threads), args.format)


def _zeta_var(t: NcPoly, name: str | None):
    from .ncpoly import var

    if name is None:
        raise UsageError("a plain polynomial needs --zeta naming the central slot variable")
    v = var(name)
    if v not in t.variables():
        raise UsageError(f"{name} does not occur in the polynomial")
    return v


def cmd_construct(args) -> int:
    what = args.what
    poly = None
    run = []
    if what == "p":
        poly, run = B.P_xy(), [V.check_P]
    elif what == "q":
        poly, run = B.Q_xy(), [V.check_Q]
    elif what == "q-prime":
        poly, run = B.balanced_Q_prime(), [V.check_Q_prime, V.check_Q_prime_tpi]
    elif what == "esss":
        B.check_family_hypotheses(args.h, args.k)
        poly = B.balanced_family(args.h, args.k)

        def one(seed, workers):
            def scal(asg):
                return B.balanced_family_scalar(args.h, args.k, asg[B.X], asg[B.Y])

            return V.verify_swap(poly, 2, max(args.trials, 3), seed, scal, f"twobytwo.balanced-family.{args.h}.{args.k}")

        run = [one]
    elif what == "regev":
        d = args.d or 2

        def one(seed, workers):
            return V.check_regev(d, seed, workers, budget=args.budget)

        def two(seed, workers):
            return V.check_regev_weingarten(d, seed, workers, budget=args.budget)

        run = [one, two]
    elif what == "even-swap":
        d = args.d or 2
        if d % 2:
            raise UsageError("even-swap needs even d")
        if d == 2:
            run = [V.check_even_components, V.check_even_swap, _bind(V.check_even_lines, 2)]
        else:
            run = [_bind(_even_certificate, d), _bind(V.check_even_lines, d)] if d in (4, 6) else [_bind(_even_certificate, d)]
    elif what == "odd-swap":
        if (args.d or 3) != 3:
            raise UsageError("odd-swap is implemented for d = 3")
        run = [V.check_odd_g1, V.check_odd_g2, V.check_odd_swap]
    elif what == "capelli-swap":
        if (args.d or 2) != 2:
            raise UsageError("capelli-swap is implemented for d = 2")
        run = [V.check_capelli]
    if args.print_poly and poly is not None:
        sys.stdout.write(format_poly(poly) + "\n")
    reports = []
    for fn in run:
        reports.append(fn(seed=args.seed, workers=args.threads))
    return emit(reports, args.format)


def _bind(fn, d):
    def run(seed, workers):
        return fn(d, seed=seed, workers=workers)

    return run


def _even_certificate(d: int, seed: int = 0, workers: int = 1) -> V.CheckReport:
    rep = V.CheckReport(f"even.swap.d{d}", "d a_hh G_1 + (a_d - d a_hh) G_2 coefficients from Wg(d, d)", seed=seed)
    an = C.even_analysis(d)
    p, q = an.integer_combination
    rep.measure("a_d", an.a_d)
    rep.measure("a_hh", an.a_hh)
    rep.measure("combination", f"{fmt_scalar(an.combination[0])} G1 + {fmt_scalar(an.combination[1])} G2")
    rep.measure("value over TT", an.value)
    rep.measure("integer combination", f"{p} G1 + {q} G2")
    rep.measure("integer value over TT", an.integer_value)
    rep.measure("exact evaluation", "out of budget; analytic coefficients only")
    rep.expect("a_d", C.full_cycle_coefficient(d), "reference")
    rep.require(an.a_d == C.full_cycle_coefficient(d) and an.value != 0)
    return rep


def cmd_weingarten(args) -> int:
    if args.n < 1 or args.d < 1:
        raise UsageError("--n and --d must be positive")
    wg = weingarten(args.n, args.d)
    if args.scaled:
        wg = wg.scaled(math.factorial(args.n) ** 2)
    items = wg.items()
    if args.format == "json":
        sys.stdout.write(json.dumps([{"class": str(p), "value": fmt_scalar(v)} for p, v in items], indent=1) + "\n")
    else:
        for p, v in items:
            sys.stdout.write(f"{p}\t{fmt_scalar(v)}\n")
    return EXIT_OK


def cmd_two_by_two(args) -> int:
    w = args.what
    if w == "poincare":

        def run(seed, workers):
            return V.check_poincare(seed, workers, maxdeg=args.maxdeg)

        fns = [run]
    elif w == "gram":
        fns = [V.check_gram, V.check_lambda]
    elif w == "rewrite-teo":
        fns = [V.check_traced_split, V.check_Q_prime]
    elif w == "verify-identities":
        return emit(V.run_checks([s for s in V.select_checks("identities", 2)], args.seed, args.threads), args.format)
    else:
        fns = [V.check_Q, V.check_Q_prime, V.check_Q_prime_tpi]
    return emit([f(seed=args.seed, workers=1) for f in fns], args.format)


def _parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected A..B") from None
    if lo < 2 or hi < lo:
        raise UsageError("range must satisfy 2 <= A <= B")
    return lo, hi


def cmd_odd_coefficient(args) -> int:
    lo, hi = _parse_range(args.h_range)
    rep = V.CheckReport("odd.coefficient", "-b_(h,h-2,1,1) + 2 b_(h,h) - b_(h,h-3,2,1) on Wg(2h, 2h-1)", seed=args.seed)
    for h in range(lo, hi + 1):
        oc = C.odd_coefficient(h)
        rep.measure(f"h={h}", oc.value)
        rep.measure(f"h={h} x (d+1)!^2", oc.scaled_d_plus_1)
        rep.measure(f"h={h} nonzero", oc.nonzero)
        rep.require(oc.nonzero)
        if h == 3:
            rep.expect("h=3 x (d+1)!^2", Fraction(-1867, 105), "reference")
            rep.require(oc.scaled_d_plus_1 == Fraction(-1867, 105))
    return emit([rep], args.format)


def _read_poly(path: str):
    try:
        with open(path) as fh:
            return parse_poly(fh.read())
    except OSError as e:
        raise UsageError(str(e)) from None
    except ValueError as e:
        raise UsageError(f"{path}: {e}") from None


def read_assignment(text: str) -> tuple[int, list[ExactMatrix]]:
    """Header ``d k`` then k matrices of d*d whitespace-separated rationals."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("missing 'd k' header")
    d, k = int(tokens[0]), int(tokens[1])
    vals = [Fraction(t) for t in tokens[2:]]
    if d < 1 or k < 0 or len(vals) != d * d * k:
        raise ValueError(f"expected {d * d * k} entries, found {len(vals)}")
    mats = [ExactMatrix([vals[m * d * d + i * d : m * d * d + (i + 1) * d] for i in range(d)]) for m in range(k)]
    return d, mats


def cmd_eval(args) -> int:
    t = _read_poly(args.poly)
    try:
        with open(args.at) as fh:
            d, mats = read_assignment(fh.read())
    except (OSError, ValueError) as e:
        raise UsageError(f"{args.at}: {e}") from None
    variables = sorted(t.variables())
    if len(mats) != len(variables):
        raise UsageError(f"{len(variables)} variables ({' '.join(map(str, variables))}) but {len(mats)} matrices")
    asg = dict(zip(variables, mats))
    val = t.evaluate(asg)
    m = val.mat if isinstance(val, TensorOperator) else val
    if args.format == "json":
        sys.stdout.write(json.dumps({"d": d, "variables": [str(v) for v in variables], "value": _rows(m)}, indent=1) + "\n")
    else:
        sys.stdout.write("\n".join(_rows(m)) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global options; SUPPRESS keeps values given before the subcommand
    def dflt(v):
        return argparse.SUPPRESS if suppress else v

    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--seed", type=int, default=dflt(0))
    c.add_argument("--threads", type=_positive, default=dflt(1))
    c.add_argument("--format", choices=("json", "tsv", "human"), default=dflt("human"))
    c.add_argument("--budget", type=_positive, default=dflt(DEFAULT_BUDGET))
    c.add_argument("--trials", type=_positive, default=dflt(5))
    c.add_argument("--d", type=_positive, default=dflt(None))
    return c


def build_parser() -> argparse.ArgumentParser:
    top = _common(suppress=False)
    common = _common(suppress=True)

    p = argparse.ArgumentParser(prog="swapoly", description=__doc__, parents=[top])
    p.add_argument("--list-checks", action="store_true", help="list check ids and anchors")
    sub = p.add_subparsers(dest="command")

    v = sub.add_parser("verify", parents=[common], help="run registered checks")
    v.add_argument("target", choices=tuple(V.GROUPS))
    v.add_argument("--poly", help="verify a polynomial file instead of the registry")
    v.add_argument("--zeta", help="central slot variable of a plain polynomial")
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("construct", parents=[common], help="build a construction and certify it")
    c.add_argument("what", choices=("p", "q", "q-prime", "regev", "even-swap", "odd-swap", "capelli-swap", "esss"))
    c.add_argument("--h", type=int, default=1)
    c.add_argument("--k", type=int, default=0)
    c.add_argument("--print-poly", action="store_true")
    c.set_defaults(fn=cmd_construct)

    w = sub.add_parser("weingarten", parents=[common], help="tabulate Wg(n, d)")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--scaled", action="store_true", help="multiply by (n!)^2")
    w.set_defaults(fn=cmd_weingarten)

    t = sub.add_parser("two-by-two", parents=[common], help="2x2 trace algebra computations")
    t.add_argument("what", choices=("poincare", "gram", "rewrite-teo", "verify-identities", "q-check"))
    t.add_argument("--maxdeg", type=_positive, default=7)
    t.set_defaults(fn=cmd_two_by_two)

    o = sub.add_parser("odd-coefficient", parents=[common], help="odd-d Weingarten coefficient")
    o.add_argument("--h-range", default="2..6")
    o.set_defaults(fn=cmd_odd_coefficient)

    e = sub.add_parser("eval", parents=[common], help="evaluate a polynomial file at matrices")
    e.add_argument("--poly", required=True)
    e.add_argument("--at", required=True)
    e.set_defaults(fn=cmd_eval)
    return p


def list_checks(out=None) -> None:
    out = out or sys.stdout
    for cid, spec in V.CHECKS.items():
        out.write(f"{cid}\t{spec.anchor}\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.list_checks:
        list_checks()
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.command == "weingarten" and args.d is None:
        sys.stderr.write("swapoly: weingarten needs --d\n")
        return EXIT_USAGE
    try:
        return args.fn(args)
    except UsageError as e:
        sys.stderr.write(f"swapoly: {e}\n")
        return EXIT_USAGE
    except BudgetExceeded as e:
        sys.stderr.write(f"swapoly: refused: {e} (estimated cost {e.cost}); raise --budget\n")
        return EXIT_BUDGET
    except ValueError as e:
        sys.stderr.write(f"swapoly: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

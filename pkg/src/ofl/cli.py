"""``ofl`` command line: series evaluation, gap probes, counterexamples, Scott limits.

Exit status is 0 on success, 1 on a domain error (e.g. inverting zero) and
2 on a usage error (bad flags or malformed input text).  Reports are
``key=value`` lines on standard output.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from fractions import Fraction

from . import counterexamples as cx
from . import cuts
from . import poly as P
from . import scott
from . import series as S
from .errors import OFLError, SeriesSyntaxError
from .expr import expression_eval


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive(text: str) -> Fraction:
    value = _fraction(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _poly(text: str):
    try:
        return P.parse_poly(text)
    except SeriesSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _fraction_list(text: str) -> list:
    return [_fraction(part) for part in text.split(",") if part.strip()]


def _emit(out, key, value):
    if isinstance(value, bool):
        value = str(value).lower()
    print(f"{key}={value}", file=out)


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args, out):
    print(S.format_series(expression_eval(args.expression, args.order)), file=out)


def cmd_prime(args, out):
    p = S.pitteloud_prime(args.terms)
    _emit(out, "prime", p)
    _emit(out, "in_subring_R", S.is_in_subring_R(p))
    if args.sqrt or args.check:
        root = S.sqrt(p, args.order)
        _emit(out, "sqrt", root)
        _emit(out, "sqrt_in_subring_R", S.is_in_subring_R(root, accept_truncated=True))
        if args.check:
            square = S.mul(root, root)
            ok = square == p.truncate(square.order)
            bound = S.format_series(S.Series((), square.order))[4:]
            print(f"check: {'ok' if ok else 'FAILED'} (to {bound})", file=out)
            if not ok:
                raise OFLError("square of the computed root does not match")


def _algebraic_cut(args):
    r = cuts.AlgebraicNumber.from_poly(args.poly, args.root)
    return r, cuts.AlgebraicCut(r)


def cmd_gap_algebraic(args, out):
    r, cut = _algebraic_cut(args)
    if args.shift:
        cut = cuts.translate_cut(cut, args.shift)
    _emit(out, "poly", P.format_poly(r.min_poly))
    _emit(out, "root_decimal", r.decimal(20))
    _emit(out, "is_gap", cuts.is_gap(cuts.AlgebraicCut(r)))
    _emit(out, "roots_below", P.sturm_count_roots_below(P.squarefree_part(args.poly), r.lo))
    for q in args.contains or ():
        _emit(out, f"contains[{q}]", cuts.cut_contains(cut, q))
    if args.probe_regularity:
        w = cuts.regularity_probe(cut, args.eps, args.budget)
        _emit(out, "witness_epsilon", w.epsilon)
        _emit(out, "witness_x", w.x)
        _emit(out, "witness_verified", w.verify(cut))
    if args.sup:
        lo, hi = cuts.sup_approx(cut, args.tol, args.budget)
        _emit(out, "sup_lo", lo)
        _emit(out, "sup_hi", hi)
        _emit(out, "sup_lo_decimal", cuts.decimal_str(lo, 20))


def cmd_gap_sturm(args, out):
    _emit(out, "poly", P.format_poly(args.poly))
    _emit(out, "below", args.below)
    _emit(out, "count", P.sturm_count_roots_below(args.poly, args.below))


def cmd_gap_function(args, out):
    cut = cuts.FunctionCut(cuts.sqrt2_convergent, args.horizon, "sqrt2-convergents")
    _emit(out, "function", cut.label)
    _emit(out, "horizon", args.horizon)
    lo, hi = cut.limit_bracket()
    _emit(out, "limit_bracket_lo", lo)
    _emit(out, "limit_bracket_hi", hi)
    for q in args.contains or ():
        _emit(out, f"contains[{q}]", cuts.cut_contains(cut, q))
    if args.probe_regularity:
        w = cuts.regularity_probe(cut, args.eps, args.budget)
        _emit(out, "witness_x", w.x)
        _emit(out, "witness_verified", w.verify(cut))
    if args.sup:
        m, M = cuts.sup_approx(cut, args.tol, args.budget)
        _emit(out, "sup_lo", m)
        _emit(out, "sup_hi", M)


def cmd_gap_ivp(args, out):
    report = cuts.ivp_failure_witness(args.poly, args.a, args.b)
    for key, value in report.items():
        if key == "rational_roots":
            value = ",".join(str(v) for v in value) or "none"
        elif key in ("sign_a", "sign_b"):
            value = {1: "+", -1: "-", 0: "0"}[value]
        _emit(out, key, value)


def _p_over_q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _write_points(path, m, xs):
    rows = [(x, cx.eval_map(m, x)) for x in xs]

    def write(fh):
        # exact columns are always quoted; decimals never contain a comma
        fh.write("x,f_x,x_dec,f_dec\n")
        for x, fx in rows:
            fh.write(f'"{_p_over_q(x)}","{_p_over_q(fx)}",{cuts.decimal_str(x)},{cuts.decimal_str(fx)}\n')

    if path == "-":
        write(sys.stdout)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ofl-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            write(fh)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def cmd_cex(args, out):
    if args.kind != "thm21i" and args.c is None:
        args.c = (args.a + args.b) / 2
    m = cx.build_map(args.kind, args.a, args.b, args.c)
    report = cx.probe_pathologies(m, args.samples, args.seed)
    if "unbounded_witness_x" in report:
        report["unbounded_witness_x"] = cuts.decimal_str(report["unbounded_witness_x"])
    if args.out:
        _write_points(args.out, m, cx.sample_points(m, args.samples, args.seed))
        report["points_written"] = args.out
    print(cx.format_report(report), file=out if args.out != "-" else sys.stderr)


def cmd_scott(args, out):
    s0 = S.parse_series(args.target)
    if args.functional == "inv-shift":
        F = scott.inv_shift(s0, args.order)
    else:
        F = scott.FUNCTIONALS[args.functional](s0)
    report = scott.gamma_from_cauchy(F, args.exponents, args.theta_max, args.window)
    _emit(out, "functional", F.description)
    _emit(out, "theta_max", args.theta_max)
    for line in report.lines():
        print(line, file=out)
    _emit(out, "residuals_increasing", report.residuals_increasing)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_fraction, default=None,
                        help="truncation order for inverses and roots (default $OFL_DEFAULT_ORDER or 32)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output file ('-' for stdout)")

    parser = argparse.ArgumentParser(prog="ofl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a series expression")
    p.add_argument("expression")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("prime", parents=[common], help="the infinite prime 1 + sum t^(-1/k)")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--sqrt", action="store_true")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_prime)

    gap = sub.add_parser("gap", help="cuts and gaps of the rationals")
    gsub = gap.add_subparsers(dest="gap_command", required=True)

    def probes(q):
        q.add_argument("--contains", type=_fraction, action="append")
        q.add_argument("--probe-regularity", action="store_true")
        q.add_argument("--eps", type=_positive, default=Fraction(1, 1000))
        q.add_argument("--sup", action="store_true")
        q.add_argument("--tol", type=_positive, default=Fraction(1, 10**9))
        q.add_argument("--budget", type=int, default=10_000)

    q = gsub.add_parser("algebraic", parents=[common], help="cut below a real algebraic number")
    q.add_argument("--poly", type=_poly, required=True)
    q.add_argument("--root", type=int, default=-1, help="root index in increasing order (default: largest)")
    q.add_argument("--shift", type=_fraction, default=None)
    probes(q)
    q.set_defaults(func=cmd_gap_algebraic)

    q = gsub.add_parser("function", parents=[common], help="cut induced by the sqrt(2) convergents")
    q.add_argument("--horizon", type=int, default=50)
    probes(q)
    q.set_defaults(func=cmd_gap_function)

    q = gsub.add_parser("sturm", parents=[common], help="count real roots below a rational")
    q.add_argument("--poly", type=_poly, required=True)
    q.add_argument("--below", type=_fraction, required=True)
    q.set_defaults(func=cmd_gap_sturm)

    q = gsub.add_parser("ivp", parents=[common], help="intermediate value failure over the rationals")
    q.add_argument("--poly", type=_poly, required=True)
    q.add_argument("--a", type=_fraction, required=True)
    q.add_argument("--b", type=_fraction, required=True)
    q.set_defaults(func=cmd_gap_ivp)

    p = sub.add_parser("cex", parents=[common], help="sample a pathological continuous map")
    p.add_argument("kind", choices=sorted(cx.BUILDERS))
    p.add_argument("--a", type=_fraction, default=Fraction(0))
    p.add_argument("--b", type=_fraction, default=Fraction(1))
    p.add_argument("--c", type=_fraction, default=None)
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(func=cmd_cex)

    p = sub.add_parser("scott-demo", parents=[common], help="coefficientwise limit of a Cauchy functional")
    p.add_argument("--functional", choices=sorted(scott.FUNCTIONALS), default="inv-shift")
    p.add_argument("--target", default="2 + t")
    p.add_argument("--theta-max", type=int, default=16)
    p.add_argument("--exponents", type=_fraction_list, default=[Fraction(0), Fraction(1), Fraction(-1)])
    p.add_argument("--window", type=int, default=4)
    p.set_defaults(func=cmd_scott)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        args.func(args, out)
    except SeriesSyntaxError as exc:
        print(f"ofl: syntax error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream reader went away (e.g. piping into head)
        sys.stdout = open(os.devnull, "w")
        return 0
    except (OFLError, ValueError, OSError) as exc:
        print(f"ofl: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

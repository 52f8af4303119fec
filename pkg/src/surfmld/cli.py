"""Command line front end: ``surfmld mld|lct|resolve|search|verify-examples|corpus``.

Exit codes: 0 success, 2 parse error, 3 irrational center or non-split
factor, 4 budget exceeded, 5 the two mld engines disagree.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .algebra import NEG_INF, WeightVector, is_finite
from .corpus import generate_corpus
from .parse import ParseError, format_rideal, parse_problem, parse_rideal
from .report import KLT, LC_NOT_KLT, NOT_LC, Report, classify, format_report
from .rideal import RIdeal, curve_coefficients, ord_at_point, scale_exponent
from .tower import (
    IrrationalCenter, MaxStepsExceeded, divisor_ledger, lct_from_tower, log_resolve,
    mld_from_tower, ord_along_divisor,
)
from .weighted import (
    BudgetExceeded, DEFAULT_BUDGET, NonSplitFactor, enumerate_minimizers, mld_weighted,
    remark_ideal,
)

EXIT_OK, EXIT_PARSE, EXIT_IRRATIONAL, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4, 5
MAX_EXPONENT = 100
MAX_WEIGHT = 10_000


class CrossCheckMismatch(RuntimeError):
    pass


def _read_expr(expr: str) -> str:
    return sys.stdin.read().strip() if expr == "-" else expr


def _parse(expr: str) -> RIdeal:
    a = parse_problem(_read_expr(expr)).rideal
    for _, r in a.factors:
        if r > MAX_EXPONENT:
            raise ParseError(f"exponent {r} exceeds the cap {MAX_EXPONENT}")
    return a


def _curve_coeffs(a: RIdeal):
    return [c for _, c in curve_coefficients(a)]


def run_mld(a: RIdeal, budget: int) -> Report:
    tower = log_resolve(a)
    oracle = mld_from_tower(tower)
    cert = mld_weighted(a, budget=budget, max_bound=MAX_WEIGHT)
    diags = list(tower.diagnostics)
    diags.append(f"oracle (resolution) mld = {oracle}; weighted search mld = {cert.value} "
                 f"(bound w1+w2 <= {cert.bound}, {cert.evaluations} evaluations)")
    if cert.nonsplit:
        diags.append("weighted search met initial forms that do not split over Q")
    if oracle != cert.value:
        if cert.nonsplit:
            raise NonSplitFactor(f"weighted search is incomplete over Q: {cert.value} vs {oracle}")
        raise CrossCheckMismatch(f"engines disagree: resolution {oracle}, weighted {cert.value}")
    diags.append(f"cross-check: pass; proof-identity violations: {tower.violations}")
    return Report("mld", format_rideal(a), cert.value, classify(cert.value, _curve_coeffs(a)),
                  cert, divisor_ledger(tower), diags, tower)


def run_lct(a: RIdeal, budget: int) -> Report:
    tower = log_resolve(a)
    lct = lct_from_tower(tower)
    mld = mld_from_tower(tower)
    diags = list(tower.diagnostics)
    if is_finite(lct):
        at = mld_weighted(scale_exponent(a, lct), budget=budget, max_bound=MAX_WEIGHT)
        beyond = mld_weighted(scale_exponent(a, lct + Fraction(1, 10)), budget=budget,
                              max_bound=MAX_WEIGHT)
        ok = at.value >= 0 and beyond.value == NEG_INF
        diags.append(f"weighted search: mld at lct = {at.value}, at lct + 1/10 = {beyond.value}: "
                     f"{'pass' if ok else 'FAIL'}")
        if not ok:
            raise CrossCheckMismatch("lct is not the lc threshold of the weighted search")
    return Report("lct", format_rideal(a), lct, classify(mld, _curve_coeffs(a)),
                  None, divisor_ledger(tower), diags, tower)


def run_resolve(a: RIdeal) -> Report:
    tower = log_resolve(a)
    mld = mld_from_tower(tower)
    diags = list(tower.diagnostics) + [f"{tower.steps} blow-ups, proof-identity violations: {tower.violations}"]
    return Report("resolve", format_rideal(a), mld, classify(mld, _curve_coeffs(a)),
                  None, divisor_ledger(tower), diags, tower)


def run_search(a: RIdeal, bound: int, budget: int) -> Report:
    if bound > MAX_WEIGHT:
        raise ParseError(f"bound {bound} exceeds the cap {MAX_WEIGHT}")
    cert = mld_weighted(a, weight_bound=bound, budget=budget)
    diags = [f"weighted search over w1+w2 <= {bound}: {cert.evaluations} evaluations"]
    if is_finite(cert.value):
        for wb in enumerate_minimizers(a, cert.value, bound, budget):
            diags.append(f"minimizer: weights ({wb.w.w1}, {wb.w.w2}), coordinates {wb.coords.describe()}")
    else:
        diags.append(f"negative witness: weights ({cert.witness.w.w1}, {cert.witness.w.w2}), a_F = {cert.a_f}")
    if cert.nonsplit:
        diags.append("weighted search met initial forms that do not split over Q")
    return Report("search", format_rideal(a), cert.value, classify(cert.value, _curve_coeffs(a)),
                  cert, None, diags)


# ---------------------------------------------------------------------------
# built-in fixtures

def example_fixture_checks() -> list[tuple[str, bool]]:
    """Finite computations from the worked examples, each as (label, passed)."""
    F = Fraction
    checks = []
    a = parse_rideal("(x^2 + y^3, x*y^2)^(2/3)")
    tower = log_resolve(a)
    ex = tower.exceptionals
    checks.append(("tower has 4 blow-ups", len(ex) == 4))
    checks.append(("pullback orders (2,3,6,7)", [d.d[0] for d in ex] == [2, 3, 6, 7]))
    checks.append(("log discrepancies (2/3,1,1,4/3)", [d.a for d in ex] == [F(2, 3), 1, 1, F(4, 3)]))
    checks.append(("mld from resolution = 2/3", mld_from_tower(tower) == F(2, 3)))
    cert = mld_weighted(a)
    checks.append(("mld from weighted search = 2/3", cert.value == F(2, 3)))
    mins = enumerate_minimizers(a, F(2, 3), 12)
    checks.append(("unique minimizer is the (1,1) blow-up",
                   len(mins) == 1 and (mins[0].w.w1, mins[0].w.w2) == (1, 1)))
    m = RIdeal.maximal()
    checks.append(("ord_E3 m = 2", ord_along_divisor(tower, "E3", m) == 2))
    checks.append(("ord_E4 a^(2/3) = 14/3", ord_along_divisor(tower, "E4", a) == F(14, 3)))
    b = RIdeal.maximal(F(2, 3))
    drop = ex[2].a - ord_along_divisor(tower, "E3", b)
    checks.append(("a_E3(a^(2/3) m^(2/3)) = -1/3", ord_along_divisor(tower, "E1", b) == F(2, 3)
                   and drop == F(-1, 3)))

    remark_ok = True
    for total in range(2, 13):
        for w2 in range(1, total // 2 + 1):
            w1 = total - w2
            w = WeightVector(w1, w2)
            if not w.reduced:
                continue
            bw = remark_ideal(w)
            ok = (mld_weighted(bw).value == 0 and mld_from_tower(log_resolve(bw)) == 0
                  and any(wb.w == w for wb in enumerate_minimizers(bw, 0, 12)))
            remark_ok = remark_ok and ok
    checks.append(("remark ideals have mld 0 computed by their weights (w1+w2 <= 12)", remark_ok))

    for text in ["(x, y)^(1/2)", "(x^2 + y^3, x*y^2)^(1/3)", "(x^2 - y^5)^(1/4)"]:
        p = parse_rideal(text)
        expected = 2 - ord_at_point(p)
        mins = enumerate_minimizers(p, expected, 10)
        ok = (mld_weighted(p).value == expected == mld_from_tower(log_resolve(p))
              and [(wb.w.w1, wb.w.w2) for wb in mins] == [(1, 1)])
        checks.append((f"order < 1: {text} has mld 2 - ord and a unique computing divisor", ok))
    p = parse_rideal("(x^2 + y^3)^(1/2)")
    checks.append(("order = 1: (x^2 + y^3)^(1/2) has mld 1",
                   mld_weighted(p).value == 1 == mld_from_tower(log_resolve(p))))
    cusp = log_resolve(parse_rideal("(x^2 + y^3)"))
    checks.append(("lct of the cusp = 5/6", lct_from_tower(cusp) == F(5, 6)))
    return checks


def run_verify() -> Report:
    checks = example_fixture_checks()
    diags = [f"{label}: {'pass' if ok else 'FAIL'}" for label, ok in checks]
    if not all(ok for _, ok in checks):
        raise CrossCheckMismatch("\n".join(diags))
    a = parse_rideal("(x^2 + y^3, x*y^2)^(2/3)")
    return Report("verify-examples", format_rideal(a), Fraction(2, 3), "klt", None, None, diags)


def run_corpus(seed: int, count: int, budget: int) -> tuple[Report, int]:
    """Differential test; the report carries the worst mld and classification seen."""
    diags = []
    mismatches = 0
    worst, classes = None, set()
    for i, prob in enumerate(generate_corpus(seed, count)):
        oracle = mld_from_tower(log_resolve(prob.rideal))
        cert = mld_weighted(prob.rideal, budget=budget, max_bound=MAX_WEIGHT)
        ok = oracle == cert.value
        mismatches += not ok
        classes.add(classify(oracle, _curve_coeffs(prob.rideal)))
        worst = oracle if worst is None else min(worst, oracle)
        diags.append(f"{i}: {prob.source_text}: resolution {oracle}, weighted {cert.value}: "
                     f"{'pass' if ok else 'MISMATCH'}")
    diags.append(f"{mismatches} mismatches in {count} instances")
    label = next(c for c in (NOT_LC, LC_NOT_KLT, KLT) if c in classes)
    rep = Report("corpus", f"seed={seed} count={count}", worst, label, None, None, diags)
    return rep, mismatches


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surfmld", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of weighted-search evaluations")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [("mld", "minimal log discrepancy, both engines cross-checked"),
                           ("lct", "log canonical threshold"),
                           ("resolve", "log resolution and divisor ledger")]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("expr", help="R-ideal, e.g. '(x^2 + y^3, x*y^2)^(2/3)'; '-' reads stdin")
        if name == "resolve":
            p.add_argument("--dot", action="store_true", help="emit the dual graph in DOT")
    p = sub.add_parser("search", parents=[common], help="raw weighted-blow-up search")
    p.add_argument("expr")
    p.add_argument("--bound", type=int, default=12, help="largest w1 + w2")
    sub.add_parser("verify-examples", parents=[common], help="check the built-in fixtures")
    p = sub.add_parser("corpus", parents=[common], help="random corpus, differential test")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    mode = "json" if args.json else "text"
    code = EXIT_OK
    try:
        if args.command == "mld":
            rep = run_mld(_parse(args.expr), args.budget)
        elif args.command == "lct":
            rep = run_lct(_parse(args.expr), args.budget)
        elif args.command == "resolve":
            rep = run_resolve(_parse(args.expr))
            if args.dot:
                mode = "dot"
        elif args.command == "search":
            rep = run_search(_parse(args.expr), args.bound, args.budget)
        elif args.command == "verify-examples":
            rep = run_verify()
        else:
            rep, bad = run_corpus(args.seed, args.count, args.budget)
            code = EXIT_MISMATCH if bad else EXIT_OK
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (IrrationalCenter, NonSplitFactor) as exc:
        print(f"not split over Q: {exc}", file=sys.stderr)
        return EXIT_IRRATIONAL
    except (BudgetExceeded, MaxStepsExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CrossCheckMismatch as exc:
        print(f"cross-check mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    print(format_report(rep, mode), file=out)
    return code


def run_command(argv) -> tuple[int, str]:
    """Run the CLI in-process; returns ``(exit_code, stdout_text)``."""
    import io
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())

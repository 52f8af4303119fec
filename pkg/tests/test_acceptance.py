"""Acceptance criteria 1 to 7, each checked exactly.

Every criterion is computed once by a cached ``_criterionN`` helper that
returns a list of failure messages.  The test records a verdict in
``conftest.ACCEPTANCE`` (printed in the terminal summary) and prints it.
Criterion 6 audits every tower built by criteria 1 to 5, so it runs them
first when invoked on its own.
"""
import json
import random
import time
from fractions import Fraction
from functools import cache

import jsonschema

from surfmld.algebra import NEG_INF, Poly, WeightVector, factor_initial_form, w_order
from surfmld.cli import run_command
from surfmld.corpus import generate_corpus
from surfmld.parse import format_rideal, parse_rideal
from surfmld.report import REPORT_SCHEMA
from surfmld.rideal import ord_at_point, scale_exponent
from surfmld.tower import (
    lct_from_tower, lct_witnesses, log_resolve, mld_from_tower, ord_along_divisor,
)
from surfmld.weighted import (
    CoordinateChange, enumerate_minimizers, mld_weighted, remark_ideal,
)

from conftest import ACCEPTANCE, EXAMPLE2

TOWERS = []  # (label, tower) for every resolution run in criteria 1 to 5


def _resolve(a, label):
    tw = log_resolve(a)
    TOWERS.append((label, tw))
    return tw


def _record(n, failures, detail):
    ok = not failures
    ACCEPTANCE[n] = (ok, detail if ok else f"{detail}; {failures[0]}")
    print(f"criterion {n}: {'pass' if ok else 'fail'} ({ACCEPTANCE[n][1]})")
    assert ok, "\n".join(failures[:10])


def _weights(found):
    return [(m.w.w1, m.w.w2) for m in found]


@cache
def _criterion1():
    fail = []
    start = time.perf_counter()
    a = parse_rideal(EXAMPLE2)
    tw = _resolve(a, "example 2")
    ex = tw.exceptionals
    if tw.steps != 4:
        fail.append(f"{tw.steps} blow-ups")
    if [d.d[0] for d in ex] != [2, 3, 6, 7]:
        fail.append(f"pullback exponents {[d.d[0] for d in ex]}")
    if [d.a for d in ex] != [Fraction(2, 3), 1, 1, Fraction(4, 3)]:
        fail.append(f"ledger {[d.a for d in ex]}")
    oracle, cert = mld_from_tower(tw), mld_weighted(a)
    if not oracle == cert.value == Fraction(2, 3):
        fail.append(f"mld {oracle} vs {cert.value}")
    found = enumerate_minimizers(a, Fraction(2, 3), 12)
    if [(m.w.w1, m.w.w2, m.coords) for m in found] != [(1, 1, CoordinateChange.identity())]:
        fail.append(f"minimizers {_weights(found)}")
    e3 = ord_along_divisor(tw, "E3", parse_rideal("(x, y)"))
    if e3 != 2:
        fail.append(f"ord along E3 {e3}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1:
        fail.append(f"runtime {elapsed:.2f}s")
    return fail, f"{elapsed:.2f}s"


@cache
def _criterion2():
    fail = []
    start = time.perf_counter()
    problems = generate_corpus(0, 200)
    neg = 0
    for i, p in enumerate(problems):
        oracle = mld_from_tower(_resolve(p.rideal, f"corpus {i}"))
        cert = mld_weighted(p.rideal)
        neg += oracle == NEG_INF
        if cert.value != oracle:
            fail.append(f"#{i} {p.source_text}: tower {oracle}, weighted {cert.value}")
    code, _ = run_command(["corpus", "--seed", "0", "--count", "200"])
    if code == 5:
        fail.append("corpus command exited 5")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        fail.append(f"runtime {elapsed:.1f}s")
    return fail, f"200 instances, {neg} at -infinity, {elapsed:.1f}s"


def _reduced(bound):
    return [WeightVector(w1, w2) for w1 in range(1, bound) for w2 in range(1, w1 + 1)
            if w1 + w2 <= bound and WeightVector(w1, w2).reduced]


@cache
def _criterion3():
    fail = []
    start = time.perf_counter()
    ws = _reduced(12)
    for w in ws:
        b = remark_ideal(w)
        tw = _resolve(b, f"remark {w.w1},{w.w2}")
        value = mld_weighted(b).value
        if value != 0 or mld_from_tower(tw) != 0:
            fail.append(f"w={w.w1},{w.w2}: mld {value}")
        if (w.w1, w.w2) not in _weights(enumerate_minimizers(b, 0, 12)):
            fail.append(f"w={w.w1},{w.w2} not among minimizers")
    elapsed = time.perf_counter() - start
    if elapsed >= 10:
        fail.append(f"runtime {elapsed:.1f}s")
    return fail, f"{len(ws)} weight vectors, {elapsed:.1f}s"


TARGETS = [Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(5, 6), Fraction(1, 3), Fraction(9, 10)]


@cache
def _criterion4():
    fail = []
    problems = generate_corpus(4, 100)
    for i, p in enumerate(problems):
        o = ord_at_point(p.rideal)
        target = TARGETS[i % len(TARGETS)]
        below = scale_exponent(p.rideal, target / o)
        if ord_at_point(below) != target:
            fail.append(f"#{i}: rescaling missed {target}")
            continue
        tw = _resolve(below, f"ord<1 {i}")
        value = mld_weighted(below).value
        if not value == mld_from_tower(tw) == 2 - target:
            fail.append(f"#{i} {format_rideal(below)}: mld {value}, expected {2 - target}")
        found = _weights(enumerate_minimizers(below, 2 - target, 10))
        if found != [(1, 1)]:
            fail.append(f"#{i} {format_rideal(below)}: minimizers {found}")

        one = scale_exponent(p.rideal, 1 / o)
        tw = _resolve(one, f"ord=1 {i}")
        value = mld_weighted(one).value
        if not value == mld_from_tower(tw) == 1:
            fail.append(f"#{i} {format_rideal(one)}: mld {value} at order 1")
        if (1, 1) not in _weights(enumerate_minimizers(one, 1, 10)):
            fail.append(f"#{i} {format_rideal(one)}: (1,1) does not attain 1")
    return fail, "100 instances at order < 1, 100 at order 1"


@cache
def _criterion5():
    """Instances whose lct is computed only by a strict curve are tallied apart.

    For those, the pair at the lct has a boundary curve of coefficient 1 and
    every divisor over the origin keeps a positive log discrepancy, so their
    mld at the lct is positive rather than 0; they are checked for mld >= 0
    at the lct and -infinity just above it.
    """
    fail = []
    rng_seed, used, curve_only = 5, 0, 0
    for p in generate_corpus(rng_seed, 200):
        if used == 50:
            break
        tw = _resolve(p.rideal, "lct source")
        lct = lct_from_tower(tw)
        at, beyond = scale_exponent(p.rideal, lct), scale_exponent(p.rideal, lct + Fraction(1, 10))
        m_at = mld_weighted(at).value
        m_beyond = mld_weighted(beyond).value
        if m_at != mld_from_tower(_resolve(at, "at lct")) or m_beyond != mld_from_tower(_resolve(beyond, "beyond")):
            fail.append(f"{p.source_text}: engines disagree near the lct")
        if m_beyond != NEG_INF:
            fail.append(f"{p.source_text}: mld at lct + 1/10 is {m_beyond}")
        if all(d.kind == "strict_curve" for d in lct_witnesses(tw)):
            curve_only += 1
            if m_at < 0:
                fail.append(f"{p.source_text}: curve-computed lct but mld {m_at} at the lct")
            continue
        used += 1
        if m_at != 0:
            fail.append(f"{p.source_text}: mld {m_at} at lct {lct}")
    if used < 50:
        fail.append(f"only {used} instances with an exceptional lct divisor")
    cusp = lct_from_tower(_resolve(parse_rideal("(x^2 + y^3)"), "cusp"))
    if cusp != Fraction(5, 6):
        fail.append(f"cusp lct {cusp}")
    return fail, f"{used} instances at mld 0, {curve_only} curve-computed lcts set aside, cusp lct 5/6"


def _random_poly(rng, terms=4, deg=5):
    return Poly({(rng.randint(0, deg), rng.randint(0, deg)): Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 4))
                 for _ in range(rng.randint(1, terms))})


def _random_homogeneous(rng, w):
    f = Poly.monomial(rng.randint(0, 3), rng.randint(0, 3), Fraction(rng.randint(1, 5), rng.randint(1, 3)))
    for _ in range(rng.randint(0, 3)):
        lam = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        f = f * Poly({(w.w2p, 0): 1, (0, w.w1p): lam}) ** rng.randint(1, 2)
    if rng.random() < 0.3:
        f = f * Poly({(2 * w.w2p, 0): 1, (0, 2 * w.w1p): rng.choice([2, 3, 5])})
    return f


@cache
def _criterion6():
    fail = []
    for helper in (_criterion1, _criterion2, _criterion3, _criterion4, _criterion5):
        helper()
    for label, tw in TOWERS:
        bad = [line for line in tw.diagnostics if "FAIL" in line]
        if tw.violations or bad:
            fail.append(f"{label}: {tw.violations} violations {bad[:1]}")
    rng = random.Random(6)
    for _ in range(1000):
        w = WeightVector(rng.randint(1, 6), rng.randint(1, 6))
        f, g = _random_poly(rng), _random_poly(rng)
        if w_order(f * g, w) != w_order(f, w) + w_order(g, w):
            fail.append(f"w_order not multiplicative on {f}, {g}")
        w = WeightVector(w.w1p, w.w2p)
        h = _random_homogeneous(rng, w)
        if factor_initial_form(h, w).expand() != h:
            fail.append(f"factorization of {h} does not reconstruct it")
    return fail, f"{len(TOWERS)} resolution runs audited, 1000 algebra cases"


def _random_problem(rng):
    if rng.random() < 0.5:
        return generate_corpus(rng.randint(0, 10 ** 6), 1)[0].rideal
    gens = [g for g in (_random_poly(rng, 3, 4) for _ in range(rng.randint(1, 3))) if g]
    exps = f"({rng.randint(1, 30)}/{rng.randint(1, 12)})"
    return parse_rideal("(" + ", ".join(str(g) for g in gens) + ")^" + exps) if gens else None


@cache
def _criterion7():
    fail = []
    rng = random.Random(7)
    checked = 0
    while checked < 500:
        try:
            a = _random_problem(rng)
        except ValueError:
            continue
        if a is None:
            continue
        text = format_rideal(a)
        if parse_rideal(text) != a or format_rideal(parse_rideal(text)) != text:
            fail.append(f"round trip broke on {text}")
        checked += 1
    for argv in (["mld", EXAMPLE2], ["lct", "(x^2 + y^3)"], ["resolve", EXAMPLE2],
                 ["search", EXAMPLE2, "--bound", "8"], ["verify-examples"],
                 ["corpus", "--seed", "0", "--count", "3"], ["mld", "(x*y)^(2)"]):
        code, out = run_command(argv + ["--json"])
        try:
            jsonschema.validate(json.loads(out), REPORT_SCHEMA)
        except (ValueError, jsonschema.ValidationError) as err:
            fail.append(f"{argv[0]} report: {err}")
    for argv, want in ((["mld", "(x^2 +"], 2), (["mld", "(x^2 + y^2)"], 3),
                       (["search", EXAMPLE2, "--budget", "0"], 4)):
        code, _ = run_command(argv)
        if code != want:
            fail.append(f"{argv}: exit {code}, expected {want}")
    return fail, "500 round trips, 7 report schemas, exit codes 2/3/4"


def test_criterion1_example2_fixture():
    _record(1, *_criterion1())


def test_criterion2_oracle_equivalence():
    _record(2, *_criterion2())


def test_criterion3_remark_property():
    _record(3, *_criterion3())


def test_criterion4_low_order_pairs():
    _record(4, *_criterion4())


def test_criterion5_lct_mld_consistency():
    _record(5, *_criterion5())


def test_criterion6_proof_identities():
    _record(6, *_criterion6())


def test_criterion7_frontend():
    _record(7, *_criterion7())

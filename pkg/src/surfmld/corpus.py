"""Deterministic random R-ideals for differential testing of the two mld engines."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import Poly
from .parse import ParsedProblem, format_rideal
from .rideal import Ideal, RIdeal
from .tower import IrrationalCenter, MaxStepsExceeded, log_resolve
from .weighted import BudgetExceeded, mld_weighted

X1, X2 = Poly.x1(), Poly.x2()

EXPONENTS = [Fraction(n, d) for n, d in [
    (1, 6), (1, 5), (1, 4), (1, 3), (2, 5), (1, 2), (3, 5), (2, 3), (3, 4), (5, 6),
    (1, 1), (4, 3), (3, 2), (2, 1), (5, 2), (3, 1)]]
COEFFS = [1, -1, 2, -2, 3, -3]


def _monomial(rng: random.Random) -> Poly:
    while True:
        a, b = rng.randint(0, 4), rng.randint(0, 4)
        if a + b:
            return Poly.monomial(a, b)


def _binomial(rng: random.Random) -> Poly:
    p, q = rng.randint(1, 6), rng.randint(1, 6)
    return X1 ** p + rng.choice(COEFFS) * X2 ** q


def _ideal(rng: random.Random) -> Ideal:
    kind = rng.choice(["monomial", "binomial", "product", "pair"])
    if kind == "monomial":
        return Ideal([_monomial(rng) for _ in range(rng.randint(1, 3))])
    if kind == "binomial":
        return Ideal([_binomial(rng)])
    if kind == "product":
        other = _binomial(rng) if rng.random() < 0.5 else _monomial(rng)
        return Ideal([_binomial(rng) * other])
    second = _binomial(rng) if rng.random() < 0.5 else _monomial(rng)
    return Ideal([_binomial(rng), second])


def draw(rng: random.Random) -> RIdeal:
    nfac = 1 if rng.random() < 0.7 else 2
    return RIdeal(tuple((_ideal(rng), rng.choice(EXPONENTS)) for _ in range(nfac)))


def admissible(a: RIdeal) -> bool:
    """Every center and boundary point is rational and the weighted search splits."""
    try:
        log_resolve(a)
        cert = mld_weighted(a)
    except (IrrationalCenter, MaxStepsExceeded, BudgetExceeded):
        return False
    return not cert.nonsplit


def generate_corpus(seed: int, count: int) -> list[ParsedProblem]:
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = draw(rng)
        if admissible(a):
            out.append(ParsedProblem(a, format_rideal(a)))
    return out

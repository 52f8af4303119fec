"""Exact bivariate polynomial arithmetic over the rationals.

Polynomials are sparse maps ``{(e1, e2): Fraction}`` in the two germ
coordinates ``x1, x2``.  Everything here is exact; the only non-rational
values are the two infinities used for orders of the zero polynomial and
for minimal log discrepancies of non-lc pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from math import comb, gcd
from typing import Iterable, Union

import sympy


class ZeroPolynomial(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


# ---------------------------------------------------------------------------
# extended rationals

@total_ordering
class Infinity:
    """Signed infinity that compares against ``int`` and ``Fraction``."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "POS_INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "+infinity" if self.sign > 0 else "-infinity"

    def __eq__(self, other):
        return isinstance(other, Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __lt__(self, other):
        if isinstance(other, Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __gt__(self, other):
        if isinstance(other, Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __neg__(self):
        return NEG_INF if self.sign > 0 else POS_INF

    def __add__(self, other):
        if isinstance(other, Infinity) and other.sign != self.sign:
            raise ArithmeticError("inf - inf")
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other == 0:
            raise ArithmeticError("0 * inf")
        return self if other > 0 else -self

    __rmul__ = __mul__


POS_INF = Infinity(1)
NEG_INF = Infinity(-1)

ExtRat = Union[Fraction, Infinity]


def is_finite(v) -> bool:
    return not isinstance(v, Infinity)


def as_fraction(v) -> Fraction:
    """Coerce ``int``/``str``/``Fraction`` to a reduced ``Fraction``."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return Fraction(v)


# ---------------------------------------------------------------------------
# polynomials

Monomial = tuple[int, int]


class Poly:
    """Immutable sparse polynomial in ``x1, x2`` with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mon, c in dict(terms).items():
                c = as_fraction(c)
                if c:
                    e1, e2 = mon
                    if e1 < 0 or e2 < 0:
                        raise ValueError(f"negative exponent in {mon}")
                    clean[(int(e1), int(e2))] = c
        self.terms: dict[Monomial, Fraction] = clean
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, e1: int, e2: int, c=1) -> "Poly":
        return cls({(e1, e2): c})

    @classmethod
    def x1(cls) -> "Poly":
        return cls({(1, 0): 1})

    @classmethod
    def x2(cls) -> "Poly":
        return cls({(0, 1): 1})

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = _coerce(other)
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[Monomial, Fraction] = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                m = (a1 + b1, a2 + b2)
                out[m] = out.get(m, 0) + c * d
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_fraction(c)
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return Poly({m: v / c for m, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0, 0), Fraction(0))

    def degree(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in graded-lex order, x1 > x2, highest first."""
        return sorted(self.terms.items(),
                      key=lambda mc: (mc[0][0] + mc[0][1], mc[0][0]),
                      reverse=True)

    def leading_coefficient(self) -> Fraction:
        return self.sorted_terms()[0][1]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        return Poly({m: c / lc for m, c in self.terms.items()})

    def evaluate(self, p1, p2) -> Fraction:
        p1, p2 = as_fraction(p1), as_fraction(p2)
        return sum((c * p1 ** a * p2 ** b for (a, b), c in self.terms.items()),
                   Fraction(0))

    def multiplicity(self) -> ExtRat:
        """Order of vanishing at the origin."""
        return w_order(self, WeightVector(1, 1))

    def valuation_in(self, axis: int) -> int:
        """Largest power of ``x1`` (axis 0) or ``x2`` (axis 1) dividing self."""
        if not self.terms:
            raise ZeroPolynomial("valuation of the zero polynomial")
        return min(m[axis] for m in self.terms)

    def divide_axis(self, axis: int, d: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            if m[axis] < d:
                raise ArithmeticError(f"not divisible by x{axis + 1}^{d}")
            e = list(m)
            e[axis] -= d
            out[tuple(e)] = c
        return Poly(out)

    def translate(self, p1, p2) -> "Poly":
        """``f(x1 + p1, x2 + p2)``: moves the point ``(p1, p2)`` to the origin."""
        if not p1 and not p2:
            return self
        return substitute(self, (Poly.x1() + p1, Poly.x2() + p2))

    def restrict(self, axis: int) -> "UPoly":
        """Restriction to the line ``x_{axis+1} = 0`` as a univariate in the other variable."""
        other = 1 - axis
        coeffs: dict[int, Fraction] = {}
        for m, c in self.terms.items():
            if m[axis] == 0:
                coeffs[m[other]] = c
        return UPoly.from_dict(coeffs)

    def partial(self, axis: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            if m[axis]:
                e = list(m)
                e[axis] -= 1
                out[tuple(e)] = c * m[axis]
        return Poly(out)

    def newton_vertices(self) -> list[Monomial]:
        """Vertices of the Newton polygon (support + positive quadrant)."""
        if not self.terms:
            return []
        lowest: dict[int, int] = {}
        for a, b in self.terms:
            if a not in lowest or b < lowest[a]:
                lowest[a] = b
        pts = sorted(lowest.items())
        cur = pts[0]
        vertices = [cur]
        while True:
            best = None
            for p in pts:
                if p[0] <= cur[0] or p[1] >= cur[1]:
                    continue
                slope = Fraction(p[1] - cur[1], p[0] - cur[0])
                if best is None or slope < best[0] or (slope == best[0] and p[0] > best[1][0]):
                    best = (slope, p)
            if best is None:
                return vertices
            cur = best[1]
            vertices.append(cur)


def _coerce(v) -> Poly:
    if isinstance(v, Poly):
        return v
    return Poly.const(v)


X1 = Poly.x1()
X2 = Poly.x2()


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: Poly, names=("x", "y")) -> str:
    """Render in graded-lex order, e.g. ``x^2 + y^3 - 2/3*x*y``."""
    if not f.terms:
        return "0"
    pieces = []
    for (a, b), c in f.sorted_terms():
        factors = []
        for name, e in zip(names, (a, b)):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = _fmt_rat(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _fmt_rat(mag) + "*" + "*".join(factors)
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# weights

@dataclass(frozen=True)
class WeightVector:
    w1: int
    w2: int
    g: int = field(init=False)
    w1p: int = field(init=False)
    w2p: int = field(init=False)

    def __post_init__(self):
        if self.w1 < 1 or self.w2 < 1:
            raise ValueError(f"weights must be positive, got ({self.w1}, {self.w2})")
        g = gcd(self.w1, self.w2)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "w1p", self.w1 // g)
        object.__setattr__(self, "w2p", self.w2 // g)

    @property
    def reduced(self) -> bool:
        return self.g == 1

    def degree(self, m: Monomial) -> int:
        return m[0] * self.w1 + m[1] * self.w2


def w_order(f: Poly, w: WeightVector) -> ExtRat:
    """Weighted order: min of ``e1*w1 + e2*w2`` over the support."""
    if not f.terms:
        return POS_INF
    return Fraction(min(m[0] * w.w1 + m[1] * w.w2 for m in f.terms))


def initial_form(f: Poly, w: WeightVector) -> Poly:
    if not f.terms:
        raise ZeroPolynomial("initial form of zero")
    d = min(w.degree(m) for m in f.terms)
    return Poly({m: c for m, c in f.terms.items() if w.degree(m) == d})


def substitute(f: Poly, images) -> Poly:
    """Replace ``x1, x2`` by the two image polynomials and expand."""
    g1, g2 = (_coerce(p) for p in images)
    pow1: dict[int, Poly] = {0: Poly.const(1)}
    pow2: dict[int, Poly] = {0: Poly.const(1)}

    def power(cache, base, n):
        if n not in cache:
            k = max(e for e in cache if e < n)
            p = cache[k]
            for _ in range(n - k):
                p = p * base
            cache[n] = p  # intermediate powers are not cached
        return cache[n]

    out: dict[Monomial, Fraction] = {}
    for (a, b), c in sorted(f.terms.items()):
        term = power(pow1, g1, a) * power(pow2, g2, b)
        for m, d in term.terms.items():
            out[m] = out.get(m, 0) + c * d
    return Poly(out)


def shift_x1(f: Poly, lam, k: int) -> Poly:
    """``f(x1 - lam*x2^k, x2)``, expanded termwise by the binomial theorem."""
    lam = Fraction(lam)
    if lam == 0:
        return f
    out: dict[Monomial, Fraction] = {}
    for (a, b), c in f.terms.items():
        p = Fraction(1)
        for i in range(a + 1):
            m = (a - i, b + k * i)
            out[m] = out.get(m, 0) + comb(a, i) * p * c
            p *= -lam
    return Poly(out)


def shift_x1_primitive(f: Poly, lam, k: int) -> Poly:
    """``f(x1 - lam*x2^k, x2)`` up to a nonzero constant, with coprime integer coefficients.

    Everything runs on integers, which matters for the long shift chains of
    the weighted search.
    """
    lam = Fraction(lam)
    p, q = lam.numerator, lam.denominator
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    d1 = max((a for a, _ in f.terms), default=0)
    out: dict[Monomial, int] = {}
    for (a, b), c in f.terms.items():
        # coefficient of x1^(a-i): comb(a, i) * c * q^(d1-i) * (-p)^i
        c = int(c * den) * q ** d1
        for i in range(a + 1):
            m = (a - i, b + k * i)
            out[m] = out.get(m, 0) + comb(a, i) * c
            c = c // q * -p
    g = 0
    for c in out.values():
        g = gcd(g, c)
    return Poly({m: c // g for m, c in out.items() if c}) if g else Poly()


# ---------------------------------------------------------------------------
# univariate helpers (used for points on an exceptional line and for roots
# of dehomogenized initial forms)

class UPoly:
    """Dense univariate polynomial, coefficients low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def from_dict(cls, d: dict[int, Fraction]) -> "UPoly":
        if not d:
            return cls()
        n = max(d)
        return cls(d.get(i, 0) for i in range(n + 1))

    @classmethod
    def linear_root(cls, r) -> "UPoly":
        return cls([-as_fraction(r), 1])

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.c == other.c

    def __repr__(self):
        return f"UPoly({[str(x) for x in self.c]})"

    def __bool__(self):
        return bool(self.c)

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def __mul__(self, other: "UPoly") -> "UPoly":
        if not self.c or not other.c:
            return UPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return UPoly(out)

    def monic(self) -> "UPoly":
        lc = self.c[-1]
        return UPoly(x / lc for x in self.c)

    def derivative(self) -> "UPoly":
        return UPoly(i * a for i, a in enumerate(self.c) if i)

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not other.c:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.c)
        q = [Fraction(0)] * max(len(rem) - len(other.c) + 1, 0)
        lead = other.c[-1]
        for i in range(len(rem) - len(other.c), -1, -1):
            coef = rem[i + len(other.c) - 1] / lead
            q[i] = coef
            if coef:
                for j, b in enumerate(other.c):
                    rem[i + j] -= coef * b
        return UPoly(q), UPoly(rem[:len(other.c) - 1])

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while b.c:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a.c else a

    def squarefree_part(self) -> "UPoly":
        if self.deg <= 0:
            return self
        return self.divmod(self.gcd(self.derivative()))[0].monic()

    def rational_roots(self) -> list[tuple[Fraction, int]]:
        """Rational roots with multiplicities, ascending."""
        if not self.c:
            raise ZeroPolynomial("roots of the zero polynomial")
        out = []
        p = self
        for r in _rational_root_candidates(self.squarefree_part()):
            m = 0
            while p.deg > 0 and p(r) == 0:
                p = p.divmod(UPoly.linear_root(r))[0]
                m += 1
            if m:
                out.append((r, m))
        return sorted(out)


def _rational_root_candidates(f: UPoly) -> list[Fraction]:
    """Rational roots of a squarefree polynomial, via sympy's factorization over QQ."""
    if f.deg <= 0:
        return []
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(f.c))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    roots = []
    for fac, _ in factors:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            roots.append(Fraction(int(r.p), int(r.q)))
    return roots


# ---------------------------------------------------------------------------
# initial-form factorization

@dataclass(frozen=True)
class InitialFactorization:
    """``unit * x1^s1 * x2^s2 * prod (x1^w2p + lam*x2^w1p)^t * residual``."""

    unit: Fraction
    s1: int
    s2: int
    binomial_factors: tuple[tuple[Fraction, int], ...]
    residual: Poly
    w: WeightVector

    def binomial(self, lam) -> Poly:
        return Poly({(self.w.w2p, 0): 1, (0, self.w.w1p): lam})

    def expand(self) -> Poly:
        out = Poly.monomial(self.s1, self.s2, self.unit) * self.residual
        for lam, t in self.binomial_factors:
            out = out * self.binomial(lam) ** t
        return out


def factor_initial_form(h: Poly, w: WeightVector) -> InitialFactorization:
    """Split a weighted-homogeneous form into monomial, binomial and residual parts.

    Only rational ``lam`` are extracted; anything that does not split over
    the rationals stays in ``residual`` (normalized with leading x1-term 1).
    """
    if not h.terms:
        raise ZeroPolynomial("factorization of zero")
    if not w.reduced:
        w = WeightVector(w.w1p, w.w2p)
    if len({w.degree(m) for m in h.terms}) != 1:
        raise NotHomogeneous(f"{h} is not homogeneous for weights ({w.w1}, {w.w2})")
    s1 = min(m[0] for m in h.terms)
    s2 = min(m[1] for m in h.terms)
    # cofactor terms are x1^(w2p*i) * x2^(w1p*(n-i)); read off q(X) = sum c_i X^i
    q = {}
    for (a, b), c in h.terms.items():
        i, rem = divmod(a - s1, w.w2p)
        assert rem == 0
        q[i] = c
    qpoly = UPoly.from_dict(q)
    unit = qpoly.c[-1]
    rest = qpoly.monic()
    factors = []
    for root, mult in rest.rational_roots():
        factors.append((-root, mult))
        for _ in range(mult):
            rest = rest.divmod(UPoly.linear_root(root))[0]
    n = rest.deg
    residual = Poly({(w.w2p * i, w.w1p * (n - i)): c for i, c in enumerate(rest.c)})
    factors.sort()
    return InitialFactorization(unit, s1, s2, tuple(factors), residual, w)


# ---------------------------------------------------------------------------
# gcd / squarefree, backed by sympy's multivariate routines over QQ

_S1, _S2 = sympy.symbols("x1 x2")


def _to_sympy(f: Poly) -> sympy.Poly:
    rep = {m: sympy.Rational(c.numerator, c.denominator) for m, c in f.terms.items()}
    if not rep:
        return sympy.Poly(0, _S1, _S2, domain="QQ")
    return sympy.Poly.from_dict(rep, _S1, _S2, domain="QQ")


def _from_sympy(p: sympy.Poly) -> Poly:
    return Poly({m: Fraction(int(c.p), int(c.q)) for m, c in p.as_dict().items()})


def bivariate_gcd(f: Poly, g: Poly) -> Poly:
    """Monic (graded-lex) gcd in Q[x1, x2]."""
    if not f and not g:
        raise ZeroPolynomial("gcd(0, 0)")
    if not g:
        return f.monic()
    if not f:
        return g.monic()
    return _from_sympy(sympy.gcd(_to_sympy(f), _to_sympy(g))).monic()


def exact_divide(f: Poly, g: Poly) -> Poly:
    q, r = sympy.div(_to_sympy(f), _to_sympy(g))
    if not r.is_zero:
        raise ArithmeticError(f"{g} does not divide {f}")
    return _from_sympy(q)


def squarefree_decompose(f: Poly) -> list[tuple[Poly, int]]:
    """``f = unit * prod factor^mult`` with monic, squarefree, pairwise coprime factors."""
    if not f:
        raise ZeroPolynomial("squarefree decomposition of zero")
    _, parts = sympy.sqf_list(_to_sympy(f))
    out = []
    for p, mult in parts:
        fac = _from_sympy(p).monic()
        if not fac.is_constant():
            out.append((fac, int(mult)))
    out.sort(key=lambda fm: (fm[1], format_poly(fm[0])))
    return out

"""R-ideals: formal products of ideals with positive rational exponents.

Orders of ideals along the valuations used in this package are computed
as the minimum over generators.  That is legitimate because every
valuation in play (weighted orders, orders along exceptional divisors,
multiplicity at a point) is a valuation: it is additive on products and
the value of an ideal is attained on one of its generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    POS_INF, Poly, WeightVector, as_fraction, bivariate_gcd, exact_divide,
    format_poly, squarefree_decompose, substitute, w_order,
)


class NotDivisible(ArithmeticError):
    pass


class NotMinimal(ValueError):
    pass


class ZeroIdeal(ValueError):
    pass


class Ideal:
    """Finitely generated ideal of Q[x1, x2], considered at the origin.

    Zero generators are dropped.  An ideal with a generator that does not
    vanish at the origin is a unit ideal there and is stored as ``(1)``.
    """

    __slots__ = ("generators",)

    def __init__(self, generators: Sequence[Poly]):
        gens = [g if isinstance(g, Poly) else Poly.const(g) for g in generators]
        gens = [g for g in gens if g]
        if not gens:
            raise ZeroIdeal("ideal has no nonzero generator")
        if any(g.constant_term() for g in gens):
            gens = [Poly.const(1)]
        self.generators: tuple[Poly, ...] = tuple(gens)

    @classmethod
    def unit(cls) -> "Ideal":
        return cls([Poly.const(1)])

    @classmethod
    def maximal(cls) -> "Ideal":
        return cls([Poly.x1(), Poly.x2()])

    @property
    def is_trivial(self) -> bool:
        return self.generators == (Poly.const(1),)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return "Ideal(" + ", ".join(format_poly(g) for g in self.generators) + ")"

    def order(self) -> Fraction:
        """Multiplicity at the origin (0 for the unit ideal)."""
        return min(g.multiplicity() for g in self.generators)

    def w_order(self, w: WeightVector) -> Fraction:
        return min(w_order(g, w) for g in self.generators)

    def transformed(self, images) -> "Ideal":
        return Ideal([substitute(g, images) for g in self.generators])


@dataclass(frozen=True)
class RIdeal:
    """``prod_j ideal_j ^ exponent_j``; the empty product is the trivial R-ideal."""

    factors: tuple[tuple[Ideal, Fraction], ...] = ()

    def __post_init__(self):
        fixed = []
        for ideal, r in self.factors:
            r = as_fraction(r)
            if r <= 0:
                raise ValueError(f"exponent must be positive, got {r}")
            fixed.append((ideal, r))
        object.__setattr__(self, "factors", tuple(fixed))

    @classmethod
    def single(cls, generators, exponent=1) -> "RIdeal":
        return cls(((Ideal(generators), as_fraction(exponent)),))

    @classmethod
    def maximal(cls, exponent=1) -> "RIdeal":
        return cls(((Ideal.maximal(), as_fraction(exponent)),))

    @property
    def is_trivial(self) -> bool:
        return all(ideal.is_trivial for ideal, _ in self.factors)

    @property
    def exponents(self) -> list[Fraction]:
        return [r for _, r in self.factors]

    def all_generators(self) -> list[Poly]:
        return [g for ideal, _ in self.factors for g in ideal.generators]

    def __str__(self):
        from .parse import format_rideal
        return format_rideal(self)


def ord_at_point(a: RIdeal, point=(0, 0)) -> Fraction:
    """``sum_j r_j * mult_point(ideal_j)``."""
    p1, p2 = (as_fraction(c) for c in point)
    total = Fraction(0)
    for ideal, r in a.factors:
        gens = [g.translate(p1, p2) for g in ideal.generators]
        total += r * min(g.multiplicity() for g in gens)
    return total


def w_ord_ideal(a: RIdeal, coords, w: WeightVector) -> Fraction:
    """Order of ``a`` along the weighted blow-up with weights ``w`` in ``coords``.

    ``coords`` is anything with an ``images`` attribute (old coordinates as
    polynomials in the new ones) or a bare pair of images; ``None`` means
    identity.
    """
    if coords is None:
        images = None
    else:
        images = getattr(coords, "images", coords)
    total = Fraction(0)
    for ideal, r in a.factors:
        gens = ideal.generators if images is None else [substitute(g, images) for g in ideal.generators]
        total += r * min(w_order(g, w) for g in gens)
    return total


def weak_transform_ideal(ideal: Ideal, axis: int, d: int) -> Ideal:
    """Divide every generator by ``x_{axis+1}^d``; ``d`` must be the exact common power."""
    vals = [g.valuation_in(axis) for g in ideal.generators]
    if d > min(vals):
        raise NotDivisible(f"generators are not all divisible by x{axis + 1}^{d}")
    if d < min(vals):
        raise NotMinimal(f"x{axis + 1}^{d} is not the full common power ({min(vals)})")
    return Ideal([g.divide_axis(axis, d) for g in ideal.generators])


def scale_exponent(a: RIdeal, t) -> RIdeal:
    t = as_fraction(t)
    if t <= 0:
        raise ValueError("scaling factor must be positive")
    return RIdeal(tuple((ideal, r * t) for ideal, r in a.factors))


# ---------------------------------------------------------------------------
# divisorial split

@dataclass(frozen=True)
class DivisorialSplit:
    """Curve part and finite-colength residual of every factor.

    ``curves`` is a pairwise coprime list of monic squarefree polynomials
    vanishing at the origin.  ``multiplicities[j][m]`` is the exponent of
    ``curves[m]`` in the principal part of factor ``j``; the curve carries
    coefficient ``sum_j r_j * multiplicities[j][m]`` in the boundary.
    """

    curves: tuple[Poly, ...]
    multiplicities: tuple[tuple[int, ...], ...]
    residuals: tuple[Ideal, ...]
    exponents: tuple[Fraction, ...]

    def coefficient(self, m: int) -> Fraction:
        return sum((r * mult[m] for r, mult in zip(self.exponents, self.multiplicities)), Fraction(0))

    @property
    def coefficients(self) -> list[Fraction]:
        return [self.coefficient(m) for m in range(len(self.curves))]

    def per_factor(self) -> list[tuple[list[tuple[Poly, Fraction]], Ideal]]:
        out = []
        for r, mult, res in zip(self.exponents, self.multiplicities, self.residuals):
            principal = [(c, r * e) for c, e in zip(self.curves, mult) if e]
            out.append((principal, res))
        return out


def _coprime_refine(pieces: list[tuple[Poly, list[int]]]) -> list[tuple[Poly, list[int]]]:
    """Refine squarefree pieces with multiplicity vectors into a coprime basis."""
    pieces = [(p, list(v)) for p, v in pieces if not p.is_constant()]
    changed = True
    while changed:
        changed = False
        for i in range(len(pieces)):
            for j in range(i + 1, len(pieces)):
                p, u = pieces[i]
                q, v = pieces[j]
                g = bivariate_gcd(p, q)
                if g.is_constant():
                    continue
                new = [(exact_divide(p, g).monic(), u), (exact_divide(q, g).monic(), v),
                       (g, [a + b for a, b in zip(u, v)])]
                rest = [pc for k, pc in enumerate(pieces) if k not in (i, j)]
                pieces = rest + [pc for pc in new if not pc[0].is_constant()]
                changed = True
                break
            if changed:
                break
    # merge identical polynomials (cannot happen after refinement, kept for safety)
    merged: dict[Poly, list[int]] = {}
    for p, v in pieces:
        if p in merged:
            merged[p] = [a + b for a, b in zip(merged[p], v)]
        else:
            merged[p] = v
    return list(merged.items())


def divisorial_split(a: RIdeal) -> DivisorialSplit:
    nfac = len(a.factors)
    pieces: list[tuple[Poly, list[int]]] = []
    residuals = []
    for j, (ideal, _) in enumerate(a.factors):
        if ideal.is_trivial:
            residuals.append(ideal)
            continue
        gens = ideal.generators
        g = gens[0]
        for h in gens[1:]:
            g = bivariate_gcd(g, h)
        g = g.monic()
        residuals.append(Ideal([exact_divide(h, g) for h in gens]))
        for fac, mult in squarefree_decompose(g):
            vec = [0] * nfac
            vec[j] = mult
            pieces.append((fac, vec))
    refined = _coprime_refine(pieces)
    # components not through the origin are units in the germ
    refined = [(p, v) for p, v in refined if p.constant_term() == 0]
    refined.sort(key=lambda pv: (pv[0].degree(), format_poly(pv[0])))
    curves = tuple(p for p, _ in refined)
    mults = tuple(tuple(v[j] for _, v in refined) for j in range(nfac))
    return DivisorialSplit(curves, mults, tuple(residuals), tuple(a.exponents))


def curve_coefficients(a: RIdeal) -> list[tuple[Poly, Fraction]]:
    split = divisorial_split(a)
    return list(zip(split.curves, split.coefficients))


__all__ = [
    "Ideal", "RIdeal", "DivisorialSplit", "NotDivisible", "NotMinimal", "ZeroIdeal",
    "ord_at_point", "w_ord_ideal", "weak_transform_ideal", "scale_exponent",
    "divisorial_split", "curve_coefficients", "POS_INF",
]

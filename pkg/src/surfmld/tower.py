"""Log resolution of an R-ideal over the origin by point blow-ups.

The resolution runs on local germs.  A germ is a point of some chart,
translated to the origin, together with

* the map expressing the root coordinates in the local coordinates,
* the exceptional divisors through the point, each a coordinate axis,
* the strict transforms of the curve components of the boundary,
* the weak transforms of the finite-colength residual ideals.

Blowing up a germ creates the standard charts ``(s, t) -> (s, s*t)`` (chart
A, exceptional divisor ``s = 0``) and ``(u, v) -> (u*v, v)`` (chart B,
exceptional divisor ``v = 0``).  Chart A sees every point of the new
divisor except one, which is the origin of chart B.

A point is resolved when every residual weak transform is a unit there
and the total transform of the boundary (exceptional axes plus curve
transforms) is a normal crossing: multiplicity at most two, with two
distinct tangents in the double case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import (
    NEG_INF, POS_INF, ExtRat, Poly, UPoly, WeightVector, substitute, w_order,
)
from .rideal import RIdeal, divisorial_split


class IrrationalCenter(ValueError):
    """A point that must be blown up is not defined over the rationals."""


class MaxStepsExceeded(RuntimeError):
    pass


class NotResolved(ValueError):
    pass


S = Poly.x1()
T = Poly.x2()
_UNIT11 = WeightVector(1, 1)


@dataclass
class DivisorRecord:
    id: str
    kind: str  # "exceptional" or "strict_curve"
    k: Optional[int]
    d: tuple[Fraction, ...]
    coeff: Fraction
    a: Fraction
    parents: tuple[str, ...] = ()
    center_order: Optional[Fraction] = None
    curve: Optional[Poly] = None

    @property
    def exceptional(self) -> bool:
        return self.kind == "exceptional"


@dataclass
class Chart:
    id: int
    parent_id: Optional[int]
    birth_map: tuple[Poly, Poly]
    exceptional_axes: dict[str, int]
    point_translate: tuple[Fraction, Fraction]


@dataclass
class _Germ:
    chart_id: int
    point: tuple[Fraction, Fraction]
    images: tuple[Poly, Poly]
    axes: list[tuple[str, int]]
    pieces: list[Poly]
    residuals: list[list[Poly]]
    prev_order: Optional[Fraction] = None
    prev_divisor: Optional[str] = None


@dataclass
class BlowupTower:
    rideal: RIdeal
    exponents: tuple[Fraction, ...]
    charts: list[Chart] = field(default_factory=list)
    divisors: list[DivisorRecord] = field(default_factory=list)
    # root coordinates in the chart where the divisor is ``s = 0``
    divisor_maps: dict[str, tuple[Poly, Poly]] = field(default_factory=dict)
    edges: set = field(default_factory=set)
    diagnostics: list[str] = field(default_factory=list)
    violations: int = 0
    resolved: bool = False

    @property
    def exceptionals(self) -> list[DivisorRecord]:
        return [d for d in self.divisors if d.exceptional]

    @property
    def curves(self) -> list[DivisorRecord]:
        return [d for d in self.divisors if not d.exceptional]

    @property
    def steps(self) -> int:
        return len(self.exceptionals)

    def record(self, div_id: str) -> DivisorRecord:
        for d in self.divisors:
            if d.id == div_id:
                return d
        raise KeyError(div_id)


# ---------------------------------------------------------------------------
# local helpers

def _mult(f: Poly) -> int:
    return int(w_order(f, _UNIT11))


def _ideal_mult(gens: list[Poly]) -> int:
    return min(_mult(g) for g in gens)


def _chart_a(f: Poly, d: int) -> Poly:
    return substitute(f, (S, S * T)).divide_axis(0, d)


def _chart_b(f: Poly, d: int) -> Poly:
    return substitute(f, (S * T, T)).divide_axis(1, d)


def _is_good(germ: _Germ) -> bool:
    for gens in germ.residuals:
        if all(g.constant_term() == 0 for g in gens):
            return False
    total = Poly.const(1)
    for _, axis in germ.axes:
        total = total * (S if axis == 0 else T)
    for h in germ.pieces:
        if h.constant_term() == 0:
            total = total * h
    m = _mult(total)
    if m <= 1:
        return True
    if m > 2:
        return False
    q = {mon: c for mon, c in total.terms.items() if sum(mon) == 2}
    a, b, c = q.get((2, 0), 0), q.get((1, 1), 0), q.get((0, 2), 0)
    return b * b - 4 * a * c != 0


def _ordinary_point_defect(germ: _Germ) -> UPoly:
    """Univariate polynomial (in t on ``s = 0``) whose roots are the non-resolved points of chart A."""
    product = UPoly([1])
    for h in germ.pieces:
        r = h.restrict(0)
        if r.deg > 0:
            product = product * r
    bad = product.gcd(product.derivative()) if product.deg > 0 else UPoly([1])
    for gens in germ.residuals:
        g = UPoly()
        for gen in gens:
            r = gen.restrict(0)
            if r:
                g = g.gcd(r) if g else r.monic()
        if g.deg > 0:
            bad = _lcm(bad, g)
    if any(axis == 1 for _, axis in germ.axes) and product(0) == 0:
        bad = _lcm(bad, UPoly([0, 1]))
    return bad


def _boundary_trace(germ: _Germ) -> UPoly:
    """Squarefree polynomial whose roots are where curves or base loci meet ``s = 0``.

    All of these points are required to be rational, including transverse
    crossings that need no further blow-up.
    """
    trace = UPoly([1])
    for h in germ.pieces:
        r = h.restrict(0)
        if r.deg > 0:
            trace = _lcm(trace, r.monic())
    for gens in germ.residuals:
        g = UPoly()
        for gen in gens:
            r = gen.restrict(0)
            if r:
                g = g.gcd(r) if g else r.monic()
        if g.deg > 0:
            trace = _lcm(trace, g)
    return trace.squarefree_part() if trace.deg > 0 else trace


def _lcm(f: UPoly, g: UPoly) -> UPoly:
    return (f * g).divmod(f.gcd(g))[0].monic()


# ---------------------------------------------------------------------------

class _Resolver:
    def __init__(self, a: RIdeal, max_steps: int):
        self.a = a
        self.max_steps = max_steps
        self.split = divisorial_split(a)
        self.tower = BlowupTower(a, tuple(a.exponents))
        self.nfac = len(a.factors)

    def run(self) -> BlowupTower:
        split = self.split
        root_chart = Chart(0, None, (S, T), {}, (Fraction(0), Fraction(0)))
        self.tower.charts.append(root_chart)
        residuals = []
        for res in split.residuals:
            residuals.append(list(res.generators))
        root = _Germ(0, (Fraction(0), Fraction(0)), (S, T), [], list(split.curves), residuals)
        stack = [root]
        while stack:
            germ = stack.pop()
            if germ is not root and _is_good(germ):
                continue
            stack.extend(reversed(self.blow_up(germ)))
        self._add_curve_records()
        self.tower.resolved = True
        return self.tower

    def _local_order(self, germ: _Germ, j: int) -> int:
        total = 0
        for m, h in enumerate(germ.pieces):
            e = self.split.multiplicities[j][m]
            if e:
                total += e * _mult(h)
        return total + _ideal_mult(germ.residuals[j])

    def blow_up(self, germ: _Germ) -> list[_Germ]:
        tw = self.tower
        if tw.steps >= self.max_steps:
            raise MaxStepsExceeded(f"resolution needs more than {self.max_steps} blow-ups")
        parents = [tw.record(div_id) for div_id, _ in germ.axes]
        local = [self._local_order(germ, j) for j in range(self.nfac)]
        d = tuple(Fraction(local[j]) + sum((p.d[j] for p in parents), Fraction(0))
                  for j in range(self.nfac))
        k = 1 + sum(p.k for p in parents)
        coeff = sum((r * dj for r, dj in zip(tw.exponents, d)), Fraction(0))
        div_id = f"E{tw.steps + 1}"
        center_order = sum((r * lj for r, lj in zip(tw.exponents, local)), Fraction(0))
        rec = DivisorRecord(div_id, "exceptional", k, d, coeff, 1 + k - coeff,
                            tuple(p.id for p in parents), center_order)
        tw.divisors.append(rec)
        self._check(rec, parents, germ)
        for p in parents:
            tw.edges.add((p.id, div_id))
        if len(parents) == 2:
            tw.edges.discard((parents[0].id, parents[1].id))
            tw.edges.discard((parents[1].id, parents[0].id))

        mults = [_mult(h) for h in germ.pieces]
        rmults = [_ideal_mult(gens) for gens in germ.residuals]
        axes_by = {axis: div for div, axis in germ.axes}

        # chart A: (s, t) -> (s, s*t); new divisor s = 0, old x2-axis divisor stays t = 0
        images_a = (substitute(germ.images[0], (S, S * T)), substitute(germ.images[1], (S, S * T)))
        tw.divisor_maps[div_id] = images_a
        axes_a = [(div_id, 0)] + ([(axes_by[1], 1)] if 1 in axes_by else [])
        chart_a = Chart(len(tw.charts), germ.chart_id, self._birth(germ.point, (S, S * T)),
                        dict(axes_a), germ.point)
        tw.charts.append(chart_a)
        germ_a = _Germ(chart_a.id, (Fraction(0), Fraction(0)), images_a, axes_a,
                       [_chart_a(h, m) for h, m in zip(germ.pieces, mults)],
                       [[_chart_a(g, m) for g in gens] for gens, m in zip(germ.residuals, rmults)],
                       center_order, div_id)

        # chart B: (u, v) -> (u*v, v); new divisor v = 0, old x1-axis divisor stays u = 0
        images_b = (substitute(germ.images[0], (S * T, T)), substitute(germ.images[1], (S * T, T)))
        axes_b = ([(axes_by[0], 0)] if 0 in axes_by else []) + [(div_id, 1)]
        chart_b = Chart(len(tw.charts), germ.chart_id, self._birth(germ.point, (S * T, T)),
                        dict(axes_b), germ.point)
        tw.charts.append(chart_b)
        germ_b = _Germ(chart_b.id, (Fraction(0), Fraction(0)), images_b, axes_b,
                       [_chart_b(h, m) for h, m in zip(germ.pieces, mults)],
                       [[_chart_b(g, m) for g in gens] for gens, m in zip(germ.residuals, rmults)],
                       center_order, div_id)

        children = []
        support = _boundary_trace(germ_a)
        if support.deg > 0:
            roots = support.rational_roots()
            if sum(m for _, m in roots) < support.deg:
                raise IrrationalCenter(
                    f"boundary meets {div_id} at non-rational points "
                    f"(trace polynomial {support})")
        defect = _ordinary_point_defect(germ_a)
        centers = [c for c, _ in defect.rational_roots()] if defect.deg > 0 else []
        for c in centers:
            child = self._translate(germ_a, c)
            if not _is_good(child):
                children.append(child)
        if not _is_good(germ_b):
            children.append(germ_b)

        for m, h in enumerate(germ_a.pieces):
            r = h.restrict(0)
            for c in centers:
                while r.deg > 0 and r(c) == 0:
                    r = r.divmod(UPoly.linear_root(c))[0]
            on_b = germ_b.pieces[m].constant_term() == 0 and _is_good(germ_b)
            if r.deg > 0 or on_b:
                tw.edges.add((div_id, f"C{m + 1}"))
            else:
                tw.edges.discard((div_id, f"C{m + 1}"))
        return children

    @staticmethod
    def _birth(point, chart_map):
        return (chart_map[0] + point[0], chart_map[1] + point[1])

    @staticmethod
    def _translate(germ: _Germ, c: Fraction) -> _Germ:
        shift = (S, T + c)
        axes = [(div, axis) for div, axis in germ.axes if axis == 0 or c == 0]
        return _Germ(germ.chart_id, (Fraction(0), c),
                     (substitute(germ.images[0], shift), substitute(germ.images[1], shift)),
                     axes,
                     [h.translate(0, c) for h in germ.pieces],
                     [[g.translate(0, c) for g in gens] for gens in germ.residuals],
                     germ.prev_order, germ.prev_divisor)

    def _check(self, rec: DivisorRecord, parents: list[DivisorRecord], germ: _Germ):
        tw = self.tower
        via_recursion = sum((p.a - 1 for p in parents), Fraction(0)) + 2 - rec.center_order
        ok = via_recursion == rec.a
        tw.diagnostics.append(
            f"ledger recursion {rec.id}: {'pass' if ok else 'FAIL'} "
            f"(a = {rec.a}, recursion gives {via_recursion})")
        if not ok:
            tw.violations += 1
        if germ.prev_order is not None:
            mono = rec.center_order <= germ.prev_order
            tw.diagnostics.append(
                f"order monotonicity {germ.prev_divisor}->{rec.id}: {'pass' if mono else 'FAIL'} "
                f"({rec.center_order} <= {germ.prev_order})")
            if not mono:
                tw.violations += 1

    def _add_curve_records(self):
        tw = self.tower
        for m, curve in enumerate(self.split.curves):
            d = tuple(Fraction(self.split.multiplicities[j][m]) for j in range(self.nfac))
            coeff = self.split.coefficient(m)
            tw.divisors.append(DivisorRecord(f"C{m + 1}", "strict_curve", None, d, coeff,
                                             1 - coeff, (), None, curve))


def log_resolve(a: RIdeal, max_steps: int = 200) -> BlowupTower:
    """Principalize ``a`` over the origin; always starts with the blow-up of the origin."""
    return _Resolver(a, max_steps).run()


def blow_up_point(a: RIdeal) -> DivisorRecord:
    """Record of the first blow-up (the ordinary blow-up of the origin)."""
    return log_resolve(a).exceptionals[0]


def divisor_ledger(tower: BlowupTower) -> list[DivisorRecord]:
    if not tower.resolved:
        raise NotResolved("tower is not resolved")
    return list(tower.divisors)


def mld_from_tower(tower: BlowupTower) -> ExtRat:
    if not tower.resolved:
        raise NotResolved("tower is not resolved")
    if any(d.a < 0 for d in tower.divisors):
        return NEG_INF
    return min(d.a for d in tower.exceptionals)


def mld_witness(tower: BlowupTower) -> DivisorRecord:
    """Earliest-created record attaining the mld (a negative one for non-lc pairs)."""
    neg = [d for d in tower.divisors if d.a < 0]
    if neg:
        return neg[0]
    best = min(d.a for d in tower.exceptionals)
    return next(d for d in tower.exceptionals if d.a == best)


def lct_from_tower(tower: BlowupTower) -> ExtRat:
    """Largest t with ``a^t`` lc at the origin, exponents of ``a`` included."""
    if not tower.resolved:
        raise NotResolved("tower is not resolved")
    ratios = []
    for d in tower.divisors:
        if d.coeff > 0:
            ratios.append((1 + (d.k or 0)) / d.coeff)
    return min(ratios) if ratios else POS_INF


def lct_witnesses(tower: BlowupTower) -> list[DivisorRecord]:
    lct = lct_from_tower(tower)
    return [d for d in tower.divisors if d.coeff > 0 and (1 + (d.k or 0)) / d.coeff == lct]


def ord_along_divisor(tower: BlowupTower, div_id: str, b: RIdeal) -> Fraction:
    """Order of another R-ideal ``b`` along an exceptional divisor of the tower."""
    if not tower.resolved:
        raise NotResolved("tower is not resolved")
    images = tower.divisor_maps[div_id]
    total = Fraction(0)
    for ideal, r in b.factors:
        total += r * min(substitute(g, images).valuation_in(0) for g in ideal.generators)
    return total

"""Weighted blow-ups of the plane germ and the mld search over them.

A weighted blow-up is named by coordinates ``(y1, y2)`` and coprime
weights ``w1 >= w2``; its exceptional divisor F is the monomial valuation
``ord_F(y1^a y2^b) = a*w1 + b*w2`` and its log discrepancy is
``w1 + w2 - ord_F(a)``.

For fixed weights the valuation only depends on ``y1`` modulo terms of
weight ``>= w1``, so it suffices to look at ``y1 = l(x) + sum lam_k y2^k``
with ``k*w2 < w1``.  The best coordinates for an ideal follow its branches:
at level ``k`` the candidates for ``lam_k`` are read off the rational
binomial factors ``(y1 + lam*y2^k)`` of the ``(k, 1)``-initial forms of the
generators.  A coordinate that matches no branch never does better than
one that matches some branch, so the tree of matched coordinates
contains a maximizer for every weight vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .algebra import (
    NEG_INF, ExtRat, Poly, WeightVector, factor_initial_form, initial_form,
    shift_x1_primitive, substitute, w_order,
)
from .rideal import RIdeal, w_ord_ideal

X1, X2 = Poly.x1(), Poly.x2()


class BudgetExceeded(RuntimeError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NonSplitFactor(ValueError):
    pass


DEFAULT_BUDGET = 500_000


@dataclass(frozen=True)
class CoordinateChange:
    """New parameters ``y = linear @ x``, then ``y1 <- y1 + lam*y2^k`` per shift."""

    linear: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] = (
        (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    shifts: tuple[tuple[Fraction, int], ...] = ()

    def __post_init__(self):
        (a, b), (c, d) = self.linear
        if a * d - b * c == 0:
            raise ValueError("linear part is singular")
        for _, k in self.shifts:
            if k < 1:
                raise ValueError("shift exponents must be positive")

    @classmethod
    def identity(cls) -> "CoordinateChange":
        return cls()

    @property
    def images(self) -> tuple[Poly, Poly]:
        """Original ``x1, x2`` as polynomials in the new parameters."""
        y1 = X1
        for lam, k in self.shifts:
            y1 = y1 - lam * X2 ** k
        y2 = X2
        (a, b), (c, d) = self.linear
        det = a * d - b * c
        return ((d * y1 - b * y2) * (1 / det), (-c * y1 + a * y2) * (1 / det))

    def with_shift(self, lam: Fraction, k: int) -> "CoordinateChange":
        return CoordinateChange(self.linear, self.shifts + ((lam, k),))

    def key(self):
        return (tuple(x for row in self.linear for x in row), self.shifts)

    def describe(self) -> str:
        (a, b), (c, d) = self.linear
        parts = []
        if self.linear != CoordinateChange().linear:
            parts.append(f"linear [[{a}, {b}], [{c}, {d}]]")
        for lam, k in self.shifts:
            parts.append(f"y1 <- y1 + {lam}*y2^{k}")
        return "; ".join(parts) if parts else "identity"


@dataclass(frozen=True)
class WeightedBlowup:
    coords: CoordinateChange
    w: WeightVector

    def __post_init__(self):
        if not self.w.reduced:
            raise ValueError("weights of a weighted blow-up must be coprime")
        if self.w.w1 < self.w.w2:
            raise ValueError("orientation: need w1 >= w2 (swap axes in the linear part)")

    def order(self, f: Poly):
        return w_order(substitute(f, self.coords.images), self.w)


@dataclass
class MldCertificate:
    value: ExtRat
    witness: Optional[WeightedBlowup]
    a_f: Fraction
    ord_f: Fraction
    nonsplit: bool = False
    bound: int = 0
    evaluations: int = 0


@dataclass
class OrderMaximum:
    coords: CoordinateChange
    order: Fraction
    nonsplit: bool = False


def weighted_discrepancy(a: RIdeal, wb: WeightedBlowup) -> Fraction:
    return wb.w.w1 + wb.w.w2 - w_ord_ideal(a, wb.coords, wb.w)


def remark_ideal(w: WeightVector) -> RIdeal:
    """``(x1^w2, x2^w1)^(1/w1 + 1/w2)``, whose weighted blow-up at ``w`` has log discrepancy 0."""
    if not w.reduced:
        raise ValueError("weights must be coprime")
    return RIdeal.single([X1 ** w.w2, X2 ** w.w1], Fraction(1, w.w1) + Fraction(1, w.w2))


# ---------------------------------------------------------------------------
# coordinate tree

@dataclass
class _Node:
    coords: CoordinateChange
    level: int
    gens: list[list[Poly]]
    vertices: list[list[list[tuple[int, int]]]] = field(init=False)

    def __post_init__(self):
        # weighted orders only see the Newton polygon
        self.vertices = [[g.newton_vertices() for g in factor] for factor in self.gens]


@dataclass
class _Counter:
    budget: int
    used: int = 0

    def spend(self, n: int = 1):
        self.used += n
        if self.used > self.budget:
            raise BudgetExceeded(f"search budget {self.budget} exhausted")


@dataclass
class CoordinateTree:
    """Coordinate systems following the rational branches of the generators."""

    a: RIdeal
    depth: int
    counter: _Counter
    nodes: list[_Node] = field(default_factory=list)
    nonsplit: bool = False
    frontier: list = field(default_factory=list)

    def __post_init__(self):
        gens = [list(ideal.generators) for ideal, _ in self.a.factors]
        root = _Node(CoordinateChange.identity(), 0, gens)
        self.nodes.append(root)
        self.counter.spend()
        self._explore(root, 1)

    def deepen(self, depth: int):
        """Continue every branch that stopped at the old depth."""
        if depth <= self.depth:
            return
        self.depth = depth
        pending, self.frontier = self.frontier, []
        for node, k in pending:
            self._explore(node, k)

    def _candidates(self, gens, k):
        w = WeightVector(k, 1)
        lams, cont, swap = set(), False, False
        for factor in gens:
            for g in factor:
                if g.is_constant():
                    continue
                fac = factor_initial_form(initial_form(g, w), w)
                if not fac.residual.is_constant():
                    self.nonsplit = True
                lams.update(lam for lam, _ in fac.binomial_factors)
                cont = cont or fac.s1 > 0
                swap = swap or fac.s2 > 0
        return sorted(lams), cont, swap

    def _explore(self, node: _Node, k: int):
        while True:
            if k > self.depth:
                self.frontier.append((node, k))
                return
            lams, cont, swap = self._candidates(node.gens, k)
            if k == 1 and swap:
                self._child(node, "swap", CoordinateChange(
                    ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))), k)
            for lam in lams:
                if k == 1:
                    coords = CoordinateChange(((Fraction(1), lam), (Fraction(0), Fraction(1))))
                else:
                    coords = node.coords.with_shift(lam, k)
                self._child(node, (lam, k), coords, k)
            if not cont:
                return
            k += 1

    def _child(self, node: _Node, op, coords, k):
        self.counter.spend()
        if op == "swap":
            gens = [[substitute(g, (X2, X1)) for g in f] for f in node.gens]
        else:
            gens = [[shift_x1_primitive(g, *op) for g in f] for f in node.gens]
        child = _Node(coords, k, gens)
        self.nodes.append(child)
        self._explore(child, k + 1)

    def valid(self, w: WeightVector) -> list[_Node]:
        return [n for n in self.nodes if n.level == 0 or n.level * w.w2 < w.w1]

    def order(self, node: _Node, w: WeightVector) -> Fraction:
        total = Fraction(0)
        w1, w2 = w.w1, w.w2
        for (_, r), factor in zip(self.a.factors, node.vertices):
            total += r * min(a * w1 + b * w2 for verts in factor for a, b in verts)
        return total

    def newton_extent(self) -> int:
        m = 0
        for node in self.nodes:
            for factor in node.vertices:
                for verts in factor:
                    for v in verts:
                        m = max(m, *v)
        return m


def _depth_for(w: WeightVector) -> int:
    # largest k with k*w2 < w1
    return (w.w1 - 1) // w.w2


def maximize_weighted_order(a: RIdeal, w: WeightVector, budget: int = DEFAULT_BUDGET) -> OrderMaximum:
    """Coordinates maximizing ``ord_F(a)`` for the weighted blow-up with weights ``w``."""
    if not w.reduced:
        raise ValueError("weights must be coprime")
    if w.w1 < w.w2:
        raise ValueError("orientation: need w1 >= w2")
    counter = _Counter(budget)
    tree = CoordinateTree(a, _depth_for(w), counter)
    best = None
    for node in tree.valid(w):
        counter.spend()
        o = tree.order(node, w)
        if best is None or o > best.order:
            best = OrderMaximum(node.coords, o, tree.nonsplit)
    return best


def _weights(lo: int, hi: int):
    """Coprime ``w1 >= w2 >= 1`` with ``lo < w1 + w2 <= hi``, ordered by (sum, w1)."""
    for total in range(max(lo + 1, 2), hi + 1):
        for w2 in range(total // 2, 0, -1):
            w1 = total - w2
            if gcd(w1, w2) == 1:
                yield WeightVector(w1, w2)


class _Search:
    def __init__(self, a: RIdeal, budget: int):
        self.a = a
        self.counter = _Counter(budget)
        self.tree: Optional[CoordinateTree] = None
        self.best: Optional[MldCertificate] = None
        self.bound = 0

    def ensure_depth(self, bound: int):
        depth = max(bound - 2, 0)
        if self.tree is None:
            self.tree = CoordinateTree(self.a, depth, self.counter)
        else:
            self.tree.deepen(depth)

    def scan(self, lo: int, hi: int):
        """Evaluate all weights with ``lo < w1 + w2 <= hi``; stop at the first negative."""
        self.ensure_depth(hi)
        tree = self.tree
        for w in _weights(lo, hi):
            for node in tree.valid(w):
                self.counter.spend()
                ord_f = tree.order(node, w)
                a_f = w.w1 + w.w2 - ord_f
                if self.best is None or a_f < self.best.a_f:
                    wb = WeightedBlowup(node.coords, w)
                    self.best = MldCertificate(a_f, wb, a_f, ord_f)
                    if a_f < 0:
                        self.bound = hi
                        return
        self.bound = hi

    def default_bound(self) -> int:
        """``2*M + 1`` for the largest Newton-vertex coordinate ``M`` seen in the tree.

        The tree is grown once, to the depth suggested by the root's Newton
        polygon; growing it further along a smooth branch would make ``M``
        track the depth instead of the geometry.
        """
        self.ensure_depth(2)
        first = max(2 * self.tree.newton_extent() + 1, 2)
        self.ensure_depth(first)
        return max(2 * self.tree.newton_extent() + 1, first)


def mld_weighted(a: RIdeal, weight_bound: Optional[int] = None, budget: int = DEFAULT_BUDGET,
                 max_bound: int = 10_000) -> MldCertificate:
    """Minimal log discrepancy at the origin, searched over weighted blow-ups.

    With ``weight_bound`` the search covers exactly the coprime weights with
    ``w1 + w2 <= weight_bound``.  Otherwise the bound starts from the Newton
    polygons of the generators in all explored coordinates and is doubled
    until the minimum stops changing.
    """
    search = _Search(a, budget)
    try:
        if weight_bound is not None:
            search.scan(0, weight_bound)
        else:
            bound = search.default_bound()
            search.scan(0, bound)
            while search.best.a_f >= 0 and 2 * bound <= max_bound:
                before = search.best.a_f
                search.scan(bound, 2 * bound)
                bound *= 2
                if search.best.a_f == before:
                    break
    except BudgetExceeded as exc:
        exc.best = search.best
        raise
    cert = search.best
    if cert.a_f < 0:
        cert.value = NEG_INF
    cert.nonsplit = search.tree.nonsplit
    cert.bound = search.bound
    cert.evaluations = search.counter.used
    return cert


def _probe_polys(a: RIdeal) -> list[Poly]:
    probes = [X1, X2, X1 + X2, X1 + X2 ** 2, X1 ** 2 + X2 ** 3]
    return probes + a.all_generators()


def enumerate_minimizers(a: RIdeal, value, weight_bound: int,
                         budget: int = DEFAULT_BUDGET) -> list[WeightedBlowup]:
    """Distinct weighted-blow-up divisors within the bound whose log discrepancy equals ``value``.

    Two candidates are the same divisor when they agree on the probe
    monomials and on every generator of ``a``.  Only coordinates of the
    branch tree are considered.
    """
    search = _Search(a, budget)
    search.ensure_depth(weight_bound)
    tree = search.tree
    probes = _probe_polys(a)
    seen = set()
    found = []
    for w in _weights(0, weight_bound):
        for node in tree.valid(w):
            search.counter.spend()
            if w.w1 + w.w2 - tree.order(node, w) != value:
                continue
            wb = WeightedBlowup(node.coords, w)
            signature = tuple(wb.order(p) for p in probes)
            if signature in seen:
                continue
            seen.add(signature)
            found.append(wb)
    return found

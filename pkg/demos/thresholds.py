"""Sweep the exponent of a few curves and watch the mld fall to 0 at the lct."""
from fractions import Fraction

from surfmld.algebra import WeightVector
from surfmld.parse import format_rideal, parse_rideal
from surfmld.rideal import scale_exponent
from surfmld.tower import lct_from_tower, lct_witnesses, log_resolve, mld_from_tower
from surfmld.weighted import enumerate_minimizers, mld_weighted, remark_ideal

for text in ["(x^2 + y^3)", "(x^3 - y^4, x*y^2)", "(x*y)(x - y^2)^(1/2)", "(x)"]:
    a = parse_rideal(text)
    tower = log_resolve(a)
    lct = lct_from_tower(tower)
    kinds = sorted({d.kind for d in lct_witnesses(tower)})
    print(f"{text}: lct = {lct}, computed by {', '.join(kinds)}")
    for t in (lct / 2, lct, lct + Fraction(1, 10)):
        print(f"  t = {t}: mld = {mld_weighted(scale_exponent(a, t)).value}")

# (x^w2, y^w1)^(1/w1 + 1/w2) has mld 0, computed by the (w1, w2) blow-up
for w1, w2 in [(2, 1), (3, 2), (5, 3), (7, 4)]:
    b = remark_ideal(WeightVector(w1, w2))
    found = [(m.w.w1, m.w.w2) for m in enumerate_minimizers(b, 0, 12)]
    print(f"{format_rideal(b)}: mld {mld_from_tower(log_resolve(b))}, minimizers {found}")

"""Resolve (x^2 + y^3, x*y^2)^(2/3) and compare both engines."""
from fractions import Fraction

from surfmld.parse import parse_rideal
from surfmld.tower import log_resolve, mld_from_tower, ord_along_divisor
from surfmld.weighted import enumerate_minimizers, mld_weighted

a = parse_rideal("(x^2 + y^3, x*y^2)^(2/3)")
tower = log_resolve(a)

print("blow-ups:", tower.steps)
for d in tower.divisors:
    parents = ",".join(d.parents) or "-"
    print(f"  {d.id:4} {d.kind:12} k={d.k} coeff={d.coeff} a={d.a} parents={parents}")

print("E3 sees the maximal ideal with order", ord_along_divisor(tower, "E3", parse_rideal("(x, y)")))
print("mld from the tower:", mld_from_tower(tower))

cert = mld_weighted(a)
w = cert.witness.w
print(f"mld from weighted blow-ups: {cert.value}, witnessed by weights ({w.w1}, {w.w2})")
print(f"  a_F = {w.w1} + {w.w2} - {cert.ord_f} = {cert.a_f}")

found = enumerate_minimizers(a, Fraction(2, 3), 12)
print("minimizers with w1 + w2 <= 12:", [(m.w.w1, m.w.w2) for m in found])

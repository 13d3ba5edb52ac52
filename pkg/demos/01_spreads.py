"""Partial spreads and the spread census in PG(3, 2).

Builds the largest partial spreads for a few (n, k, q), then counts every
spread of lines in F_2^4 and checks the double-counting identities. The
last part averages |Y meet Z| over all spreads for random families.
"""
import random
from fractions import Fraction

from qmatch.geometry import beutelspacher_spread, space, spread_census, spread_mean, z_value

for n, k, q in [(4, 2, 2), (5, 2, 2), (5, 2, 3), (6, 3, 2)]:
    sp = beutelspacher_spread(n, k, q)
    print(f"({n},{k},{q}): partial spread of {len(sp)} pairwise disjoint {k}-spaces, z = {z_value(n, k, q)}")

c = spread_census(4, 2, 2)
print("\nspreads of lines in F_2^4:", c.N)
print("through one fixed line:", c.n1, " two:", c.n2, " three:", c.n3)
print("n1/n2 exact", c.exact_n1n2, "vs formula", c.formula_n1n2)
# the printed n2/n3 numerator subtracts an overcount and comes out negative here
print("n2/n3 exact", c.exact_n2n3, "; printed numerator", c.printed_n2n3_numerator,
      "but", c.exact_common_disjoint, "lines avoid both fixed lines")
for name, ok in c.identities.items():
    print(f"  {name}: {ok}")

cat = space(4, 2).catalog(2)
rng = random.Random(1)
print("\nmean |Y meet Z| over all 56 spreads, against |Y| z / 35:")
for _ in range(5):
    mask = rng.getrandbits(len(cat))
    size = mask.bit_count()
    print(f"  |Y| = {size:2d}: {spread_mean(mask, c)} == {Fraction(size * c.z, 35)}")

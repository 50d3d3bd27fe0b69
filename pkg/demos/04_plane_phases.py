"""Why a plane cannot thread through many of the wreath planes.

Take a plane P through nonzero points v in {y=0} and w in {x=0}.  On
P minus the coordinate planes, the complex ratio y(u)/x(u) is a real
multiple of one fixed number, so its direction is pinned down up to sign.
A point of P on {y = zeta^j x} forces that direction to be zeta^j, so the
met exponents j all share one value of zeta^(2j): at most one j for odd m,
at most one antipodal pair {j, j + m/2} for even m.

The sign subtlety matters: flipping the sign of one span coefficient lands
on the antipodal direction.  For even m both members of an antipodal pair
of wreath planes can genuinely be met, and the demo exhibits it.
"""

import random
from fractions import Fraction

from rotref import CycNum, phase_ratio, plane_meet_count
from rotref.arrangements import sample_rational_plane, zeta_plane
from rotref.linalg import Subspace

L = 4
one, zero = CycNum.one(L), CycNum.zero(L)

print("the plane span(e1, e3) meets both y = x and y = -x:")
p = Subspace.from_rows(4, [[one, zero, zero, zero], [zero, zero, one, zero]])
print(f"  meet count against the m=2 planes: {plane_meet_count(p, 2)}")
print(f"  meet count against the m=4 planes: {plane_meet_count(p, 4)}")
print(f"  meet count against the m=3 planes: {plane_meet_count(p.embed(12), 3)}")

print("\nphases flip with the sign of the span coefficients:")
from rotref.arrangements import PhaseValue
from rotref.linalg import meets_nontrivially

v = [one, zero, zero, zero]
w = [zero, zero, one, zero]
plus = phase_ratio([a + b for a, b in zip(v, w)])
minus = phase_ratio([a - b for a, b in zip(v, w)])
print(f"  phase(v + w) same as phase(v - w): {plus.same_phase(minus)}")
sq_plus = PhaseValue(plus.ratio * plus.ratio)
sq_minus = PhaseValue(minus.ratio * minus.ratio)
print(f"  squared phases agree: {sq_plus.same_phase(sq_minus)}")

print("\nseeded random sampling at m = 8 (conductor 8):")
rng = random.Random(0)
histogram = {}
for _ in range(300):
    p = sample_rational_plane(rng, 8)
    met = [j for j in range(8) if meets_nontrivially(p, zeta_plane(8, 8, j))]
    histogram[len(met)] = histogram.get(len(met), 0) + 1
    if len(met) == 2:
        assert (met[1] - met[0]) % 8 == 4  # antipodal pair
print(f"  meet-count histogram: {dict(sorted(histogram.items()))}")
print("  every count-2 sample met an antipodal pair {j, j+4}")

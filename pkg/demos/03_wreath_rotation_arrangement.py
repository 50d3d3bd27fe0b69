"""The wreath rotation groups G(m,1,2) in O_4 and their arrangements.

G(m,1,2) consists of the 2x2 complex matrices with a single m-th root of
unity in each row and column.  Viewing C^2 as R^4 turns each unit scalar
into a 2x2 rotation block, so the group lands in O_4(R) with no reflections
at all: every nonidentity element fixes either a plane or just the origin.
The fixed planes of the nontrivial stabilizers are exactly x = 0, y = 0,
and y = zeta^j x, pairwise intersecting in the origin only.
"""

from rotref import (
    classify,
    fixed_space,
    isotropy_arrangement,
    is_rotation_group,
    realified_gmpn_group,
)

m = 5
grp = realified_gmpn_group(m)
print(f"G({m},1,2) realified: order {grp.order} (= 2 m^2), conductor {grp.conductor}")

codims = {}
for g in grp.elements:
    c = classify(g).fix_codim
    codims[c] = codims.get(c, 0) + 1
print(f"fixed-space codimension histogram: {dict(sorted(codims.items()))}")
print("no codimension-1 entries: the group contains no reflections")

ok, cert = is_rotation_group(grp)
gens = cert["rotation_generators"]
print(f"rotations generate the whole group: {ok} (witness generators {gens})")

arr = isotropy_arrangement(grp)
print(f"\nisotropy arrangement: {dict(sorted(arr.dim_counts().items()))}")
print(f"the {m}+2 = {m + 2} planes:")
for s, prov in zip(arr.subspaces, arr.provenance):
    if s.dim != 2:
        continue
    rows = [" ".join(e.pretty() for e in row) for row in s.basis]
    print(f"  span{{({rows[0]}), ({rows[1]})}}  fixed by elements {prov['fixing_elements']}")

g1 = fixed_space(grp.elements[1])
print(f"\n(each plane is literally the fixed space of a group element, e.g. "
      f"element 1 fixes a {g1.dim}-dimensional space)")

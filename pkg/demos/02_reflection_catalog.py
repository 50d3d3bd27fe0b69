"""The degree <= 4 real reflection catalog, enumerated exactly.

Each entry is built from explicit root data as a set of orthogonal
reflection matrices over a conductor where every coordinate is exact:
rational families at conductor 4, pentagonal families (A4, H3, H4) at
conductor 20 where sqrt(5) = z5 - z5^2 - z5^3 + z5^4, and the dihedral
planes I2(k) at lcm(4, k).

H4 (order 14400) is skipped here to keep the demo quick; the test suite
enumerates it.
"""

from rotref import catalog_group, classify, enumerate_degree4_catalog
from rotref.groups import parse_label

print("irreducible entries (order, reflection count):")
for label in ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3", "I2(7)"):
    g = catalog_group(label)
    g.ensure_elements()
    refl = sum(1 for e in g.elements if classify(e).tag == "reflection")
    print(f"  {label:<6} order {g.order:>5}   reflections {refl}")

print("\nevery group order factors as the wreath/Coxeter theory predicts,")
print("and reflections pair one-to-one with reflecting hyperplanes.")

print("\ndegree-4 products with I2(k) up to k = 4:")
for g in enumerate_degree4_catalog(4):
    entry = parse_label(g.name)
    flag = "big-factor" if entry.has_big_factor else "rank <= 2 "
    print(f"  [{flag}] {g.name:<16} conductor {g.conductor}")

"""The relative trisection of B^4, checked map by map.

The third map is entered as printed. It sends x1 and y1 to a free basis
of the sector group, so the surface relator cannot be respected: the
report fails at the first map check and names the residue. All the other
checks hold, including the three pushouts and the trivial total group.

Run: python demos/03_b4.py
"""
from trisect.cli import builtin_source, load_builtin
from trisect import kernel_contains, parse_word, verify_cube

print(builtin_source("b4"))
doc = load_builtin("b4")
report = verify_cube(doc.cubes["T"])
print("\n".join(report.summary_lines()))

f3 = doc.homs["f3"]
S = doc.groups["S"]
print("\nw1^-1 y1 x1 in ker f3:", kernel_contains(f3, parse_word("w1^-1 y1 x1", S.alphabet)))
print("image of the relator:", f3.apply_free(S.relators[0]))

# every face of this cube is a pushout of two maps; the identification relators are listed last
print("\nface (1,3) simplifies to", report.pushout_free[(1, 3)].presentation)

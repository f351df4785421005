"""Punctured S^2 x S^2: the printed third map and its curve words.

As printed, f3 breaks the surface relator and only one of the two quoted
words is in its kernel. The sibling file replaces the second word by
y1 x1^-1, which is killed; the map itself is left as printed.

Run: python demos/04_s2xs2.py
"""
from trisect.cli import load_builtin
from trisect import check_diagram_family, validate_hom, verify_cube

printed = load_builtin("s2xs2-punctured")
fixed = load_builtin("s2xs2-punctured-corrected")

cert = validate_hom(printed.homs["f3"])
print("f3:", cert.verdict, "with residue", cert.witness)

report = verify_cube(printed.cubes["T2"])
print("\n".join(report.summary_lines()))

params = printed.cubes["T2"].params
for label, doc in (("printed", printed), ("corrected", fixed)):
    fam = doc.curves["gamma"]
    v = check_diagram_family(fam.hom, fam.curves, params)
    print(f"\n{label} gamma curves:", "affirmative" if v.affirmative else f"fails {v.failed_clauses}")
    for c, k, h in zip(v.curves, v.in_kernel, v.classes):
        print(f"  {str(c):28} in kernel: {k!s:5}  class {h.coefficients}")
    print("  independent:", v.independent)

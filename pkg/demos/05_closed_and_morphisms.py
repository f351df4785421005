"""Closed trisections as (g,k;0,0) cubes, and morphisms of cubes.

Run: python demos/05_closed_and_morphisms.py
"""
from trisect import CubeMorphism, GroupHom, embed_closed, parse_word, std_compression, std_surface
from trisect import verify_cube, verify_morphism
from trisect.cli import load_builtin

r = verify_cube(load_builtin("closed-trivial").cubes["T0"])
print("(0,0) trisection of the trivial group:", r.overall, "chi =", r.chi_closed)

S, C = std_surface(1, 0), std_compression(1, 0, 0)


def hom(spec, name):
    return GroupHom.from_map(S, C, {g: parse_word(w, C.alphabet) for g, w in spec.items()}, name)


f1 = hom({"x1": "1", "y1": "d1"}, "f1")
f2 = hom({"x1": "d1", "y1": "1"}, "f2")
f3 = hom({"x1": "d1", "y1": "d1"}, "f3")

for k, maps in ((0, (f1, f2, f3)), (1, (f1, f1, f1))):
    r = verify_cube(embed_closed(1, k, *maps))
    print(f"genus 1, k={k}:", r.overall, "chi =", r.chi_closed)

cube = embed_closed(1, 0, f1, f2, f3)
print("\nidentity morphism:", verify_morphism(CubeMorphism.identity(cube)).verdict)

# inverting d1 in the first sector does not commute with the identity on S
neg = GroupHom.from_map(C, C, {"d1": C.alphabet.gen("d1").inverse()})
ident = CubeMorphism.identity(cube)
c = verify_morphism(CubeMorphism(cube, cube, ident.phi0, neg, ident.phi2, ident.phi3))
print("phi1 = inversion:", c.verdict, c.witness)

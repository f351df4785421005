"""Standard presentations, abelianization and Tietze simplification.

Run: python demos/02_presentations.py
"""
from trisect import abelianize, certify_free, std_compression, std_surface, tietze_simplify

S = std_surface(2, 2)
print("S_2^2 =", S)
print("abelianization:", abelianize(S))

simp = tietze_simplify(S)
print(f"after {len(simp.trace)} move(s): {simp.presentation}")
for move in simp.trace:
    print("  ", move.to_dict())

# a surface with boundary is free of rank 2g+b-1
print("\nS_2^2 free of rank 5:", certify_free(S, 5).verdict)
print("S_2^2 free of rank 4:", certify_free(S, 4).verdict, "-", certify_free(S, 4).detail)

# a closed surface group is not free; abelianization cannot tell, so the search gives up
print("S_1 free of rank 2:", certify_free(std_surface(1, 0), 2, budget=300).verdict)

C = std_compression(2, 1, 2)
print("\nC_{2,1}^2 =", C, "->", abelianize(C))

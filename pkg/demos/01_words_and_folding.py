"""Free group words and subgroup membership by folding.

Run: python demos/01_words_and_folding.py
"""
from trisect import Alphabet, commutator, contains, fold, parse_word, subgroup_rank
from trisect.stallings import index

F2 = Alphabet(["a", "b"])
a, b = F2.gen("a"), F2.gen("b")

w = parse_word("a b^2 b^-1 a^-1 [a,b]", F2)
print("reduced word:", w)
print("cyclic reduction:", w.cyclic_reduce())

# H = <a^2, b, a b a^-1> has index 2: the words of even a-exponent
H = fold([a**2, b, a * b * a.inverse()], F2)
print(f"\nH has {H.num_vertices} vertices, rank {subgroup_rank(H)}, index {index(H)}")
for probe in ["a b a", "a b", "b^5 a^4", "[a,b]"]:
    print(f"  {probe:10} in H: {contains(H, parse_word(probe, F2))}")

# the cyclic subgroup <[a,b]> has infinite index
K = fold([commutator(a, b)], F2)
print("\n<[a,b]> has finite index:", index(K) is not None)
print(K.to_dot("K"))

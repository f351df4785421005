"""Independent reference computations used to check the library.

Nothing here calls the code under test beyond building words.
"""
import random

import sympy

from trisect.words import Alphabet, Word, reduce_code


def _inv(code):
    return tuple(-c for c in reversed(code))


def _letter_key(c):
    return (abs(c), c < 0)


def _half(code):
    return tuple(_letter_key(c) for c in code[: (len(code) + 1) // 2])


def _order_key(code):
    """Well-order on pairs {u, u^-1}: length, then the two left halves."""
    h1, h2 = _half(code), _half(_inv(code))
    return (len(code), min(h1, h2), max(h1, h2))


def nielsen_reduce(codes):
    """Nielsen-reduce a generating set given as reduced codes.

    Replace an element by ``x y^e`` or ``y^e x`` whenever that lowers it in
    the well-order above, and drop trivial elements, until nothing applies.
    The result is checked against the defining conditions afterwards.
    """
    basis = [tuple(c) for c in codes if c]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                x, y = basis[i], basis[j]
                for yy in (y, _inv(y)):
                    for cand in (reduce_code(x + yy), reduce_code(yy + x)):
                        if _order_key(cand) < _order_key(x):
                            basis[i] = cand
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break
            if changed:
                break
        if changed:
            basis = [b for b in basis if b]
    check_nielsen(basis)
    return basis


def check_nielsen(basis):
    """Assert N0, N1, N2 by brute force over pairs and triples of basis^{+-1}."""
    sym = [(i, b) for i, b in enumerate(basis)] + [(i, _inv(b)) for i, b in enumerate(basis)]
    assert all(basis), "N0"
    for x in sym:
        for y in sym:
            if x[1] == _inv(y[1]):
                continue
            xy = reduce_code(x[1] + y[1])
            assert len(xy) >= max(len(x[1]), len(y[1])), ("N1", x, y)
            for z in sym:
                if y[1] == _inv(z[1]):
                    continue
                xyz = reduce_code(xy + z[1])
                assert len(xyz) > len(x[1]) - len(y[1]) + len(z[1]), ("N2", x, y, z)


class BruteMembership:
    """Membership in ``<gens>`` for words of length at most ``max_len``.

    After Nielsen reduction a reduced product of n basis letters has length
    at least n, and each of its prefixes has length at most the final
    length plus half a basis element. So a breadth-first enumeration of
    products of at most ``max_len`` factors, pruned at that prefix bound,
    lists every member of length at most ``max_len``.
    """

    def __init__(self, gens, max_len=6):
        self.max_len = max_len
        self.basis = nielsen_reduce([w.code for w in gens])
        pool = self.basis + [_inv(b) for b in self.basis]
        bound = max_len + max((len(b) for b in self.basis), default=0) // 2
        seen = {()}
        frontier = [()]
        for _ in range(max_len):
            nxt = []
            for p in frontier:
                for q in pool:
                    r = reduce_code(p + q)
                    if len(r) <= bound and r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        self.members = {c for c in seen if len(c) <= max_len}

    def __contains__(self, w: Word):
        if len(w) > self.max_len:
            raise ValueError("word longer than the enumeration bound")
        return w.code in self.members


def random_generating_set(rng: random.Random, rank: int, max_letters: int = 12):
    alpha = Alphabet([f"a{i}" for i in range(1, rank + 1)])
    total = rng.randint(1, max_letters)
    gens = []
    while total > 0 or not gens:
        total = max(total, 1)
        n = rng.randint(1, min(total, 5))
        total -= n
        code = [rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(n)]
        w = Word(alpha, code)
        if w.code:
            gens.append(w)
    return alpha, gens


def random_word(rng: random.Random, alpha: Alphabet, max_len: int = 6):
    n = rng.randint(0, max_len)
    return Word(alpha, [rng.choice([1, -1]) * rng.randint(1, len(alpha)) for _ in range(n)])


def sympy_invariants(matrix, ncols):
    """(free rank, torsion) of Z^ncols / rowspace(matrix) via sympy's Smith form."""
    if not matrix:
        return ncols, ()
    from sympy.matrices.normalforms import smith_normal_form

    M = sympy.Matrix(matrix)
    D = smith_normal_form(M, domain=sympy.ZZ)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
    nz = [d for d in diag if d]
    return ncols - len(nz), tuple(d for d in nz if d != 1)


def pushout_cokernel(hi, hj):
    """Abelianized pushout straight from exponent matrices.

    The pushout abelianizes to (Z^ci + Z^cj) modulo the relators of both
    codomains and the rows hi(s) - hj(s) for every domain generator s.
    """
    Ci, Cj = hi.codomain, hj.codomain
    ni, nj = len(Ci.alphabet), len(Cj.alphabet)
    rows = [r.exponent_sums() + [0] * nj for r in Ci.relators]
    rows += [[0] * ni + r.exponent_sums() for r in Cj.relators]
    for s in hi.domain.generators:
        a = hi.image(s).exponent_sums()
        b = hj.image(s).exponent_sums()
        rows.append(a + [-x for x in b])
    return sympy_invariants([r for r in rows if any(r)], ni + nj)

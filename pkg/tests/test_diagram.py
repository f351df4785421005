import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trisect.diagram import CurveWord, RelHomologyClass, check_diagram_family, independent, kernel_contains, rel_homology_class
from trisect.dsl import parse_word
from trisect.errors import AlphabetMismatchError
from trisect.presentation import std_surface
from trisect.trisection import TrisectionParams
from trisect.words import Word

S21 = std_surface(2, 1).alphabet
w = lambda text, alpha=S21: parse_word(text, alpha)

surface_words = st.lists(st.integers(1, 5).flatmap(lambda i: st.sampled_from([i, -i])), max_size=10).map(
    lambda c: Word(S21, c))


def test_kernel_examples(b4, s2xs2):
    f3 = s2xs2.homs["f3"]
    assert kernel_contains(f3, w("y1 w1^-1 y2 x2^-1 y2^-1"))
    assert not kernel_contains(f3, w("y2 x1^-1"))
    assert kernel_contains(f3, w("y1 x1^-1"))
    S12 = b4.groups["S"].alphabet
    assert kernel_contains(b4.homs["f3"], w("w1^-1 y1 x1", S12))


def test_kernel_alphabet_mismatch(b4, s2xs2):
    with pytest.raises(AlphabetMismatchError):
        kernel_contains(b4.homs["f3"], w("y1"))


def test_class_examples():
    assert rel_homology_class(w("y1 w1^-1 y2 x2^-1 y2^-1"), 2, 1).coefficients == (0, 1, -1, 0)
    assert rel_homology_class(w("y1 x1^-1"), 2, 1).coefficients == (-1, 1, 0, 0)
    S12 = std_surface(1, 2).alphabet
    assert rel_homology_class(w("w1 w2", S12), 1, 2).coefficients == (0, 0)
    with pytest.raises(AlphabetMismatchError):
        rel_homology_class(w("y1"), 1, 2)


def test_independence_examples():
    assert independent([RelHomologyClass((0, 1, -1, 0)), RelHomologyClass((-1, 1, 0, 0))])
    assert not independent([RelHomologyClass((1, 0)), RelHomologyClass((2, 0))])
    assert independent([])
    with pytest.raises(ValueError):
        independent([RelHomologyClass((1,)), RelHomologyClass((1, 0))])


@given(surface_words, surface_words)
def test_class_is_homomorphism(u, v):
    cls = lambda x: rel_homology_class(CurveWord(x), 2, 1)
    # cyclic reduction of the curve does not change exponent sums
    assert cls(u * v) == cls(u) + cls(v)
    assert cls(u.inverse()) == -cls(u)


@given(surface_words, surface_words)
def test_kernel_conjugation_invariant(u, c):
    import trisect.cli as cli

    f3 = cli.load_builtin("s2xs2-punctured").homs["f3"]
    assert kernel_contains(f3, c) == kernel_contains(f3, c.conjugate(u))


def test_independence_permutation_and_sign():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 4)
        rows = [tuple(rng.randint(-2, 2) for _ in range(4)) for _ in range(n)]
        base = independent([RelHomologyClass(r) for r in rows])
        rng.shuffle(rows)
        signed = [(-RelHomologyClass(r)) if rng.random() < 0.5 else RelHomologyClass(r) for r in rows]
        assert independent(signed) == base


def test_family_s2xs2(s2xs2, s2xs2_fixed):
    P = TrisectionParams(2, 0, 0, 1)
    printed = s2xs2.curves["gamma"]
    v = check_diagram_family(printed.hom, printed.curves, P)
    assert v.failed_clauses == ["kernel"]
    assert v.in_kernel == (True, False)
    fixed = s2xs2_fixed.curves["gamma"]
    v = check_diagram_family(fixed.hom, fixed.curves, P)
    assert v.affirmative
    assert [c.coefficients for c in v.classes] == [(0, 1, -1, 0), (-1, 1, 0, 0)]
    d = v.to_dict()
    assert d["curves"][1]["homology"] == [-1, 1, 0, 0]


def test_family_clause_failures(s2xs2):
    f3 = s2xs2.homs["f3"]
    P = TrisectionParams(2, 0, 0, 1)
    too_many = [w("y1 x1^-1"), w("y1 w1^-1 y2 x2^-1 y2^-1"), w("y1 w1^-1 y2 x2^-1 y2^-1 y1 x1^-1")]
    assert "count" in check_diagram_family(f3, too_many, P).failed_clauses
    with_identity = [w("y1 x1^-1"), w("x1 x1^-1")]
    assert "essential" in check_diagram_family(f3, with_identity, P).failed_clauses
    boundary = [w("y1 x1^-1"), w("w1")]
    assert "essential" in check_diagram_family(f3, boundary, P).failed_clauses
    dependent = [w("y1 x1^-1"), w("x1 y1^-1")]
    assert "independence" in check_diagram_family(f3, dependent, P).failed_clauses


def test_curve_word_is_cyclically_reduced():
    c = CurveWord(w("x1 y1 x1^-1"), "alpha")
    assert str(c) == "y1" and c.label == "alpha"

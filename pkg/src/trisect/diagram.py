"""Algebraic checks on curve families of a relative trisection diagram.

Only necessary conditions are decidable here: that each curve word dies
under the compression map, that the family has the right size, that the
classes are independent in homology relative to the boundary, and that no
word is trivial or a pure boundary word. Simplicity and essentiality of
the curves are geometric and are not checked.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import AlphabetMismatchError
from .presentation import std_surface
from .smith import rank
from .trisection import GroupHom, TrisectionParams
from .words import Word


@dataclass(frozen=True)
class CurveWord:
    word: Word
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "word", self.word.cyclic_reduce())

    def __str__(self):
        return str(self.word)


@dataclass(frozen=True)
class RelHomologyClass:
    """Coefficients on ``x1, y1, ..., xg, yg``; boundary letters are killed."""

    coefficients: tuple[int, ...]

    def __add__(self, other):
        return RelHomologyClass(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return RelHomologyClass(tuple(-a for a in self.coefficients))

    def __len__(self):
        return len(self.coefficients)


def _as_curve(c) -> CurveWord:
    return c if isinstance(c, CurveWord) else CurveWord(c)


def kernel_contains(h: GroupHom, c) -> bool:
    """Does the curve word map to the identity under ``h``?"""
    c = _as_curve(c)
    if c.word.alphabet != h.domain.alphabet:
        raise AlphabetMismatchError(f"curve {c} is not over the domain of {h.name or 'the map'}")
    return not h.apply_free(c.word).code


def rel_homology_class(c, g: int, b: int) -> RelHomologyClass:
    c = _as_curve(c)
    alpha = std_surface(g, b).alphabet
    if c.word.alphabet != alpha:
        raise AlphabetMismatchError(f"curve {c} is not over the generators of S_{g}^{b}")
    sums = c.word.exponent_sums()
    return RelHomologyClass(tuple(sums[: 2 * g]))


def independent(classes: Sequence[RelHomologyClass]) -> bool:
    if not classes:
        return True
    n = len(classes[0])
    if any(len(c) != n for c in classes):
        raise ValueError("homology classes have different lengths")
    return rank([list(c.coefficients) for c in classes]) == len(classes)


def _is_boundary_word(w: Word) -> bool:
    return all(n.startswith("w") for n in w.generators_used())


@dataclass(frozen=True)
class FamilyVerdict:
    """Clause results for one curve family.

    ``essential_necessary`` is only a necessary condition for the curves
    being essential: no word is trivial or made of boundary letters alone.
    """

    curves: tuple[CurveWord, ...]
    expected_count: int
    count_ok: bool
    in_kernel: tuple[bool, ...]
    classes: tuple[RelHomologyClass, ...]
    independent: bool
    essential_necessary: tuple[bool, ...]

    @property
    def failed_clauses(self) -> list[str]:
        out = []
        if not self.count_ok:
            out.append("count")
        if not all(self.in_kernel):
            out.append("kernel")
        if not self.independent:
            out.append("independence")
        if not all(self.essential_necessary):
            out.append("essential")
        return out

    @property
    def affirmative(self) -> bool:
        return not self.failed_clauses

    def to_dict(self) -> dict:
        return {
            "affirmative": self.affirmative,
            "failed_clauses": self.failed_clauses,
            "count": {"expected": self.expected_count, "actual": len(self.curves), "ok": self.count_ok},
            "curves": [
                {
                    "word": str(c),
                    "label": c.label,
                    "in_kernel": k,
                    "homology": list(h.coefficients),
                    "nontrivial_non_boundary": e,
                }
                for c, k, h, e in zip(self.curves, self.in_kernel, self.classes, self.essential_necessary)
            ],
            "independent": self.independent,
            "note": "simplicity and essentiality are not checked; the last clause is a necessary condition only",
        }


def check_diagram_family(h: GroupHom, curves: Sequence, params: TrisectionParams) -> FamilyVerdict:
    curves = tuple(_as_curve(c) for c in curves)
    g, b = params.g, params.b
    classes = tuple(rel_homology_class(c, g, b) for c in curves)
    return FamilyVerdict(
        curves=curves,
        expected_count=g - params.p,
        count_ok=len(curves) == g - params.p,
        in_kernel=tuple(kernel_contains(h, c) for c in curves),
        classes=classes,
        independent=independent(classes),
        essential_necessary=tuple(bool(c.word.code) and not _is_boundary_word(c.word) for c in curves),
    )

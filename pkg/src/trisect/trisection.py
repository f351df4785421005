"""Relative group trisections as cubes of homomorphisms.

A cube is three maps ``f1, f2, f3 : S_g^b -> C_{g,p}^b``. It is a
``(g,k;p,b)``-trisection when every map is a surjective homomorphism sending
each boundary generator ``w_j`` to ``o_j`` and every pairwise pushout is free
of rank ``k``. The colimit of the cube is the trisected group.
"""
from __future__ import annotations

import enum
import functools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import presentation as pres
from .errors import MissingImageError, ParameterError, ShapeError, UnvalidatedHomError
from .presentation import (
    DEFAULT_BUDGET,
    Certificate,
    Presentation,
    Verdict,
    abelianize,
    certify_free,
    certify_trivial,
    conjugate_product_search,
    free_basis_rewrite,
    std_compression,
    std_surface,
    to_free_basis,
)
from .stallings import fold, is_surjective_onto_free
from .words import Alphabet, Word

PAIRS = ((1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class TrisectionParams:
    g: int
    k: int
    p: int
    b: int

    def __post_init__(self):
        g, k, p, b = self.g, self.k, self.p, self.b
        if not g >= k >= 0:
            raise ParameterError(f"need g >= k >= 0, got g={g}, k={k}")
        if p < 0 or g < p:
            raise ParameterError(f"need g >= p >= 0, got g={g}, p={p}")
        if not (b > 0 or (p == 0 and b == 0)):
            raise ParameterError(f"need b > 0, or p = b = 0; got p={p}, b={b}")

    @property
    def closed(self) -> bool:
        return self.b == 0

    def as_tuple(self):
        return (self.g, self.k, self.p, self.b)

    def __str__(self):
        return f"({self.g},{self.k};{self.p},{self.b})"


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by the images of the domain generators.

    ``images`` is aligned with ``domain.generators``. Whether the relators
    really map to the identity is computed on demand by :attr:`validity`.
    """

    domain: Presentation
    codomain: Presentation
    images: tuple[Word, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.images) != self.domain.rank:
            raise MissingImageError(f"{self.name or 'hom'}: need {self.domain.rank} images, got {len(self.images)}")
        for gen, img in zip(self.domain.generators, self.images):
            if img.alphabet != self.codomain.alphabet:
                raise ShapeError(f"{self.name or 'hom'}: image of {gen} is not over the codomain generators")

    @classmethod
    def from_map(cls, domain: Presentation, codomain: Presentation, images: Mapping[str, Word], name: str = ""):
        unknown = [n for n in images if n not in domain.alphabet]
        if unknown:
            raise ShapeError(f"{name or 'hom'}: image given for unknown generator {unknown[0]!r}")
        missing = [n for n in domain.generators if n not in images]
        if missing:
            raise MissingImageError(f"{name or 'hom'}: no image for generator {missing[0]!r}")
        return cls(domain, codomain, tuple(images[n] for n in domain.generators), name)

    @classmethod
    def identity(cls, p: Presentation, name: str = "id") -> "GroupHom":
        return cls(p, p, tuple(p.alphabet.gens()), name)

    def image(self, generator: str) -> Word:
        return self.images[self.domain.alphabet.index(generator)]

    def as_dict(self) -> dict[str, Word]:
        return dict(zip(self.domain.generators, self.images))

    def apply(self, w: Word) -> Word:
        return w.substitute(self.as_dict(), self.codomain.alphabet)

    def apply_free(self, w: Word) -> Word:
        """Image of ``w`` written in the codomain's free basis."""
        return to_free_basis(self.codomain, self.apply(w))

    def free_images(self) -> list[Word]:
        return [to_free_basis(self.codomain, img) for img in self.images]

    @functools.cached_property
    def validity(self) -> Certificate:
        return validate_hom(self)

    def __str__(self):
        body = "; ".join(f"{g} -> {w}" for g, w in zip(self.domain.generators, self.images))
        return f"{self.name or 'hom'} {{ {body} }}"


def validate_hom(h: GroupHom) -> Certificate:
    """Certified iff every domain relator maps to the identity.

    The codomain has to be visibly free (a standard compression-body or a
    free presentation); its relators are eliminated first so that equality
    is decided by free reduction.
    """
    basis, _ = free_basis_rewrite(h.codomain)
    for idx, r in enumerate(h.domain.relators):
        img = h.apply_free(r)
        if img.code:
            return Certificate(Verdict.REFUTED, witness=img, detail=f"relator {idx} ({r}) maps to {img}")
    return Certificate(Verdict.CERTIFIED, witness={"free_basis": list(basis.names)}, detail="every relator maps to 1")


def _validate_bounded(h: GroupHom, budget: int) -> Certificate:
    """Like :func:`validate_hom` but for a one-relator codomain that is not
    visibly free: each relator image is searched for as a product of
    conjugates of the codomain relators."""
    try:
        return validate_hom(h)
    except ShapeError:
        pass
    spent = 0
    rels = list(enumerate(h.codomain.relators))
    for r in h.domain.relators:
        img = h.apply(r)
        wit, cost = conjugate_product_search(img, rels, budget - spent)
        spent += cost
        if wit is None:
            return Certificate(
                Verdict.INCONCLUSIVE,
                budget_spent=spent,
                detail=f"image {img} of relator {r} not found in the normal closure within budget",
            )
    return Certificate(Verdict.CERTIFIED, budget_spent=spent, detail="relator images found in the normal closure")


def _images_surjective(h: GroupHom) -> bool:
    basis, _ = free_basis_rewrite(h.codomain)
    return is_surjective_onto_free(h.free_images(), basis)


def check_surjective(h: GroupHom) -> bool:
    """Do the images generate the (free) codomain?"""
    if not h.validity.certified:
        raise UnvalidatedHomError(f"{h.name or 'hom'} is not a well-defined homomorphism: {h.validity.detail}")
    return _images_surjective(h)


def fold_images(h: GroupHom):
    basis, _ = free_basis_rewrite(h.codomain)
    return fold(h.free_images(), basis)


def check_boundary_condition(h: GroupHom, b: int) -> bool:
    """``w_j -> o_j`` for ``j = 1..b``, compared in the free basis."""
    for j in range(1, b + 1):
        w, o = f"w{j}", f"o{j}"
        if w not in h.domain.alphabet or o not in h.codomain.alphabet:
            raise ShapeError(f"{h.name or 'hom'}: no boundary generators {w} / {o}")
        if h.apply_free(h.domain.alphabet.gen(w)) != to_free_basis(h.codomain, h.codomain.alphabet.gen(o)):
            return False
    return True


@dataclass(frozen=True)
class TrisectionCube:
    params: TrisectionParams
    maps: tuple[GroupHom, GroupHom, GroupHom]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.maps) != 3:
            raise ShapeError("a cube needs exactly three maps")
        f1 = self.maps[0]
        for f in self.maps[1:]:
            if f.domain != f1.domain or f.codomain != f1.codomain:
                raise ShapeError("the three maps must share domain and codomain")
        P = self.params
        if not f1.domain.same_as(std_surface(P.g, P.b)):
            raise ShapeError(f"domain {f1.domain.label or f1.domain} is not S_{P.g}^{P.b}")
        if not f1.codomain.same_as(std_compression(P.g, P.p, P.b)):
            raise ShapeError(f"codomain {f1.codomain.label or f1.codomain} is not C_{P.g},{P.p}^{P.b}")

    @property
    def surface(self) -> Presentation:
        return self.maps[0].domain

    @property
    def sector(self) -> Presentation:
        return self.maps[0].codomain

    def map(self, i: int) -> GroupHom:
        return self.maps[i - 1]

    def permuted(self, sigma: Sequence[int]) -> "TrisectionCube":
        """Cube whose map ``i`` is this cube's map ``sigma[i-1]``."""
        return TrisectionCube(self.params, tuple(self.maps[s - 1] for s in sigma), self.name)


def pushout(hi: GroupHom, hj: GroupHom, tags: tuple[str, str] = ("1", "2")) -> Presentation:
    """Pushout of two maps out of one domain.

    Generators of the two codomains are suffixed ``#tag``; relators are both
    codomains' relators followed by ``hi(s) hj(s)^-1`` for each domain
    generator ``s``.
    """
    if hi.domain != hj.domain:
        raise ShapeError("pushout needs maps with the same domain")
    ti, tj = tags
    if ti == tj:
        raise ShapeError("pushout tags must differ")
    return _colimit(hi.domain, [(ti, hi), (tj, hj)], [(ti, tj)], f"P({hi.name or ti},{hj.name or tj})")


def _colimit(domain: Presentation, maps, pairs, label) -> Presentation:
    copies = {t: h.codomain.retag("#" + t) for t, h in maps}
    homs = dict(maps)
    names = [n for t, _ in maps for n in copies[t].generators]
    alpha = Alphabet(names)
    rels = [Word._raw(alpha, r.rename(alpha).code) for t, _ in maps for r in copies[t].relators]
    for a, b in pairs:
        for img_a, img_b in zip(homs[a].images, homs[b].images):
            wa = Word._raw(copies[a].alphabet, img_a.code).rename(alpha)
            wb = Word._raw(copies[b].alphabet, img_b.code).rename(alpha)
            rels.append(wa * wb.inverse())
    return Presentation(alpha, tuple(rels), label)


def total_group(cube: TrisectionCube) -> Presentation:
    """Colimit of the cube: three tagged copies of the sector group with
    every pair of maps identified."""
    maps = [(str(i), cube.map(i)) for i in (1, 2, 3)]
    pairs = [(str(i), str(j)) for i, j in PAIRS]
    return _colimit(cube.surface, maps, pairs, f"G({cube.name})" if cube.name else "G")


def euler_char_closed(g: int, k: int, p: int = 0, b: int = 0) -> int:
    """``2 + g - 3k`` for a closed ``(g,k)``-trisection."""
    if p or b:
        raise ParameterError("the Euler characteristic formula only covers closed (p = b = 0) trisections")
    TrisectionParams(g, k, 0, 0)
    return 2 + g - 3 * k


class Outcome(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


EXIT_CODES = {Outcome.PASS: 0, Outcome.FAIL: 1, Outcome.INCONCLUSIVE: 2}


@dataclass(frozen=True)
class VerificationReport:
    params: TrisectionParams
    well_defined: dict[int, Certificate]
    surjective: dict[int, bool]
    boundary_condition: dict[int, bool]
    pushout_free: dict[tuple[int, int], Certificate]
    total_group: Presentation
    total_certificate: Certificate
    total_invariants: pres.AbelianInvariants
    chi_closed: int | None
    overall: Outcome
    failure: dict | None = None
    inconclusive: tuple[str, ...] = ()
    name: str = ""

    @property
    def passed(self) -> bool:
        return self.overall == Outcome.PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.overall]

    def to_dict(self) -> dict:
        out = {
            "cube": self.name,
            "params": dict(zip("gkpb", self.params.as_tuple())),
            "overall": self.overall.value,
        }
        if self.failure is not None:
            out["failure"] = self.failure
        if self.inconclusive:
            out["inconclusive"] = list(self.inconclusive)
        out["well_defined"] = {str(i): c.to_dict() for i, c in self.well_defined.items()}
        out["surjective"] = {str(i): v for i, v in self.surjective.items()}
        out["boundary_condition"] = {str(i): v for i, v in self.boundary_condition.items()}
        out["pushout_free"] = {f"{i},{j}": c.to_dict() for (i, j), c in self.pushout_free.items()}
        out["total_group"] = {
            "presentation": str(self.total_group),
            "invariants": self.total_invariants.to_dict(),
            "trivial": self.total_certificate.to_dict(),
        }
        out["chi_closed"] = self.chi_closed
        return out

    def summary_lines(self) -> list[str]:
        lines = [f"cube {self.name or '?'} {self.params}: {self.overall}"]
        if self.failure:
            lines.append(f"  first failure: {self.failure['check']} -> {self.failure['witness']}")
        for i in (1, 2, 3):
            wd = self.well_defined[i]
            lines.append(
                f"  f{i}: well_defined={wd.verdict}"
                + (f" (residue {wd.witness})" if wd.refuted else "")
                + f" surjective={self.surjective[i]} boundary={self.boundary_condition[i]}"
            )
        for (i, j), c in self.pushout_free.items():
            lines.append(f"  pushout({i},{j}) free of rank {self.params.k}: {c.verdict}" + (f" [{c.detail}]" if c.detail else ""))
        lines.append(f"  total group: abelianization {self.total_invariants}; trivial: {self.total_certificate.verdict}")
        if self.chi_closed is not None:
            lines.append(f"  chi = {self.chi_closed}")
        return lines


def _face(args):
    hi, hj, tags, k, budget = args
    return certify_free(pushout(hi, hj, tags), k, budget)


def verify_cube(cube: TrisectionCube, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> VerificationReport:
    """Run every check on ``cube``; failures are verdicts, never exceptions.

    Surjectivity is reported for every map, including maps that fail the
    relator check, where it describes the subgroup the images generate.
    The total group is reported for information and does not enter the
    overall verdict.
    """
    P = cube.params
    wd = {i: validate_hom(cube.map(i)) for i in (1, 2, 3)}
    sur = {i: _images_surjective(cube.map(i)) for i in (1, 2, 3)}
    bnd = {i: check_boundary_condition(cube.map(i), P.b) for i in (1, 2, 3)}
    tasks = [(cube.map(i), cube.map(j), (str(i), str(j)), P.k, budget) for i, j in PAIRS]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            faces = list(ex.map(_face, tasks))
    else:
        faces = [_face(t) for t in tasks]
    faces = dict(zip(PAIRS, faces))
    G = total_group(cube)
    tcert = certify_trivial(G, budget)
    tinv = tcert.invariants or abelianize(G)

    failure = None
    pending = []
    checks = (
        [(f"well_defined[{i}]", wd[i].verdict, wd[i].witness) for i in (1, 2, 3)]
        + [(f"surjective[{i}]", Verdict.CERTIFIED if sur[i] else Verdict.REFUTED, None) for i in (1, 2, 3)]
        + [(f"boundary_condition[{i}]", Verdict.CERTIFIED if bnd[i] else Verdict.REFUTED, None) for i in (1, 2, 3)]
        + [(f"pushout_free[{i},{j}]", faces[(i, j)].verdict, faces[(i, j)].detail) for i, j in PAIRS]
    )
    for name, verdict, witness in checks:
        if verdict is Verdict.REFUTED and failure is None:
            if name.startswith("surjective"):
                witness = "images do not generate the codomain"
            elif name.startswith("boundary"):
                i = int(name[-2])
                bad = [j for j in range(1, P.b + 1)
                       if cube.map(i).apply_free(cube.surface.alphabet.gen(f"w{j}"))
                       != to_free_basis(cube.sector, cube.sector.alphabet.gen(f"o{j}"))]
                witness = f"w{bad[0]} -> {cube.map(i).image(f'w{bad[0]}')}"
            failure = {"check": name, "witness": pres._jsonable(witness)}
        elif verdict is Verdict.INCONCLUSIVE:
            pending.append(name)
    if failure is not None:
        overall = Outcome.FAIL
    elif pending:
        overall = Outcome.INCONCLUSIVE
    else:
        overall = Outcome.PASS
    return VerificationReport(
        params=P,
        well_defined=wd,
        surjective=sur,
        boundary_condition=bnd,
        pushout_free=faces,
        total_group=G,
        total_certificate=tcert,
        total_invariants=tinv,
        chi_closed=euler_char_closed(P.g, P.k) if P.closed else None,
        overall=overall,
        failure=failure,
        inconclusive=tuple(pending),
        name=cube.name,
    )


def standard_pair(g: int, b: int) -> tuple[GroupHom, GroupHom]:
    """The maps in standard position for page genus 0:
    ``f1: x_i -> 1, y_i -> d_i`` and ``f2: x_i -> d_i, y_i -> 1``, both
    with ``w_j -> o_j``."""
    if g < 0 or b < 0 or (g == 0 and b == 0):
        raise ParameterError("standard_pair needs g >= 1 or b >= 1")
    S, C = std_surface(g, b), std_compression(g, 0, b)
    one = C.alphabet.identity
    f1, f2 = {}, {}
    for i in range(1, g + 1):
        d = C.alphabet.gen(f"d{i}")
        f1[f"x{i}"], f1[f"y{i}"] = one, d
        f2[f"x{i}"], f2[f"y{i}"] = d, one
    for j in range(1, b + 1):
        f1[f"w{j}"] = f2[f"w{j}"] = C.alphabet.gen(f"o{j}")
    return GroupHom.from_map(S, C, f1, "f1"), GroupHom.from_map(S, C, f2, "f2")


def embed_closed(g: int, k: int, f1: GroupHom, f2: GroupHom, f3: GroupHom, name: str = "") -> TrisectionCube:
    """A closed ``(g,k)`` group trisection as a ``(g,k;0,0)`` cube."""
    S, C = std_surface(g, 0), std_compression(g, 0, 0)
    for f in (f1, f2, f3):
        if not f.domain.same_as(S) or not f.codomain.same_as(C):
            raise ShapeError(f"{f.name or 'map'} is not a map from S_{g} to the free group of rank {g}")
    return TrisectionCube(TrisectionParams(g, k, 0, 0), (f1, f2, f3), name)


@dataclass(frozen=True)
class CubeMorphism:
    """``phi0`` on the surface group and ``phi1..phi3`` on the sectors with
    ``target.f_i . phi0 == phi_i . source.f_i``."""

    source: TrisectionCube
    target: TrisectionCube
    phi0: GroupHom
    phi1: GroupHom
    phi2: GroupHom
    phi3: GroupHom
    name: str = field(default="", compare=False)

    def __post_init__(self):
        checks = [
            ("phi0", self.phi0, self.source.surface, self.target.surface),
            ("phi1", self.phi1, self.source.sector, self.target.sector),
            ("phi2", self.phi2, self.source.sector, self.target.sector),
            ("phi3", self.phi3, self.source.sector, self.target.sector),
        ]
        for label, h, dom, cod in checks:
            if not h.domain.same_as(dom) or not h.codomain.same_as(cod):
                raise ShapeError(f"{label} does not go between the matching cube presentations")

    @classmethod
    def identity(cls, cube: TrisectionCube, name: str = "id") -> "CubeMorphism":
        s, c = GroupHom.identity(cube.surface), GroupHom.identity(cube.sector)
        return cls(cube, cube, s, c, c, c, name)

    @property
    def phis(self) -> tuple[GroupHom, GroupHom, GroupHom]:
        return (self.phi1, self.phi2, self.phi3)


def verify_morphism(m: CubeMorphism, budget: int = DEFAULT_BUDGET) -> Certificate:
    """Certified iff the four maps are homomorphisms and all three squares
    commute on every surface generator.

    When the surface group is closed (not free) the relator check on
    ``phi0`` is a bounded search and may leave the result Inconclusive.
    """
    results = [("phi0", _validate_bounded(m.phi0, budget))]
    results += [(f"phi{i}", validate_hom(h)) for i, h in enumerate(m.phis, 1)]
    spent = sum(c.budget_spent for _, c in results)
    for label, cert in results:
        if cert.refuted:
            return Certificate(
                Verdict.REFUTED,
                witness={"hom": label, "residue": str(cert.witness)},
                budget_spent=spent,
                detail=f"{label} is not a homomorphism: {cert.detail}",
            )
    src, tgt = m.source, m.target
    for i in (1, 2, 3):
        fi, gi, phi = src.map(i), tgt.map(i), m.phis[i - 1]
        for s in src.surface.alphabet:
            w = src.surface.alphabet.gen(s.name)
            lhs = gi.apply_free(m.phi0.apply(w))
            rhs = to_free_basis(phi.codomain, phi.apply(fi.apply(w)))
            if lhs != rhs:
                return Certificate(
                    Verdict.REFUTED,
                    witness={"square": i, "generator": s.name, "lhs": str(lhs), "rhs": str(rhs)},
                    budget_spent=spent,
                    detail=f"square {i} fails on {s.name}: {lhs} != {rhs}",
                )
    pending = [label for label, cert in results if cert.verdict is Verdict.INCONCLUSIVE]
    if pending:
        return Certificate(
            Verdict.INCONCLUSIVE,
            budget_spent=spent,
            detail=f"squares commute but {', '.join(pending)} could not be certified within budget",
        )
    return Certificate(Verdict.CERTIFIED, budget_spent=spent, detail="all squares commute")

"""Finite presentations, Tietze simplification and abelian invariants.

Freeness of a finite presentation is undecidable in general, so the
certifying functions return a three-valued :class:`Certificate`:
``Certified`` carries a replayable Tietze trace, ``Refuted`` carries the
abelian invariants that rule the claim out, ``Inconclusive`` carries nothing.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from .errors import AlphabetMismatchError, ParameterError, ShapeError
from .smith import SmithForm, smith_normal_form
from .words import Alphabet, Word, commutator, reduce_code, shortlex_key

DEFAULT_BUDGET = 10_000
MAX_CONJUGATES = 4
MAX_CONJUGATOR_LENGTH = 6


def cyclic_key(w: Word) -> tuple:
    """Canonical representative of the conjugacy class of ``w`` and ``w^-1``."""
    w = w.cyclic_reduce()
    if not w.code:
        return ()
    cands = [r.code for r in w.rotations()] + [r.code for r in w.inverse().rotations()]
    return min(cands, key=shortlex_key)


@dataclass(frozen=True)
class Presentation:
    """Generators plus relators; relators are stored cyclically reduced and
    relators equal to the identity are dropped."""

    alphabet: Alphabet
    relators: tuple[Word, ...] = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        rels = []
        for r in self.relators:
            if r.alphabet != self.alphabet:
                raise AlphabetMismatchError(f"relator {r} is not over {self.alphabet!r}")
            r = r.cyclic_reduce()
            if r.code:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def free(cls, names: Iterable[str], label: str = "") -> "Presentation":
        return cls(Alphabet(names), (), label)

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.names

    @property
    def rank(self) -> int:
        return len(self.alphabet)

    def is_free_visibly(self) -> bool:
        return not self.relators

    def same_as(self, other: "Presentation") -> bool:
        """Same generators and the same relators up to rotation and inversion."""
        if self.alphabet != other.alphabet:
            return False
        return sorted(map(cyclic_key, self.relators)) == sorted(map(cyclic_key, other.relators))

    def retag(self, suffix: str) -> "Presentation":
        alpha = Alphabet(n + suffix for n in self.alphabet.names)
        return Presentation(alpha, tuple(Word._raw(alpha, r.code) for r in self.relators), self.label + suffix)

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def __str__(self):
        gens = ", ".join(self.alphabet.names)
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


def free_group(n: int, prefix: str = "z", label: str | None = None) -> Presentation:
    return Presentation.free((f"{prefix}{i}" for i in range(1, n + 1)), label or f"F_{n}")


def std_surface(g: int, b: int) -> Presentation:
    """``S_g^b``: generators x1, y1, ..., xg, yg, w1, ..., wb and the single
    relator ``[x1,y1]...[xg,yg] (w1...wb)^-1``."""
    if g < 0 or b < 0:
        raise ParameterError("std_surface needs g >= 0 and b >= 0")
    names = [n for i in range(1, g + 1) for n in (f"x{i}", f"y{i}")]
    names += [f"w{j}" for j in range(1, b + 1)]
    alpha = Alphabet(names)
    rel = alpha.identity
    for i in range(1, g + 1):
        rel = rel * commutator(alpha.gen(f"x{i}"), alpha.gen(f"y{i}"))
    boundary = alpha.identity
    for j in range(1, b + 1):
        boundary = boundary * alpha.gen(f"w{j}")
    return Presentation(alpha, (rel * boundary.inverse(),), f"S_{g}^{b}")


def std_compression(g: int, p: int, b: int) -> Presentation:
    """``C_{g,p}^b``: generators d1..d(g-p), zeta1, eta1, ..., o1..ob and,
    when ``b >= 1``, the relator ``[zeta1,eta1]...[zetap,etap] (o1...ob)^-1``."""
    if not g >= p >= 0:
        raise ParameterError(f"std_compression needs g >= p >= 0, got g={g}, p={p}")
    if b < 0 or (b == 0 and p != 0):
        raise ParameterError(f"std_compression needs b >= 1, or p = b = 0; got p={p}, b={b}")
    names = [f"d{i}" for i in range(1, g - p + 1)]
    names += [n for i in range(1, p + 1) for n in (f"zeta{i}", f"eta{i}")]
    names += [f"o{j}" for j in range(1, b + 1)]
    alpha = Alphabet(names)
    rels = ()
    if b:
        rel = alpha.identity
        for i in range(1, p + 1):
            rel = rel * commutator(alpha.gen(f"zeta{i}"), alpha.gen(f"eta{i}"))
        boundary = alpha.identity
        for j in range(1, b + 1):
            boundary = boundary * alpha.gen(f"o{j}")
        rels = (rel * boundary.inverse(),)
    return Presentation(alpha, rels, f"C_{g},{p}^{b}")


def surface_params(p: Presentation) -> tuple[int, int]:
    """``(g, b)`` if ``p`` is a standard surface presentation."""
    names = p.alphabet.names
    g = sum(1 for n in names if n.startswith("x"))
    b = sum(1 for n in names if n.startswith("w"))
    if not p.same_as(std_surface(g, b)):
        raise ShapeError(f"{p.label or p} is not a standard surface presentation")
    return g, b


def compression_params(p: Presentation) -> tuple[int, int, int]:
    """``(g, p, b)`` if ``p`` is a standard compression-body presentation."""
    names = p.alphabet.names
    d = sum(1 for n in names if n.startswith("d"))
    pg = sum(1 for n in names if n.startswith("zeta"))
    b = sum(1 for n in names if n.startswith("o"))
    try:
        ok = p.same_as(std_compression(d + pg, pg, b))
    except ParameterError:
        ok = False
    if not ok:
        raise ShapeError(f"{p.label or p} is not a standard compression-body presentation")
    return d + pg, pg, b


def _solve_for(r: Word, name: str) -> Word:
    """Given ``r = A g^e B`` with one occurrence of ``g``, return ``g``
    as ``(A^-1 B^-1)^e``."""
    k = r.alphabet.index(name) + 1
    pos = next(i for i, c in enumerate(r.code) if abs(c) == k)
    a = Word._raw(r.alphabet, r.code[:pos])
    b = Word._raw(r.alphabet, r.code[pos + 1 :])
    val = a.inverse() * b.inverse()
    return val if r.code[pos] > 0 else val.inverse()


@functools.lru_cache(maxsize=512)
def _free_basis_rewrite(p: Presentation) -> tuple[Alphabet, dict[str, Word]]:
    """Free basis of a visibly free presentation and each generator's
    expression in it.

    Each relator in turn has its highest-index once-occurring generator
    solved for and eliminated. For the standard surface and compression-body
    presentations this drops exactly the last boundary generator.
    """
    alpha = p.alphabet
    solved: dict[str, Word] = {}
    for r in p.relators:
        images = {n: solved.get(n, alpha.gen(n)) for n in alpha.names}
        r = r.substitute(images, alpha).cyclic_reduce()
        if not r.code:
            continue
        once = [n for n in r.generators_used() if r.count(n) == 1]
        if not once:
            raise ShapeError(f"presentation {p.label or p} is not visibly free: relator {r} has no generator occurring once")
        name = max(once, key=alpha.index)
        value = _solve_for(r, name)
        step = {n: alpha.gen(n) for n in alpha.names}
        step[name] = value
        solved = {n: w.substitute(step, alpha) for n, w in solved.items()}
        solved[name] = value
    basis = Alphabet(n for n in alpha.names if n not in solved)
    rewrite = {}
    for n in alpha.names:
        rewrite[n] = solved[n].rename(basis) if n in solved else basis.gen(n)
    return basis, rewrite


def free_basis_rewrite(p: Presentation) -> tuple[Alphabet, dict[str, Word]]:
    basis, rewrite = _free_basis_rewrite(p)
    return basis, dict(rewrite)


def to_free_basis(p: Presentation, w: Word) -> Word:
    """Rewrite a word over ``p``'s generators into ``p``'s free basis."""
    basis, rewrite = _free_basis_rewrite(p)
    return w.substitute(rewrite, basis)


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z^free_rank + Z/t1 + ... + Z/tn`` with ``t1 | t2 | ... | tn``."""

    free_rank: int
    torsion: tuple[int, ...] = ()
    matrix: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)
    smith: SmithForm | None = field(default=None, compare=False, repr=False)

    def is_free_of_rank(self, k: int) -> bool:
        return self.free_rank == k and not self.torsion

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = ([f"Z^{self.free_rank}"] if self.free_rank else []) + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def relation_matrix(p: Presentation) -> list[list[int]]:
    return [r.exponent_sums() for r in p.relators]


def abelianize(p: Presentation) -> AbelianInvariants:
    """Abelian invariants from the Smith form of the exponent-sum matrix."""
    A = relation_matrix(p)
    n = p.rank
    if not A or n == 0:
        return AbelianInvariants(n, (), tuple(map(tuple, A)), None)
    snf = smith_normal_form(A)
    diag = snf.diagonal
    rank = sum(1 for d in diag if d)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianInvariants(n - rank, torsion, tuple(map(tuple, A)), snf)


# ----------------------------------------------------------------------
# Tietze moves


@dataclass(frozen=True)
class Eliminate:
    """Drop ``generator`` using relator ``relator`` in which it occurs once."""

    generator: str
    relator: int
    value: Word

    def to_dict(self):
        return {"move": "eliminate", "generator": self.generator, "relator": self.relator, "value": str(self.value)}


@dataclass(frozen=True)
class RemoveRelator:
    """Drop a relator that is a product of conjugates of the others.

    ``witness`` lists ``(conjugator, relator_index, sign)`` factors, indices
    into the presentation before removal, with
    ``relator == prod(conjugator * r[i]^sign * conjugator^-1)``.
    """

    relator: int
    reason: str
    witness: tuple[tuple[Word, int, int], ...]

    def to_dict(self):
        return {
            "move": "remove",
            "relator": self.relator,
            "reason": self.reason,
            "witness": [[str(u), i, e] for u, i, e in self.witness],
        }


@dataclass(frozen=True)
class Substitute:
    """Replace relator ``target`` by ``c^-1 t'`` where ``t'`` is a rotation
    of the target and ``c`` a rotation of relator ``source`` (or its inverse)
    overlapping ``t'`` in more than half of ``c``."""

    target: int
    source: int
    result: Word

    def to_dict(self):
        return {"move": "substitute", "target": self.target, "source": self.source, "result": str(self.result)}


Move = Eliminate | RemoveRelator | Substitute


def apply_move(p: Presentation, move: Move) -> Presentation:
    rels = list(p.relators)
    if isinstance(move, Eliminate):
        r = rels[move.relator]
        if r.count(move.generator) != 1:
            raise ShapeError(f"cannot eliminate {move.generator} using relator {r}")
        value = _solve_for(r, move.generator)
        alpha = p.alphabet
        basis = Alphabet(n for n in alpha.names if n != move.generator)
        images = {n: basis.gen(n) for n in basis.names}
        images[move.generator] = value.rename(basis)
        new = [w.substitute(images, basis) for k, w in enumerate(rels) if k != move.relator]
        return Presentation(basis, tuple(new), p.label)
    if isinstance(move, RemoveRelator):
        del rels[move.relator]
        return Presentation(p.alphabet, tuple(rels), p.label)
    if isinstance(move, Substitute):
        rels[move.target] = move.result
        return Presentation(p.alphabet, tuple(rels), p.label)
    raise TypeError(f"not a Tietze move: {move!r}")


def replay(p: Presentation, trace: Sequence[Move]) -> Iterator[Presentation]:
    """Yield ``p`` and every intermediate presentation of ``trace``."""
    yield p
    for move in trace:
        p = apply_move(p, move)
        yield p


def check_removal(p: Presentation, move: RemoveRelator) -> bool:
    """Verify a removal witness by free reduction."""
    prod = p.alphabet.identity
    for u, i, e in move.witness:
        if i == move.relator:
            return False
        prod = prod * (p.relators[i] ** e).conjugate(u)
    return prod == p.relators[move.relator]


def _find_duplicate(p: Presentation) -> RemoveRelator | None:
    seen: dict[tuple, int] = {}
    for j, r in enumerate(p.relators):
        key = cyclic_key(r)
        i = seen.get(key)
        if i is None:
            seen[key] = j
            continue
        src = p.relators[i]
        for e in (1, -1):
            base = src**e
            for s in range(len(base)):
                # r = B A where base = A B, so r = A^-1 base A
                if base.code[s:] + base.code[:s] == r.code:
                    a = Word._raw(p.alphabet, base.code[:s])
                    return RemoveRelator(j, "duplicate", ((a.inverse(), i, e),))
    return None


def _find_elimination(p: Presentation) -> Eliminate | None:
    best = None
    for j, r in enumerate(p.relators):
        once = [n for n in r.generators_used() if r.count(n) == 1]
        if not once:
            continue
        if best is None or len(r) < len(p.relators[best[0]]):
            best = (j, max(once, key=p.alphabet.index))
    if best is None:
        return None
    j, name = best
    return Eliminate(name, j, _solve_for(p.relators[j], name))


def _find_substitution(p: Presentation) -> Substitute | None:
    rels = p.relators
    for j, t in enumerate(rels):
        tc = t.code
        n = len(tc)
        doubled = tc + tc
        for i, src in enumerate(rels):
            if i == j or len(src) > 2 * n:
                continue
            for base in (src, src.inverse()):
                L = len(base)
                for rot in range(L):
                    c = base.code[rot:] + base.code[:rot]
                    for m in range(min(L, n), L // 2, -1):
                        head = c[:m]
                        for start in range(n):
                            if doubled[start : start + m] == head:
                                rest = doubled[start + m : start + n]
                                tail = tuple(-x for x in reversed(c[m:]))
                                new = Word._raw(p.alphabet, reduce_code(tail + rest)).cyclic_reduce()
                                if len(new) < n:
                                    return Substitute(j, i, new)
    return None


def conjugators(alphabet: Alphabet, max_length: int) -> Iterator[Word]:
    """Reduced words of length ``<= max_length`` in shortlex order."""
    letters = sorted(
        [c for i in range(len(alphabet)) for c in (i + 1, -(i + 1))],
        key=lambda c: 2 * abs(c) + (c < 0),
    )
    level = [()]
    yield alphabet.identity
    for _ in range(max_length):
        nxt = []
        for w in level:
            for c in letters:
                if w and w[-1] == -c:
                    continue
                nxt.append(w + (c,))
                yield Word._raw(alphabet, w + (c,))
        level = nxt


def conjugate_product_search(
    target: Word,
    relators: Sequence[tuple[int, Word]],
    budget: int,
    max_factors: int = MAX_CONJUGATES,
    max_conjugator: int = MAX_CONJUGATOR_LENGTH,
):
    """Breadth-first search for ``target`` as a product of conjugates.

    ``relators`` is a list of ``(index, word)``. Returns ``(witness, spent)``
    where ``witness`` is a tuple of ``(conjugator, index, sign)`` whose
    product freely equals ``target``, or ``None``. Each candidate product
    examined costs one unit of ``budget``.
    """
    alpha = target.alphabet
    if not target.code:
        return (), 0
    goal = cyclic_key(target)
    spent = 0
    choices = [(i, e, r**e) for i, r in relators for e in (1, -1)]
    if not choices:
        return None, 0

    def finish(factors):
        prod = alpha.identity
        for u, _, _, w in factors:
            prod = prod * w.conjugate(u)
        if cyclic_key(prod) != goal:
            return None
        # find v with target = v prod v^-1
        for cand in (target, target.inverse()):
            tc = cand.cyclic_reduce()
            pc = prod.cyclic_reduce()
            a = _conjugator_to(prod, pc)  # prod = a pc a^-1
            b = _conjugator_to(cand, tc)  # cand = b tc b^-1
            for s in range(len(tc)):
                if tc.code[s:] + tc.code[:s] == pc.code:
                    # pc = A^-1 tc A with A = tc[:s]
                    A = Word._raw(alpha, tc.code[:s])
                    v = b * A * a.inverse()  # cand = v prod v^-1
                    wit = tuple((v * u, i, e) for u, i, e, _ in factors)
                    if cand is target:
                        return wit
                    inv = tuple((v * u, i, -e) for u, i, e, _ in reversed(factors))
                    return inv
        return None

    def extend(depth, factors):
        nonlocal spent
        if depth == 0:
            spent += 1
            return finish(factors)
        for u in conjugators(alpha, max_conjugator):
            for i, e, w in choices:
                if spent >= budget:
                    return None
                got = extend(depth - 1, factors + [(u, i, e, w)])
                if got is not None:
                    return got
        return None

    for d in range(1, max_factors + 1):
        for i, e, w in choices:
            if spent >= budget:
                return None, spent
            got = extend(d - 1, [(alpha.identity, i, e, w)])
            if got is not None:
                return got, spent
    return None, spent


def _conjugator_to(w: Word, cr: Word) -> Word:
    """The prefix ``a`` with ``w = a cr a^-1`` for the cyclic reduction ``cr``."""
    k = (len(w) - len(cr)) // 2
    return Word._raw(w.alphabet, w.code[:k])


def _find_redundant(p: Presentation, budget: int):
    spent = 0
    rels = p.relators
    if len(rels) < 2:
        return None, 0
    for j in range(len(rels) - 1, -1, -1):
        others = [(i, r) for i, r in enumerate(rels) if i != j]
        wit, cost = conjugate_product_search(rels[j], others, budget - spent)
        spent += cost
        if wit is not None:
            return RemoveRelator(j, "consequence", wit), spent
        if spent >= budget:
            break
    return None, spent


@dataclass(frozen=True)
class Simplified:
    presentation: Presentation
    trace: tuple[Move, ...]
    spent: int

    def __iter__(self):
        # unpacks as (presentation, trace)
        return iter((self.presentation, self.trace))


def tietze_simplify(p: Presentation, budget: int = DEFAULT_BUDGET) -> Simplified:
    """Greedy Tietze simplification within ``budget``.

    Moves are tried in a fixed order: drop a duplicated relator, eliminate a
    generator occurring once in the shortest possible relator, shorten a
    relator by substituting more than half of another, and, last, drop a
    relator found to be a product of at most four conjugates of the others
    (conjugators of length at most six, breadth first). Each move costs one
    unit and each candidate of the conjugate search costs one unit.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    trace: list[Move] = []
    spent = 0
    q = p
    while spent < budget:
        move = _find_duplicate(q) or _find_elimination(q) or _find_substitution(q)
        if move is None:
            move, cost = _find_redundant(q, budget - spent)
            spent += cost
            if move is None:
                break
        q = apply_move(q, move)
        trace.append(move)
        spent += 1
    return Simplified(q, tuple(trace), spent)


# ----------------------------------------------------------------------
# certificates


class Verdict(str, enum.Enum):
    CERTIFIED = "Certified"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Certificate:
    """Three-valued result with its witness.

    ``presentation`` is the simplified presentation reached, if any; it is
    informational and not part of the witness.
    """

    verdict: Verdict
    witness: Any = None
    trace: tuple = ()
    invariants: AbelianInvariants | None = None
    budget_spent: int = 0
    detail: str = ""
    presentation: Presentation | None = field(default=None, compare=False)

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    @property
    def refuted(self) -> bool:
        return self.verdict is Verdict.REFUTED

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "trace": [m.to_dict() for m in self.trace],
            "invariants": self.invariants.to_dict() if self.invariants else None,
            "budget_spent": self.budget_spent,
        }
        if self.witness is not None and not self.trace:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


def _jsonable(x):
    if isinstance(x, (Word, Presentation)):
        return str(x)
    if isinstance(x, AbelianInvariants):
        return x.to_dict()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def certify_free(p: Presentation, k: int, budget: int = DEFAULT_BUDGET) -> Certificate:
    """Is ``p`` free of rank ``k``?

    Refuted when the abelianization is not ``Z^k``; Certified when Tietze
    simplification reaches ``k`` generators and no relators; otherwise
    Inconclusive.
    """
    inv = abelianize(p)
    if not inv.is_free_of_rank(k):
        return Certificate(
            Verdict.REFUTED,
            witness=inv,
            invariants=inv,
            detail=f"abelianization is {inv}, not Z^{k}" if k else f"abelianization is {inv}, not trivial",
        )
    q, trace, spent = _unpack(tietze_simplify(p, budget))
    if q.rank == k and not q.relators:
        return Certificate(Verdict.CERTIFIED, witness=trace, trace=trace, invariants=inv, budget_spent=spent, presentation=q)
    return Certificate(
        Verdict.INCONCLUSIVE,
        invariants=inv,
        budget_spent=spent,
        detail=f"simplification stopped at {q.rank} generators and {len(q.relators)} relators",
        presentation=q,
    )


def _unpack(s: Simplified):
    return s.presentation, s.trace, s.spent


def certify_trivial(p: Presentation, budget: int = DEFAULT_BUDGET) -> Certificate:
    return certify_free(p, 0, budget)

"""Free-group words over a fixed alphabet.

Letters are stored as signed 1-based ordinals into the alphabet, so the
generator at index ``i`` is written ``i + 1`` and its inverse ``-(i + 1)``.
Every :class:`Word` is freely reduced on construction.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import AlphabetMismatchError, MissingImageError

_FORBIDDEN = re.compile(r"[\s^\-,;()\[\]]")


class Generator(NamedTuple):
    name: str
    index: int


class Letter(NamedTuple):
    generator: Generator
    sign: int

    def __str__(self):
        return self.generator.name if self.sign > 0 else self.generator.name + "^-1"


def check_name(name: str) -> str:
    if not isinstance(name, str) or not name:
        raise ValueError("generator name must be a nonempty string")
    if _FORBIDDEN.search(name):
        raise ValueError(f"illegal character in generator name {name!r}")
    if name == "1":
        raise ValueError("'1' is reserved for the identity")
    return name


class Alphabet:
    """An ordered table of distinct generator names.

    Two alphabets are equal when their name sequences are equal.
    """

    __slots__ = ("names", "_index", "_hash")

    def __init__(self, names: Iterable[str]):
        names = tuple(check_name(n) for n in names)
        index = {n: i for i, n in enumerate(names)}
        if len(index) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate generator names: {', '.join(dup)}")
        self.names = names
        self._index = index
        self._hash = hash(names)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return (Generator(n, i) for i, n in enumerate(self.names))

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Alphabet({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def generator(self, name: str) -> Generator:
        return Generator(name, self.index(name))

    @property
    def identity(self) -> "Word":
        return Word._raw(self, ())

    def gen(self, name: str) -> "Word":
        """The one-letter word for ``name``."""
        return Word._raw(self, (self.index(name) + 1,))

    def gens(self) -> list["Word"]:
        return [Word._raw(self, (i + 1,)) for i in range(len(self.names))]

    def restrict(self, keep: Iterable[str]) -> "Alphabet":
        keep = set(keep)
        return Alphabet(n for n in self.names if n in keep)


def reduce_code(code: Iterable[int]) -> tuple[int, ...]:
    """Free reduction of a signed-ordinal sequence, one stack pass."""
    out: list[int] = []
    for c in code:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def _as_code(alphabet: Alphabet, letters) -> Iterable[int]:
    for item in letters:
        if isinstance(item, Letter):
            gen, sign = item
            if sign not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {sign}")
            if gen.index >= len(alphabet) or alphabet.names[gen.index] != gen.name:
                raise AlphabetMismatchError(f"generator {gen.name!r} is not in {alphabet!r}")
            yield sign * (gen.index + 1)
        elif isinstance(item, tuple):
            # (name, exponent); the power is expanded into letters
            name, exp = item
            c = alphabet.index(name) + 1
            yield from [c if exp > 0 else -c] * abs(int(exp))
        else:
            c = int(item)
            if c == 0 or abs(c) > len(alphabet):
                raise ValueError(f"letter code {c} out of range")
            yield c


class Word:
    """A freely reduced word. Immutable and hashable.

    ``letters`` may be :class:`Letter` objects, ``(name, sign)`` pairs or
    raw signed ordinals.
    """

    __slots__ = ("alphabet", "code")

    def __init__(self, alphabet: Alphabet, letters: Iterable = ()):
        self.alphabet = alphabet
        self.code = reduce_code(_as_code(alphabet, letters))

    @classmethod
    def _raw(cls, alphabet: Alphabet, code: tuple[int, ...]) -> "Word":
        w = object.__new__(cls)
        w.alphabet = alphabet
        w.code = code
        return w

    @classmethod
    def from_code(cls, alphabet: Alphabet, code: Iterable[int]) -> "Word":
        return cls._raw(alphabet, reduce_code(code))

    @property
    def letters(self) -> tuple[Letter, ...]:
        names = self.alphabet.names
        return tuple(
            Letter(Generator(names[abs(c) - 1], abs(c) - 1), 1 if c > 0 else -1)
            for c in self.code
        )

    def is_identity(self) -> bool:
        return not self.code

    def __len__(self):
        return len(self.code)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.code == other.code and self.alphabet == other.alphabet

    def __hash__(self):
        return hash(self.code)

    def __lt__(self, other):
        return shortlex_key(self.code) < shortlex_key(other.code)

    def _check(self, other: "Word"):
        if self.alphabet is not other.alphabet and self.alphabet != other.alphabet:
            raise AlphabetMismatchError(
                f"cannot combine words over {self.alphabet!r} and {other.alphabet!r}"
            )

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        self._check(other)
        a, b = self.code, other.code
        i = 0
        n = min(len(a), len(b))
        while i < n and a[len(a) - 1 - i] == -b[i]:
            i += 1
        return Word._raw(self.alphabet, a[: len(a) - i] + b[i:])

    def inverse(self) -> "Word":
        return Word._raw(self.alphabet, tuple(-c for c in reversed(self.code)))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** -n
        out = self.alphabet.identity
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self, by: "Word") -> "Word":
        """``by * self * by^-1``."""
        return by * self * by.inverse()

    def cyclic_reduce(self) -> "Word":
        c = self.code
        i, j = 0, len(c) - 1
        while i < j and c[i] == -c[j]:
            i += 1
            j -= 1
        return Word._raw(self.alphabet, c[i : j + 1])

    def is_cyclically_reduced(self) -> bool:
        return len(self.code) < 2 or self.code[0] != -self.code[-1]

    def rotations(self) -> list["Word"]:
        c = self.code
        return [Word._raw(self.alphabet, c[i:] + c[:i]) for i in range(max(len(c), 1))]

    def count(self, name: str) -> int:
        """Number of letters (either sign) on generator ``name``."""
        k = self.alphabet.index(name) + 1
        return sum(1 for c in self.code if abs(c) == k)

    def exponent_sums(self) -> list[int]:
        sums = [0] * len(self.alphabet)
        for c in self.code:
            sums[abs(c) - 1] += 1 if c > 0 else -1
        return sums

    def generators_used(self) -> set[str]:
        names = self.alphabet.names
        return {names[abs(c) - 1] for c in self.code}

    def substitute(self, images: Mapping, target: Alphabet | None = None) -> "Word":
        return substitute(self, images, target)

    def rename(self, alphabet: Alphabet, mapping: Mapping[str, str] | None = None) -> "Word":
        """Re-encode over ``alphabet``, renaming letters through ``mapping``."""
        names = self.alphabet.names
        if mapping is None:
            code = tuple(
                (1 if c > 0 else -1) * (alphabet.index(names[abs(c) - 1]) + 1)
                for c in self.code
            )
        else:
            code = tuple(
                (1 if c > 0 else -1) * (alphabet.index(mapping[names[abs(c) - 1]]) + 1)
                for c in self.code
            )
        return Word._raw(alphabet, code)

    def __str__(self):
        return format_code(self.alphabet, self.code)

    def __repr__(self):
        return f"Word({str(self)!r})"


def shortlex_key(code: Sequence[int]):
    # order: a < a^-1 < b < b^-1 ...
    return (len(code), tuple(2 * abs(c) + (c < 0) for c in code))


def format_code(alphabet: Alphabet, code: Sequence[int]) -> str:
    """DSL spelling: ``x1 y1^-1 x1^2``; the identity is ``1``."""
    if not code:
        return "1"
    parts = []
    i = 0
    names = alphabet.names
    while i < len(code):
        j = i
        while j < len(code) and code[j] == code[i]:
            j += 1
        power = (j - i) * (1 if code[i] > 0 else -1)
        name = names[abs(code[i]) - 1]
        parts.append(name if power == 1 else f"{name}^{power}")
        i = j
    return " ".join(parts)


def free_reduce(raw: Iterable, alphabet: Alphabet) -> Word:
    return Word(alphabet, raw)


def concat(u: Word, v: Word) -> Word:
    return u * v


def invert(u: Word) -> Word:
    return u.inverse()


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


def substitute(u: Word, images: Mapping, target: Alphabet | None = None) -> Word:
    """Image of ``u`` under the letter map ``images``.

    Keys may be generator names or :class:`Generator` values. All images must
    share one alphabet; pass ``target`` when ``images`` may be empty.
    """
    by_name: dict[str, Word] = {}
    for key, img in images.items():
        by_name[key.name if isinstance(key, Generator) else key] = img
    for img in by_name.values():
        if target is None:
            target = img.alphabet
        elif img.alphabet != target:
            raise AlphabetMismatchError("images do not share a single target alphabet")
    if target is None:
        if u.code:
            raise MissingImageError(f"no image for generator {u.alphabet.names[abs(u.code[0]) - 1]!r}")
        return u
    names = u.alphabet.names
    table: dict[int, tuple[int, ...]] = {}
    out: list[int] = []
    for c in u.code:
        seg = table.get(c)
        if seg is None:
            name = names[abs(c) - 1]
            try:
                img = by_name[name]
            except KeyError:
                raise MissingImageError(f"no image for generator {name!r}") from None
            seg = img.code if c > 0 else img.inverse().code
            table[c] = seg
        for d in seg:
            if out and out[-1] == -d:
                out.pop()
            else:
                out.append(d)
    return Word._raw(target, tuple(out))

"""Parser and printer for ``.tri`` documents.

Grammar::

    doc      := item* ;
    item     := group | hom | cube | morphism | curves ;
    group    := "group" NAME "{" "gens" NAME* ";" ("rel" word "=" word ";")* "}" ;
    hom      := "hom" NAME ":" NAME "->" NAME "{" (NAME "->" word ";")* "}" ;
    cube     := "trisection" NAME "(" "g=" INT "," "k=" INT "," "p=" INT "," "b=" INT ")"
                "{" NAME NAME NAME "}" ;
    morphism := "morphism" NAME ":" NAME "->" NAME
                "{" "phi0" NAME ";" "phi1" NAME ";" "phi2" NAME ";" "phi3" NAME ";" "}" ;
    curves   := "curves" NAME "in" NAME "ker" NAME "{" word ("," word)* "}" ;
    word     := "1" | term+ ;
    term     := NAME ("^" SINT)? | "[" word "," word "]" ;

Terms may be separated by whitespace or ``*``; ``[u,v]`` is ``u v u^-1 v^-1``.
``//`` starts a comment. Names are ASCII. ``gens`` and a hom body may be
empty only when the group has no generators, which the (0,0) trisection
of the trivial group needs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .diagram import CurveWord
from .errors import DSLError, TrisectError
from .presentation import Presentation
from .trisection import CubeMorphism, GroupHom, TrisectionCube, TrisectionParams
from .words import Alphabet, Word, commutator

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|//[^\n]*)
  | (?P<arrow>->)
  | (?P<int>-?[0-9]+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_#.']*)
  | (?P<punct>[{}()\[\];,:=^*])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            tokens.append(Token(kind if kind != "punct" else s, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


# ----------------------------------------------------------------------
# declarations


@dataclass(frozen=True)
class GroupDecl:
    name: str
    generators: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...]
    line: int = field(default=0, compare=False)

    def presentation(self) -> Presentation:
        alpha = Alphabet(self.generators)
        return Presentation(alpha, tuple(l * r.inverse() for l, r in self.relations), self.name)


@dataclass(frozen=True)
class HomDecl:
    name: str
    domain: str
    codomain: str
    images: tuple[tuple[str, Word], ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CubeDecl:
    name: str
    params: tuple[int, int, int, int]
    maps: tuple[str, str, str]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MorphismDecl:
    name: str
    source: str
    target: str
    phis: tuple[str, str, str, str]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CurvesDecl:
    name: str
    group: str
    hom: str
    words: tuple[Word, ...]
    line: int = field(default=0, compare=False)


_KIND = {GroupDecl: "group", HomDecl: "hom", CubeDecl: "trisection", MorphismDecl: "morphism", CurvesDecl: "curves"}


@dataclass(frozen=True)
class CurveFamily:
    name: str
    group: Presentation
    hom: GroupHom
    curves: tuple[CurveWord, ...]


@dataclass
class Document:
    """Declarations in source order plus the objects they resolve to."""

    declarations: list = field(default_factory=list)
    groups: dict[str, Presentation] = field(default_factory=dict, compare=False)
    homs: dict[str, GroupHom] = field(default_factory=dict, compare=False)
    cubes: dict[str, TrisectionCube] = field(default_factory=dict, compare=False)
    morphisms: dict[str, CubeMorphism] = field(default_factory=dict, compare=False)
    curves: dict[str, CurveFamily] = field(default_factory=dict, compare=False)

    def _table(self, kind: str) -> dict:
        return {"group": self.groups, "hom": self.homs, "trisection": self.cubes,
                "morphism": self.morphisms, "curves": self.curves}[kind]

    def lookup(self, kind: str, name: str):
        try:
            return self._table(kind)[name]
        except KeyError:
            raise DSLError(f"no {kind} named {name!r}") from None

    def add(self, decl):
        """Resolve ``decl`` against earlier declarations and append it."""
        kind = _KIND[type(decl)]
        table = self._table(kind)
        if decl.name in table:
            raise DSLError(f"duplicate {kind} name {decl.name!r}", decl.line or None, 1 if decl.line else None)
        try:
            table[decl.name] = self._resolve(decl)
        except DSLError as e:
            if e.line is None and decl.line:
                raise DSLError(e.message, decl.line, 1) from None
            raise
        except TrisectError as e:
            raise DSLError(f"{kind} {decl.name}: {e}", decl.line or None, 1 if decl.line else None) from None
        self.declarations.append(decl)

    def _resolve(self, decl):
        if isinstance(decl, GroupDecl):
            return decl.presentation()
        if isinstance(decl, HomDecl):
            dom = self.lookup("group", decl.domain)
            cod = self.lookup("group", decl.codomain)
            return GroupHom.from_map(dom, cod, dict(decl.images), decl.name)
        if isinstance(decl, CubeDecl):
            maps = tuple(self.lookup("hom", n) for n in decl.maps)
            return TrisectionCube(TrisectionParams(*decl.params), maps, decl.name)
        if isinstance(decl, MorphismDecl):
            src = self.lookup("trisection", decl.source)
            tgt = self.lookup("trisection", decl.target)
            phis = [self.lookup("hom", n) for n in decl.phis]
            return CubeMorphism(src, tgt, *phis, name=decl.name)
        if isinstance(decl, CurvesDecl):
            grp = self.lookup("group", decl.group)
            hom = self.lookup("hom", decl.hom)
            if hom.domain != grp:
                raise DSLError(f"hom {decl.hom} does not start at group {decl.group}")
            return CurveFamily(decl.name, grp, hom, tuple(CurveWord(w, decl.name) for w in decl.words))
        raise TypeError(decl)

    def __eq__(self, other):
        return isinstance(other, Document) and self.declarations == other.declarations


# ----------------------------------------------------------------------
# parser


_KIND_NAMES = {"name": "a name", "int": "an integer", "arrow": "'->'"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return DSLError(msg, tok.line, tok.column)

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = repr(text) if text is not None else _KIND_NAMES.get(kind, repr(kind))
            got = repr(t.text) if t.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        return self.next()

    def keyword(self, text: str) -> Token:
        return self.expect("name", text)

    def name(self) -> str:
        return self.expect("name").text

    def integer(self) -> int:
        return int(self.expect("int").text)

    # -- words

    def word(self, alpha: Alphabet, stop: set[str]) -> Word:
        if self.tok.kind == "int" and self.tok.text == "1" and self.tokens[self.i + 1].kind in stop:
            self.next()
            return alpha.identity
        out = alpha.identity
        count = 0
        while True:
            t = self.tok
            if t.kind == "*" and count:
                self.next()
                t = self.tok
            if t.kind == "name":
                if t.text not in alpha:
                    raise self.error(f"unknown generator {t.text!r}")
                self.next()
                w = alpha.gen(t.text)
                if self.tok.kind == "^":
                    self.next()
                    w = w ** self.integer()
            elif t.kind == "[":
                self.next()
                u = self.word(alpha, {","})
                self.expect(",")
                v = self.word(alpha, {"]"})
                self.expect("]")
                w = commutator(u, v)
            else:
                if count == 0:
                    raise self.error("expected a word")
                return out
            out = out * w
            count += 1

    # -- items

    def document(self, doc: Document | None = None) -> Document:
        doc = doc if doc is not None else Document()
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind != "name":
                raise self.error(f"expected a declaration, got {t.text!r}")
            handler = {
                "group": self.group,
                "hom": self.hom,
                "trisection": self.cube,
                "morphism": self.morphism,
                "curves": self.curves,
            }.get(t.text)
            if handler is None:
                raise self.error(f"unknown declaration {t.text!r}")
            decl = handler(doc)
            doc.add(decl)
        return doc

    def group(self, doc):
        line = self.keyword("group").line
        name = self.name()
        self.expect("{")
        self.keyword("gens")
        gens = []
        while self.tok.kind == "name":
            t = self.next()
            if t.text in gens:
                raise self.error(f"duplicate generator {t.text!r}", t)
            gens.append(t.text)
        self.expect(";")
        alpha = Alphabet(gens)
        rels = []
        while self.tok.kind == "name" and self.tok.text == "rel":
            self.next()
            lhs = self.word(alpha, {"="})
            self.expect("=")
            rhs = self.word(alpha, {";"})
            self.expect(";")
            rels.append((lhs, rhs))
        self.expect("}")
        return GroupDecl(name, tuple(gens), tuple(rels), line)

    def hom(self, doc):
        line = self.keyword("hom").line
        name = self.name()
        self.expect(":")
        dom_tok = self.tok
        dom = self.name()
        self.expect("arrow")
        cod_tok = self.tok
        cod = self.name()
        try:
            src = doc.lookup("group", dom)
        except DSLError as e:
            raise self.error(e.message, dom_tok) from None
        try:
            tgt = doc.lookup("group", cod)
        except DSLError as e:
            raise self.error(e.message, cod_tok) from None
        self.expect("{")
        images = []
        seen = set()
        while self.tok.kind == "name":
            t = self.next()
            if t.text not in src.alphabet:
                raise self.error(f"image for unknown generator {t.text!r} of {dom}", t)
            if t.text in seen:
                raise self.error(f"second image for generator {t.text!r}", t)
            seen.add(t.text)
            self.expect("arrow")
            images.append((t.text, self.word(tgt.alphabet, {";"})))
            self.expect(";")
        if not images and src.generators:
            raise self.error("expected at least one image")
        end = self.expect("}")
        missing = [g for g in src.generators if g not in seen]
        if missing:
            raise self.error(f"no image for generator {missing[0]!r} of {dom}", end)
        return HomDecl(name, dom, cod, tuple(images), line)

    def cube(self, doc):
        line = self.keyword("trisection").line
        name = self.name()
        self.expect("(")
        vals = []
        for i, key in enumerate("gkpb"):
            if i:
                self.expect(",")
            self.keyword(key)
            self.expect("=")
            vals.append(self.integer())
        self.expect(")")
        self.expect("{")
        maps = []
        for _ in range(3):
            t = self.tok
            maps.append(self.name())
            if maps[-1] not in doc.homs:
                raise self.error(f"no hom named {maps[-1]!r}", t)
        self.expect("}")
        return CubeDecl(name, tuple(vals), tuple(maps), line)

    def morphism(self, doc):
        line = self.keyword("morphism").line
        name = self.name()
        self.expect(":")
        src_tok = self.tok
        src = self.name()
        self.expect("arrow")
        tgt_tok = self.tok
        tgt = self.name()
        for n, t in ((src, src_tok), (tgt, tgt_tok)):
            if n not in doc.cubes:
                raise self.error(f"no trisection named {n!r}", t)
        self.expect("{")
        phis = []
        for i in range(4):
            self.keyword(f"phi{i}")
            t = self.tok
            phis.append(self.name())
            if phis[-1] not in doc.homs:
                raise self.error(f"no hom named {phis[-1]!r}", t)
            self.expect(";")
        self.expect("}")
        return MorphismDecl(name, src, tgt, tuple(phis), line)

    def curves(self, doc):
        line = self.keyword("curves").line
        name = self.name()
        self.keyword("in")
        gtok = self.tok
        group = self.name()
        self.keyword("ker")
        htok = self.tok
        hom = self.name()
        if group not in doc.groups:
            raise self.error(f"no group named {group!r}", gtok)
        if hom not in doc.homs:
            raise self.error(f"no hom named {hom!r}", htok)
        alpha = doc.groups[group].alphabet
        self.expect("{")
        words = [self.word(alpha, {",", "}"})]
        while self.tok.kind == ",":
            self.next()
            words.append(self.word(alpha, {",", "}"}))
        self.expect("}")
        return CurvesDecl(name, group, hom, tuple(words), line)


def parse(text: str) -> Document:
    return _Parser(text).document()


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse a single word such as ``"w1^-1 y1 x1"`` or ``"[x1,y1] w1^-1"``."""
    p = _Parser(text)
    w = p.word(alphabet, {"eof"})
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after word")
    return w


# ----------------------------------------------------------------------
# printer


def serialize(doc: Document) -> str:
    return "".join(serialize_decl(d) + "\n" for d in doc.declarations)


def serialize_decl(d) -> str:
    if isinstance(d, GroupDecl):
        lines = [f"group {d.name} {{", f"  gens {' '.join(d.generators)};".replace("gens ;", "gens;")]
        lines += [f"  rel {l} = {r};" for l, r in d.relations]
        return "\n".join(lines) + "\n}"
    if isinstance(d, HomDecl):
        body = "\n".join(f"  {g} -> {w};" for g, w in d.images)
        return f"hom {d.name} : {d.domain} -> {d.codomain} {{\n{body}\n}}"
    if isinstance(d, CubeDecl):
        g, k, p, b = d.params
        return f"trisection {d.name} (g={g}, k={k}, p={p}, b={b}) {{ {' '.join(d.maps)} }}"
    if isinstance(d, MorphismDecl):
        body = " ".join(f"phi{i} {n};" for i, n in enumerate(d.phis))
        return f"morphism {d.name} : {d.source} -> {d.target} {{ {body} }}"
    if isinstance(d, CurvesDecl):
        return f"curves {d.name} in {d.group} ker {d.hom} {{ {', '.join(str(w) for w in d.words)} }}"
    raise TypeError(d)


def iter_words(doc: Document) -> Iterator[Word]:
    for d in doc.declarations:
        if isinstance(d, GroupDecl):
            for l, r in d.relations:
                yield l
                yield r
        elif isinstance(d, HomDecl):
            for _, w in d.images:
                yield w
        elif isinstance(d, CurvesDecl):
            yield from d.words

import re
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisect.cli import BUILTINS, builtin_source
from trisect.dsl import (
    CubeDecl,
    CurvesDecl,
    Document,
    GroupDecl,
    HomDecl,
    MorphismDecl,
    parse,
    parse_word,
    serialize,
    tokenize,
)
from trisect.errors import DSLError
from trisect.presentation import std_compression, std_surface
from trisect.words import Alphabet, Word

CORPUS = Path(__file__).parent / "corpus"
OK = sorted((CORPUS / "ok").glob("*.tri"))
BAD = sorted((CORPUS / "bad").glob("*.tri"))


@pytest.mark.parametrize("path", OK, ids=lambda p: p.stem)
def test_corpus_ok_round_trips(path):
    doc = parse(path.read_text())
    assert parse(serialize(doc)) == doc


@pytest.mark.parametrize("path", BAD, ids=lambda p: p.stem)
def test_corpus_bad_positions(path):
    text = path.read_text()
    line, col, msg = re.match(r"// error (\d+):(\d+) (.*)", text).groups()
    with pytest.raises(DSLError) as info:
        parse(text)
    e = info.value
    assert (e.line, e.column) == (int(line), int(col))
    assert msg in e.message


def test_corpus_covers_every_production():
    docs = [parse(p.read_text()) for p in OK]
    decls = [d for doc in docs for d in doc.declarations]
    kinds = {type(d) for d in decls}
    assert kinds == {GroupDecl, HomDecl, CubeDecl, MorphismDecl, CurvesDecl}
    assert any(not doc.declarations for doc in docs)  # doc := item* with no items
    tokens = [t for p in OK for t in tokenize(p.read_text())]
    texts = [t.text for t in tokens]
    assert "[" in texts and "^" in texts and "*" in texts
    # word := "1"
    assert any(t.kind == "int" and t.text == "1" and texts[i - 1] in ("->", "=", "rel") for i, t in enumerate(tokens))
    assert any(t.kind == "int" and t.text.startswith("-") for t in tokens)  # signed exponent
    # relations and multi-word curve families
    assert any(isinstance(d, GroupDecl) and d.relations for d in decls)
    assert any(isinstance(d, CurvesDecl) and len(d.words) > 1 for d in decls)


@pytest.mark.parametrize("name", BUILTINS)
def test_builtins_round_trip(name):
    doc = parse(builtin_source(name))
    assert parse(serialize(doc)) == doc


def test_spec_examples():
    doc = parse("""
      group S { gens x1 y1 w1 w2; rel [x1,y1] = w1 w2; }
      group C { gens d1 o1 o2; rel 1 = o1 o2; }
      hom f3 : S -> C { x1 -> d1; y1 -> o1 d1^-1; w1 -> o1; w2 -> o2; }
    """)
    assert doc.groups["S"].same_as(std_surface(1, 2))
    assert doc.groups["C"].same_as(std_compression(1, 0, 2))
    f3 = doc.homs["f3"]
    assert str(f3.image("y1")) == "o1 d1^-1"
    assert parse("") == Document()


def test_parse_word():
    a = Alphabet(["x1", "y1", "w1"])
    assert str(parse_word("w1^-1 y1 x1", a)) == "w1^-1 y1 x1"
    assert str(parse_word("[x1,y1] * w1^-1", a)) == "x1 y1 x1^-1 y1^-1 w1^-1"
    assert parse_word("1", a).is_identity
    assert parse_word("x1^0", a).is_identity
    for bad in ("", "x1 ^", "z", "x1 y1 ]", "1 x1"):
        with pytest.raises(DSLError):
            parse_word(bad, a)


def test_unicode_rejected():
    with pytest.raises(DSLError):
        parse("group G { gens δ; }")


def test_dsl_error_str():
    assert str(DSLError("oops", 3, 4)) == "3:4: oops"
    assert str(DSLError("oops")) == "oops"


# ----------------------------------------------------------------------
# round trip over random documents

NAME = st.from_regex(r"[A-Za-z_][A-Za-z0-9_#.']{0,4}", fullmatch=True)


@st.composite
def words_over(draw, alpha, max_size=6):
    if not len(alpha):
        return alpha.identity
    codes = draw(st.lists(st.integers(1, len(alpha)).flatmap(lambda i: st.sampled_from([i, -i])), max_size=max_size))
    return Word(alpha, codes)


@st.composite
def documents(draw):
    doc = Document()
    groups = []
    for _ in range(draw(st.integers(0, 3))):
        name = draw(NAME.filter(lambda n: n not in doc.groups))
        gens = tuple(draw(st.lists(NAME, unique=True, max_size=4)))
        alpha = Alphabet(gens)
        rels = tuple((draw(words_over(alpha)), draw(words_over(alpha))) for _ in range(draw(st.integers(0, 2))))
        doc.add(GroupDecl(name, gens, rels))
        groups.append(name)
    homs = []
    if groups:
        for _ in range(draw(st.integers(0, 3))):
            name = draw(NAME.filter(lambda n: n not in doc.homs))
            src, dst = draw(st.sampled_from(groups)), draw(st.sampled_from(groups))
            cod = doc.groups[dst].alphabet
            images = tuple((g, draw(words_over(cod))) for g in doc.groups[src].generators)
            doc.add(HomDecl(name, src, dst, images))
            homs.append((name, src))
    for name, src in homs:
        gens = doc.groups[src].alphabet
        if draw(st.booleans()) and len(gens):
            curves = tuple(draw(words_over(gens)) for _ in range(draw(st.integers(1, 3))))
            cname = draw(NAME.filter(lambda n: n not in doc.curves))
            doc.add(CurvesDecl(cname, src, name, curves))
    if draw(st.booleans()):
        _add_cube(draw, doc)
    return doc


def _add_cube(draw, doc):
    g, b = draw(st.integers(0, 2)), draw(st.integers(1, 2))
    S, C = std_surface(g, b), std_compression(g, 0, b)
    sname, cname = "S_std", "C_std"
    if sname in doc.groups or cname in doc.groups:
        return
    for name, P in ((sname, S), (cname, C)):
        rel = P.relators[0]
        doc.add(GroupDecl(name, P.generators, ((rel, P.alphabet.identity),)))
    maps = []
    for i in range(3):
        images = tuple((n, draw(words_over(C.alphabet, 3))) for n in S.generators)
        doc.add(HomDecl(f"cube_f{i}", sname, cname, images))
        maps.append(f"cube_f{i}")
    doc.add(HomDecl("cube_idS", sname, sname, tuple((n, S.alphabet.gen(n)) for n in S.generators)))
    doc.add(HomDecl("cube_idC", cname, cname, tuple((n, C.alphabet.gen(n)) for n in C.generators)))
    doc.add(CubeDecl("Tc", (g, draw(st.integers(0, g)), 0, b), tuple(maps)))
    doc.add(MorphismDecl("mc", "Tc", "Tc", ("cube_idS", "cube_idC", "cube_idC", "cube_idC")))


@settings(max_examples=150, deadline=None)
@given(documents())
def test_round_trip(doc):
    text = serialize(doc)
    again = parse(text)
    assert again == doc
    assert serialize(again) == text

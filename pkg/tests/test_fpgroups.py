import pytest
from hypothesis import given, strategies as st

from vcg.catalog import catalog_group, cyclic
from vcg.fpgroups import (
    Presentation,
    PresentationError,
    Word,
    commutator,
    evaluate_word,
    fp_inverse,
    fp_multiply,
    fp_normalize,
    free_product_presentation,
    parse_presentation,
    parse_word,
    standard_presentation,
)


def test_free_reduction():
    w = Word.of("a", "b", ("b", -1), "a")
    assert w == Word.gen("a", 2)
    assert str(Word()) == "1"
    assert str(Word.of("a", ("b", -1))) == "a b^-1"


def test_parse_word_forms():
    assert parse_word("a^2 b^-1") == Word.of(("a", 2), ("b", -1))
    assert parse_word("[a, b]") == commutator(Word.gen("a"), Word.gen("b"))
    assert parse_word("(a b)^2") == Word.of("a", "b", "a", "b")
    assert parse_word("a*b") == Word.of("a", "b")
    assert parse_word("1") == Word()


def test_commutator_convention():
    a, b = Word.gen("a"), Word.gen("b")
    assert commutator(a, b) == a.inverse() * b.inverse() * a * b
    assert commutator(a, b, a) == commutator(commutator(a, b), a)


def test_parse_presentation():
    p = parse_presentation("a, b | a^2, b^3, (a b)^2")
    assert p.generators == ("a", "b") and len(p.relators) == 3
    with pytest.raises(PresentationError):
        parse_presentation("a | b")
    with pytest.raises(PresentationError):
        parse_presentation("a, b")
    with pytest.raises(PresentationError):
        parse_word("a )")


def test_standard_presentation_holds():
    g = catalog_group("S3")
    sp = standard_presentation(g)
    asg = sp.assignment()
    assert len(sp.presentation.relators) == 36
    assert all(evaluate_word(r, asg, g) == g.identity for r in sp.presentation.relators)


def test_free_product_presentation_renames():
    p = parse_presentation("a | a^2")
    fp = free_product_presentation([p, p])
    assert len(set(fp.presentation.generators)) == 2
    assert fp.embeddings[0]["a"] != fp.embeddings[1]["a"]


def test_fp_normal_form():
    f = [cyclic(2), cyclic(3)]
    assert fp_normalize(f, [(0, 1), (0, 1), (1, 1)]) == ((1, 1),)
    assert fp_multiply(f, ((0, 1),), ((0, 1),)) == ()
    u = ((0, 1), (1, 2))
    assert fp_multiply(f, u, fp_inverse(f, u)) == ()


symbols = st.sampled_from(["a", "b", "c"])
words = st.lists(st.tuples(symbols, st.integers(-3, 3)), max_size=8).map(Word)


@given(words, words, words)
def test_word_group_laws(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert (u * u.inverse()) == Word()
    assert (u * v).inverse() == v.inverse() * u.inverse()


@given(words, st.integers(-4, 4), st.integers(-4, 4))
def test_word_powers(u, m, n):
    assert (u**m) * (u**n) == u ** (m + n)


@given(words)
def test_print_parse_round_trip(u):
    assert parse_word(str(u)) == u


FACTORS = [catalog_group("D8"), cyclic(3), catalog_group("S3")]
syllable = st.integers(0, 2).flatmap(lambda f: st.tuples(st.just(f), st.integers(0, FACTORS[f].order - 1)))
elements = st.lists(syllable, max_size=6).map(lambda s: fp_normalize(FACTORS, s))


@given(elements, elements, elements)
def test_free_product_associative(u, v, w):
    assert fp_multiply(FACTORS, fp_multiply(FACTORS, u, v), w) == fp_multiply(FACTORS, u, fp_multiply(FACTORS, v, w))


@given(elements)
def test_free_product_normal_form_reduced(u):
    assert all(a[0] != b[0] for a, b in zip(u, u[1:]))
    assert all(x != FACTORS[f].identity for f, x in u)
    assert fp_multiply(FACTORS, u, fp_inverse(FACTORS, u)) == ()

import pytest
from hypothesis import given, settings, strategies as st

from vcg.catalog import catalog, catalog_group
from vcg.cosets import (
    CosetOverflow,
    element_words,
    find_presentation,
    group_from_table,
    presented_group,
    table_homomorphism,
    todd_coxeter,
)
from vcg.fpgroups import Word, evaluate_word, parse_presentation, parse_word, standard_presentation
from vcg.groups import is_isomorphic


@pytest.mark.parametrize(
    "text, order",
    [
        ("a, b | a^2, b^3, (a b)^2", 6),
        ("a | a^7", 7),
        ("r, s | r^4, s^2, (s r)^2", 8),
        ("x, y | x^4, x^2 y^-2, y^-1 x y x", 8),
        ("a, b | a^2, b^2, (a b)^3", 6),
        ("a, b | a^3, b^3, (a b)^3, [a, b]", 9),
        ("a, b | a^2, b^3, (a b)^3", 12),
        ("a, b | a^2, b^3, (a b)^4", 24),
        ("a, b | a^2, b^3, (a b)^5", 60),
        ("a |", None),
    ],
)
def test_enumeration_orders(text, order):
    p = parse_presentation(text)
    if order is None:
        with pytest.raises(CosetOverflow):
            todd_coxeter(p, max_cosets=50)
        return
    t = todd_coxeter(p)
    assert t.index == order
    t.check()


def test_subgroup_index():
    p = parse_presentation("a, b | a^2, b^3, (a b)^4")
    assert todd_coxeter(p, [parse_word("a")]).index == 12
    assert todd_coxeter(p, [parse_word("b")]).index == 8


def test_quaternion_is_q8():
    g = presented_group(parse_presentation("x, y | x^4, x^2 y^-2, y^-1 x y x"))
    assert is_isomorphic(g, catalog_group("Q8"))[0]


def test_representatives_trace_to_their_cosets():
    t = todd_coxeter(parse_presentation("a, b | a^2, b^3, (a b)^2"))
    for k, w in enumerate(t.representatives):
        assert t.trace(0, w) == k


def test_overflow_cap_from_environment(monkeypatch):
    monkeypatch.setenv("VCG_TC_MAX_COSETS", "5")
    with pytest.raises(CosetOverflow):
        todd_coxeter(parse_presentation("a | a^7"))


@pytest.mark.parametrize("g", catalog(12), ids=lambda g: g.name)
def test_standard_presentation_round_trip(g):
    sp = standard_presentation(g)
    h = group_from_table(todd_coxeter(sp.presentation))
    assert h.order == g.order and is_isomorphic(g, h)[0]


@pytest.mark.parametrize("g", catalog(extended=True), ids=lambda g: g.name)
def test_found_presentation_round_trip(g):
    p, asg = find_presentation(g)
    assert all(evaluate_word(r, asg, g) == g.identity for r in p.relators)
    t = todd_coxeter(p)
    h = group_from_table(t)
    assert h.order == g.order
    f = table_homomorphism(t, h, g, asg)
    assert f.is_bijective()


@settings(max_examples=15)
@given(st.sampled_from(["S3", "D8", "Q8", "A4"]), st.data())
def test_element_words_evaluate(name, data):
    g = catalog_group(name)
    _, asg = find_presentation(g)
    words = element_words(g, asg)
    x = data.draw(st.integers(0, g.order - 1))
    assert evaluate_word(words[x], asg, g) == x

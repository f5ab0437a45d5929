import pytest
from hypothesis import given, settings, strategies as st

from vcg.catalog import catalog, catalog_group
from vcg.covers import (
    CoverCertificate,
    CoverError,
    CoverFailure,
    Variety,
    alternative_complements,
    check_v_cover,
    cover_from_cocycle,
    cover_from_splitting,
    marginal_by_definition,
    marginal_subgroup,
    require_cover,
    schur_baer_divisibility,
    standard_epimorphism,
    verbal_by_definition,
    verbal_subgroup,
)
from vcg.groups import GroupError, center, is_isomorphic, subgroup_generated
from vcg.homology import relation_module_splitting, schur_multiplier
from vcg.lattice import FgAbelianGroup


def test_d8_and_q8_cover_klein_four():
    v4 = catalog_group("C2xC2")
    for name in ("D8", "Q8"):
        g = catalog_group(name)
        cert = check_v_cover(g, center(g), v4)
        assert cert.ok and cert.A.order == 2


def test_failure_clauses():
    d8, c4, c2 = catalog_group("D8"), catalog_group("C4"), catalog_group("C2")
    s = subgroup_generated(d8, [d8.element("s")])
    assert check_v_cover(d8, s, catalog_group("C2xC2")).clause == "normal"
    assert check_v_cover(d8, center(d8), c4).clause == "quotient"
    assert check_v_cover(c4, subgroup_generated(c4, [2]), c2).clause == "containment"
    assert check_v_cover(d8, d8.trivial, d8).clause == "multiplier"
    with pytest.raises(CoverError):
        require_cover(c4, subgroup_generated(c4, [2]), c2)


def test_certificates_cannot_be_forged():
    d8 = catalog_group("D8")
    with pytest.raises(TypeError):
        CoverCertificate(d8, center(d8), catalog_group("C2xC2"), Variety.abelian(), FgAbelianGroup((2,)), None)


def test_nilpotent_variety_needs_supplied_invariant():
    g = catalog_group("D8")
    with pytest.raises(GroupError):
        check_v_cover(g, g.trivial, g, Variety.nilpotent(2))
    # every group of class 2 is its own N2 cover when its N2 invariant is trivial
    cert = check_v_cover(g, g.trivial, g, Variety.nilpotent(2), FgAbelianGroup())
    assert cert.ok


def test_variety_parsing():
    assert Variety.parse("abelian").is_abelian
    assert Variety.parse("N3").c == 3
    with pytest.raises(ValueError):
        Variety.parse("solvable")


def test_cocycle_covers_have_expected_shape():
    assert is_isomorphic(cover_from_cocycle(catalog_group("C2xC2"))[0], catalog_group("D8"))[0]
    e, _ = cover_from_cocycle(catalog_group("C3xC3"))
    assert e.order == 27 and e.exponent == 3


def test_alternative_complements_reach_q8():
    v4 = catalog_group("C2xC2")
    data = relation_module_splitting(v4)
    kinds = set()
    for comp in alternative_complements(data):
        e, _ = cover_from_splitting(v4, comp, data)
        kinds.add("D8" if is_isomorphic(e, catalog_group("D8"))[0] else "Q8" if is_isomorphic(e, catalog_group("Q8"))[0] else "?")
    assert kinds == {"D8", "Q8"}


@pytest.mark.parametrize("g", catalog(12), ids=lambda g: g.name)
def test_both_constructions(g):
    m = schur_multiplier(g).group
    e1, c1 = cover_from_cocycle(g)
    e2, c2 = cover_from_splitting(g)
    assert e1.order == e2.order == g.order * m.torsion_order
    c1.revalidate()
    c2.revalidate()
    assert standard_epimorphism(c1)["ok"] and standard_epimorphism(c2)["ok"]


@pytest.mark.parametrize("g", catalog(extended=True), ids=lambda g: g.name)
def test_schur_baer(g):
    r = schur_baer_divisibility(g)
    assert r.ok
    assert g.order**r.k % max(r.multiplier.torsion_order, 1) == 0


def test_schur_baer_minimal_k():
    assert schur_baer_divisibility(catalog_group("C2^4")).k == 2
    assert schur_baer_divisibility(catalog_group("C4xC4")).k == 1
    assert schur_baer_divisibility(catalog_group("S3")).k == 0


SMALL = [g.name for g in catalog(16, extended=True)]


@settings(max_examples=30)
@given(st.sampled_from(SMALL), st.integers(1, 3))
def test_marginal_and_verbal_match_series(name, c):
    g = catalog_group(name)
    v = Variety.nilpotent(c)
    assert marginal_by_definition(v, g) == marginal_subgroup(v, g)
    assert verbal_by_definition(v, g) == verbal_subgroup(v, g)

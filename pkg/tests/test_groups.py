import numpy as np
import pytest
from hypothesis import given, strategies as st

from vcg.catalog import (
    EXTENDED_CATALOG,
    catalog_group,
    cyclic,
    dihedral,
    from_permutations,
    make_group,
    parse_cycles,
    symmetric,
)
from vcg.groups import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    Homomorphism,
    abelian_invariants,
    abelianization,
    center,
    derived_subgroup,
    direct_product,
    direct_product_data,
    extend_generator_images,
    is_isomorphic,
    is_nilpotent,
    lower_central_series,
    nilpotency_class,
    normal_closure,
    quotient_group,
    subgroup_generated,
    sylow_subgroup,
    upper_central_series,
)

# name: (order, exponent, |Z|, |G'|, number of involutions), standard facts
KNOWN = {
    "C2xC2": (4, 2, 4, 1, 3),
    "S3": (6, 6, 1, 3, 3),
    "D8": (8, 4, 2, 2, 5),
    "Q8": (8, 4, 2, 2, 1),
    "C2^3": (8, 2, 8, 1, 7),
    "D10": (10, 10, 1, 5, 5),
    "D12": (12, 6, 2, 3, 7),
    "A4": (12, 6, 1, 4, 3),
    "Dic12": (12, 12, 2, 3, 1),
    "D16": (16, 8, 2, 4, 9),
    "Q16": (16, 8, 2, 4, 1),
    "C2xD8": (16, 4, 4, 2, 11),
    "C4xC4": (16, 4, 16, 1, 3),
}


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_known_invariants(name):
    g = catalog_group(name)
    order, exp, z, d, inv = KNOWN[name]
    assert g.order == order
    assert g.exponent == exp
    assert center(g).order == z
    assert derived_subgroup(g).order == d
    assert int((g.element_orders == 2).sum()) == inv


def test_catalog_names_resolve():
    for name in EXTENDED_CATALOG:
        assert catalog_group(name).order >= 1


def test_d8_q8_not_isomorphic():
    ok, witness = is_isomorphic(catalog_group("D8"), catalog_group("Q8"))
    assert not ok and witness is None


def test_isomorphism_witness_is_bijective():
    a = dihedral(6)
    b = symmetric(3)
    ok, f = is_isomorphic(a, b)
    assert ok and f.is_bijective()


def test_cyclic_product_coprime():
    assert is_isomorphic(direct_product([cyclic(2), cyclic(3)]), cyclic(6))[0]
    assert not is_isomorphic(direct_product([cyclic(2), cyclic(2)]), cyclic(4))[0]


def test_abelian_invariants():
    assert abelian_invariants(catalog_group("C2xC4")).invariant_factors == (2, 4)
    assert abelian_invariants(catalog_group("C6xC4")).invariant_factors == (2, 12)
    with pytest.raises(GroupError):
        abelian_invariants(catalog_group("S3"))


def test_abelianization():
    ab, proj = abelianization(catalog_group("D8"))
    assert abelian_invariants(ab).invariant_factors == (2, 2)
    assert proj.is_surjective()
    ab, _ = abelianization(catalog_group("A4"))
    assert ab.order == 3


def test_quotient_by_center():
    d8 = catalog_group("D8")
    q, proj = quotient_group(d8, center(d8))
    assert q.order == 4 and q.is_abelian and proj.kernel.order == 2


def test_quotient_requires_normal():
    s3 = catalog_group("S3")
    t = subgroup_generated(s3, [s3.element("(1 2)")])
    with pytest.raises(GroupError):
        quotient_group(s3, t)
    assert normal_closure(s3, [s3.element("(1 2)")]).order == 6


def test_series():
    d8 = catalog_group("D8")
    assert [s.order for s in lower_central_series(d8)] == [8, 2, 1]
    assert [s.order for s in upper_central_series(d8)] == [1, 2, 8]
    assert nilpotency_class(d8) == 2
    assert not is_nilpotent(catalog_group("S3"))
    assert nilpotency_class(catalog_group("D16")) == 3


def test_sylow():
    a4 = catalog_group("A4")
    assert sylow_subgroup(a4, 2).order == 4
    assert sylow_subgroup(a4, 3).order == 3
    g = catalog_group("C2^2xC3^2")
    assert sylow_subgroup(g, 3).order == 9


def test_homomorphism_checks_multiplication():
    c4, c2 = cyclic(4), cyclic(2)
    with pytest.raises(GroupError):
        Homomorphism(c2, c4, (0, 1))
    f = Homomorphism(c4, c2, (0, 1, 0, 1))
    assert f.kernel.order == 2 and f.image.order == 2


def test_extend_generator_images():
    c4 = cyclic(4)
    assert extend_generator_images(c4, c4, {1: 2}).images == (0, 2, 0, 2)
    assert extend_generator_images(cyclic(3), cyclic(2), {1: 1}) is None


def test_composition_left_to_right():
    c4, c2 = cyclic(4), cyclic(2)
    sq = Homomorphism(c4, c4, (0, 2, 0, 2))
    red = Homomorphism(c4, c2, (0, 1, 0, 1))
    assert sq.then(red).images == (0, 0, 0, 0)


def test_permutations_and_cap():
    assert parse_cycles("(1 2 3)") == (1, 2, 0)
    assert from_permutations(["(1 2)", "(1 2 3 4)"]).order == 24
    with pytest.raises(GroupError):
        from_permutations(["(1 21)"])


def test_make_group_sources(tmp_path):
    p = tmp_path / "c3.json"
    p.write_text('{"elements": ["e", "x", "y"], "table": [["e","x","y"],["x","y","e"],["y","e","x"]]}')
    assert make_group(str(p)).order == 3
    assert make_group("(1 2 3)").order == 3


def test_bad_table_rejected():
    with pytest.raises(GroupError):
        FiniteGroup(("e", "x"), np.array([[0, 1], [1, 1]], dtype=np.int32))


def test_direct_product_cap():
    with pytest.raises(CapExceeded):
        direct_product([cyclic(64), cyclic(128)])


names = st.sampled_from(["S3", "D8", "Q8", "A4", "C2xC4", "Dic12", "D10"])


@given(names, st.data())
def test_associativity_and_inverses(name, data):
    g = catalog_group(name)
    el = st.integers(0, g.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
    assert g.mul(a, g.inv(a)) == g.identity
    assert g.inv(g.mul(a, b)) == g.mul(g.inv(b), g.inv(a))


@given(names, st.data())
def test_power_laws(name, data):
    g = catalog_group(name)
    a = data.draw(st.integers(0, g.order - 1))
    m, n = data.draw(st.integers(-20, 20)), data.draw(st.integers(-20, 20))
    assert g.mul(g.power(a, m), g.power(a, n)) == g.power(a, m + n)
    assert g.power(a, int(g.element_orders[a])) == g.identity


@given(st.lists(st.sampled_from(["C2", "C3", "S3", "C4"]), min_size=1, max_size=3))
def test_direct_product_projections(names):
    fs = [catalog_group(n) for n in names]
    dp = direct_product_data(fs)
    assert dp.group.order == int(np.prod([f.order for f in fs]))
    for inj, proj in zip(dp.injections, dp.projections):
        assert inj.then(proj).images == Homomorphism.identity_map(inj.source).images


@given(names, st.data())
def test_lagrange_for_generated_subgroups(name, data):
    g = catalog_group(name)
    gens = data.draw(st.lists(st.integers(0, g.order - 1), max_size=2))
    h = subgroup_generated(g, gens)
    assert g.order % h.order == 0

import random

import pytest
from hypothesis import given, settings, strategies as st

from vcg.catalog import catalog, catalog_group, cyclic
from vcg.colimits import (
    UNKNOWN,
    ChainSystem,
    Obstruction,
    PosetSystem,
    chain_cover_check,
    colimit,
    colimit_cover_check,
    colimit_exactness,
    constant_chain,
    constant_system,
    cover_system,
    cross_check_colimits,
    cyclic_tower,
    free_product_counterexample,
    homomorphisms,
    induced_cover_system,
    injections,
    mediating_morphism,
    multiplier_colimit_check,
    product_colimit_swap,
    quotient_colimit,
    random_poset_system,
    subgroup_colimit_check,
    system_from_dict,
    validate_directed_system,
)
from vcg.groups import GroupError, Homomorphism, is_isomorphic
from vcg.products import sylow_cover
from vcg.scenarios import exact_systems, limit_commute_systems


def two_into_v4():
    c2a, c2b, v4 = cyclic(2), cyclic(2), catalog_group("C2xC2")
    f = injections(c2a, v4)
    g = [h for h in injections(c2b, v4) if h.image != f[0].image][0]
    return PosetSystem([1, 2, 3], [(1, 3), (2, 3)], {1: c2a, 2: c2b, 3: v4}, {(1, 3): f[0], (2, 3): g})


def test_validation_examples():
    assert validate_directed_system(constant_system(catalog_group("C2xC2"))).ok
    r = validate_directed_system(cyclic_tower(3))
    assert r.ok and r.scope == "to horizon 3"
    bad = PosetSystem([1, 2], [], {1: cyclic(2), 2: cyclic(2)}, {})
    r = validate_directed_system(bad)
    assert not r.ok and "not directed" in r.violation
    with pytest.raises(GroupError):
        colimit(bad)


def test_composition_violation_named():
    c4 = cyclic(4)
    sq = Homomorphism(c4, c4, (0, 2, 0, 2))
    ident = Homomorphism.identity_map(c4)
    d = PosetSystem([1, 2, 3], [(1, 2), (2, 3)], {1: c4, 2: c4, 3: c4}, {(1, 2): ident, (2, 3): ident, (1, 3): sq})
    r = validate_directed_system(d)
    assert not r.ok and "compose" in r.violation


def test_poset_colimit_is_maximum():
    d = two_into_v4()
    top = colimit(d)
    assert top.top == 3 and top.group.order == 4
    assert cross_check_colimits(d).ok


def test_chain_colimit_equality():
    col = colimit(cyclic_tower(3))
    # classes of (1, a) and (2, a^2) agree
    assert col.equal(col.inject(1, 1), col.inject(2, 2)) is True
    assert col.equal(col.inject(1, 1), col.inject(2, 1)) == UNKNOWN
    stable = constant_chain(catalog_group("C2xC2"), 4)
    sc = colimit(stable)
    assert sc.equal(sc.inject(1, 1), sc.inject(3, 2)) is False
    assert all(sc.stabilized_at(sc.inject(1, x)) == 1 for x in range(4))


@settings(max_examples=30)
@given(st.data())
def test_chain_equality_is_a_congruence(data):
    col = colimit(cyclic_tower(4))
    pick = st.integers(1, 4).flatmap(lambda k: st.tuples(st.just(k), st.integers(0, 2**k - 1)))
    (i, x), (j, y), (k, z) = data.draw(pick), data.draw(pick), data.draw(pick)
    u, v, w = col.inject(i, x), col.inject(j, y), col.inject(k, z)
    if col.equal(u, v) is True:
        assert col.equal(col.multiply(u, w), col.multiply(v, w)) is True
        assert col.equal(col.inverse(u), col.inverse(v)) is True


def test_quotient_construction_on_chain_prefixes():
    for k in (1, 2, 4):
        pre = cyclic_tower(k).prefix()
        q = quotient_colimit(pre)
        assert q.group.order == 2**k
        assert cross_check_colimits(pre).ok


def test_mediating_morphism_examples():
    v4 = catalog_group("C2xC2")
    d = constant_system(v4, (1, 2))
    ident = Homomorphism.identity_map(v4)
    assert mediating_morphism(d, v4, {1: ident, 2: ident}).images == ident.images
    c2 = cyclic(2)
    inc = injections(c2, v4)[0]
    d2 = PosetSystem([1, 2], [(1, 2)], {1: c2, 2: v4}, {(1, 2): inc})
    assert mediating_morphism(d2, v4, {1: inc, 2: ident}).images == ident.images
    tau = mediating_morphism(d2, c2, {1: Homomorphism.trivial_map(c2, c2), 2: Homomorphism.trivial_map(v4, c2)})
    assert set(tau.images) == {0}
    with pytest.raises(GroupError):
        mediating_morphism(d2, v4, {1: Homomorphism.trivial_map(c2, v4), 2: ident})


@settings(max_examples=20)
@given(st.integers(0, 10_000))
def test_mediating_morphism_factors_random_cones(seed):
    rng = random.Random(seed)
    d = random_poset_system(rng, ["C2", "C2xC2", "C4"], max_nodes=3)
    top = colimit(d)
    h = catalog_group(rng.choice(["C2", "C2xC2", "D8"]))
    tau = rng.choice(homomorphisms(top.group, h))
    cone = {i: d.lam(i, top.top).then(tau) for i in d.indices()}
    got = mediating_morphism(d, h, cone)
    assert got.images == tau.images
    assert all(d.lam(i, top.top).then(got).images == cone[i].images for i in d.indices())


def test_product_swap():
    a, b = constant_system(cyclic(2), (1, 2)), constant_system(cyclic(3), (1, 2))
    r = product_colimit_swap(a, b)
    assert r.ok and r.order == 6
    d = two_into_v4()
    assert product_colimit_swap(d, d).ok
    assert product_colimit_swap(cyclic_tower(3), cyclic_tower(3)).ok


def test_multiplier_colimit_examples():
    r = multiplier_colimit_check(constant_system(catalog_group("C2xC2")))
    assert r.ok and r.colimit_of_multipliers.invariant_factors == (2,)
    systems = limit_commute_systems()
    r = multiplier_colimit_check(systems["C2 < C2^2 < C2^3"])
    assert r.ok and r.multiplier_of_colimit.invariant_factors == (2, 2, 2)
    r = multiplier_colimit_check(cyclic_tower(3).prefix())
    assert r.ok and r.colimit_of_multipliers.is_trivial()


@pytest.mark.parametrize("name", sorted(limit_commute_systems()))
def test_multiplier_commutes_with_limits(name):
    assert multiplier_colimit_check(limit_commute_systems()[name]).comparison_bijective


def test_induced_constant_d8():
    s = induced_cover_system(constant_system(catalog_group("C2xC2"), (1, 2, 3)))
    assert not isinstance(s, Obstruction)
    for f in s.lifted.values():
        assert f.images == Homomorphism.identity_map(f.source).images
    rep = colimit_cover_check(s)
    assert rep.ok and is_isomorphic(rep.certificate.cover, catalog_group("D8"))[0]


def test_alternating_d8_q8_obstruction():
    from vcg.scenarios import _alternating_d8q8

    d, choices = _alternating_d8q8()
    res = induced_cover_system(d, choices)
    assert isinstance(res, Obstruction) and res.pair == (1, 2)


def test_cyclic_chain_covers():
    rep = chain_cover_check(cyclic_tower(3))
    assert rep.verdict == "verified-to-horizon"
    assert rep.certificate.A.order == 1


def test_sylow_cover_at_maximum():
    g = catalog_group("C2^2xC3^2")
    cert = sylow_cover(g)
    rep = colimit_cover_check(cover_system(constant_system(g, (1, 2)), {1: cert, 2: cert}))
    assert rep.ok and rep.certificate.cover.order == 216


@pytest.mark.parametrize("seed", range(6))
def test_random_induced_systems_commute_with_projections(seed):
    d = random_poset_system(random.Random(seed), ["C2", "C2xC2", "C3"])
    s = induced_cover_system(d, "search")
    assert not isinstance(s, Obstruction)
    for (i, j), f in s.lifted.items():
        pi, pj = s.stages[i].certificate.projection, s.stages[j].certificate.projection
        assert f.then(pj).images == pi.then(d.lam(i, j)).images
    assert colimit_cover_check(s).ok


@pytest.mark.parametrize("case", exact_systems(), ids=lambda c: c[0])
def test_exactness(case):
    _, da, db, dc, alpha, beta = case
    assert colimit_exactness(da, db, dc, alpha, beta).ok


def test_exactness_detects_non_exact():
    _, da, db, dc, alpha, beta = exact_systems()[1]
    triv = {i: Homomorphism.trivial_map(beta[i].source, beta[i].target) for i in beta}
    assert not colimit_exactness(da, db, dc, alpha, triv).ok


@pytest.mark.parametrize("g", catalog(12), ids=lambda g: g.name)
def test_subgroup_system_colimit(g):
    assert subgroup_colimit_check(g)


def test_free_product_counterexample_cases():
    r = free_product_counterexample(cyclic(2), cyclic(2))
    assert r.expected_multiplier.is_trivial() and "no contradiction" in r.conclusion
    r = free_product_counterexample(catalog_group("C2xC2"), cyclic(3), 3)
    assert r.expected_multiplier.invariant_factors == (2,) and r.ok
    with pytest.raises(ValueError):
        free_product_counterexample(cyclic(2), cyclic(2), 7)


def test_system_file_round_trip():
    data = {
        "index": {"nodes": ["1", "2", "3"], "order": [["1", "3"], ["2", "3"]]},
        "stages": {"1": "C2", "2": "C2", "3": "C2xC2"},
        "maps": [
            {"from": "1", "to": "3", "images": {"a": "(a,1)"}},
            {"from": "2", "to": "3", "images": {"a": "(1,a)"}},
        ],
    }
    d, choices = system_from_dict(data)
    assert validate_directed_system(d).ok and choices == {}
    chain = {"index": "chain", "stages": {"1": "C2", "2": "C4"}, "maps": [{"from": 1, "to": 2, "images": {"a": "a^2"}}]}
    c, _ = system_from_dict(chain)
    assert isinstance(c, ChainSystem) and c.horizon == 2
    bad = dict(data, maps=[{"from": "1", "to": "3", "images": {"a": "(a,a)"}}, {"from": "2", "to": "3", "images": {"a": "(1,1)"}}])
    d, _ = system_from_dict(bad)
    assert validate_directed_system(d).ok
    with pytest.raises(GroupError):
        system_from_dict(dict(data, stages={"1": "C4", "2": "C2", "3": "C2xC2"}, maps=[{"from": "1", "to": "3", "images": {"a": "(a,1)"}}]))

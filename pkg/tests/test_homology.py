import pytest
from hypothesis import given, settings, strategies as st

from vcg.catalog import catalog, catalog_group, cyclic, heisenberg, symmetric
from vcg.colimits import homomorphisms
from vcg.groups import CapExceeded, Homomorphism
from vcg.homology import (
    METHODS,
    first_homology,
    multiplier_induced_map,
    relation_module_splitting,
    schur_multiplier,
    universal_cocycle,
)

# standard values of the Schur multiplier
KNOWN = {
    "S3": (),
    "A4": (2,),
    "D8": (2,),
    "Q8": (),
    "D10": (),
    "D12": (2,),
    "Dic12": (),
    "C2xC4": (2,),
    "C3xC3": (3,),
    "C4xC4": (4,),
    "C2xC8": (2,),
    "C2^2xC4": (2, 2, 2),
    "D16": (2,),
    "Q16": (),
    "C2xD8": (2, 2, 2),
    "C2xQ8": (2, 2),
    "C2^4": (2,) * 6,
}


@pytest.mark.parametrize("name", sorted(KNOWN))
@pytest.mark.parametrize("method", METHODS)
def test_known_multipliers(name, method):
    assert schur_multiplier(catalog_group(name), method).invariant_factors == KNOWN[name]


def test_larger_groups():
    assert schur_multiplier(symmetric(4)).invariant_factors == (2,)
    assert schur_multiplier(heisenberg(3)).invariant_factors == (3, 3)
    assert schur_multiplier(catalog_group("C6xC6"), "cocycle").invariant_factors == (6,)
    assert schur_multiplier(catalog_group("C2^2xC3^2"), "hopf").invariant_factors == (6,)


def test_caps():
    with pytest.raises(CapExceeded):
        schur_multiplier(cyclic(65), "bar")
    with pytest.raises(ValueError):
        schur_multiplier(cyclic(2), "nonsense")


def test_first_homology():
    assert first_homology(catalog_group("D8")).invariant_factors == (2, 2)
    assert first_homology(catalog_group("A4")).invariant_factors == (3,)


@pytest.mark.parametrize("g", catalog(extended=True), ids=lambda g: g.name)
def test_methods_agree(g):
    bar = schur_multiplier(g, "bar").group
    assert schur_multiplier(g, "cocycle").group == bar
    assert schur_multiplier(g, "hopf").group == bar


@pytest.mark.parametrize("g", catalog(16, extended=True), ids=lambda g: g.name)
def test_universal_cocycle(g):
    f = universal_cocycle(g)
    f.check()
    assert f.target == schur_multiplier(g).group


@pytest.mark.parametrize("g", catalog(12), ids=lambda g: g.name)
def test_relation_module(g):
    data = relation_module_splitting(g)
    assert data.torsion == schur_multiplier(g).group
    assert data.module.free_rank == g.order
    assert len(data.complement_basis) == g.order


def test_induced_map_injective_inclusion():
    c2c2, c2c2c2 = catalog_group("C2xC2"), catalog_group("C2^3")
    inc = next(f for f in homomorphisms(c2c2, c2c2c2) if f.is_injective())
    m = multiplier_induced_map(inc)
    assert m.is_injective() and not m.is_surjective()


def test_induced_identity():
    for name in ("C2xC2", "D8", "C3xC3"):
        g = catalog_group(name)
        assert multiplier_induced_map(Homomorphism.identity_map(g)).is_identity()


def test_induced_by_trivial_map_is_zero():
    g = catalog_group("C2xC2")
    m = multiplier_induced_map(Homomorphism.trivial_map(g, g))
    assert m.image_order() == 1


POOL = ["C2", "C4", "C2xC2", "D8", "Q8"]


@settings(max_examples=25)
@given(st.sampled_from(POOL), st.sampled_from(POOL), st.sampled_from(POOL), st.data())
def test_induced_maps_are_functorial(a, b, c, data):
    ga, gb, gc = catalog_group(a), catalog_group(b), catalog_group(c)
    f = data.draw(st.sampled_from(homomorphisms(ga, gb)))
    g = data.draw(st.sampled_from(homomorphisms(gb, gc)))
    left = multiplier_induced_map(f.then(g))
    right = multiplier_induced_map(f).then(multiplier_induced_map(g))
    assert left.images == right.images


@settings(max_examples=15)
@given(st.sampled_from(["C2xC2", "D8", "C2xC4", "C3xC3", "A4"]), st.data())
def test_cocycle_identity_on_random_triples(name, data):
    g = catalog_group(name)
    f = universal_cocycle(g)
    mods = f.target.invariant_factors
    el = st.integers(0, g.order - 1)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    lhs = [(a + b) % m for a, b, m in zip(f(x, y), f(g.mul(x, y), z), mods)]
    rhs = [(a + b) % m for a, b, m in zip(f(y, z), f(x, g.mul(y, z)), mods)]
    assert lhs == rhs

import pytest

from vcg.catalog import catalog_group, cyclic
from vcg.groups import CapExceeded, GroupError, center, is_isomorphic, subgroup_generated
from vcg.homology import schur_multiplier
from vcg.products import (
    direct_factor_embeddings,
    haebich_cover,
    is_regular_product,
    nilpotent2_predicted_order,
    nilpotent2_product,
    quotient_check,
    sylow_cover,
    wiegold_cover,
)
from vcg.groups import abelian_invariants


@pytest.mark.parametrize(
    "names, order",
    [
        (("C2", "C2"), 8),
        (("C2", "C3"), 6),
        (("C2", "C4"), 16),
        (("C3", "C3"), 27),
        (("S3", "C2"), 24),
        (("C2", "C2", "C2"), 64),
    ],
)
def test_nilpotent2_orders(names, order):
    gs = [catalog_group(n) for n in names]
    assert nilpotent2_predicted_order(gs) == order
    p = nilpotent2_product(gs)
    assert p.group.order == order
    assert p.cartesian <= center(p.group)
    assert quotient_check(p)


def test_nilpotent2_of_two_c2_is_d8():
    p = nilpotent2_product([cyclic(2), cyclic(2)])
    assert is_isomorphic(p.group, catalog_group("D8"))[0]


def test_nilpotent2_cap():
    with pytest.raises(CapExceeded):
        nilpotent2_product([catalog_group("C4xC4"), catalog_group("C4xC4")])


def test_wiegold_small():
    prod, cert = wiegold_cover(cyclic(2), cyclic(2))
    assert cert.ok and is_isomorphic(prod.group, catalog_group("D8"))[0]


def test_wiegold_mixed():
    prod, cert = wiegold_cover(catalog_group("C2xC2"), cyclic(2))
    # M(C2^3) = Z2^3
    assert abelian_invariants(cert.A).invariant_factors == (2, 2, 2)
    assert prod.group.order == 8 * 2 * 4


def test_sylow_cover():
    cert = sylow_cover(catalog_group("C2^2xC3^2"))
    assert cert.cover.order == 216
    assert abelian_invariants(cert.A).invariant_factors == (6,)
    with pytest.raises(GroupError):
        sylow_cover(catalog_group("S3"))


def test_sylow_cover_of_p_group_and_cyclic():
    assert sylow_cover(catalog_group("C12")).cover.order == 12
    assert sylow_cover(catalog_group("C2xC4")).cover.order == 16


def test_regular_products():
    s3 = catalog_group("S3")
    a = subgroup_generated(s3, [s3.element("(1 2)")])
    b = subgroup_generated(s3, [s3.element("(2 3)")])
    w = is_regular_product(s3, [a, b])
    assert w.generates and not w.ok
    v4 = catalog_group("C2xC2")
    x = subgroup_generated(v4, [v4.element("(a,1)")])
    y = subgroup_generated(v4, [v4.element("(1,a)")])
    assert is_regular_product(v4, [x, y]).ok


def test_haebich_klein_four():
    v4, c2 = catalog_group("C2xC2"), cyclic(2)
    data = haebich_cover([c2, c2], v4, direct_factor_embeddings(v4, [c2, c2]))
    assert data.group.order == 8
    assert abelian_invariants(data.m_bar).invariant_factors == (2,)
    assert is_isomorphic(data.group, catalog_group("D8"))[0] or is_isomorphic(data.group, catalog_group("Q8"))[0]


def test_haebich_coprime_and_single():
    c6 = catalog_group("C6")
    fs = [cyclic(2), cyclic(3)]
    data = haebich_cover(fs, c6, direct_factor_embeddings(c6, fs))
    assert data.group.order == 6 and data.m_bar.order == 1
    d8 = catalog_group("D8")
    from vcg.groups import Homomorphism

    data = haebich_cover([d8], d8, [Homomorphism.identity_map(d8)])
    assert data.group.order == 16 and data.m_bar.order == 2


def test_haebich_rejects_non_regular():
    s3 = catalog_group("S3")
    c2 = cyclic(2)
    from vcg.colimits import injections

    embs = [f for f in injections(c2, s3)]
    with pytest.raises(GroupError):
        haebich_cover([c2, c2], s3, [embs[0], embs[1]])


def test_haebich_matches_multiplier():
    g = catalog_group("C2^3")
    c2 = cyclic(2)
    data = haebich_cover([c2, c2, c2], g, direct_factor_embeddings(g, [c2, c2, c2]))
    assert abelian_invariants(data.m_bar) == schur_multiplier(g).group

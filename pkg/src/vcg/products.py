"""Product constructions of covering groups: second nilpotent products,
covers of nilpotent groups from their Sylow subgroups, regular products and
the Haebich cover of a finite regular product."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cosets import element_words, find_presentation, group_from_table, table_homomorphism, todd_coxeter
from .covers import CoverCertificate, CoverError, Variety, cover_from_cocycle, require_cover
from .fpgroups import Presentation, Word, commutator, free_product_presentation
from .groups import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    Homomorphism,
    Subgroup,
    abelianization_invariants,
    center,
    direct_product_data,
    is_isomorphic,
    is_nilpotent,
    normal_closure,
    quotient_group,
    subgroup_generated,
    sylow_subgroup,
    _prime_factors,
)

NILPOTENT2_MAX_ORDER = 10_000
HAEBICH_MAX_ORDER = 10_000


@dataclass(frozen=True)
class PresentedFactor:
    """A finite group with a presentation and the generator assignment."""

    group: FiniteGroup
    presentation: Presentation
    assignment: dict[str, int]


def presented(g: FiniteGroup, presentation: Presentation | None = None, assignment: dict[str, int] | None = None) -> PresentedFactor:
    if presentation is None:
        presentation, assignment = find_presentation(g)
    if assignment is None:
        raise ValueError("a supplied presentation needs its generator assignment")
    return PresentedFactor(g, presentation, assignment)


# -- second nilpotent product ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Nilpotent2Product:
    group: FiniteGroup
    presentation: Presentation
    factors: tuple[PresentedFactor, ...]
    embeddings: tuple[Homomorphism, ...]  # factor -> product
    projection: Homomorphism  # product -> direct product of the factors
    direct: FiniteGroup
    cartesian: Subgroup
    predicted_order: int


def nilpotent2_predicted_order(groups: Sequence[FiniteGroup]) -> int:
    out = 1
    for g in groups:
        out *= g.order
    ab = [abelianization_invariants(g) for g in groups]
    for i in range(len(ab)):
        for j in range(i + 1, len(ab)):
            out *= ab[i].tensor(ab[j]).torsion_order
    return out


def nilpotent2_product(
    factors: Sequence[FiniteGroup | PresentedFactor], max_cosets: int | None = None
) -> Nilpotent2Product:
    """Free product modulo ``[[x, y], z]`` for generators x, y of distinct
    factors and any generator z.  The order must match
    ``prod |A_i| * prod_{i<j} |A_i,ab (x) A_j,ab|`` and the cartesian subgroup
    must be central; either failure raises."""
    pf = tuple(f if isinstance(f, PresentedFactor) else presented(f) for f in factors)
    if not 1 <= len(pf) <= 4:
        raise ValueError("nilpotent products take between one and four factors")
    groups = [f.group for f in pf]
    predicted = nilpotent2_predicted_order(groups)
    if predicted > NILPOTENT2_MAX_ORDER:
        raise CapExceeded(f"predicted order {predicted} exceeds {NILPOTENT2_MAX_ORDER}")
    fp = free_product_presentation([f.presentation for f in pf])
    gens_of = [[emb[s] for s in f.presentation.generators] for f, emb in zip(pf, fp.embeddings)]
    everything = [s for gs in gens_of for s in gs]
    extra = []
    for i in range(len(pf)):
        for j in range(i + 1, len(pf)):
            for x in gens_of[i]:
                for y in gens_of[j]:
                    for z in everything:
                        extra.append(commutator(Word.gen(x), Word.gen(y), Word.gen(z)))
    pres = fp.presentation.with_relators(extra)
    table = todd_coxeter(pres, (), max_cosets)
    name = " *2 ".join(g.name or "?" for g in groups)
    prod = group_from_table(table, name)
    if prod.order != predicted:
        raise GroupError(f"second nilpotent product has order {prod.order}, predicted {predicted}")
    dp = direct_product_data(groups)
    to_direct = {}
    for k, (f, emb) in enumerate(zip(pf, fp.embeddings)):
        for s, a in f.assignment.items():
            to_direct[emb[s]] = dp.injections[k](a)
    projection = table_homomorphism(table, prod, dp.group, to_direct)
    embeddings = []
    for f, emb in zip(pf, fp.embeddings):
        words = element_words(f.group, f.assignment)
        images = tuple(table.trace(0, words[x].rename(emb)) for x in range(f.group.order))
        embeddings.append(Homomorphism(f.group, prod, images))
    cross = []
    for i in range(len(pf)):
        for j in range(i + 1, len(pf)):
            for x in gens_of[i]:
                for y in gens_of[j]:
                    cross.append(table.trace(0, commutator(Word.gen(x), Word.gen(y))))
    cart = normal_closure(prod, cross)
    if not cart <= center(prod):
        raise GroupError("cartesian subgroup is not central")
    if cart != projection.kernel:
        raise GroupError("cartesian subgroup differs from the kernel onto the direct product")
    return Nilpotent2Product(prod, pres, pf, tuple(embeddings), projection, dp.group, cart, predicted)


def wiegold_cover(a: FiniteGroup, b: FiniteGroup, max_cosets: int | None = None) -> tuple[Nilpotent2Product, CoverCertificate]:
    """Second nilpotent product of covers of ``a`` and ``b`` as a cover of ``a x b``."""
    (ca, cert_a), (cb, cert_b) = cover_from_cocycle(a), cover_from_cocycle(b)
    prod = nilpotent2_product([ca, cb], max_cosets)
    base = direct_product_data([a, b])
    # product -> A* x B* -> A x B
    star = direct_product_data([ca, cb])
    down = Homomorphism(
        star.group,
        base.group,
        tuple(
            base.group.mul(
                base.injections[0](cert_a.projection(star.projections[0](x))),
                base.injections[1](cert_b.projection(star.projections[1](x))),
            )
            for x in range(star.group.order)
        ),
    )
    to_star = Homomorphism(prod.group, star.group, prod.projection.images)
    to_base = to_star.then(down)
    cert = require_cover(prod.group, to_base.kernel, base.group, Variety.abelian())
    return prod, cert


# -- nilpotent groups via Sylow subgroups ------------------------------------------------


def sylow_cover(g: FiniteGroup) -> CoverCertificate:
    """Direct product of covers of the Sylow subgroups of a nilpotent group."""
    if not is_nilpotent(g):
        raise GroupError(f"{g.name or 'group'} is not nilpotent")
    if g.order == 1:
        return cover_from_cocycle(g)[1]
    covers = []
    for p in _prime_factors(g.order):
        s, _ = sylow_subgroup(g, p).as_group(f"{g.name}_{p}" if g.name else "")
        covers.append(cover_from_cocycle(s))
    dp = direct_product_data([e for e, _ in covers])
    members = [dp.group.identity]
    for k, (_, cert) in enumerate(covers):
        members = [dp.group.mul(x, dp.injections[k](a)) for x in members for a in cert.A.indices]
    a = Subgroup(dp.group, frozenset(members))
    return require_cover(dp.group, a, g, Variety.abelian())


# -- regular products ---------------------------------------------------------------------


@dataclass(frozen=True)
class RegularProductWitness:
    group: FiniteGroup
    factors: tuple[Subgroup, ...]
    hats: tuple[Subgroup, ...]
    generates: bool
    trivial_intersections: tuple[bool, ...]

    @property
    def ok(self) -> bool:
        return self.generates and all(self.trivial_intersections)


def is_regular_product(g: FiniteGroup, factors: Sequence[Subgroup]) -> RegularProductWitness:
    factors = tuple(factors)
    for f in factors:
        if f.parent is not g:
            raise GroupError("factors must be subgroups of the given group")
    every = [x for f in factors for x in f.indices]
    generates = subgroup_generated(g, every).order == g.order
    hats, meets = [], []
    for i, f in enumerate(factors):
        others = [x for j, h in enumerate(factors) if j != i for x in h.indices]
        hat = normal_closure(g, others)
        hats.append(hat)
        meets.append(f.intersection(hat).order == 1)
    return RegularProductWitness(g, factors, tuple(hats), generates, tuple(meets))


# -- Haebich cover ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HaebichData:
    factor_covers: tuple[CoverCertificate, ...]  # L_i -> A_i
    factor_presentations: tuple[PresentedFactor, ...]
    free_product: Presentation  # L
    image_order: int  # |L / J|
    j_generators: tuple[Word, ...]  # Schreier generators of J
    n_relators: tuple[Word, ...]  # [m, y]: N
    j_relators: tuple[Word, ...]  # [s, x]: [J, L]
    quotient: Presentation  # L / N[J, L]
    group: FiniteGroup  # L-bar
    m_bar: Subgroup
    certificate: CoverCertificate
    regular: RegularProductWitness = field(repr=False)


def haebich_cover(
    factors: Sequence[FiniteGroup],
    target: FiniteGroup,
    embeddings: Sequence[Homomorphism],
    max_cosets: int | None = None,
) -> HaebichData:
    """Cover of a finite regular product ``G`` of subgroups ``A_i``.

    With covers ``L_i -> A_i`` (kernels ``M_i``), ``L`` their free product and
    ``J`` the kernel of ``L -> G x prod L_i``, the result is
    ``L / N[J, L]`` where ``N`` is the normal closure of the ``[M_i, L_j]``,
    i != j.  ``J`` enters through its Schreier generators over the finite
    image of ``L``.
    """
    if len(factors) != len(embeddings):
        raise ValueError("one embedding per factor")
    for a, e in zip(factors, embeddings):
        if e.source is not a or e.target is not target or not e.is_injective():
            raise GroupError("embeddings must be injective maps of the factors into the target")
    subs = [e.image for e in embeddings]
    regular = is_regular_product(target, subs)
    if not regular.ok:
        raise GroupError("target is not a regular product of the embedded factors")

    covers = [cover_from_cocycle(a) for a in factors]
    pfs = [presented(cover) for cover, _ in covers]
    fp = free_product_presentation([p.presentation for p in pfs])
    L = fp.presentation
    # generator of L -> (element of G, element of prod L_i)
    dp = direct_product_data([target] + [c for c, _ in covers])
    image_of: dict[str, int] = {}
    for k, (pf, emb, (_, cert), e) in enumerate(zip(pfs, fp.embeddings, covers, embeddings)):
        for s, x in pf.assignment.items():
            sym = emb[s]
            in_g = dp.injections[0](e(cert.projection(x)))
            image_of[sym] = dp.group.mul(in_g, dp.injections[k + 1](x))
    gens = list(L.generators)

    # Schreier generators of J over the image Q of L
    tree: dict[int, Word] = {dp.group.identity: Word()}
    order = [dp.group.identity]
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for s in gens:
            r = dp.group.mul(q, image_of[s])
            if r not in tree:
                tree[r] = tree[q] * Word.gen(s)
                order.append(r)
    schreier: dict[Word, None] = {}
    for q in order:
        for s in gens:
            w = tree[q] * Word.gen(s) * tree[dp.group.mul(q, image_of[s])].inverse()
            if w:
                schreier[w] = None
    j_gens = tuple(schreier)

    # N: [m, y] for generators m of M_i and generators y of L_j, i != j
    n_rels: list[Word] = []
    for k, (pf, emb, (_, cert)) in enumerate(zip(pfs, fp.embeddings, covers)):
        words = element_words(pf.group, pf.assignment)
        for m in _generators_of(cert.A):
            mw = words[m].rename(emb)
            for k2, emb2 in enumerate(fp.embeddings):
                if k2 != k:
                    for y in emb2.values():
                        n_rels.append(commutator(mw, Word.gen(y)))
    j_rels = [commutator(s, Word.gen(x)) for s in j_gens for x in gens]
    j_rels = [w for w in dict.fromkeys(j_rels) if w]
    quotient = L.with_relators(n_rels + j_rels)

    table = todd_coxeter(quotient, (), max_cosets)
    if table.index > HAEBICH_MAX_ORDER:
        raise CapExceeded(f"L-bar has order {table.index} > {HAEBICH_MAX_ORDER}")
    lbar = group_from_table(table, "L-bar")
    to_g = {s: dp.projections[0](image_of[s]) for s in gens}
    proj = table_homomorphism(table, lbar, target, to_g)
    m_bar = proj.kernel
    # the image of (prod M_i) J is the kernel
    expected = [table.trace(0, w) for w in j_gens]
    for pf, emb, (_, cert) in zip(pfs, fp.embeddings, covers):
        words = element_words(pf.group, pf.assignment)
        expected.extend(table.trace(0, words[m].rename(emb)) for m in cert.A.indices)
    if subgroup_generated(lbar, expected) != m_bar:
        raise CoverError("image of (prod M_i) J differs from the kernel of L-bar -> G")
    cert = require_cover(lbar, m_bar, target, Variety.abelian())
    return HaebichData(
        tuple(c for _, c in covers),
        tuple(pfs),
        L,
        len(order),
        j_gens,
        tuple(n_rels),
        tuple(j_rels),
        quotient,
        lbar,
        m_bar,
        cert,
        regular,
    )


def _generators_of(sub: Subgroup) -> list[int]:
    g, _ = sub.as_group()
    from .groups import generating_sequence

    return [sub.indices[x] for x in generating_sequence(g)]


def direct_factor_embeddings(target: FiniteGroup, factors: Sequence[FiniteGroup]) -> list[Homomorphism]:
    """Coordinate injections when ``target`` is the direct product of ``factors``."""
    dp = direct_product_data(factors)
    ok, iso = is_isomorphic(dp.group, target)
    if not ok:
        raise GroupError("target is not the direct product of the factors")
    return [inj.then(iso) for inj in dp.injections]


def quotient_check(p: Nilpotent2Product) -> bool:
    """The product modulo its cartesian subgroup is the direct product."""
    q, _ = quotient_group(p.group, p.cartesian)
    return is_isomorphic(q, p.direct)[0]

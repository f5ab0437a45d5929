"""Directed systems of finite groups and their direct limits.

Maps compose left to right: ``lam(i, j).then(lam(j, k)) == lam(i, k)``.

A finite directed poset has a maximum element ``m`` and the direct limit is
``G_m`` with the system maps into it.  Independently, :func:`quotient_colimit`
builds the limit as the disjoint union of the stages modulo eventual
agreement; the two are cross-checked.  Chains are handled lazily up to a
horizon, and any answer that depends on stages past the horizon is labelled
as such.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from .covers import (
    CoverCertificate,
    CoverError,
    CoverFailure,
    Variety,
    alternative_complements,
    check_v_cover,
    cover_from_splitting,
    splitting_presentation,
)
from .fpgroups import Word
from .groups import (
    FiniteGroup,
    GroupError,
    Homomorphism,
    Subgroup,
    direct_product_data,
    extend_generator_images,
    generating_sequence,
    is_isomorphic,
    subgroup_generated,
)
from .homology import MultiplierMap, multiplier_induced_map, relation_module_splitting, schur_multiplier
from .lattice import FgAbelianGroup, IntMatrix, cokernel

DEFAULT_HORIZON = 8


def default_horizon() -> int:
    raw = os.environ.get("VCG_CHAIN_HORIZON")
    return int(raw) if raw else DEFAULT_HORIZON


Node = Hashable


# -- systems ------------------------------------------------------------------------------


class DirectedSystem:
    """Common interface of finite-poset systems and chains."""

    kind = "abstract"

    def indices(self) -> list[Node]:
        raise NotImplementedError

    def leq(self, i: Node, j: Node) -> bool:
        raise NotImplementedError

    def group(self, i: Node) -> FiniteGroup:
        raise NotImplementedError

    def lam(self, i: Node, j: Node) -> Homomorphism:
        raise NotImplementedError

    def upper_bounds(self, i: Node, j: Node) -> list[Node]:
        return [k for k in self.indices() if self.leq(i, k) and self.leq(j, k)]


class PosetSystem(DirectedSystem):
    """Groups on a finite poset.  ``relations`` lists pairs ``(i, j)`` with
    ``i <= j``; the reflexive-transitive closure is taken.  Maps may be given
    for any comparable pairs; missing ones are composed along a path."""

    kind = "poset"

    def __init__(
        self,
        nodes: Sequence[Node],
        relations: Sequence[tuple[Node, Node]],
        groups: Mapping[Node, FiniteGroup],
        maps: Mapping[tuple[Node, Node], Homomorphism],
    ):
        self.nodes = list(nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise GroupError("duplicate poset node")
        known = set(self.nodes)
        for i, j in relations:
            if i not in known or j not in known:
                raise GroupError(f"relation ({i}, {j}) mentions an unknown node")
        for i in self.nodes:
            if i not in groups:
                raise GroupError(f"no group at node {i}")
        self.groups = dict(groups)
        le = {(i, i) for i in self.nodes} | set(relations)
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(le), list(le)):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
        self.le = le
        for i, j in le:
            if i != j and (j, i) in le:
                raise GroupError(f"relation is not antisymmetric at {i}, {j}")
        self.given = dict(maps)
        for (i, j), f in self.given.items():
            if (i, j) not in le:
                raise GroupError(f"map given for incomparable pair ({i}, {j})")
            if f.source is not self.groups[i] or f.target is not self.groups[j]:
                raise GroupError(f"map ({i}, {j}) has the wrong source or target")
        self._maps: dict[tuple[Node, Node], Homomorphism] = {}
        for i in self.nodes:
            self._maps[(i, i)] = self.given.get((i, i)) or Homomorphism.identity_map(self.groups[i])
        self._maps.update(self.given)
        self._fill()

    def _fill(self) -> None:
        # compose along given maps, shortest paths first
        for _ in range(len(self.nodes)):
            for (i, j) in sorted(self.le, key=str):
                if (i, j) in self._maps:
                    continue
                for (a, b), f in list(self._maps.items()):
                    if a == i and a != b and (b, j) in self._maps:
                        self._maps[(i, j)] = f.then(self._maps[(b, j)])
                        break
        missing = [p for p in self.le if p not in self._maps]
        if missing:
            raise GroupError(f"no map available for comparable pairs {missing[:3]}")

    def indices(self) -> list[Node]:
        return list(self.nodes)

    def leq(self, i: Node, j: Node) -> bool:
        return (i, j) in self.le

    def group(self, i: Node) -> FiniteGroup:
        return self.groups[i]

    def lam(self, i: Node, j: Node) -> Homomorphism:
        if (i, j) not in self._maps:
            raise GroupError(f"{i} is not below {j}")
        return self._maps[(i, j)]

    def maximum(self) -> Node | None:
        for m in self.nodes:
            if all(self.leq(i, m) for i in self.nodes):
                return m
        return None

    def covering_pairs(self) -> list[tuple[Node, Node]]:
        out = []
        for i, j in self.le:
            if i == j:
                continue
            if not any(k not in (i, j) and self.leq(i, k) and self.leq(k, j) for k in self.nodes):
                out.append((i, j))
        return sorted(out, key=str)


class ChainSystem(DirectedSystem):
    """Stages ``1, 2, ...`` produced on demand by ``stage(k)`` with
    consecutive maps ``step(k): G_k -> G_{k+1}``.  Only stages up to the
    horizon are ever inspected.  ``stable_from = s`` asserts the steps are
    isomorphisms from stage s on; the assertion is checked up to the horizon
    and makes equality decisions exact."""

    kind = "chain"

    def __init__(
        self,
        stage: Callable[[int], FiniteGroup],
        step: Callable[[int], Homomorphism],
        horizon: int | None = None,
        stable_from: int | None = None,
    ):
        self._stage = lru_cache(maxsize=None)(stage)
        self._step = lru_cache(maxsize=None)(step)
        self.horizon = horizon or default_horizon()
        self.stable_from = stable_from
        self._comp: dict[tuple[int, int], Homomorphism] = {}

    def indices(self) -> list[int]:
        return list(range(1, self.horizon + 1))

    def leq(self, i: int, j: int) -> bool:
        return i <= j

    def group(self, i: int) -> FiniteGroup:
        return self._stage(i)

    def step(self, k: int) -> Homomorphism:
        f = self._step(k)
        if f.source is not self.group(k) or f.target is not self.group(k + 1):
            raise GroupError(f"chain map {k} -> {k + 1} has the wrong source or target")
        return f

    def lam(self, i: int, j: int) -> Homomorphism:
        if i > j:
            raise GroupError(f"{i} is not below {j}")
        if i == j:
            return Homomorphism.identity_map(self.group(i))
        key = (i, j)
        if key not in self._comp:
            self._comp[key] = self.lam(i, j - 1).then(self.step(j - 1))
        return self._comp[key]

    def prefix(self, k: int | None = None) -> PosetSystem:
        """Stages ``1..k`` as a finite poset (a total order)."""
        k = k or self.horizon
        nodes = list(range(1, k + 1))
        return PosetSystem(
            nodes,
            [(i, i + 1) for i in nodes[:-1]],
            {i: self.group(i) for i in nodes},
            {(i, i + 1): self.step(i) for i in nodes[:-1]},
        )


def poset_system(
    nodes: Sequence[Node],
    relations: Sequence[tuple[Node, Node]],
    groups: Mapping[Node, FiniteGroup],
    maps: Mapping[tuple[Node, Node], Homomorphism] | None = None,
) -> PosetSystem:
    return PosetSystem(nodes, relations, groups, maps or {})


def constant_system(g: FiniteGroup, nodes: Sequence[Node] = (1, 2, 3)) -> PosetSystem:
    """``g`` at every node of a chain-shaped poset, identity maps."""
    nodes = list(nodes)
    rel = [(a, b) for a, b in zip(nodes, nodes[1:])]
    return PosetSystem(nodes, rel, {i: g for i in nodes}, {p: Homomorphism.identity_map(g) for p in rel})


def constant_chain(g: FiniteGroup, horizon: int | None = None) -> ChainSystem:
    return ChainSystem(lambda k: g, lambda k: Homomorphism.identity_map(g), horizon, stable_from=1)


def chain_from_lists(groups: Sequence[FiniteGroup], maps: Sequence[Homomorphism], stable_from: int | None = None) -> ChainSystem:
    if len(maps) != len(groups) - 1:
        raise ValueError("a chain of k stages needs k - 1 maps")
    gs, ms = list(groups), list(maps)
    return ChainSystem(lambda k: gs[k - 1], lambda k: ms[k - 1], len(gs), stable_from)


def cyclic_tower(horizon: int | None = None, p: int = 2) -> ChainSystem:
    """``C_p -> C_p^2 -> C_p^3 -> ...`` with ``a -> a^p`` (a Prüfer-type tower)."""
    from .catalog import cyclic

    def stage(k: int) -> FiniteGroup:
        return cyclic(p**k)

    def step(k: int) -> Homomorphism:
        src, dst = stage_c(k), stage_c(k + 1)
        return Homomorphism(src, dst, tuple((p * x) % dst.order for x in range(src.order)))

    stage_c = lru_cache(maxsize=None)(stage)
    return ChainSystem(stage_c, step, horizon)


# -- validation ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    scope: str  # "exhaustive" | "to horizon K"
    checks: int
    violation: str = ""


def validate_directed_system(d: DirectedSystem) -> ValidationReport:
    idx = d.indices()
    checks = 0
    scope = "exhaustive" if d.kind == "poset" else f"to horizon {getattr(d, 'horizon', len(idx))}"
    for i, j in itertools.product(idx, idx):
        checks += 1
        if not d.upper_bounds(i, j):
            return ValidationReport(False, scope, checks, f"not directed: {i} and {j} have no upper bound")
    for i in idx:
        checks += 1
        f = d.lam(i, i)
        if f.images != Homomorphism.identity_map(d.group(i)).images:
            return ValidationReport(False, scope, checks, f"map {i} -> {i} is not the identity")
    for i, j, k in itertools.product(idx, idx, idx):
        if d.leq(i, j) and d.leq(j, k):
            checks += 1
            if d.lam(i, j).then(d.lam(j, k)).images != d.lam(i, k).images:
                return ValidationReport(False, scope, checks, f"maps do not compose along {i} <= {j} <= {k}")
    if isinstance(d, ChainSystem) and d.stable_from is not None:
        for k in range(d.stable_from, d.horizon):
            checks += 1
            if not d.step(k).is_bijective():
                return ValidationReport(False, scope, checks, f"chain declared stable from {d.stable_from} but step {k} is not bijective")
    return ValidationReport(True, scope, checks)


# -- colimits -------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PosetColimit:
    system: PosetSystem
    top: Node
    group: FiniteGroup
    injections: dict  # node -> Homomorphism into the limit


@dataclass(frozen=True)
class ColimitElement:
    stage: Node
    value: int


UNKNOWN = "unknown at horizon"


@dataclass(frozen=True, eq=False)
class ChainColimit:
    """Lazy direct limit of a chain, probing stages up to the horizon."""

    system: ChainSystem

    def inject(self, stage: int, x: int) -> ColimitElement:
        if not 1 <= stage <= self.system.horizon:
            raise GroupError(f"stage {stage} is outside 1..{self.system.horizon}")
        if not 0 <= x < self.system.group(stage).order:
            raise GroupError("element out of range")
        return ColimitElement(stage, x)

    def push(self, u: ColimitElement, k: int) -> int:
        return self.system.lam(u.stage, k)(u.value)

    def multiply(self, u: ColimitElement, v: ColimitElement) -> ColimitElement:
        k = max(u.stage, v.stage)
        return ColimitElement(k, self.system.group(k).mul(self.push(u, k), self.push(v, k)))

    def inverse(self, u: ColimitElement) -> ColimitElement:
        return ColimitElement(u.stage, self.system.group(u.stage).inv(u.value))

    def identity(self) -> ColimitElement:
        return ColimitElement(1, self.system.group(1).identity)

    def equal(self, u: ColimitElement, v: ColimitElement) -> bool | str:
        """True when the images agree at some stage up to the horizon; False
        only when the chain is declared stable; otherwise ``UNKNOWN``."""
        d = self.system
        start = max(u.stage, v.stage)
        for k in range(start, d.horizon + 1):
            if self.push(u, k) == self.push(v, k):
                return True
        if d.stable_from is not None and d.stable_from <= d.horizon:
            return False
        return UNKNOWN

    def stabilized_at(self, u: ColimitElement) -> int | None:
        """First stage at which ``u`` is injected and its image's class stops
        merging with others, to the horizon (None when never observed)."""
        d = self.system
        for k in range(u.stage, d.horizon + 1):
            if all(d.step(j).is_injective() for j in range(k, d.horizon)):
                return k
        return None


def colimit(d: DirectedSystem) -> PosetColimit | ChainColimit:
    if isinstance(d, ChainSystem):
        return ChainColimit(d)
    if not isinstance(d, PosetSystem):
        raise TypeError("unknown system type")
    m = d.maximum()
    if m is None:
        raise GroupError("a finite directed poset must have a maximum; validate the system")
    return PosetColimit(d, m, d.group(m), {i: d.lam(i, m) for i in d.indices()})


@dataclass(frozen=True, eq=False)
class QuotientColimit:
    group: FiniteGroup
    injections: dict  # node -> Homomorphism into group
    classes: tuple  # class index -> list of (node, element)


def quotient_colimit(d: PosetSystem) -> QuotientColimit:
    """Disjoint union of the stages modulo ``(i, x) ~ (j, lam(i, j)(x))``,
    multiplied at a common upper bound.  Does not use the maximum."""
    pos: dict[tuple[Node, int], int] = {}
    items: list[tuple[Node, int]] = []
    for i in d.indices():
        for x in range(d.group(i).order):
            pos[(i, x)] = len(items)
            items.append((i, x))
    parent = list(range(len(items)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in d.le:
        if i == j:
            continue
        f = d.lam(i, j)
        for x in range(d.group(i).order):
            a, b = find(pos[(i, x)]), find(pos[(j, f(x))])
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = sorted({find(a) for a in range(len(items))})
    cls = {r: k for k, r in enumerate(roots)}
    members: list[list[tuple[Node, int]]] = [[] for _ in roots]
    for a, it in enumerate(items):
        members[cls[find(a)]].append(it)
    n = len(roots)
    table = np.zeros((n, n), dtype=np.int32)
    for a in range(n):
        i, x = members[a][0]
        for b in range(n):
            j, y = members[b][0]
            k = d.upper_bounds(i, j)[0]
            z = d.group(k).mul(d.lam(i, k)(x), d.lam(j, k)(y))
            table[a, b] = cls[find(pos[(k, z)])]
    labels = tuple(f"[{members[a][0][0]}:{d.group(members[a][0][0]).elements[members[a][0][1]]}]" for a in range(n))
    g = FiniteGroup(labels, table, -1, "colim")
    inj = {
        i: Homomorphism(d.group(i), g, tuple(cls[find(pos[(i, x)])] for x in range(d.group(i).order)))
        for i in d.indices()
    }
    return QuotientColimit(g, inj, tuple(tuple(m) for m in members))


@dataclass(frozen=True)
class ColimitCrossCheck:
    ok: bool
    order: int
    detail: str


def cross_check_colimits(d: PosetSystem) -> ColimitCrossCheck:
    """The quotient construction and the maximum stage agree through the
    canonical comparison map."""
    top = colimit(d)
    q = quotient_colimit(d)
    # class of (i, x) -> lam(i, top)(x)
    images = [None] * q.group.order
    for i in d.indices():
        for x in range(d.group(i).order):
            c = q.injections[i](x)
            y = top.injections[i](x)
            if images[c] is None:
                images[c] = y
            elif images[c] != y:
                return ColimitCrossCheck(False, q.group.order, "comparison map is not well defined")
    phi = Homomorphism(q.group, top.group, tuple(images))
    if not phi.is_bijective():
        return ColimitCrossCheck(False, q.group.order, "comparison map is not bijective")
    return ColimitCrossCheck(True, q.group.order, f"quotient construction ≅ stage {top.top}")


# -- universal property ---------------------------------------------------------------------


def mediating_morphism(d: PosetSystem, target: FiniteGroup, cone: Mapping[Node, Homomorphism]) -> Homomorphism:
    """The unique ``tau`` out of the limit with ``lam(i, m).then(tau) == cone[i]``."""
    for i in d.indices():
        if cone[i].source is not d.group(i) or cone[i].target is not target:
            raise GroupError(f"cone map at {i} has the wrong source or target")
    for i, j in d.le:
        if d.lam(i, j).then(cone[j]).images != cone[i].images:
            raise GroupError(f"cone does not commute on {i} <= {j}")
    top = colimit(d)
    tau = cone[top.top]
    for i in d.indices():
        if top.injections[i].then(tau).images != cone[i].images:
            raise GroupError("mediating map fails to factor the cone")
    # uniqueness: the images of the stages generate the limit, so tau is
    # determined by its values there
    gens = {top.injections[i](x) for i in d.indices() for x in range(d.group(i).order)}
    if subgroup_generated(top.group, gens).order != top.group.order:
        raise GroupError("stage images do not generate the limit")
    return tau


# -- products ---------------------------------------------------------------------------------


def product_system(da: PosetSystem, db: PosetSystem) -> PosetSystem:
    if set(da.indices()) != set(db.indices()) or da.le != db.le:
        raise GroupError("systems are indexed by different posets")
    data = {i: direct_product_data([da.group(i), db.group(i)]) for i in da.indices()}
    maps = {}
    for i, j in da.le:
        if i == j:
            continue
        pi, pj = data[i], data[j]
        f, g = da.lam(i, j), db.lam(i, j)
        imgs = tuple(
            pj.group.mul(pj.injections[0](f(pi.projections[0](x))), pj.injections[1](g(pi.projections[1](x))))
            for x in range(pi.group.order)
        )
        maps[(i, j)] = Homomorphism(pi.group, pj.group, imgs)
    rel = [p for p in da.le if p[0] != p[1]]
    return PosetSystem(da.indices(), rel, {i: data[i].group for i in da.indices()}, maps)


@dataclass(frozen=True)
class SwapReport:
    ok: bool
    order: int
    detail: str


def product_colimit_swap(da: DirectedSystem, db: DirectedSystem, horizon: int | None = None) -> SwapReport:
    """``colim(A_i x B_i)`` against ``colim A_i x colim B_i``.  Posets: the
    canonical map is checked to be an isomorphism.  Chains: stagewise up to
    the horizon."""
    if isinstance(da, ChainSystem) or isinstance(db, ChainSystem):
        k = horizon or min(da.horizon, db.horizon)
        for s in range(1, k + 1):
            left = direct_product_data([da.group(s), db.group(s)]).group
            ok, _ = is_isomorphic(left, direct_product_data([da.group(s), db.group(s)]).group)
            if not ok:
                return SwapReport(False, left.order, f"stage {s} differs")
            if s < k:
                # the product step must be the componentwise step
                pa, pb = da.step(s), db.step(s)
                src = direct_product_data([da.group(s), db.group(s)])
                dst = direct_product_data([da.group(s + 1), db.group(s + 1)])
                imgs = tuple(
                    dst.group.mul(dst.injections[0](pa(src.projections[0](x))), dst.injections[1](pb(src.projections[1](x))))
                    for x in range(src.group.order)
                )
                Homomorphism(src.group, dst.group, imgs)
        return SwapReport(True, 0, f"stagewise isomorphism verified to horizon {k}")
    ps = product_system(da, db)
    left = colimit(ps)
    ca, cb = colimit(da), colimit(db)
    right = direct_product_data([ca.group, cb.group])
    # canonical map induced by the projections of each stage
    top = left.top
    pd = direct_product_data([da.group(top), db.group(top)])
    imgs = tuple(
        right.group.mul(
            right.injections[0](ca.injections[top](pd.projections[0](x))),
            right.injections[1](cb.injections[top](pd.projections[1](x))),
        )
        for x in range(left.group.order)
    )
    phi = Homomorphism(left.group, right.group, imgs)
    qc = cross_check_colimits(ps)
    ok = phi.is_bijective() and qc.ok
    return SwapReport(ok, left.group.order, "canonical map is an isomorphism" if ok else "canonical map is not an isomorphism")


# -- multipliers of limits ------------------------------------------------------------------


@dataclass(frozen=True)
class MultiplierColimitReport:
    ok: bool
    colimit_of_multipliers: FgAbelianGroup
    multiplier_of_colimit: FgAbelianGroup
    comparison_bijective: bool
    detail: str = ""


def multiplier_colimit_check(d: PosetSystem) -> MultiplierColimitReport:
    """``colim M(G_i)`` built as ``(+) M(G_i)`` modulo ``x ~ M(lam)(x)``,
    compared with ``M(colim G_i)`` through the canonical map."""
    idx = d.indices()
    mults = {i: schur_multiplier(d.group(i), "bar").group for i in idx}
    offset, total = {}, 0
    for i in idx:
        offset[i] = total
        total += len(mults[i].invariant_factors)
    rows: list[list[int]] = []
    for i in idx:
        for k, q in enumerate(mults[i].invariant_factors):
            r = [0] * total
            r[offset[i] + k] = q
            rows.append(r)
    induced: dict[tuple[Node, Node], MultiplierMap] = {}
    for i, j in d.le:
        if i == j:
            continue
        f = multiplier_induced_map(d.lam(i, j))
        induced[(i, j)] = f
        for k, img in enumerate(f.images):
            r = [0] * total
            r[offset[i] + k] = 1
            for l, c in enumerate(img):
                r[offset[j] + l] -= c
            rows.append(r)
    ck = cokernel(IntMatrix.from_rows(rows, total) if rows else IntMatrix.zeros(0, total), total)
    colim_m = ck.group
    top = colimit(d)
    m_top = schur_multiplier(top.group, "bar").group
    to_top = {i: (multiplier_induced_map(d.lam(i, top.top)) if i != top.top else None) for i in idx}

    def image_of(vec: Sequence[int]) -> tuple[int, ...]:
        out = [0] * len(m_top.invariant_factors)
        for i in idx:
            part = vec[offset[i]: offset[i] + len(mults[i].invariant_factors)]
            v = part if i == top.top else to_top[i](part)
            out = [a + b for a, b in zip(out, v)]
        return tuple(x % q for x, q in zip(out, m_top.invariant_factors))

    # the relations must die in M(G_top)
    zero = tuple(0 for _ in m_top.invariant_factors)
    if any(image_of(r) != zero for r in rows):
        return MultiplierColimitReport(False, colim_m, m_top, False, "comparison map is not well defined")
    if colim_m.free_rank:
        return MultiplierColimitReport(False, colim_m, m_top, False, "colimit of multipliers is infinite")
    comparison = MultiplierMap(colim_m, m_top, tuple(image_of(ck.lift(k)) for k in range(len(colim_m.invariant_factors))))
    bij = comparison.is_bijective()
    ok = bij and colim_m == m_top
    return MultiplierColimitReport(ok, colim_m, m_top, bij, "comparison map is an isomorphism" if ok else "mismatch")


# -- induced systems of covers --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StageCover:
    node: Node
    data: object  # RelationModuleData, None for supplied covers
    complement: tuple
    table: object  # CosetTable of F/S, None for supplied covers
    cover: FiniteGroup
    certificate: CoverCertificate


@dataclass(frozen=True)
class Obstruction:
    pair: tuple
    word: str
    detail: str
    ok: bool = False

    def __str__(self) -> str:
        i, j = self.pair
        return f"obstruction on {i} <= {j}: {self.detail} ({self.word})"


@dataclass(frozen=True, eq=False)
class InducedCoverSystem:
    base: PosetSystem
    stages: dict  # node -> StageCover
    lifted: dict  # (i, j) -> Homomorphism between covers
    ok: bool = True


def _stage_cover(d: PosetSystem, i: Node, choice, cache: dict) -> StageCover:
    g = d.group(i)
    key = (id(g), repr(choice))
    if key in cache:
        return cache[key]
    data = cache.get(("data", id(g)))
    if data is None:
        data = relation_module_splitting(g)
        cache[("data", id(g))] = data
    if choice is None or choice == "default":
        comp = data.complement_basis
    elif isinstance(choice, int):
        comp = alternative_complements(data)[choice]
    else:
        comp = tuple(tuple(v) for v in choice)
    cover, cert = cover_from_splitting(g, comp, data)
    from .cosets import todd_coxeter

    table = todd_coxeter(splitting_presentation(data, comp))
    out = StageCover(i, data, comp, table, cover, cert)
    cache[key] = out
    return out


def _lift_word(w: Word, lam: Homomorphism, src, dst) -> Word:
    """Apply the generator map x̄ -> bar(lam(x)) of the standard presentations."""
    mapping = {src.standard.symbol_of[x]: Word.gen(dst.standard.symbol_of[lam(x)]) for x in range(lam.source.order)}
    return w.substitute(mapping)


def _check_pair(d: PosetSystem, i: Node, j: Node, si: StageCover, sj: StageCover) -> Obstruction | Homomorphism:
    lam = d.lam(i, j)
    pres = splitting_presentation(si.data, si.complement)
    for r in pres.relators:
        img = _lift_word(r, lam, si.data, sj.data)
        if sj.table.trace(0, img) != 0:
            return Obstruction((i, j), str(r), "a generator of S_i does not map into S_j")
    imgs = tuple(sj.table.trace(0, _lift_word(w, lam, si.data, sj.data)) for w in si.table.representatives)
    lifted = Homomorphism(si.cover, sj.cover, imgs)
    # projections commute with the lifted map
    for y in range(si.cover.order):
        if sj.certificate.projection(lifted(y)) != lam(si.certificate.projection(y)):
            return Obstruction((i, j), "", "lifted map does not cover the base map")
    return lifted


def induced_cover_system(d: PosetSystem, choices: Mapping[Node, object] | str | None = None) -> InducedCoverSystem | Obstruction:
    """Covers ``F_i/S_i`` from the splitting at each stage and the lifts of the
    system maps.  ``choices`` maps nodes to ``"default"``, an index into
    :func:`alternative_complements`, or explicit complement vectors.  With
    ``choices="search"`` compatible complements are searched for."""
    cache: dict = {}
    if choices == "search":
        return _search_induced(d, cache)
    choices = dict(choices or {})
    stages = {i: _stage_cover(d, i, choices.get(i), cache) for i in d.indices()}
    return _assemble(d, stages)


def _assemble(d: PosetSystem, stages: dict) -> InducedCoverSystem | Obstruction:
    lifted = {}
    for i, j in sorted(d.le, key=str):
        res = _check_pair(d, i, j, stages[i], stages[j])
        if isinstance(res, Obstruction):
            return res
        lifted[(i, j)] = res
    return InducedCoverSystem(d, stages, lifted)


def _search_induced(d: PosetSystem, cache: dict) -> InducedCoverSystem | Obstruction:
    nodes = d.indices()
    options = {}
    for i in nodes:
        data = relation_module_splitting(d.group(i))
        cache[("data", id(d.group(i)))] = data
        options[i] = list(range(len(alternative_complements(data))))
    # backtrack in an order compatible with the poset
    order = sorted(nodes, key=lambda i: sum(1 for k in nodes if d.leq(k, i)))
    chosen: dict = {}
    last: list = [None]

    def ok_so_far(i) -> bool:
        for k in chosen:
            for a, b in ((k, i), (i, k)):
                if a != b and d.leq(a, b):
                    res = _check_pair(d, a, b, chosen[a], chosen[b])
                    if isinstance(res, Obstruction):
                        last[0] = res
                        return False
        return True

    def search(t: int) -> bool:
        if t == len(order):
            return True
        i = order[t]
        for c in options[i]:
            chosen[i] = _stage_cover(d, i, c, cache)
            if ok_so_far(i) and search(t + 1):
                return True
            del chosen[i]
        return False

    if not search(0):
        return last[0] or Obstruction(("?", "?"), "", "no compatible complements")
    return _assemble(d, dict(chosen))


def cover_system(
    d: PosetSystem,
    certificates: Mapping[Node, CoverCertificate],
    lifted: Mapping[tuple[Node, Node], Homomorphism] | None = None,
) -> InducedCoverSystem | Obstruction:
    """An induced system from covers supplied directly (for stages beyond the
    reach of the standard presentation).  Lifts default to the identity where
    two stages share a cover and the base map is the identity."""
    lifted = dict(lifted or {})
    stages = {i: StageCover(i, None, (), None, certificates[i].cover, certificates[i]) for i in d.indices()}
    out = {}
    for i, j in sorted(d.le, key=str):
        ci, cj = certificates[i], certificates[j]
        f = lifted.get((i, j))
        if f is None and i == j:
            f = Homomorphism.identity_map(ci.cover)
        if f is None and ci.cover is cj.cover and d.lam(i, j).images == Homomorphism.identity_map(d.group(i)).images:
            f = Homomorphism.identity_map(ci.cover)
        if f is None:
            return Obstruction((i, j), "", "no lifted map supplied")
        if f.source is not ci.cover or f.target is not cj.cover:
            return Obstruction((i, j), "", "lifted map has the wrong source or target")
        if f.then(cj.projection).images != ci.projection.then(d.lam(i, j)).images:
            return Obstruction((i, j), "", "lifted map does not cover the base map")
        out[(i, j)] = f
    return InducedCoverSystem(d, stages, out)


@dataclass(frozen=True)
class LimitCoverReport:
    verdict: str  # "pass" | "fail" | "verified-to-horizon"
    certificate: CoverCertificate | CoverFailure | None
    stage_checks: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict in ("pass", "verified-to-horizon")


def colimit_cover_check(s: InducedCoverSystem) -> LimitCoverReport:
    """Direct limit of the covers against the direct limit of the bases."""
    d = s.base
    top = colimit(d)
    m = top.top
    cover_m = s.stages[m].cover
    # the limit of the distinguished subgroups: images of every A_i
    images = set()
    for i in d.indices():
        lam = s.lifted[(i, m)]
        images.update(lam(a) for a in s.stages[i].certificate.A.indices)
    a = subgroup_generated(cover_m, images)
    cert = check_v_cover(cover_m, a, top.group, Variety.abelian())
    stage_checks = 0
    for i in d.indices():
        stage_checks += 1
        try:
            s.stages[i].certificate.revalidate()
        except CoverError:
            return LimitCoverReport("fail", None, stage_checks, f"stage {i} certificate fails")
    return LimitCoverReport("pass" if cert.ok else "fail", cert, stage_checks, str(cert) if not cert.ok else "")


def chain_cover_check(chain: ChainSystem, choices: Mapping[int, object] | None = None, horizon: int | None = None) -> LimitCoverReport:
    """Chains: when declared stable, the covers at the stable stage certify
    the limit exactly; otherwise each stage to the horizon is checked."""
    k = horizon or chain.horizon
    pre = chain.prefix(k)
    s = induced_cover_system(pre, choices)
    if isinstance(s, Obstruction):
        return LimitCoverReport("fail", None, 0, str(s))
    rep = colimit_cover_check(s)
    if not rep.ok:
        return rep
    if chain.stable_from is not None and chain.stable_from <= k:
        return LimitCoverReport("pass", rep.certificate, rep.stage_checks, f"stabilized from stage {chain.stable_from}")
    return LimitCoverReport("verified-to-horizon", rep.certificate, rep.stage_checks, f"verified to horizon {k}")


# -- exactness ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactnessReport:
    stagewise: bool
    natural: bool
    limit_exact: bool

    @property
    def ok(self) -> bool:
        return self.stagewise and self.natural and self.limit_exact


def _is_short_exact(f: Homomorphism, g: Homomorphism) -> bool:
    return f.is_injective() and g.is_surjective() and f.image == g.kernel


def colimit_exactness(
    da: PosetSystem,
    db: PosetSystem,
    dc: PosetSystem,
    alpha: Mapping[Node, Homomorphism],
    beta: Mapping[Node, Homomorphism],
) -> ExactnessReport:
    """Stagewise short exact sequences ``A_i -> B_i -> C_i`` with natural maps
    give a short exact sequence of the limits (built by the quotient
    construction, with the induced maps)."""
    idx = da.indices()
    stagewise = all(_is_short_exact(alpha[i], beta[i]) for i in idx)
    natural = all(
        da.lam(i, j).then(alpha[j]).images == alpha[i].then(db.lam(i, j)).images
        and db.lam(i, j).then(beta[j]).images == beta[i].then(dc.lam(i, j)).images
        for i, j in da.le
    )
    qa, qb, qc = quotient_colimit(da), quotient_colimit(db), quotient_colimit(dc)

    def induced(qs, qt, maps) -> Homomorphism:
        imgs = [None] * qs.group.order
        for i in idx:
            for x in range(qs.injections[i].source.order):
                imgs[qs.injections[i](x)] = qt.injections[i](maps[i](x))
        return Homomorphism(qs.group, qt.group, tuple(imgs))

    limit_exact = False
    if stagewise and natural:
        limit_exact = _is_short_exact(induced(qa, qb, alpha), induced(qb, qc, beta))
    return ExactnessReport(stagewise, natural, limit_exact)


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    cyclic = {subgroup_generated(g, [x]) for x in range(g.order)}
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for a in frontier:
            for c in cyclic:
                j = subgroup_generated(g, list(a.indices) + list(c.indices))
                if j not in subs:
                    new.add(j)
        subs |= new
        frontier = new
    return sorted(subs, key=lambda s: (s.order, sorted(s.indices)))


def subgroup_system(g: FiniteGroup) -> PosetSystem:
    """All subgroups of ``g`` ordered by inclusion, with inclusion maps."""
    subs = all_subgroups(g)
    groups, incl = {}, {}
    for k, s in enumerate(subs):
        h, inc = s.as_group(f"H{k}")
        groups[k] = h
        incl[k] = inc
    rel, maps = [], {}
    for a, b in itertools.product(range(len(subs)), range(len(subs))):
        if a != b and subs[a] <= subs[b]:
            rel.append((a, b))
            pos = {x: t for t, x in enumerate(subs[b].indices)}
            maps[(a, b)] = Homomorphism(groups[a], groups[b], tuple(pos[x] for x in subs[a].indices))
    return PosetSystem(list(range(len(subs))), rel, groups, maps)


def subgroup_colimit_check(g: FiniteGroup) -> bool:
    d = subgroup_system(g)
    if not validate_directed_system(d).ok:
        return False
    q = quotient_colimit(d)
    return q.group.order == g.order and is_isomorphic(q.group, g)[0]


# -- free products --------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeProductReport:
    expected_multiplier: FgAbelianGroup
    bound: int
    words_checked: int
    central_found: tuple
    conclusion: str

    @property
    def ok(self) -> bool:
        return not self.central_found


def free_product_counterexample(
    a: FiniteGroup,
    b: FiniteGroup,
    length_bound: int = 4,
    covers: tuple[CoverCertificate, CoverCertificate] | None = None,
) -> FreeProductReport:
    """Bounded search for central elements of ``A* * B*``.

    ``M(A * B) = M(A) x M(B)`` is taken as the known value.  If it is
    nontrivial, a covering group of ``A * B`` of the shape ``A* * B*`` would
    need a nontrivial subgroup inside its centre; the search confirms no
    nontrivial reduced word with at most ``length_bound`` syllables is
    central.  This is a falsification within the bound, not a proof.
    ``covers`` defaults to the cocycle covers of ``a`` and ``b``."""
    from .fpgroups import fp_multiply

    from .covers import cover_from_cocycle

    if length_bound > 6:
        raise ValueError("length bound is limited to 6 syllables")
    if a.order == 1 or b.order == 1:
        raise ValueError("both factors must be nontrivial")
    if covers is None:
        covers = (cover_from_cocycle(a)[1], cover_from_cocycle(b)[1])
    for c, base in zip(covers, (a, b)):
        if c.base is not base:
            c_ok, _ = is_isomorphic(c.base, base)
            if not c_ok:
                raise GroupError("supplied cover does not cover the given factor")
        c.revalidate()
    a_star, b_star = covers[0].cover, covers[1].cover
    factors = [a_star, b_star]
    expected = covers[0].multiplier.direct_sum(covers[1].multiplier)
    gens = [((0, x),) for x in generating_sequence(a_star)] + [((1, y),) for y in generating_sequence(b_star)]
    nontrivial = [[x for x in range(f.order) if x != f.identity] for f in factors]
    checked, central = 0, []
    for length in range(1, length_bound + 1):
        for first in (0, 1):
            fs = [(first + t) % 2 for t in range(length)]
            for elems in itertools.product(*(nontrivial[f] for f in fs)):
                w = tuple(zip(fs, elems))
                checked += 1
                if all(fp_multiply(factors, w, s) == fp_multiply(factors, s, w) for s in gens):
                    central.append(w)
    if expected.is_trivial():
        conclusion = "no contradiction available: the expected multiplier is trivial"
    elif central:
        conclusion = "central elements found; containment not refuted"
    else:
        conclusion = (
            f"no nontrivial central element with <= {length_bound} syllables; the centre of the free "
            f"product is trivial within the bound, so a subgroup isomorphic to {expected} cannot lie in "
            f"Z ∩ derived (refuted within bound)"
        )
    return FreeProductReport(expected, length_bound, checked, tuple(central), conclusion)


# -- random systems ----------------------------------------------------------------------------


def random_poset_system(rng: random.Random, stage_names: Sequence[str], max_nodes: int = 4) -> PosetSystem:
    """A random finite directed poset (a rooted tree oriented towards its
    root) with stages drawn from ``stage_names`` and random homomorphisms
    along the tree edges."""
    from .catalog import catalog_group

    n = rng.randint(2, max_nodes)
    groups = {k: catalog_group(rng.choice(stage_names)) for k in range(n)}
    # node n-1 is the root; every other node points to a later node
    parent = {k: rng.randint(k + 1, n - 1) for k in range(n - 1)}
    maps = {}
    for k, p in parent.items():
        maps[(k, p)] = random_homomorphism(rng, groups[k], groups[p])
    return PosetSystem(list(range(n)), list(parent.items()), groups, maps)


def homomorphisms(g: FiniteGroup, h: FiniteGroup) -> list[Homomorphism]:
    """Every homomorphism ``g -> h``, in a fixed order."""
    gens = generating_sequence(g)
    out = []
    for imgs in itertools.product(range(h.order), repeat=len(gens)):
        f = extend_generator_images(g, h, dict(zip(gens, imgs)))
        if f is not None:
            out.append(f)
    return out


def injections(g: FiniteGroup, h: FiniteGroup) -> list[Homomorphism]:
    return [f for f in homomorphisms(g, h) if f.is_injective()]


def random_homomorphism(rng: random.Random, g: FiniteGroup, h: FiniteGroup) -> Homomorphism:
    homs = homomorphisms(g, h)
    # prefer injective maps when available, to keep the systems interesting
    inj = [f for f in homs if f.is_injective()]
    return rng.choice(inj or homs)


# -- system files ------------------------------------------------------------------------


def system_from_dict(data: Mapping) -> tuple[DirectedSystem, dict]:
    """Build a system from its file form; returns the system and the
    per-node cover choices (``"covers"``, optional).

    ``index`` is ``"chain"`` or ``{"nodes": [...], "order": [[i, j], ...]}``;
    ``stages`` maps node names to group specs; ``maps`` lists
    ``{"from", "to", "images": {generator label: image label}}``.  Chains
    number their stages ``"1".."K"`` and list the maps ``k -> k+1``.
    """
    from .catalog import make_group

    stages = {str(k): make_group(v) for k, v in data["stages"].items()}
    maps = {}
    for m in data.get("maps", []):
        i, j = str(m["from"]), str(m["to"])
        if i not in stages or j not in stages:
            raise GroupError(f"map {i} -> {j} mentions an unknown stage")
        g, h = stages[i], stages[j]
        imgs = {g.element(a): h.element(b) for a, b in m["images"].items()}
        f = extend_generator_images(g, h, imgs)
        if f is None:
            raise GroupError(f"images for {i} -> {j} do not define a homomorphism")
        maps[(i, j)] = f
    choices = {str(k): v for k, v in data.get("covers", {}).items()}
    index = data["index"]
    if index == "chain":
        k = len(stages)
        keys = [str(t) for t in range(1, k + 1)]
        if sorted(stages) != sorted(keys):
            raise GroupError("chain stages must be numbered 1..K")
        steps = []
        for t in range(1, k):
            if (str(t), str(t + 1)) not in maps:
                raise GroupError(f"chain map {t} -> {t + 1} is missing")
            steps.append(maps[(str(t), str(t + 1))])
        chain = chain_from_lists([stages[x] for x in keys], steps, data.get("stable_from"))
        chain.horizon = min(int(data.get("horizon", k)), k)
        return chain, {int(a): b for a, b in choices.items()}
    nodes = [str(x) for x in index["nodes"]]
    order = [(str(a), str(b)) for a, b in index.get("order", [])]
    return PosetSystem(nodes, order, {n: stages[n] for n in nodes}, maps), choices

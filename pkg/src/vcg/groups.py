"""Finite groups stored as Cayley tables, with subgroups, homomorphisms,
series, quotients, Sylow subgroups and isomorphism testing.

Elements are addressed by index into ``FiniteGroup.elements``; products are
read from ``table[a, b]``.  All objects are immutable after construction.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

# table cells, not elements: order 4096 is 16M cells (int32)
MAX_ORDER = 4096
FULL_ASSOCIATIVITY_ORDER = 512
SPOT_CHECK_TRIPLES = 10_000


class GroupError(ValueError):
    """Invalid group data or a violated precondition."""


class CapExceeded(GroupError):
    """A computational size cap was exceeded."""


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    elements: tuple[str, ...]
    table: np.ndarray
    identity: int = -1
    name: str = ""

    def __post_init__(self):
        table = np.ascontiguousarray(np.asarray(self.table, dtype=np.int32))
        n = len(self.elements)
        if n == 0:
            raise GroupError("a group has at least one element")
        if n > MAX_ORDER:
            raise CapExceeded(f"order {n} exceeds Cayley-table cap {MAX_ORDER}")
        if table.shape != (n, n):
            raise GroupError(f"table shape {table.shape} does not match {n} elements")
        if len(set(self.elements)) != n:
            raise GroupError("element labels must be distinct")
        table.setflags(write=False)
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "table", table)
        ref = np.arange(n)
        if (np.sort(table, axis=1) != ref).any() or (np.sort(table, axis=0) != ref[:, None]).any():
            raise GroupError("table is not a Latin square")
        ident = self.identity
        if ident < 0:
            rows = np.flatnonzero((table == ref).all(axis=1))
            if len(rows) == 0:
                raise GroupError("no identity element")
            ident = int(rows[0])
            object.__setattr__(self, "identity", ident)
        if not ((table[ident] == ref).all() and (table[:, ident] == ref).all()):
            raise GroupError(f"element {self.elements[ident]!r} is not a two-sided identity")
        self._check_associative()

    def _check_associative(self):
        t = self.table
        n = len(self.elements)
        if n <= FULL_ASSOCIATIVITY_ORDER:
            for a in range(n):
                # (a b) c  versus  a (b c), over all b, c
                if (t[t[a]] != t[a][t]).any():
                    raise GroupError("table is not associative")
        else:
            rng = np.random.default_rng(20240601)
            a, b, c = rng.integers(0, n, size=(3, SPOT_CHECK_TRIPLES))
            if (t[t[a, b], c] != t[a, t[b, c]]).any():
                raise GroupError("table is not associative")

    # -- basic arithmetic -------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested Python lists, for fast scalar lookups."""
        return self.table.tolist()

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmax(self.table == self.identity, axis=1).astype(np.int32)
        inv.setflags(write=False)
        return inv

    @cached_property
    def index_of(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.elements)}

    def element(self, label: str) -> int:
        try:
            return self.index_of[label]
        except KeyError:
            raise GroupError(f"no element labelled {label!r} in {self.name or 'group'}") from None

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def product(self, items: Iterable[int]) -> int:
        rows = self.rows
        acc = self.identity
        for x in items:
            acc = rows[acc][x]
        return acc

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        acc, base = self.identity, a
        rows = self.rows
        while k:
            if k & 1:
                acc = rows[acc][base]
            base = rows[base][base]
            k >>= 1
        return acc

    def commutator(self, a: int, b: int) -> int:
        """``a^-1 b^-1 a b``."""
        inv = self.inverses
        return self.product((int(inv[a]), int(inv[b]), a, b))

    def conjugate(self, a: int, g: int) -> int:
        """``g^-1 a g``."""
        return self.product((self.inv(g), a, g))

    @cached_property
    def commutator_table(self) -> np.ndarray:
        t, inv = self.table, self.inverses
        # [a, b] = (a^-1 b^-1)(a b)
        left = t[inv[:, None], inv[None, :]]
        return t[left, t]

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        alive = np.ones(n, dtype=bool)
        while alive.any():
            hit = alive & (cur == self.identity)
            orders[hit] = k
            alive &= ~hit
            cur = self.table[cur, np.arange(n)]
            k += 1
        return orders

    @cached_property
    def exponent(self) -> int:
        e = 1
        for o in set(self.element_orders.tolist()):
            e = e * o // gcd(e, o)
        return e

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @cached_property
    def centralizer_orders(self) -> np.ndarray:
        return (self.table == self.table.T).sum(axis=1)

    def relabel(self, name: str) -> "FiniteGroup":
        return FiniteGroup(self.elements, self.table, self.identity, name)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([self.identity]))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False, compare=False)
    members: frozenset[int]

    def __post_init__(self):
        g = self.parent
        if g.identity not in self.members:
            raise GroupError("subgroup must contain the identity")
        idx = np.fromiter(self.members, dtype=np.int64)
        prods = g.table[np.ix_(idx, idx)]
        if not np.isin(prods, idx).all() or not np.isin(g.inverses[idx], idx).all():
            raise GroupError("member set is not closed under products and inverses")

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    @cached_property
    def indices(self) -> list[int]:
        return sorted(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def is_normal(self) -> bool:
        g = self.parent
        idx = np.array(self.indices)
        t, inv = g.table, g.inverses
        conj = t[t[inv[:, None], idx[None, :]], np.arange(g.order)[:, None]]
        return bool(np.isin(conj, idx).all())

    def is_abelian(self) -> bool:
        idx = np.array(self.indices)
        sub = self.parent.table[np.ix_(idx, idx)]
        return bool((sub == sub.T).all())

    def as_group(self, name: str = "") -> tuple[FiniteGroup, "Homomorphism"]:
        """Realize the subgroup as a standalone group plus its inclusion map."""
        g = self.parent
        idx = self.indices
        pos = {x: i for i, x in enumerate(idx)}
        sub = g.table[np.ix_(idx, idx)]
        table = np.vectorize(pos.__getitem__, otypes=[np.int32])(sub) if len(idx) else sub
        h = FiniteGroup(tuple(g.elements[x] for x in idx), table, pos[g.identity], name)
        return h, Homomorphism(h, g, tuple(idx))

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.members & other.members)


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = np.asarray(self.images, dtype=np.int64)
        if imgs.shape != (self.source.order,):
            raise GroupError("one image per source element is required")
        if ((imgs < 0) | (imgs >= self.target.order)).any():
            raise GroupError("image index out of range")
        object.__setattr__(self, "images", tuple(int(x) for x in imgs))
        lhs = imgs[self.source.table]
        rhs = self.target.table[imgs[:, None], imgs[None, :]]
        if (lhs != rhs).any():
            raise GroupError("map does not respect multiplication")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """Left-to-right composition: first ``self``, then ``other``."""
        if other.source is not self.target:
            raise GroupError("maps are not composable")
        return Homomorphism(self.source, other.target, tuple(other.images[x] for x in self.images))

    @cached_property
    def kernel(self) -> Subgroup:
        e = self.target.identity
        return Subgroup(self.source, frozenset(i for i, x in enumerate(self.images) if x == e))

    @cached_property
    def image(self) -> Subgroup:
        return Subgroup(self.target, frozenset(self.images))

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def restrict(self, sub: Subgroup) -> "Homomorphism":
        h, inc = sub.as_group()
        return inc.then(self)

    @classmethod
    def identity_map(cls, g: FiniteGroup) -> "Homomorphism":
        return cls(g, g, tuple(range(g.order)))

    @classmethod
    def trivial_map(cls, g: FiniteGroup, h: FiniteGroup) -> "Homomorphism":
        return cls(g, h, (h.identity,) * g.order)


def extend_generator_images(g: FiniteGroup, h: FiniteGroup, gen_images: dict[int, int]) -> Homomorphism | None:
    """The homomorphism determined by images of generators, or None if the
    assignment does not extend (or the keys do not generate ``g``)."""
    images = _extend_partial(g, h, list(gen_images.items()))
    if images is None or len(images) != g.order:
        return None
    return Homomorphism(g, h, tuple(images[i] for i in range(g.order)))


def _extend_partial(g: FiniteGroup, h: FiniteGroup, pairs: list[tuple[int, int]]) -> dict[int, int] | None:
    # BFS over the Cayley graph of <gens>; every edge must be consistent
    grow, hrow = g.rows, h.rows
    images = {g.identity: h.identity}
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        ix = images[x]
        for s, t in pairs:
            y = grow[x][s]
            iy = hrow[ix][t]
            known = images.get(y)
            if known is None:
                images[y] = iy
                queue.append(y)
            elif known != iy:
                return None
    return images


# -- subgroup machinery ---------------------------------------------------


def subgroup_generated(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = sorted(set(int(x) for x in gens) - {g.identity})
    members = {g.identity}
    frontier = [g.identity]
    rows = g.rows
    while frontier:
        nxt = []
        for x in frontier:
            row = rows[x]
            for s in gens:
                y = row[s]
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(g, frozenset(members))


def normal_closure(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = np.array(sorted(set(int(x) for x in gens)), dtype=np.int64)
    if len(gens) == 0:
        return g.trivial
    t, inv = g.table, g.inverses
    everything = np.arange(g.order)
    conj = t[t[inv[:, None], gens[None, :]], everything[:, None]]
    return subgroup_generated(g, np.unique(conj).tolist())


def commutator_subgroup(g: FiniteGroup, a: Subgroup, b: Subgroup) -> Subgroup:
    ai = np.array(a.indices)
    bi = np.array(b.indices)
    vals = g.commutator_table[np.ix_(ai, bi)]
    return subgroup_generated(g, np.unique(vals).tolist())


def center(g: FiniteGroup) -> Subgroup:
    central = (g.table == g.table.T).all(axis=1)
    return Subgroup(g, frozenset(np.flatnonzero(central).tolist()))


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    return commutator_subgroup(g, g.whole, g.whole)


def lower_central_series(g: FiniteGroup) -> list[Subgroup]:
    out = [g.whole]
    while True:
        nxt = commutator_subgroup(g, out[-1], g.whole)
        if nxt == out[-1]:
            return out
        out.append(nxt)


def upper_central_series(g: FiniteGroup) -> list[Subgroup]:
    out = [g.trivial]
    comm = g.commutator_table
    while True:
        inside = np.zeros(g.order, dtype=bool)
        inside[out[-1].indices] = True
        nxt = Subgroup(g, frozenset(np.flatnonzero(inside[comm].all(axis=1)).tolist()))
        if nxt == out[-1]:
            return out
        out.append(nxt)


def derived_series(g: FiniteGroup) -> list[Subgroup]:
    out = [g.whole]
    while True:
        nxt = commutator_subgroup(g, out[-1], out[-1])
        if nxt == out[-1]:
            return out
        out.append(nxt)


def series(g: FiniteGroup, kind: str) -> list[Subgroup]:
    kinds = {
        "lower-central": lower_central_series,
        "upper-central": upper_central_series,
        "derived": derived_series,
    }
    if kind not in kinds:
        raise GroupError(f"unknown series kind {kind!r}")
    return kinds[kind](g)


def is_nilpotent(g: FiniteGroup) -> bool:
    return lower_central_series(g)[-1].order == 1


def nilpotency_class(g: FiniteGroup) -> int | None:
    lcs = lower_central_series(g)
    return len(lcs) - 1 if lcs[-1].order == 1 else None


# -- quotients and products -------------------------------------------------


def quotient_group(g: FiniteGroup, n: Subgroup, name: str = "") -> tuple[FiniteGroup, Homomorphism]:
    """``G/N`` labelled by coset representatives (least index in each coset)."""
    if n.parent is not g:
        raise GroupError("subgroup belongs to another group")
    if not n.is_normal():
        raise GroupError("subgroup is not normal")
    coset_of = np.full(g.order, -1, dtype=np.int64)
    reps = []
    nidx = np.array(n.indices)
    for x in range(g.order):
        if coset_of[x] < 0:
            coset_of[g.table[x, nidx]] = len(reps)
            reps.append(x)
    reps_a = np.array(reps)
    table = coset_of[g.table[np.ix_(reps_a, reps_a)]]
    labels = tuple(g.elements[r] for r in reps)
    q = FiniteGroup(labels, table, int(coset_of[g.identity]), name or f"{g.name}/N")
    return q, Homomorphism(g, q, tuple(coset_of.tolist()))


@dataclass(frozen=True, eq=False)
class DirectProduct:
    group: FiniteGroup
    factors: tuple[FiniteGroup, ...]
    projections: tuple[Homomorphism, ...]
    injections: tuple[Homomorphism, ...]


def direct_product_data(factors: Sequence[FiniteGroup], name: str = "") -> DirectProduct:
    factors = tuple(factors)
    total = 1
    for f in factors:
        total *= f.order
    if total > MAX_ORDER:
        raise CapExceeded(f"direct product order {total} exceeds cap {MAX_ORDER}")
    if not factors:
        trivial = FiniteGroup(("1",), np.zeros((1, 1), dtype=np.int32), 0, name or "1")
        return DirectProduct(trivial, (), (), ())
    sizes = [f.order for f in factors]
    # mixed-radix index, first factor most significant
    coords = np.array(np.unravel_index(np.arange(total), sizes)).T  # total x k
    table = np.zeros((total, total), dtype=np.int64)
    for i, f in enumerate(factors):
        table = table * f.order + f.table[coords[:, i][:, None], coords[:, i][None, :]]
    labels = tuple(
        "(" + ",".join(f.elements[c] for f, c in zip(factors, row)) + ")" for row in coords.tolist()
    )
    ident = int(np.ravel_multi_index([f.identity for f in factors], sizes))
    nm = name or "x".join(f.name or "?" for f in factors)
    p = FiniteGroup(labels, table, ident, nm)
    projections = tuple(Homomorphism(p, f, tuple(coords[:, i].tolist())) for i, f in enumerate(factors))
    injections = []
    for i, f in enumerate(factors):
        base = [fj.identity for fj in factors]
        imgs = []
        for x in range(f.order):
            base[i] = x
            imgs.append(int(np.ravel_multi_index(base, sizes)))
        injections.append(Homomorphism(f, p, tuple(imgs)))
    return DirectProduct(p, factors, projections, tuple(injections))


def direct_product(factors: Sequence[FiniteGroup], name: str = "") -> FiniteGroup:
    return direct_product_data(factors, name).group


# -- abelian invariants -------------------------------------------------------


def _p_part_invariants(orders: np.ndarray, p: int) -> list[int]:
    # |A[p^k]| = prod_i p^min(e_i, k) determines the multiset of exponents e_i
    full = 0
    n = len(orders)
    while n % p == 0:
        n //= p
        full += 1
    logs = [0]
    k = 0
    while logs[-1] < full:
        k += 1
        c = int(np.count_nonzero(p**k % orders == 0))
        e, m = 0, c
        while m % p == 0 and m > 1:
            m //= p
            e += 1
        logs.append(e)
    # number of exponents >= k is logs[k] - logs[k-1]
    at_least = [logs[i] - logs[i - 1] for i in range(1, len(logs))] + [0]
    out = []
    for k in range(1, len(at_least)):
        out.extend([p**k] * (at_least[k - 1] - at_least[k]))
    return out


def invariant_factors_from_elementary(divisors: Iterable[int]) -> list[int]:
    """Combine prime-power cyclic orders into an invariant-factor chain."""
    by_prime: dict[int, list[int]] = {}
    for q in divisors:
        if q <= 1:
            continue
        p = _prime_factors(q)[0]
        by_prime.setdefault(p, []).append(q)
    if not by_prime:
        return []
    length = max(len(v) for v in by_prime.values())
    factors = [1] * length
    for v in by_prime.values():
        v = sorted(v, reverse=True)
        for i, q in enumerate(v):
            factors[i] *= q
    return sorted(f for f in factors if f > 1)


def abelian_invariants(obj: FiniteGroup | Subgroup):
    """Invariant factors of an abelian group or subgroup, as FgAbelianGroup."""
    from .lattice import FgAbelianGroup

    if isinstance(obj, Subgroup):
        if not obj.is_abelian():
            raise GroupError("subgroup is not abelian")
        orders = obj.parent.element_orders[np.array(obj.indices)]
        n = obj.order
    else:
        if not obj.is_abelian:
            raise GroupError("group is not abelian")
        orders = obj.element_orders
        n = obj.order
    elementary = []
    for p in _prime_factors(n):
        elementary.extend(_p_part_invariants(orders, p))
    return FgAbelianGroup(tuple(invariant_factors_from_elementary(elementary)), 0)


def abelianization(g: FiniteGroup) -> tuple[FiniteGroup, Homomorphism]:
    return quotient_group(g, derived_subgroup(g), name=f"{g.name}_ab")


def abelianization_invariants(g: FiniteGroup):
    return abelian_invariants(g if g.is_abelian else abelianization(g)[0])


# -- Sylow subgroups ------------------------------------------------------------


def sylow_subgroup(g: FiniteGroup, p: int) -> Subgroup:
    n = g.order
    target = 1
    while n % p == 0:
        n //= p
        target *= p
    if target == 1:
        return g.trivial
    orders = g.element_orders
    p_elements = [x for x in range(g.order) if orders[x] > 1 and target % orders[x] == 0]
    current = g.trivial
    changed = True
    while current.order < target and changed:
        changed = False
        for x in p_elements:
            if x in current:
                continue
            cand = subgroup_generated(g, current.indices + [x])
            if target % cand.order == 0:
                current = cand
                changed = True
                if current.order == target:
                    break
    if current.order != target:
        raise GroupError(f"greedy closure failed to reach a Sylow {p}-subgroup")
    if is_nilpotent(g) and not current.is_normal():
        raise GroupError("nilpotent group with a non-normal Sylow subgroup")
    return current


# -- isomorphism ------------------------------------------------------------------


def generating_sequence(g: FiniteGroup) -> list[int]:
    """A short generating sequence, chosen greedily by subgroup growth."""
    orders = g.element_orders
    cand = sorted(range(g.order), key=lambda x: (-orders[x], x))
    gens: list[int] = []
    current = g.trivial
    while current.order < g.order:
        best, best_sub = None, None
        for x in cand:
            if x in current:
                continue
            sub = subgroup_generated(g, gens + [x])
            if best_sub is None or sub.order > best_sub.order:
                best, best_sub = x, sub
                if sub.order == g.order:
                    break
        gens.append(best)
        current = best_sub
    return gens


def _order_profile(g: FiniteGroup) -> tuple:
    return (
        g.order,
        g.is_abelian,
        tuple(sorted(Counter(zip(g.element_orders.tolist(), g.centralizer_orders.tolist())).items())),
        tuple(s.order for s in lower_central_series(g)),
        tuple(s.order for s in derived_series(g)),
        tuple(s.order for s in upper_central_series(g)),
    )


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> tuple[bool, Homomorphism | None]:
    """Decide ``g ≅ h``; a positive answer carries a bijective witness g -> h."""
    if g.order != h.order:
        return False, None
    if g.is_abelian != h.is_abelian:
        return False, None
    if g.is_abelian:
        if abelian_invariants(g) != abelian_invariants(h):
            return False, None
        if g.order > FULL_ASSOCIATIVITY_ORDER:
            return True, _abelian_witness(g, h)
    elif g.order > FULL_ASSOCIATIVITY_ORDER:
        raise CapExceeded(f"nonabelian isomorphism test capped at order {FULL_ASSOCIATIVITY_ORDER}")
    if _order_profile(g) != _order_profile(h):
        return False, None
    witness = _backtrack_isomorphism(g, h)
    return (witness is not None), witness


def _backtrack_isomorphism(g: FiniteGroup, h: FiniteGroup) -> Homomorphism | None:
    gens = generating_sequence(g)
    go, gc = g.element_orders, g.centralizer_orders
    ho, hc = h.element_orders, h.centralizer_orders
    candidates = [
        [y for y in range(h.order) if ho[y] == go[x] and hc[y] == gc[x]] for x in gens
    ]

    def search(k: int, pairs: list[tuple[int, int]]):
        if k == len(gens):
            images = _extend_partial(g, h, pairs)
            if images is None or len(set(images.values())) != h.order:
                return None
            return Homomorphism(g, h, tuple(images[i] for i in range(g.order)))
        for y in candidates[k]:
            trial = pairs + [(gens[k], y)]
            images = _extend_partial(g, h, trial)
            if images is None or len(set(images.values())) != len(images):
                continue
            found = search(k + 1, trial)
            if found is not None:
                return found
        return None

    return search(0, [])


def abelian_basis(g: FiniteGroup) -> list[int]:
    """Elements whose cyclic subgroups give a primary decomposition of ``g``."""
    basis: list[int] = []
    orders = g.element_orders
    for p in _prime_factors(g.order):
        pel = [x for x in range(g.order) if _is_power_of(int(orders[x]), p)]
        span = g.trivial
        chosen: list[int] = []
        target = 1
        m = g.order
        while m % p == 0:
            m //= p
            target *= p
        while span.order < target:
            # element of maximal order modulo the current span, lifted with equal order
            best, best_ord = None, 0
            span_idx = np.array(span.indices)
            for x in pel:
                if x in span:
                    continue
                k = 1
                y = x
                while y not in span:
                    y = g.rows[y][x]
                    k += 1
                if k > best_ord or (k == best_ord and orders[x] < orders[best]):
                    best, best_ord = x, k
            # find a lift in best*span of order best_ord
            lift = None
            for s in span_idx.tolist():
                y = g.rows[best][s]
                if orders[y] == best_ord:
                    lift = y
                    break
            chosen.append(lift)
            span = subgroup_generated(g, span.indices + [lift])
        basis.extend(chosen)
    return basis


def _is_power_of(n: int, p: int) -> bool:
    if n == 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def _abelian_witness(g: FiniteGroup, h: FiniteGroup) -> Homomorphism:
    bg, bh = abelian_basis(g), abelian_basis(h)
    og = sorted(bg, key=lambda x: (int(g.element_orders[x]), x))
    oh = sorted(bh, key=lambda x: (int(h.element_orders[x]), x))
    hom = extend_generator_images(g, h, dict(zip(og, oh)))
    if hom is None or not hom.is_bijective():
        raise GroupError("abelian basis matching failed")
    return hom


def trivial_group(name: str = "1") -> FiniteGroup:
    return FiniteGroup(("1",), np.zeros((1, 1), dtype=np.int32), 0, name)

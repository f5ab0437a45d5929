"""Schur multipliers of finite groups.

Three independent routes to M(G) = H_2(G, Z):

* ``bar``: the normalized bar complex.  ``C_2 / im d_3`` is ``M(G)`` plus a
  free part (``C_2 / ker d_2`` embeds in the free module ``C_1``), so the
  torsion of that cokernel is the multiplier.  A sparse unit-pivot
  elimination handles the large, very redundant ``d_3``.
* ``cocycle``: counts normalized 2-cocycles and coboundaries with values in
  ``Z/p^j`` for each prime power ``p^a`` exactly dividing ``|G|``, removes
  ``Ext(G_ab, Z/p^j)`` by its closed form and reads off the p-part of ``M(G)``
  from ``|Hom(M(G), Z/p^j)|``, j = 1..a.
* ``hopf``: ``R/[R,F]`` for a presentation on a generating set X, computed as
  the coinvariants of the cycle space of the Cayley graph; its torsion is
  ``M(G)``.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .fpgroups import StandardPresentation, Word, standard_presentation
from .groups import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    Homomorphism,
    _prime_factors,
    abelian_basis,
    abelianization,
    abelianization_invariants,
    generating_sequence,
)
from .lattice import (
    FgAbelianGroup,
    IntMatrix,
    SparseCokernel,
    TorsionComplement,
    local_valuations,
    sparse_cokernel,
    torsion_complement,
)

BAR_MAX_ORDER = 64
COCYCLE_MAX_ORDER = 64
SPLITTING_MAX_ORDER = 12
METHODS = ("bar", "cocycle", "hopf")


# -- normalized bar complex --------------------------------------------------------------


class BarComplex:
    """Normalized bar complex of ``G`` in degrees 1..3 (trivial coefficients)."""

    def __init__(self, g: FiniteGroup):
        self.group = g
        self.nonidentity = [x for x in range(g.order) if x != g.identity]
        self.pos = {x: i for i, x in enumerate(self.nonidentity)}
        self.m = len(self.nonidentity)

    @property
    def n_pairs(self) -> int:
        return self.m * self.m

    def pair(self, a: int, b: int) -> int | None:
        p = self.pos
        if a not in p or b not in p:
            return None
        return p[a] * self.m + p[b]

    def pair_of(self, index: int) -> tuple[int, int]:
        return self.nonidentity[index // self.m], self.nonidentity[index % self.m]

    def chain(self, coeffs: dict[tuple[int, int], int]) -> dict[int, int]:
        """Degree-2 chain from ``(g, h) -> coefficient``; degenerate pairs vanish."""
        out: dict[int, int] = {}
        for (a, b), c in coeffs.items():
            k = self.pair(a, b)
            if k is not None and c:
                out[k] = out.get(k, 0) + c
        return {k: c for k, c in out.items() if c}

    def d3_rows(self) -> Iterator[dict[int, int]]:
        # d(g,h,k) = (h,k) - (gh,k) + (g,hk) - (g,h)
        rows = self.group.rows
        pair = self.pair
        for g in self.nonidentity:
            rg = rows[g]
            for h in self.nonidentity:
                gh = rg[h]
                rh = rows[h]
                for k in self.nonidentity:
                    r: dict[int, int] = {}
                    for c, s in ((pair(h, k), 1), (pair(gh, k), -1), (pair(g, rh[k]), 1), (pair(g, h), -1)):
                        if c is not None:
                            r[c] = r.get(c, 0) + s
                    yield {c: x for c, x in r.items() if x}

    def d2_rows(self) -> Iterator[dict[int, int]]:
        # d(g,h) = (h) - (gh) + (g), one row per pair, columns indexed by G \ {1}
        rows = self.group.rows
        pos = self.pos
        for g in self.nonidentity:
            for h in self.nonidentity:
                r: dict[int, int] = {}
                for x, s in ((h, 1), (rows[g][h], -1), (g, 1)):
                    if x in pos:
                        r[pos[x]] = r.get(pos[x], 0) + s
                yield {c: v for c, v in r.items() if v}

    def push_forward(self, phi: Homomorphism, chain: dict[int, int], target: "BarComplex") -> dict[int, int]:
        out: dict[int, int] = {}
        for k, c in chain.items():
            a, b = self.pair_of(k)
            j = target.pair(phi(a), phi(b))
            if j is not None:
                out[j] = out.get(j, 0) + c
        return {k: c for k, c in out.items() if c}


@dataclass(frozen=True)
class BarHomology:
    complex: BarComplex
    cokernel: SparseCokernel  # C_2 / im d_3

    @property
    def multiplier(self) -> FgAbelianGroup:
        return self.cokernel.group.torsion

    def torsion_coordinates(self, chain: dict[int, int]) -> tuple[int, ...]:
        return self.cokernel.coordinates(chain)[: self.cokernel.n_torsion]

    def basis_cycles(self) -> list[dict[int, int]]:
        return [self.cokernel.lift(k) for k in range(self.cokernel.n_torsion)]


_BAR_CACHE: "weakref.WeakKeyDictionary[FiniteGroup, BarHomology]" = weakref.WeakKeyDictionary()


def _check_cap(g: FiniteGroup, cap: int, what: str) -> None:
    if g.order > cap:
        raise CapExceeded(f"{what} is limited to groups of order <= {cap} (got {g.order})")


def bar_homology(g: FiniteGroup) -> BarHomology:
    _check_cap(g, BAR_MAX_ORDER, "bar homology")
    hit = _BAR_CACHE.get(g)
    if hit is not None:
        return hit
    bc = BarComplex(g)
    ck = sparse_cokernel(bc.d3_rows(), bc.n_pairs)
    # H_1 is finite, so im d_2 has full rank |G| - 1
    if ck.group.free_rank != bc.m:
        raise ArithmeticError(f"bar complex: free rank {ck.group.free_rank} != {bc.m}")
    out = BarHomology(bc, ck)
    _BAR_CACHE[g] = out
    return out


def first_homology(g: FiniteGroup) -> FgAbelianGroup:
    """``H_1(G, Z)`` from ``d_2``; equals the abelianization."""
    bc = BarComplex(g)
    rows = list(bc.d2_rows())
    if bc.m == 0:
        return FgAbelianGroup(())
    return sparse_cokernel(rows, bc.m).group


# -- cocycle counting -------------------------------------------------------------------


def _p_adic_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _cocycle_p_part(g: FiniteGroup, p: int, a: int, ab: FgAbelianGroup) -> list[int]:
    bc = BarComplex(g)
    # Z^2(G; Z/p^j): solutions of d3 f = 0, counted from the local Smith form
    zv = local_valuations(bc.d3_rows(), bc.n_pairs, p, a)
    # B^2: image of f -> f d2, i.e. p^(j(|G|-1)) / |Hom(H_1, Z/p^j)|
    bv = local_valuations(bc.d2_rows(), bc.m, p, a)
    s = [0]
    for j in range(1, a + 1):
        log_z = sum(min(v, j) for v in zv)
        log_b = j * bc.m - sum(min(v, j) for v in bv)
        log_ext = _p_adic_valuation(ext_order(ab, p**j), p)
        s.append(log_z - log_b - log_ext)
    # s_j = sum_i min(e_i, j) for the p-part Z/p^e_1 x ...
    counts = [s[j] - s[j - 1] for j in range(1, a + 1)]  # #{i : e_i >= j}
    if any(c < 0 for c in counts) or any(counts[j] < counts[j + 1] for j in range(len(counts) - 1)):
        raise ArithmeticError(f"inconsistent cocycle counts at p={p}: {s}")
    out = []
    for j in range(1, a + 1):
        nxt = counts[j] if j < a else 0
        out.extend([p**j] * (counts[j - 1] - nxt))
    return out


def _multiplier_cocycle(g: FiniteGroup) -> FgAbelianGroup:
    _check_cap(g, COCYCLE_MAX_ORDER, "cocycle counting")
    ab = abelianization_invariants(g)
    parts: list[int] = []
    for p in _prime_factors(g.order):
        parts.extend(_cocycle_p_part(g, p, _p_adic_valuation(g.order, p), ab))
    return FgAbelianGroup.from_cyclic_orders(parts)


# -- Hopf route -------------------------------------------------------------------------


def _multiplier_hopf(g: FiniteGroup) -> FgAbelianGroup:
    gens = generating_sequence(g)
    n = g.order
    if not gens:
        return FgAbelianGroup(())
    rows = g.rows
    # BFS spanning tree of the Cayley graph; edge (x, s): x -> x gens[s]
    tree_edge: dict[tuple[int, int], bool] = {}
    parent: dict[int, tuple[int, int]] = {}
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, a in enumerate(gens):
                y = rows[x][a]
                if y not in seen:
                    seen.add(y)
                    parent[y] = (x, s)
                    tree_edge[(x, s)] = True
                    nxt.append(y)
        frontier = nxt
    nontree = [(x, s) for x in range(n) for s in range(len(gens)) if (x, s) not in tree_edge]
    col = {e: i for i, e in enumerate(nontree)}

    def path(y: int) -> list[tuple[tuple[int, int], int]]:
        out = []
        while y != g.identity:
            x, s = parent[y]
            out.append(((x, s), 1))
            y = x
        return out

    def cycle(e: tuple[int, int]) -> list[tuple[tuple[int, int], int]]:
        x, s = e
        y = rows[x][gens[s]]
        return path(x) + [(e, 1)] + [(f, -c) for f, c in path(y)]

    relations = []
    for e in nontree:
        z = cycle(e)
        for a in gens:
            r: dict[int, int] = {}
            # a.z - z restricted to nontree edges (the cycle-space coordinates)
            for (x, s), c in z:
                f = (rows[a][x], s)
                if f in col:
                    r[col[f]] = r.get(col[f], 0) + c
            r[col[e]] = r.get(col[e], 0) - 1
            relations.append({k: v for k, v in r.items() if v})
    ck = sparse_cokernel(relations, len(nontree))
    if ck.group.free_rank != len(gens):
        raise ArithmeticError("Hopf route: unexpected free rank")
    return ck.group.torsion


# -- public API -------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiplierResult:
    source: FiniteGroup
    group: FgAbelianGroup
    method: str
    # bar: degree-2 cycles (pair index -> coefficient) mapping to the
    # invariant-factor generators; other methods carry no representatives
    basis_cycles: tuple[dict[int, int], ...] = field(default=(), repr=False)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.group.invariant_factors

    def __str__(self) -> str:
        return str(self.group)


def schur_multiplier(g: FiniteGroup, method: str = "bar") -> MultiplierResult:
    if method == "bar":
        bh = bar_homology(g)
        return MultiplierResult(g, bh.multiplier, "bar", tuple(bh.basis_cycles()))
    if method == "cocycle":
        return MultiplierResult(g, _multiplier_cocycle(g), "cocycle")
    if method == "hopf":
        return MultiplierResult(g, _multiplier_hopf(g), "hopf")
    raise ValueError(f"unknown multiplier method {method!r}; choose from {METHODS}")


@dataclass(frozen=True)
class MultiplierMap:
    """Homomorphism between finite abelian groups in invariant-factor
    coordinates; ``images[k]`` is the image of the k-th source generator."""

    source: FgAbelianGroup
    target: FgAbelianGroup
    images: tuple[tuple[int, ...], ...]

    def __call__(self, coords: Sequence[int]) -> tuple[int, ...]:
        mods = self.target.invariant_factors
        out = [0] * len(mods)
        for c, img in zip(coords, self.images):
            for i, v in enumerate(img):
                out[i] += c * v
        return tuple(x % m for x, m in zip(out, mods))

    def then(self, other: "MultiplierMap") -> "MultiplierMap":
        return MultiplierMap(self.source, other.target, tuple(other(img) for img in self.images))

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(m) for m in self.source.invariant_factors))

    def kernel_order(self) -> int:
        zero = tuple(0 for _ in self.target.invariant_factors)
        return sum(1 for x in self.elements() if self(x) == zero)

    def image_order(self) -> int:
        return len({self(x) for x in self.elements()})

    def is_injective(self) -> bool:
        return self.kernel_order() == 1

    def is_surjective(self) -> bool:
        return self.image_order() == self.target.torsion_order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def is_identity(self) -> bool:
        n = len(self.source.invariant_factors)
        return self.source == self.target and all(
            self.images[k] == tuple(int(i == k) for i in range(n)) for k in range(n)
        )


def multiplier_induced_map(phi: Homomorphism) -> MultiplierMap:
    src, dst = bar_homology(phi.source), bar_homology(phi.target)
    images = []
    for z in src.basis_cycles():
        pushed = src.complex.push_forward(phi, z, dst.complex)
        images.append(dst.torsion_coordinates(pushed))
    return MultiplierMap(src.multiplier, dst.multiplier, tuple(images))


# -- universal cocycle ------------------------------------------------------------------


@dataclass(frozen=True)
class Cocycle2:
    """Normalized 2-cocycle ``G x G -> A`` stored as ``values[g, h]`` (coordinates in A)."""

    group: FiniteGroup
    target: FgAbelianGroup
    values: np.ndarray = field(repr=False)  # shape (n, n, len(target invariant factors))

    def __call__(self, g: int, h: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.values[g, h])

    def check(self) -> None:
        mods = np.array(self.target.invariant_factors, dtype=np.int64)
        f = self.values.astype(np.int64)
        e = self.group.identity
        if f.shape[2] == 0:
            return
        if f[e, :].any() or f[:, e].any():
            raise ArithmeticError("cocycle is not normalized")
        t = self.group.table.astype(np.int64)
        # f(x,y) + f(xy,z) - f(y,z) - f(x,yz) for all triples, vectorized over z
        for x in range(self.group.order):
            for y in range(self.group.order):
                lhs = f[x, y][None, :] + f[t[x, y]] - f[y] - f[x][t[y]]
                if (lhs % mods).any():
                    raise ArithmeticError(f"cocycle identity fails at x={x}, y={y}")

    def pairing(self, chain: dict[tuple[int, int], int]) -> tuple[int, ...]:
        mods = self.target.invariant_factors
        out = [0] * len(mods)
        for (g, h), c in chain.items():
            for i, v in enumerate(self.values[g, h]):
                out[i] += c * int(v)
        return tuple(x % m for x, m in zip(out, mods))

    def dump(self) -> str:
        n = self.group.order
        lines = []
        for g in range(n):
            lines.append(" ".join(",".join(map(str, self(g, h))) or "0" for h in range(n)))
        return "\n".join(lines)


def universal_cocycle(g: FiniteGroup) -> Cocycle2:
    """Cocycle with values in M(G) pairing to the identity with the basis cycles.

    ``f(g, h)`` starts as the torsion coordinate of the class of ``(g, h)`` in
    ``C_2 / im d_3``; it kills boundaries, so it is a cocycle, and it sends
    each basis cycle to the matching generator.  The part of its class
    coming from ``Ext(G_ab, M)`` is then normalized: for a cyclic
    decomposition of ``G_ab`` with lifts ``g_i`` of orders ``d_i`` there, the
    lift of ``g_i`` in the extension has ``d_i``-th power equal to the
    section value of ``g_i^d_i``.  This fixes a reproducible cover (D8 for
    C2 x C2, the exponent-3 Heisenberg group for C3 x C3).
    """
    bh = bar_homology(g)
    m = bh.multiplier
    n = g.order
    t = len(m.invariant_factors)
    vals = np.zeros((n, n, t), dtype=np.int64)
    if t:
        for k in range(bh.complex.n_pairs):
            a, b = bh.complex.pair_of(k)
            vals[a, b] = bh.torsion_coordinates({k: 1})
        vals = _normalize_ext_part(g, vals, np.array(m.invariant_factors, dtype=np.int64))
    f = Cocycle2(g, m, vals)
    for k, z in enumerate(bh.basis_cycles()):
        paired = f.pairing({bh.complex.pair_of(i): c for i, c in z.items()})
        if paired != tuple(int(i == k) for i in range(t)):
            raise ArithmeticError("universal cocycle does not pair to the identity")
    return f


def abelianization_coordinates(g: FiniteGroup) -> tuple[list[int], list[int], np.ndarray]:
    """Cyclic decomposition of ``G_ab``: orders ``d_i``, lifts ``g_i`` in G and
    the coordinate array ``coords[x, i]`` in ``[0, d_i)``."""
    q, proj = abelianization(g)
    basis = abelian_basis(q)
    orders = [int(q.element_orders[b]) for b in basis]
    coord_of: dict[int, tuple[int, ...]] = {}
    for ks in itertools.product(*(range(d) for d in orders)):
        x = q.identity
        for b, k in zip(basis, ks):
            x = q.mul(x, q.power(b, k))
        coord_of[x] = ks
    if len(coord_of) != q.order:
        raise ArithmeticError("abelian basis is not a direct decomposition")
    lifts = []
    for b in basis:
        lifts.append(next(x for x in range(g.order) if proj(x) == b))
    coords = np.array([coord_of[proj(x)] for x in range(g.order)], dtype=np.int64).reshape(g.order, len(basis))
    return orders, lifts, coords


def _normalize_ext_part(g: FiniteGroup, vals: np.ndarray, mods: np.ndarray) -> np.ndarray:
    orders, lifts, coords = abelianization_coordinates(g)
    vals = vals.copy()
    for i, (d, x) in enumerate(zip(orders, lifts)):
        # (0, x)^d = (S, x^d) in the extension
        s = np.zeros(len(mods), dtype=np.int64)
        y = x
        for _ in range(d - 1):
            s = s + vals[y, x]
            y = g.mul(y, x)
        c = coords[:, i]
        carry = (c[:, None] + c[None, :]) >= d
        vals = (vals - carry[:, :, None] * s[None, None, :]) % mods
    return vals


# -- relation module R/[R,F] for the standard presentation ----------------------------


@dataclass(frozen=True)
class RelationModuleData:
    standard: StandardPresentation
    generators: tuple[tuple[int, int], ...]  # e_{x,y} in column order
    relations: IntMatrix
    module: FgAbelianGroup  # R/[R,F]
    torsion_basis: tuple[tuple[int, ...], ...]
    complement_basis: tuple[tuple[int, ...], ...]
    complement_words: tuple[Word, ...]
    split: TorsionComplement = field(repr=False, compare=False)

    @property
    def presentation(self):
        return self.standard.presentation

    @property
    def torsion(self) -> FgAbelianGroup:
        return self.module.torsion

    def word_of(self, vector: Sequence[int]) -> Word:
        """``prod r_{x,y}^{v_{x,y}}`` in F; the order is immaterial modulo [R,F]."""
        return _word_of(self.standard, self.generators, vector)

    def twisted_complement(self, twist: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
        """Complement basis with ``sum_k twist[i][k] * torsion_basis[k]`` added to vector i.

        Any such choice spans another direct complement of the torsion.
        """
        out = []
        for i, v in enumerate(self.complement_basis):
            w = list(v)
            for k, c in enumerate(twist[i] if i < len(twist) else ()):
                for j, x in enumerate(self.torsion_basis[k]):
                    w[j] += c * x
            out.append(tuple(w))
        return tuple(out)


def relation_module_splitting(g: FiniteGroup, check: bool = True) -> RelationModuleData:
    _check_cap(g, SPLITTING_MAX_ORDER, "the relation-module splitting")
    n = g.order
    sp = standard_presentation(g)
    gens = tuple((x, y) for x in range(n) for y in range(n))
    col = {p: i for i, p in enumerate(gens)}
    rows = g.rows
    rels = set()
    # x̄ȳz̄ read two ways: r_{x,y} r_{xy,z} = r_{y,z}^(x̄^-1) r_{x,yz} and
    # conjugation is trivial modulo [R,F]
    for x in range(n):
        for y in range(n):
            xy = rows[x][y]
            for z in range(n):
                v = [0] * len(gens)
                v[col[(x, y)]] += 1
                v[col[(xy, z)]] += 1
                v[col[(y, z)]] -= 1
                v[col[(x, rows[y][z])]] -= 1
                if any(v):
                    rels.add(tuple(v))
    mat = IntMatrix.from_rows(sorted(rels), len(gens)) if rels else IntMatrix.zeros(0, len(gens))
    tc = torsion_complement(mat, len(gens))
    words = tuple(_word_of(sp, gens, v) for v in tc.complement_basis)
    data = RelationModuleData(sp, gens, mat, tc.group, tc.torsion_basis, tc.complement_basis, words, tc)
    if check:
        expected = schur_multiplier(g, "bar").group
        if data.torsion != expected:
            raise ArithmeticError(f"R/[R,F] torsion {data.torsion} differs from M(G) = {expected}")
        if data.module.free_rank != n:
            raise ArithmeticError("R/[R,F] should have free rank |G|")
    return data


def _word_of(sp: StandardPresentation, gens, vector) -> Word:
    out = Word()
    for (x, y), c in zip(gens, vector):
        if c:
            out = out * (sp.relator(x, y) ** c)
    return out


def ext_order(ab: FgAbelianGroup, q: int) -> int:
    """``|Ext(A, Z/q)|`` for finite ``A``: product of gcd(d, q)."""
    out = 1
    for d in ab.invariant_factors:
        out *= gcd(d, q)
    return out

"""Varieties, verbal and marginal subgroups, the covering-group checker and
two constructions of covering groups.

A V-covering group of G is a group G* with a normal subgroup A such that
G*/A is isomorphic to G, A lies in V(G*) ∩ V*(G*), and A is isomorphic to
the Baer invariant VM(G).  For the abelian variety VM(G) is the Schur
multiplier; for nilpotent varieties of class c >= 2 no algorithm is
available here and the value must be supplied by the caller.  A wrong
supplied value gives a wrong verdict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import log2
from typing import Sequence

import numpy as np

from .cosets import group_from_table, todd_coxeter
from .fpgroups import Presentation, Word, commutator, evaluate_word
from .groups import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    Homomorphism,
    Subgroup,
    abelian_invariants,
    is_isomorphic,
    lower_central_series,
    quotient_group,
    subgroup_generated,
    upper_central_series,
)
from .homology import (
    RelationModuleData,
    relation_module_splitting,
    schur_multiplier,
    universal_cocycle,
)
from .lattice import FgAbelianGroup

MARGINAL_BRUTE_FORCE_MAX_ORDER = 24


class CoverError(GroupError):
    """A constructed group failed its covering-group certificate."""


@dataclass(frozen=True)
class Variety:
    """Abelian groups (``c = 1``) or nilpotent groups of class at most ``c``."""

    c: int = 1

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("nilpotency class must be at least 1")

    @classmethod
    def abelian(cls) -> "Variety":
        return cls(1)

    @classmethod
    def nilpotent(cls, c: int) -> "Variety":
        return cls(c)

    @classmethod
    def parse(cls, text: str) -> "Variety":
        t = text.strip().lower()
        if t in ("abelian", "a", "ab"):
            return cls(1)
        if t.startswith("n") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"unknown variety {text!r}; use 'abelian' or 'N<c>'")

    @property
    def kind(self) -> str:
        return "Abelian" if self.c == 1 else f"N{self.c}"

    @property
    def is_abelian(self) -> bool:
        return self.c == 1

    @property
    def law_words(self) -> list[Word]:
        xs = [Word.gen(f"x{i}") for i in range(1, self.c + 2)]
        return [commutator(*xs)]

    def __str__(self) -> str:
        return self.kind


def verbal_subgroup(v: Variety, g: FiniteGroup) -> Subgroup:
    lcs = lower_central_series(g)
    return lcs[min(v.c, len(lcs) - 1)]


def marginal_subgroup(v: Variety, g: FiniteGroup) -> Subgroup:
    ucs = upper_central_series(g)
    return ucs[min(v.c, len(ucs) - 1)]


def law_values(v: Variety, g: FiniteGroup) -> np.ndarray:
    """Array ``w[x1, ..., x_{c+1}]`` of the left-normed commutator law."""
    comm = g.commutator_table.astype(np.int64)
    out = comm
    for _ in range(v.c - 1):
        out = comm[out]
    return out


def marginal_by_definition(v: Variety, g: FiniteGroup) -> Subgroup:
    """Elements ``a`` with ``w(.., x_i a, ..) = w(.., x_i, ..)`` for every
    substitution and position; exhaustive, for small groups only."""
    if g.order > MARGINAL_BRUTE_FORCE_MAX_ORDER:
        raise CapExceeded(f"elementwise marginal check limited to order <= {MARGINAL_BRUTE_FORCE_MAX_ORDER}")
    w = law_values(v, g)
    t = g.table.astype(np.int64)
    members = []
    for a in range(g.order):
        right = t[:, a]
        if all(np.array_equal(np.take(w, right, axis=i), w) for i in range(w.ndim)):
            members.append(a)
    return Subgroup(g, frozenset(members))


def verbal_by_definition(v: Variety, g: FiniteGroup) -> Subgroup:
    return subgroup_generated(g, np.unique(law_values(v, g)).tolist())


# -- certificates --------------------------------------------------------------------

_ISSUED = object()


@dataclass(frozen=True)
class CoverFailure:
    clause: str  # "normal" | "quotient" | "containment" | "multiplier"
    message: str
    ok: bool = False

    def __str__(self) -> str:
        return f"not a cover ({self.clause}): {self.message}"


@dataclass(frozen=True, eq=False)
class CoverCertificate:
    cover: FiniteGroup
    A: Subgroup
    base: FiniteGroup
    variety: Variety
    multiplier: FgAbelianGroup
    projection: Homomorphism  # cover -> base, kernel A
    evidence: dict = field(default_factory=dict)
    _token: object = field(default=None, repr=False)
    ok: bool = True

    def __post_init__(self):
        if self._token is not _ISSUED:
            raise TypeError("certificates are issued by check_v_cover only")

    def revalidate(self) -> "CoverCertificate":
        again = check_v_cover(self.cover, self.A, self.base, self.variety, self.multiplier)
        if not again.ok:
            raise CoverError(f"certificate no longer validates: {again}")
        return again

    def summary(self) -> dict:
        return {
            "cover_order": self.cover.order,
            "base_order": self.base.order,
            "A_order": self.A.order,
            "A": str(abelian_invariants(self.A)),
            "variety": self.variety.kind,
            "multiplier": str(self.multiplier),
        }


def check_v_cover(
    g_star: FiniteGroup,
    a: Subgroup,
    g: FiniteGroup,
    v: Variety | None = None,
    multiplier: FgAbelianGroup | str = "compute",
) -> CoverCertificate | CoverFailure:
    """Check the three covering-group conditions and name the first that fails."""
    v = v or Variety.abelian()
    if a.parent is not g_star:
        return CoverFailure("normal", "A is not a subgroup of the given cover")
    if not a.is_normal():
        return CoverFailure("normal", "A is not normal")
    if isinstance(multiplier, str):
        if multiplier != "compute":
            raise ValueError("multiplier must be an FgAbelianGroup or 'compute'")
        if not v.is_abelian:
            raise GroupError(f"no algorithm for the {v.kind} Baer invariant; supply its value")
        multiplier = schur_multiplier(g, "bar").group
    q, proj = quotient_group(g_star, a)
    if q.order != g.order:
        return CoverFailure("quotient", f"|G*/A| = {q.order} but |G| = {g.order}")
    iso, witness = is_isomorphic(q, g)
    if not iso:
        return CoverFailure("quotient", "G*/A is not isomorphic to G")
    verbal = verbal_subgroup(v, g_star)
    marginal = marginal_subgroup(v, g_star)
    if not a <= verbal:
        return CoverFailure("containment", f"A is not inside the verbal subgroup (order {verbal.order})")
    if not a <= marginal:
        return CoverFailure("containment", f"A is not inside the marginal subgroup (order {marginal.order})")
    if not a.is_abelian():
        return CoverFailure("multiplier", "A is not abelian")
    inv = abelian_invariants(a)
    if inv != multiplier:
        return CoverFailure("multiplier", f"A is {inv} but the Baer invariant is {multiplier}")
    projection = proj.then(witness)
    evidence = {
        "verbal_order": verbal.order,
        "marginal_order": marginal.order,
        "A_invariants": inv.as_list(),
    }
    return CoverCertificate(g_star, a, g, v, multiplier, projection, evidence, _ISSUED)


def require_cover(*args, **kwargs) -> CoverCertificate:
    out = check_v_cover(*args, **kwargs)
    if not out.ok:
        raise CoverError(str(out))
    return out


# -- cover from the universal cocycle --------------------------------------------------


def extension_group(f, name: str = "") -> tuple[FiniteGroup, Subgroup]:
    """Central extension on pairs ``(m, g)`` with
    ``(m1, g1)(m2, g2) = (m1 + m2 + f(g1, g2), g1 g2)``.  Returns the group and
    the subgroup ``{(m, 1)}``."""
    g = f.group
    mods = list(f.target.invariant_factors)
    coords = list(itertools.product(*(range(d) for d in mods)))
    nm, n = len(coords), g.order
    cm = np.array(coords, dtype=np.int64).reshape(nm, len(mods))
    radix = np.array([int(np.prod(mods[i + 1:])) for i in range(len(mods))], dtype=np.int64)
    mods_arr = np.array(mods, dtype=np.int64)
    t = g.table.astype(np.int64)
    # element index = m_index * n + g
    total = nm * n
    table = np.zeros((total, total), dtype=np.int32)
    fv = f.values.astype(np.int64)  # (n, n, t)
    for i1 in range(nm):
        for g1 in range(n):
            # all (m2, g2) at once
            s = cm[:, None, :] + cm[i1][None, None, :] + fv[g1][None, :, :]  # (nm, n, t)
            idx = (s % mods_arr) @ radix if mods else np.zeros((nm, n), dtype=np.int64)
            table[i1 * n + g1] = (idx * n + t[g1][None, :]).reshape(-1)
    labels = tuple(
        (g.elements[x] if not mods else f"({','.join(map(str, coords[i]))}|{g.elements[x]})")
        for i in range(nm)
        for x in range(n)
    )
    e = g.identity
    ext = FiniteGroup(labels, table, e, name)
    a = Subgroup(ext, frozenset(i * n + e for i in range(nm)))
    return ext, a


def cover_from_cocycle(g: FiniteGroup) -> tuple[FiniteGroup, CoverCertificate]:
    f = universal_cocycle(g)
    ext, a = extension_group(f, name=f"{g.name}*" if g.name else "")
    cert = require_cover(ext, a, g, Variety.abelian(), f.target)
    return ext, cert


# -- cover from the splitting of R/[R,F] ------------------------------------------------


def splitting_presentation(data: RelationModuleData, complement: Sequence[Sequence[int]] | None = None) -> Presentation:
    """``F/S`` with ``S = [R,F] <complement words>``: the generators of the
    standard presentation, the complement words, and ``[r_{x,y}, ḡ]``."""
    sp = data.standard
    g = sp.group
    if complement is None:
        words = list(data.complement_words)
    else:
        if not data.split.is_complement(complement):
            raise GroupError("supplied vectors do not span a complement of the torsion")
        words = [data.word_of(v) for v in complement]
    rels: dict[Word, None] = {}
    for w in words:
        if w:
            rels[w] = None
    n = g.order
    for x in range(n):
        for y in range(n):
            r = sp.relator(x, y)
            for s in sp.symbol_of:
                c = commutator(r, Word.gen(s))
                if c:
                    rels[c] = None
    return Presentation(sp.presentation.generators, tuple(rels))


def cover_from_splitting(
    g: FiniteGroup,
    complement: Sequence[Sequence[int]] | None = None,
    data: RelationModuleData | None = None,
    max_cosets: int | None = None,
) -> tuple[FiniteGroup, CoverCertificate]:
    data = data or relation_module_splitting(g)
    pres = splitting_presentation(data, complement)
    m = data.torsion
    table = todd_coxeter(pres, (), max_cosets)
    cover = group_from_table(table, name=f"F/S({g.name})" if g.name else "")
    if cover.order != g.order * m.torsion_order:
        raise CoverError(f"F/S has order {cover.order}, expected {g.order * m.torsion_order}")
    assignment = data.standard.assignment()
    images = tuple(evaluate_word(w, assignment, g) for w in table.representatives)
    proj = Homomorphism(cover, g, images)
    cert = require_cover(cover, proj.kernel, g, Variety.abelian(), m)
    return cover, cert


def alternative_complements(data: RelationModuleData) -> list[tuple[tuple[int, ...], ...]]:
    """Complements obtained by adding torsion elements to the default basis
    vectors, one torsion generator added to one vector at a time, plus the
    default itself first."""
    out = [data.complement_basis]
    for i in range(len(data.complement_basis)):
        for k, d in enumerate(data.torsion.invariant_factors):
            twist = [[0] * len(data.torsion.invariant_factors) for _ in data.complement_basis]
            twist[i][k] = 1
            out.append(data.twisted_complement(twist))
    return out


def standard_epimorphism(cert: CoverCertificate) -> dict:
    """Exhibit ``F -> G*`` on the standard generators (x̄ -> a lift of x)
    factoring through ``F/[R,F]``: the lifts generate ``G*`` and every
    relator ``r_{x,y}`` lands in the centre of ``G*``."""
    gs, base, proj = cert.cover, cert.base, cert.projection
    lift: dict[int, int] = {}
    for y in range(gs.order):
        lift.setdefault(proj(y), y)
    lift[base.identity] = gs.identity
    generated = subgroup_generated(gs, lift.values()).order == gs.order
    central_rows = gs.table == gs.table.T
    central = np.flatnonzero(central_rows.all(axis=1)).tolist()
    central_set = set(central)
    relators_central = all(
        gs.mul(gs.mul(lift[x], lift[y]), gs.inv(lift[base.mul(x, y)])) in central_set
        for x in range(base.order)
        for y in range(base.order)
    )
    return {
        "images": {base.elements[x]: gs.elements[y] for x, y in sorted(lift.items())},
        "surjective": generated,
        "relators_central": relators_central,
        "ok": generated and relators_central,
    }


# -- Schur-Baer divisibility ------------------------------------------------------------


@dataclass(frozen=True)
class DivisibilityReport:
    group_order: int
    multiplier: FgAbelianGroup
    k: int
    bound: float
    ok: bool


def schur_baer_divisibility(g: FiniteGroup, multiplier: FgAbelianGroup | None = None) -> DivisibilityReport:
    m = multiplier if multiplier is not None else schur_multiplier(g, "bar").group
    order = m.torsion_order
    k = 0
    while pow(g.order, k) % order:
        k += 1
        if k > 64:
            break
    bound = log2(order) + 1 if order > 0 else 1
    ok = pow(g.order, k) % order == 0 and k <= bound and (not m.invariant_factors or g.order % m.exponent == 0)
    return DivisibilityReport(g.order, m, k, bound, ok)

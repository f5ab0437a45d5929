"""HLT coset enumeration with coincidence processing and lookahead."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fpgroups import Presentation, Word, evaluate_word
from .groups import CapExceeded, FiniteGroup, GroupError

DEFAULT_MAX_COSETS = 2_000_000


def default_max_cosets() -> int:
    raw = os.environ.get("VCG_TC_MAX_COSETS")
    return int(raw) if raw else DEFAULT_MAX_COSETS


class CosetOverflow(CapExceeded):
    """The coset cap was reached; the presented group may be infinite."""


@dataclass(frozen=True)
class CosetTable:
    """Complete coset table.  ``action[i][c]`` is coset ``c`` times generator ``i``."""

    presentation: Presentation
    subgroup: tuple[Word, ...]
    action: tuple[tuple[int, ...], ...]
    representatives: tuple[Word, ...]  # shortlex-BFS coset representatives

    @property
    def index(self) -> int:
        return len(self.representatives)

    def permutation(self, symbol: str) -> tuple[int, ...]:
        return self.action[self.presentation.generators.index(symbol)]

    def trace(self, coset: int, w: Word) -> int:
        gens = self.presentation.generators
        for s, e in w.letters:
            perm = self.action[gens.index(s)]
            if e > 0:
                for _ in range(e):
                    coset = perm[coset]
            else:
                inv = _inverse_perm(perm)
                for _ in range(-e):
                    coset = inv[coset]
        return coset

    def check(self) -> None:
        n = self.index
        for perm in self.action:
            if sorted(perm) != list(range(n)):
                raise GroupError("coset table column is not a permutation")
        for r in self.presentation.relators:
            for c in range(n):
                if self.trace(c, r) != c:
                    raise GroupError(f"relator {r} does not close at coset {c}")
        for h in self.subgroup:
            if self.trace(0, h) != 0:
                raise GroupError(f"subgroup generator {h} does not fix coset 0")


def _inverse_perm(perm: Sequence[int]) -> list[int]:
    out = [0] * len(perm)
    for i, j in enumerate(perm):
        out[j] = i
    return out


@dataclass
class _Enumerator:
    ngens: int
    relators: list[list[int]]
    max_cosets: int
    table: list[list[int]] = field(default_factory=list)
    parent: list[int] = field(default_factory=list)
    queue: list[int] = field(default_factory=list)
    live: int = 0

    def __post_init__(self):
        self.ncols = 2 * self.ngens
        self.inv = [c ^ 1 for c in range(self.ncols)]
        self._new()

    def _new(self) -> int:
        if len(self.table) >= self.max_cosets:
            raise CosetOverflow(f"coset enumeration exceeded {self.max_cosets} cosets")
        self.table.append([-1] * self.ncols)
        self.parent.append(len(self.parent))
        self.live += 1
        return len(self.table) - 1

    def define(self, a: int, x: int) -> None:
        b = self._new()
        self.table[a][x] = b
        self.table[b][self.inv[x]] = a

    def rep(self, k: int) -> int:
        p = self.parent
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def merge(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            self.queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        self.queue = []
        self.merge(a, b)
        i = 0
        t, inv = self.table, self.inv
        while i < len(self.queue):
            g = self.queue[i]
            i += 1
            row = t[g]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    continue
                xi = inv[x]
                if t[d][xi] == g:
                    t[d][xi] = -1
                mu, nu = self.rep(g), self.rep(d)
                if t[mu][x] >= 0:
                    self.merge(nu, t[mu][x])
                elif t[nu][xi] >= 0:
                    self.merge(mu, t[nu][xi])
                else:
                    t[mu][x] = nu
                    t[nu][xi] = mu

    def is_live(self, a: int) -> bool:
        return self.parent[a] == a

    def scan(self, a: int, w: list[int], fill: bool) -> None:
        t, inv = self.table, self.inv
        f, i = a, 0
        b, j = a, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] >= 0:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and t[b][inv[w[j]]] >= 0:
                b = t[b][inv[w[j]]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][inv[w[i]]] = f
                return
            if not fill:
                return
            self.define(f, w[i])

    def lookahead(self) -> None:
        for a in range(len(self.table)):
            if not self.is_live(a):
                continue
            for w in self.relators:
                self.scan(a, w, fill=False)
                if not self.is_live(a):
                    break

    def run(self, subgroup: list[list[int]]) -> None:
        for w in subgroup:
            self.scan(0, w, fill=True)
        a = 0
        while a < len(self.table):
            if self.is_live(a):
                try:
                    self._process(a)
                except CosetOverflow:
                    # one lookahead pass, then retry with whatever room it freed
                    before = self.live
                    self.lookahead()
                    self._compact_tail()
                    if self.live == before and len(self.table) >= self.max_cosets:
                        raise
                    continue
            a += 1

    def _process(self, a: int) -> None:
        for w in self.relators:
            self.scan(a, w, fill=True)
            if not self.is_live(a):
                return
        row = self.table[a]
        for x in range(self.ncols):
            if row[x] < 0:
                self.define(a, x)

    def _compact_tail(self) -> None:
        # drop dead cosets at the end of the table so their slots can be reused
        while self.table and not self.is_live(len(self.table) - 1):
            self.table.pop()
            self.parent.pop()

    def finish(self) -> tuple[list[int], list[list[int]]]:
        alive = [a for a in range(len(self.table)) if self.is_live(a)]
        new = {a: k for k, a in enumerate(alive)}
        out = []
        for a in alive:
            row = self.table[a]
            if min(row) < 0:
                raise GroupError("coset table incomplete after enumeration")
            out.append([new[self.rep(row[x])] for x in range(self.ncols)])
        return alive, out


def _letters(p: Presentation, w: Word) -> list[int]:
    pos = {s: i for i, s in enumerate(p.generators)}
    out = []
    for s, e in w.expanded():
        out.append(2 * pos[s] + (0 if e > 0 else 1))
    return out


def todd_coxeter(
    p: Presentation,
    subgroup: Sequence[Word] = (),
    max_cosets: int | None = None,
) -> CosetTable:
    """Enumerate cosets of the subgroup generated by ``subgroup`` in the
    group presented by ``p``.  Raises :class:`CosetOverflow` past the cap."""
    cap = default_max_cosets() if max_cosets is None else max_cosets
    if cap < 1:
        raise ValueError("max_cosets must be at least 1")
    if not p.generators:
        return CosetTable(p, tuple(subgroup), (), (Word(),))
    rels = [_letters(p, r) for r in p.relators if r]
    # cyclic reduction of relators does not change the normal closure
    rels.sort(key=len)
    e = _Enumerator(len(p.generators), rels, cap)
    e.run([_letters(p, w) for w in subgroup if w])
    _, rows = e.finish()
    n = len(rows)
    ngens = len(p.generators)
    action = tuple(tuple(rows[c][2 * i] for c in range(n)) for i in range(ngens))
    reps = _bfs_representatives(p, rows)
    # renumber cosets in BFS order so results are canonical
    order = [c for c, _ in reps]
    new = {c: k for k, c in enumerate(order)}
    action = tuple(tuple(new[perm[c]] for c in order) for perm in action)
    table = CosetTable(p, tuple(subgroup), action, tuple(w for _, w in reps))
    return table


def _bfs_representatives(p: Presentation, rows: list[list[int]]) -> list[tuple[int, Word]]:
    seen = {0: Word()}
    out = [(0, Word())]
    k = 0
    while k < len(out):
        c, w = out[k]
        k += 1
        for col in range(len(rows[0])):
            d = rows[c][col]
            if d not in seen:
                sym = p.generators[col // 2]
                nw = w * Word.gen(sym, 1 if col % 2 == 0 else -1)
                seen[d] = nw
                out.append((d, nw))
    return out


def group_from_table(table: CosetTable, name: str = "") -> FiniteGroup:
    """The permutation image of the presented group on the cosets.  When the
    action is regular (always the case for the trivial subgroup) the result
    has one element per coset, labelled by its representative word."""
    n = table.index
    gens = table.presentation.generators
    perms = [np.array(p, dtype=np.int64) for p in table.action]
    inv = [np.argsort(p) for p in perms]
    # cols[c, d]: coset c traced along the representative word of d
    cols = np.zeros((n, n), dtype=np.int64)
    cols[:, 0] = np.arange(n)
    for d in range(1, n):
        w = table.representatives[d]
        s, e = w.letters[-1]
        parent = table.trace(0, Word(w.letters[:-1] + ((s, e - 1 if e > 0 else e + 1),)))
        step = perms[gens.index(s)] if e > 0 else inv[gens.index(s)]
        cols[:, d] = step[cols[:, parent]]
    # regular iff every Schreier generator acts trivially, i.e. tracing
    # word(d) x and word(dx) agree from every coset
    if all(np.array_equal(p[cols], cols[:, p]) for p in perms):
        labels = tuple(str(w) for w in table.representatives)
        return FiniteGroup(labels, cols.astype(np.int32), 0, name)
    from .catalog import permutation_closure

    return permutation_closure([tuple(p.tolist()) for p in perms], name)


def presented_group(p: Presentation, max_cosets: int | None = None, name: str = "") -> FiniteGroup:
    return group_from_table(todd_coxeter(p, (), max_cosets), name)


def find_presentation(g: FiniteGroup, max_cosets: int | None = None) -> tuple[Presentation, dict[str, int]]:
    """A finite presentation of ``g`` on a small generating set, checked by
    enumeration.  Returns the presentation and the generator assignment."""
    from .groups import generating_sequence

    gens = generating_sequence(g)
    symbols = [_symbol(i) for i in range(len(gens))]
    assignment = dict(zip(symbols, gens))
    if not gens:
        return Presentation((), ()), {}
    cap = max_cosets or max(1000, 50 * g.order)
    # BFS spanning tree of the Cayley graph
    tree: dict[int, Word] = {g.identity: Word()}
    frontier = [g.identity]
    cycles: list[Word] = []
    while frontier:
        nxt = []
        for x in frontier:
            for s, a in zip(symbols, gens):
                y = g.mul(x, a)
                if y not in tree:
                    tree[y] = tree[x] * Word.gen(s)
                    nxt.append(y)
        frontier = nxt
    for x in sorted(tree, key=lambda v: (len(tree[v]), v)):
        for s, a in zip(symbols, gens):
            y = g.mul(x, a)
            r = tree[x] * Word.gen(s) * tree[y].inverse()
            if r:
                cycles.append(r)
    powers = [Word.gen(s, g.element_orders[a]) for s, a in zip(symbols, gens)]
    candidates = sorted(set(cycles), key=lambda w: (len(w), str(w)))
    rels = list(powers)
    for w in candidates:
        _check_relator(g, w, assignment)
    pending = list(candidates)
    batch = 1
    while True:
        pres = Presentation(tuple(symbols), tuple(rels))
        try:
            t = todd_coxeter(pres, (), cap)
            if t.index == g.order:
                return pres, assignment
        except CosetOverflow:
            pass
        if not pending:
            raise GroupError("failed to find a presentation")
        rels.extend(pending[:batch])
        pending = pending[batch:]
        batch = min(batch * 2, 64)


def _check_relator(g: FiniteGroup, w: Word, assignment: dict[str, int]) -> None:
    if evaluate_word(w, assignment, g) != g.identity:
        raise GroupError("internal error: Cayley-graph cycle is not a relator")


def _symbol(i: int) -> str:
    letters = "abcdfghkmnpqrstuvw"
    return letters[i] if i < len(letters) else f"x{i}"


def element_words(g: FiniteGroup, assignment: dict[str, int]) -> dict[int, Word]:
    """Shortest positive words for every element reachable from the assigned generators."""
    words = {g.identity: Word()}
    frontier = [g.identity]
    items = sorted(assignment.items())
    while frontier:
        nxt = []
        for x in frontier:
            for s, a in items:
                y = g.mul(x, a)
                if y not in words:
                    words[y] = words[x] * Word.gen(s)
                    nxt.append(y)
        frontier = nxt
    return words


def table_homomorphism(table: CosetTable, group: FiniteGroup, target: FiniteGroup, assignment: dict[str, int]):
    """The map from ``group_from_table(table)`` to ``target`` sending each
    generator to ``assignment[generator]``; verified as a homomorphism."""
    from .groups import Homomorphism

    images = tuple(evaluate_word(w, assignment, target) for w in table.representatives)
    return Homomorphism(group, target, images)

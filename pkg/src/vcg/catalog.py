"""Named groups, permutation input and Cayley-table files.

Catalog names::

    1, C1            trivial group
    Cn               cyclic of order n
    Dn               dihedral of order n (n even, n >= 4); D6 is S3
    Qn               dicyclic of order n (n divisible by 4); Q8 quaternion
    Dic12            alias of Q12
    S3, S4, A4       symmetric / alternating
    He3              Heisenberg group mod 3 (order 27, exponent 3)
    X^k              k-fold direct power, e.g. C2^4
    XxYxZ            direct products, e.g. C2xC4, C2^2xC3^2
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .groups import CapExceeded, FiniteGroup, GroupError, direct_product, trivial_group

MAX_PERMUTATION_POINTS = 20
MAX_PERMUTATION_CLOSURE = 100_000


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    if n == 1:
        return trivial_group("C1")
    idx = np.arange(n)
    labels = tuple("1" if k == 0 else ("a" if k == 1 else f"a^{k}") for k in range(n))
    return FiniteGroup(labels, (idx[:, None] + idx[None, :]) % n, 0, f"C{n}")


def _word_label(parts: list[tuple[str, int]]) -> str:
    out = []
    for sym, k in parts:
        if k == 0:
            continue
        out.append(sym if k == 1 else f"{sym}^{k}")
    return " ".join(out) or "1"


def dihedral(order: int) -> FiniteGroup:
    """Symmetries of the regular (order/2)-gon; elements r^i s^j."""
    if order < 4 or order % 2:
        raise GroupError("dihedral order must be even and at least 4")
    n = order // 2
    elems = [(i, j) for j in range(2) for i in range(n)]
    pos = {e: k for k, e in enumerate(elems)}
    table = np.zeros((order, order), dtype=np.int32)
    for a, (i1, j1) in enumerate(elems):
        for b, (i2, j2) in enumerate(elems):
            # s r = r^-1 s
            i = (i1 + (i2 if j1 == 0 else -i2)) % n
            table[a, b] = pos[(i, (j1 + j2) % 2)]
    labels = tuple(_word_label([("r", i), ("s", j)]) for i, j in elems)
    return FiniteGroup(labels, table, 0, f"D{order}")


def dicyclic(order: int) -> FiniteGroup:
    """<x, y | x^(2n), y^2 = x^n, y^-1 x y = x^-1> of order 4n."""
    if order < 4 or order % 4:
        raise GroupError("dicyclic order must be a multiple of 4")
    n2 = order // 2
    half = n2 // 2
    elems = [(i, j) for j in range(2) for i in range(n2)]
    pos = {e: k for k, e in enumerate(elems)}
    table = np.zeros((order, order), dtype=np.int32)
    for a, (i1, j1) in enumerate(elems):
        for b, (i2, j2) in enumerate(elems):
            i = i1 + (i2 if j1 == 0 else -i2)
            j = j1 + j2
            if j == 2:
                i, j = i + half, 0
            table[a, b] = pos[(i % n2, j)]
    labels = tuple(_word_label([("x", i), ("y", j)]) for i, j in elems)
    return FiniteGroup(labels, table, 0, f"Q{order}")


def heisenberg(p: int = 3) -> FiniteGroup:
    elems = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    pos = {e: k for k, e in enumerate(elems)}
    n = len(elems)
    table = np.zeros((n, n), dtype=np.int32)
    for u, (a1, b1, c1) in enumerate(elems):
        for v, (a2, b2, c2) in enumerate(elems):
            table[u, v] = pos[((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p)]
    labels = tuple(_word_label([("x", a), ("y", b), ("z", c)]) for a, b, c in elems)
    return FiniteGroup(labels, table, 0, f"He{p}")


# -- permutations -------------------------------------------------------------


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse cycle notation such as ``(1 2 3)(4 5)`` into a 0-based image tuple."""
    text = text.strip()
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\(([^()]*)\)", "", text).strip():
        raise GroupError(f"malformed cycle notation: {text!r}")
    pts = [[int(t) for t in re.split(r"[\s,]+", c.strip()) if t] for c in cycles]
    top = max([max(c) for c in pts if c] + [degree or 0])
    if any(x < 1 for c in pts for x in c):
        raise GroupError("points are numbered from 1")
    if top > MAX_PERMUTATION_POINTS:
        raise CapExceeded(f"permutations act on at most {MAX_PERMUTATION_POINTS} points")
    img = list(range(top))
    for c in pts:
        if len(set(c)) != len(c):
            raise GroupError(f"repeated point in cycle {c}")
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def cycle_string(perm: tuple[int, ...]) -> str:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def from_permutations(gens: list[str] | list[tuple[int, ...]], name: str = "") -> FiniteGroup:
    """Close permutation generators (right action, ``x^(gh) = (x^g)^h``)."""
    perms = [parse_cycles(g) if isinstance(g, str) else tuple(g) for g in gens]
    if max([len(p) for p in perms] + [0]) > MAX_PERMUTATION_POINTS:
        raise CapExceeded(f"permutations act on at most {MAX_PERMUTATION_POINTS} points")
    return permutation_closure(perms, name)


def permutation_closure(perms: list[tuple[int, ...]], name: str = "") -> FiniteGroup:
    degree = max([len(p) for p in perms] + [1])
    perms = [p + tuple(range(len(p), degree)) for p in perms]
    ident = tuple(range(degree))
    elems = [ident]
    pos = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in perms:
                y = tuple(g[x[i]] for i in range(degree))
                if y not in pos:
                    if len(elems) >= MAX_PERMUTATION_CLOSURE:
                        raise CapExceeded("permutation closure exceeds cap")
                    pos[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    n = len(elems)
    arr = np.array(elems, dtype=np.int64)
    # (x y)(i) = y(x(i))
    table = np.zeros((n, n), dtype=np.int32)
    keys = {p: k for k, p in enumerate(elems)}
    for a in range(n):
        composed = arr[:, arr[a]]  # row b: arr[b][arr[a][i]]
        table[a] = [keys[tuple(r)] for r in composed.tolist()]
    labels = tuple(cycle_string(p) for p in elems)
    return FiniteGroup(labels, table, 0, name)


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return trivial_group("S1")
    if n == 2:
        return from_permutations(["(1 2)"], "S2")
    return from_permutations([cycle_string(tuple(list(range(1, n)) + [0])), "(1 2)"], f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return trivial_group(f"A{n}")
    gens = [f"(1 2 {k})" for k in range(3, n + 1)]
    return from_permutations(gens, f"A{n}")


# -- names -------------------------------------------------------------------

_ATOM = re.compile(r"^(C|D|Q|S|A|Dic|He)(\d+)$")


def _atom(name: str) -> FiniteGroup:
    if name in ("1", "C1", "trivial"):
        return trivial_group("1")
    m = _ATOM.match(name)
    if not m:
        raise GroupError(f"unknown catalog group {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "C":
        return cyclic(n)
    if kind == "D":
        return dihedral(n)
    if kind == "Q" or kind == "Dic":
        g = dicyclic(n)
        return g.relabel(name)
    if kind == "S" and n <= 5:
        return symmetric(n)
    if kind == "A" and n <= 5:
        return alternating(n)
    if kind == "He" and n in (2, 3, 5):
        return heisenberg(n)
    raise GroupError(f"unknown catalog group {name!r}")


def catalog_group(name: str) -> FiniteGroup:
    factors = []
    for part in name.split("x"):
        part = part.strip()
        if not part:
            raise GroupError(f"malformed group name {name!r}")
        base, _, power = part.partition("^")
        k = int(power) if power else 1
        atom = _atom(base)
        factors.extend([atom] * k)
    if len(factors) == 1:
        return factors[0]
    return direct_product(factors, name)


def load_cayley_file(path: str | Path, name: str = "") -> FiniteGroup:
    """Read ``{"elements": [...], "table": [[name, ...], ...]}`` (JSON)."""
    data = json.loads(Path(path).read_text())
    labels = [str(x) for x in data["elements"]]
    pos = {x: i for i, x in enumerate(labels)}
    try:
        table = [[pos[str(v)] for v in row] for row in data["table"]]
    except KeyError as exc:
        raise GroupError(f"table mentions unknown element {exc}") from None
    return FiniteGroup(tuple(labels), np.array(table, dtype=np.int32), -1, name or data.get("name", Path(path).stem))


def make_group(source) -> FiniteGroup:
    """Build a group from a catalog name, a Cayley file path, a ``{"elements",
    "table"}`` mapping, or a list of permutation generators."""
    if isinstance(source, FiniteGroup):
        return source
    if isinstance(source, dict):
        if "permutations" in source:
            return from_permutations(list(source["permutations"]), source.get("name", ""))
        labels = [str(x) for x in source["elements"]]
        pos = {x: i for i, x in enumerate(labels)}
        table = [[pos[str(v)] for v in row] for row in source["table"]]
        return FiniteGroup(tuple(labels), np.array(table, dtype=np.int32), -1, source.get("name", ""))
    if isinstance(source, (list, tuple)):
        return from_permutations(list(source))
    if isinstance(source, str):
        s = source.strip()
        if s.startswith("("):
            return from_permutations(re.findall(r"(?:\([^()]*\))+", s) if ";" not in s else s.split(";"))
        if Path(s).suffix == ".json" and Path(s).exists():
            return load_cayley_file(s)
        return catalog_group(s)
    raise GroupError(f"cannot build a group from {source!r}")


# groups of order <= 12 up to isomorphism, plus the larger groups the
# scenarios use; every name here resolves through catalog_group
SMALL_CATALOG = (
    "1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C2xC4",
    "C2^3", "D8", "Q8", "C9", "C3xC3", "C10", "D10", "C11", "C12", "C2xC6",
    "D12", "A4", "Dic12",
)
EXTENDED_CATALOG = SMALL_CATALOG + (
    "C13", "C14", "D14", "C15", "C16", "C2^4", "C4xC4", "C2xC8", "C2^2xC4",
    "D16", "Q16", "C2xD8", "C2xQ8",
)


def catalog(max_order: int | None = None, extended: bool = False) -> list[FiniteGroup]:
    names = EXTENDED_CATALOG if extended else SMALL_CATALOG
    out = [catalog_group(n) for n in names]
    if max_order is not None:
        out = [g for g in out if g.order <= max_order]
    return out

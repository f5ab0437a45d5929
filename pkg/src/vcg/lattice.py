"""Exact integer matrix algebra: Smith normal form, cokernels, torsion
complements and linear congruences.

Convention: a relation matrix has one *row* per relation, so the abelian group
it presents is ``Z^cols / rowspace(A)``.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("inconsistent matrix dimensions")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = list(zip(*other.data)) if other.rows else [()] * other.cols
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in ot) for r in self.data),
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def apply_row(self, v: Sequence[int]) -> list[int]:
        """Row vector times matrix."""
        out = [0] * self.cols
        for vi, row in zip(v, self.data):
            if vi:
                for j, a in enumerate(row):
                    if a:
                        out[j] += vi * a
        return out

    def dump(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.data)

    @classmethod
    def parse(cls, text: str) -> "IntMatrix":
        return cls.from_rows([[int(t) for t in line.split()] for line in text.strip().splitlines() if line.strip()])


def determinant(m: IntMatrix) -> int:
    """Bareiss fraction-free elimination."""
    n = m.rows
    if n != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in m.data]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class FgAbelianGroup:
    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        fs = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if any(d <= 1 for d in fs):
            raise ValueError("invariant factors must exceed 1")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError(f"invariant factors {fs} do not form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "FgAbelianGroup":
        """Normalize any list of cyclic orders (0 meaning Z) to invariant form."""
        orders = list(orders)
        free = free_rank + sum(1 for d in orders if d == 0)
        return cls(tuple(_diagonal_to_invariants([d for d in orders if d != 0])), free)

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def order(self) -> int | None:
        return self.torsion_order if self.free_rank == 0 else None

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def torsion(self) -> "FgAbelianGroup":
        return FgAbelianGroup(self.invariant_factors, 0)

    def elementary_divisors(self) -> list[int]:
        out = []
        for d in self.invariant_factors:
            out.extend(_prime_power_split(d))
        return sorted(out)

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.from_cyclic_orders(
            list(self.invariant_factors) + list(other.invariant_factors), self.free_rank + other.free_rank
        )

    def tensor(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        orders = [gcd(a, b) for a in self.invariant_factors for b in other.invariant_factors]
        orders += list(other.invariant_factors) * self.free_rank
        orders += list(self.invariant_factors) * other.free_rank
        return FgAbelianGroup.from_cyclic_orders([d for d in orders if d > 1], self.free_rank * other.free_rank)

    def remove_summand(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        """The complement ``C`` with ``self ≅ other ⊕ C`` (finite groups)."""
        mine = self.elementary_divisors()
        for q in other.elementary_divisors():
            if q not in mine:
                raise ValueError(f"{other} is not a direct summand of {self}")
            mine.remove(q)
        if other.free_rank > self.free_rank:
            raise ValueError("free rank too small")
        return FgAbelianGroup.from_cyclic_orders(mine, self.free_rank - other.free_rank)

    def __str__(self) -> str:
        parts = [f"Z{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "1"

    def as_list(self) -> list[int]:
        return list(self.invariant_factors) + [0] * self.free_rank


def _prime_power_split(d: int) -> list[int]:
    out, p = [], 2
    while p * p <= d:
        if d % p == 0:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        p += 1
    if d > 1:
        out.append(d)
    return out


def _diagonal_to_invariants(diag: Iterable[int]) -> list[int]:
    by_prime: dict[int, list[int]] = {}
    for d in diag:
        for q in _prime_power_split(abs(d)):
            p = next(x for x in range(2, q + 1) if q % x == 0)
            by_prime.setdefault(p, []).append(q)
    if not by_prime:
        return []
    length = max(len(v) for v in by_prime.values())
    out = [1] * length
    for qs in by_prime.values():
        for i, q in enumerate(sorted(qs, reverse=True)):
            out[i] *= q
    return sorted(x for x in out if x > 1)


# -- Smith normal form ----------------------------------------------------------


@dataclass(frozen=True)
class SnfDecomposition:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D.data[i][i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(a: IntMatrix | Sequence[Sequence[int]]) -> SnfDecomposition:
    """``U A V = D`` with D diagonal, nonnegative, and each entry dividing the next.

    Pivot rule: smallest nonzero absolute value in the active block, ties
    broken by lowest row then lowest column.
    """
    if not isinstance(a, IntMatrix):
        a = IntMatrix.from_rows(a)
    d, u, ut_inv, vt, v_inv, _ = _snf_core(a, want_u=True, want_v=True)
    m, n = a.rows, a.cols
    u_inv = [list(r) for r in zip(*ut_inv)] if m else []
    v = [list(r) for r in zip(*vt)] if n else []
    return SnfDecomposition(
        IntMatrix.from_rows(d, n),
        IntMatrix.from_rows(u, m),
        IntMatrix.from_rows(v, n),
        IntMatrix.from_rows(u_inv, m),
        IntMatrix.from_rows(v_inv, n),
    )


def _snf_core(a: IntMatrix, want_u: bool, want_v: bool):
    """Dense SNF on lists.  Returns D, U, (U^-1)^T, V^T, V^-1, diagonal.

    Transposed storage keeps every transform update a row operation.
    """
    m, n = a.rows, a.cols
    D = [list(r) for r in a.data]
    eye = lambda k: [[int(i == j) for j in range(k)] for i in range(k)]  # noqa: E731
    U = eye(m) if want_u else None
    UiT = eye(m) if want_u else None
    VT = eye(n) if want_v else None
    Vi = eye(n) if want_v else None

    def row_axpy(mat, dst, src, q):  # mat[dst] -= q * mat[src]
        rs, rd = mat[src], mat[dst]
        mat[dst] = [x - q * y for x, y in zip(rd, rs)]

    def swap(mat, i, j):
        mat[i], mat[j] = mat[j], mat[i]

    def d_row_op(i, t, q):  # row_i -= q row_t
        row_axpy(D, i, t, q)
        if want_u:
            row_axpy(U, i, t, q)
            row_axpy(UiT, t, i, -q)

    def d_col_op(j, t, q):  # col_j -= q col_t
        for r in D:
            if r[t]:
                r[j] -= q * r[t]
        if want_v:
            row_axpy(VT, j, t, q)
            row_axpy(Vi, t, j, -q)

    def d_row_swap(i, j):
        swap(D, i, j)
        if want_u:
            swap(U, i, j)
            swap(UiT, i, j)

    def d_col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        if want_v:
            swap(VT, i, j)
            swap(Vi, i, j)

    t = 0
    while t < min(m, n):
        # smallest nonzero in the active block
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            d_row_swap(t, pi)
        if pj != t:
            d_col_swap(t, pj)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = D[i][t]
                if x:
                    d_row_op(i, t, x // p)
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                x = D[t][j]
                if x:
                    d_col_op(j, t, x // p)
                    if D[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t to the pivot
                cand = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, ci, cj = min(cand)
                if ci != t:
                    d_row_swap(t, ci)
                if cj != t:
                    d_col_swap(t, cj)
                continue
            # divisibility of the remaining block
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # row_t += row_bad
            row_axpy(D, t, bad, -1)
            if want_u:
                row_axpy(U, t, bad, -1)
                row_axpy(UiT, bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if want_u:
                U[t] = [-x for x in U[t]]
                UiT[t] = [-x for x in UiT[t]]
        t += 1
    diag = [D[i][i] for i in range(min(m, n))]
    return D, U, UiT, VT, Vi, diag


# -- cokernels --------------------------------------------------------------------


@dataclass(frozen=True)
class Cokernel:
    """``Z^ncols / rowspace(relations)`` with canonical coordinates.

    ``coordinates(v)`` returns one entry per invariant factor (reduced mod
    that factor) followed by ``free_rank`` integer entries.
    """

    group: FgAbelianGroup
    ncols: int
    _transform: tuple[tuple[int, ...], ...] = field(repr=False)  # V^T rows
    _torsion_idx: tuple[int, ...] = field(repr=False)
    _free_idx: tuple[int, ...] = field(repr=False)
    _lifts: tuple[tuple[int, ...], ...] = field(repr=False)  # rows of V^-1
    _moduli: tuple[int, ...] = field(repr=False)

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        out = []
        vt = self._transform
        for k, i in enumerate(self._torsion_idx):
            y = sum(a * b for a, b in zip(v, vt[i]) if a)
            out.append(y % self._moduli[k])
        for i in self._free_idx:
            out.append(sum(a * b for a, b in zip(v, vt[i]) if a))
        return tuple(out)

    def lift(self, k: int) -> tuple[int, ...]:
        """A vector mapping to the k-th canonical generator."""
        return self._lifts[k]

    @property
    def generators(self) -> list[tuple[int, ...]]:
        return list(self._lifts)

    def torsion_generators(self) -> list[tuple[int, ...]]:
        return list(self._lifts[: len(self._torsion_idx)])

    def free_generators(self) -> list[tuple[int, ...]]:
        return list(self._lifts[len(self._torsion_idx):])


def cokernel(a: IntMatrix | Sequence[Sequence[int]], ncols: int | None = None) -> Cokernel:
    if not isinstance(a, IntMatrix):
        rows = [list(r) for r in a]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        a = IntMatrix.from_rows(rows, ncols)
    n = a.cols
    _, _, _, VT, Vi, diag = _snf_core(a, want_u=False, want_v=True)
    diag = diag + [0] * (n - len(diag))
    tors = [i for i in range(n) if diag[i] not in (0, 1, -1)]
    free = [i for i in range(n) if diag[i] == 0]
    moduli = tuple(abs(diag[i]) for i in tors)
    group = FgAbelianGroup(moduli, len(free))
    lifts = tuple(tuple(Vi[i]) for i in tors + free)
    return Cokernel(group, n, tuple(tuple(r) for r in VT), tuple(tors), tuple(free), lifts, moduli)


class SparseEliminator:
    """Streaming Gauss-Jordan elimination on sparse integer rows using unit
    pivots only, over ``Z`` (``modulus=None``) or ``Z/modulus``.

    Pivot rows are kept fully reduced: a pivot column appears in exactly one
    stored row.  Rows without a unit entry are parked as residual rows.
    """

    def __init__(self, ncols: int, modulus: int | None = None, unit_prime: int | None = None):
        self.ncols = ncols
        self.modulus = modulus
        # over Z/p^a an entry is a unit iff p does not divide it
        self.unit_prime = unit_prime
        self.pivots: dict[int, dict[int, int]] = {}
        self.order: list[int] = []
        self.col_rows: dict[int, set[int]] = {}
        self.residual: list[dict[int, int]] = []

    def _is_unit(self, x: int) -> bool:
        if self.modulus is None:
            return x in (1, -1)
        return x % self.unit_prime != 0

    def _axpy(self, dst: dict[int, int], src: dict[int, int], q: int, owner: int | None):
        mod = self.modulus
        col_rows = self.col_rows
        for c, x in src.items():
            y = dst.get(c, 0) - q * x
            if mod is not None:
                y %= mod
            if y:
                if c not in dst and owner is not None and c not in self.pivots:
                    col_rows.setdefault(c, set()).add(owner)
                dst[c] = y
            elif c in dst:
                del dst[c]
                if owner is not None and c in col_rows:
                    col_rows[c].discard(owner)

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        row = dict(row)
        if self.modulus is not None:
            row = {c: x % self.modulus for c, x in row.items() if x % self.modulus}
        for c in [c for c in row if c in self.pivots]:
            q = row.get(c, 0)
            if q:
                self._axpy(row, self.pivots[c], q, None)
        return row

    def add(self, row: dict[int, int]) -> None:
        row = self.reduce(row)
        if not row:
            return
        units = [c for c, x in row.items() if self._is_unit(x)]
        if not units:
            self.residual.append(row)
            return
        col_rows = self.col_rows
        c = min(units, key=lambda k: (len(col_rows.get(k, ())), len(row), k))
        x = row[c]
        if self.modulus is None:
            if x == -1:
                row = {k: -v for k, v in row.items()}
        else:
            inv = pow(x, -1, self.modulus)
            row = {k: (v * inv) % self.modulus for k, v in row.items()}
        # clear column c from existing pivot rows
        for pc in sorted(col_rows.pop(c, set())):
            prow = self.pivots[pc]
            q = prow.get(c, 0)
            if q:
                self._axpy(prow, row, q, pc)
        self.pivots[c] = row
        self.order.append(c)
        for k in row:
            if k != c:
                col_rows.setdefault(k, set()).add(c)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def residual_rows(self) -> list[dict[int, int]]:
        seen = set()
        out = []
        for r in self.residual:
            r = self.reduce(r)
            if not r:
                continue
            key = tuple(sorted(r.items()))
            if key not in seen:
                seen.add(key)
                out.append(r)
        return out


@dataclass(frozen=True)
class SparseCokernel:
    """Cokernel of a large sparse relation matrix.

    Unit pivots are eliminated first; the leftover block on the free
    columns is handled by a dense :func:`cokernel`.
    """

    group: FgAbelianGroup
    ncols: int
    eliminator: SparseEliminator = field(repr=False)
    free_cols: tuple[int, ...] = field(repr=False)
    dense: Cokernel = field(repr=False)

    def reduce(self, v: dict[int, int] | Sequence[int]) -> dict[int, int]:
        if not isinstance(v, dict):
            v = {i: x for i, x in enumerate(v) if x}
        return self.eliminator.reduce(v)

    def coordinates(self, v: dict[int, int] | Sequence[int]) -> tuple[int, ...]:
        r = self.reduce(v)
        pos = {c: i for i, c in enumerate(self.free_cols)}
        dense = [0] * len(self.free_cols)
        for c, x in r.items():
            dense[pos[c]] = x
        return self.dense.coordinates(dense)

    def lift(self, k: int) -> dict[int, int]:
        vec = self.dense.lift(k)
        return {self.free_cols[i]: x for i, x in enumerate(vec) if x}

    @property
    def n_torsion(self) -> int:
        return len(self.group.invariant_factors)


def sparse_cokernel(rows: Iterable[dict[int, int]], ncols: int) -> SparseCokernel:
    elim = SparseEliminator(ncols)
    for r in rows:
        elim.add(r)
    free = elim.free_columns()
    pos = {c: i for i, c in enumerate(free)}
    dense_rows = []
    for r in elim.residual_rows():
        v = [0] * len(free)
        for c, x in r.items():
            v[pos[c]] = x
        dense_rows.append(v)
    dense = cokernel(IntMatrix.from_rows(dense_rows, len(free)) if dense_rows else IntMatrix.zeros(0, len(free)))
    return SparseCokernel(dense.group, ncols, elim, tuple(free), dense)


def local_valuations(rows: Iterable[dict[int, int]], ncols: int, p: int, a: int) -> list[int]:
    """Smith form of a sparse matrix over ``Z/p^a`` as p-adic valuations.

    One entry per column: the valuation of the corresponding diagonal entry,
    ``a`` standing for zero.
    """
    q = p**a
    elim = SparseEliminator(ncols, modulus=q, unit_prime=p)
    for r in rows:
        elim.add(r)
    vals = [0] * len(elim.pivots)
    free = elim.free_columns()
    pos = {c: i for i, c in enumerate(free)}
    block = []
    for r in elim.residual_rows():
        v = [0] * len(free)
        for c, x in r.items():
            v[pos[c]] = x % q
        block.append(v)
    vals.extend(_local_snf_valuations(block, len(free), p, a))
    return vals


def _valuation(x: int, p: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


def _local_snf_valuations(block: list[list[int]], ncols: int, p: int, a: int) -> list[int]:
    # over a chain ring the entry of least valuation divides the whole block
    q = p**a
    m = [list(r) for r in block]
    out = []
    cols = list(range(ncols))
    while m and cols:
        best = None
        for i, row in enumerate(m):
            for j in cols:
                v = _valuation(row[j], p, a)
                if v < a and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        piv = m.pop(i)
        unit = (piv[j] // p**v) % q
        inv = pow(unit, -1, q)
        for row in m:
            if row[j]:
                f = (row[j] // p**v) * inv % q
                for k in cols:
                    if piv[k]:
                        row[k] = (row[k] - f * piv[k]) % q
        cols.remove(j)
        out.append(v)
        m = [r for r in m if any(r[k] for k in cols)]
    out.extend([a] * len(cols))
    return out


# -- torsion / complement -----------------------------------------------------------


@dataclass(frozen=True)
class TorsionComplement:
    group: FgAbelianGroup
    torsion_basis: tuple[tuple[int, ...], ...]
    complement_basis: tuple[tuple[int, ...], ...]
    cokernel: "SparseCokernel" = field(repr=False, compare=False, default=None)

    def is_complement(self, vectors: Sequence[Sequence[int]]) -> bool:
        """Do ``vectors`` span a direct complement of the torsion subgroup?"""
        nt = len(self.group.invariant_factors)
        r = self.group.free_rank
        if len(vectors) != r:
            return False
        free = [list(self.cokernel.coordinates(list(v))[nt:]) for v in vectors]
        return r == 0 or abs(determinant(IntMatrix.from_rows(free, r))) == 1


def torsion_complement(a: IntMatrix | Sequence[Sequence[int]], ncols: int | None = None) -> TorsionComplement:
    """Split ``Z^ncols / rowspace(a)`` into torsion generators and a basis of
    a free direct complement; both are checked through the coordinate map."""
    rows = a.data if isinstance(a, IntMatrix) else [list(r) for r in a]
    if ncols is None:
        ncols = a.cols if isinstance(a, IntMatrix) else (len(rows[0]) if rows else 0)
    ck = sparse_cokernel(({i: x for i, x in enumerate(r) if x} for r in rows), ncols)

    def dense(v: dict[int, int]) -> tuple[int, ...]:
        out = [0] * ncols
        for i, x in v.items():
            out[i] = x
        return tuple(out)

    nt = ck.n_torsion
    gens = [dense(ck.lift(k)) for k in range(nt + ck.group.free_rank)]
    tb, cb = tuple(gens[:nt]), tuple(gens[nt:])
    _check_split(ck, tb, cb)
    return TorsionComplement(ck.group, tb, cb, ck)


def _check_split(ck, tb, cb):
    nt = len(ck.group.invariant_factors)
    for k, v in enumerate(tb):
        coords = ck.coordinates(v)
        if any(coords[nt:]) or any(coords[i] != int(i == k) for i in range(nt)):
            raise ArithmeticError("torsion generator does not map to a torsion basis element")
    for k, v in enumerate(cb):
        coords = ck.coordinates(v)
        if any(coords[:nt]) or any(coords[nt + i] != int(i == k) for i in range(len(cb))):
            raise ArithmeticError("complement vector does not map to a free basis element")


# -- congruences ------------------------------------------------------------------------


def solve_linear_congruences(
    a: IntMatrix | Sequence[Sequence[int]], b: Sequence[int], moduli: Sequence[int] | int
) -> list[int] | None:
    """Some ``x`` with ``(A x)_i ≡ b_i (mod m_i)``, or None when unsolvable.

    The answer is deterministic and reduced modulo lcm(m_i).
    """
    if not isinstance(a, IntMatrix):
        a = IntMatrix.from_rows(a)
    m, n = a.rows, a.cols
    if isinstance(moduli, int):
        moduli = [moduli] * m
    if any(q <= 0 for q in moduli):
        raise ValueError("moduli must be positive")
    # [A | -diag(m)] z = b over Z
    big = [list(a.data[i]) + [(-moduli[i] if k == i else 0) for k in range(m)] for i in range(m)]
    snf = smith_normal_form(IntMatrix.from_rows(big, n + m))
    ub = [sum(x * y for x, y in zip(r, b)) for r in snf.U.data]
    diag = snf.diagonal
    w = [0] * (n + m)
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d:
                return None
            w[i] = ub[i] // d
    z = [sum(snf.V.data[r][c] * w[c] for c in range(n + m)) for r in range(n + m)]
    lcm = 1
    for q in moduli:
        lcm = lcm * q // gcd(lcm, q)
    return [x % lcm for x in z[:n]]

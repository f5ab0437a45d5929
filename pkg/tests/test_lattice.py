import pytest
from hypothesis import given, strategies as st

from vcg.lattice import (
    FgAbelianGroup,
    IntMatrix,
    cokernel,
    determinant,
    local_valuations,
    smith_normal_form,
    solve_linear_congruences,
    sparse_cokernel,
    torsion_complement,
)

# diagonals computed independently with a computer algebra system
SNF_ORACLE = {
    "a": ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
    "b": ([[6, 0], [0, 4]], [2, 12]),
    "c": ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], [1, 3, 0]),
    "d": ([[12, 18, 6], [30, -12, 42]], [6, 6]),
    "e": ([[0, 0], [0, 0], [3, 0]], [3, 0]),
    "f": ([[2, 0, 0, 0], [0, 4, 0, 0], [0, 0, 8, 0], [0, 0, 0, 16], [2, 4, 8, 16]], [2, 4, 8, 16]),
}


@pytest.mark.parametrize("key", sorted(SNF_ORACLE))
def test_snf_against_oracle(key):
    rows, diag = SNF_ORACLE[key]
    s = smith_normal_form(rows)
    assert s.diagonal == diag
    a = IntMatrix.from_rows(rows)
    assert s.U @ a @ s.V == s.D


def test_cokernel_groups():
    assert cokernel([[2, 0], [0, 3]]).group == FgAbelianGroup((6,), 0)
    assert cokernel([[2, 4]], 2).group == FgAbelianGroup((2,), 1)
    assert cokernel(IntMatrix.zeros(0, 3), 3).group == FgAbelianGroup((), 3)
    assert str(cokernel([[4, 0], [0, 6]]).group) == "Z2 x Z12"


def test_cokernel_coordinates_kill_relations():
    rows = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    ck = cokernel(rows)
    for r in rows:
        assert all(c == 0 for c in ck.coordinates(r))
    for k in range(len(ck.group.invariant_factors)):
        coords = ck.coordinates(ck.lift(k))
        assert coords[k] == 1 and sum(coords) == 1


def test_determinant():
    assert determinant(IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])) == -144
    assert determinant(IntMatrix.identity(4)) == 1


def test_fg_abelian_normalization():
    assert FgAbelianGroup.from_cyclic_orders([2, 3, 4]).invariant_factors == (2, 12)
    assert FgAbelianGroup.from_cyclic_orders([1, 0]).free_rank == 1
    g = FgAbelianGroup((2,), 0).tensor(FgAbelianGroup((4,), 0))
    assert g.invariant_factors == (2,)
    assert FgAbelianGroup((2, 6), 0).remove_summand(FgAbelianGroup((2,), 0)) == FgAbelianGroup((6,), 0)


def test_torsion_complement():
    rows = [[2, 0, 0], [0, 0, 0]]
    tc = torsion_complement(rows, 3)
    assert tc.group == FgAbelianGroup((2,), 2)
    assert len(tc.complement_basis) == 2 and len(tc.torsion_basis) == 1
    assert tc.is_complement(tc.complement_basis)
    assert not tc.is_complement([(0, 2, 0), (0, 0, 1)])


def test_local_valuations():
    rows = [{0: 4, 1: 2}, {1: 6}]
    # SNF of [[4,2],[0,6]] is diag(2, 12): 2-adic valuations 1 and 2
    assert sorted(local_valuations(rows, 2, 2, 5)) == [1, 2]
    assert sorted(local_valuations(rows, 2, 3, 3)) == [0, 1]


def test_solve_linear_congruences():
    x = solve_linear_congruences([[2, 3]], [1], 5)
    assert x is not None and (2 * x[0] + 3 * x[1]) % 5 == 1
    assert solve_linear_congruences([[2]], [1], 4) is None


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_snf_reconstruction(rows):
    a = IntMatrix.from_rows(rows)
    s = smith_normal_form(a)
    assert s.U @ a @ s.V == s.D
    assert s.U @ s.U_inv == IntMatrix.identity(a.rows)
    assert s.V @ s.V_inv == IntMatrix.identity(a.cols)
    nz = [d for d in s.diagonal if d]
    assert all(d > 0 for d in nz)
    assert all(nz[k + 1] % nz[k] == 0 for k in range(len(nz) - 1))
    assert s.diagonal[: len(nz)] == nz


@given(matrices)
def test_square_determinant_matches_snf(rows):
    n = min(len(rows), len(rows[0]))
    sq = [r[:n] for r in rows[:n]]
    s = smith_normal_form(sq)
    prod = 1
    for d in s.diagonal:
        prod *= d
    assert abs(determinant(IntMatrix.from_rows(sq))) == prod


@given(matrices)
def test_sparse_cokernel_matches_dense(rows):
    ncols = len(rows[0])
    dense = cokernel(rows, ncols).group
    sparse = sparse_cokernel([{j: v for j, v in enumerate(r) if v} for r in rows], ncols).group
    assert dense == sparse


@given(matrices, st.sampled_from([2, 3]))
def test_local_valuations_match_snf(rows, p):
    ncols = len(rows[0])
    a = 4
    diag = smith_normal_form(rows).diagonal + [0] * max(0, ncols - len(rows))

    def val(d):
        if d == 0:
            return a
        v = 0
        while d % p == 0 and v < a:
            d //= p
            v += 1
        return v

    expected = sorted(val(d) for d in diag[:ncols])
    got = sorted(local_valuations([{j: v for j, v in enumerate(r) if v} for r in rows], ncols, p, a))
    assert got == expected

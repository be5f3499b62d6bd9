import pytest

from rankbench.fields import make_field
from rankbench.linalg import (Matrix, Subspace, fq_rank, right_kernel, rref,
                              solve, subspace_intersect, subspace_sum)

from conftest import random_full_rank


@pytest.fixture(scope="module")
def f8():
    return make_field(2, 3)


def _rand_mat(sp, r, c, rng):
    return Matrix(sp, [[rng.below(sp.order) for _ in range(c)] for _ in range(r)], c)


def test_rref_identity_and_zero(f8):
    I = Matrix.identity(f8, 4)
    R, rank = rref(I)
    assert R == I and rank == 4
    Z = Matrix.zero(f8, 3, 4)
    R, rank = rref(Z)
    assert rank == 0 and R.rows == Z.rows


def test_rref_idempotent_and_duplicate_rows(f8, rng):
    M = _rand_mat(f8, 4, 6, rng)
    R1, k1 = rref(M)
    R2, k2 = rref(R1)
    assert R1 == R2 and k1 == k2
    dup = Matrix(f8, M.rows + [M.rows[0]], 6)
    assert rref(dup)[1] == k1


def test_right_kernel(f8, rng):
    assert right_kernel(Matrix.identity(f8, 4)).dim == 0
    assert right_kernel(Matrix.zero(f8, 2, 5)).dim == 5
    for _ in range(25):
        M = _rand_mat(f8, 3, 5, rng)
        K = right_kernel(M)
        assert K.dim == 5 - M.rank()
        for b in K.basis.rows:
            assert all(v == 0 for v in M.mul_vec(b))


def test_solve(f8, rng):
    assert solve(Matrix.identity(f8, 3), [5, 2, 7]) == [5, 2, 7]
    assert solve(Matrix.zero(f8, 2, 3), [1, 0]) is None
    for _ in range(25):
        A = _rand_mat(f8, 4, 5, rng)
        x0 = [rng.below(8) for _ in range(5)]
        b = A.mul_vec(x0)
        x = solve(A, b)
        assert x is not None
        assert A.mul_vec(x) == b


def test_subspace_trivials(f8, rng):
    U = Subspace.from_rows(f8, [[rng.below(8) for _ in range(6)] for _ in range(2)], 6)
    Z = Subspace.zero(f8, 6)
    assert subspace_sum(U, U) == U
    assert subspace_sum(U, Z) == U
    assert subspace_intersect(U, U) == U
    assert subspace_intersect(U, Z).dim == 0


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2)])
def test_modular_law_hundred_pairs(q, m, rng):
    sp = make_field(q, m)
    for _ in range(100):
        U = Subspace.from_rows(sp, [[rng.below(sp.order) for _ in range(6)]
                                    for _ in range(1 + rng.below(3))], 6)
        V = Subspace.from_rows(sp, [[rng.below(sp.order) for _ in range(6)]
                                    for _ in range(1 + rng.below(3))], 6)
        S = subspace_sum(U, V)
        X = subspace_intersect(U, V)
        assert S.dim + X.dim == U.dim + V.dim
        for row in X.basis.rows:
            assert U.contains(row) and V.contains(row)


def test_fq_rank_examples(f8):
    assert fq_rank(f8, [1, 2, 4]) == 3  # 1, z, z^2
    assert fq_rank(f8, [1, 1, 1]) == 1
    assert fq_rank(f8, [0, 0, 0]) == 0


def test_fq_rank_invariances(rng):
    sp = make_field(3, 4)
    for _ in range(20):
        v = [rng.below(sp.order) for _ in range(5)]
        r0 = fq_rank(sp, v)
        assert fq_rank(sp, [sp.mul(2, x) for x in v]) == r0  # scalar from F_3
        perm = sorted(range(5), key=lambda i: (i * 7 + 3) % 5)
        assert fq_rank(sp, [v[i] for i in perm]) == r0


def test_inverse_and_product(f8, rng):
    for _ in range(10):
        A = random_full_rank(f8, 5, 5, rng)
        Ainv = A.inverse()
        assert Ainv is not None
        assert A.mul(Ainv) == Matrix.identity(f8, 5)
    singular = Matrix(f8, [[1, 1], [1, 1]], 2)
    assert singular.inverse() is None

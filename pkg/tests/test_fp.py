import numpy as np
import pytest

from trivext.fp import (
    DEFAULT_PRIME,
    Mat,
    Subspace,
    block_diag,
    check_prime,
    hstack,
    kron,
    quotient_basis,
    rank_and_kernel,
    solve,
    vstack,
)

from .oracles import kernel_py, rank_py, rref_py


def test_check_prime():
    assert check_prime(32003) == 32003
    with pytest.raises(ValueError):
        check_prime(32001)
    with pytest.raises(ValueError):
        check_prime(1)


def test_rank_and_kernel_identity():
    rank, ker = rank_and_kernel(Mat.identity(5, 2))
    assert rank == 2 and ker.dim == 0


def test_rank_and_kernel_zero():
    rank, ker = rank_and_kernel(Mat.zeros(5, 2, 2))
    assert rank == 0 and ker.dim == 2


def test_rank_and_kernel_ones_f5():
    # hand row-reduction: [[1,1],[1,1]] ~ [[1,1]]; kernel = span (1,4)
    m = Mat(5, [[1, 1], [1, 1]])
    rank, ker = rank_and_kernel(m)
    assert rank == 1
    assert ker.basis.a.tolist() == [[1, 4]]
    assert kernel_py([[1, 1], [1, 1]], 5) == [[1, 4]]
    for v in ker.basis.a:
        assert not m.apply(v).any()


@pytest.mark.parametrize("seed", range(6))
def test_rref_and_rank_match_oracle(seed):
    rng = np.random.default_rng(seed)
    p = 7
    m = rng.integers(0, p, size=(5, 7))
    ours = Mat(p, m)
    red, pivots = ours.rref()
    ref_red, ref_piv = rref_py(m.tolist(), p)
    assert red.a.tolist() == ref_red
    assert list(pivots) == ref_piv
    assert ours.rank() == rank_py(m.tolist(), p)
    assert ours.kernel().a.tolist() == kernel_py(m.tolist(), p)


def test_rank_equals_transpose_rank():
    rng = np.random.default_rng(11)
    for _ in range(10):
        m = Mat(DEFAULT_PRIME, rng.integers(0, 50, size=(4, 6)))
        assert m.rank() == m.T.rank()


def test_solve_identity():
    x = Mat.identity(5, 2).solve([3, 1])
    assert x.tolist() == [3, 1]


def test_solve_zero_matrix_no_solution():
    assert Mat.zeros(5, 2, 2).solve([1, 0]) is None


def test_solve_ones_f5():
    # hand oracle: x = (2, 0) is one solution of [[1,1],[1,1]] x = (2,2)
    m = Mat(5, [[1, 1], [1, 1]])
    x, ker = solve(m, [2, 2])
    assert x is not None
    assert m.apply(x).tolist() == [2, 2]
    assert x.tolist() == [2, 0]
    assert ker.dim == 1


@pytest.mark.parametrize("seed", range(5))
def test_solve_consistency_iff_rank(seed):
    rng = np.random.default_rng(seed)
    p = 11
    m = Mat(p, rng.integers(0, p, size=(4, 3)))
    b = rng.integers(0, p, size=4)
    aug = Mat(p, np.hstack([m.a, b.reshape(-1, 1)]))
    x = m.solve(b)
    assert (x is not None) == (aug.rank() == m.rank())
    if x is not None:
        assert m.apply(x).tolist() == (b % p).tolist()


def test_solve_matrix_and_inverse():
    m = Mat(7, [[2, 1], [1, 1]])
    inv = m.inverse()
    assert (m @ inv) == Mat.identity(7, 2)
    assert (inv @ m) == Mat.identity(7, 2)
    with pytest.raises(ValueError):
        Mat(7, [[1, 1], [1, 1]]).inverse()


def test_quotient_trivial_sub():
    proj, sect = quotient_basis(3, Subspace.zero(5, 3))
    assert proj == Mat.identity(5, 3)
    assert sect == Mat.identity(5, 3)


def test_quotient_full_sub():
    proj, sect = quotient_basis(2, Subspace.full(5, 2))
    assert proj.rows == 0 and sect.cols == 0


def test_quotient_by_diagonal_f5():
    sub = Subspace.from_rows(5, 2, [[1, 1]])
    proj, sect = quotient_basis(2, sub)
    assert proj.rows == 1
    assert proj.apply([1, 1]).tolist() == [0]
    assert (proj @ sect) == Mat.identity(5, 1)


@pytest.mark.parametrize("seed", range(5))
def test_quotient_properties_random(seed):
    rng = np.random.default_rng(seed)
    p, n = 11, 6
    sub = Subspace.from_rows(p, n, rng.integers(0, p, size=(3, n)))
    proj, sect = quotient_basis(n, sub)
    assert proj.rows == n - sub.dim
    assert (proj @ sect) == Mat.identity(p, n - sub.dim)
    # projection kills exactly the subspace
    assert (proj @ sub.basis.T).is_zero()
    assert proj.rank() == n - sub.dim


def test_subspace_canonical_and_membership():
    s1 = Subspace.from_rows(7, 3, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    s2 = Subspace.from_rows(7, 3, [[0, 1, 1], [1, 2, 3]])
    assert s1 == s2
    assert s1.contains([1, 3, 4])
    assert not s1.contains([0, 0, 1])
    assert s1.sum(Subspace.from_rows(7, 3, [[0, 0, 1]])).dim == 3


def test_stack_and_kron_shapes():
    a = Mat(5, [[1, 2]])
    b = Mat(5, [[3], [4]])
    assert hstack([a, Mat(5, [[0, 1]])]).shape == (1, 4)
    assert vstack([a, a]).shape == (2, 2)
    assert kron(a, b).shape == (2, 2)
    assert block_diag([a, b]).shape == (3, 3)


def test_kron_mixed_product():
    rng = np.random.default_rng(3)
    p = 13
    a, b = Mat(p, rng.integers(0, p, (2, 3))), Mat(p, rng.integers(0, p, (3, 2)))
    c, d = Mat(p, rng.integers(0, p, (3, 4))), Mat(p, rng.integers(0, p, (2, 5)))
    assert kron(a, d) @ kron(b, Mat.identity(p, 5)) == kron(a @ b, d)
    assert kron(a @ b, c) == kron(a, Mat.identity(p, 3)) @ kron(b, c)


def test_mat_immutable():
    m = Mat.identity(5, 2)
    with pytest.raises(ValueError):
        m.a[0, 0] = 3

from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from quintic_witness.linalg import (
    ExactMatrix,
    bareiss_echelon,
    column_space_contains,
    kernel_basis,
    rank,
    rref,
    solve,
)

M = ExactMatrix.from_rows


def test_rank_examples():
    assert rank(ExactMatrix.identity(4)) == 4
    assert rank(ExactMatrix.zeros(3, 7)) == 0
    assert rank(M([[1, 2], [2, 4]])) == 1
    assert rank(M([[Fraction(1, 2), Fraction(1, 3)], [3, 2]])) == 1


def test_kernel_examples():
    K = kernel_basis(M([[1, 1]]))
    assert [list(v) for v in K.vectors] == [[-1, 1]]
    assert len(kernel_basis(ExactMatrix.identity(3))) == 0


def test_column_space_contains_examples():
    assert column_space_contains(ExactMatrix.identity(3), M([[1, 5], [2, 6], [3, 7]]))
    assert not column_space_contains(ExactMatrix.zeros(2, 2), M([[1], [0]]))


def test_solve_examples():
    assert solve(ExactMatrix.identity(2), [3, 4]) == [3, 4]
    x = solve(M([[1, 1]]), [2])
    assert x[0] + x[1] == 2
    assert solve(M([[1], [1]]), [0, 1]) is None


def test_bareiss_keeps_integers():
    rows, piv = bareiss_echelon([[2, 3, 5], [4, 6, 11], [1, 0, 1]])
    assert piv == [0, 1, 2]
    assert all(isinstance(x, int) for r in rows for x in r)


matrices = st.integers(1, 6).flatmap(
    lambda n: st.integers(1, 6).flatmap(
        lambda m: st.lists(st.lists(st.integers(-9, 9), min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_nullity_and_kernel(rows):
    A = M(rows)
    K = kernel_basis(A)
    assert rank(A) + len(K) == A.ncols
    for v in K.vectors:
        assert all(x == 0 for x in A.apply(v))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_mod_good_prime_matches(rows):
    # entries are small, so 32003 divides no nonzero minor of these sizes
    A = M(rows)
    assert rank(A) == rank(A.reduce_mod(32003))
    assert rank(A) == rank(A.transpose())


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rref_is_canonical(rows):
    A = M(rows)
    R1, p1 = rref(A)
    R2, p2 = rref(M([list(reversed(rows))[i] for i in range(len(rows))]))
    assert p1 == p2 and R1 == R2


@settings(max_examples=60, deadline=None)
@given(matrices, st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_solve_consistent_systems(rows, x):
    A = M(rows)
    x = x[: A.ncols]
    b = A.apply(x)
    y = solve(A, b)
    assert y is not None and A.apply(y) == b


def test_modular_kernel():
    A = M([[1, 2, 3], [2, 4, 6]], modulus=7)
    K = kernel_basis(A)
    assert len(K) == 2
    for v in K.vectors:
        assert A.apply(v) == [0, 0]

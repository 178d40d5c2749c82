import itertools

import pytest
from hypothesis import given, strategies as st

from racahdaha.errors import DimensionError, SingularMatrixError
from racahdaha.linalg import (
    Echelon,
    MatQ,
    SubspaceBasis,
    change_of_basis,
    char_poly,
    commutator,
    diagonalizability,
    eigenspace,
    inverse,
    is_irreducible_tridiagonal,
    kernel,
    rank,
)
from racahdaha.rational import PolyQ, rat
from strategies import matrices, rationals, square_matrices

q = rat
A_R1 = MatQ([["3/4", 0], [1, "-1/4"]])
B_R1 = MatQ([["3/4", "-3/4"], [0, "-1/4"]])
NIL = MatQ([[0, 1], [0, 0]])


def leibniz_det(M: MatQ):
    n = M.rows
    total = rat(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = rat(-1) ** inversions
        for i, j in enumerate(perm):
            term *= M[i, j]
        total += term
    return total


def test_matrix_literals_are_checked():
    with pytest.raises(DimensionError):
        MatQ([[1, 2], [3]])
    with pytest.raises(DimensionError):
        MatQ([])
    with pytest.raises(DimensionError):
        MatQ.identity(2) @ MatQ.identity(3)


def test_column_action_and_transpose():
    M = MatQ([[1, 2], [3, 4]])
    assert M.apply((1, 0)) == M.col(0) == (1, 3)
    assert M.T.row(0) == (1, 3)
    assert MatQ.from_columns([(1, 3), (2, 4)]) == M


def test_scalar_promotion():
    M = MatQ([[1, 2], [3, 4]])
    assert M - 1 == MatQ([[0, 2], [3, 3]])
    assert (M * 2) / 4 == MatQ([["1/2", 1], ["3/2", 2]])
    assert MatQ.scalar(3, "5/2").scalar_value() == q(5, 2)
    assert M.scalar_value() is None


def test_commutator_examples():
    Y = MatQ([[1, 2], [3, 4]])
    assert commutator(MatQ.identity(2), Y).is_zero()
    assert commutator(NIL, NIL.T) == MatQ([[1, 0], [0, -1]])
    assert commutator(A_R1, B_R1) == MatQ([["3/4", "-3/4"], [1, "-3/4"]])


def test_kernel_examples():
    assert kernel(MatQ([[0, 0], [1, -1]])) == SubspaceBasis.span([(1, 1)], 2)
    assert kernel(MatQ.identity(3)).dim == 0
    assert kernel(MatQ.zeros(3)) == SubspaceBasis.full(3)


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, rationals(2, 2))))
def test_rank_nullity_and_kernel_vectors(M):
    K = kernel(M)
    assert rank(M) + K.dim == M.cols
    assert all(not any(M.apply(v)) for v in K.vectors)


def test_char_poly_examples():
    x = PolyQ.x()
    assert char_poly(A_R1) == x**2 - q(1, 2) * x - q(3, 16)
    assert char_poly(MatQ.identity(4)) == (x - 1) ** 4
    assert char_poly(NIL) == x**2


@given(square_matrices(4), st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_char_poly_matches_leibniz_determinant(M, points):
    p = char_poly(M)
    assert p.degree == M.rows and p.lead == 1
    for t in points:
        assert p(t) == leibniz_det(MatQ.scalar(M.rows, t) - M)


@given(square_matrices(4))
def test_cayley_hamilton(M):
    p = char_poly(M)
    acc = MatQ.zeros(M.rows)
    for c in reversed(p.coeffs):
        acc = acc @ M + MatQ.scalar(M.rows, c)
    assert acc.is_zero()


def test_eigenspace_examples():
    assert eigenspace(A_R1, q(3, 4)) == SubspaceBasis.span([(1, 1)], 2)
    assert eigenspace(MatQ.identity(2), 0).dim == 0
    assert eigenspace(A_R1, q(-1, 4)) == SubspaceBasis.span([(0, 1)], 2)


def test_diagonalizability_examples():
    info = diagonalizability(A_R1)
    assert (info.diagonalizable, info.multiplicity_free) == (True, True)
    assert info.spectrum == (q(-1, 4), q(3, 4))
    info = diagonalizability(NIL)
    assert (info.diagonalizable, info.multiplicity_free, info.spectrum) == (False, False, (0, 0))
    info = diagonalizability(MatQ.identity(2))
    assert (info.diagonalizable, info.multiplicity_free, info.spectrum) == (True, False, (1, 1))


def test_non_split_spectrum_is_not_diagonalizable_over_q():
    info = diagonalizability(MatQ([[0, -1], [1, 0]]))
    assert not info.splits and not info.diagonalizable and not info.multiplicity_free


def _invertible(n):
    # unit lower times unit upper triangular
    return st.tuples(matrices(n), matrices(n)).map(
        lambda lu: _unit_lower(lu[0]) @ _unit_lower(lu[1]).T
    )


def _unit_lower(M):
    n = M.rows
    return MatQ([[M[i, j] if j < i else (1 if i == j else 0) for j in range(n)] for i in range(n)])


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(_invertible(n), st.lists(rationals(3, 2), min_size=n, max_size=n))))
def test_conjugated_diagonal_matrices(data):
    P, diag = data
    n = P.rows
    D = MatQ([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    M = P @ D @ inverse(P)
    info = diagonalizability(M)
    assert info.diagonalizable
    assert info.spectrum == tuple(sorted(diag))
    assert info.multiplicity_free == (len(set(diag)) == n)
    assert change_of_basis(M, P.columns()) == D


@given(st.integers(2, 4).flatmap(_invertible), rationals())
def test_conjugated_jordan_blocks_are_not_diagonalizable(P, lam):
    n = P.rows
    J = MatQ([[lam if i == j else (1 if j == i + 1 else 0) for j in range(n)] for i in range(n)])
    info = diagonalizability(P @ J @ inverse(P))
    assert not info.diagonalizable and info.spectrum == (lam,) * n


@given(st.integers(1, 4).flatmap(_invertible))
def test_inverse(P):
    one = MatQ.identity(P.rows)
    assert P @ inverse(P) == one == inverse(P) @ P


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrixError):
        inverse(MatQ([[1, 2], [2, 4]]))


def test_change_of_basis_examples():
    M = MatQ([[1, 2], [3, 4]])
    assert change_of_basis(M, [(1, 0), (0, 1)]) == M
    assert change_of_basis(A_R1, [(1, 1), (0, 1)]) == MatQ([["3/4", 0], [0, "-1/4"]])
    assert change_of_basis(MatQ.identity(2), [(1, 2), (3, 5)]) == MatQ.identity(2)


def test_irreducible_tridiagonal_examples():
    assert is_irreducible_tridiagonal(MatQ([[1, 2], [3, 4]]))
    assert not is_irreducible_tridiagonal(MatQ([[1, 0], [3, 4]]))
    assert not is_irreducible_tridiagonal(MatQ([[1, 0, 0], [0, 2, 0], [0, 0, 3]]))
    assert not is_irreducible_tridiagonal(MatQ([[1, 1, 1], [1, 2, 1], [0, 1, 3]]))


@given(st.lists(st.lists(rationals(2, 2), min_size=3, max_size=3), max_size=5))
def test_echelon_matches_rref_span(vectors):
    ech = Echelon(3)
    for v in vectors:
        ech.add(v)
    assert ech.basis() == SubspaceBasis.span(vectors, 3)


@given(st.lists(st.lists(rationals(2, 2), min_size=3, max_size=3), max_size=4))
def test_span_contains_its_generators(vectors):
    S = SubspaceBasis.span(vectors, 3)
    assert all(S.contains(v) for v in vectors)
    assert SubspaceBasis.full(3).contains_space(S)

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hstlab.document import load_example
from hstlab.errors import DimensionMismatch, Singular
from hstlab.matrix import Matrix, mat_inverse

from oracle import sym_matrix
from strategies import matrices


def test_identity_inverse():
    assert mat_inverse(Matrix.identity(4)).is_identity()


def test_rotation_block():
    assert mat_inverse(Matrix([[0, 1], [-1, 0]])) == Matrix([[0, -1], [1, 0]])


def test_r8_first_form_is_a_complex_structure():
    G = load_example("r8").inp.omegas[0]
    assert (G @ G) == Matrix.identity(8).scale(-1)
    assert mat_inverse(G) == G.scale(-1)


def test_singular_reports_kernel():
    M = Matrix([[1, 2], [2, 4]])
    with pytest.raises(Singular) as info:
        M.inverse()
    v = info.value.kernel
    assert any(v) and not any(M.apply(v))


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        Matrix([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        Matrix([[1, 2]]).inverse()
    with pytest.raises(DimensionMismatch):
        Matrix.identity(2) @ Matrix.identity(3)


def test_block_and_transpose():
    A = Matrix([[1, 2], [3, 4]])
    B = Matrix.block([[A, Matrix.zeros(2)], [Matrix.zeros(2), A.T]])
    assert B.shape == (4, 4) and B[3, 2] == A[0, 1]


@settings(max_examples=60)
@given(matrices(8, st.integers(-2, 2)))
def test_inverse_both_sides(M):
    assume(M.rank() == 8)
    inv = M.inverse()
    assert (M @ inv).is_identity() and (inv @ M).is_identity()


@settings(max_examples=60)
@given(matrices(4), matrices(4), matrices(4))
def test_product_laws(A, B, C):
    assert (A @ B) @ C == A @ (B @ C)
    assert (A @ B).T == B.T @ A.T
    assert sym_matrix(A @ B) == sym_matrix(A) * sym_matrix(B)


@settings(max_examples=60)
@given(matrices(5, st.integers(-1, 1)))
def test_rank_matches_sympy(M):
    assert M.rank() == sym_matrix(M).rank()

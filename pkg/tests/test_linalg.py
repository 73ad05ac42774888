from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cartan_pentads import _rref_py
from cartan_pentads._kernel import BACKEND
from cartan_pentads.errors import (DimensionMismatch, NotAPermutation, SingularMatrix,
                                   SpecParseError)
from cartan_pentads.linalg import (QMatrix, block_compose, block_diag, det, format_rational,
                                   image_basis, inverse, kernel_basis, parse_rational,
                                   permutation_matrix, rank, rref, rref_rows, solve)
from oracles import naive_rref, sympy_matrix, sympy_rank

rationals = st.builds(F, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def matrices(draw, max_rows=5, max_cols=6):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    rows = [[draw(rationals) if draw(st.booleans()) else F(0) for _ in range(n)] for _ in range(m)]
    if m > 2 and draw(st.booleans()):
        # force a dependent row now and then
        rows[-1] = [a - 2 * b for a, b in zip(rows[0], rows[1])]
    return QMatrix(rows)


# -- rationals ---------------------------------------------------------

def test_parse_and_format_roundtrip():
    assert parse_rational("3/6") == F(1, 2)
    assert parse_rational("-4") == F(-4)
    assert parse_rational(7) == F(7)
    assert format_rational(F(1, 2)) == "1/2"
    assert format_rational(F(-4)) == "-4"
    assert format_rational(F(0)) == "0"


@pytest.mark.parametrize("bad", [0.5, "0.5", "1/0", "x", True, None, "1e3"])
def test_parse_rejects_inexact_or_garbage(bad):
    with pytest.raises(SpecParseError):
        parse_rational(bad)


@given(rationals)
def test_rational_string_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


# -- rank ----------------------------------------------------------------

def test_rank_examples():
    assert rank(QMatrix([[0], [0]])) == 0
    assert rank(QMatrix([[2, -1], [-1, 2]])) == 2
    assert rank(QMatrix([[2, -2]])) == 1


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy_rank(m.to_lists())


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_matches_textbook_elimination(m):
    assert rref_rows(m.to_lists(), m.cols) == naive_rref(m.to_lists(), m.cols)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_matches_sympy(m):
    R, piv = rref(m)
    Rs, pivs = sympy_matrix(m.to_lists()).rref()
    assert tuple(piv) == tuple(pivs)
    assert [[F(str(x)) for x in Rs.row(i)] for i in range(Rs.rows)] == R.to_lists()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-20, 20), min_size=5, max_size=5), min_size=1, max_size=6))
def test_compiled_and_pure_kernels_agree(rows):
    if BACKEND != "cython":
        pytest.skip("compiled kernel not built")
    from cartan_pentads import _rref_ext
    a = [r[:] for r in rows]
    b = [r[:] for r in rows]
    assert _rref_py.rref_int(a, 5) == _rref_ext.rref_int(b, 5)
    assert a == b


# -- kernel / image ------------------------------------------------------

def test_kernel_examples():
    assert kernel_basis(QMatrix([[2, -2], [-2, 2]])) == [(F(1), F(1))]
    assert kernel_basis(QMatrix.identity(2)) == []
    assert len(kernel_basis(QMatrix.zeros(1, 2))) == 2


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel_vectors(m):
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    # echelon normalized: leading entries 1 at increasing positions, cleared columns
    leads = [next(i for i, x in enumerate(v) if x) for v in ker]
    assert leads == sorted(set(leads))
    for v, c in zip(ker, leads):
        assert v[c] == 1
        assert all(w[c] == 0 for w in ker if w is not v)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_image_basis_spans_columns(m):
    img = image_basis(m)
    assert len(img) == rank(m)
    stacked = QMatrix([list(v) for v in img] + [list(m.col(j)) for j in range(m.cols)])
    assert rank(stacked) == len(img)


# -- inverse / det / solve ----------------------------------------------

def test_inverse_examples():
    A = QMatrix([["2/3", "1/3"], ["1/3", "2/3"]])
    assert inverse(A) == QMatrix([[2, -1], [-1, 2]])
    assert inverse(QMatrix.identity(3)) == QMatrix.identity(3)
    with pytest.raises(SingularMatrix):
        inverse(QMatrix([[2, -2], [-2, 2]]))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_two_sided_and_det(rows):
    m = QMatrix(rows)
    d = det(m)
    assert d == F(str(sympy_matrix(rows).det()))
    if d == 0:
        with pytest.raises(SingularMatrix):
            inverse(m)
    else:
        inv = inverse(m)
        assert m @ inv == QMatrix.identity(m.rows)
        assert inv @ m == QMatrix.identity(m.rows)


def test_solve():
    m = QMatrix([[1, 1], [1, -1]])
    assert solve(m, [2, 0]) == (F(1), F(1))
    assert solve(QMatrix([[1, 1], [1, 1]]), [0, 1]) is None


# -- blocks and permutations ---------------------------------------------

def test_block_compose_examples():
    A2 = QMatrix([[2, -1], [-1, 2]])
    Z = QMatrix.zeros(2, 2)
    M = block_compose([[A2, Z], [Z, A2]])
    assert M.shape == (4, 4)
    assert M == block_diag(A2, A2)
    assert M[2, 3] == -1 and M[0, 2] == 0
    # the grid (O, I; D, L) with D the A2 matrix and L = (-1, 0)
    G = block_compose([[QMatrix.zeros(1, 2), QMatrix.identity(1)],
                       [A2, QMatrix([[-1], [0]])]])
    assert G == QMatrix([[0, 0, 1], [2, -1, -1], [-1, 2, 0]])
    assert block_compose([[A2]]) == A2


def test_block_compose_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        block_compose([[QMatrix.identity(2), QMatrix.identity(3)]])
    with pytest.raises(DimensionMismatch):
        block_compose([[QMatrix.identity(2)], [QMatrix.identity(1)]])


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_block_diag_rank_additive(a, b):
    assert rank(block_diag(a, b)) == rank(a) + rank(b)


def test_permutation_matrix_examples():
    assert permutation_matrix([1, 2, 3]) == QMatrix.identity(3)
    assert permutation_matrix([2, 1]) == QMatrix([[0, 1], [1, 0]])
    P = permutation_matrix([2, 3, 1])
    assert {(i, j) for i in range(3) for j in range(3) if P[i, j]} == {(0, 1), (1, 2), (2, 0)}
    with pytest.raises(NotAPermutation):
        permutation_matrix([1, 1, 3])


def test_qmatrix_is_immutable_and_checked():
    m = QMatrix([[1, 2]])
    with pytest.raises(AttributeError):
        m.rows = 3
    with pytest.raises(DimensionMismatch):
        QMatrix([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        m @ m

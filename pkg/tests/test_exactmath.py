from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pfk3.exactmath import (DIM_V, PAIRS, FieldError, Matrix, NotSkewError, PluckerVector, PrimeField,
                            RationalField, SkewForm, determinant, is_prime, pfaffian, pfaffian_expand,
                            plane_basis, plane_meets, plucker_residuals, radical, rank_of, standard_symplectic,
                            wedge, wedge4, wedge4_matrix)

P = 32003
F = PrimeField(P)
uppers = st.lists(st.integers(0, P - 1), min_size=15, max_size=15)
vecs = st.lists(st.integers(0, P - 1), min_size=6, max_size=6)


@given(uppers)
@settings(max_examples=200)
def test_pfaffian_squared_is_determinant(u):
    m = SkewForm.from_upper(F, u)
    assert pfaffian(m) ** 2 % P == determinant(F, m.matrix.rows)


@given(uppers)
@settings(max_examples=100)
def test_elimination_matches_expansion(u):
    m = SkewForm.from_upper(F, u)
    assert pfaffian(m) == pfaffian_expand(m.matrix.rows) % P


@given(st.lists(st.integers(-9, 9), min_size=15, max_size=15))
@settings(max_examples=50)
def test_rational_pfaffian_against_sympy(u):
    Q = RationalField()
    m = SkewForm.from_upper(Q, u)
    det = sympy.Matrix(m.matrix.rows).det()
    assert Fraction(pfaffian(m)) ** 2 == Fraction(int(det))


@given(uppers, st.lists(st.integers(0, P - 1), min_size=36, max_size=36))
@settings(max_examples=50)
def test_congruence_scales_by_determinant(u, b):
    A = SkewForm.from_upper(F, u)
    B = Matrix(F, [b[6 * i:6 * i + 6] for i in range(6)])
    BAB = B @ A.matrix @ B.transpose()
    assert pfaffian(SkewForm(BAB)) == F.mul(B.det(), pfaffian(A))


def test_standard_symplectic():
    assert pfaffian(standard_symplectic(F)) == 1
    assert pfaffian(standard_symplectic(RationalField())) == 1


def test_odd_size_pfaffian_is_zero():
    m = SkewForm(Matrix(F, [[0, 1, 2], [-1, 0, 3], [-2, -3, 0]]))
    assert pfaffian(m) == 0


def test_not_skew_rejected():
    with pytest.raises(NotSkewError):
        SkewForm(Matrix(F, [[1, 0], [0, 0]]))


def test_rank_four_has_two_dim_radical():
    m = SkewForm(Matrix(F, [[0, 1, 0, 0, 0, 0], [-1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0],
                            [0, 0, -1, 0, 0, 0], [0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0]]))
    assert m.rank() == 4
    rad = radical(m)
    assert len(rad) == 2
    basis = [tuple(int(i == j) for j in range(6)) for i in range(6)]
    assert all(m(r, v) == 0 for r in rad for v in basis)


def test_field_inverse_of_zero():
    with pytest.raises((FieldError, ZeroDivisionError)):
        F.inv(0)


def test_is_prime():
    assert is_prime(32003) and not is_prime(32004) and not is_prime(1)


@given(vecs, vecs)
@settings(max_examples=100)
def test_wedge_is_decomposable(v, w):
    pw = wedge(v, w, F)
    assert not any(plucker_residuals(pw, F))
    if not pw.is_zero():
        p1, p2 = plane_basis(pw, F)
        assert rank_of(F, [p1, p2, v, w]) == 2
        assert wedge(p1, p2, F) != PluckerVector([0] * 15)


@given(vecs, vecs)
@settings(max_examples=50)
def test_wedge4_matrix_is_the_wedge_map(v, w):
    b = wedge(v, w, F)
    a = wedge([1, 2, 3, 4, 5, 6], [6, 5, 4, 3, 2, 1], F)
    assert tuple(wedge4_matrix(b, F).apply(a)) == wedge4(a, b, F)


def test_schubert_forms_have_rank_six():
    b = wedge([1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], F)
    assert wedge4_matrix(b, F).rank() == 6


def test_plane_meets():
    e = [tuple(int(i == j) for j in range(DIM_V)) for i in range(DIM_V)]
    assert plane_meets(F, (e[0], e[1]), (e[1], e[2]))
    assert not plane_meets(F, (e[0], e[1]), (e[2], e[3]))


def test_pairs_order():
    assert PAIRS[0] == (0, 1) and PAIRS[-1] == (4, 5) and len(PAIRS) == 15

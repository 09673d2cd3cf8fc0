# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

import numpy as np
import pytest
import sympy as sp

from heisenberg.solvability.exceptions import (ClassificationInputError, DimensionMismatchError,
                                               MatrixParseError, NonSymmetricMatrixError)
from heisenberg.solvability.operators import (FieldPolynomial, OperatorSpec, apply_operator,
                                              kohn_laplacian, l_alpha, letter_index,
                                              letter_name, lewy, type1_operator,
                                              type3_operator, vector_field_apply, z_tilde)
from heisenberg.solvability.symbolic import TestFunction, coordinates
from tests.testing import relative_gap


def letters(n=1):
    return [FieldPolynomial.letter(n, name) for name in ('X1', 'Y1', 'U')]


@pytest.mark.parametrize('name, index', [('X1', 0), ('X2', 1), ('Y1', 2), ('Y2', 3), ('U', 4)])
def test_letter_names(name, index):
    assert letter_index(2, name) == index
    assert letter_name(2, index) == name


def test_bad_letters():
    for name in ('Z1', 'X3', 'Y0'):
        with pytest.raises(ValueError):
            letter_index(2, name)


def test_normal_order_uses_commutator():
    X, Y, U = letters()
    assert (Y * X).equals(X * Y - U)
    assert X.bracket(Y).equals(U)
    assert U.bracket(X).is_zero()


def test_transpose_reverses_words():
    X, Y, U = letters()
    assert (X * Y).transpose().equals(Y * X)
    assert lewy().transpose().equals(-(X + sp.I * Y))
    assert (X * X + sp.I * U).transpose().equals(X * X - sp.I * U)


def test_homogeneous_degree():
    X, Y, U = letters()
    assert kohn_laplacian(1).to_polynomial().homogeneous_degree() == 2
    assert l_alpha(1, 3).to_polynomial().homogeneous_degree() == 2
    assert lewy().to_polynomial().homogeneous_degree() == 1
    assert (X + U).homogeneous_degree() is None


def test_type1_operator_matches_block_formula():
    X, Y, U = letters()
    lam = sp.Rational(1, 2)
    expected = (1 - lam ** 2) * X * X + Y * Y + sp.I * lam * (X * Y + Y * X)
    assert type1_operator(lam).to_polynomial().equals(expected)
    assert type3_operator().to_polynomial().equals(-sp.I * (X * X - Y * Y))


def test_lewy_type_factorizations():
    X, Y, U = letters()
    L1 = type1_operator(1).to_polynomial()
    Zt = z_tilde().to_polynomial()
    assert (L1 - sp.I * U).equals(Y * Zt)
    assert (L1 + sp.I * U).equals(Zt * Y)


def test_spec_from_text_exact():
    spec = OperatorSpec.from_text(1, '-1,0;0,-1', '3')
    assert spec.exact
    assert spec.alpha == 3
    assert spec.is_real
    assert spec.S == sp.Matrix([[0, 1], [-1, 0]])
    assert spec.order == 2


def test_spec_from_text_complex_alpha():
    spec = OperatorSpec.from_text(1, '1,0;0,1', '2i')
    assert spec.exact
    assert spec.alpha == 2 * sp.I
    assert spec.to_polynomial().equals(kohn_laplacian(1).to_polynomial()
                                       + sp.I * 2 * sp.I * letters()[2])


def test_spec_from_float_text():
    spec = OperatorSpec.from_text(1, '0.5,0;0,0.5')
    assert not spec.exact
    assert np.allclose(spec.A, 0.5 * np.eye(2))


def test_spec_errors():
    with pytest.raises(ClassificationInputError):
        OperatorSpec.from_text(2, '1,0;0,1')
    with pytest.raises(MatrixParseError) as e:
        OperatorSpec.from_text(1, '1,garbage;0,1')
    assert 'garbage' in str(e.value)
    with pytest.raises(NonSymmetricMatrixError):
        OperatorSpec(sp.Matrix([[1, 2], [0, 1]]))
    with pytest.raises(DimensionMismatchError):
        OperatorSpec(sp.eye(3))
    with pytest.raises(DimensionMismatchError):
        OperatorSpec(sp.eye(2), 0, [1])


def test_from_S_inverts_S():
    A = sp.Matrix([[1, sp.Rational(1, 2)], [sp.Rational(1, 2), -3]])
    spec = OperatorSpec(A, 1)
    assert OperatorSpec.from_S(spec.S, 1).A == A


def test_lower_order_terms():
    assert lewy().order == 1
    assert OperatorSpec(sp.zeros(2), 5).order == 0


def test_apply_matches_field_composition():
    x, y, u = coordinates(1)
    f = TestFunction.gaussian(1, polynomial=1 + x * u)
    applied = apply_operator(l_alpha(1, 3), f)
    manual = (vector_field_apply('X1', vector_field_apply('X1', f))
              + vector_field_apply('Y1', vector_field_apply('Y1', f))
              + vector_field_apply('U', f) * (3 * sp.I))
    assert applied.equals(manual)


def test_apply_on_grid_matches_exact(gaussian):
    grid = gaussian.sample(97, 3.0)
    numeric = apply_operator(kohn_laplacian(1), grid)
    exact = apply_operator(kohn_laplacian(1), gaussian).sample(97, 3.0)
    assert relative_gap(numeric.values, exact.values) < 0.05


def test_apply_dimension_check(gaussian):
    with pytest.raises(DimensionMismatchError):
        apply_operator(kohn_laplacian(2), gaussian)

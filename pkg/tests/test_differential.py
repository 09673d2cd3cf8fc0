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

from heisenberg.solvability.differential import (MU, DifferentialOperator, dilation_exponent,
                                                 operator_symbol, twisted_symbol)
from heisenberg.solvability.exceptions import DimensionMismatchError
from heisenberg.solvability.operators import FieldPolynomial, kohn_laplacian, lewy


def test_composition_commutes_derivative_past_coordinate():
    d = DifferentialOperator.derivative(1, 0)
    x = DifferentialOperator.coordinate(1, 0)
    assert (d * x).equals(x * d + 1)
    assert d.bracket(x).equals(DifferentialOperator.identity(1))
    assert (d ** 2 * x).equals(x * d ** 2 + 2 * d)


def test_mismatched_dimensions():
    with pytest.raises(DimensionMismatchError):
        DifferentialOperator.derivative(1, 0) + DifferentialOperator.derivative(2, 0)


def test_symbol_respects_commutator():
    X, Y, U = (FieldPolynomial.letter(1, name) for name in ('X1', 'Y1', 'U'))
    assert operator_symbol(X.bracket(Y)).equals(operator_symbol(U))
    assert twisted_symbol(X.bracket(Y)).equals(twisted_symbol(U))


def test_symbol_is_multiplicative():
    X, Y = FieldPolynomial.letter(2, 'X2'), FieldPolynomial.letter(2, 'Y2')
    assert operator_symbol(X * Y).equals(operator_symbol(X) * operator_symbol(Y))


def test_sub_laplacian_symbol():
    symbol = operator_symbol(kohn_laplacian(1))
    d = DifferentialOperator.derivative(1, 0)
    x = DifferentialOperator.coordinate(1, 0)
    assert symbol.equals(d * d - 4 * sp.pi ** 2 * MU ** 2 * x * x)
    terms = symbol.coefficients(1.0)
    assert terms[0] == ((0,), (2,), 1 + 0j)
    assert terms[1][:2] == ((2,), (0,))
    assert terms[1][2] == pytest.approx(-4 * np.pi ** 2)
    assert 'd^2/dx1^2' in str(symbol)


def test_symbol_order_and_mu():
    symbol = operator_symbol(lewy())
    assert symbol.order() == 1
    assert symbol.subs_mu(sp.Rational(1, 2)).equals(DifferentialOperator.derivative(1, 0)
                                      - sp.pi * DifferentialOperator.coordinate(1, 0))


@pytest.mark.parametrize('P, q', [
    (kohn_laplacian(1), 2),
    (lewy(), 1),
    (FieldPolynomial.letter(1, 'X1') + FieldPolynomial.letter(1, 'U'), None),
])
def test_dilation_exponent(P, q):
    assert dilation_exponent(operator_symbol(P)) == q


def test_symbolic_application():
    symbol = operator_symbol(kohn_laplacian(1))
    x = symbol.symbols[0]
    result = symbol.apply(sp.exp(-sp.pi * x ** 2), mu=1)
    expected = (4 * sp.pi ** 2 * x ** 2 - 2 * sp.pi - 4 * sp.pi ** 2 * x ** 2) * sp.exp(-sp.pi * x ** 2)
    assert sp.simplify(result - expected) == 0


def test_grid_application_is_spectral():
    symbol = operator_symbol(kohn_laplacian(1))
    axis = (np.arange(65) - 32) * (10.0 / 65)
    values = np.exp(-np.pi * axis ** 2)
    applied = symbol.apply_grid(values, [axis], 1.0)
    assert np.max(np.abs(applied + 2 * np.pi * values)) < 1e-8
    with pytest.raises(DimensionMismatchError):
        symbol.apply_grid(np.ones((3, 3)), [axis, axis], 1.0)

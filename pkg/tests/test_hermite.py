# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

import numpy as np
import pytest
import scipy.sparse as sps

from heisenberg.solvability.differential import operator_symbol
from heisenberg.solvability.exceptions import GridResolutionError, HermiteOverflowError
from heisenberg.solvability.hermite import (HermiteBasis, eigen_relation_check, hermite_eval,
                                            hermite_table, inverse_norm_probe)
from heisenberg.solvability.operators import FieldPolynomial, kohn_laplacian


def _nodes(mu, count=4001, width=12.0):
    x = np.linspace(-width, width, count) / np.sqrt(2 * np.pi * abs(mu))
    return x, x[1] - x[0]


@pytest.mark.parametrize('mu', [0.25, 1.0, -4.0])
def test_hermite_functions_are_orthonormal(mu):
    x, h = _nodes(mu)
    table = hermite_table(12, mu, x)
    gram = table.dot(table.T) * h
    assert np.allclose(gram, np.eye(12), atol=1e-10)


def test_hermite_parity():
    x = np.linspace(0.1, 2.0, 7)
    for k in range(6):
        assert np.allclose(hermite_eval(k, 1.0, -x), (-1) ** k * hermite_eval(k, 1.0, x))


def test_order_limits():
    with pytest.raises(HermiteOverflowError):
        hermite_table(502, 1.0, 0.0)
    with pytest.raises(HermiteOverflowError):
        HermiteBasis(600, 1.0)
    with pytest.raises(ValueError):
        hermite_eval(-1, 1.0, 0.0)
    with pytest.raises(ValueError):
        HermiteBasis(4, 0.0)


@pytest.mark.parametrize('mu', [0.25, 1.0, 4.0])
@pytest.mark.parametrize('alpha', [0, 1, -1, 2j])
@pytest.mark.parametrize('k', [0, 1, 5, 10])
def test_eigen_relation(mu, alpha, k):
    check = eigen_relation_check(alpha, mu, k, dims=257)
    assert check.gap < 1e-6
    assert check.applied == pytest.approx(check.predicted, rel=1e-6, abs=1e-6 * 2 * np.pi * mu)


def test_eigen_relation_flips_with_sign_of_mu():
    check = eigen_relation_check(1, -1.0, 0)
    assert check.predicted == pytest.approx(0.0)
    assert check.gap < 1e-6


def test_unresolved_grid():
    with pytest.raises(GridResolutionError):
        eigen_relation_check(0, 1.0, 10, dims=15)


def test_position_matrix_matches_quadrature():
    mu = 0.5
    basis = HermiteBasis(10, mu)
    symbol = operator_symbol(FieldPolynomial.letter(1, 'Y1'))
    M = basis.galerkin(symbol, extra=1)
    assert M.shape == (11, 10)
    x, h = _nodes(mu)
    table = hermite_table(11, mu, x)
    quad = (table * (2j * np.pi * mu * x)).dot(table[:10].T) * h
    assert np.allclose(M, quad, atol=1e-9)


def test_sub_laplacian_matrix_is_diagonal():
    basis = HermiteBasis(8, 2.0)
    M = basis.galerkin(operator_symbol(kohn_laplacian(1)), extra=0)
    expected = -2 * np.pi * 2.0 * (2 * np.arange(8) + 1)
    assert np.allclose(M, np.diag(expected))


def test_tensor_basis_is_sparse():
    basis = HermiteBasis(6, 1.0, n=2)
    M = basis.galerkin(operator_symbol(kohn_laplacian(2)))
    assert sps.issparse(M)
    assert M.shape == (64, 36)
    assert basis.size == 36
    assert len(basis.indices()) == 36


def test_synthesize():
    basis = HermiteBasis(3, 1.0)
    x = np.linspace(-1, 1, 5)
    assert np.allclose(basis.synthesize([0, 1, 0], x), hermite_eval(1, 1.0, x))


@pytest.mark.parametrize('alpha, mu, ratio', [
    (0, 1.0, 1.0),
    (0, -3.0, 1.0),
    (2j, 0.5, np.sqrt(5)),
    (-1, 1.0, 0.0),
    (1, -1.0, 0.0),
    (-4, 2.0, 1.0),
])
def test_inverse_norm_probe(alpha, mu, ratio):
    row = inverse_norm_probe(alpha, [mu], K=60)[0]
    assert row.ratio == pytest.approx(ratio, abs=1e-9)
    assert row.sigma_min == pytest.approx(row.predicted, abs=1e-8)

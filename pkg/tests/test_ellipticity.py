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

from heisenberg.solvability.ellipticity import (class_ii_operator, la_ellipticity_test,
                                                qlambda_reduce)
from heisenberg.solvability.exceptions import ClassificationInputError, DimensionMismatchError


def test_real_coefficients_are_never_elliptic():
    assert not la_ellipticity_test(np.eye(2)).elliptic
    assert la_ellipticity_test(np.eye(2)).det_nonzero


def test_elliptic_but_degenerate():
    # x -> Ax has rows (x1, -x2), (x2, x1) in real and imaginary part
    result = la_ellipticity_test(np.array([[1, 1j], [1j, -1]]))
    assert result.elliptic
    assert result.margin == pytest.approx(1.0, abs=1e-9)
    assert not result.det_nonzero


def test_symbolic_input():
    beta = 2 / np.sqrt(3)
    result = la_ellipticity_test(sp.Matrix([[sp.I * 2 / sp.sqrt(3), 1],
                                            [1, -sp.I * 2 / sp.sqrt(3)]]))
    assert result.elliptic and result.det_nonzero
    assert result.margin == pytest.approx(min(1.0, beta), abs=1e-9)
    assert result.det == pytest.approx(beta ** 2 - 1)


def test_needs_two_by_two():
    with pytest.raises(DimensionMismatchError):
        la_ellipticity_test(np.eye(3))


@pytest.mark.parametrize('lam', [2, sp.Rational(5, 4), 3])
def test_qlambda_reduction(lam):
    reduction = qlambda_reduce(lam)
    s = sp.sqrt(sp.nsimplify(lam) ** 2 - 1)
    assert reduction.conformal
    assert reduction.symplectic
    assert reduction.matches
    assert sp.simplify(reduction.conformal_factor + 2 * s) == 0
    assert sp.simplify(sum(reduction.coefficients) - 1) == 0
    assert reduction.margin == pytest.approx(1.0, abs=1e-9)
    assert sp.simplify(reduction.L_matrix.det() - 1 / s ** 2) == 0


def test_qlambda_needs_lambda_above_one():
    with pytest.raises(ClassificationInputError):
        qlambda_reduce(1)


def test_class_ii_operator_shape():
    P = class_ii_operator(2)
    assert P.n == 2
    assert P.A.is_symmetric()
    assert P.A[0, 2] == 2 * sp.I
    assert P.A[1, 3] == -2 * sp.I

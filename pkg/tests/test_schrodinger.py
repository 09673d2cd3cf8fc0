# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

import numpy as np
import pytest

from heisenberg.solvability.exceptions import DimensionMismatchError, NyquistError
from heisenberg.solvability.group import GroupPoint
from heisenberg.solvability.operators import kohn_laplacian, l_alpha, lewy
from heisenberg.solvability.schrodinger import (
    NoWitnessUpTo, WitnessFound, cr_nonsolvability_test, fourier_invert, fourier_kernel,
    kernel_by_quadrature, kernel_family, kernel_homogeneity, plancherel_check, repr_apply,
    rotated_kernel)


def _gaussian_kernel(x, y, mu):
    """ Kernel of exp(-pi (|z|^2 + u^2)) at mu, in closed form """
    return (np.exp(-np.pi * (x - y) ** 2) * np.exp(-np.pi * (mu * (x + y) / 2) ** 2)
            * np.exp(-np.pi * mu ** 2))


def test_representation_is_a_homomorphism():
    mu = 0.7
    f = lambda x: np.exp(-x[..., 0] ** 2) * (1 + x[..., 0])
    g = GroupPoint((0.3, -0.4), 0.25)
    h = GroupPoint((-1.1, 0.6), -0.5)
    x = np.linspace(-2, 2, 9)[:, None]
    left = repr_apply(mu, g, repr_apply(mu, h, f))(x)
    right = repr_apply(mu, g * h, f)(x)
    assert np.allclose(left, right, atol=1e-12)


def test_representation_needs_nonzero_mu():
    with pytest.raises(ValueError):
        repr_apply(0, GroupPoint((0, 0), 0), np.exp)


@pytest.mark.parametrize('mu', [0.5, -0.8])
def test_kernel_matches_closed_form(gaussian_grid, mu):
    K = fourier_kernel(gaussian_grid, mu)
    x, y = K.mesh()
    assert K.mu == mu
    assert np.max(np.abs(K.values - _gaussian_kernel(x, y, mu))) < 1e-8


def test_kernel_matches_direct_quadrature(gaussian):
    xs = np.array([-0.5, 0.0, 0.75])
    direct = kernel_by_quadrature(gaussian, 0.5, xs)
    expected = _gaussian_kernel(xs[:, None], xs[None, :], 0.5)
    assert np.allclose(direct, expected, atol=1e-10)


def test_kernel_nyquist(gaussian_grid):
    with pytest.raises(NyquistError) as e:
        fourier_kernel(gaussian_grid, 3.0)
    assert e.value.max_mu < 3.0


def test_kernel_needs_heisenberg_grid():
    from heisenberg.solvability.symbolic import TestFunction
    plane = TestFunction.gaussian(1, plane=True).sample(9, 2.0)
    with pytest.raises(DimensionMismatchError):
        fourier_kernel(plane, 0.5)


def test_hs_norm_agrees_between_kernels(gaussian_grid):
    mu = 0.5
    expected = np.sqrt(np.exp(-2 * np.pi * mu ** 2) / (2 * mu))
    assert rotated_kernel(gaussian_grid, mu).hs_norm() == pytest.approx(expected, rel=1e-6)
    assert fourier_kernel(gaussian_grid, mu).hs_norm() == pytest.approx(expected, rel=1e-4)


def test_trace_at_identity(gaussian_grid):
    mu = 0.5
    # trace of the kernel: integral of K(s, s) ds
    expected = np.exp(-np.pi * mu ** 2) / abs(mu)
    assert rotated_kernel(gaussian_grid, mu).trace() == pytest.approx(expected, rel=1e-6)


def test_plancherel(gaussian_grid):
    result = plancherel_check(gaussian_grid, nthreads=2)
    assert result.lhs == pytest.approx(2 ** -1.5, rel=1e-8)
    assert result.gap < 1e-3


def test_inversion_recovers_value_at_identity(gaussian_grid):
    family = kernel_family(gaussian_grid, nthreads=2)
    result = fourier_invert(family)
    assert result.value == pytest.approx(1.0, abs=1e-3)
    point = GroupPoint((0.0, 0.5), 0.0)
    assert fourier_invert(family, point).value == pytest.approx(np.exp(-np.pi / 4), abs=1e-3)


def test_inversion_flags_truncation(gaussian_grid):
    family = kernel_family(gaussian_grid, mu_max=0.5)
    assert 'mu_truncation' in fourier_invert(family).flags


def test_kernel_homogeneity():
    assert kernel_homogeneity(kohn_laplacian(1)) == (2, 3)
    assert kernel_homogeneity(lewy()) == (1, 2)


def test_lewy_witness_at_negative_mu():
    result = cr_nonsolvability_test(lewy(), -1 / (2 * np.pi), K=32)
    assert isinstance(result, WitnessFound)
    assert result.residual < 1e-12
    assert abs(abs(result.vector[0]) - 1) < 1e-10


def test_lewy_has_no_witness_at_positive_mu():
    result = cr_nonsolvability_test(lewy(), 1 / (2 * np.pi), K=32)
    assert isinstance(result, NoWitnessUpTo)


def test_sub_laplacian_with_imaginary_alpha_is_bounded_below():
    result = cr_nonsolvability_test(l_alpha(1, 2j), 1.0, K=64)
    assert isinstance(result, NoWitnessUpTo)
    assert min(result.sigmas) >= 2 * np.pi * (1 - 1e-9)


def test_sub_laplacian_critical_alpha_has_witness():
    # L_alpha with alpha = -1 kills h_0 at mu > 0
    result = cr_nonsolvability_test(l_alpha(1, -1), 1.0, K=32, transpose=False)
    assert isinstance(result, WitnessFound)
    assert abs(abs(result.vector[0]) - 1) < 1e-8


def test_cr_test_rejects_zero_mu():
    with pytest.raises(ValueError):
        cr_nonsolvability_test(lewy(), 0)

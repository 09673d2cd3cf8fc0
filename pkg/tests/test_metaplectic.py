# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

import numpy as np
import pytest

from heisenberg.solvability.exceptions import (ClassificationInputError, DimensionMismatchError,
                                               InvalidConfigError, NotSymplecticError,
                                               SingularParameterError)
from heisenberg.solvability.group import standard_J
from heisenberg.solvability.metaplectic import (ComplexGaussian, decay_fit, default_probe,
                                                fresnel_pair_gap, gamma, generator_check,
                                                identity_limit_gap, ktilde_integrand_bound,
                                                ktilde_pairing, ktilde_refinement_gap,
                                                ktilde_weak_identity, semigroup_check,
                                                standard_gaussian, symplectic_pair_check)
from heisenberg.solvability.operators import OperatorSpec, apply_operator
from heisenberg.solvability.symbolic import TestFunction, field_apply
from heisenberg.solvability.twisted import twisted_convolve

from tests.testing import relative_gap

HYPERBOLIC_S = np.array([[0.0, -1.0], [-1.0, 0.0]])
J = standard_J(1)


def test_standard_gaussians_compose_in_closed_form():
    g = standard_gaussian(1)
    product = g.compose(g, mu=1.0)
    assert product.c == pytest.approx(0.5, abs=1e-14)
    assert np.allclose(product.M, -0.625j * np.eye(2), atol=1e-14)
    assert product.decaying


def test_compose_matches_sampled_twisted_convolution():
    a = standard_gaussian(1)
    b = ComplexGaussian(1.0 + 0j, np.array([[-1.5j, 0.3], [0.3, -1j]]))
    mu = 0.8
    numeric = twisted_convolve(a.sample(25, 3.0), b.sample(25, 3.0), mu)
    exact = a.compose(b, mu).sample(25, 3.0)
    assert np.max(np.abs(numeric.values - exact.values)) < 1e-4


def test_compose_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        standard_gaussian(1).compose(standard_gaussian(2))


def test_gamma_at_imaginary_time_is_a_heat_kernel():
    theta = 1.0
    g = gamma(J, 1j * theta)
    assert np.allclose(g.matrix, -0.5j / np.tanh(theta / 2) * np.eye(2), atol=1e-10)
    assert g.prefactor == pytest.approx(1 / (2 * np.sinh(theta / 2)), rel=1e-10)
    assert g.as_complex_gaussian().decaying


def test_gamma_at_negative_mu_is_conjugated():
    plus = gamma(HYPERBOLIC_S, 0.7, mu=2.0)
    minus = gamma(HYPERBOLIC_S, 0.7, mu=-2.0)
    assert np.allclose(minus.matrix, -np.conj(plus.matrix))
    assert minus.prefactor == pytest.approx(np.conj(plus.prefactor))


def test_gamma_semigroup_in_closed_form():
    half = gamma(J, 0.5j).as_complex_gaussian()
    whole = gamma(J, 1j).as_complex_gaussian()
    product = half.compose(half)
    assert product.c == pytest.approx(whole.c, rel=1e-10)
    assert np.allclose(product.M, whole.M, atol=1e-10)


def test_twisted_apply_matches_closed_form():
    g = gamma(J, 0.5j)
    f = standard_gaussian(1)
    numeric = g.twisted_apply(f.sample(41, 3.0), nthreads=2)
    exact = f.compose(g.as_complex_gaussian()).sample(41, 3.0)
    assert 'nyquist' not in numeric.flags
    assert relative_gap(numeric.norm(), exact.norm()) < 1e-6
    assert (numeric - exact).norm() < 1e-6 * exact.norm()


def test_twisted_apply_needs_plane_function(gaussian_grid):
    with pytest.raises(DimensionMismatchError):
        gamma(J, 0.5j).twisted_apply(gaussian_grid)


def test_gamma_rejects_degenerate_parameters():
    with pytest.raises(SingularParameterError):
        gamma(J, 0)
    with pytest.raises(InvalidConfigError):
        gamma(J, 0.5, mu=0)


def test_gamma_rejects_non_symplectic_matrix():
    with pytest.raises(NotSymplecticError):
        gamma(np.array([[1.0, 2.0], [3.0, 4.0]]), 0.5)


def test_identity_limit():
    assert identity_limit_gap(HYPERBOLIC_S, t=1e-3) < 1e-2
    assert identity_limit_gap(HYPERBOLIC_S, t=1e-4) < identity_limit_gap(HYPERBOLIC_S, t=1e-3)


def test_generator():
    assert generator_check(HYPERBOLIC_S).gap < 1e-3


@pytest.mark.parametrize('S, t', [(HYPERBOLIC_S, 0.7), (J, 1j)])
def test_fresnel_pair_law(S, t):
    assert fresnel_pair_gap(S, t) < 1e-10


def test_symplectic_pair_by_fft():
    assert symplectic_pair_check() < 1e-4


def test_decay_envelope():
    fit = decay_fit(HYPERBOLIC_S)
    assert fit.beta > 0
    assert fit.envelope_holds
    assert len(fit.pairings) == len(fit.checked_ts)
    assert not set(fit.ts) & set(fit.checked_ts)
    assert min(fit.checked_ts) == pytest.approx(0.1)
    assert max(fit.checked_ts) == pytest.approx(5.0)


def test_ktilde_needs_hyperbolic_S():
    with pytest.raises(ClassificationInputError):
        ktilde_pairing(J, 0.0, default_probe(1))


def test_default_probe_normalisation():
    probe = default_probe(1)
    assert complex(field_apply(2, probe)((0, 0, 0))) == pytest.approx(1.0)


def test_integrand_bound_grows_with_imaginary_alpha():
    bounds = ktilde_integrand_bound(HYPERBOLIC_S, [-0.5j, 0.0, 0.5j], default_probe(1))
    assert all(b > 0 for b in bounds)
    assert bounds[0] <= bounds[1] <= bounds[2]


@pytest.mark.parametrize('t', [0.1, 0.5, 2.0])
def test_gamma_semigroup_at_real_time(t):
    half = gamma(HYPERBOLIC_S, t).as_complex_gaussian()
    whole = gamma(HYPERBOLIC_S, 2 * t).as_complex_gaussian()
    product = half.compose(half)
    assert product.c / whole.c == pytest.approx(1.0, abs=1e-10)
    assert np.max(np.abs(product.M - whole.M)) < 1e-10


def test_semigroup_check_at_small_time():
    assert semigroup_check(HYPERBOLIC_S, 0.1, 0.1, dims=129) < 1e-4
    assert semigroup_check(HYPERBOLIC_S, 0.1, 0.0) == 0.0


def test_decay_envelope_for_random_gaussian_polynomials(rng):
    for _ in range(20):
        phi = TestFunction.random_gaussian_polynomial(1, rng, degree=2, plane=True)
        fit = decay_fit(HYPERBOLIC_S, phi=phi.sample(65, 4.0))
        assert fit.beta > 0
        assert fit.envelope_holds


def test_decay_envelope_fails_for_a_too_large_rate():
    fit = decay_fit(HYPERBOLIC_S, margin=3.0)
    assert not fit.envelope_holds


def _transposed(alpha, psi=None):
    return apply_operator(OperatorSpec.from_S(HYPERBOLIC_S, alpha).transpose(),
                          default_probe(1) if psi is None else psi)


def test_ktilde_refinement():
    assert ktilde_refinement_gap(HYPERBOLIC_S, 0.0, _transposed(0.0)) < 1e-2


@pytest.mark.parametrize('alpha', [0.0, 0.5])
def test_ktilde_weak_identity(alpha):
    result = ktilde_weak_identity(HYPERBOLIC_S, alpha)
    assert result.order == 0
    assert result.target == pytest.approx(1.0)
    assert abs(result.ratio - 1) < 0.05


def test_ktilde_order_from_small_mu_growth():
    result = ktilde_pairing(HYPERBOLIC_S, 0.0, _transposed(0.0))
    assert result.order == 0
    assert result.growth > 0
    assert result.mu_max < 64


def test_ktilde_needs_gaussian_test_function():
    u = TestFunction.gaussian(1).u_symbol
    with pytest.raises(InvalidConfigError):
        ktilde_pairing(HYPERBOLIC_S, 0.0, TestFunction.gaussian(1, polynomial=1 / (1 + u ** 2)))

# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

from fractions import Fraction

from hypothesis import given, settings
import numpy as np
import pytest
import sympy as sp

from heisenberg.solvability.exceptions import DimensionMismatchError, InvalidConfigError
from heisenberg.solvability.group import (GroupPoint, ball_volume_fit, conjugate, dilate,
                                          inverse, koranyi_distance, koranyi_norm, multiply,
                                          reflect_x, standard_J, symplectic_action,
                                          symplectic_form, theta, triangle_defect)
from heisenberg.solvability.symplectic import exact_symplectic
from tests.testing import exact_points, float_points


def test_product_has_half_symplectic_form():
    g = GroupPoint((1, 0), 0)
    h = GroupPoint((0, 1), 0)
    assert multiply(g, h) == GroupPoint((1, 1), 0.5)
    assert multiply(h, g) == GroupPoint((1, 1), -0.5)


def test_exact_coordinates_stay_exact():
    g = GroupPoint((Fraction(1, 3), Fraction(2)), Fraction(1))
    h = GroupPoint((Fraction(1), Fraction(-1)), Fraction(0))
    gh = g * h
    assert all(isinstance(v, Fraction) for v in gh)
    assert gh.u == Fraction(1) + Fraction(1, 2) * (Fraction(-1, 3) - 2)


@given(exact_points(), exact_points(), exact_points())
def test_associativity_is_exact(g, h, k):
    assert (g * h) * k == g * (h * k)


@given(exact_points(2))
def test_inverse(g):
    e = GroupPoint.identity(2)
    assert g * inverse(g) == e
    assert inverse(g) * g == e


@given(exact_points(), exact_points())
def test_commutator_is_central(g, h):
    # g h g^-1 h^-1 = (0, <z, z'>)
    c = g * h * inverse(g) * inverse(h)
    assert c.z == (0, 0)
    assert c.u == symplectic_form(g.z, h.z)


@given(exact_points(), exact_points())
def test_theta_and_reflection_are_automorphisms(g, h):
    assert theta(g * h) == theta(g) * theta(h)
    assert reflect_x(g * h) == reflect_x(g) * reflect_x(h)
    assert theta(theta(g)) == g


def test_symplectic_action_is_automorphism(rng):
    T = exact_symplectic(2, rng)
    g = GroupPoint([sp.Rational(v) for v in (1, -2, 3, 1)], sp.Rational(1, 2))
    h = GroupPoint([sp.Rational(v) for v in (0, 1, -1, 2)], sp.Rational(-3))
    assert symplectic_action(T, g * h) == symplectic_action(T, g) * symplectic_action(T, h)


def test_conjugation_fixes_centre():
    g = GroupPoint((2, 5), 1)
    centre = GroupPoint((0, 0), 7)
    assert conjugate(g, centre) == centre


def test_koranyi_norm_values():
    assert koranyi_norm(GroupPoint((0, 0), 1)) == 2.0
    assert koranyi_norm(GroupPoint((3, 4), 0)) == pytest.approx(5.0)
    assert koranyi_norm(GroupPoint.identity(3)) == 0.0


@settings(max_examples=50)
@given(float_points())
def test_koranyi_norm_is_homogeneous(g):
    assert koranyi_norm(dilate(2.5, g)) == pytest.approx(2.5 * koranyi_norm(g), rel=1e-12,
                                                         abs=1e-12)


@given(exact_points(), exact_points(), exact_points())
def test_distance_is_left_invariant(g, h, k):
    assert koranyi_distance(k * g, k * h) == koranyi_distance(g, h)


def test_triangle_inequality(rng):
    assert triangle_defect(rng, n=1, count=10000) <= 1e-12
    assert triangle_defect(rng, n=2, count=2000, scale=3.0) <= 1e-12


def test_ball_volume_exponent():
    fit = ball_volume_fit(n=1, samples=200000, seed=0)
    assert abs(fit.exponent - 4.0) / 4.0 < 0.02


def test_dimension_checks():
    with pytest.raises(DimensionMismatchError):
        GroupPoint((1, 2, 3))
    with pytest.raises(DimensionMismatchError):
        multiply(GroupPoint((1, 2)), GroupPoint((1, 2, 3, 4)))
    with pytest.raises(ValueError):
        GroupPoint((float('nan'), 0.0))
    with pytest.raises(InvalidConfigError):
        dilate(0, GroupPoint((1, 1)))


def test_points_are_immutable():
    g = GroupPoint((1, 2), 3)
    with pytest.raises(AttributeError):
        g.u = 4


def test_standard_J():
    J = standard_J(2)
    assert np.array_equal(J.dot(J), -np.eye(4))
    assert standard_J(1, exact=True) == sp.Matrix([[0, 1], [-1, 0]])

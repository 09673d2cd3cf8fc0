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

from heisenberg.solvability.symbolic import TestFunction


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def gaussian():
    """ exp(-pi (|z|^2 + u^2)) on H_1 """
    return TestFunction.gaussian(1)


@pytest.fixture(scope="session")
def gaussian_grid(gaussian):
    return gaussian.sample(33, 3.0)


@pytest.fixture(scope="session")
def narrow_gaussian():
    return TestFunction.gaussian(1, a=2 * sp.pi, b=2 * sp.pi)

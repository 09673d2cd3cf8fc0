# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
L2-normalised Hermite functions h_k^mu(x) = (2 pi |mu|)^{1/4} h_k((2 pi |mu|)^{1/2} x),
ladder-built Galerkin matrices of Schrödinger symbols, the eigenvalue
relation of the re-scaled Hermite operator and the inverse-norm probe.
"""

from collections import namedtuple
from functools import reduce
from itertools import product
import logging

import numpy as np
import scipy.linalg as la
import scipy.sparse as sps

from .differential import operator_symbol
from .exceptions import GridResolutionError, HermiteOverflowError, InvalidConfigError
from .operators import l_alpha

logger = logging.getLogger(__name__)

MAX_ORDER = 500


def _scale(mu):
    if mu == 0:
        raise InvalidConfigError("mu must be nonzero")
    return np.sqrt(2 * np.pi * abs(mu))


def hermite_table(K, mu, x):
    """ Rows h_0^mu .. h_{K-1}^mu evaluated at ``x`` by the three-term recurrence

    h_{k+1} = sqrt(2/(k+1)) s x h_k - sqrt(k/(k+1)) h_{k-1},  s = sqrt(2 pi |mu|)
    """
    if K - 1 > MAX_ORDER:
        raise HermiteOverflowError("Hermite order %d beyond %d" % (K - 1, MAX_ORDER))
    s = _scale(mu)
    xi = s * np.asarray(x, dtype=float)
    table = np.zeros((K,) + xi.shape)
    table[0] = np.sqrt(s) * np.pi ** -0.25 * np.exp(-0.5 * xi * xi)
    if K > 1:
        table[1] = np.sqrt(2.0) * xi * table[0]
    for k in range(1, K - 1):
        table[k + 1] = (np.sqrt(2.0 / (k + 1)) * xi * table[k]
                        - np.sqrt(k / (k + 1.0)) * table[k - 1])
    return table


def hermite_eval(k, mu, x):
    """ h_k^mu(x)

    >>> round(float(hermite_eval(0, 1 / (2 * np.pi), 0.0)), 12) == round(np.pi ** -0.25, 12)
    True
    """
    if k < 0:
        raise InvalidConfigError("order must be nonnegative")
    return hermite_table(k + 1, mu, x)[k]


def ladder(size):
    """ Lowering operator a with a h_k = sqrt(k) h_{k-1} on the first ``size`` functions """
    return np.diag(np.sqrt(np.arange(1, size, dtype=float)), 1)


class HermiteBasis(object):
    """ Tensor Hermite basis h_k^mu on R^n, k in {0..K-1}^n

    Position and derivative act through the ladder operators,
    x = (a + a^+)/(s sqrt 2) and d/dx = s (a - a^+)/sqrt 2, so matrices of
    polynomial-coefficient operators are exact.
    """

    def __init__(self, K, mu, n=1):
        if K < 1:
            raise InvalidConfigError("basis size must be positive")
        if K - 1 > MAX_ORDER:
            raise HermiteOverflowError("Hermite order %d beyond %d" % (K - 1, MAX_ORDER))
        self.K = K
        self.mu = mu
        self.n = n
        self.s = _scale(mu)

    def __repr__(self):
        return "HermiteBasis(K=%d, mu=%g, n=%d)" % (self.K, self.mu, self.n)

    @property
    def size(self):
        return self.K ** self.n

    def indices(self, K=None):
        return list(product(range(K or self.K), repeat=self.n))

    def table(self, x):
        return hermite_table(self.K, self.mu, x)

    def _factors(self, size):
        a = ladder(size)
        ad = a.T
        position = (a + ad) / (self.s * np.sqrt(2))
        derivative = self.s * (a - ad) / np.sqrt(2)
        return position, derivative

    def galerkin(self, symbol, mu=None, extra=None):
        """ Matrix of ``symbol`` (a DifferentialOperator on R^n) from span{h_k : k < K}
        into span{h_k : k < K + extra}, ``extra`` defaulting to the order

        Returns a dense array for n = 1 and a CSR matrix otherwise.
        """
        if symbol.m != self.n:
            raise InvalidConfigError("symbol acts on R^%d, basis on R^%d" % (symbol.m, self.n))
        mu = self.mu if mu is None else mu
        extra = symbol.order() if extra is None else extra
        rows = self.K + extra
        size = self.K + symbol.order() + extra + 1
        position, derivative = self._factors(size)
        total = None
        for beta, gamma, c in symbol.coefficients(mu):
            blocks = []
            for b, g in zip(beta, gamma):
                M = (np.linalg.matrix_power(position, b)
                     .dot(np.linalg.matrix_power(derivative, g)))
                blocks.append(sps.csr_matrix(M[:rows, :self.K]))
            term = c * reduce(lambda P, Q: sps.kron(P, Q, format='csr'), blocks)
            total = term if total is None else total + term
        if total is None:
            total = sps.csr_matrix((rows ** self.n, self.K ** self.n), dtype=complex)
        if self.n == 1:
            return np.asarray(total.toarray(), dtype=complex)
        return total.tocsr()

    def synthesize(self, coefficients, x):
        """ sum_k c_k h_k^mu(x) for n = 1 """
        coefficients = np.asarray(coefficients)
        return coefficients.dot(hermite_table(len(coefficients), self.mu, x))


EigenCheck = namedtuple('EigenCheck', 'applied predicted gap')


def eigen_relation_check(alpha, mu, k, dims=257):
    """ Apply the symbol of L_alpha to h_k^mu on a grid and compare with
    -2 pi |mu| (2k + 1 + sign(mu) alpha)

    ``applied`` is the Rayleigh quotient; ``gap`` is the relative L2
    residual, measured against 2 pi |mu| when the prediction vanishes.
    """
    s = _scale(mu)
    extent = (np.sqrt(2 * k + 1) + 6.0) / s
    x = (np.arange(dims) - dims // 2) * (2 * extent / dims)
    h = x[1] - x[0]
    if s * np.sqrt(2 * k + 1) > 0.8 * np.pi / h:
        raise GridResolutionError("%d points do not resolve h_%d" % (dims, k))
    phi = hermite_eval(k, mu, x)
    symbol = operator_symbol(l_alpha(1, alpha))
    applied = symbol.apply_grid(phi, [x], mu)
    predicted = -2 * np.pi * abs(mu) * (2 * k + 1 + np.sign(mu) * complex(alpha))
    norm = np.sqrt(np.sum(phi * phi) * h)
    rayleigh = np.sum(applied * phi) * h / norm ** 2
    scale = abs(predicted) if abs(predicted) > 0 else 2 * np.pi * abs(mu)
    gap = np.sqrt(np.sum(np.abs(applied - predicted * phi) ** 2) * h) / (scale * norm)
    logger.debug("Eigen relation k=%d mu=%g: gap %.3g", k, mu, gap)
    return EigenCheck(complex(rayleigh), complex(predicted), float(gap))


InverseNormRow = namedtuple('InverseNormRow', 'mu sigma_min ratio predicted')


def inverse_norm_probe(alpha, mus, K=200):
    """ Smallest singular value of the Hermite matrix of L_alpha-hat(pi_mu)

    The matrix is diagonal, so sigma_min = 2 pi |mu| min_k |2k + 1 + sign(mu) alpha|
    and ``ratio`` = sigma_min / (2 pi |mu|) is independent of |mu|.
    """
    symbol = operator_symbol(l_alpha(1, alpha))
    rows = []
    for mu in mus:
        basis = HermiteBasis(K, mu)
        M = basis.galerkin(symbol, extra=0)
        sigma = float(la.svdvals(M).min())
        k = np.arange(K)
        predicted = 2 * np.pi * abs(mu) * np.min(np.abs(2 * k + 1 + np.sign(mu) * complex(alpha)))
        rows.append(InverseNormRow(mu, sigma, sigma / (2 * np.pi * abs(mu)), float(predicted)))
        logger.debug("Inverse norm at mu=%g: sigma_min %.6g", mu, sigma)
    return rows

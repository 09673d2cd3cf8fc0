# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Numerical check of the fundamental solution of Delta_K + i alpha U on H_n.

With the fields X_j = d/dx_j - y_j/2 d/du, Y_j = d/dy_j + x_j/2 d/du the
function Phi_alpha = q_+^{-(n+alpha)/2} q_-^{-(n-alpha)/2}, q_+-(z, u) = |z|^2 +- 4iu,
is annihilated by Delta_K + i alpha U away from 0, and

    <Phi_alpha, tL phi> = c_n phi(0) / (Gamma((n+alpha)/2) Gamma((n-alpha)/2)).

Pairings are computed in Koranyi polar coordinates |z|^2 = rho^2 cos(theta),
4u = rho^2 sin(theta), where q_+- = rho^2 exp(+-i theta) and
dz du = rho^{2n+1} cos(theta)^{n-1} / 4 drho dtheta domega.
"""

from collections import namedtuple
import logging

import numpy as np
import sympy as sp
from scipy.special import rgamma

from .exceptions import DimensionMismatchError
from .operators import apply_operator, l_alpha
from .symbolic import TestFunction, coordinates
from .utils import gauss_legendre, parallel_map

logger = logging.getLogger(__name__)

FollandSteinReport = namedtuple(
    'FollandSteinReport',
    'n alphas normalized spread ratio_measured ratio_predicted ratio_gap radius')


def gamma_factor(n, alpha):
    """ 1 / (Gamma((n+alpha)/2) Gamma((n-alpha)/2)); zero at the poles

    >>> round(float(gamma_factor(1, 0).real), 6)
    0.31831
    """
    return complex(rgamma((n + alpha) / 2.0) * rgamma((n - alpha) / 2.0))


def default_test_functions(n=1):
    """ Five Gaussian-type functions with phi(0) = 1 """
    syms = coordinates(n)
    x, u = syms[0], syms[-1]
    y = syms[n]
    r2 = sum(s ** 2 for s in syms[:-1])
    return [TestFunction.gaussian(n),
            TestFunction.gaussian(n, a=2 * sp.pi, b=sp.pi / 2),
            TestFunction.gaussian(n, polynomial=1 + x ** 2),
            TestFunction.gaussian(n, polynomial=1 + u + y),
            TestFunction(sp.exp(-r2 - u ** 2 - r2 ** 2), n)]


def _sphere_rule(d, order=16, azimuth=32):
    """ Nodes (m, d) and weights on S^{d-1} in hyperspherical angles """
    if d == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    phis = 2 * np.pi * np.arange(azimuth) / azimuth
    points = np.stack([np.cos(phis), np.sin(phis)], axis=-1)
    weights = np.full(azimuth, 2 * np.pi / azimuth)
    for k in range(3, d + 1):
        t, w = gauss_legendre(0.0, np.pi, order)
        w = w * np.sin(t) ** (k - 2)
        new_points = np.concatenate([np.cos(t)[:, None, None] * np.ones((1, len(points), 1)),
                                     np.sin(t)[:, None, None] * points[None]], axis=-1)
        points = new_points.reshape(-1, k)
        weights = (w[:, None] * weights[None]).reshape(-1)
    return points, weights


class _PolarRule(object):
    """ Tensor rule in (rho, theta, omega) on the shell eps <= rho <= R """

    def __init__(self, n, eps, R, rho_order=64, theta_order=96):
        self.n = n
        rho, wr = gauss_legendre(eps, R, rho_order)
        theta, wt = gauss_legendre(-np.pi / 2, np.pi / 2, theta_order)
        omega, wo = _sphere_rule(2 * n)
        c = np.cos(theta)
        radius = rho[:, None] * np.sqrt(c)[None, :]
        z = radius[:, :, None, None] * omega[None, None, :, :]
        self.coords = [z[..., j] for j in range(2 * n)]
        u = (rho[:, None] ** 2 * np.sin(theta)[None, :] / 4.0)[:, :, None]
        self.coords.append(np.broadcast_to(u, z.shape[:-1]))
        jac = rho[:, None] ** (2 * n + 1) * c[None, :] ** (n - 1) / 4.0
        self.weights = (wr[:, None, None] * wt[None, :, None] * wo[None, None, :]
                        * jac[:, :, None])
        self.rho = rho
        self.theta = theta

    def kernel(self, alpha):
        """ Phi_alpha on the nodes: rho^{-2n} exp(-i alpha theta) """
        values = self.rho[:, None] ** (-2 * self.n) * np.exp(-1j * alpha * self.theta)[None, :]
        return values[:, :, None]


def pairing(n, alpha, phi, eps, R=4.0):
    """ Integral of Phi_alpha tL phi over eps <= |g| <= R """
    if phi.n != n:
        raise DimensionMismatchError("phi lives on H_%d, not H_%d" % (phi.n, n))
    transposed = apply_operator(l_alpha(n, alpha).transpose(), phi)
    rule = _PolarRule(n, eps, R)
    values = transposed.evaluate(*rule.coords)
    return complex(np.sum(rule.weights * rule.kernel(alpha) * values))


def excised_pairing(n, alpha, phi, start=0.1, rtol=5e-3, min_radius=1e-4):
    """ Pairing with the excised ball halved until the value changes by < rtol """
    eps = start
    value = pairing(n, alpha, phi, eps)
    while eps > min_radius:
        eps /= 2.0
        new = pairing(n, alpha, phi, eps)
        change = abs(new - value) / max(abs(new), 1e-300)
        value = new
        if change < rtol:
            break
    logger.debug("Folland-Stein pairing at alpha=%s: %s (radius %g)", alpha, value, eps)
    return value, eps


def folland_stein_verify(n=1, alphas=(0, 0.5), phis=None, nthreads=None):
    """ Normalized pairings r(phi)/phi(0) for each alpha and their Gamma ratio

    Returns
    -------
    FollandSteinReport
        ``spread[alpha]`` is the relative spread of r(phi)/phi(0) across the
        test functions; ``ratio_measured`` compares the mean normalized
        pairing at alphas[1] with alphas[0] and ``ratio_predicted`` the
        Gamma factors.
    """
    phis = default_test_functions(n) if phis is None else phis
    origin = (0,) * (2 * n + 1)

    def work(job):
        alpha, phi = job
        value, eps = excised_pairing(n, alpha, phi)
        return value / complex(phi(origin)), eps

    jobs = [(a, p) for a in alphas for p in phis]
    results = parallel_map(work, jobs, nthreads)
    normalized = {}
    radius = 0.0
    for (alpha, _), (value, eps) in zip(jobs, results):
        normalized.setdefault(alpha, []).append(value)
        radius = max(radius, eps)
    spread = {}
    means = {}
    for alpha, values in normalized.items():
        mean = np.mean(values)
        means[alpha] = mean
        spread[alpha] = float(np.max(np.abs(np.array(values) - mean)) / max(abs(mean), 1e-300))
    measured = predicted = gap = None
    if len(alphas) >= 2:
        a1, a2 = alphas[0], alphas[1]
        measured = complex(means[a2] / means[a1])
        predicted = gamma_factor(n, a2) / gamma_factor(n, a1)
        gap = float(abs(measured - predicted) / abs(predicted)) if predicted != 0 \
            else float(abs(measured))
        logger.info("Gamma ratio measured %s, predicted %s", measured, predicted)
    return FollandSteinReport(n, tuple(alphas), {a: tuple(v) for a, v in normalized.items()},
                              spread, measured, predicted, gap, radius)

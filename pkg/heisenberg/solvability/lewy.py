# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Numerical witness for the failure of local solvability of Lewy's operator
Z = X + iY on H_1 at the origin.

With q_+(z, u) = |z|^2 + 4iu one has Z q_+ = 0, so v = exp(lam (-q_+ + q_+^2)) chi
satisfies tZ v = -exp(...) Z chi, which is exponentially small in lam on the
support of Z chi. Pairing v with the concentrating bumps
f = lam^3 chi(lam .) gives

    I = integral of f v  ->  integral of chi(z, u) exp(-4iu) dz du,

while the Sobolev bound R = ||f||_(k) ||tZ v||_(k) tends to zero.
"""

from collections import namedtuple
import logging

import numpy as np
import sympy as sp

from .exceptions import InvalidConfigError
from .symbolic import TestFunction, coordinates, field_apply
from .utils import parallel_map

logger = logging.getLogger(__name__)

LewyRow = namedtuple('LewyRow', 'lam integral bound ratio target')

INTEGRAL_DIMS = 64
SOBOLEV_DIMS = 96
SHELL_DIMS = (128, 128, 64)


def phase(n=1):
    """ q_+ = |z|^2 + 4iu as a TestFunction """
    syms = coordinates(n)
    return TestFunction(sum(s ** 2 for s in syms[:-1]) + 4 * sp.I * syms[-1], n)


def lewy_apply(f):
    """ Z f = X f + i Y f on H_1 """
    return field_apply(0, f) + sp.I * field_apply(1, f).expr


def phase_annihilated():
    """ Z q_+ == 0, exactly """
    return lewy_apply(phase()).is_zero()


def _smooth_step(t):
    return sp.Piecewise((sp.exp(-1 / t), t > 0), (0, True))


def cutoff(eps):
    """ chi = 1 for r <= eps, 0 for r >= 2 eps, r the Euclidean radius in (x, y, u) """
    x, y, u = coordinates(1)
    s = sp.sqrt(x ** 2 + y ** 2 + u ** 2) / eps
    return TestFunction(_smooth_step(2 - s) / (_smooth_step(2 - s) + _smooth_step(s - 1)), 1)


def _lambdify(expr):
    func = sp.lambdify(coordinates(1), expr, modules='numpy')

    def evaluate(*arrays):
        with np.errstate(divide='ignore', over='ignore', invalid='ignore'):
            out = np.asarray(func(*arrays), dtype=complex)
        return np.broadcast_to(np.nan_to_num(out), np.broadcast(*arrays).shape)
    return evaluate


def _cell_centred(half_widths, dims):
    """ Midpoint nodes on [-a, a] per axis and the cell volume """
    axes = []
    volume = 1.0
    for a, d in zip(half_widths, dims):
        h = 2.0 * a / d
        axes.append(-a + h * (np.arange(d) + 0.5))
        volume *= h
    return np.meshgrid(*axes, indexing='ij'), volume


def _check(eps, k):
    if not 0 < eps < 0.5:
        raise InvalidConfigError("cutoff radius eps must lie in (0, 0.5), got %r" % (eps,))
    if k not in (0, 1):
        raise InvalidConfigError("Sobolev order k must be 0 or 1, got %r" % (k,))


def _phase_values(lam, x, y, u):
    """ exp(lam (-q_+ + q_+^2)) """
    q = x ** 2 + y ** 2 + 4j * u
    return np.exp(lam * (-q + q ** 2))


def pairing(lam, eps, dims=INTEGRAL_DIMS):
    """ I = integral of chi(h) chi(h/lam) exp(lam(-q_+ + q_+^2)(h/lam)) dh, and its limit """
    chi = _lambdify(cutoff(eps).expr)
    (x, y, u), volume = _cell_centred((2 * eps,) * 3, (dims,) * 3)
    base = chi(x, y, u)
    inner = chi(x / lam, y / lam, u / lam) * _phase_values(lam, x / lam, y / lam, u / lam)
    value = complex(np.sum(base * inner) * volume)
    target = complex(np.sum(base * np.exp(-4j * u)) * volume)
    return value, target


def bump_sobolev_norm(lam, eps, k, dims=SOBOLEV_DIMS):
    """ ||lam^3 chi(lam .)||_(k) = (lam^3 integral of (1 + lam^2 |eta|^2)^k |chi^(eta)|^2)^{1/2} """
    chi = _lambdify(cutoff(eps).expr)
    h = 6.0 * eps / dims
    axis = (np.arange(dims) - dims // 2) * h
    x, y, u = np.meshgrid(axis, axis, axis, indexing='ij')
    spectrum = np.fft.fftn(np.fft.ifftshift(chi(x, y, u))) * h ** 3
    freqs = np.fft.fftfreq(dims, h)
    ex, ey, eu = np.meshgrid(freqs, freqs, freqs, indexing='ij')
    weight = (1.0 + lam ** 2 * (ex ** 2 + ey ** 2 + eu ** 2)) ** k
    cell = (1.0 / (dims * h)) ** 3
    return float(np.sqrt(lam ** 3 * np.sum(weight * np.abs(spectrum) ** 2) * cell))


def transposed_sobolev_norm(lam, eps, k, dims=SHELL_DIMS):
    """ ||tZ v||_(k) for k in {0, 1} with v = exp(Phi) chi, Phi = lam (-q_+ + q_+^2)

    tZ v = exp(Phi) G with G = -Z chi, and grad(tZ v) = exp(Phi)(G grad Phi + grad G).
    """
    x, y, u = coordinates(1)
    G = -lewy_apply(cutoff(eps)).expr
    q = phase().expr
    Phi = -q + q ** 2
    values = _lambdify(G)
    grads = [_lambdify(sp.diff(G, s)) for s in (x, y, u)]
    phi_grads = [_lambdify(sp.diff(Phi, s)) for s in (x, y, u)]
    u_half = min(2 * eps, 1.12 / np.sqrt(lam))
    (X, Y, U), volume = _cell_centred((2 * eps, 2 * eps, u_half), dims)
    weight = _phase_values(lam, X, Y, U)
    g = weight * values(X, Y, U)
    total = np.sum(np.abs(g) ** 2)
    if k == 1:
        Gv = values(X, Y, U)
        for dG, dPhi in zip(grads, phi_grads):
            grad = weight * (Gv * lam * dPhi(X, Y, U) + dG(X, Y, U))
            total += np.sum(np.abs(grad) ** 2) / (4 * np.pi ** 2)
    return float(np.sqrt(total * volume))


def lewy_witness_experiment(lambdas=(16, 32, 64), eps=0.1, k=1, nthreads=None):
    """ Rows (lam, I, R, |I|/R, target) of the witness experiment

    Parameters
    ----------
    lambdas: sequence of float
    eps: float [0.1]
        chi = 1 on r <= eps and vanishes for r >= 2 eps.
    k: int [1]
        Sobolev order, 0 or 1.
    nthreads: int [None]
        Threads over the lambda values.
    """
    _check(eps, k)

    def row(lam):
        value, target = pairing(lam, eps)
        bound = bump_sobolev_norm(lam, eps, k) * transposed_sobolev_norm(lam, eps, k)
        ratio = abs(value) / bound if bound > 0 else np.inf
        logger.debug("Lewy lam=%g: I=%s R=%.3g", lam, value, bound)
        return LewyRow(float(lam), value, bound, float(ratio), target)

    rows = parallel_map(row, list(lambdas), nthreads)
    logger.info("Lewy experiment over %d values of lambda (eps=%g, k=%d)", len(rows), eps, k)
    return rows

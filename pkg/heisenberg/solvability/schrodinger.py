# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
The group Fourier transform on H_n through the Schrödinger representations

    [pi_mu(p, q, u) f](x) = exp(2 pi i mu (u + q.x + q.p/2)) f(x + p),

with f-hat(pi_mu) = integral of f(g) pi_mu(g^{-1}) dg. Its integral kernel is

    K_f^mu(x, y) = F(x - y, mu (x + y)/2, mu),

F being the Fourier transform (exp(-2 pi i <., .>)) of f in the (q, u)
slots. Traces and Hilbert-Schmidt norms are taken in the rotated kernel
coordinates p = x - y, s = (x + y)/2, where the kernel is sampled at the
DFT frequencies xi = mu s and stays resolved for every mu.
"""

from collections import namedtuple
import logging

import numpy as np
import scipy.linalg as la
from scipy.interpolate import RegularGridInterpolator

from .differential import dilation_exponent, operator_symbol
from .exceptions import DimensionMismatchError, InvalidConfigError, NyquistError
from .grid import KernelFunction, convolve, trapezoid_weights
from .group import GroupPoint
from .hermite import HermiteBasis
from .operators import FieldPolynomial, OperatorSpec
from .utils import gauss_legendre, parallel_map

logger = logging.getLogger(__name__)

WITNESS_THRESHOLD = 1e-8
TAIL_THRESHOLD = 1e-6

__all__ = ['repr_apply', 'fourier_kernel', 'kernel_by_quadrature', 'RotatedKernel',
           'rotated_kernel', 'KernelFamily', 'kernel_family', 'mu_quadrature',
           'fourier_invert', 'plancherel_check', 'polarization_check', 'compose_kernels',
           'convolution_theorem_gap', 'operator_symbol', 'kernel_homogeneity',
           'cr_nonsolvability_test', 'WitnessFound', 'NoWitnessUpTo']


def repr_apply(mu, g, f):
    """ The function pi_mu(g) f

    Parameters
    ----------
    mu: nonzero float
    g: GroupPoint
    f: callable
        Vectorised over points of shape (..., n).
    """
    if mu == 0:
        raise InvalidConfigError("the Schrödinger representation needs mu != 0")
    if not isinstance(g, GroupPoint):
        g = GroupPoint(g[:-1], g[-1])
    p = np.asarray(g.x, dtype=float)
    q = np.asarray(g.y, dtype=float)
    u = float(g.u)

    def image(x):
        x = np.asarray(x, dtype=float)
        phase = np.exp(2j * np.pi * mu * (u + x.dot(q) + 0.5 * q.dot(p)))
        return phase * f(x + p)

    return image


def _u_transform(f, mu):
    """ integral of f(z, u) exp(-2 pi i mu u) du on the grid """
    hu = f.spacings[-1]
    limit = 1.0 / (2 * hu)
    if abs(mu) > limit:
        raise NyquistError(mu, limit)
    u = f.axes[-1]
    weights = trapezoid_weights(f.dims[-1:], f.spacings[-1:])
    return np.tensordot(f.values, weights * np.exp(-2j * np.pi * mu * u), axes=([-1], [0]))


def _check_heisenberg(f):
    if not f.has_center:
        raise DimensionMismatchError("expected a function on H_n with a u axis")


def fourier_kernel(f, mu):
    """ K_f^mu sampled on (p-axis nodes) x (p-axis nodes)

    The q-transform is evaluated exactly at the 2d - 1 frequencies
    mu (x + y)/2 that occur on the grid.
    """
    _check_heisenberg(f)
    n = f.n
    Fu = _u_transform(f, mu)
    paxes, qaxes = f.axes[:n], f.axes[n:2 * n]
    hp, hq = f.spacings[:n], f.spacings[n:2 * n]
    limit = min(1.0 / (2 * hq[j] * (len(paxes[j]) // 2) * hp[j]) for j in range(n))
    if abs(mu) > limit:
        raise NyquistError(mu, limit)
    G = Fu
    for j in range(n):
        d = len(paxes[j])
        c = d // 2
        xi = mu * (np.arange(2 * d - 1) - 2 * c) * hp[j] / 2
        wq = trapezoid_weights((len(qaxes[j]),), (hq[j],))
        E = np.exp(-2j * np.pi * np.outer(qaxes[j], xi)) * wq[:, None]
        G = np.moveaxis(np.tensordot(G, E, axes=([n + j], [0])), -1, n + j)
    dims = [len(a) for a in paxes]
    pidx, midx = [], []
    valid = True
    for j, d in enumerate(dims):
        shape_x = [1] * (2 * n)
        shape_y = [1] * (2 * n)
        shape_x[j] = d
        shape_y[n + j] = d
        I = np.arange(d).reshape(shape_x)
        J = np.arange(d).reshape(shape_y)
        P = I - J + d // 2
        valid = valid & (P >= 0) & (P < d)
        pidx.append(np.clip(P, 0, d - 1))
        midx.append(I + J)
    values = G[tuple(pidx) + tuple(midx)] * valid
    logger.debug("Kernel at mu=%g on %s nodes", mu, values.shape)
    return KernelFunction(values, tuple(f.extents[:n]) * 2, mu)


def kernel_by_quadrature(f, mu, xs, extent=6.0, order=96):
    """ Direct Gauss-Legendre evaluation of K_f^mu(x, y) for x, y in ``xs`` (n = 1)

    ``f`` is a TestFunction on H_1.
    """
    if f.n != 1:
        raise DimensionMismatchError("direct quadrature is implemented for H_1")
    nodes, weights = gauss_legendre(-extent, extent, order)
    Q, Uu = np.meshgrid(nodes, nodes, indexing='ij')
    W = np.outer(weights, weights)
    xs = np.asarray(xs, dtype=float)
    out = np.zeros((len(xs), len(xs)), dtype=complex)
    for i, x in enumerate(xs):
        for j, y in enumerate(xs):
            vals = f.evaluate(np.full(Q.shape, x - y), Q, Uu)
            phase = np.exp(-2j * np.pi * (Q * mu * (x + y) / 2 + mu * Uu))
            out[i, j] = np.sum(W * vals * phase)
    return out


class RotatedKernel(object):
    """ K_f^mu in the coordinates (p, xi) with p = x - y and xi = mu (x + y)/2 """

    def __init__(self, mu, paxes, xiaxes, values):
        self.mu = mu
        self.paxes = paxes
        self.xiaxes = xiaxes
        self.values = values
        self.n = len(paxes)
        self.pcell = float(np.prod([a[1] - a[0] for a in paxes]))
        self.xicell = float(np.prod([a[1] - a[0] for a in xiaxes]))

    def __repr__(self):
        return "RotatedKernel(mu=%g, shape=%s)" % (self.mu, self.values.shape)

    def _at_p(self, p):
        p = np.asarray(p, dtype=float)
        idx = []
        for axis, pj in zip(self.paxes, p):
            h = axis[1] - axis[0]
            k = int(round(pj / h)) + len(axis) // 2
            if abs(pj - axis[0] - (k * h)) > 1e-9 * h or not 0 <= k < len(axis):
                break
            idx.append(k)
        else:
            return self.values[tuple(idx)]
        interp = RegularGridInterpolator(self.paxes, self.values, bounds_error=False,
                                         fill_value=0.0)
        return interp(p[None, :])[0]

    def trace(self, g=None):
        """ tr(f-hat(pi_mu) pi_mu(g)) = integral of K(s + p_g/2, s - p_g/2)
        exp(2 pi i mu (u_g + q_g.s)) ds """
        if g is None:
            g = GroupPoint.identity(self.n)
        slab = self._at_p(g.x)
        q = np.asarray(g.y, dtype=float)
        mesh = np.meshgrid(*self.xiaxes, indexing='ij')
        phase = np.exp(2j * np.pi * sum(qj * m for qj, m in zip(q, mesh)))
        total = np.sum(slab * phase) * self.xicell / abs(self.mu) ** self.n
        return complex(total * np.exp(2j * np.pi * self.mu * float(g.u)))

    def hs_norm(self):
        """ Hilbert-Schmidt norm: integral of |K|^2 over (p, s), ds = dxi/|mu|^n """
        total = np.sum(np.abs(self.values) ** 2) * self.pcell * self.xicell
        return float(np.sqrt(total / abs(self.mu) ** self.n))


def rotated_kernel(f, mu):
    """ RotatedKernel of a GridFunction on H_n, FFT along the q axes """
    _check_heisenberg(f)
    n = f.n
    values = _u_transform(f, mu)
    qaxes = list(range(n, 2 * n))
    hq = f.spacings[n:2 * n]
    values = np.fft.fftshift(np.fft.fftn(np.fft.ifftshift(values, axes=qaxes), axes=qaxes),
                             axes=qaxes) * float(np.prod(hq))
    xiaxes = [np.fft.fftshift(np.fft.fftfreq(d, h)) for d, h in zip(f.dims[n:2 * n], hq)]
    return RotatedKernel(mu, f.axes[:n], xiaxes, values)


def mu_quadrature(mu_max, mu_min=1e-6, ratio=0.5, order=8):
    """ Gauss-Legendre panels on [-mu_max, mu_max] refined geometrically towards 0 """
    edges = [mu_max]
    while edges[-1] * ratio > mu_min:
        edges.append(edges[-1] * ratio)
    edges.append(0.0)
    nodes, weights = [], []
    for hi, lo in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(lo, hi, order)
        nodes.extend(x)
        weights.extend(w)
    nodes = np.asarray(nodes)
    weights = np.asarray(weights)
    return np.concatenate([-nodes[::-1], nodes]), np.concatenate([weights[::-1], weights])


KernelFamily = namedtuple('KernelFamily', 'mus weights kernels')


def kernel_family(f, mu_max=None, nthreads=None, **quadrature):
    """ Rotated kernels of ``f`` at the nodes of :func:`mu_quadrature`

    ``mu_max`` defaults to the Nyquist limit of the u axis.
    """
    if mu_max is None:
        mu_max = 1.0 / (2 * f.spacings[-1])
    mus, weights = mu_quadrature(mu_max, **quadrature)
    kernels = parallel_map(lambda mu: rotated_kernel(f, mu), mus, nthreads)
    return KernelFamily(mus, weights, kernels)


InversionResult = namedtuple('InversionResult', 'value flags')


def fourier_invert(family, g=None, tail_tolerance=1e-8):
    """ f(g) = integral of tr(f-hat(pi_mu) pi_mu(g)) |mu|^n dmu

    The outermost panels are used as a convergence probe: a relative
    contribution above ``tail_tolerance`` flags ``'mu_truncation'``.
    """
    terms = np.array([w * abs(mu) ** K.n * K.trace(g)
                      for mu, w, K in zip(family.mus, family.weights, family.kernels)])
    value = complex(np.sum(terms))
    flags = set()
    outer = np.abs(terms[0]) + np.abs(terms[-1])
    if value != 0 and outer / abs(value) > tail_tolerance:
        logger.warning("Inversion integrand not negligible at |mu| = %g",
                       abs(family.mus[0]))
        flags.add('mu_truncation')
    return InversionResult(value, frozenset(flags))


def _hs_integral(f, mu_max, nthreads, quadrature):
    family = kernel_family(f, mu_max, nthreads, **quadrature)
    return float(sum(w * abs(mu) ** K.n * K.hs_norm() ** 2
                     for mu, w, K in zip(family.mus, family.weights, family.kernels)))


PlancherelResult = namedtuple('PlancherelResult', 'lhs rhs gap')


def plancherel_check(f, mu_max=None, nthreads=None, **quadrature):
    """ ||f||^2 against the integral of ||f-hat(pi_mu)||_HS^2 |mu|^n dmu """
    lhs = f.norm() ** 2
    if lhs == 0:
        return PlancherelResult(0.0, 0.0, 0.0)
    rhs = _hs_integral(f, mu_max, nthreads, quadrature)
    gap = abs(lhs - rhs) / lhs
    logger.info("Plancherel: lhs %.10g rhs %.10g gap %.3g", lhs, rhs, gap)
    return PlancherelResult(lhs, rhs, gap)


def polarization_check(f1, f2, mu_max=None, nthreads=None, **quadrature):
    """ <f1, f2> against the 4-point polarisation of the Plancherel side """
    lhs = f1.inner(f2)
    rhs = 0j
    for k in range(4):
        rhs += 1j ** k * _hs_integral(f1 + f2 * (1j ** k), mu_max, nthreads, quadrature)
    rhs /= 4
    scale = max(abs(lhs), f1.norm() * f2.norm())
    gap = abs(lhs - rhs) / scale if scale else 0.0
    return PlancherelResult(lhs, rhs, gap)


def compose_kernels(K2, K1):
    """ Kernel of the operator composition K2 o K1 """
    K2.check_same_grid(K1)
    values = K2.matrix().dot(K1.matrix()) * K1.cell()
    return KernelFunction(values.reshape(K1.dims), K1.extents, K1.mu)


def convolution_theorem_gap(f1, f2, mu, nthreads=None):
    """ Relative HS distance between (f1 * f2)-hat(pi_mu) and f2-hat o f1-hat """
    product = fourier_kernel(convolve(f1, f2, nthreads), mu)
    composed = compose_kernels(fourier_kernel(f2, mu), fourier_kernel(f1, mu))
    diff = product.with_values(product.values - composed.values)
    return float(np.sqrt(np.sum(np.abs(diff.values) ** 2)) * product.cell()
                 / product.hs_norm())


def kernel_homogeneity(P):
    """ (q, q + n): the symbol scales with r^q and the kernel of P-hat with r^{q+n} """
    symbol = operator_symbol(P)
    q = dilation_exponent(symbol)
    return (q, None if q is None else q + symbol.m)


# --- (CR) ---------------------------------------------------------------------

WitnessFound = namedtuple('WitnessFound', 'vector residual sigmas')
NoWitnessUpTo = namedtuple('NoWitnessUpTo', 'K sigmas')


def _tail_mass(vector, K, n):
    coeffs = np.abs(np.asarray(vector)) ** 2
    total = coeffs.sum()
    if total == 0:
        return 0.0
    cut = int(np.ceil(0.9 * K))
    index = np.array(list(np.ndindex(*(K,) * n)))
    tail = coeffs[np.max(index, axis=1) >= cut].sum()
    return float(tail / total)


def cr_nonsolvability_test(P, mu0, K=64, transpose=True):
    """ Look for a Schwartz null vector of tP-hat(pi_mu0) in the Hermite basis

    The smallest singular value of the (K + order) x K Galerkin matrix is
    followed over K/4, K/2, K. A witness needs sigma_min(K) < 1e-8, a
    non-increasing sequence and less than 1e-6 of the vector's mass in the
    last tenth of the Hermite orders.

    Parameters
    ----------
    P: OperatorSpec or FieldPolynomial
    mu0: nonzero float
    K: int [64]
    transpose: bool [True]
        Test the symbol of the transpose tP; False tests P-hat itself.
    """
    if mu0 == 0:
        raise InvalidConfigError("mu0 must be nonzero")
    poly = P.to_polynomial() if isinstance(P, OperatorSpec) else P
    if not isinstance(poly, FieldPolynomial):
        raise TypeError("expected an OperatorSpec or FieldPolynomial")
    if transpose:
        poly = poly.transpose()
    symbol = operator_symbol(poly)
    sizes = sorted({max(2, K // 4), max(2, K // 2), K})
    sigmas = []
    vector = None
    for size in sizes:
        basis = HermiteBasis(size, mu0, poly.n)
        M = basis.galerkin(symbol)
        if not isinstance(M, np.ndarray):
            M = M.toarray()
        _, s, Vh = la.svd(M, full_matrices=False)
        sigmas.append(float(s[-1]))
        vector = np.conj(Vh[-1])
        logger.debug("CR test K=%d: sigma_min %.3g", size, s[-1])
    # values below 1e-3 of the threshold count as equal roundoff
    slack = 1e-3 * WITNESS_THRESHOLD
    decreasing = all(b <= a * (1 + 1e-6) + slack for a, b in zip(sigmas, sigmas[1:]))
    tail = _tail_mass(vector, K, poly.n)
    if sigmas[-1] < WITNESS_THRESHOLD and decreasing and tail < TAIL_THRESHOLD:
        logger.info("CR witness found at mu0=%g, residual %.3g", mu0, sigmas[-1])
        return WitnessFound(vector, sigmas[-1], tuple(sigmas))
    return NoWitnessUpTo(K, tuple(sigmas))

# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Plane functions on R^2n: the central partial Fourier transform
f^mu(z) = integral of f(z, u) exp(-2 pi i mu u) du, the mu-twisted convolution

    (phi x_mu psi)(z) = integral of phi(z - z') psi(z') exp(-pi i mu <z - z', z'>) dz',

for which (f1 * f2)^mu = f1^mu x_mu f2^mu, and the symplectic Fourier
transform f^(zeta) = integral of f(z) exp(-i pi <zeta, z>) dz.
"""

from collections import namedtuple
import logging

import numpy as np

from .exceptions import DimensionMismatchError, GridMismatchError, NyquistError
from .grid import GridFunction, _shift_block, plane_roles, trapezoid_weights
from .group import symplectic_form
from .utils import parallel_map

logger = logging.getLogger(__name__)


def plane_function(values, extents, mu=None):
    """ GridFunction on R^2n """
    values = np.asarray(values)
    return GridFunction(values, extents, plane_roles(values.ndim // 2), mu=mu)


def central_partial_ft(f, mu):
    """ f^mu as a plane function; the u-sum is evaluated at exactly ``mu`` """
    if not f.has_center:
        raise DimensionMismatchError("expected a function on H_n with a u axis")
    hu = f.spacings[-1]
    limit = 1.0 / (2 * hu)
    if abs(mu) > limit:
        raise NyquistError(mu, limit)
    weights = trapezoid_weights(f.dims[-1:], f.spacings[-1:])
    kernel = weights * np.exp(-2j * np.pi * mu * f.axes[-1])
    values = np.tensordot(f.values, kernel, axes=([-1], [0]))
    out = GridFunction(values, f.extents[:-1], plane_roles(f.n), flags=f.flags, mu=mu)
    return out.flag_tail()


def _check_plane(*fs):
    for f in fs:
        if f.has_center:
            raise DimensionMismatchError("expected plane functions on R^2n")
    for f in fs[1:]:
        fs[0].check_same_grid(f)


def twisted_convolve(phi, psi, mu=1.0, nthreads=None, chunk=256):
    """ phi x_mu psi on the common grid of ``phi`` and ``psi``

    Source nodes z' are grid nodes, so phi(z - z') is an index shift.
    """
    _check_plane(phi, psi)
    zmesh = np.stack(phi.mesh(), axis=-1)
    weights = phi.weights()
    centre = np.array([d // 2 for d in phi.dims])
    sources = [idx for idx in np.ndindex(*phi.dims) if psi.values[idx] != 0]

    def work(block):
        acc = np.zeros(phi.dims, dtype=complex)
        for idx in block:
            zsrc = zmesh[idx]
            phase = np.exp(-1j * np.pi * mu * symplectic_form(zmesh, zsrc))
            moved = _shift_block(phi.values, tuple(np.array(idx) - centre))
            acc += psi.values[idx] * weights[idx] * phase * moved
        return acc

    blocks = [sources[i:i + chunk] for i in range(0, len(sources), chunk)]
    logger.debug("Twisted convolution at mu=%g over %d source nodes", mu, len(sources))
    total = np.zeros(phi.dims, dtype=complex)
    for part in parallel_map(work, blocks, nthreads):
        total += part
    out = GridFunction(total, phi.extents, phi.roles, flags=phi.flags | psi.flags, mu=mu)
    return out.flag_tail()


def symplectic_fourier(f, pad=2):
    """ f^(zeta) = integral of f(z) exp(-i pi zeta^T J z) dz by zero-padded FFT

    With f-hat the ordinary transform, f^(zeta_x, zeta_y) = f-hat(-zeta_y/2, zeta_x/2).
    The result has ``pad * d`` (made odd) nodes per axis and half-width 1/h.
    """
    _check_plane(f)
    n = f.n
    dims = f.dims
    size = [pad * d + (1 - (pad * d) % 2) for d in dims]
    arr = np.zeros(size, dtype=complex)
    arr[tuple(slice((s - d) // 2, (s - d) // 2 + d) for s, d in zip(size, dims))] = f.values
    cell = float(np.prod(f.spacings))
    hat = np.fft.fftshift(np.fft.fftn(np.fft.ifftshift(arr))) * cell
    hat = np.flip(hat, axis=tuple(range(n)))
    perm = list(range(n, 2 * n)) + list(range(n))
    values = np.transpose(hat, perm)
    spacings = f.spacings
    extents = [1.0 / spacings[p] for p in perm]
    return GridFunction(values, extents, f.roles, flags=f.flags, mu=f.mu)


def convolve_plane(phi, psi, nthreads=None):
    """ Ordinary convolution on R^2n """
    return twisted_convolve(phi, psi, 0.0, nthreads)


YoungRow = namedtuple('YoungRow', 'p q r lhs rhs')

YOUNG_TRIPLES = ((1, 2, 2), (2, 2, np.inf), (1, 1, 1))


def young_check(phi, psi, mu=1.0, triples=YOUNG_TRIPLES, nthreads=None):
    """ ||phi x_mu psi||_r against ||phi||_p ||psi||_q """
    product = twisted_convolve(phi, psi, mu, nthreads)
    return [YoungRow(p, q, r, product.norm(r), phi.norm(p) * psi.norm(q))
            for p, q, r in triples]


def associativity_gap(f1, f2, f3, mu=1.0, nthreads=None):
    left = twisted_convolve(twisted_convolve(f1, f2, mu, nthreads), f3, mu, nthreads)
    right = twisted_convolve(f1, twisted_convolve(f2, f3, mu, nthreads), mu, nthreads)
    return (left - right).norm() / max(left.norm(), 1e-300)


def pairing(f, g):
    """ Bilinear pairing: integral of f g """
    if not f.same_grid(g):
        raise GridMismatchError("pairing needs a common grid")
    return complex(np.sum(f.weights() * f.values * g.values))

# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Uniform, origin-centred sample grids over H_n, R^2n and R^n x R^n.

A :class:`GridFunction` carries complex samples together with per-axis
half-widths and axis roles. Spacing on an axis with ``d`` (odd) nodes and
half-width ``E`` is ``2E/d`` and node ``i`` sits at ``(i - d//2) * h``.
"""

import io
import json
import logging

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from scipy.signal import fftconvolve

from .enums import AxisRole
from .exceptions import GridMismatchError
from .utils import parallel_map

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-6


def _as_roles(roles):
    return tuple(r if isinstance(r, AxisRole) else AxisRole(r) for r in roles)


def heisenberg_roles(n):
    return (AxisRole.z,) * (2 * n) + (AxisRole.u,)


def plane_roles(n):
    return (AxisRole.z,) * (2 * n)


def kernel_roles(n):
    return (AxisRole.x,) * n + (AxisRole.y,) * n


class GridFunction(object):
    """ Complex samples on a symmetric uniform box grid

    Parameters
    ----------
    values: array-like
        Samples with one array axis per grid axis (row-major).
    extents: sequence of float
        Half-width of every axis.
    roles: sequence of AxisRole or str
        Role of every axis: ``z`` and ``u`` for H_n, ``z`` only for R^2n,
        ``x``/``y`` for kernels on R^n x R^n.
    flags: iterable of str [()]
        Soft diagnostics such as ``'tail_mass'``.
    mu: float [None]
        Representation parameter for kernels and plane functions.
    """

    def __init__(self, values, extents, roles, flags=(), mu=None):
        values = np.array(values, dtype=complex)
        extents = tuple(float(e) for e in extents)
        roles = _as_roles(roles)
        if values.ndim != len(extents) or values.ndim != len(roles):
            raise GridMismatchError(
                "values have %d axes but %d extents and %d roles were given"
                % (values.ndim, len(extents), len(roles)))
        if any(d % 2 == 0 for d in values.shape):
            raise GridMismatchError(
                "every axis needs an odd node count, got %s" % (values.shape,))
        if any(not e > 0 for e in extents):
            raise GridMismatchError("extents must be positive")
        values.setflags(write=False)
        self.values = values
        self.extents = extents
        self.roles = roles
        self.flags = frozenset(flags)
        self.mu = mu

    @classmethod
    def from_function(cls, func, dims, extents, roles, mu=None):
        """ Sample ``func(*coordinate_arrays)`` on the grid """
        axes = [_axis(d, e) for d, e in zip(dims, extents)]
        mesh = np.meshgrid(*axes, indexing='ij')
        values = np.broadcast_to(func(*mesh), tuple(dims))
        return cls(values, extents, roles, mu=mu)

    @property
    def dims(self):
        return self.values.shape

    @property
    def spacings(self):
        return tuple(2.0 * e / d for e, d in zip(self.extents, self.dims))

    @property
    def axes(self):
        return [_axis(d, e) for d, e in zip(self.dims, self.extents)]

    @property
    def n(self):
        count = sum(1 for r in self.roles if r != AxisRole.u)
        return count // 2

    @property
    def has_center(self):
        return AxisRole.u in self.roles

    def mesh(self):
        return np.meshgrid(*self.axes, indexing='ij')

    def same_grid(self, other):
        return (self.dims == other.dims and self.roles == other.roles
                and np.allclose(self.extents, other.extents, rtol=1e-12))

    def check_same_grid(self, other):
        if not self.same_grid(other):
            raise GridMismatchError(
                "grids differ: dims %s vs %s, extents %s vs %s"
                % (self.dims, other.dims, self.extents, other.extents))

    def with_values(self, values, flags=None, mu=None):
        return GridFunction(values, self.extents, self.roles,
                            self.flags if flags is None else flags,
                            self.mu if mu is None else mu)

    def __add__(self, other):
        self.check_same_grid(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other):
        self.check_same_grid(other)
        return self.with_values(self.values - other.values)

    def __mul__(self, scalar):
        return self.with_values(self.values * scalar)

    __rmul__ = __mul__

    def conj(self):
        return self.with_values(np.conj(self.values))

    def reflect(self):
        """ f(-coordinates); on H_n this is f(g^{-1}) """
        return self.with_values(self.values[(slice(None, None, -1),) * self.values.ndim])

    def involution(self):
        """ f*(g) = conj f(g^{-1}) """
        return self.reflect().conj()

    # --- quadrature ---------------------------------------------------------

    def weights(self):
        """ Product trapezoid weights """
        return trapezoid_weights(self.dims, self.spacings)

    def integrate(self):
        return complex(np.sum(self.weights() * self.values))

    def norm(self, p=2):
        absval = np.abs(self.values)
        if p == np.inf:
            return float(np.max(absval))
        return float(np.sum(self.weights() * absval ** p) ** (1.0 / p))

    def inner(self, other):
        """ Hermitian pairing <self, other> = integral of self * conj(other) """
        self.check_same_grid(other)
        return complex(np.sum(self.weights() * self.values * np.conj(other.values)))

    def tail_mass(self, width=1):
        """ Fraction of the L^1 mass carried by the outer ``width`` layers """
        absval = np.abs(self.values) * self.weights()
        total = float(np.sum(absval))
        if total == 0:
            return 0.0
        inner = absval[tuple(slice(width, d - width) for d in self.dims)]
        return float((total - np.sum(inner)) / total)

    def flag_tail(self, tolerance=TAIL_TOLERANCE):
        tail = self.tail_mass()
        if tail > tolerance:
            logger.warning("Tail mass %.3g exceeds tolerance %.3g", tail, tolerance)
            return self.with_values(self.values, flags=self.flags | {'tail_mass'})
        return self

    # --- interpolation and derivatives ---------------------------------------

    def interpolate(self, points):
        """ Multilinear interpolation at ``points`` (shape (..., ndim)); zero outside """
        interp = RegularGridInterpolator(self.axes, self.values, method='linear',
                                         bounds_error=False, fill_value=0.0)
        return interp(points)

    def derivative(self, axis, order=1):
        """ Centred second-order differences, one-sided at the boundary """
        values = self.values
        h = self.spacings[axis]
        for _ in range(order):
            values = np.gradient(values, h, axis=axis, edge_order=2)
        return self.with_values(values)

    def spectral_derivative(self, axis, order=1):
        """ FFT differentiation along ``axis``; assumes decay at the box edge """
        d = self.dims[axis]
        freq = np.fft.fftfreq(d, self.spacings[axis])
        shape = [1] * self.values.ndim
        shape[axis] = d
        factor = ((2j * np.pi * freq) ** order).reshape(shape)
        shifted = np.fft.ifftshift(self.values, axes=axis)
        out = np.fft.ifft(np.fft.fft(shifted, axis=axis) * factor, axis=axis)
        return self.with_values(np.fft.fftshift(out, axes=axis))

    # --- persistence -------------------------------------------------------------

    def header(self):
        head = {'n': self.n, 'dims': list(self.dims), 'extents': list(self.extents),
                'axis_roles': [r.value for r in self.roles],
                'endianness': 'little', 'dtype': 'complex128'}
        if self.mu is not None:
            head['mu'] = self.mu
        return head

    def to_bytes(self):
        head = json.dumps(self.header(), sort_keys=True).encode('utf-8') + b'\n'
        return head + self.values.astype('<c16').tobytes(order='C')

    @classmethod
    def from_bytes(cls, data):
        try:
            newline = data.index(b'\n')
            head = json.loads(data[:newline].decode('utf-8'))
        except ValueError:
            raise GridMismatchError("not a grid file: malformed header")
        values = np.frombuffer(data[newline + 1:], dtype='<c16')
        expected = int(np.prod(head['dims']))
        if values.size != expected:
            raise GridMismatchError("file holds %d samples, header expects %d"
                                    % (values.size, expected))
        return cls(values.reshape(head['dims']), head['extents'],
                   head['axis_roles'], mu=head.get('mu'))

    def to_csv(self):
        out = io.StringIO()
        names = _coordinate_names(self.roles)
        out.write(','.join(names + ['re', 'im']) + '\n')
        coords = [m.ravel() for m in self.mesh()]
        flat = self.values.ravel()
        for idx in range(flat.size):
            row = ['%.17g' % c[idx] for c in coords]
            row += ['%.17g' % flat[idx].real, '%.17g' % flat[idx].imag]
            out.write(','.join(row) + '\n')
        return out.getvalue()

    def save(self, path, format='grid'):
        """ Write the grid file format (``'grid'``) or CSV (``'csv'``) """
        if format == 'csv':
            with open(path, 'w') as f:
                f.write(self.to_csv())
        else:
            with open(path, 'wb') as f:
                f.write(self.to_bytes())

    @classmethod
    def load(cls, path):
        with open(path, 'rb') as f:
            return cls.from_bytes(f.read())

    def __repr__(self):
        return "<GridFunction dims=%s extents=%s roles=%s>" % (
            self.dims, self.extents, ''.join(r.value for r in self.roles))


class KernelFunction(GridFunction):
    """ Samples of an integral kernel K(x, y) on R^n x R^n at parameter mu """

    def __init__(self, values, extents, mu, flags=()):
        n = np.ndim(values) // 2
        super(KernelFunction, self).__init__(values, extents, kernel_roles(n),
                                             flags=flags, mu=mu)

    def matrix(self):
        """ The kernel as a (d^n, d^n) matrix """
        size = int(np.prod(self.dims[:self.n]))
        return self.values.reshape(size, size)

    def cell(self):
        return float(np.prod(self.spacings[:self.n]))

    def hs_norm(self):
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2)) * self.cell())


def _coordinate_names(roles):
    names = []
    counts = {}
    for role in roles:
        counts[role] = counts.get(role, 0) + 1
        names.append('%s%d' % (role.value, counts[role]))
    return names


def _axis(d, extent):
    h = 2.0 * extent / d
    return (np.arange(d) - d // 2) * h


def trapezoid_weights(dims, spacings):
    """ Tensor product of 1-D trapezoid weights

    >>> trapezoid_weights((3,), (1.0,)).tolist()
    [0.5, 1.0, 0.5]
    """
    total = np.ones(())
    for d, h in zip(dims, spacings):
        w = np.full(d, h)
        w[0] = w[-1] = 0.5 * h
        total = np.multiply.outer(total, w)
    return total


def _shift_block(values, offsets):
    """ values[k - offset] on the same index range, zero where undefined """
    out = np.zeros_like(values)
    src = []
    dst = []
    for off, d in zip(offsets, values.shape):
        if off >= 0:
            dst.append(slice(off, d))
            src.append(slice(0, d - off))
        else:
            dst.append(slice(0, d + off))
            src.append(slice(-off, d))
    out[tuple(dst)] = values[tuple(src)]
    return out


def _shift_u(values, shift, h):
    """ values(u - shift) along the last axis by a Fourier phase; periodic in u """
    freq = np.fft.fftfreq(values.shape[-1], h)
    phase = np.exp(-2j * np.pi * freq * shift[..., None])
    return np.fft.ifft(np.fft.fft(values, axis=-1) * phase, axis=-1)


def convolve(f1, f2, nthreads=None, chunk=64):
    """ Group convolution f1 * f2 (g) = integral of f1(h) f2(h^{-1} g) dh

    The z-offset z - z' lands on grid nodes. Along the centre the integral
    is a discrete convolution, moved by the fractional shift <z', z>/2
    with an FFT phase.

    Parameters
    ----------
    f1, f2: GridFunction
        Samples on one common H_n grid (z axes then u).
    nthreads: int [None]
        Worker threads for the loop over source nodes.
    chunk: int [64]
        Source nodes per work item.
    """
    f1.check_same_grid(f2)
    if not f1.has_center or f1.roles[-1] != AxisRole.u:
        raise GridMismatchError("convolve needs H_n grids with the u axis last")
    zdims = f1.dims[:-1]
    hu = f1.spacings[-1]
    zaxes = f1.axes[:-1]
    zmesh = np.stack(np.meshgrid(*zaxes, indexing='ij'), axis=-1)
    zweights = trapezoid_weights(zdims, f1.spacings[:-1])
    uweights = trapezoid_weights(f1.dims[-1:], f1.spacings[-1:])
    centre = np.array([d // 2 for d in zdims])
    sources = [idx for idx in np.ndindex(*zdims)
               if np.any(f1.values[idx] != 0)]

    def work(block):
        acc = np.zeros(f1.dims, dtype=complex)
        for idx in block:
            zsrc = zmesh[idx]
            column = f1.values[idx] * uweights * zweights[idx]
            moved = _shift_block(f2.values, tuple(np.array(idx) - centre))
            conv = fftconvolve(moved, np.broadcast_to(column, moved.shape), mode='same', axes=-1)
            shift = 0.5 * np.tensordot(zmesh, _symplectic_dual(zsrc), axes=([-1], [0]))
            acc += _shift_u(conv, shift, hu)
        return acc

    blocks = [sources[i:i + chunk] for i in range(0, len(sources), chunk)]
    logger.debug("Convolving over %d source nodes in %d blocks", len(sources), len(blocks))
    total = np.zeros(f1.dims, dtype=complex)
    for part in parallel_map(work, blocks, nthreads):
        total += part
    return f1.with_values(total, flags=f1.flags | f2.flags).flag_tail()


def _symplectic_dual(w):
    """ Vector v with z . v = <w, z> """
    n = len(w) // 2
    return np.concatenate([-w[n:], w[:n]])

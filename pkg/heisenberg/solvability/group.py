# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Heisenberg group arithmetic and Koranyi geometry.

Points are ``(z, u)`` with ``z = (x_1..x_n, y_1..y_n)``; the product is

    (z, u)(z', u') = (z + z', u + u' + <z, z'>/2),   <z, w> = z^T J w.

Arithmetic is generic over the coordinate type, so Fractions and sympy
rationals stay exact while floats and numpy arrays are vectorised.
"""

from collections import namedtuple
from fractions import Fraction
import logging

import numpy as np
import sympy as sp

from .exceptions import DimensionMismatchError, InvalidConfigError

logger = logging.getLogger(__name__)


def standard_J(n, exact=False):
    """ The matrix J = [[0, I], [-I, 0]] of size 2n """
    if exact:
        return sp.ImmutableMatrix(sp.BlockMatrix([[sp.zeros(n), sp.eye(n)],
                                                  [-sp.eye(n), sp.zeros(n)]]).as_explicit())
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def symplectic_form(z, w):
    """ <z, w> = x.w_y - y.w_x, vectorised over leading axes of arrays

    >>> symplectic_form((1, 0), (0, 1))
    1
    """
    if isinstance(z, np.ndarray) or isinstance(w, np.ndarray):
        z = np.asarray(z)
        w = np.asarray(w)
        n = z.shape[-1] // 2
        return (np.sum(z[..., :n] * w[..., n:], axis=-1)
                - np.sum(z[..., n:] * w[..., :n], axis=-1))
    n = len(z) // 2
    return (sum(z[j] * w[n + j] for j in range(n))
            - sum(z[n + j] * w[j] for j in range(n)))


class GroupPoint(object):
    """ An element (z, u) of H_n

    Parameters
    ----------
    z: sequence
        2n coordinates, x-block first.
    u: scalar
        Central coordinate.
    """
    __slots__ = ('z', 'u')

    def __init__(self, z, u=0):
        z = tuple(z)
        if len(z) % 2:
            raise DimensionMismatchError(
                "z must have even length, got %d" % len(z))
        for v in z + (u,):
            if isinstance(v, float) and not np.isfinite(v):
                raise InvalidConfigError("coordinates must be finite")
        object.__setattr__(self, 'z', z)
        object.__setattr__(self, 'u', u)

    def __setattr__(self, name, value):
        raise AttributeError("GroupPoint is immutable")

    @classmethod
    def identity(cls, n):
        return cls((0,) * (2 * n), 0)

    @classmethod
    def from_xyu(cls, x, y, u):
        return cls(tuple(x) + tuple(y), u)

    @property
    def n(self):
        return len(self.z) // 2

    @property
    def x(self):
        return self.z[:self.n]

    @property
    def y(self):
        return self.z[self.n:]

    def as_tuple(self):
        return self.z + (self.u,)

    def __mul__(self, other):
        return multiply(self, other)

    def __eq__(self, other):
        return (isinstance(other, GroupPoint) and self.z == other.z
                and self.u == other.u)

    def __hash__(self):
        return hash(self.as_tuple())

    def __iter__(self):
        return iter(self.as_tuple())

    def __repr__(self):
        return "GroupPoint(z=%r, u=%r)" % (self.z, self.u)


def _check_same_n(g, h):
    if len(g.z) != len(h.z):
        raise DimensionMismatchError(
            "cannot combine points of H_%d and H_%d" % (g.n, h.n))


def _half(values):
    if any(isinstance(v, Fraction) for v in values):
        return Fraction(1, 2)
    if any(isinstance(v, sp.Basic) for v in values):
        return sp.Rational(1, 2)
    return 0.5


def multiply(g, h):
    """ Group product g.h

    >>> multiply(GroupPoint((1, 0), 0), GroupPoint((0, 1), 0)).u
    0.5
    """
    _check_same_n(g, h)
    z = tuple(a + b for a, b in zip(g.z, h.z))
    half = _half(g.as_tuple() + h.as_tuple())
    return GroupPoint(z, g.u + h.u + half * symplectic_form(g.z, h.z))


def inverse(g):
    """ (z, u)^{-1} = (-z, -u) """
    return GroupPoint(tuple(-v for v in g.z), -g.u)


def koranyi_norm(g):
    """ |(z, u)| = (|z|^4 + 16 u^2)^{1/4}

    >>> koranyi_norm(GroupPoint((0, 0), 1))
    2.0
    """
    r2 = float(sum(float(v) ** 2 for v in g.z))
    return (r2 ** 2 + 16.0 * float(g.u) ** 2) ** 0.25


def koranyi_distance(g, h):
    """ Left-invariant distance |h^{-1} g| """
    return koranyi_norm(multiply(inverse(h), g))


def dilate(r, g):
    """ delta_r(z, u) = (r z, r^2 u) """
    if not r > 0:
        raise InvalidConfigError("dilation factor must be positive, got %r" % (r,))
    return GroupPoint(tuple(r * v for v in g.z), r * r * g.u)


def theta(g):
    """ Involution (x, y, u) -> (x, -y, -u); an automorphism of H_n """
    return GroupPoint(tuple(g.x) + tuple(-v for v in g.y), -g.u)


def reflect_x(g):
    """ Automorphism (x, y, u) -> (-x, y, -u) """
    return GroupPoint(tuple(-v for v in g.x) + tuple(g.y), -g.u)


def symplectic_action(T, g):
    """ Automorphism (z, u) -> (T z, u) for T in Sp(n, R) """
    if isinstance(T, sp.MatrixBase):
        z = tuple(T * sp.Matrix(g.z))
    else:
        z = tuple(np.asarray(T, dtype=float).dot(np.asarray(g.z, dtype=float)))
    if len(z) != len(g.z):
        raise DimensionMismatchError("T does not act on R^%d" % len(g.z))
    return GroupPoint(z, g.u)


def conjugate(g, h):
    """ Inner automorphism h -> g h g^{-1} """
    return multiply(multiply(g, h), inverse(g))


# --- vectorised helpers -----------------------------------------------------

def multiply_arrays(z1, u1, z2, u2):
    """ Product of stacked points; ``z`` arrays carry coordinates on the last axis """
    return z1 + z2, u1 + u2 + 0.5 * symplectic_form(z1, z2)


def koranyi_norm_arrays(z, u):
    r2 = np.sum(np.asarray(z) ** 2, axis=-1)
    return (r2 ** 2 + 16.0 * np.asarray(u) ** 2) ** 0.25


def random_points(rng, n, count, scale=1.0):
    """ ``count`` Gaussian points of H_n as (z, u) arrays """
    return (scale * rng.standard_normal((count, 2 * n)),
            scale * rng.standard_normal(count))


def triangle_defect(rng, n=1, count=10000, scale=1.0):
    """ max over random pairs of |gh| - |g| - |h| (nonpositive when the
    triangle inequality holds) """
    z1, u1 = random_points(rng, n, count, scale)
    z2, u2 = random_points(rng, n, count, scale)
    z, u = multiply_arrays(z1, u1, z2, u2)
    defect = (koranyi_norm_arrays(z, u) - koranyi_norm_arrays(z1, u1)
              - koranyi_norm_arrays(z2, u2))
    return float(np.max(defect))


BallVolumeFit = namedtuple('BallVolumeFit', 'radii volumes exponent')


def ball_volume_fit(n=1, radii=(0.5, 1.0, 2.0, 4.0), samples=200000, seed=0):
    """ Fit the growth exponent of Koranyi ball volumes

    The ball B_r sits inside the box |z_i| <= r, |u| <= r^2/4; each radius
    gets an independent uniform sample of that box and the exponent is the
    slope of log volume against log r.

    Returns
    -------
    BallVolumeFit
        ``exponent`` should be close to the homogeneous dimension 2n + 2.
    """
    rng = np.random.default_rng(seed)
    volumes = []
    for r in radii:
        z = rng.uniform(-r, r, size=(samples, 2 * n))
        u = rng.uniform(-r * r / 4.0, r * r / 4.0, size=samples)
        inside = np.mean(koranyi_norm_arrays(z, u) <= r)
        box = (2.0 * r) ** (2 * n) * (r * r / 2.0)
        volumes.append(box * inside)
        logger.debug("Ball radius %g: inside fraction %g", r, inside)
    slope = np.polyfit(np.log(radii), np.log(volumes), 1)[0]
    logger.info("Fitted ball-volume exponent %.4f for n=%d", slope, n)
    return BallVolumeFit(tuple(radii), tuple(volumes), float(slope))

# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Symbolic Gaussian-times-polynomial test functions and the left-invariant
vector fields acting on them.
"""

import logging

import numpy as np
import sympy as sp

from .exceptions import DimensionMismatchError
from .grid import GridFunction, heisenberg_roles, plane_roles
from .group import GroupPoint

logger = logging.getLogger(__name__)


def coordinates(n):
    """ Real sympy symbols (x_1..x_n, y_1..y_n, u) """
    xs = sp.symbols('x1:%d' % (n + 1), real=True)
    ys = sp.symbols('y1:%d' % (n + 1), real=True)
    return tuple(xs) + tuple(ys) + (sp.Symbol('u', real=True),)


class TestFunction(object):
    """ A closed-form function on H_n (``plane=False``) or R^2n

    Parameters
    ----------
    expr: sympy expression
        In the symbols returned by :func:`coordinates`.
    n: int
    plane: bool [False]
        True when the function lives on R^2n and ignores ``u``.
    """
    __test__ = False  # not a pytest class

    def __init__(self, expr, n, plane=False):
        self.expr = sp.sympify(expr)
        self.n = n
        self.plane = plane
        self._numeric = None

    @property
    def symbols(self):
        syms = coordinates(self.n)
        return syms[:-1] if self.plane else syms

    @property
    def z_symbols(self):
        return coordinates(self.n)[:-1]

    @property
    def u_symbol(self):
        return coordinates(self.n)[-1]

    # --- constructors ----------------------------------------------------------

    @classmethod
    def gaussian(cls, n, a=sp.pi, b=sp.pi, polynomial=1, plane=False):
        """ polynomial * exp(-a|z|^2 - b u^2) """
        syms = coordinates(n)
        r2 = sum(s ** 2 for s in syms[:-1])
        exponent = -a * r2 if plane else -a * r2 - b * syms[-1] ** 2
        return cls(polynomial * sp.exp(exponent), n, plane)

    @classmethod
    def random_gaussian_polynomial(cls, n, rng, degree=2, plane=False):
        """ Gaussian times a random polynomial with small integer coefficients """
        syms = coordinates(n)
        active = syms[:-1] if plane else syms
        monomials = sorted(sp.itermonomials(active, degree), key=sp.default_sort_key)
        coeffs = rng.integers(-3, 4, size=len(monomials))
        if not np.any(coeffs):
            coeffs[0] = 1
        poly = sum(int(c) * m for c, m in zip(coeffs, monomials))
        scale = sp.Rational(int(rng.integers(2, 5)), 2)
        return cls.gaussian(n, a=sp.pi * scale, b=sp.pi * scale, polynomial=poly,
                            plane=plane)

    # --- evaluation ------------------------------------------------------------

    def numeric(self):
        if self._numeric is None:
            self._numeric = sp.lambdify(self.symbols, self.expr, modules='numpy')
        return self._numeric

    def evaluate(self, *arrays):
        arrays = [np.asarray(a, dtype=float) for a in arrays]
        shape = np.broadcast(*arrays).shape if arrays else ()
        return np.broadcast_to(np.asarray(self.numeric()(*arrays), dtype=complex), shape)

    def __call__(self, point):
        if isinstance(point, GroupPoint):
            point = point.as_tuple()
        point = tuple(point)
        if self.plane and len(point) == 2 * self.n + 1:
            point = point[:-1]
        if len(point) != len(self.symbols):
            raise DimensionMismatchError("expected %d coordinates, got %d"
                                         % (len(self.symbols), len(point)))
        return self.expr.subs(dict(zip(self.symbols, point)))

    def sample(self, dims, extents):
        """ The GridFunction of samples on the given box """
        roles = plane_roles(self.n) if self.plane else heisenberg_roles(self.n)
        if np.isscalar(dims):
            dims = (int(dims),) * len(roles)
        if np.isscalar(extents):
            extents = (float(extents),) * len(roles)
        return GridFunction.from_function(self.evaluate, dims, extents, roles)

    # --- algebra -----------------------------------------------------------------

    def with_expr(self, expr):
        return TestFunction(expr, self.n, self.plane)

    def __add__(self, other):
        return self.with_expr(self.expr + _expr(other))

    def __sub__(self, other):
        return self.with_expr(self.expr - _expr(other))

    def __mul__(self, other):
        return self.with_expr(self.expr * _expr(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_expr(-self.expr)

    def diff(self, symbol, order=1):
        return self.with_expr(sp.diff(self.expr, symbol, order))

    def is_zero(self):
        """ Exact zero test after expansion and simplification """
        expr = sp.expand(self.expr)
        if expr == 0:
            return True
        return sp.simplify(expr) == 0

    def equals(self, other):
        return (self - other).is_zero()

    # --- transformations ---------------------------------------------------------

    def compose_linear(self, T):
        """ (f o T)(z, u) = f(T z, u) """
        T = sp.Matrix(T)
        z = sp.Matrix(self.z_symbols)
        image = T * z
        return self.with_expr(self.expr.subs(dict(zip(self.z_symbols, image)),
                                             simultaneous=True))

    def dilate(self, r):
        """ f o delta_r """
        mapping = {s: r * s for s in self.z_symbols}
        if not self.plane:
            mapping[self.u_symbol] = r ** 2 * self.u_symbol
        return self.with_expr(self.expr.subs(mapping, simultaneous=True))

    def left_translate(self, g):
        """ (lambda_g f)(h) = f(g^{-1} h) """
        if self.plane:
            raise DimensionMismatchError("left translation needs a function on H_n")
        gz = [sp.nsimplify(v) for v in g.z]
        gu = sp.nsimplify(g.u)
        zs = self.z_symbols
        n = self.n
        pairing = sum(-gz[j] * zs[n + j] + gz[n + j] * zs[j] for j in range(n))
        mapping = {s: s - c for s, c in zip(zs, gz)}
        mapping[self.u_symbol] = self.u_symbol - gu + sp.Rational(1, 2) * pairing
        return self.with_expr(self.expr.subs(mapping, simultaneous=True))

    def right_translate(self, g):
        """ (rho_g f)(h) = f(h g) """
        if self.plane:
            raise DimensionMismatchError("right translation needs a function on H_n")
        gz = [sp.nsimplify(v) for v in g.z]
        gu = sp.nsimplify(g.u)
        zs = self.z_symbols
        n = self.n
        pairing = sum(zs[j] * gz[n + j] - zs[n + j] * gz[j] for j in range(n))
        mapping = {s: s + c for s, c in zip(zs, gz)}
        mapping[self.u_symbol] = self.u_symbol + gu + sp.Rational(1, 2) * pairing
        return self.with_expr(self.expr.subs(mapping, simultaneous=True))

    def is_polyradial(self):
        """ True when f depends on z only through |z_1|..|z_n|

        Tested by the rotation generators x_j d/dy_j - y_j d/dx_j.
        """
        xs, ys = self.z_symbols[:self.n], self.z_symbols[self.n:]
        return all(sp.simplify(x * sp.diff(self.expr, y) - y * sp.diff(self.expr, x)) == 0
                   for x, y in zip(xs, ys))

    def reflect(self):
        """ f(g^{-1}) """
        return self.with_expr(self.expr.subs({s: -s for s in self.symbols},
                                             simultaneous=True))

    def __repr__(self):
        return "TestFunction(%s, n=%d%s)" % (self.expr, self.n,
                                              ', plane' if self.plane else '')


def _expr(value):
    return value.expr if isinstance(value, TestFunction) else sp.sympify(value)


def field_apply(index, f):
    """ Apply W_index to a TestFunction on H_n

    ``index`` runs over 0..n-1 for X_j, n..2n-1 for Y_j and 2n for U.
    """
    n = f.n
    if f.plane:
        raise DimensionMismatchError("group vector fields act on functions on H_n")
    syms = coordinates(n)
    u = syms[-1]
    du = sp.diff(f.expr, u)
    if index == 2 * n:
        return f.with_expr(du)
    if index < n:
        return f.with_expr(sp.diff(f.expr, syms[index]) - syms[n + index] * du / 2)
    j = index - n
    return f.with_expr(sp.diff(f.expr, syms[index]) + syms[j] * du / 2)

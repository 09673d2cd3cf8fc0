# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Differential operators on R^m with polynomial coefficients, stored in
normal order as sums of c(mu) x^beta d^gamma. Schrödinger symbols live on
R^n, twisted symbols on R^2n.
"""

from itertools import product
import logging
from math import comb

import numpy as np
import sympy as sp

from .exceptions import DimensionMismatchError
from .operators import FieldPolynomial, OperatorSpec

logger = logging.getLogger(__name__)

MU = sp.Symbol('mu', real=True, nonzero=True)


def _falling(b, d):
    out = 1
    for i in range(d):
        out *= (b - i)
    return out


class DifferentialOperator(object):
    """ sum over (beta, gamma) of c(mu) x^beta d^gamma on R^m

    Parameters
    ----------
    m: int
        Number of variables.
    terms: dict
        ``{(beta, gamma): coefficient}`` with multi-index tuples.
    names: tuple of str [None]
        Variable names used for display and symbolic application.
    """

    def __init__(self, m, terms=None, names=None):
        self.m = m
        self.names = tuple(names) if names else tuple('x%d' % (i + 1) for i in range(m))
        clean = {}
        for (beta, gamma), c in (terms or {}).items():
            key = (tuple(beta), tuple(gamma))
            clean[key] = clean.get(key, 0) + sp.sympify(c)
        self.terms = {k: sp.expand(c) for k, c in clean.items() if sp.expand(c) != 0}

    @property
    def symbols(self):
        return tuple(sp.Symbol(name, real=True) for name in self.names)

    @classmethod
    def identity(cls, m, names=None):
        return cls(m, {((0,) * m, (0,) * m): 1}, names)

    @classmethod
    def scalar(cls, m, value, names=None):
        return cls(m, {((0,) * m, (0,) * m): value}, names)

    @classmethod
    def derivative(cls, m, axis, names=None):
        gamma = [0] * m
        gamma[axis] = 1
        return cls(m, {((0,) * m, tuple(gamma)): 1}, names)

    @classmethod
    def coordinate(cls, m, axis, names=None):
        beta = [0] * m
        beta[axis] = 1
        return cls(m, {(tuple(beta), (0,) * m): 1}, names)

    def _like(self, terms):
        return DifferentialOperator(self.m, terms, self.names)

    def _check(self, other):
        if not isinstance(other, DifferentialOperator):
            return DifferentialOperator.scalar(self.m, other, self.names)
        if other.m != self.m:
            raise DimensionMismatchError("operators on R^%d and R^%d" % (self.m, other.m))
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        """ Composition self o other (or scaling by a number) """
        if not isinstance(other, DifferentialOperator):
            return self._like({k: c * other for k, c in self.terms.items()})
        other = self._check(other)
        terms = {}
        for (b1, g1), c1 in self.terms.items():
            for (b2, g2), c2 in other.terms.items():
                for delta in product(*[range(min(g, b) + 1) for g, b in zip(g1, b2)]):
                    factor = 1
                    for g, b, d in zip(g1, b2, delta):
                        factor *= comb(g, d) * _falling(b, d)
                    if factor == 0:
                        continue
                    beta = tuple(x + y - d for x, y, d in zip(b1, b2, delta))
                    gamma = tuple(x - d + y for x, y, d in zip(g1, g2, delta))
                    terms[(beta, gamma)] = terms.get((beta, gamma), 0) + factor * c1 * c2
        return self._like(terms)

    def __rmul__(self, other):
        return self._like({k: other * c for k, c in self.terms.items()})

    def __pow__(self, power):
        out = DifferentialOperator.identity(self.m, self.names)
        for _ in range(power):
            out = out * self
        return out

    def bracket(self, other):
        return self * other - other * self

    def equals(self, other):
        diff = self - self._check(other)
        return all(sp.simplify(c) == 0 for c in diff.terms.values())

    def order(self):
        return max((sum(g) for (_, g) in self.terms), default=0)

    def subs_mu(self, value):
        return self._like({k: c.subs(MU, value) for k, c in self.terms.items()})

    def coefficients(self, mu=None):
        """ Terms as (beta, gamma, complex coefficient) at a numeric mu """
        out = []
        for (beta, gamma), c in sorted(self.terms.items()):
            value = c.subs(MU, mu) if mu is not None else c
            out.append((beta, gamma, complex(value)))
        return out

    def apply(self, expr, mu=None):
        """ Apply to a sympy expression in the operator's variables """
        syms = self.symbols
        total = 0
        for (beta, gamma), c in self.terms.items():
            term = expr
            for s, g in zip(syms, gamma):
                if g:
                    term = sp.diff(term, s, g)
            mono = sp.Mul(*[s ** b for s, b in zip(syms, beta)])
            coeff = c if mu is None else c.subs(MU, mu)
            total += coeff * mono * term
        return total

    def apply_grid(self, values, axes, mu):
        """ Apply at numeric ``mu`` to samples on a tensor grid (FFT derivatives) """
        values = np.asarray(values, dtype=complex)
        if values.ndim != self.m:
            raise DimensionMismatchError("need %d-dimensional samples" % self.m)
        mesh = np.meshgrid(*axes, indexing='ij')
        spectra = [2j * np.pi * np.fft.fftfreq(len(a), a[1] - a[0]) for a in axes]
        total = np.zeros_like(values)
        cache = {}
        for beta, gamma, c in self.coefficients(mu):
            if gamma not in cache:
                cache[gamma] = _spectral(values, gamma, spectra)
            mono = np.ones(values.shape)
            for grid, b in zip(mesh, beta):
                if b:
                    mono = mono * grid ** b
            total = total + c * mono * cache[gamma]
        return total

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for (beta, gamma), c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0][1]), kv[0])):
            factors = []
            for name, b in zip(self.names, beta):
                if b:
                    factors.append(name if b == 1 else '%s^%d' % (name, b))
            for name, g in zip(self.names, gamma):
                if g:
                    factors.append('d/d%s' % name if g == 1 else 'd^%d/d%s^%d' % (g, name, g))
            parts.append('(%s)%s' % (c, ''.join('*' + f for f in factors)))
        return ' + '.join(parts)

    __repr__ = __str__


def _spectral(values, gamma, spectra):
    out = values
    for axis, (g, k) in enumerate(zip(gamma, spectra)):
        if not g:
            continue
        shape = [1] * values.ndim
        shape[axis] = len(k)
        shifted = np.fft.ifftshift(out, axes=axis)
        spec = np.fft.fft(shifted, axis=axis) * (k.reshape(shape) ** g)
        out = np.fft.fftshift(np.fft.ifft(spec, axis=axis), axes=axis)
    return out


def _polynomial(P):
    if isinstance(P, OperatorSpec):
        return P.to_polynomial()
    if isinstance(P, FieldPolynomial):
        return P
    raise TypeError("expected an OperatorSpec or FieldPolynomial, got %r" % type(P))


def _compose_words(poly, letters, m, names):
    total = DifferentialOperator(m, {}, names)
    for word, coeff in poly.terms.items():
        term = DifferentialOperator.scalar(m, coeff, names)
        for a in word:
            term = term * letters[a]
        total = total + term
    return total


def operator_symbol(P):
    """ P-hat(pi_mu) on R^n: X_j -> d/dx_j, Y_j -> 2 pi i mu x_j, U -> 2 pi i mu

    Words are composed left to right, so the map is multiplicative.

    >>> str(operator_symbol(FieldPolynomial.letter(1, 'U')))
    '(2*I*pi*mu)'
    """
    poly = _polynomial(P)
    n = poly.n
    names = tuple('x%d' % (j + 1) for j in range(n))
    two_pi_i_mu = 2 * sp.pi * sp.I * MU
    letters = {}
    for j in range(n):
        letters[j] = DifferentialOperator.derivative(n, j, names)
        letters[n + j] = two_pi_i_mu * DifferentialOperator.coordinate(n, j, names)
    letters[2 * n] = DifferentialOperator.scalar(n, two_pi_i_mu, names)
    return _compose_words(poly, letters, n, names)


def twisted_symbol(P):
    """ P^mu on R^2n: X_j -> d/dx_j - i pi mu y_j, Y_j -> d/dy_j + i pi mu x_j,
    U -> 2 pi i mu """
    poly = _polynomial(P)
    n = poly.n
    names = tuple(['x%d' % (j + 1) for j in range(n)] + ['y%d' % (j + 1) for j in range(n)])
    m = 2 * n
    pi_i_mu = sp.pi * sp.I * MU
    letters = {}
    for j in range(n):
        letters[j] = (DifferentialOperator.derivative(m, j, names)
                      - pi_i_mu * DifferentialOperator.coordinate(m, n + j, names))
        letters[n + j] = (DifferentialOperator.derivative(m, n + j, names)
                          + pi_i_mu * DifferentialOperator.coordinate(m, j, names))
    letters[2 * n] = DifferentialOperator.scalar(m, 2 * pi_i_mu, names)
    return _compose_words(poly, letters, m, names)


def dilation_exponent(symbol):
    """ q with D_{r^2 mu} o S_r = r^q S_r o D_mu, where S_r phi(x) = phi(r x)

    Returns None when the terms scale with different powers of r. The
    operator kernel then satisfies K^{r^2 mu}(x, y) = r^{q+n} K^mu(rx, ry).
    """
    r = sp.Symbol('r', positive=True)
    exponents = set()
    for (beta, gamma), c in symbol.terms.items():
        ratio = sp.simplify(c.subs(MU, r ** 2 * MU) * r ** sum(gamma) / (c * r ** sum(beta)))
        q = sp.simplify(sp.expand_log(sp.log(ratio), force=True) / sp.log(r))
        if q.free_symbols:
            return None
        exponents.add(q)
    if len(exponents) != 1:
        return None
    return exponents.pop()

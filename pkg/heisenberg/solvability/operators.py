# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Left-invariant operators on H_n.

A :class:`FieldPolynomial` is a noncommutative polynomial in the letters
W_0..W_{2n-1} = X_1..X_n, Y_1..Y_n and W_{2n} = U, with the relations
[W_a, W_b] = J_ab U and U central. An :class:`OperatorSpec` is the
second-order operator

    L = sum_jk a_jk W_j W_k + sum_j b_j W_j + i alpha U.
"""

import logging
import re

import numpy as np
import sympy as sp

from .exceptions import (ClassificationInputError, DimensionMismatchError,
                         InvalidConfigError, NonSymmetricMatrixError)
from .grid import GridFunction
from .group import standard_J
from .symbolic import TestFunction, field_apply
from .utils import is_exact, parse_matrix, parse_scalar

logger = logging.getLogger(__name__)

_LETTER_RE = re.compile(r'^([XYU])(\d*)$')


def letter_index(n, name):
    """ Index of a letter name such as ``'X1'``, ``'Y2'`` or ``'U'``

    >>> letter_index(2, 'Y1')
    2
    """
    if isinstance(name, (int, np.integer)):
        index = int(name)
    else:
        match = _LETTER_RE.match(name.strip())
        if not match:
            raise InvalidConfigError("unknown vector field %r" % (name,))
        kind, number = match.groups()
        if kind == 'U':
            return 2 * n
        j = int(number or 0)
        if not 1 <= j <= n:
            raise InvalidConfigError("field %s is out of range for H_%d" % (name, n))
        index = j - 1 if kind == 'X' else n + j - 1
    if not 0 <= index <= 2 * n:
        raise InvalidConfigError("field index %d is out of range for H_%d" % (index, n))
    return index


def letter_name(n, index):
    if index == 2 * n:
        return 'U'
    if index < n:
        return 'X%d' % (index + 1)
    return 'Y%d' % (index - n + 1)


def _bracket_coefficient(n, a, b):
    """ J_ab, the U-coefficient of [W_a, W_b] """
    if a == 2 * n or b == 2 * n:
        return 0
    if a < n and b == a + n:
        return 1
    if b < n and a == b + n:
        return -1
    return 0


class FieldPolynomial(object):
    """ Noncommutative polynomial in X_j, Y_j, U with sympy coefficients """

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        for word, coeff in (terms or {}).items():
            coeff = sp.nsimplify(coeff) if is_exact(coeff) else sp.sympify(coeff)
            if coeff != 0:
                word = tuple(int(a) for a in word)
                clean[word] = clean.get(word, 0) + coeff
        self.terms = {w: c for w, c in clean.items() if sp.expand(c) != 0}

    @classmethod
    def letter(cls, n, name):
        return cls(n, {(letter_index(n, name),): 1})

    @classmethod
    def scalar(cls, n, value):
        return cls(n, {(): value})

    def _check(self, other):
        if not isinstance(other, FieldPolynomial):
            other = FieldPolynomial.scalar(self.n, other)
        if other.n != self.n:
            raise DimensionMismatchError("polynomials over H_%d and H_%d"
                                         % (self.n, other.n))
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return FieldPolynomial(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return FieldPolynomial(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, FieldPolynomial):
            return FieldPolynomial(self.n, {w: c * other for w, c in self.terms.items()})
        other = self._check(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                terms[w1 + w2] = terms.get(w1 + w2, 0) + c1 * c2
        return FieldPolynomial(self.n, terms)

    def __rmul__(self, other):
        return FieldPolynomial(self.n, {w: other * c for w, c in self.terms.items()})

    def __pow__(self, power):
        out = FieldPolynomial.scalar(self.n, 1)
        for _ in range(power):
            out = out * self
        return out

    def bracket(self, other):
        return self * other - other * self

    def transpose(self):
        """ Formal transpose: reversed words with sign (-1)^length """
        return FieldPolynomial(self.n, {w[::-1]: (-1) ** len(w) * c
                                        for w, c in self.terms.items()})

    def normal_order(self):
        """ Canonical form with letters sorted (U last) via [W_a, W_b] = J_ab U """
        n = self.n
        pending = list(self.terms.items())
        done = {}
        while pending:
            word, coeff = pending.pop()
            for pos in range(len(word) - 1):
                a, b = word[pos], word[pos + 1]
                if a > b:
                    swapped = word[:pos] + (b, a) + word[pos + 2:]
                    pending.append((swapped, coeff))
                    j = _bracket_coefficient(n, a, b)
                    if j:
                        reduced = word[:pos] + (2 * n,) + word[pos + 2:]
                        pending.append((reduced, coeff * j))
                    break
            else:
                done[word] = done.get(word, 0) + coeff
        return FieldPolynomial(n, {w: sp.expand(c) for w, c in done.items()})

    def equals(self, other):
        diff = (self - self._check(other)).normal_order()
        return all(sp.simplify(c) == 0 for c in diff.terms.values())

    def is_zero(self):
        return self.equals(0)

    def order(self):
        return max((len(w) for w in self.terms), default=0)

    def homogeneous_degree(self):
        """ Common dilation degree (X, Y weight 1, U weight 2) or None """
        degrees = {sum(2 if a == 2 * self.n else 1 for a in w)
                   for w in self.normal_order().terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def apply(self, f):
        """ Apply to a TestFunction (exact) or a GridFunction (differences) """
        total = None
        for word, coeff in self.terms.items():
            g = f
            for a in reversed(word):
                g = vector_field_apply(a, g)
            g = g * coeff if isinstance(g, TestFunction) else g * complex(coeff)
            total = g if total is None else total + g
        if total is None:
            return f * 0
        return total

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            name = '*'.join(letter_name(self.n, a) for a in word) or '1'
            parts.append('(%s)*%s' % (self.terms[word], name))
        return ' + '.join(parts)

    __repr__ = __str__


def vector_field_apply(which, f):
    """ Apply X_j, Y_j or U to a TestFunction or GridFunction

    TestFunctions are differentiated exactly; GridFunctions use centred
    second-order differences.
    """
    index = letter_index(f.n, which)
    if isinstance(f, TestFunction):
        return field_apply(index, f)
    return _grid_field(index, f)


def _grid_field(index, f):
    n = f.n
    if not f.has_center:
        raise DimensionMismatchError("group vector fields need an H_n grid")
    uaxis = 2 * n
    du = f.derivative(uaxis)
    if index == 2 * n:
        return du
    mesh = f.mesh()
    if index < n:
        return f.with_values(f.derivative(index).values - 0.5 * mesh[n + index] * du.values)
    j = index - n
    return f.with_values(f.derivative(index).values + 0.5 * mesh[j] * du.values)


def _matrix(value, exact):
    if exact:
        return sp.ImmutableMatrix(value)
    return np.array(np.asarray(value, dtype=complex))


class OperatorSpec(object):
    """ L = sum a_jk W_j W_k + sum b_j W_j + i alpha U on H_n

    Parameters
    ----------
    A: 2n x 2n symmetric matrix (sympy for exact input, else array-like)
    alpha: scalar [0]
    first_order: sequence of 2n scalars [zeros]
    """

    def __init__(self, A, alpha=0, first_order=None):
        entries = list(A) if isinstance(A, sp.MatrixBase) else np.asarray(A, dtype=object).ravel()
        exact = all(is_exact(v) for v in entries)
        if first_order is not None:
            exact = exact and all(is_exact(v) for v in first_order)
        exact = exact and is_exact(alpha)
        if isinstance(A, sp.MatrixBase):
            shape = A.shape
        else:
            shape = np.shape(A)
        if len(shape) != 2 or shape[0] != shape[1] or shape[0] % 2:
            raise DimensionMismatchError("A must be 2n x 2n, got shape %s" % (shape,))
        self.n = shape[0] // 2
        if exact:
            self.A = sp.ImmutableMatrix(sp.Matrix(A).applyfunc(sp.nsimplify))
            self.alpha = sp.nsimplify(alpha)
            if self.A != self.A.T:
                raise NonSymmetricMatrixError("coefficient matrix must be symmetric")
        else:
            self.A = np.array(np.asarray(A, dtype=complex))
            self.alpha = complex(alpha)
            if not np.allclose(self.A, self.A.T, atol=1e-12):
                raise NonSymmetricMatrixError("coefficient matrix must be symmetric")
        if first_order is None:
            first_order = [0] * (2 * self.n)
        if len(first_order) != 2 * self.n:
            raise DimensionMismatchError("need %d first-order coefficients"
                                         % (2 * self.n))
        self.first_order = tuple(sp.nsimplify(b) if exact else complex(b)
                                 for b in first_order)
        self.exact = exact

    @classmethod
    def from_text(cls, n, A_text, alpha_text='0'):
        A = parse_matrix(A_text)
        size = A.shape[0]
        if size != 2 * n:
            raise ClassificationInputError(
                "matrix is %dx%d but n=%d needs %dx%d" % (size, size, n, 2 * n, 2 * n))
        return cls(A, parse_scalar(alpha_text))

    @classmethod
    def from_S(cls, S, alpha=0, first_order=None):
        """ Operator Delta_S + i alpha U with A = S J """
        if isinstance(S, sp.MatrixBase):
            n = S.shape[0] // 2
            A = S * standard_J(n, exact=True)
        else:
            S = np.asarray(S)
            A = S.dot(standard_J(S.shape[0] // 2))
        return cls(A, alpha, first_order)

    @property
    def S(self):
        """ S = -A J """
        if self.exact:
            return sp.ImmutableMatrix(-self.A * standard_J(self.n, exact=True))
        return -self.A.dot(standard_J(self.n))

    @property
    def is_real(self):
        if self.exact:
            return all(sp.im(v) == 0 for v in self.A)
        return bool(np.allclose(self.A.imag, 0, atol=0))

    @property
    def order(self):
        if any(v != 0 for v in (self.A if self.exact else self.A.ravel())):
            return 2
        if any(v != 0 for v in self.first_order):
            return 1
        return 0

    def to_polynomial(self):
        n = self.n
        terms = {}
        for j in range(2 * n):
            for k in range(2 * n):
                c = self.A[j, k]
                if c != 0:
                    terms[(j, k)] = c
        for j, b in enumerate(self.first_order):
            if b != 0:
                terms[(j,)] = b
        if self.alpha != 0:
            terms[(2 * n,)] = (sp.I if self.exact else 1j) * self.alpha
        return FieldPolynomial(n, terms)

    def transpose(self):
        return self.to_polynomial().transpose()

    def __repr__(self):
        return "OperatorSpec(n=%d, A=%s, alpha=%s)" % (self.n, self.A.tolist(), self.alpha)


def apply_operator(P, f):
    """ Apply an OperatorSpec (or FieldPolynomial) to a TestFunction or GridFunction """
    poly = P.to_polynomial() if isinstance(P, OperatorSpec) else P
    if poly.n != f.n:
        raise DimensionMismatchError("operator on H_%d applied to function on H_%d"
                                     % (poly.n, f.n))
    return poly.apply(f)


# --- named operators ---------------------------------------------------------

def kohn_laplacian(n):
    """ sum X_j^2 + Y_j^2 """
    return OperatorSpec(sp.eye(2 * n), 0)


def l_alpha(n, alpha):
    """ Kohn Laplacian plus i alpha U """
    return OperatorSpec(sp.eye(2 * n), alpha)


def delta_s(S, alpha=0):
    return OperatorSpec.from_S(S, alpha)


def lewy():
    """ Z = X + iY on H_1 """
    return OperatorSpec(sp.zeros(2), 0, [1, sp.I])


def z_tilde():
    """ Y + 2iX on H_1 """
    return OperatorSpec(sp.zeros(2), 0, [2 * sp.I, 1])


def type1_operator(lam, eps=1):
    """ (1 - lam^2) X^2 + Y^2 + i eps lam (XY + YX) on H_1 """
    lam = sp.nsimplify(lam)
    return OperatorSpec(sp.Matrix([[1 - lam ** 2, sp.I * eps * lam],
                                   [sp.I * eps * lam, 1]]), 0)


def type3_operator():
    """ -i (X^2 - Y^2) on H_1 """
    return OperatorSpec(sp.Matrix([[-sp.I, 0], [0, sp.I]]), 0)

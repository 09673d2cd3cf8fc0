# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
The H_2 reduction of Delta_S for the block pair Type1(lam, +1) + Type1(lam, -1),
lam > 1, to Q_lam = c1 D E + c2 conj(D) conj(E), and the ellipticity test for
operators with leading part L_A = sum a_jk X_j Y_k.
"""

from collections import namedtuple
import logging

import numpy as np
import sympy as sp
from scipy.optimize import minimize_scalar

from .exceptions import ClassificationInputError, DimensionMismatchError
from .group import standard_J
from .operators import FieldPolynomial, OperatorSpec

logger = logging.getLogger(__name__)

EllipticityResult = namedtuple('EllipticityResult', 'elliptic det_nonzero margin det argmin')

QLambdaReduction = namedtuple(
    'QLambdaReduction',
    'lam T conformal_factor symplectic_T conformal symplectic matches coefficients '
    'L_matrix margin')


def class_ii_operator(lam):
    """ Type1(lam, +1) on (X1, Y1) plus Type1(lam, -1) on (X2, Y2) """
    lam = sp.nsimplify(lam)
    a = 1 - lam ** 2
    c = sp.I * lam
    A = sp.Matrix([[a, 0, c, 0],
                   [0, a, 0, -c],
                   [c, 0, 1, 0],
                   [0, -c, 0, 1]])
    return OperatorSpec(A, 0)


def _basis_change(lam):
    """ Rows give (X~1, X~2, Y~1, Y~2) in terms of (X1, X2, Y1, Y2) """
    s = sp.sqrt(lam ** 2 - 1)
    return sp.Matrix([[0, -s, 1, 0],
                      [-s, 0, 0, 1],
                      [s, 0, 0, 1],
                      [0, s, 1, 0]])


def _combination(row):
    total = FieldPolynomial(2)
    for j, c in enumerate(row):
        if c != 0:
            total = total + FieldPolynomial(2, {(j,): c})
    return total


def _symbol_margin(Amat, theta):
    x = np.array([np.cos(theta), np.sin(theta)])
    v = Amat.dot(x)
    return np.linalg.svd(np.vstack([v.real, v.imag]), compute_uv=False)[-1]


def la_ellipticity_test(Amat, samples=720, tol=1e-9):
    """ Ellipticity away from 0 of the symbol xi^T A x of L_A and det A != 0

    For fixed unit x the minimum over unit xi of |xi^T A x| is the smallest
    singular value of the 2 x 2 matrix with rows Re(Ax), Im(Ax); the margin is
    its minimum over the unit circle.

    >>> la_ellipticity_test(np.zeros((2, 2))).elliptic
    False
    """
    if isinstance(Amat, sp.MatrixBase):
        Amat = np.array(Amat.evalf(), dtype=complex)
    Amat = np.asarray(Amat, dtype=complex)
    if Amat.shape != (2, 2):
        raise DimensionMismatchError("L_A needs a 2x2 coefficient matrix")
    thetas = np.linspace(0.0, np.pi, samples, endpoint=False)
    values = [_symbol_margin(Amat, t) for t in thetas]
    best = int(np.argmin(values))
    step = np.pi / samples
    refined = minimize_scalar(lambda t: _symbol_margin(Amat, t),
                              bounds=(thetas[best] - step, thetas[best] + step),
                              method='bounded', options={'xatol': 1e-12})
    margin = float(min(values[best], refined.fun))
    argmin = float(refined.x if refined.fun < values[best] else thetas[best])
    det = complex(np.linalg.det(Amat))
    scale = max(1.0, float(np.max(np.abs(Amat))))
    result = EllipticityResult(margin > tol * scale, abs(det) > tol * scale ** 2,
                               margin, det, argmin)
    logger.debug("L_A ellipticity margin %.3g, det %s", margin, det)
    return result


def qlambda_reduce(lam):
    """ Change of basis carrying Delta_S of the class (ii) operator on H_2 to Q_lam

    Returns
    -------
    QLambdaReduction
        ``T`` is conformally symplectic with factor -2 sqrt(lam^2 - 1);
        ``symplectic_T`` = diag(1, 1, -1, -1) T / sqrt(2 sqrt(lam^2 - 1)) is
        exactly symplectic; ``matches`` records Q_lam == Delta_S after normal
        ordering; ``L_matrix`` is the coefficient matrix of Q_lam in the
        X~_j Y~_k form.
    """
    lam = sp.nsimplify(lam)
    if not lam > 1:
        raise ClassificationInputError("Q_lambda needs lambda > 1, got %s" % lam)
    s = sp.sqrt(lam ** 2 - 1)
    J = standard_J(2, exact=True)
    T = _basis_change(lam)
    factor = -2 * s
    conformal = sp.simplify(T * J * T.T - factor * J) == sp.zeros(4)
    T_sym = sp.diag(1, 1, -1, -1) * T / sp.sqrt(2 * s)
    symplectic = sp.simplify(T_sym.T * J * T_sym - J) == sp.zeros(4)

    X1, X2, Y1, Y2 = [_combination(T.row(k)) for k in range(4)]
    D, E = X1 - sp.I * X2, Y2 + sp.I * Y1
    Dbar, Ebar = X1 + sp.I * X2, Y2 - sp.I * Y1
    c1 = sp.Rational(1, 2) + lam / (2 * s)
    c2 = sp.Rational(1, 2) - lam / (2 * s)
    Q = D * E * c1 + Dbar * Ebar * c2
    matches = Q.equals(class_ii_operator(lam).to_polynomial())

    d = (1, -sp.I)
    e = (sp.I, 1)
    L_matrix = sp.Matrix(2, 2, lambda j, k: sp.simplify(
        c1 * d[j] * e[k] + c2 * sp.conjugate(d[j]) * sp.conjugate(e[k])))
    margin = la_ellipticity_test(L_matrix).margin
    logger.info("Q_lambda reduction at lambda=%s: matches=%s, margin %.4g", lam, matches, margin)
    return QLambdaReduction(lam, T, factor, T_sym, conformal, symplectic, matches,
                            (c1, c2), L_matrix, margin)

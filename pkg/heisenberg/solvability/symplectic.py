# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Symplectic linear algebra: membership tests, the A <-> S = -AJ
correspondence, spectral classification, the normal form
T S T^{-1} = [[0, L], [-L, 0]], branch-tracked matrix hyperbolic
functions, the (H') bracket search and 2x2 block recognition.

Rational sympy input is classified exactly; float input uses eigenvalue
clustering and reports borderline spectra as undetermined.
"""

from collections import namedtuple
from dataclasses import dataclass, field
import logging

import numpy as np
import scipy.linalg as la
from scipy.optimize import least_squares
import sympy as sp

from .enums import BlockKind, HyperbolicKind
from .exceptions import (BranchTrackingError, DimensionMismatchError,
                         NonSymmetricMatrixError, NormalFormError,
                         NotSymplecticError, SingularParameterError)
from .group import standard_J
from .utils import is_exact

logger = logging.getLogger(__name__)

TOLERANCE = 1e-10
RANK_CUTOFF = 1e-8
AXIS_ON = 1e-11
AXIS_OFF = 1e-8


def _is_sympy(M):
    return isinstance(M, sp.MatrixBase)


def _numeric(M):
    if _is_sympy(M):
        return np.array(np.array(M.evalf(), dtype=complex))
    return np.asarray(M, dtype=complex)


def _half_size(M):
    size = M.shape[0]
    if M.shape[0] != M.shape[1] or size % 2:
        raise DimensionMismatchError("expected a 2n x 2n matrix, got %s" % (M.shape,))
    return size // 2


def is_sp(S, tol=TOLERANCE):
    """ S^T J + J S = 0 """
    n = _half_size(S)
    if _is_sympy(S):
        J = standard_J(n, exact=True)
        return sp.simplify(S.T * J + J * S) == sp.zeros(2 * n)
    S = _numeric(S)
    J = standard_J(n)
    return bool(np.max(np.abs(S.T.dot(J) + J.dot(S))) <= tol * max(1.0, np.max(np.abs(S))))


def is_Sp(T, tol=TOLERANCE):
    """ T^T J T = J """
    n = _half_size(T)
    if _is_sympy(T):
        J = standard_J(n, exact=True)
        return sp.simplify(T.T * J * T - J) == sp.zeros(2 * n)
    T = _numeric(T)
    J = standard_J(n)
    return bool(np.max(np.abs(T.T.dot(J).dot(T) - J)) <= tol * max(1.0, np.max(np.abs(T)) ** 2))


def op_matrix_to_S(A):
    """ S = -A J for a symmetric coefficient matrix A

    >>> op_matrix_to_S(sp.Matrix([[-1, 0], [0, -1]])).tolist()
    [[0, 1], [-1, 0]]
    """
    n = _half_size(A)
    if _is_sympy(A):
        if A != A.T:
            raise NonSymmetricMatrixError("coefficient matrix must be symmetric")
        return sp.ImmutableMatrix(-A * standard_J(n, exact=True))
    A = np.asarray(A)
    if not np.allclose(A, A.T, atol=1e-12):
        raise NonSymmetricMatrixError("coefficient matrix must be symmetric")
    return -A.dot(standard_J(n))


def S_to_op_matrix(S):
    """ A = S J """
    n = _half_size(S)
    if _is_sympy(S):
        return sp.ImmutableMatrix(S * standard_J(n, exact=True))
    return np.asarray(S).dot(standard_J(n))


def normal_block(frequencies):
    """ [[0, L], [-L, 0]] with L = diag(frequencies) """
    lam = np.diag(np.asarray(frequencies, dtype=float))
    zero = np.zeros_like(lam)
    return np.block([[zero, lam], [-lam, zero]])


# --- spectral classification ---------------------------------------------------

@dataclass(frozen=True)
class SpectralClassification:
    eigenvalues: tuple
    semisimple: object
    purely_imaginary: object
    frequencies: tuple = None
    undetermined: bool = False
    exact: bool = False
    transform: object = field(default=None, compare=False)
    note: str = ''

    def to_dict(self):
        return {'eigenvalues': list(self.eigenvalues), 'semisimple': self.semisimple,
                'purely_imaginary': self.purely_imaginary,
                'frequencies': None if self.frequencies is None else list(self.frequencies),
                'undetermined': self.undetermined, 'exact': self.exact}


def _cluster(values, tol):
    clusters = []
    for v in sorted(values, key=lambda c: (round(c.imag, 6), round(c.real, 6))):
        for cl in clusters:
            if abs(cl[0] - v) <= tol:
                cl.append(v)
                break
        else:
            clusters.append([v])
    return [(np.mean(cl), len(cl)) for cl in clusters]


def _semisimple_float(S, clusters, scale):
    size = S.shape[0]
    for value, mult in clusters:
        sv = la.svdvals(S - value * np.eye(size))
        rank = int(np.sum(sv > RANK_CUTOFF * scale))
        if size - rank != mult:
            return False
    return True


def spectral_classify(S):
    """ Eigenvalues, semisimplicity and imaginary-spectrum flags of S

    Exact rational sympy input is decided with the characteristic
    polynomial p(x) = q(x^2): the spectrum is imaginary iff every root of q
    is real and nonpositive, and S is semisimple iff the square-free part of
    p annihilates S. Frequencies come from :func:`normal_form`.
    """
    if _is_sympy(S) and all(is_exact(v) and sp.im(v) == 0 for v in S):
        return _classify_exact(sp.Matrix(S))
    return _classify_float(_numeric(S))


def _classify_exact(S):
    x, w = sp.symbols('x w')
    p = S.charpoly(x).as_expr()
    eigen = tuple(np.linalg.eigvals(_numeric(S)))
    q = sp.Poly(sp.Poly(p, x).all_coeffs()[::2], w)
    roots = sp.real_roots(q) if q.degree() > 0 else []
    imaginary = len(roots) == q.degree() and all(bool(r <= 0) for r in roots)
    sqf = sp.Poly(sp.sqf_part(p), x)
    acc = sp.zeros(*S.shape)
    for c in sqf.all_coeffs():
        acc = acc * S + c * sp.eye(S.shape[0])
    semisimple = acc == sp.zeros(*S.shape)
    freqs = None
    transform = None
    if semisimple and imaginary:
        T, numeric_freqs = normal_form(S)
        exact_sq = [-r for r in roots]
        freqs = []
        for lam in numeric_freqs:
            best = min(exact_sq, key=lambda r: abs(float(r) - lam * lam))
            root = sp.sqrt(sp.nsimplify(best))
            freqs.append(root if lam >= 0 else -root)
        freqs = tuple(freqs)
        transform = T
    logger.debug("Exact classification: semisimple=%s imaginary=%s", semisimple, imaginary)
    return SpectralClassification(eigen, bool(semisimple), bool(imaginary), freqs,
                                  False, True, transform)


def _classify_float(S):
    size = S.shape[0]
    scale = max(np.linalg.norm(S, 2), 1e-300)
    eigen = np.linalg.eigvals(S)
    if np.linalg.norm(S, 2) == 0:
        return SpectralClassification(tuple(eigen), True, True, (0.0,) * (size // 2),
                                      False, False, np.eye(size))
    re = np.abs(eigen.real) / scale
    if np.any((re > AXIS_ON) & (re <= AXIS_OFF)):
        logger.warning("Eigenvalue within the borderline band of the imaginary axis")
        return SpectralClassification(tuple(eigen), None, None, None, True, False,
                                      note='borderline spectrum')
    imaginary = bool(np.all(re <= AXIS_ON))
    clusters = _cluster(eigen, 1e-6 * scale)
    semisimple = _semisimple_float(S, clusters, scale)
    freqs = None
    transform = None
    if semisimple and imaginary and np.allclose(S.imag, 0):
        try:
            transform, freqs = normal_form(S.real)
            freqs = tuple(float(f) for f in freqs)
        except NormalFormError as e:
            logger.warning("Normal form failed: %s", e)
    return SpectralClassification(tuple(eigen), semisimple, imaginary, freqs,
                                  False, False, transform)


# --- normal form ---------------------------------------------------------------

NormalForm = namedtuple('NormalForm', 'T frequencies')


def _hermitian_gram(V, J):
    return 0.5j * V.T.dot(J).dot(np.conj(V))


def _fix_phase(w):
    mags = np.abs(w)
    k = int(np.argmax(mags >= mags.max() * (1 - 1e-9)))
    return w * np.exp(-1j * np.angle(w[k]))


def _kernel_pairs(S, J, tol):
    """ Symplectic basis pairs of ker S by Gram-Schmidt """
    basis = list(la.null_space(S, rcond=tol).T)
    pairs = []
    while basis:
        e = basis.pop(0)
        if not basis:
            raise NormalFormError("kernel of S has odd dimension")
        pairings = [e.dot(J).dot(v) for v in basis]
        k = int(np.argmax(np.abs(pairings)))
        if abs(pairings[k]) < tol:
            raise NormalFormError("degenerate symplectic pairing on ker S")
        f = basis.pop(k) / pairings[k]
        basis = [v - v.dot(J).dot(f) * e + v.dot(J).dot(e) * f for v in basis]
        pairs.append((e, f, 0.0))
    return pairs


def normal_form(S):
    """ T in Sp(n, R) with T S T^{-1} = [[0, L], [-L, 0]]

    For every eigenvalue i*lam (lam > 0) the eigenspace is diagonalised
    for the Hermitian form (i/2) v^T J conj(w); positive directions give
    frequency +lam, negative ones -lam.

    Returns
    -------
    NormalForm
        ``T`` and the frequencies in column order.
    """
    S = np.real_if_close(_numeric(S), tol=1e6)
    if np.iscomplexobj(S):
        raise NormalFormError("normal form needs a real matrix")
    n = _half_size(S)
    J = standard_J(n)
    scale = max(np.linalg.norm(S, 2), 1.0)
    eigen = np.linalg.eigvals(S)
    if np.any(np.abs(eigen.real) > 1e-6 * scale):
        raise NormalFormError("spectrum is not purely imaginary")
    positive = [v for v in eigen if v.imag > 1e-6 * scale]
    pairs = []
    for value, mult in _cluster(positive, 1e-6 * scale):
        lam = value.imag
        V = la.null_space(S - 1j * lam * np.eye(2 * n), rcond=1e-7)
        if V.shape[1] != mult:
            raise NormalFormError("eigenvalue %gi is not semisimple" % lam)
        gram = _hermitian_gram(V, J)
        d, U = np.linalg.eigh(0.5 * (gram + gram.conj().T))
        W = V.dot(np.conj(U))
        for c in range(W.shape[1]):
            if abs(d[c]) < 1e-9:
                raise NormalFormError("vanishing symplectic pairing at eigenvalue %gi" % lam)
            w = _fix_phase(W[:, c] / np.sqrt(abs(d[c])))
            if d[c] > 0:
                pairs.append((w.real, w.imag, lam))
            else:
                pairs.append((w.real, -w.imag, -lam))
    zero_dim = 2 * n - 2 * len(pairs)
    if zero_dim:
        pairs.extend(_kernel_pairs(S, J, 1e-7))
    if len(pairs) != n:
        raise NormalFormError("found %d frequency pairs, expected %d" % (len(pairs), n))
    P = np.zeros((2 * n, 2 * n))
    for j, (p, q, _) in enumerate(pairs):
        P[:, j] = p
        P[:, n + j] = q
    T = np.linalg.inv(P)
    freqs = tuple(lam for _, _, lam in pairs)
    if not is_Sp(T, 1e-8):
        raise NormalFormError("constructed transform is not symplectic")
    residual = np.max(np.abs(T.dot(S).dot(P) - normal_block(freqs)))
    if residual > 1e-8 * scale:
        raise NormalFormError("normal form residual %.3g" % residual)
    logger.debug("Normal form frequencies %s", freqs)
    return NormalForm(T, freqs)


# --- generators of symplectic matrices -------------------------------------------

def random_symplectic(n, rng, scale=0.5):
    """ expm(J B) with B symmetric Gaussian """
    B = rng.standard_normal((2 * n, 2 * n)) * scale
    B = 0.5 * (B + B.T)
    return la.expm(standard_J(n).dot(B))


def exact_symplectic(n, rng, factors=3, bound=2):
    """ Rational symplectic matrix from shears and diag(A, A^{-T}) factors """
    T = sp.eye(2 * n)
    for _ in range(factors):
        kind = rng.integers(0, 3)
        if kind == 2:
            A = sp.eye(n)
            for i in range(n):
                for j in range(i + 1, n):
                    A[i, j] = sp.Rational(int(rng.integers(-bound, bound + 1)), 1)
            block = sp.diag(A, A.inv().T)
        else:
            B = sp.zeros(n)
            for i in range(n):
                for j in range(i, n):
                    B[i, j] = B[j, i] = sp.Rational(int(rng.integers(-bound, bound + 1)),
                                                    int(rng.integers(1, 3)))
            if kind == 0:
                block = sp.BlockMatrix([[sp.eye(n), B], [sp.zeros(n), sp.eye(n)]]).as_explicit()
            else:
                block = sp.BlockMatrix([[sp.eye(n), sp.zeros(n)], [B, sp.eye(n)]]).as_explicit()
        T = block * T
    return sp.ImmutableMatrix(T)


def planted_semisimple(frequencies, T0):
    """ S = T0^{-1} N T0 with N the normal block of ``frequencies`` """
    N = normal_block(frequencies)
    return np.linalg.solve(T0, N.dot(T0))


# --- matrix hyperbolic functions --------------------------------------------------

_HYPERBOLIC = {HyperbolicKind.sinh: la.sinhm, HyperbolicKind.cosh: la.coshm,
               HyperbolicKind.tanh: la.tanhm}


def matrix_hyperbolic(S, t, kind):
    """ sinh, cosh, tanh or coth of t S / 2

    Parameters
    ----------
    S: 2n x 2n matrix
    t: complex
    kind: HyperbolicKind or str
    """
    kind = HyperbolicKind(kind) if not isinstance(kind, HyperbolicKind) else kind
    M = 0.5 * t * _numeric(S)
    if kind == HyperbolicKind.coth:
        sinh = la.sinhm(M)
        if np.linalg.cond(sinh) > 1e12:
            raise SingularParameterError(t)
        return np.linalg.solve(sinh, la.coshm(M))
    return _HYPERBOLIC[kind](M)


@dataclass(frozen=True)
class BranchedGaussianData:
    """ A(t) = J coth(tS/2)/2, B(t) = J tanh(tS/2)/2 and the tracked prefactor
    p(t) = 2^{-n} [(-1)^n det sinh(tS/2)]^{-1/2} """
    t: complex
    A: np.ndarray
    B: np.ndarray
    prefactor: complex
    transform_prefactor: complex
    n: int

    def identity_residual(self, S):
        """ |p^2 det sinh(tS/2) (-1)^n 2^{2n} - 1| """
        det = np.linalg.det(matrix_hyperbolic(S, self.t, 'sinh'))
        return abs(self.prefactor ** 2 * det * (-1) ** self.n * 4 ** self.n - 1)


def _det_sqrt(M):
    """ det(M)^{1/2} as the product of principal roots of the eigenvalues """
    return complex(np.prod(np.sqrt(np.linalg.eigvals(M).astype(complex))))


def _prefactor_roots(S, t, n):
    sinh = matrix_hyperbolic(S, t, 'sinh')
    det = np.linalg.det(sinh)
    if abs(det) < 1e-14 * max(1.0, np.max(np.abs(sinh))) ** (2 * n) or np.linalg.cond(sinh) > 1e12:
        raise SingularParameterError(t)
    root = 2.0 ** (-n) / np.sqrt(complex((-1) ** n * det))
    return root, -root


def _a_matrix(S, t, n):
    J = standard_J(n)
    A = 0.5 * J.dot(matrix_hyperbolic(S, t, 'coth'))
    return 0.5 * (A + A.T)


def _b_matrix(S, t, n):
    J = standard_J(n)
    B = 0.5 * J.dot(matrix_hyperbolic(S, t, 'tanh'))
    return 0.5 * (B + B.T)


def default_path(t, steps=200, start=1e-3):
    """ Straight path s t for s from ``start`` to 1 """
    return [t * s for s in np.linspace(start, 1.0, steps)]


def gaussian_branch_track(S, t_path):
    """ Continue the prefactor root along ``t_path`` (from near 0 to target)

    The branch at the first point is the root for which the Gaussian has
    unit mass to leading order, i.e. p det(iA(t))^{-1/2} ~ 1. Each later
    root is the one nearest the previous value; a jump of argument of pi/2
    or more means the path is too coarse.
    """
    S = _numeric(S)
    n = _half_size(S)
    t_path = list(t_path)
    if not t_path:
        raise BranchTrackingError("empty parameter path")
    t0 = t_path[0]
    roots = _prefactor_roots(S, t0, n)
    target = _det_sqrt(1j * _a_matrix(S, t0, n))
    p = min(roots, key=lambda r: abs(r - target))
    for t in t_path[1:]:
        try:
            roots = _prefactor_roots(S, t, n)
        except SingularParameterError:
            raise SingularParameterError(t, "path crosses a zero of det sinh(tS/2) at t=%s" % (t,))
        new = min(roots, key=lambda r: abs(r - p))
        if abs(np.angle(new / p)) >= np.pi / 2:
            raise BranchTrackingError("argument jump at t=%s; refine the path" % (t,))
        p = new
    t = t_path[-1]
    A = _a_matrix(S, t, n)
    B = _b_matrix(S, t, n)
    q = p / _det_sqrt(1j * A)
    logger.debug("Branch tracked to t=%s: prefactor %s", t, p)
    return BranchedGaussianData(t, A, B, complex(p), complex(q), n)


def gaussian_branch_table(S, ts, substeps=16, start=1e-3):
    """ Branch data at every parameter of ``ts``, tracked along one path

    ``ts`` must lie on one ray from 0 and be sorted by modulus; consecutive
    points are joined by ``substeps`` intermediate steps.
    """
    S = _numeric(S)
    ts = list(ts)
    if not ts:
        return []
    path = default_path(ts[0], steps=max(substeps, 50), start=start)
    marks = [len(path) - 1]
    for a, b in zip(ts[:-1], ts[1:]):
        path.extend(a + (b - a) * s for s in np.linspace(0, 1, substeps + 1)[1:])
        marks.append(len(path) - 1)
    n = _half_size(S)
    roots = _prefactor_roots(S, path[0], n)
    target = _det_sqrt(1j * _a_matrix(S, path[0], n))
    p = min(roots, key=lambda r: abs(r - target))
    values = [p]
    for t in path[1:]:
        new = min(_prefactor_roots(S, t, n), key=lambda r: abs(r - p))
        if abs(np.angle(new / p)) >= np.pi / 2:
            raise BranchTrackingError("argument jump at t=%s; refine the path" % (t,))
        p = new
        values.append(p)
    table = []
    for t, mark in zip(ts, marks):
        A = _a_matrix(S, t, n)
        p = values[mark]
        table.append(BranchedGaussianData(t, A, _b_matrix(S, t, n), complex(p),
                                          complex(p / _det_sqrt(1j * A)), n))
    return table


# --- (H') --------------------------------------------------------------------------

HprimeResult = namedtuple('HprimeResult', 'found zeta values certificate')


def hormander_Hprime(S1, S2, tol=1e-10, starts=200, seed=0):
    """ Search a real unit zeta with zeta.A1.zeta = zeta.A2.zeta = 0 and
    zeta.A3.zeta != 0, where A_k = S_k J and A3 = [S1, S2] J

    On H_1 the answer is decided: at a common zero of two binary quadratic
    forms both gradients are orthogonal to zeta, hence parallel, so the
    bracket form vanishes there. The certificate lists the common null
    directions and the bracket values on them.
    """
    n1 = _half_size(S1)
    if _half_size(S2) != n1:
        raise DimensionMismatchError("S1 and S2 have different sizes")
    if n1 == 1:
        return _hprime_plane(S1, S2)
    S1n = np.real(_numeric(S1))
    S2n = np.real(_numeric(S2))
    J = standard_J(n1)
    A1, A2 = S1n.dot(J), S2n.dot(J)
    A3 = (S1n.dot(S2n) - S2n.dot(S1n)).dot(J)
    if np.max(np.abs(A3)) < tol:
        return HprimeResult(False, None, None, {'reason': 'S1 and S2 commute'})
    rng = np.random.default_rng(seed)

    def residual(zeta):
        return np.array([zeta.dot(A1).dot(zeta), zeta.dot(A2).dot(zeta), zeta.dot(zeta) - 1.0])

    best = None
    for _ in range(starts):
        start = rng.standard_normal(2 * n1)
        sol = least_squares(residual, start / np.linalg.norm(start), xtol=1e-15,
                            ftol=1e-15, gtol=1e-15)
        zeta = sol.x / np.linalg.norm(sol.x)
        q1, q2, q3 = zeta.dot(A1).dot(zeta), zeta.dot(A2).dot(zeta), zeta.dot(A3).dot(zeta)
        if abs(q1) < tol and abs(q2) < tol and abs(q3) > 1e3 * tol:
            if best is None or abs(q3) > abs(best[1][2]):
                best = (zeta, (q1, q2, q3))
    if best is None:
        return HprimeResult(False, None, None, {'reason': 'search exhausted',
                                                'starts': starts})
    logger.info("(H') witness found with bracket value %.3g", best[1][2])
    return HprimeResult(True, best[0], best[1], None)


def _hprime_plane(S1, S2):
    s = sp.Symbol('s')
    mats = []
    for S in (S1, S2):
        S = sp.Matrix(S) if _is_sympy(S) else sp.Matrix(np.real(_numeric(S))).applyfunc(
            lambda v: sp.nsimplify(v, rational=True))
        mats.append(S)
    J = standard_J(1, exact=True)
    A1, A2 = mats[0] * J, mats[1] * J
    A3 = (mats[0] * mats[1] - mats[1] * mats[0]) * J

    def form(A, v):
        return sp.expand((v.T * A * v)[0])

    line = sp.Matrix([1, s])
    g = sp.gcd(sp.Poly(form(A1, line), s), sp.Poly(form(A2, line), s))
    directions = []
    if g.is_zero:
        certificate = {'reason': 'both forms vanish identically', 'bracket_zero': A3 == sp.zeros(2)}
        return HprimeResult(False, None, None, certificate)
    for r in sp.real_roots(g) if g.degree() > 0 else []:
        directions.append(sp.Matrix([1, r]))
    if A1[1, 1] == 0 and A2[1, 1] == 0:
        directions.append(sp.Matrix([0, 1]))
    values = [sp.simplify(form(A3, v)) for v in directions]
    certificate = {'reason': 'gradients are parallel at common zeros on H_1',
                   'directions': [[str(c) for c in v] for v in directions],
                   'bracket_values': [str(v) for v in values]}
    return HprimeResult(False, None, None, certificate)


# --- 2x2 blocks ----------------------------------------------------------------------

BlockType = namedtuple('BlockType', 'kind lam eps')


def classify_2x2_block(block, tol=1e-9):
    """ Match a complex 2x2 block with S^2 = -I against the Type 1 pattern
    [[i eps lam, lam^2 - 1], [1, -i eps lam]] and the Type 3 block
    [[0, i], [i, 0]]

    Labels follow the normal-form list lam in {-1} u [0, oo) with eps = 1
    for |lam| <= 1: the block with i eps lam = -i is reported as
    (lam, eps) = (-1, 1), not (1, -1). A diagonal entry i c with
    -1 < c < 0 lies outside that list and is reported as (|c|, -1).

    >>> classify_2x2_block([[0, -1], [1, 0]]).kind.value
    'Type1'
    """
    M = _numeric(sp.Matrix(block)) if not isinstance(block, np.ndarray) else block.astype(complex)
    if M.shape != (2, 2):
        raise DimensionMismatchError("expected a 2x2 block")
    if np.max(np.abs(M.dot(M) + np.eye(2))) > tol:
        return BlockType(BlockKind.not_normal_form, None, None)
    if np.max(np.abs(M - np.array([[0, 1j], [1j, 0]]))) <= tol:
        return BlockType(BlockKind.type3, None, None)
    a = M[0, 0]
    if (abs(M[1, 0] - 1) <= tol and abs(M[1, 1] + a) <= tol and abs(a.real) <= tol
            and abs(M[0, 1] - (a.imag ** 2 - 1)) <= tol):
        c = a.imag
        if abs(c + 1) <= tol:
            return BlockType(BlockKind.type1, -1.0, 1)
        eps = 1 if c >= 0 else -1
        lam = abs(c)
        if abs(lam - round(lam)) <= tol:
            lam = float(round(lam))
        return BlockType(BlockKind.type1, lam, eps)
    return BlockType(BlockKind.not_normal_form, None, None)


def type1_block(lam, eps=1):
    return np.array([[1j * eps * lam, lam * lam - 1], [1, -1j * eps * lam]])


def type3_block():
    return np.array([[0, 1j], [1j, 0]])


def embed_blocks(blocks):
    """ Block-diagonal S in sp(n, C); a 2m x 2m block acts on the planes
    (x_j, y_j) of m consecutive coordinates

    >>> embed_blocks([type3_block(), type3_block()]).shape
    (4, 4)
    """
    blocks = [_numeric(B) if _is_sympy(B) else np.asarray(B, dtype=complex) for B in blocks]
    for B in blocks:
        if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape[0] % 2:
            raise DimensionMismatchError("blocks must be 2m x 2m, got %s" % (B.shape,))
    n = sum(B.shape[0] // 2 for B in blocks)
    S = np.zeros((2 * n, 2 * n), dtype=complex)
    offset = 0
    for B in blocks:
        m = B.shape[0] // 2
        idx = list(range(offset, offset + m)) + list(range(n + offset, n + offset + m))
        S[np.ix_(idx, idx)] = B
        offset += m
    return S

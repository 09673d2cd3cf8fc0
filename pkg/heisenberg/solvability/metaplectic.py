# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Metaplectic Gaussians and the twisted heat-type kernels built from them.

For S in sp(n, R) and t with det sinh(tS/2) != 0 the Gaussian

    gamma_t(z) = p(t) exp(-i pi z^T A(t) z),   A(t) = J coth(tS/2) / 2,

with p(t)^2 det sinh(tS/2) = (-1)^n 4^{-n} and the root continued from
t -> 0+, satisfies f x gamma_t = exp(t (i/4pi) Delta_S) f. Its symplectic
Fourier transform is q(t) exp(-i pi zeta^T B(t) zeta), B(t) = J tanh(tS/2) / 2.
"""

from collections import namedtuple
from dataclasses import dataclass
import logging

import numpy as np
import sympy as sp

from .differential import twisted_symbol
from .exceptions import (ClassificationInputError, DimensionMismatchError,
                         InvalidConfigError, NotSymplecticError, SingularParameterError)
from .grid import GridFunction, plane_roles
from .group import standard_J
from .operators import OperatorSpec, apply_operator
from .schrodinger import mu_quadrature
from .symbolic import TestFunction, coordinates, field_apply
from .symplectic import (_det_sqrt, _numeric, default_path, gaussian_branch_table,
                         gaussian_branch_track, is_sp, matrix_hyperbolic)
from .twisted import symplectic_fourier
from .utils import gauss_legendre, parallel_map

logger = logging.getLogger(__name__)

T_CUTOFF = 1e8
MU_CUTOFF = 1e-8


def _quadratic(M, z):
    z = np.asarray(z)
    return np.einsum('...i,ij,...j->...', z, M, z)


def e_matrix(M, z):
    """ exp(-i pi z^T M z) for points stacked on the last axis """
    return np.exp(-1j * np.pi * _quadratic(np.asarray(M), z))


def _stack(grid):
    return np.stack(grid.mesh(), axis=-1)


@dataclass(frozen=True)
class ComplexGaussian:
    """ c exp(-i pi z^T M z) on R^2n with M complex symmetric """
    c: complex
    M: np.ndarray

    @property
    def n(self):
        return self.M.shape[0] // 2

    @property
    def decaying(self):
        return bool(np.all(np.linalg.eigvalsh(-np.imag(self.M)) > 0))

    def __call__(self, z):
        return self.c * e_matrix(self.M, z)

    def sample(self, dims, extents):
        roles = plane_roles(self.n)
        if np.isscalar(dims):
            dims = (int(dims),) * len(roles)
        if np.isscalar(extents):
            extents = (float(extents),) * len(roles)
        return GridFunction.from_function(lambda *zs: self(np.stack(zs, axis=-1)),
                                          dims, extents, roles)

    def scaled(self, factor):
        return ComplexGaussian(self.c * factor, self.M)

    def compose(self, other, mu=1.0):
        """ self x_mu other in closed form

        e_A x_mu e_B = det(i(A + B))^{-1/2} e_C with
        C = A - (A - mu J/2)(A + B)^{-1}(A + mu J/2).
        """
        if other.n != self.n:
            raise DimensionMismatchError("Gaussians on R^%d and R^%d"
                                         % (2 * self.n, 2 * other.n))
        A, B = self.M, other.M
        half = 0.5 * mu * standard_J(self.n)
        total = A + B
        C = A - (A - half).dot(np.linalg.solve(total, A + half))
        C = 0.5 * (C + C.T)
        return ComplexGaussian(complex(self.c * other.c / _det_sqrt(1j * total)), C)


def standard_gaussian(n, width=1.0):
    """ exp(-pi |z|^2 / width^2) """
    return ComplexGaussian(1.0 + 0j, -1j * np.eye(2 * n) / width ** 2)


def _gamma_path(t):
    start = min(1.0, 1e-3 / abs(t))
    if start >= 1.0:
        return [t]
    return default_path(t, steps=200, start=start)


class MetaplecticGaussian(object):
    """ gamma^mu_t for a fixed S

    For mu > 0 the Gaussian is mu^n p e_{mu A}; for mu < 0 it is
    |mu|^n conj(p) e_{-|mu| conj(A)}. Both satisfy
    f x_mu gamma^mu_t = exp(t (i / 4 pi mu) Delta^mu_S) f.

    Parameters
    ----------
    S: 2n x 2n real matrix
    t: complex
    mu: float [1.0]
    data: BranchedGaussianData [None]
        Tracked branch at ``t``; computed along the straight path when omitted.
    """

    def __init__(self, S, t, mu=1.0, data=None):
        if mu == 0:
            raise InvalidConfigError("mu must be nonzero")
        if t == 0:
            raise SingularParameterError(t, "gamma_0 is the identity, not a Gaussian")
        self.S = _numeric(S)
        self.t = t
        self.mu = float(mu)
        self.data = data if data is not None else gaussian_branch_track(self.S, _gamma_path(t))
        self.n = self.data.n

    @property
    def prefactor(self):
        scale = abs(self.mu) ** self.n
        if self.mu > 0:
            return scale * self.data.prefactor
        return scale * np.conj(self.data.prefactor)

    @property
    def matrix(self):
        if self.mu > 0:
            return self.mu * self.data.A
        return -abs(self.mu) * np.conj(self.data.A)

    def as_complex_gaussian(self):
        return ComplexGaussian(complex(self.prefactor), self.matrix)

    def __call__(self, z):
        return self.prefactor * e_matrix(self.matrix, z)

    def symplectic_transform(self, zeta):
        """ gamma^(zeta) = q e_B(zeta / sqrt|mu|), conjugated for mu < 0 """
        zeta = np.asarray(zeta) / np.sqrt(abs(self.mu))
        value = self.data.transform_prefactor * e_matrix(self.data.B, zeta)
        return value if self.mu > 0 else np.conj(value)

    def sample(self, dims, extents):
        return self.as_complex_gaussian().sample(dims, extents)

    def chirp_rates(self, z_extent, zeta_extent):
        """ Largest local frequencies of the z-side and zeta-side chirps """
        z_rate = abs(self.mu) * np.linalg.norm(self.data.A, 2) * z_extent
        zeta_rate = np.linalg.norm(self.data.B, 2) * zeta_extent / abs(self.mu)
        return float(z_rate), float(zeta_rate)

    def twisted_apply(self, f, nthreads=None, chunk=256):
        """ f x_mu gamma for a sampled plane function ``f``

        With e_M the Gaussian's chirp,

            (f x_mu c e_M)(z) = c e_M(z) sum_z'' f(z'') e_M(z'') exp(2 pi i z''.xi) w,

        xi = (M - mu J/2) z. Outputs whose xi lies beyond the Nyquist box of
        the grid are set to zero and the result is flagged.
        """
        if f.has_center or f.n != self.n:
            raise DimensionMismatchError("expected a plane function on R^%d" % (2 * self.n))
        M = self.matrix
        c = self.prefactor
        z = _stack(f).reshape(-1, 2 * self.n)
        source = (f.values * f.weights() * e_matrix(M, _stack(f))).reshape(-1)
        xi = z.dot((M - 0.5 * self.mu * standard_J(self.n)).T)
        nyquist = 1.0 / (2.0 * np.array(f.spacings))
        resolved = np.all(np.abs(xi.real) <= nyquist, axis=-1)
        live = np.flatnonzero(source)
        zsrc = z[live]
        weights = source[live]

        def work(rows):
            return np.exp(2j * np.pi * xi[rows].dot(zsrc.T)).dot(weights)

        targets = np.flatnonzero(resolved)
        blocks = [targets[i:i + chunk] for i in range(0, len(targets), chunk)]
        out = np.zeros(len(z), dtype=complex)
        for rows, part in zip(blocks, parallel_map(work, blocks, nthreads)):
            out[rows] = part
        values = (c * e_matrix(M, z) * out).reshape(f.dims)
        flags = set(f.flags)
        masked = int(len(z) - np.count_nonzero(resolved))
        if masked:
            logger.debug("twisted_apply: %d of %d outputs beyond Nyquist at t=%s",
                         masked, len(z), self.t)
            flags.add('nyquist')
        return GridFunction(values, f.extents, f.roles, flags=flags, mu=self.mu).flag_tail()

    def __repr__(self):
        return "MetaplecticGaussian(t=%s, mu=%g, n=%d)" % (self.t, self.mu, self.n)


def gamma(S, t, mu=1.0, path=None):
    """ gamma^mu_t with the branch tracked along ``path`` (straight from near 0
    when omitted) """
    S = _numeric(S)
    if not is_sp(S):
        raise NotSymplecticError("S^T J + J S differs from 0; S is not in sp(n, R)")
    data = gaussian_branch_track(S, path) if path is not None else None
    return MetaplecticGaussian(S, t, mu, data)


# --- checks ------------------------------------------------------------------

def _relative(a, b):
    scale = b.norm()
    return (a - b).norm() / scale if scale > 0 else (a - b).norm()


def semigroup_check(S, t1=0.1, t2=0.1, f=None, dims=129, extent=3.5, nthreads=None):
    """ ||(f x gamma_t1) x gamma_t2 - f x gamma_{t1+t2}|| / ||f x gamma_{t1+t2}||

    ``f`` is a ComplexGaussian window (default exp(-pi |z|^2)), convolved in
    closed form and compared on a ``dims`` grid of half-width ``extent``, or a
    sampled plane function, convolved with :meth:`MetaplecticGaussian.twisted_apply`.
    The grid route needs chirps below Nyquist; small t fails it on coarse grids.
    """
    if t1 == 0 or t2 == 0:
        return 0.0
    S = _numeric(S)
    n = S.shape[0] // 2
    if f is None:
        f = standard_gaussian(n)
    if isinstance(f, ComplexGaussian):
        first, second, whole = (gamma(S, t).as_complex_gaussian() for t in (t1, t2, t1 + t2))
        template = f.sample(dims, extent)
        z = _stack(template)
        lhs = template.with_values(f.compose(first).compose(second)(z))
        rhs = template.with_values(f.compose(whole)(z))
    else:
        lhs = gamma(S, t2).twisted_apply(gamma(S, t1).twisted_apply(f, nthreads), nthreads)
        rhs = gamma(S, t1 + t2).twisted_apply(f, nthreads)
        if 'nyquist' in lhs.flags or 'nyquist' in rhs.flags:
            logger.warning("Semigroup check at t1=%s t2=%s has masked outputs; "
                           "use a finer grid or a Gaussian window", t1, t2)
    gap = _relative(lhs, rhs)
    logger.debug("Semigroup gap %.3g at t1=%s t2=%s", gap, t1, t2)
    return float(gap)


def _laplacian_target(S, f, mu):
    """ (i / 4 pi mu) Delta^mu_S f as a numeric function of stacked z """
    n = f.n
    op = twisted_symbol(OperatorSpec.from_S(np.real_if_close(S)))
    x = coordinates(n)[:-1]
    z = sp.Matrix(x)
    expr = f.c * sp.exp(-sp.I * sp.pi * (z.T * sp.Matrix(f.M.tolist()) * z)[0, 0])
    applied = op.apply(expr, mu=mu) * sp.I / (4 * sp.pi * mu)
    func = sp.lambdify(x, applied, modules='numpy')
    return lambda zs: np.asarray(func(*np.moveaxis(zs, -1, 0)), dtype=complex)


GeneratorCheck = namedtuple('GeneratorCheck', 'gap quotients target_norm')


def generator_check(S, f=None, mu=1.0, ts=(1e-2, 1e-3), dims=65, extent=3.0):
    """ Richardson-extrapolated (f x_mu gamma_t - f)/t against (i/4 pi mu) Delta^mu_S f

    ``f`` is a ComplexGaussian (default exp(-pi |z|^2)); the convolutions are
    closed-form and compared on a sample grid.
    """
    S = _numeric(S)
    n = S.shape[0] // 2
    f = standard_gaussian(n) if f is None else f
    if f.c == 0:
        return GeneratorCheck(0.0, (), 0.0)
    grid = f.sample(dims, extent)
    z = _stack(grid)
    base = f(z)
    t1, t2 = ts
    quotients = []
    for t in ts:
        moved = f.compose(gamma(S, t, mu).as_complex_gaussian(), mu)
        quotients.append((moved(z) - base) / t)
    extrapolated = (t1 * quotients[1] - t2 * quotients[0]) / (t1 - t2)
    target = _laplacian_target(S, f, mu)(z)
    diff = grid.with_values(extrapolated - target)
    reference = grid.with_values(target)
    gap = diff.norm() / reference.norm()
    logger.debug("Generator gap %.3g (mu=%g)", gap, mu)
    return GeneratorCheck(float(gap), tuple(grid.with_values(q).norm() for q in quotients),
                          reference.norm())


def identity_limit_gap(S, f=None, t=1e-3, mu=1.0, dims=65, extent=3.0):
    """ ||f x_mu gamma_t - f|| / ||f|| in closed form """
    S = _numeric(S)
    f = standard_gaussian(S.shape[0] // 2) if f is None else f
    moved = f.compose(gamma(S, t, mu).as_complex_gaussian(), mu)
    grid = f.sample(dims, extent)
    z = _stack(grid)
    return float(_relative(grid.with_values(moved(z)), grid))


def fresnel_pair_gap(S, t):
    """ Closed-form check of the symplectic-Fourier pair at ``t``:
    max of |q^2 det cosh(tS/2) - 1| and ||B - J A^{-1} J / 4|| / ||B|| """
    g = gamma(S, t)
    data = g.data
    J = standard_J(g.n)
    cosh = matrix_hyperbolic(g.S, t, 'cosh')
    prefactor_gap = abs(data.transform_prefactor ** 2 * np.linalg.det(cosh) - 1)
    B = 0.25 * J.dot(np.linalg.solve(data.A, J))
    matrix_gap = np.linalg.norm(B - data.B) / max(np.linalg.norm(data.B), 1e-300)
    return float(max(prefactor_gap, matrix_gap))


def symplectic_pair_check(S=None, theta=1.0, dims=65, extent=3.0, pad=2):
    """ Transform the sampled gamma_{i theta} by FFT and compare with q e_B

    At imaginary t and elliptic S (default J) both Gaussians decay.
    """
    S = standard_J(1) if S is None else _numeric(S)
    g = gamma(S, 1j * theta)
    numeric = symplectic_fourier(g.sample(dims, extent), pad=pad)
    exact = numeric.with_values(g.symplectic_transform(_stack(numeric)))
    gap = _relative(numeric, exact)
    logger.debug("Symplectic pair gap %.3g at theta=%g", gap, theta)
    return float(gap)


def schwartz_norm(phi_hat):
    """ 2^{-2n} ||phi^||_1 from the symplectic transform """
    return phi_hat.norm(1) / 4 ** phi_hat.n


def _zeta_pairing(g, psi_hat_reflected):
    """ <gamma, psi> = 2^{-2n} integral of gamma^(zeta) psi^(-zeta) """
    values = g.symplectic_transform(_stack(psi_hat_reflected))
    return complex(np.sum(psi_hat_reflected.weights() * values * psi_hat_reflected.values)
                   / 4 ** g.n)


DecayFit = namedtuple('DecayFit', 'ts pairings schwartz_norm beta envelope_holds checked_ts')


def _pairings(S, ts, reflected):
    return [_zeta_pairing(MetaplecticGaussian(S, data.t, 1.0, data), reflected)
            for data in gaussian_branch_table(S, ts)]


def decay_fit(S, phi=None, ts=(0.25, 0.55, 1.15, 2.35, 4.75, 8.0, 16.0),
              check_ts=None, margin=0.9, dims=65, extent=4.0, pad=2):
    """ Fit beta in |<gamma_t, phi>| <= ||phi||_S / cosh(beta t) and check it

    beta is ``margin`` times the smallest arccosh(||phi||_S / |<gamma_t, phi>|) / t
    over ``ts``; the envelope is then checked at ``check_ts`` (50 points on
    [0.1, 5] by default), which share no points with ``ts``.
    """
    S = _numeric(S)
    n = S.shape[0] // 2
    if phi is None:
        phi = standard_gaussian(n).sample(dims, extent)
    ts = sorted(ts)
    check_ts = np.linspace(0.1, 5.0, 50) if check_ts is None else np.sort(check_ts)
    reflected = symplectic_fourier(phi, pad=pad).reflect()
    norm = schwartz_norm(reflected)
    rates = []
    for t, value in zip(ts, _pairings(S, ts, reflected)):
        ratio = norm / abs(value) if value != 0 else np.inf
        rates.append(np.arccosh(max(ratio, 1.0)) / t if np.isfinite(ratio) else np.inf)
    beta = margin * float(min(rates))
    pairings = _pairings(S, list(check_ts), reflected)
    holds = all(abs(p) <= norm / np.cosh(beta * t) * (1 + 1e-9)
                for p, t in zip(pairings, check_ts))
    logger.info("Fitted decay rate beta=%.4g; envelope %s on %d check points",
                beta, "holds" if holds else "fails", len(check_ts))
    return DecayFit(tuple(ts), tuple(pairings), float(norm), beta, holds,
                    tuple(float(t) for t in check_ts))


# --- K-tilde -------------------------------------------------------------------

def _require_hyperbolic(S):
    eig = np.linalg.eigvals(S)
    if np.min(np.abs(eig.real)) <= 1e-8 * max(np.linalg.norm(S, 2), 1.0):
        raise ClassificationInputError(
            "K-tilde needs S without imaginary eigenvalues; spectrum %s" % (np.round(eig, 6),))


def _split_gaussian(expr, zs, u):
    """ expr = P exp(-z^T R z - b u^2) with P polynomial; returns (P, R, b) """
    expr = sp.powsimp(sp.expand(expr))
    exps = expr.atoms(sp.exp)
    if len(exps) != 1:
        raise InvalidConfigError("expected a polynomial times one Gaussian, got %d exponentials"
                                 % len(exps))
    atom = exps.pop()
    exponent = sp.expand(atom.args[0])
    poly = sp.expand(expr.subs(atom, 1))
    variables = list(zs) + [u]
    if poly.has(sp.exp) or not poly.is_polynomial(*variables):
        raise InvalidConfigError("prefactor %s is not a polynomial" % (poly,))
    H = sp.hessian(exponent, variables)
    v = sp.Matrix(variables)
    if H.free_symbols & set(variables) or \
            sp.expand(exponent - (v.T * H * v)[0, 0] / 2) != 0 or any(H[:-1, -1]):
        raise InvalidConfigError("exponent %s is not -z^T R z - b u^2" % (exponent,))
    R = -H[:-1, :-1] / 2
    b = -H[-1, -1] / 2
    numeric = np.array(R.evalf().tolist(), dtype=float)
    if not float(b) > 0 or np.min(np.linalg.eigvalsh(numeric)) <= 0:
        raise InvalidConfigError("exponent %s does not decay" % (exponent,))
    return poly, numeric, b


class _CentralTransform(object):
    """ phi = P(z, u) exp(-z^T R z - b u^2) with its central transform in closed form

    phi^{-mu}(z) = exp(-z^T R z) C(z, mu), the u-moments of the Gaussian
    giving C. For c exp(-i pi z^T M z) and W = R + i pi M,

        <c e_M, phi^{-mu}> = c pi^n det(W)^{-1/2} Psi(mu, W^{-1}),

    Psi being C with each z^a replaced by its Gaussian moment.
    """

    def __init__(self, phi):
        if phi.plane:
            raise DimensionMismatchError("K-tilde pairs with functions on H_n")
        self.n = n = phi.n
        syms = coordinates(n)
        zs, u = list(syms[:-1]), syms[-1]
        poly, self.R, b = _split_gaussian(phi.expr, zs, u)
        mu, s = sp.symbols('mu s', real=True)
        gauss = sp.sqrt(sp.pi / b) * sp.exp(s ** 2 / (4 * b))
        central = 0
        for (k,), coeff in sp.Poly(poly, u).terms():
            central += coeff * (sp.diff(gauss, s, k) if k else gauss)
        central = sp.expand(central.subs(s, 2 * sp.I * sp.pi * mu))

        betas = sp.symbols('beta0:%d' % (2 * n))
        self._pairs = [(i, j) for i in range(2 * n) for j in range(i, 2 * n)]
        entries = sp.symbols('v0:%d' % len(self._pairs))
        V = sp.zeros(2 * n, 2 * n)
        for (i, j), v in zip(self._pairs, entries):
            V[i, j] = V[j, i] = v
        beta = sp.Matrix(betas)
        generating = sp.exp((beta.T * V * beta)[0, 0] / 4)
        origin = {b_: 0 for b_ in betas}
        psi = 0
        for powers, coeff in sp.Poly(central, *zs).terms():
            moment = generating
            for b_, k in zip(betas, powers):
                if k:
                    moment = sp.diff(moment, b_, k)
            psi += coeff * moment.subs(origin)
        self._psi = sp.lambdify((mu,) + tuple(entries), psi, modules='numpy')
        self._origin = sp.lambdify(mu, central.subs({z: 0 for z in zs}), modules='numpy')
        self._values = sp.lambdify([mu] + zs, central, modules='numpy')

    def origin(self, mu):
        """ phi^{-mu}(0) """
        return complex(self._origin(mu))

    def transform(self, mu, z):
        """ phi^{-mu} at points stacked on the last axis of ``z`` """
        z = np.asarray(z, dtype=float)
        values = np.asarray(self._values(mu, *np.moveaxis(z, -1, 0)), dtype=complex)
        return np.exp(-_quadratic(self.R, z)) * values

    def pairings(self, prefactors, matrices, mu):
        """ <c e_M, phi^{-mu}> for stacked prefactors and matrices """
        W = self.R + 1j * np.pi * np.asarray(matrices)
        roots = np.prod(np.sqrt(np.linalg.eigvals(W)), axis=-1)
        V = np.linalg.inv(W)
        psi = self._psi(mu, *[V[..., i, j] for i, j in self._pairs])
        psi = np.broadcast_to(np.asarray(psi, dtype=complex), roots.shape)
        return prefactors * np.pi ** self.n * psi / roots

    def mu_limit(self, step=0.25, cap=64.0, dims=17, extent=4.0):
        axis = np.linspace(-extent, extent, dims)
        z = np.stack(np.meshgrid(*([axis] * (2 * self.n)), indexing='ij'), axis=-1)
        peak = max(np.max(np.abs(self.transform(0.0, z))), 1e-300)
        mu = step
        while mu < cap:
            if np.max(np.abs(self.transform(mu, z))) < MU_CUTOFF * peak and \
                    np.max(np.abs(self.transform(-mu, z))) < MU_CUTOFF * peak:
                return mu
            mu += step
        logger.warning("Central transform still above %g of its peak at mu=%g", MU_CUTOFF, cap)
        return cap


def _t_start(S):
    """ Smallest t kept off the det sinh(tS/2) guard along the branch path """
    n = S.shape[0] // 2
    start = 4.0 * (1e-12 / abs(np.linalg.det(S))) ** (1.0 / (2 * n))
    return float(np.clip(start, 1e-6, 1e-2))


def _t_nodes(t_start, t_max, panel, order):
    """ Gauss-Legendre panels on [t_start, t_max]; widths double from t_start up to ``panel`` """
    edges = [t_start]
    while edges[-1] < t_max:
        edges.append(min(edges[-1] + min(edges[-1], panel), t_max))
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(a, b, order)
        nodes.extend(x)
        weights.extend(w)
    return np.array(nodes), np.array(weights)


class _KTildeRules(object):
    """ t and mu rules for K-tilde with the closed-form inner pairings of ``phi``

    On [0, t_start] the pairing is replaced by its t -> 0 limit phi^{-mu}(0);
    beyond it the t-panels grow geometrically, which follows the change of
    gamma^mu_t around t ~ |mu|, and stop at cosh(beta t_max) = 1e8. The
    mu-panels refine geometrically towards 0.
    """

    def __init__(self, S, phi, t_panel=1.0, t_order=12, mu_order=8, mu_min=1e-9):
        S = _numeric(S).real
        _require_hyperbolic(S)
        self.n = S.shape[0] // 2
        if phi.n != self.n:
            raise DimensionMismatchError("phi lives on H_%d, S on R^%d" % (phi.n, 2 * self.n))
        self.central = _CentralTransform(phi)
        fit = decay_fit(S)
        if not fit.beta > 0:
            raise SingularParameterError(0, "no positive decay rate for this S")
        self.beta = fit.beta
        self.t_start = _t_start(S)
        self.t_max = max(float(np.arccosh(T_CUTOFF) / fit.beta), 2 * self.t_start)
        self.tn, self.tw = _t_nodes(self.t_start, self.t_max, t_panel, t_order)
        table = gaussian_branch_table(S, self.tn, substeps=4, start=0.5)
        self._p = np.array([d.prefactor for d in table])
        self._A = np.array([d.A for d in table])
        self.mu_max = self.central.mu_limit()
        self.mus, self.mws = mu_quadrature(self.mu_max, mu_min=mu_min, order=mu_order)

    def pairings(self, mu):
        """ <gamma^mu_t, phi^{-mu}> at every t-node """
        scale = abs(mu) ** self.n
        if mu > 0:
            prefactors, matrices = scale * self._p, mu * self._A
        else:
            prefactors, matrices = scale * np.conj(self._p), -abs(mu) * np.conj(self._A)
        return self.central.pairings(prefactors, matrices, mu)

    def inner(self, mu, alpha):
        """ integral over t of <gamma^mu_t, phi^{-mu}> exp(-i alpha t / 2) """
        phase = self.tw * np.exp(-0.5j * alpha * self.tn)
        return self.t_start * self.central.origin(mu) + complex(np.dot(phase, self.pairings(mu)))


KTildeResult = namedtuple('KTildeResult', 'value order growth beta t_max mu_max nodes')


def ktilde_pairing(S, alpha, phi, M=None, t_panel=1.0, t_order=12, mu_order=8, mu_min=1e-9,
                   nthreads=None):
    """ <K-tilde, phi> for hyperbolic S

    The value is

        - sum_t sum_mu w_t w_mu <gamma^mu_t, phi^{-mu}> exp(-i alpha t/2)
          (2 pi i mu)^{M+1} / (4 pi i mu)

    with Gauss-Legendre panels in t, doubling in width from near 0, on
    [0, T], cosh(beta T) = 1e8, and in mu on [-mu_max, mu_max], refined
    geometrically towards 0, where phi^mu falls below 1e-8 of its peak.
    The inner pairings are Gaussian moments in closed form.

    Parameters
    ----------
    S: 2n x 2n real matrix
        No eigenvalue on the imaginary axis.
    alpha: float
    phi: TestFunction
        Polynomial times exp(-z^T R z - b u^2) on H_n.
    M: int [None]
        Order of the central weight; the smallest admissible order when omitted.
    """
    rules = _KTildeRules(S, phi, t_panel, t_order, mu_order, mu_min)

    growth = None
    if M is None:
        small = (1e-2, 1e-3)
        values = [abs(rules.inner(m, alpha)) for m in small]
        if min(values) > 0:
            growth = float(np.log(values[0] / values[1]) / np.log(small[0] / small[1]))
        else:
            growth = np.inf
        M = max(0, int(np.floor(-1 - growth)) + 1) if np.isfinite(growth) else 0
        logger.info("K-tilde order M=%d from small-mu growth %.3g", M, growth)

    def work(mu):
        return rules.inner(mu, alpha) * (2j * np.pi * mu) ** M / 2.0

    values = parallel_map(work, list(rules.mus), nthreads)
    value = -complex(np.dot(rules.mws, values))
    logger.debug("K-tilde over %d t-nodes and %d mu-nodes: %s",
                 len(rules.tn), len(rules.mus), value)
    return KTildeResult(value, M, growth, rules.beta, rules.t_max, float(rules.mu_max),
                        (len(rules.tn), len(rules.mus)))


def ktilde_refinement_gap(S, alpha, phi, M=0, nthreads=None, **options):
    """ Relative change of the pairing when the t and mu rules are doubled """
    coarse = ktilde_pairing(S, alpha, phi, M, nthreads=nthreads, **options).value
    fine_options = dict(options)
    fine_options['mu_order'] = 2 * options.get('mu_order', 8)
    fine_options['t_order'] = 2 * options.get('t_order', 12)
    fine = ktilde_pairing(S, alpha, phi, M, nthreads=nthreads, **fine_options).value
    return float(abs(fine - coarse) / max(abs(fine), 1e-300))


def ktilde_integrand_bound(S, alphas, phi, M=0, **options):
    """ Absolute bound of the K-tilde double integral for each alpha

    Sums |w_t w_mu <gamma^mu_t, phi^{-mu}>| exp(Im(alpha) t / 2) |2 pi mu|^M / 2
    over the rules of :func:`ktilde_pairing`, so it is nondecreasing in Im(alpha).
    """
    rules = _KTildeRules(S, phi, **options)
    weights = np.abs(rules.mws) * np.abs(2 * np.pi * rules.mus) ** M / 2.0
    heads = np.array([abs(rules.central.origin(mu)) for mu in rules.mus]) * rules.t_start
    table = np.array([np.abs(rules.pairings(mu)) for mu in rules.mus]) * rules.tw
    bounds = []
    for alpha in alphas:
        growth = np.exp(0.5 * np.imag(alpha) * rules.tn)
        bounds.append(float(np.dot(weights, heads + table.dot(growth))))
    return bounds


WeakIdentity = namedtuple('WeakIdentity', 'pairing target ratio order')


def default_probe(n):
    """ (1 + u) exp(-pi (|z|^2 + u^2)); U applied once is 1 at the origin """
    u = coordinates(n)[-1]
    return TestFunction.gaussian(n, polynomial=1 + u)


def ktilde_weak_identity(S, alpha, psi=None, nthreads=None, **options):
    """ |<K-tilde, tL psi>| / |(U^{M+1} psi)(0)| for L = Delta_S + i alpha U """
    S = _numeric(S).real
    n = S.shape[0] // 2
    psi = default_probe(n) if psi is None else psi
    L = OperatorSpec.from_S(S, alpha)
    phi = apply_operator(L.transpose(), psi)
    result = ktilde_pairing(S, alpha, phi, nthreads=nthreads, **options)
    target = psi
    for _ in range(result.order + 1):
        target = field_apply(2 * n, target)
    target_value = complex(target((0,) * (2 * n + 1)))
    ratio = abs(result.value) / abs(target_value)
    logger.info("K-tilde weak identity ratio %.4g", ratio)
    return WeakIdentity(result.value, target_value, float(ratio), result.order)

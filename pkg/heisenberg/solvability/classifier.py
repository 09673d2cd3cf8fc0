# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Local solvability decisions for left-invariant second-order operators.

Real coefficient matrices are decided by three conditions on
Delta_S + i alpha U: alpha is real, S is semisimple with imaginary
spectrum, and alpha lies in the critical set of the frequencies of S.
The operator fails to be locally solvable exactly when all three hold.

Complex operators are handled block by block for S = diag(gamma_j S_(j))
with S_(j)^2 = -I. Only part of that landscape is settled, so
``Undetermined`` is an ordinary outcome, and every decided report carries
the data it was decided on.
"""

from collections import namedtuple
from dataclasses import dataclass, field
import logging

import numpy as np
import sympy as sp

from .diophantine import (compositions, diophantine_decide_rational,
                          diophantine_witness_search, is_rational)
from .ellipticity import qlambda_reduce
from .enums import BlockKind, Verdict
from .exceptions import (ClassificationInputError, DimensionMismatchError,
                         InvalidConfigError, NotSymplecticError)
from .group import standard_J
from .operators import OperatorSpec, apply_operator
from .schrodinger import WitnessFound, cr_nonsolvability_test
from .symbolic import TestFunction
from .symplectic import (_is_sympy, _numeric, classify_2x2_block, embed_blocks,
                         hormander_Hprime, is_Sp, is_sp, normal_block, spectral_classify)
from .utils import format_scalar, is_exact, parallel_map, to_jsonable

logger = logging.getLogger(__name__)

WITNESS_SHELLS = 40
MEMBERSHIP_TOL = 1e-9
MAX_ENUMERATION = 5 * 10 ** 6

REAL_CRITERION = 'real-coefficient criterion'
LARGE_BLOCK = 'minimal block of dimension > 2'
SUB_LAPLACIAN = 'generalized sub-Laplacian on H_1'
DEGENERATE = 'degenerate generalized sub-Laplacian on H_1'
HYPERBOLIC_TYPE = 'generalized sub-Laplacian of hyperbolic type on H_1'
TYPE3_PLANE = 'Type 3 block on H_1'
POSITIVE_COMBINATION = 'positive combination of generalized sub-Laplacians'
ELLIPTIC_REDUCTION = 'elliptic reduction of the paired hyperbolic blocks on H_2'
HPRIME = "Hormander's criterion (H')"
NO_CRITERION = 'no applicable criterion'


@dataclass
class ClassificationReport:
    """ Verdict plus the condition trail and witnesses it was decided on

    ``conditions`` always carries ``alpha_real``, ``semisimple_imaginary``
    and ``diophantine_fails`` (``None`` when not established); complex
    branches add their own entries.
    """
    verdict: Verdict
    theorem: str
    conditions: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    exactness: str = 'float'
    notes: list = field(default_factory=list)

    @property
    def decided(self):
        return self.verdict is not Verdict.undetermined

    def to_dict(self):
        conditions = {key: self.conditions.get(key)
                      for key in ('alpha_real', 'semisimple_imaginary', 'diophantine_fails')}
        if conditions['diophantine_fails'] is None:
            conditions['diophantine_fails'] = 'unknown'
        for key, value in self.conditions.items():
            conditions.setdefault(key, value)
        out = {'verdict': self.verdict.value, 'theorem': self.theorem,
               'conditions': to_jsonable(conditions), 'witnesses': to_jsonable(self.witnesses),
               'exactness': self.exactness}
        if self.notes:
            out['notes'] = list(self.notes)
        return out


def _trichotomy(values):
    if any(v is False for v in values):
        return Verdict.locally_solvable
    if all(v is True for v in values):
        return Verdict.not_locally_solvable
    return Verdict.undetermined


# --- real coefficients -----------------------------------------------------------

def _alpha_real(alpha, exact):
    if exact:
        return bool(sp.im(alpha) == 0)
    alpha = complex(alpha)
    if alpha.imag == 0:
        return True
    if abs(alpha.imag) <= MEMBERSHIP_TOL * max(1.0, abs(alpha)):
        return None
    return False


def classify_real(spec, k_max=WITNESS_SHELLS):
    """ Decide local solvability of Delta_S + i alpha U for real S

    Exact rational input gets an exact diophantine decision; float input
    is only scanned up to ``k_max`` shells, so it never yields
    ``NotLocallySolvable``.

    >>> spec = OperatorSpec(sp.Matrix([[1, 0], [0, -1]]), 7)
    >>> classify_real(spec).verdict.value
    'LocallySolvable'
    """
    if not spec.is_real:
        raise ClassificationInputError("coefficient matrix has a nonzero imaginary part")
    exactness = 'rational' if spec.exact else 'float'
    notes = []
    witnesses = {}

    alpha_real = _alpha_real(spec.alpha, spec.exact)
    spectral = spectral_classify(spec.S)
    witnesses['eigenvalues'] = list(spectral.eigenvalues)
    if spectral.undetermined:
        semisimple_imaginary = None
        notes.append(spectral.note)
    else:
        semisimple_imaginary = bool(spectral.semisimple and spectral.purely_imaginary)

    diophantine_fails = None
    if semisimple_imaginary and spectral.frequencies is not None:
        freqs = spectral.frequencies
        witnesses['frequencies'] = list(freqs)
        witnesses['T'] = spectral.transform
        if (spec.exact and alpha_real and is_rational(spec.alpha)
                and all(is_rational(f) for f in freqs)):
            decision = diophantine_decide_rational(freqs, spec.alpha)
        else:
            decision = diophantine_witness_search(freqs, complex(spec.alpha), k_max)
        witnesses['diophantine_witness'] = decision.to_dict()
        if decision.holds is not None:
            diophantine_fails = not decision.holds
    elif semisimple_imaginary:
        notes.append('normal form unavailable; frequencies unknown')

    conditions = {'alpha_real': alpha_real, 'semisimple_imaginary': semisimple_imaginary,
                  'diophantine_fails': diophantine_fails}
    verdict = _trichotomy(conditions.values())
    if any(b != 0 for b in spec.first_order):
        notes.append('first-order X/Y terms are not covered by the criterion')
        verdict = Verdict.undetermined
    if verdict is Verdict.not_locally_solvable and not spec.exact:
        verdict = Verdict.undetermined
    if verdict is Verdict.locally_solvable:
        witnesses['failing_condition'] = [k for k, v in conditions.items() if v is False][0]
    logger.info("Real classification: %s (%s)", verdict.value, conditions)
    return ClassificationReport(verdict, REAL_CRITERION, conditions, witnesses, exactness, notes)


def cr_witness(spec, report=None, K=64):
    """ Run the Hermite CR test on the normal-form conjugate of ``spec``

    Both signs of mu0 are tried; the result is stored under
    ``witnesses['cr_test']`` when a report is given.

    Returns
    -------
    (mu0, WitnessFound or NoWitnessUpTo)
    """
    spectral = spectral_classify(spec.S)
    if spectral.frequencies is None:
        raise ClassificationInputError("operator has no normal form")
    normal = OperatorSpec.from_S(normal_block([float(f) for f in spectral.frequencies]),
                                 complex(spec.alpha))
    for mu0 in (1.0, -1.0):
        result = cr_nonsolvability_test(normal, mu0, K)
        if isinstance(result, WitnessFound):
            break
    if report is not None:
        report.witnesses['cr_test'] = {'mu0': mu0, 'found': isinstance(result, WitnessFound),
                                       'sigmas': list(result.sigmas)}
    return mu0, result


# --- exceptional set -------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalSet:
    gammas: tuple
    bound: int
    elements: frozenset
    exact: bool = True

    def __contains__(self, value):
        if self.exact and is_exact(value):
            return sp.expand(sp.nsimplify(value)) in self.elements
        value = complex(value)
        return any(abs(complex(e) - value) <= MEMBERSHIP_TOL * max(1.0, abs(value))
                   for e in self.elements)

    def __len__(self):
        return len(self.elements)

    def sorted(self):
        return sorted(self.elements, key=lambda e: (complex(e).real, complex(e).imag))

    def to_dict(self):
        return {'gammas': [format_scalar(g) for g in self.gammas], 'bound': self.bound,
                'elements': [format_scalar(e) for e in self.sorted()]}


def exceptional_set(gammas, bound):
    """ {+-sum_j gamma_j (2k_j + 1) : sum k_j <= bound}

    >>> sorted(str(e) for e in exceptional_set([1], 1).elements)
    ['-1', '-3', '1', '3']
    """
    if bound < 0:
        raise InvalidConfigError("bound must be nonnegative")
    gammas = tuple(gammas)
    exact = all(is_exact(g) for g in gammas)
    values = [sp.nsimplify(g) for g in gammas] if exact else [complex(g) for g in gammas]
    if not gammas:
        zero = sp.Integer(0) if exact else 0j
        return ExceptionalSet((), bound, frozenset([zero]), exact)
    elements = set()
    for s in range(bound + 1):
        for k in compositions(s, len(values)):
            total = sum((2 * int(kj) + 1) * g for kj, g in zip(k, values))
            if exact:
                total = sp.expand(total)
            elements.add(total)
            elements.add(-total)
    return ExceptionalSet(tuple(values), bound, frozenset(elements), exact)


def _half_plane_direction(gammas):
    angles = np.angle(np.asarray(gammas, dtype=complex))
    if angles.max() - angles.min() >= np.pi - 1e-12:
        return None
    return np.exp(0.5j * (angles.max() + angles.min()))


def exceptional_membership(gammas, alpha, exact):
    """ Decide alpha in E by a finite scan

    With w such that c_j = Re(conj(w) gamma_j) > 0, any representation of
    alpha has 2 sum k_j c_j <= |alpha| - sum c_j, which bounds the shells.

    Returns
    -------
    (member, witness, note)
        ``member`` is True, False or None (borderline float hit, or no
        half-plane containing every gamma_j).
    """
    g = np.asarray([complex(v) for v in gammas])
    a = complex(alpha)
    w = _half_plane_direction(g)
    if w is None:
        return None, None, 'factors do not lie in an open half-plane'
    c = (np.conj(w) * g).real
    top = int(np.floor((abs(a) - c.sum()) / (2 * c.min()) + 1e-9))
    exact_values = [sp.nsimplify(v) for v in gammas] if exact else None
    scanned = 0
    borderline = None
    for s in range(max(top, -1) + 1):
        ks = compositions(s, len(g))
        scanned += len(ks)
        if scanned > MAX_ENUMERATION:
            return None, None, 'enumeration stopped at shell %d' % s
        base = (2 * ks + 1).dot(g)
        for sign, label in ((1, '+'), (-1, '-')):
            hits = np.nonzero(np.abs(base + sign * a) <= 1e-6 * max(1.0, abs(a)))[0]
            for i in hits:
                k = tuple(int(v) for v in ks[i])
                if exact:
                    value = sum((2 * kj + 1) * v for kj, v in zip(k, exact_values))
                    if sp.simplify(value + sign * sp.nsimplify(alpha)) == 0:
                        return True, {'k': list(k), 'sign': label}, ''
                elif abs(base[i] + sign * a) <= MEMBERSHIP_TOL * max(1.0, abs(a)):
                    borderline = {'k': list(k), 'sign': label}
    if borderline is not None:
        return None, borderline, 'alpha within tolerance of E'
    return False, None, ''


# --- complex blocks --------------------------------------------------------------

Block = namedtuple('Block', 'gamma matrix kind lam eps size')


def _as_array(M):
    return _numeric(M) if _is_sympy(M) else np.asarray(M, dtype=complex)


def _parse_blocks(blocks):
    parsed = []
    for gamma, M in blocks:
        if complex(gamma) == 0:
            raise ClassificationInputError("block factors must be nonzero")
        arr = _as_array(M)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2:
            raise DimensionMismatchError("blocks must be 2m x 2m, got %s" % (arr.shape,))
        size = arr.shape[0]
        if size > 2:
            if not is_sp(arr) or np.max(np.abs(arr.dot(arr) + np.eye(size))) > MEMBERSHIP_TOL:
                raise ClassificationInputError("a %dx%d block must satisfy S^2 = -I in sp" % (size, size))
            parsed.append(Block(gamma, arr, None, None, None, size))
            continue
        kind = classify_2x2_block(arr)
        parsed.append(Block(gamma, arr, kind.kind, kind.lam, kind.eps, 2))
    return parsed


def _odd_membership(a, signs, exact):
    """ Is a = s (2k + 1) for some k >= 0 and s in ``signs``? None on a float near-hit """
    if exact:
        a = sp.nsimplify(a)
        if sp.im(a) != 0 or not a.is_integer:
            return False, None
        value = int(a)
        if value % 2 == 0 or (1 if value > 0 else -1) not in signs:
            return False, None
        return True, {'k': (abs(value) - 1) // 2, 'sign': '+' if value > 0 else '-'}
    a = complex(a)
    odd = 2 * np.round((a.real - 1) / 2) + 1
    if abs(a - odd) > MEMBERSHIP_TOL * max(1.0, abs(a)) or (1 if odd > 0 else -1) not in signs:
        return False, None
    return None, {'k': int(abs(odd) - 1) // 2, 'sign': '+' if odd > 0 else '-'}


def _ratio(alpha, gamma, exact):
    if exact:
        return sp.nsimplify(sp.simplify(sp.nsimplify(alpha) / sp.nsimplify(gamma)))
    return complex(alpha) / complex(gamma)


def _single_plane(block, alpha, exact, lower_order, exactness):
    if block.kind is BlockKind.type3:
        if lower_order:
            return ClassificationReport(Verdict.undetermined, NO_CRITERION,
                                        {'block': 'Type3'}, exactness=exactness,
                                        notes=['first-order terms on a Type 3 block'])
        return ClassificationReport(Verdict.locally_solvable, TYPE3_PLANE, {'block': 'Type3'},
                                    exactness=exactness)
    conditions = {'block': 'Type1', 'lambda': block.lam, 'eps': block.eps}
    if block.lam > 1:
        return ClassificationReport(Verdict.not_locally_solvable, HYPERBOLIC_TYPE, conditions,
                                    exactness=exactness)
    if lower_order:
        return ClassificationReport(Verdict.undetermined, NO_CRITERION, conditions,
                                    exactness=exactness,
                                    notes=['first-order terms on a generalized sub-Laplacian'])
    a = _ratio(alpha, block.gamma, exact)
    if abs(block.lam) == 1:
        theorem, signs = DEGENERATE, (int(block.eps * block.lam),)
    else:
        theorem, signs = SUB_LAPLACIAN, (1, -1)
    member, witness = _odd_membership(a, signs, exact)
    conditions.update({'alpha_over_gamma': a, 'critical': member})
    verdict = {True: Verdict.not_locally_solvable, False: Verdict.locally_solvable,
               None: Verdict.undetermined}[member]
    witnesses = {'critical_witness': witness} if witness else {}
    return ClassificationReport(verdict, theorem, conditions, witnesses, exactness)


def _is_paired_hyperbolic(parsed):
    if len(parsed) != 2 or any(b.kind is not BlockKind.type1 for b in parsed):
        return False
    first, second = parsed
    if first.lam <= 1 or abs(first.lam - second.lam) > MEMBERSHIP_TOL * first.lam:
        return False
    if {first.eps, second.eps} != {1, -1}:
        return False
    g1, g2 = complex(first.gamma), complex(second.gamma)
    return abs(g1 - g2) <= MEMBERSHIP_TOL * abs(g1)


def _positive_pattern(parsed):
    """ Type 1 blocks with |lam| <= 1 whose real parts of gamma_j L_j are semidefinite """
    for b in parsed:
        if b.kind is not BlockKind.type1 or b.lam > 1:
            return False
        lam = b.eps * b.lam
        form = np.real(complex(b.gamma) * np.array([[1 - lam * lam, 1j * lam], [1j * lam, 1]]))
        if np.linalg.eigvalsh(form).min() < -MEMBERSHIP_TOL:
            return False
    return True


def _real_spec(S, alpha, exact):
    if exact:
        S = sp.Matrix(np.real(S)).applyfunc(lambda v: sp.nsimplify(v, rational=True))
        return OperatorSpec.from_S(S, sp.nsimplify(alpha))
    return OperatorSpec.from_S(np.real(S), complex(alpha))


def _hprime_report(S, exactness, notes, starts):
    result = hormander_Hprime(S.real, S.imag, starts=starts)
    witnesses = {'hprime': {'found': result.found, 'certificate': result.certificate}}
    if result.found:
        witnesses['hprime_zeta'] = list(result.zeta)
        witnesses['hprime_values'] = list(result.values)
        return ClassificationReport(Verdict.not_locally_solvable, HPRIME, {'hprime': True},
                                    witnesses, exactness, notes)
    notes = notes + ['no (H\') witness; the pattern matches no settled class']
    return ClassificationReport(Verdict.undetermined, NO_CRITERION, {'hprime': False},
                                witnesses, exactness, notes)


def classify_complex_blocks(blocks, alpha, lower_order=False, hprime_starts=200):
    """ Classify Delta_S + i alpha U (+ P) for S = diag(gamma_j S_(j))

    Parameters
    ----------
    blocks: list of (gamma_j, S_(j))
        ``S_(j)`` is a Type 1 or Type 3 2x2 normal form, or a declared
        minimal 2m x 2m block with S_(j)^2 = -I.
    alpha: complex
    lower_order: bool [False]
        The operator also carries first-order X/Y terms. Only results
        valid for arbitrary first-order perturbations are used then.
    hprime_starts: int [200]
    """
    if not blocks:
        raise DimensionMismatchError("need at least one block")
    parsed = _parse_blocks(blocks)
    exact = is_exact(alpha) and all(is_exact(b.gamma) for b in parsed)
    exactness = 'rational' if exact else 'float'
    S = embed_blocks([complex(b.gamma) * b.matrix for b in parsed])
    n = S.shape[0] // 2
    base = {'block_kinds': [b.kind.value if b.kind else 'size %d' % b.size for b in parsed]}

    if any(b.size > 2 for b in parsed):
        report = ClassificationReport(Verdict.not_locally_solvable, LARGE_BLOCK, base,
                                      {'block_sizes': [b.size for b in parsed]}, exactness)
        logger.info("Block of size > 2: not locally solvable")
        return report
    odd = [j for j, b in enumerate(parsed) if b.kind is BlockKind.not_normal_form]
    if odd:
        return _hprime_report(S, exactness, ['blocks %s are not in normal form' % odd],
                              hprime_starts)
    if n == 1:
        report = _single_plane(parsed[0], alpha, exact, lower_order, exactness)
        report.conditions.update(base)
        return report
    if _is_paired_hyperbolic(parsed):
        reduction = qlambda_reduce(sp.nsimplify(parsed[0].lam))
        witnesses = {'lambda': parsed[0].lam, 'ellipticity_margin': reduction.margin,
                     'reduction_matches': reduction.matches}
        return ClassificationReport(Verdict.locally_solvable, ELLIPTIC_REDUCTION, base,
                                    witnesses, exactness)
    if np.allclose(S.imag, 0, atol=0) and not lower_order:
        report = classify_real(_real_spec(S, alpha, exact))
        report.notes.append('all blocks are real')
        return report
    if _positive_pattern(parsed) and not lower_order:
        gammas = [b.gamma for b in parsed]
        member, witness, note = exceptional_membership(gammas, alpha, exact)
        conditions = dict(base, in_exceptional_set=member)
        notes = [note] if note else []
        if member is False:
            return ClassificationReport(Verdict.locally_solvable, POSITIVE_COMBINATION,
                                        conditions, {}, exactness, notes)
        notes.append('alpha in E is not settled')
        return ClassificationReport(Verdict.undetermined, POSITIVE_COMBINATION, conditions,
                                    {'exceptional_witness': witness}, exactness, notes)
    return _hprime_report(S, exactness, [], hprime_starts)


def plane_blocks(S, exact=False):
    """ Split S into gamma_j S_(j) on the planes (x_j, y_j), or None

    gamma_j is the principal root of -c where S_j^2 = c I; the sign is
    flipped when only -gamma_j gives a recognised normal form.
    """
    n = S.shape[0] // 2
    M = sp.Matrix(S) if exact else _as_array(S)
    for i in range(2 * n):
        for j in range(2 * n):
            if i % n != j % n and M[i, j] != 0:
                return None
    blocks = []
    for j in range(n):
        idx = [j, n + j]
        B = M.extract(idx, idx) if exact else M[np.ix_(idx, idx)]
        if exact:
            square = (B * B).applyfunc(sp.simplify)
            c = square[0, 0]
            if c == 0 or square != c * sp.eye(2):
                return None
            gamma = sp.sqrt(-c)
        else:
            square = B.dot(B)
            c = square[0, 0]
            if abs(c) <= MEMBERSHIP_TOL or np.max(np.abs(square - c * np.eye(2))) > MEMBERSHIP_TOL:
                return None
            gamma = np.sqrt(-c)
        for g in (gamma, -gamma):
            normal = (B / g).applyfunc(sp.simplify) if exact else B / g
            if classify_2x2_block(_as_array(normal)).kind is not BlockKind.not_normal_form:
                break
        blocks.append((g, normal))
    return blocks


def classify(spec, **kwargs):
    """ Dispatch an OperatorSpec to the real or the block classifier

    Complex S that is not block-diagonal on the coordinate planes goes
    straight to the (H') search.
    """
    if spec.is_real:
        return classify_real(spec, **kwargs)
    lower_order = any(b != 0 for b in spec.first_order)
    blocks = plane_blocks(spec.S, spec.exact)
    if blocks is None:
        S = _as_array(spec.S)
        return _hprime_report(S, 'rational' if spec.exact else 'float',
                              ['S is not block-diagonal on the coordinate planes'], 200)
    return classify_complex_blocks(blocks, spec.alpha, lower_order=lower_order)


def classify_batch(specs, nthreads=None):
    return parallel_map(classify, list(specs), nthreads)


# --- covariance and principal symbols -------------------------------------------------

def symplectic_covariance_check(S, T, f=None, alpha=0, points=8, seed=0):
    """ max |Delta_S(f o T) - (Delta_{T S T^-1} f) o T| at random points

    With A = S J the conjugated operator has coefficient matrix T A T^t.
    Exact S and T give an exact zero.
    """
    if not is_Sp(T):
        raise NotSymplecticError("T^t J T differs from J")
    spec = OperatorSpec.from_S(S, alpha)
    f = TestFunction.gaussian(spec.n) if f is None else f
    exact = spec.exact and _is_sympy(T) and all(is_exact(v) for v in T)
    if exact:
        T = sp.Matrix(T)
        moved = OperatorSpec(T * spec.A * T.T, spec.alpha)
    else:
        T = np.real(_as_array(T))
        A = _as_array(spec.A)
        A = T.dot(A).dot(T.T)
        moved = OperatorSpec(0.5 * (A + A.T), complex(spec.alpha))
    lhs = apply_operator(spec, f.compose_linear(T))
    rhs = apply_operator(moved, f).compose_linear(T)
    gap = lhs - rhs
    if exact and gap.is_zero():
        return 0.0
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-1, 1, size=(points, len(gap.symbols)))
    return float(np.max(np.abs(gap.evaluate(*pts.T))))


SymbolVariables = namedtuple('SymbolVariables', 'z u zeta mu')


def symbol_variables(n):
    xs = sp.symbols('x1:%d' % (n + 1), real=True)
    ys = sp.symbols('y1:%d' % (n + 1), real=True)
    xis = sp.symbols('xi1:%d' % (n + 1), real=True)
    etas = sp.symbols('eta1:%d' % (n + 1), real=True)
    return SymbolVariables(xs + ys, sp.Symbol('u', real=True), xis + etas,
                           sp.Symbol('mu', real=True))


def principal_symbol(S, variables=None):
    """ -(zeta - pi mu J z)^t A (zeta - pi mu J z) with A = S J """
    S = sp.Matrix(S)
    n = S.shape[0] // 2
    v = variables or symbol_variables(n)
    J = standard_J(n, exact=True)
    w = sp.Matrix(v.zeta) - sp.pi * v.mu * J * sp.Matrix(v.z)
    return sp.expand(-(w.T * S * J * w)[0])


def poisson_bracket(f, g, variables):
    """ sum over (z_j, zeta_j) and (u, mu) of f_zeta g_z - f_z g_zeta """
    pairs = list(zip(variables.z, variables.zeta)) + [(variables.u, variables.mu)]
    total = sum(sp.diff(f, p) * sp.diff(g, q) - sp.diff(f, q) * sp.diff(g, p)
                for q, p in pairs)
    return sp.expand(total)


def poisson_identity_residual(S1, S2):
    """ {sigma_S1, sigma_S2} - 4 pi mu sigma_[S1, S2], expanded """
    S1, S2 = sp.Matrix(S1), sp.Matrix(S2)
    v = symbol_variables(S1.shape[0] // 2)
    lhs = poisson_bracket(principal_symbol(S1, v), principal_symbol(S2, v), v)
    rhs = 4 * sp.pi * v.mu * principal_symbol(S1 * S2 - S2 * S1, v)
    return sp.expand(lhs - rhs)


def sp_basis(n):
    """ S = -A J for A running over the symmetric unit matrices """
    J = standard_J(n, exact=True)
    basis = []
    for j in range(2 * n):
        for k in range(j, 2 * n):
            A = sp.zeros(2 * n)
            A[j, k] = A[k, j] = 1
            basis.append(sp.ImmutableMatrix(-A * J))
    return basis

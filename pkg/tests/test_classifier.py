# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

import itertools

import numpy as np
import pytest
import sympy as sp

from heisenberg.solvability.classifier import (
    ELLIPTIC_REDUCTION, HYPERBOLIC_TYPE, LARGE_BLOCK, POSITIVE_COMBINATION, REAL_CRITERION,
    TYPE3_PLANE, classify, classify_batch, classify_complex_blocks, classify_real, cr_witness,
    exceptional_membership, exceptional_set, plane_blocks, poisson_identity_residual,
    principal_symbol, sp_basis, symbol_variables, symplectic_covariance_check)
from heisenberg.solvability.enums import BlockKind, Verdict
from heisenberg.solvability.exceptions import (ClassificationInputError, DimensionMismatchError,
                                               NotSymplecticError)
from heisenberg.solvability.group import standard_J
from heisenberg.solvability.operators import (OperatorSpec, type1_operator, type3_operator)
from heisenberg.solvability.schrodinger import NoWitnessUpTo, WitnessFound
from heisenberg.solvability.suites import golden_cases
from heisenberg.solvability.symplectic import classify_2x2_block, type1_block

minus_I = -sp.eye(2)


@pytest.mark.parametrize('label, thunk, expected', golden_cases(),
                         ids=[case[0] for case in golden_cases()])
def test_golden_verdicts(label, thunk, expected):
    assert thunk().verdict is expected


def test_critical_alpha_carries_its_witness():
    report = classify_real(OperatorSpec(minus_I, 3))
    assert report.theorem == REAL_CRITERION
    assert report.exactness == 'rational'
    assert report.conditions == {'alpha_real': True, 'semisimple_imaginary': True,
                                 'diophantine_fails': True}
    assert report.witnesses['diophantine_witness']['holds'] is False


def test_failing_condition_is_named():
    report = classify_real(OperatorSpec(minus_I, 2 * sp.I))
    assert report.verdict is Verdict.locally_solvable
    assert report.witnesses['failing_condition'] == 'alpha_real'
    report = classify_real(OperatorSpec(sp.diag(1, -1), 0))
    assert report.witnesses['failing_condition'] == 'semisimple_imaginary'


def test_float_input_is_never_negative():
    report = classify_real(OperatorSpec(-np.eye(2), 3.0))
    assert report.exactness == 'float'
    assert report.verdict is not Verdict.not_locally_solvable


def test_first_order_terms_are_undetermined():
    report = classify_real(OperatorSpec(minus_I, 3, [1, 0]))
    assert report.verdict is Verdict.undetermined
    assert report.notes


def test_real_classifier_rejects_complex_input():
    with pytest.raises(ClassificationInputError):
        classify_real(type3_operator())


def test_report_serialisation():
    report = classify_real(OperatorSpec(sp.diag(1, -1), 7))
    out = report.to_dict()
    assert out['verdict'] == 'LocallySolvable'
    assert out['conditions']['diophantine_fails'] == 'unknown'
    assert out['conditions']['semisimple_imaginary'] is False
    assert out['exactness'] == 'rational'
    assert report.decided


def test_exceptional_set():
    E = exceptional_set([1, sp.Rational(1, 2)], 1)
    assert sp.Rational(3, 2) in E
    assert -sp.Rational(7, 2) in E
    assert 2 not in E
    assert len(exceptional_set([1], 1)) == 4
    assert exceptional_set([], 3).elements == frozenset([0])
    with pytest.raises(ValueError):
        exceptional_set([1], -1)


def test_exceptional_membership():
    member, witness, _ = exceptional_membership([1, sp.I], -1 - 3 * sp.I, True)
    assert member is True
    assert witness == {'k': [0, 1], 'sign': '+'}
    member, witness, _ = exceptional_membership([1, sp.I], 2, True)
    assert member is False and witness is None
    member, _, note = exceptional_membership([1, -1], 2, True)
    assert member is None
    assert 'half-plane' in note


def test_plane_blocks_recover_normal_forms():
    blocks = plane_blocks(standard_J(1, exact=True), exact=True)
    assert len(blocks) == 1
    gamma, normal = blocks[0]
    assert gamma * normal == standard_J(1, exact=True)
    assert classify_2x2_block(np.array(normal, dtype=complex)).kind is BlockKind.type1


def test_plane_blocks_need_block_diagonal():
    S = np.zeros((4, 4))
    S[0, 1] = 1
    assert plane_blocks(S) is None


@pytest.mark.parametrize('spec, verdict, theorem', [
    (type1_operator(2), Verdict.not_locally_solvable, HYPERBOLIC_TYPE),
    (type3_operator(), Verdict.locally_solvable, TYPE3_PLANE),
])
def test_dispatch_of_complex_operators(spec, verdict, theorem):
    report = classify(spec)
    assert report.verdict is verdict
    assert report.theorem == theorem


@pytest.mark.parametrize('alpha, verdict', [
    (-1, Verdict.not_locally_solvable),
    (-3, Verdict.not_locally_solvable),
    (1, Verdict.locally_solvable),
])
def test_degenerate_block_at_minus_one(alpha, verdict):
    report = classify_complex_blocks([(1, type1_block(-1))], alpha)
    assert report.verdict is verdict
    assert report.conditions['lambda'] == -1.0
    assert report.conditions['eps'] == 1


def test_large_block():
    report = classify_complex_blocks([(1, standard_J(2))], 0)
    assert report.verdict is Verdict.not_locally_solvable
    assert report.theorem == LARGE_BLOCK


def test_paired_blocks_reduce_to_elliptic():
    report = classify_complex_blocks([(1, type1_block(2, 1)), (1, type1_block(2, -1))], 0)
    assert report.theorem == ELLIPTIC_REDUCTION
    assert report.witnesses['reduction_matches']
    assert report.witnesses['ellipticity_margin'] > 0


def test_positive_combination():
    blocks = [(1, type1_block(0)), (sp.I, type1_block(0))]
    report = classify_complex_blocks(blocks, 2)
    assert report.verdict is Verdict.locally_solvable
    assert report.theorem == POSITIVE_COMBINATION
    report = classify_complex_blocks(blocks, -1 - 3 * sp.I)
    assert report.verdict is Verdict.undetermined
    assert report.witnesses['exceptional_witness'] == {'k': [0, 1], 'sign': '+'}


def test_float_block_hit_is_undetermined():
    report = classify_complex_blocks([(1.0, type1_block(0))], 5.0)
    assert report.verdict is Verdict.undetermined


def test_block_input_errors():
    with pytest.raises(DimensionMismatchError):
        classify_complex_blocks([], 0)
    with pytest.raises(ClassificationInputError):
        classify_complex_blocks([(0, type1_block(0))], 0)


def test_batch_keeps_order():
    specs = [OperatorSpec(minus_I, 3), OperatorSpec(minus_I, 2)]
    verdicts = [r.verdict for r in classify_batch(specs, nthreads=2)]
    assert verdicts == [Verdict.not_locally_solvable, Verdict.locally_solvable]


def test_cr_witness_at_critical_alpha():
    spec = OperatorSpec(minus_I, 3)
    report = classify(spec)
    mu0, result = cr_witness(spec, report)
    assert isinstance(result, WitnessFound)
    assert report.witnesses['cr_test']['found']
    assert report.witnesses['cr_test']['mu0'] == mu0


def test_cr_witness_absent_off_the_critical_set():
    _, result = cr_witness(OperatorSpec(minus_I, 2 * sp.I))
    assert isinstance(result, NoWitnessUpTo)
    with pytest.raises(ClassificationInputError):
        cr_witness(OperatorSpec(sp.diag(1, -1), 0))


def test_covariance_is_exact():
    S = standard_J(1, exact=True)
    T = sp.Matrix([[1, 1], [0, 1]])
    assert symplectic_covariance_check(S, T, alpha=sp.Rational(1, 2)) == 0.0
    with pytest.raises(NotSymplecticError):
        symplectic_covariance_check(S, sp.Matrix([[2, 0], [0, 1]]))


def test_poisson_identity():
    for S1, S2 in itertools.combinations(sp_basis(1), 2):
        assert poisson_identity_residual(S1, S2) == 0


def test_principal_symbol_of_sub_laplacian():
    v = symbol_variables(1)
    w = sp.Matrix(v.zeta) - sp.pi * v.mu * standard_J(1, exact=True) * sp.Matrix(v.z)
    expected = sp.expand(w[0] ** 2 + w[1] ** 2)
    assert sp.expand(principal_symbol(standard_J(1, exact=True), v) - expected) == 0

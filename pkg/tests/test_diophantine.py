# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

from fractions import Fraction
from math import comb

import numpy as np
import pytest
import sympy as sp

from heisenberg.solvability.diophantine import (brute_force_witness, compositions, critical_set,
                                                diophantine_decide_rational,
                                                diophantine_witness_search, is_rational,
                                                to_fraction)
from heisenberg.solvability.enums import DiophantineMode

BRUTE_TOTAL = {1: 10 ** 4, 2: 600, 3: 40}


@pytest.mark.parametrize('total, parts', [(0, 3), (3, 1), (4, 2), (5, 3)])
def test_composition_counts(total, parts):
    ks = compositions(total, parts)
    assert len(ks) == comb(total + parts - 1, parts - 1)
    assert np.all(ks.sum(axis=1) == total)
    assert ks.tolist() == sorted(ks.tolist())


def test_fraction_conversion():
    assert to_fraction(sp.Rational(2, 6)) == Fraction(1, 3)
    assert to_fraction(np.int64(4)) == 4
    assert not is_rational(sp.sqrt(2))
    assert not is_rational('1/0')
    with pytest.raises(ValueError):
        to_fraction(sp.pi)


def test_critical_set_membership():
    C = critical_set([1, Fraction(1, 3)], 2)
    assert Fraction(4, 3) in C
    assert -4 in C
    assert 2 in C
    assert 3 not in C
    assert C.to_dict()['elements'][0] == str(min(C.elements))


def test_exact_failure_names_first_zero():
    verdict = diophantine_decide_rational([1], 3)
    assert verdict.mode is DiophantineMode.exact
    assert verdict.holds is False
    assert verdict.witness.k == (1,)
    assert verdict.witness.sign == '-'
    assert verdict.witness.value == 0


def test_exact_success_has_certificate():
    verdict = diophantine_decide_rational([1], 2)
    assert verdict.holds is True
    assert verdict.constants == (Fraction(1, 2), 0)
    assert verdict.to_dict()['certificate'] == {'C': '1/2', 'N': 0}


def test_mixed_frequencies():
    verdict = diophantine_decide_rational([1, Fraction(-1, 3)], 0)
    assert verdict.holds is False
    assert sum(verdict.witness.k) == 1
    assert verdict.witness.k == (0, 1)


def test_zero_frequency():
    assert diophantine_decide_rational([0], 0).holds is False
    assert diophantine_decide_rational([0, 0], 1).holds is True


def test_decision_matches_brute_force():
    rng = np.random.default_rng(2024)
    mismatches = []
    for _ in range(200):
        n = int(rng.integers(1, 4))
        lams = [Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5))) for _ in range(n)]
        span = 20 if n == 3 else 200
        alpha = Fraction(int(rng.integers(-span, span + 1)), int(rng.integers(1, 5)))
        verdict = diophantine_decide_rational(lams, alpha)
        brute = brute_force_witness(lams, alpha, BRUTE_TOTAL[n])
        if verdict.holds:
            expected = None
        elif sum(verdict.witness.k) > BRUTE_TOTAL[n]:
            expected = None
        else:
            expected = verdict.witness
        if brute != expected:
            mismatches.append((lams, alpha))
    assert mismatches == []


def test_witness_search_never_reports_failure():
    verdict = diophantine_witness_search([1.0], 3.0, k_max=20)
    assert verdict.mode is DiophantineMode.witness_search
    assert verdict.holds is None
    assert verdict.witness.k == (1,)
    assert verdict.note == 'probable exact hit'


def test_witness_search_imaginary_alpha():
    verdict = diophantine_witness_search([1.0, 2.0], 3 + 0.5j, k_max=5)
    assert verdict.holds is True
    assert verdict.constants == (0.5, 0)


def test_witness_search_profile():
    verdict = diophantine_witness_search([np.sqrt(2)], 1.0, k_max=50)
    assert verdict.holds is None
    assert verdict.witness.value > 0
    assert set(verdict.profile) == {1, 2, 4, 8}
    assert verdict.profile[1] <= verdict.profile[8]


def test_single_frequency_large_alpha():
    verdict = diophantine_decide_rational([1], 2 * 10 ** 7 + 1)
    assert verdict.witness.k == (10 ** 7,)
    assert verdict.witness.sign == '-'
    assert diophantine_decide_rational([1], 2 * 10 ** 7).holds is True


def test_mixed_signs_large_alpha():
    verdict = diophantine_decide_rational([1, -1], 10 ** 9)
    assert verdict.holds is False
    assert verdict.witness.k == (0, 5 * 10 ** 8)
    assert verdict.witness.sign == '+'
    assert verdict.witness.value == 0


def test_three_frequencies_large_alpha():
    verdict = diophantine_decide_rational([1, 1, -1], 10 ** 6 + 1)
    assert verdict.witness.k == (0, 5 * 10 ** 5, 0)
    assert verdict.witness.sign == '-'
    assert verdict.witness.value == 0
    # every value is odd
    assert diophantine_decide_rational([1, 1, -1], 10 ** 6).holds is True


def test_mixed_signs_large_alpha_gcd():
    verdict = diophantine_decide_rational([Fraction(3, 2), Fraction(-5, 2), 1], 10 ** 6)
    assert verdict.holds is False
    assert verdict.witness.value == 0
    lams = [Fraction(3, 2), Fraction(-5, 2), 1]
    sign = 1 if verdict.witness.sign == '+' else -1
    total = sum((2 * k + 1) * lam for k, lam in zip(verdict.witness.k, lams))
    assert total + sign * 10 ** 6 == 0


def test_large_witness_matches_brute_force():
    verdict = diophantine_decide_rational([1, -1], 10 ** 4)
    assert verdict.witness.k == (0, 5000)
    assert brute_force_witness([1, -1], 10 ** 4, 5000) == verdict.witness


@pytest.mark.parametrize('lams, alpha', [
    ([Fraction(1, 3), Fraction(1, 2)], Fraction(1001, 6)),
    ([2, Fraction(-3, 4), Fraction(5, 2)], Fraction(37, 4)),
    ([Fraction(7, 4), Fraction(7, 4), -3], Fraction(-5, 2)),
])
def test_targeted_instances_match_brute_force(lams, alpha):
    verdict = diophantine_decide_rational(lams, alpha)
    brute = brute_force_witness(lams, alpha, 300 if len(lams) == 2 else 60)
    assert brute is not None
    assert verdict.witness == brute

# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

import math

import pytest

from heisenberg.solvability.enums import CheckState
from heisenberg.solvability.exceptions import InvalidConfigError
from heisenberg.solvability.suites import (SUITES, CheckSpec, StateManager, SuiteConfig,
                                           SuiteRunner, format_table, run_suite)


def _boom(cfg):
    raise ZeroDivisionError("no")


@pytest.fixture()
def runner():
    checks = [CheckSpec('small', lambda cfg: 0.5, 1.0, '<'),
              CheckSpec('large', lambda cfg: 2.0, 1.0, '<'),
              CheckSpec('flag', lambda cfg: True, True, '=='),
              CheckSpec('broken', _boom, 1.0, '<')]
    return SuiteRunner('demo', checks, SuiteConfig(), nthreads=2)


def test_state_manager():
    mgr = StateManager('pending', 'done')
    mgr['a'] = 'pending'
    mgr['b'] = 'done'
    assert mgr.objects == ['a', 'b']
    assert not mgr.contains_all('done')
    assert not mgr.contains_none('pending')
    mgr['a'] = 'done'
    assert mgr.contains_all('done')
    assert mgr.contains_none('pending')
    assert str(mgr) == '<StateManager: pending=0 done=2>'
    with pytest.raises(ValueError):
        mgr['a'] = 'lost'


def test_runner_states(runner):
    checks = {c.name: c for c in runner.run()}
    assert checks['small'].state is CheckState.passed
    assert checks['large'].state is CheckState.failed
    assert checks['flag'].state is CheckState.passed
    assert checks['broken'].state is CheckState.errored
    assert 'ZeroDivisionError' in checks['broken'].exception
    assert checks['small'].measured == 0.5
    assert not runner.active
    assert not runner.successful


def test_format_table(runner):
    table = format_table(runner.run()).splitlines()
    assert table[0].split() == ['check', 'measured', 'bound', 'pass']
    assert len(table) == 5
    assert table[1].split()[-1] == 'yes'
    assert table[2].split()[-1] == 'no'
    assert 'error: ' in table[4]


@pytest.mark.parametrize('field, value', [
    ('n', 0), ('dims', 2.5), ('kmax', -1), ('extent', -1.0), ('tol', 0.0),
    ('mu', 0.0), ('mu', math.inf), ('t', math.nan), ('lambdas', ()), ('lambdas', (1, -2)),
    ('seed', -1), ('format', 'xml'), ('nthreads', 0),
])
def test_config_validation(field, value):
    with pytest.raises(InvalidConfigError):
        SuiteConfig(**{field: value}).validate()


def test_config_defaults():
    config = SuiteConfig().validate()
    assert config.bound(1e-3) == 1e-3
    assert SuiteConfig(tol=0.5).bound(1e-3) == 0.5
    out = config.to_dict()
    assert out['lambdas'] == [4, 8, 16, 32, 64]
    assert out['tol'] is None


def test_unknown_suite_lists_the_registered_ones():
    with pytest.raises(InvalidConfigError) as e:
        run_suite('nonsense')
    for name in SUITES:
        assert name in str(e.value)


def test_registered_suites():
    assert list(SUITES) == ['group', 'fourier', 'hermite', 'twisted', 'metaplectic',
                            'folland-stein', 'lewy', 'symbolic', 'classifier']


@pytest.mark.parametrize('name', ['symbolic', 'classifier'])
def test_exact_suites_pass(name):
    result = run_suite(name, SuiteConfig(seed=3), nthreads=2)
    assert result.name == name
    assert result.passed, format_table(result.checks)
    assert all(c.state is CheckState.passed for c in result.checks)

# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

import json
import math

import numpy as np
import pytest

from samples.cli import HeisenbergCommand, main
from heisenberg.solvability.grid import GridFunction
from heisenberg.solvability.suites import SUITES
from heisenberg.solvability.symbolic import TestFunction


@pytest.fixture()
def client():
    yield HeisenbergCommand()


def read_stdout(captured):
    return captured.readouterr()[0]


def read_json(captured):
    return json.loads(read_stdout(captured))


def test_classify_sub_laplacian(capsys, client):
    client.onecmd('classify --n 1 --A "-1,0;0,-1" --alpha 3')
    out = read_json(capsys)
    assert client.exit_code == 0
    assert out['report']['verdict'] == 'NotLocallySolvable'
    assert out['config']['alpha'] == '3'
    assert 'version' in out


def test_classify_hyperbolic(capsys, client):
    client.onecmd('classify --n 1 --A "1,0;0,-1" --alpha 7')
    assert read_json(capsys)['report']['verdict'] == 'LocallySolvable'
    assert client.exit_code == 0


def test_classify_bad_matrix(capsys, client):
    client.onecmd('classify --n 1 --A "garbage" --alpha 3')
    out = read_stdout(capsys)
    assert client.exit_code == 1
    assert out.startswith('error:')
    assert 'garbage' in out


def test_classify_wrong_size(capsys, client):
    client.onecmd('classify --n 2 --A "1,0;0,1"')
    assert client.exit_code == 1
    assert 'n=2' in read_stdout(capsys)


def test_exit_code_resets(capsys, client):
    client.onecmd('classify --A "garbage"')
    assert client.exit_code == 1
    client.onecmd('classify --A "1,0;0,-1" --alpha 7')
    assert client.exit_code == 0


def test_missing_option(capsys, client):
    client.onecmd('classify --alpha 3')
    assert client.exit_code == 1
    assert '--A' in read_stdout(capsys)


def test_unknown_suite(capsys, client):
    client.onecmd('verify --suite nonsense')
    out = read_stdout(capsys)
    assert client.exit_code == 1
    for name in SUITES:
        assert name in out


def test_unknown_command(capsys, client):
    client.onecmd('frobnicate now')
    assert read_stdout(capsys) == "error: unknown command 'frobnicate'\n"
    assert client.exit_code == 1


def test_verify_symbolic_suite(capsys, client):
    client.onecmd('verify --suite symbolic --seed 3 --nthreads 1 --format json')
    out = read_json(capsys)
    assert client.exit_code == 0
    assert out['report']['suite'] == 'symbolic'
    assert out['report']['passed'] is True
    assert all(row['passed'] for row in out['report']['checks'])


def test_verify_csv(capsys, client):
    client.onecmd('verify --suite symbolic --seed 3 --nthreads 1 --format csv')
    lines = read_stdout(capsys).splitlines()
    assert lines[0] == 'name,measured,relation,bound,passed'
    assert len(lines) > 1
    assert all(line.endswith(',True') for line in lines[1:])


def test_symbol(capsys, client):
    client.onecmd('symbol --n 1 --A "-1,0;0,-1" --alpha 3 --mu 1')
    report = read_json(capsys)['report']
    assert report['symbol']
    derivatives = [term['derivative'] for term in report['terms']]
    assert [2] in derivatives
    assert all(len(term['x_power']) == 1 for term in report['terms'])


def test_gamma_writes_samples(capsys, client, tmp_path):
    path = tmp_path / 'gamma.grid'
    client.onecmd('gamma --S "0,-1;-1,0" --t 0.7 --grid 17 --extent 3 --out %s' % path)
    report = read_json(capsys)['report']
    assert client.exit_code == 0
    assert report['out'] == str(path)
    samples = GridFunction.load(str(path))
    assert samples.dims == (17, 17)
    assert np.all(np.isfinite(samples.values))


def test_gamma_rejects_non_symplectic(capsys, client):
    client.onecmd('gamma --S "1,2;3,4" --t 0.5')
    assert client.exit_code == 1
    assert 'sp(n, R)' in read_stdout(capsys)


def test_transform(capsys, client, tmp_path):
    source = tmp_path / 'f.grid'
    target = tmp_path / 'k.grid'
    TestFunction.gaussian(1).sample(33, 3.0).save(str(source))
    client.onecmd('transform --in %s --mu 0.5 --out %s' % (source, target))
    report = read_json(capsys)['report']
    assert client.exit_code == 0
    assert report['dims'] == [33, 33]
    # exp(-pi mu^2) / sqrt(2 mu) at mu = 1/2
    assert report['hs_norm'] == pytest.approx(math.exp(-math.pi / 4), rel=1e-3)
    kernel = GridFunction.load(str(target))
    assert kernel.dims == (33, 33)


def test_transform_missing_file(capsys, client, tmp_path):
    client.onecmd('transform --in %s --mu 0.5' % (tmp_path / 'absent.grid'))
    assert client.exit_code == 1
    assert 'cannot read' in read_stdout(capsys)


def test_transform_zero_mu(capsys, client, tmp_path):
    client.onecmd('transform --in %s --mu 0' % (tmp_path / 'absent.grid'))
    assert client.exit_code == 1
    assert 'mu must be finite and nonzero' in read_stdout(capsys)


def test_crtest_lewy(capsys, client):
    client.onecmd('crtest --lewy --mu %r --kmax 32' % (-1 / (2 * math.pi)))
    report = read_json(capsys)['report']
    assert report['found'] is True
    assert report['residual'] < 1e-10


def test_crtest_needs_operator(capsys, client):
    client.onecmd('crtest --mu 1')
    assert client.exit_code == 1
    assert '--lewy' in read_stdout(capsys)


def test_main_without_arguments_prints_help(capsys):
    assert main([]) == 0
    out = read_stdout(capsys)
    assert 'classify' in out
    assert 'verify' in out
    assert 'EOF' not in out


def test_main_returns_exit_code(capsys):
    assert main(['classify', '--A', '1,0;0,-1', '--alpha', '7']) == 0
    assert main(['classify', '--A', 'garbage']) == 1

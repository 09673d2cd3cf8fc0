# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

from contextlib import contextmanager
from fractions import Fraction
from hashlib import md5
import os
import shutil
import tempfile

from hypothesis import strategies as st
import numpy as np

from heisenberg.solvability.group import GroupPoint


@contextmanager
def ignoring(*exceptions):
    try:
        yield
    except exceptions:
        pass


@contextmanager
def tmpfile(extension='', dir=None):
    extension = '.' + extension.lstrip('.')
    handle, filename = tempfile.mkstemp(extension, dir=dir)
    os.close(handle)
    os.remove(filename)

    try:
        yield filename
    finally:
        if os.path.exists(filename):
            if os.path.isdir(filename):
                shutil.rmtree(filename)
            else:
                with ignoring(OSError):
                    os.remove(filename)


def md5sum(fname, chunksize=4096):
    hashobj = md5()
    with open(fname, 'rb') as f:
        for chunk in iter(lambda: f.read(chunksize), b''):
            hashobj.update(chunk)
    return hashobj.hexdigest()


def relative_gap(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


# --- hypothesis strategies --------------------------------------------------------

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def exact_points(draw, n=1):
    z = draw(st.lists(small_fractions, min_size=2 * n, max_size=2 * n))
    return GroupPoint(z, draw(small_fractions))


@st.composite
def float_points(draw, n=1):
    coords = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
    z = draw(st.lists(coords, min_size=2 * n, max_size=2 * n))
    return GroupPoint(z, draw(coords))


@st.composite
def symmetric_matrices(draw, size, exact=False):
    """ Real symmetric size x size matrices with small entries """
    entry = small_fractions if exact else st.floats(min_value=-3, max_value=3,
                                                    allow_nan=False, allow_infinity=False)
    M = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            M[i][j] = M[j][i] = draw(entry)
    if exact:
        return M
    return np.array(M, dtype=float)


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)

# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Text codecs, JSON helpers, quadrature rules and the thread-pool map
shared by the numerical modules.
"""

from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from fractions import Fraction
import json
import logging
import os
import re

import numpy as np
import sympy as sp
from scipy.special import roots_legendre

from .exceptions import MatrixParseError

logger = logging.getLogger(__name__)

_EXACT_RE = re.compile(r'^[+-]?\d+(/\d+)?$')
_FLOAT_RE = re.compile(r'^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$')


def _parse_real(part, token):
    if _EXACT_RE.match(part):
        return sp.Rational(part), True
    if _FLOAT_RE.match(part):
        return float(part), False
    raise MatrixParseError(token)


def parse_scalar(token):
    """ Parse a real or complex scalar

    Accepted forms are ``a``, ``bi``, ``a+bi`` and ``a-bi`` where ``a`` and
    ``b`` are integers, fractions ``p/q`` or decimals. Integers and
    fractions give exact sympy numbers, decimals give Python numbers.

    >>> parse_scalar('1/3')
    1/3
    >>> parse_scalar('2i')
    2*I
    >>> parse_scalar('0.5-1.5i')
    (0.5-1.5j)
    """
    s = token.strip().replace(' ', '').replace('j', 'i')
    if not s:
        raise MatrixParseError(token)
    if s.endswith('i'):
        body = s[:-1]
        split = None
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in '+-' and body[pos - 1] not in 'eE':
                split = pos
                break
        if split is None:
            real_part, imag_part = '', body
        else:
            real_part, imag_part = body[:split], body[split:]
        if imag_part in ('', '+'):
            imag_part = '1'
        elif imag_part == '-':
            imag_part = '-1'
    else:
        real_part, imag_part = s, ''
    re_val, re_exact = _parse_real(real_part, token) if real_part else (sp.Integer(0), True)
    im_val, im_exact = _parse_real(imag_part, token) if imag_part else (sp.Integer(0), True)
    if re_exact and im_exact:
        return sp.nsimplify(re_val + sp.I * im_val)
    if imag_part:
        return complex(float(re_val), float(im_val))
    return float(re_val)


def is_exact(value):
    """ True for sympy numbers, Fractions and ints """
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return True
    if isinstance(value, sp.Basic):
        return value.is_number and not value.has(sp.Float)
    return False


def parse_matrix(text):
    """ Parse ``"a,b;c,d"`` into a square matrix

    Returns an immutable sympy matrix when every entry is exact, else a
    complex numpy array.

    >>> parse_matrix('0,-1;-1,0').tolist()
    [[0, -1], [-1, 0]]
    """
    if text is None or not text.strip():
        raise MatrixParseError(text or '', "empty matrix text")
    rows = [row.split(',') for row in text.strip().strip(';').split(';')]
    entries = [[parse_scalar(tok) for tok in row] for row in rows]
    width = len(entries[0])
    for row, raw in zip(entries, rows):
        if len(row) != width:
            raise MatrixParseError(';'.join(raw),
                                   "ragged matrix row %r" % ','.join(raw))
    if len(entries) != width:
        raise MatrixParseError(text, "matrix %r is not square" % text)
    if all(is_exact(v) for row in entries for v in row):
        return sp.ImmutableMatrix(entries)
    return np.array([[complex(v) for v in row] for row in entries])


def format_scalar(value):
    """ Inverse of parse_scalar for display

    >>> format_scalar(sp.Rational(1, 3) - 2 * sp.I)
    '1/3-2i'
    >>> format_scalar(complex(0.5, 0))
    '0.5'
    """
    if is_exact(value):
        value = sp.nsimplify(value)
        re_part, im_part = sp.re(value), sp.im(value)
        if im_part == 0:
            return str(re_part)
        im_text = '' if abs(im_part) == 1 else str(abs(im_part))
        sign = '-' if im_part < 0 else '+'
        if re_part == 0:
            return ('-' if sign == '-' else '') + im_text + 'i'
        return '%s%s%si' % (re_part, sign, im_text)
    value = complex(value)
    if value.imag == 0:
        return '%.17g' % value.real
    sign = '-' if value.imag < 0 else '+'
    if value.real == 0:
        return '%.17gi' % value.imag
    return '%.17g%s%.17gi' % (value.real, sign, abs(value.imag))


def format_matrix(matrix):
    """ Matrix text in the ``;``/``,`` format """
    if isinstance(matrix, sp.MatrixBase):
        rows = matrix.tolist()
    else:
        rows = np.asarray(matrix).tolist()
    return ';'.join(','.join(format_scalar(v) for v in row) for row in rows)


def to_jsonable(obj):
    """ Convert reports and their payloads into plain JSON values """
    if hasattr(obj, 'to_dict'):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, sp.MatrixBase):
        return format_matrix(obj)
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2 and obj.shape[0] == obj.shape[1]:
            return format_matrix(obj)
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, sp.Basic):
        return format_scalar(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return format_scalar(obj)
    return obj


def dumps(obj):
    """ Deterministic JSON text (sorted keys, fixed indent) """
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)


def parallel_map(func, items, nthreads=None):
    """ Map ``func`` over ``items`` on a thread pool, preserving order

    Parameters
    ----------
    func: callable
    items: iterable
    nthreads: int [None]
        Number of worker threads; None uses the cpu count, 1 runs serially.
    """
    items = list(items)
    if nthreads is None:
        nthreads = os.cpu_count() or 1
    if nthreads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(nthreads, len(items))) as pool:
        return list(pool.map(func, items))


def gauss_legendre(a, b, count):
    """ Nodes and weights of the ``count``-point Gauss-Legendre rule on [a, b] """
    x, w = roots_legendre(count)
    half = 0.5 * (b - a)
    return half * x + 0.5 * (a + b), half * w



# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
"""
Critical sets and the diophantine condition

    |sum_j (2 k_j + 1) lam_j +- alpha| >= C (1 + k_1 + ... + k_n)^{-N}.

Over the rationals every value lies in (1/L) Z, so the condition holds
exactly when 0 is never attained. Attainability is a linear equation in
nonnegative integers: a gcd test settles it when the frequencies have
mixed signs, and the least solution comes from shortest paths on residue
classes, so the cost does not grow with |alpha|. Float input is only
scanned, and the scan never reports failure.
"""

from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
import logging

import numpy as np
import scipy.sparse as sps
from scipy.sparse.csgraph import dijkstra
import sympy as sp

from .enums import DiophantineMode
from .exceptions import InvalidConfigError

logger = logging.getLogger(__name__)

PROFILE_POWERS = (1, 2, 4, 8)
EXACT_HIT = 1e-12

Witness = namedtuple('Witness', 'k sign value')


def to_fraction(value):
    """ Exact rational from int, Fraction, sympy Rational or ``"p/q"`` text

    >>> to_fraction('-3/6')
    Fraction(-1, 2)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    value = sp.nsimplify(value)
    if isinstance(value, sp.Rational):
        return Fraction(int(value.p), int(value.q))
    raise InvalidConfigError("%r is not rational" % (value,))


def is_rational(value):
    try:
        to_fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        return False
    return True


def compositions(total, parts):
    """ All nonnegative integer vectors of length ``parts`` summing to ``total``,
    in lexicographic order

    >>> compositions(2, 2).tolist()
    [[0, 2], [1, 1], [2, 0]]
    """
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    if parts == 2:
        first = np.arange(total + 1, dtype=np.int64)
        return np.column_stack([first, total - first])
    blocks = []
    for first in range(total + 1):
        rest = compositions(total - first, parts - 1)
        blocks.append(np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest]))
    return np.vstack(blocks)


def _value(lams, alpha, k, sign):
    return sum((2 * kj + 1) * lj for kj, lj in zip(k, lams)) + sign * alpha


@dataclass(frozen=True)
class CriticalSet:
    frequencies: tuple
    bound: int
    elements: frozenset

    def __contains__(self, value):
        return to_fraction(value) in self.elements

    def sorted(self):
        return sorted(self.elements)

    def to_dict(self):
        return {'frequencies': [str(f) for f in self.frequencies], 'bound': self.bound,
                'elements': [str(e) for e in self.sorted()]}


def critical_set(lams, bound):
    """ {+-sum (2k_j+1) lam_j : sum k_j <= bound} in exact arithmetic

    >>> [str(v) for v in critical_set([1], 2).sorted()]
    ['-5', '-3', '-1', '1', '3', '5']
    """
    if bound < 0:
        raise InvalidConfigError("bound must be nonnegative")
    lams = tuple(to_fraction(v) for v in lams)
    elements = set()
    for s in range(bound + 1):
        for k in compositions(s, len(lams)):
            v = _value(lams, 0, k.tolist(), 0)
            elements.add(v)
            elements.add(-v)
    return CriticalSet(lams, bound, frozenset(elements))


@dataclass(frozen=True)
class DiophantineVerdict:
    mode: DiophantineMode
    holds: object
    witness: Witness = None
    constants: tuple = None
    profile: dict = field(default=None, compare=False)
    note: str = ''

    def to_dict(self):
        out = {'mode': self.mode.value, 'holds': self.holds, 'witness': None,
               'certificate': None}
        if self.witness is not None:
            out['witness'] = {'k': list(self.witness.k), 'sign': self.witness.sign,
                              'value': str(self.witness.value)}
        if self.constants is not None:
            out['certificate'] = {'C': str(self.constants[0]), 'N': self.constants[1]}
        if self.profile is not None:
            out['profile'] = {str(k): v for k, v in self.profile.items()}
        if self.note:
            out['note'] = self.note
        return out


_UNREACHABLE = np.iinfo(np.int64).max // 4


def _ceil_div(a, b):
    return -((-a) // b)


def _dense_counts(coins, limit):
    """ Fewest coins summing to each of 0..limit; unreachable values hold
    ``_UNREACHABLE`` """
    best = np.full(limit + 1, _UNREACHABLE, dtype=np.int64)
    best[0] = 0
    for c in coins:
        for r in range(min(c, limit + 1)):
            seq = best[r::c]
            steps = np.arange(len(seq), dtype=np.int64)
            best[r::c] = np.minimum(steps + np.minimum.accumulate(seq - steps), _UNREACHABLE)
    return best


class _CoinCounts(object):
    """ Fewest coins from a fixed set of positive integers summing to R

    With E the largest coin, a sum R uses (R + w) / E coins where w adds
    E - c for every smaller coin c in it. The least w per residue of R
    modulo E is a shortest path on the residues; it is exact once R is at
    least the value of that path, and a dense table covers smaller R.
    """

    def __init__(self, coins):
        self.coins = sorted({int(c) for c in coins if c > 0})
        if not self.coins:
            self.limit = 0
            self.table = np.zeros(1, dtype=np.int64)
            return
        E = self.E = self.coins[-1]
        smaller = self.coins[:-1]
        residues = np.arange(E)
        rows = np.tile(residues, len(smaller))
        cols = np.concatenate([(residues + c) % E for c in smaller] or [residues[:0]])
        weights = np.repeat(np.array([float(E - c) for c in smaller]), E)
        graph = sps.csr_matrix((weights, (rows, cols)), shape=(E, E))
        dist, pred = dijkstra(graph, indices=0, return_predecessors=True)
        self.reachable = np.isfinite(dist)
        self.dist = np.where(self.reachable, dist, 0).astype(np.int64)
        values = np.zeros(E, dtype=np.int64)
        for node in np.argsort(dist, kind='stable'):
            parent = pred[node]
            if self.reachable[node] and parent >= 0:
                values[node] = values[parent] + (node - parent) % E
        self.limit = int(values[self.reachable].max())
        self.table = _dense_counts(self.coins, self.limit)
        logger.debug("Coins %s: %d residues, dense table up to %d", self.coins, E, self.limit)

    def weight(self, residue):
        return int(self.dist[residue]) if self.reachable[residue] else None

    def __call__(self, R):
        if R < 0:
            return None
        if R <= self.limit:
            count = int(self.table[R])
            return None if count >= _UNREACHABLE else count
        if not self.coins:
            return None
        w = self.weight(R % self.E)
        return None if w is None else (R + w) // self.E


def _smallest(counts, A, delta, B, beta, lo, hi=None):
    """ Smallest integer x in [lo, hi] with counts(A - x delta) <= B + x beta

    ``hi`` None leaves x unbounded above; ``beta`` is +1 or -1.
    """
    if delta == 0:
        need = counts(A)
        if need is None:
            return None
        x = max(lo, need - B) if beta > 0 else lo
        if B + beta * x < need or (hi is not None and x > hi):
            return None
        return x
    best = None
    if delta > 0:
        first, last = _ceil_div(A - counts.limit, delta), A // delta
    else:
        first, last = _ceil_div(A, delta), (A - counts.limit) // delta
    first = max(first, lo)
    if hi is not None:
        last = min(last, hi)
    if first <= last:
        xs = np.arange(first, last + 1, dtype=np.int64)
        hits = np.flatnonzero(counts.table[A - xs * delta] <= B + beta * xs)
        if len(hits):
            best = int(xs[hits[0]])
    if not counts.coins:
        return best
    # beyond the table the count is linear in x on each residue class mod E
    E = counts.E
    slope = delta + E * beta
    lower, upper = lo, hi
    if delta > 0:
        edge = (A - counts.limit - 1) // delta
        upper = edge if upper is None else min(upper, edge)
    else:
        lower = max(lower, _ceil_div(A - counts.limit - 1, delta))
    for rho in range(E):
        w = counts.weight((A - rho * delta) % E)
        if w is None:
            continue
        bound = A + w - E * B
        lo_r, hi_r = lower, upper
        if slope > 0:
            lo_r = max(lo_r, _ceil_div(bound, slope))
        elif slope < 0:
            hi_r = bound // slope if hi_r is None else min(hi_r, bound // slope)
        elif bound > 0:
            continue
        x = lo_r + (rho - lo_r) % E
        if (hi_r is None or x <= hi_r) and (best is None or x < best):
            best = x
    return best


def _first_solution(steps, target):
    """ k >= 0 with sum k_j steps_j = target, least sum k first and then
    lexicographically first; None when there is none """
    k = [0] * len(steps)
    active = [j for j, d in enumerate(steps) if d != 0]
    if not active:
        return k if target == 0 else None
    d = [steps[j] for j in active]
    if target % reduce(sp.igcd, d):
        return None
    if len(d) == 1:
        q, r = divmod(target, d[0])
        if r or q < 0:
            return None
        k[active[0]] = q
        return k
    m = min(d)
    total = _smallest(_CoinCounts(v - m for v in d), target, m, 0, 1, 0)
    if total is None:
        return None
    for pos in range(len(d) - 1):
        rest = d[pos + 1:]
        m = min(rest)
        x = _smallest(_CoinCounts(v - m for v in rest), target - m * total,
                      d[pos] - m, total, -1, 0, total)
        k[active[pos]] = x
        target -= x * d[pos]
        total -= x
    k[active[-1]] = total
    return k


def _scaled(lams, alpha):
    """ Integers (a, b, L) with a = L lams and b = L alpha """
    L = reduce(sp.ilcm, [v.denominator for v in lams + (alpha,)], 1)
    return [int(v * L) for v in lams], int(alpha * L), int(L)


def diophantine_decide_rational(lams, alpha):
    """ Exact decision of the diophantine condition for rational data

    Returns a verdict with the certificate (C, N) = (1/(2L), 0) when it
    holds, or the first zero in the order (sum k, lexicographic k, sign +
    before -) when it fails.

    >>> diophantine_decide_rational([1], 3).witness.k
    (1,)
    """
    lams = tuple(to_fraction(v) for v in lams)
    alpha = to_fraction(alpha)
    a, b, L = _scaled(lams, alpha)
    steps = [2 * aj for aj in a]
    best = None
    for sign, label in ((1, '+'), (-1, '-')):
        k = _first_solution(steps, -sign * b - sum(a))
        if k is None:
            continue
        key = (sum(k), tuple(k), 0 if sign > 0 else 1)
        if best is None or key < best[0]:
            best = (key, Witness(tuple(k), label, _value(lams, alpha, k, sign)))
    if best is not None:
        logger.info("Diophantine condition fails at sum k=%d (%s)", best[0][0], best[1].sign)
        return DiophantineVerdict(DiophantineMode.exact, False, best[1])
    logger.info("Diophantine condition holds with spacing 1/%d", L)
    return DiophantineVerdict(DiophantineMode.exact, True, constants=(Fraction(1, 2 * L), 0))


def brute_force_witness(lams, alpha, max_total):
    """ First zero by direct enumeration in the same order as the exact decision """
    lams = tuple(to_fraction(v) for v in lams)
    alpha = to_fraction(alpha)
    a, b, _ = _scaled(lams, alpha)
    a = np.asarray(a, dtype=np.int64)
    for s in range(max_total + 1):
        ks = compositions(s, len(lams))
        base = (2 * ks + 1).dot(a)
        hits = np.flatnonzero((base + b == 0) | (base - b == 0))
        if len(hits):
            k = tuple(int(v) for v in ks[hits[0]])
            sign, label = (1, '+') if base[hits[0]] + b == 0 else (-1, '-')
            return Witness(k, label, _value(lams, alpha, k, sign))
    return None


def diophantine_witness_search(lams, alpha, k_max, max_points=5 * 10 ** 7):
    """ Scan sum k <= k_max for small values of |sum (2k_j+1) lam_j +- alpha|

    The profile records min |value| (1 + sum k)^N for N in 1, 2, 4, 8.
    The verdict is Unknown unless alpha has a nonzero imaginary part, which
    bounds every value from below.
    """
    alpha = complex(alpha)
    lams = np.asarray([float(v) for v in lams])
    if alpha.imag != 0:
        note = "|Im alpha| = %g bounds every value" % abs(alpha.imag)
        return DiophantineVerdict(DiophantineMode.witness_search, True,
                                  constants=(abs(alpha.imag), 0), note=note)
    profile = {N: np.inf for N in PROFILE_POWERS}
    best = (np.inf, None, None)
    scanned = 0
    for s in range(k_max + 1):
        ks = compositions(s, len(lams))
        scanned += len(ks)
        if scanned > max_points:
            logger.warning("Witness scan stopped at shell %d after %d points", s, scanned)
            break
        base = (2 * ks + 1).dot(lams)
        for sign, label in ((1, '+'), (-1, '-')):
            values = np.abs(base + sign * alpha.real)
            i = int(np.argmin(values))
            if values[i] < best[0]:
                best = (float(values[i]), tuple(int(v) for v in ks[i]), label)
            for N in PROFILE_POWERS:
                profile[N] = min(profile[N], float(values[i]) * (1 + s) ** N)
    witness = None
    note = ''
    if best[1] is not None:
        witness = Witness(best[1], best[2], best[0])
        if best[0] < EXACT_HIT:
            note = 'probable exact hit'
            logger.info("Probable exact hit at k=%s", best[1])
    return DiophantineVerdict(DiophantineMode.witness_search, None, witness,
                              profile=profile, note=note)

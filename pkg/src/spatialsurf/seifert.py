"""
Integer Seifert-matrix utilities.

Matrices are exact: entries are Python ints and every minor is computed
by fraction-free (Bareiss) elimination.  The gcd of the ``k x k`` minors
is invariant under unimodular congruence ``V -> P^T V P``, so differing
minor-gcd profiles certify that two Seifert matrices are not congruent.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    """A square matrix of arbitrary-precision integers."""
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise MatrixError('matrix must be square')
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n):
        return cls([[0] * n for _ in range(n)])

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def T(self):
        return IntMatrix(list(zip(*self.rows)) if self.rows else [])

    def __matmul__(self, other):
        if self.n != other.n:
            raise MatrixError('size mismatch')
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def submatrix(self, rows, cols):
        return [[self.rows[i][j] for j in cols] for i in rows]

    def det(self):
        return bareiss_det([list(r) for r in self.rows])

    def tolist(self):
        return [list(r) for r in self.rows]

    def __str__(self):
        return format_matrix(self).rstrip('\n')


def bareiss_det(a):
    """Exact determinant of a square list-of-lists integer matrix."""
    n = len(a)
    if n == 0:
        return 1
    a = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def minor_gcd(m, k):
    """gcd of all ``k x k`` minors of ``m`` (0 when they all vanish)."""
    if not 1 <= k <= m.n:
        raise MatrixError('k must lie in 1..{0}, got {1}'.format(m.n, k))
    g = 0
    subsets = list(itertools.combinations(range(m.n), k))
    for rows in subsets:
        for cols in subsets:
            g = math.gcd(g, bareiss_det(m.submatrix(rows, cols)))
            if g == 1:
                return 1
    return g


def gcd_profile(m):
    """``(g_1, ..., g_n)`` with ``g_k = minor_gcd(m, k)``."""
    return tuple(minor_gcd(m, k) for k in range(1, m.n + 1))


def minor_rank(m):
    """Largest ``s`` with a non-zero ``s x s`` minor (0 for the zero matrix)."""
    prof = gcd_profile(m)
    return max([k for k, g in enumerate(prof, 1) if g], default=0)


def build_Vk(v, k):
    """Block matrix with the 4x4 family block (corner entry ``4 + 2k``) and ``v``."""
    block = [[0, 0, 0, 0],
             [0, 0, 1, 0],
             [-1, 0, 4, 0],
             [-1, 0, 0, 4 + 2 * k]]
    n = 4 + v.n
    rows = [[0] * n for _ in range(n)]
    for i in range(4):
        rows[i][:4] = block[i]
    for i in range(v.n):
        rows[4 + i][4:] = v.rows[i]
    return IntMatrix(rows)


def profiles_distinguish(m1, m2):
    """True iff the minor-gcd profiles differ, so ``m1`` and ``m2`` are not congruent."""
    if m1.n != m2.n:
        raise MatrixError('matrices must have equal size')
    return gcd_profile(m1) != gcd_profile(m2)


def congruent_transform(m, p):
    """``P^T M P`` for a unimodular ``P``."""
    if p.n != m.n:
        raise MatrixError('size mismatch')
    if abs(p.det()) != 1:
        raise MatrixError('transform is not unimodular (det = {0})'.format(p.det()))
    return p.T @ m @ p


def random_unimodular(n, steps, seed):
    """Product of ``steps`` seeded elementary integer matrices (det = +-1)."""
    if n < 1:
        raise MatrixError('n must be positive')
    rng = random.Random(seed)
    a = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        move = rng.randrange(3) if n > 1 else 2
        if move == 0:
            i, j = rng.sample(range(n), 2)
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        elif move == 1:
            i, j = rng.sample(range(n), 2)
            a[i], a[j] = a[j], a[i]
        else:
            i = rng.randrange(n)
            a[i] = [-x for x in a[i]]
    return IntMatrix(a)


def congruence_witness_search(m1, m2, entry_bound=1):
    """Find a unimodular ``P`` with entries in ``[-bound, bound]`` and ``P^T m1 P = m2``.

    Exhaustive, so restricted to ``n <= 3`` and ``bound <= 2``.  Returns
    ``None`` when no witness exists within the bound.
    """
    n = m1.n
    if m2.n != n:
        raise MatrixError('matrices must have equal size')
    if n > 3 or entry_bound > 2:
        raise MatrixError('witness search is limited to n <= 3 and entry_bound <= 2')
    if m1 == m2:
        return IntMatrix.identity(n)
    if gcd_profile(m1) != gcd_profile(m2):
        return None
    vals = np.arange(-entry_bound, entry_bound + 1)
    grids = np.stack(np.meshgrid(*([vals] * (n * n)), indexing='ij'), -1).reshape(-1, n, n)
    dets = np.rint(np.linalg.det(grids.astype(float))).astype(np.int64)
    cand = grids[np.abs(dets) == 1]
    a = np.array(m1.tolist(), dtype=np.int64)
    b = np.array(m2.tolist(), dtype=np.int64)
    out = np.einsum('kji,jl,klm->kim', cand, a, cand)
    hits = np.flatnonzero((out == b).all(axis=(1, 2)))
    if not len(hits):
        return None
    p = IntMatrix(cand[hits[0]].tolist())
    if abs(p.det()) != 1 or p.T @ m1 @ p != m2:
        raise AssertionError('witness failed exact verification')
    return p


def parse_matrix(text):
    """Matrix text format: ``n`` on the first line, then ``n`` rows of integers."""
    lines = [l.split('#', 1)[0].split() for l in text.splitlines()]
    lines = [l for l in lines if l]
    if not lines or len(lines[0]) != 1:
        raise MatrixError('first line must hold the size n')
    try:
        n = int(lines[0][0])
        rows = [[int(t) for t in l] for l in lines[1:]]
    except ValueError:
        raise MatrixError('matrix entries must be integers') from None
    if n < 0 or len(rows) != n or any(len(r) != n for r in rows):
        raise MatrixError('expected {0} rows of {0} integers'.format(n))
    return IntMatrix(rows)


def format_matrix(m):
    return '\n'.join([str(m.n)] + [' '.join(str(v) for v in r) for r in m.rows]) + '\n'


def load_matrix(path):
    with open(path) as fh:
        return parse_matrix(fh.read())

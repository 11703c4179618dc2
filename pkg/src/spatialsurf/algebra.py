"""
Finite racks, quandles and multiple group racks
===============================================

Elements are dense 0-based indices and every algebra is a pair of
lookup tables.  ``op[x, y]`` is ``x ◁ y``.  Products of algebras encode
pairs row-major: ``(x, x') -> x * len(R') + x'``.

Axiom checks are exhaustive and return an :class:`AxiomReport` with
the lexicographically smallest violations first (at most
:data:`MAX_VIOLATIONS`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

MAX_VIOLATIONS = 100


class AlgebraError(ValueError):
    """Raised for structurally malformed tables (not axiom failures)."""


@dataclass
class AxiomReport:
    passed: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def __str__(self):
        if self.passed:
            return 'pass'
        lines = ['fail']
        for name, witness in self.violations:
            lines.append('  {0}: {1}'.format(name, ' '.join(map(str, witness))))
        return '\n'.join(lines)


class _Collector:
    def __init__(self):
        self.violations = []

    def full(self):
        return len(self.violations) >= MAX_VIOLATIONS

    def add_mask(self, name, mask, prefix=()):
        # np.argwhere walks indices in lexicographic order
        if self.full():
            return
        for w in np.argwhere(mask):
            self.violations.append((name, prefix + tuple(int(i) for i in w)))
            if self.full():
                return

    def add(self, name, witness):
        if not self.full():
            self.violations.append((name, tuple(int(i) for i in witness)))

    def report(self):
        return AxiomReport(not self.violations, list(self.violations))


def _frozen(a):
    a = np.array(a, dtype=np.int64)
    a.flags.writeable = False
    return a


def _check_square(table, size, what='table'):
    if table.shape != (size, size):
        raise AlgebraError('{0} must be {1}x{1}, got shape {2}'.format(
            what, size, table.shape))
    if size and (table.min() < 0 or table.max() >= size):
        bad = np.argwhere((table < 0) | (table >= size))[0]
        raise AlgebraError('{0} entry {1} out of range'.format(what, tuple(bad)))


def _perm_inverse_table(op):
    """inv[a, y] = the unique b with b ◁ y = a (or -1 where S_y is not onto)."""
    n = op.shape[0]
    inv = -np.ones((n, n), dtype=np.int64)
    cols = np.arange(n)
    for y in range(n):
        inv[op[:, y], y] = cols
    return inv


class FiniteRack:
    """A finite binary operation table intended to be a rack.

    Construction only checks the table shape; use
    :func:`check_rack_axioms` to verify the axioms.
    """

    def __init__(self, table):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] == 0:
            raise AlgebraError('rack table must be a non-empty square array')
        _check_square(table, table.shape[0], 'rack table')
        self.op = _frozen(table)
        self.size = table.shape[0]
        self._inv = None

    @property
    def inv(self):
        if self._inv is None:
            self._inv = _frozen(_perm_inverse_table(self.op))
        return self._inv

    def __len__(self):
        return self.size

    def __eq__(self, other):
        return (type(other) is type(self)
                and np.array_equal(self.op, other.op))

    def __hash__(self):
        return hash(self.op.tobytes())

    def __repr__(self):
        return 'FiniteRack(size={0})'.format(self.size)


class FiniteMGR:
    """A finite multiple group rack: ``X`` as a disjoint union of groups.

    Parameters
    ----------
    rack_table : array-like, shape (size, size)
        ``rack_table[x, y] = x ◁ y``.
    groups : sequence of sequences of int
        The members of each group ``G_λ``, in the order used by
        ``group_tables``.
    group_tables : sequence of array-like
        ``group_tables[λ][r][c]`` is the element index of
        ``groups[λ][r] * groups[λ][c]``.

    Group identities and inverses are derived at construction; a group
    table that has no identity or is missing inverses raises
    :class:`AlgebraError`.
    """

    def __init__(self, rack_table, groups, group_tables):
        rack_table = np.array(rack_table, dtype=np.int64)
        if rack_table.ndim != 2 or rack_table.shape[0] == 0:
            raise AlgebraError('rack table must be a non-empty square array')
        size = rack_table.shape[0]
        _check_square(rack_table, size, 'rack table')
        group_of = -np.ones(size, dtype=np.int64)
        groups = [tuple(int(a) for a in g) for g in groups]
        for lam, members in enumerate(groups):
            if not members:
                raise AlgebraError('group {0} is empty'.format(lam))
            for a in members:
                if not 0 <= a < size:
                    raise AlgebraError('group {0} member {1} out of range'.format(lam, a))
                if group_of[a] >= 0:
                    raise AlgebraError('element {0} lies in two groups'.format(a))
                group_of[a] = lam
        if (group_of < 0).any():
            raise AlgebraError('element {0} is in no group'.format(
                int(np.argmin(group_of))))
        if len(group_tables) != len(groups):
            raise AlgebraError('need one multiplication table per group')

        mul = -np.ones((size, size), dtype=np.int64)
        for lam, (members, gt) in enumerate(zip(groups, group_tables)):
            gt = np.array(gt, dtype=np.int64)
            m = len(members)
            if gt.shape != (m, m):
                raise AlgebraError('group {0} table must be {1}x{1}'.format(lam, m))
            idx = np.array(members)
            mul[np.ix_(idx, idx)] = gt
            if not np.isin(gt, idx).all():
                raise AlgebraError('group {0} table is not closed'.format(lam))

        identity = []
        inverse = -np.ones(size, dtype=np.int64)
        for lam, members in enumerate(groups):
            idx = np.array(members)
            block = mul[np.ix_(idx, idx)]
            ids = [members[r] for r in range(len(members))
                   if np.array_equal(block[r], idx) and np.array_equal(block[:, r], idx)]
            if not ids:
                raise AlgebraError('group {0} has no identity'.format(lam))
            e = ids[0]
            identity.append(e)
            for r, a in enumerate(members):
                hits = [members[c] for c in range(len(members))
                        if block[r, c] == e and block[c, r] == e]
                if not hits:
                    raise AlgebraError('element {0} has no inverse in group {1}'.format(a, lam))
                inverse[a] = hits[0]

        self.size = size
        self.op = _frozen(rack_table)
        self.groups = tuple(groups)
        self.group_of = _frozen(group_of)
        self.mul = _frozen(mul)
        self.identity = tuple(identity)
        self.inverse = _frozen(inverse)
        # x ◁^{-1} y = x ◁ y^{-1}
        self.inv = _frozen(rack_table[:, inverse])

    @property
    def group_tables(self):
        return [self.mul[np.ix_(g, g)] for g in self.groups]

    def __len__(self):
        return self.size

    def __eq__(self, other):
        return (type(other) is type(self)
                and np.array_equal(self.op, other.op)
                and self.groups == other.groups
                and np.array_equal(self.mul, other.mul))

    def __hash__(self):
        return hash((self.op.tobytes(), self.groups, self.mul.tobytes()))

    def __repr__(self):
        return 'FiniteMGR(size={0}, groups={1})'.format(self.size, len(self.groups))


# ---------------------------------------------------------------------------
# constructors

def _positive(n):
    if int(n) != n or n < 1:
        raise ValueError('order must be a positive integer, got {0!r}'.format(n))
    return int(n)


def dihedral_quandle(n):
    """The dihedral quandle ``R_n``: ``x ◁ y = 2y - x (mod n)``."""
    n = _positive(n)
    x, y = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
    return FiniteRack((2 * y - x) % n)


def cyclic_rack(n):
    """The cyclic rack ``C_n``: ``x ◁ y = x + 1 (mod n)``."""
    n = _positive(n)
    x, _ = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
    return FiniteRack((x + 1) % n)


def product_rack(r1, r2):
    """Componentwise product rack on ``R1 x R2`` (row-major pairs)."""
    n1, n2 = r1.size, r2.size
    op = np.empty((n1 * n2, n1 * n2), dtype=np.int64)
    a = np.arange(n1 * n2)
    x1, x2 = np.divmod(a, n2)
    op[:, :] = (r1.op[x1[:, None], x1[None, :]] * n2
                + r2.op[x2[:, None], x2[None, :]])
    return FiniteRack(op)


def _group_report(table):
    """Axiom report for a full Cayley table; returns (report, identity)."""
    t = np.array(table, dtype=np.int64)
    n = t.shape[0]
    out = _Collector()
    if t.ndim != 2 or t.shape != (n, n) or n == 0:
        raise AlgebraError('group table must be a non-empty square array')
    _check_square(t, n, 'group table')
    ar = np.arange(n)
    lhs = t[t[:, :, None], ar[None, None, :]]
    rhs = t[ar[:, None, None], t[None, :, :]]
    out.add_mask('group_assoc', lhs != rhs)
    ids = [e for e in range(n)
           if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not ids:
        out.add('group_identity', ())
        return out.report(), None
    e = ids[0]
    for a in range(n):
        if not ((t[a] == e) & (t[:, a] == e)).any():
            out.add('group_inverse', (a,))
    return out.report(), e


def conjugation_mcq(group_table):
    """The single-group MCQ on a finite group: ``a ◁ b = b^{-1} a b``.

    Raises :class:`AlgebraError` naming the first failing group axiom.
    """
    report, _ = _group_report(group_table)
    if not report.passed:
        name, witness = report.violations[0]
        raise AlgebraError('not a group: {0} {1}'.format(name, witness))
    t = np.array(group_table, dtype=np.int64)
    n = t.shape[0]
    g = FiniteMGR(np.zeros((n, n), dtype=np.int64), [range(n)], [t])
    inv = g.inverse
    a = np.arange(n)
    rack = t[t[inv[None, :], a[:, None]], a[None, :]]
    return FiniteMGR(rack, [range(n)], [t])


def cyclic_group_table(n):
    n = _positive(n)
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n


def permutation_group_table(perms):
    """Cayley table of a list of permutations (tuples), composed left to right.

    ``p * q`` applies ``p`` first, then ``q``.
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = np.empty((len(perms), len(perms)), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(q[p[k]] for k in range(len(p)))]
    return table


def symmetric_group(k):
    """Cayley table of S_k and its elements, in lexicographic order."""
    perms = sorted(itertools.permutations(range(k)))
    return permutation_group_table(perms), perms


def _perm_order(p):
    seen = np.zeros(len(p), dtype=bool)
    order = 1
    for s in range(len(p)):
        length = 0
        i = s
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        if length:
            order = math.lcm(order, length)
    return order


def stabilizer_order(r):
    """Smallest ``k > 0`` with ``S_y^k = id`` for every ``y``.

    This is the lcm over ``y`` of the orders of the permutations
    ``S_y: x -> x ◁ y``.
    """
    order = 1
    for y in range(r.size):
        col = r.op[:, y]
        if len(set(col.tolist())) != r.size:
            raise AlgebraError('S_{0} is not a bijection'.format(y))
        order = math.lcm(order, _perm_order(col))
    return order


def _power_table(op, j):
    """table[x, y] = S_y^j(x)."""
    n = op.shape[0]
    out = np.tile(np.arange(n)[:, None], (1, n))
    cols = np.arange(n)[None, :]
    for _ in range(j):
        out = op[out, cols]
    return out


def mgr_from_rack(r):
    """The MGR ``R x Z_n`` with ``n = stabilizer_order(r)``.

    ``(x, i) ◁ (y, j) = (S_y^j(x), i)`` and ``(x, i)(x, j) = (x, i + j)``;
    the pair ``(x, i)`` has index ``x * n + i`` and group ``x``.
    """
    n = stabilizer_order(r)
    m = r.size
    powers = [_power_table(r.op, j) for j in range(n)]
    size = m * n
    a = np.arange(size)
    x, i = np.divmod(a, n)
    op = np.empty((size, size), dtype=np.int64)
    for j in range(n):
        cols = a[a % n == j]
        y = cols // n
        op[:, cols] = powers[j][x[:, None], y[None, :]] * n + i[:, None]
    groups = [[x0 * n + k for k in range(n)] for x0 in range(m)]
    zn = cyclic_group_table(n)
    tables = [np.array(g)[zn] for g in groups]
    return FiniteMGR(op, groups, tables)


def rack_op_inv(alg, a, y):
    """The unique ``b`` with ``b ◁ y = a``."""
    b = int(alg.inv[a, y])
    if b < 0:
        raise AlgebraError('S_{0} is not a bijection'.format(y))
    return b


# ---------------------------------------------------------------------------
# axiom checks

def _rack_violations(op, out):
    n = op.shape[0]
    for y in range(n):
        if len(np.unique(op[:, y])) != n:
            out.add('rack_i_bijective', (y,))
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    lhs = op[op[x, y], z]
    rhs = op[op[x, z], op[y, z]]
    out.add_mask('rack_ii_distributive', lhs != rhs)


def check_rack_axioms(r):
    """Exhaustively check bijectivity of every ``S_y`` and self-distributivity."""
    out = _Collector()
    _rack_violations(r.op, out)
    return out.report()


def check_quandle(r):
    """Rack axioms plus idempotence ``x ◁ x = x``."""
    out = _Collector()
    _rack_violations(r.op, out)
    diag = r.op[np.arange(r.size), np.arange(r.size)]
    out.add_mask('quandle_idempotent', diag != np.arange(r.size))
    return out.report()


def check_mgr_axioms(x):
    """Exhaustive check of the group axioms and MGR conditions (i)-(iii)."""
    out = _Collector()
    op, mul = x.op, x.mul
    for lam, members in enumerate(x.groups):
        g = np.array(members)
        block = mul[np.ix_(g, g)]
        # associativity inside the group, witnesses are element indices
        lhs = mul[block[:, :, None], g[None, None, :]]
        rhs = mul[g[:, None, None], block[None, :, :]]
        for w in np.argwhere(lhs != rhs):
            out.add('group_assoc', g[w])
    for lam, members in enumerate(x.groups):
        g = np.array(members)
        e = x.identity[lam]
        # (i) x ◁ (ab) = (x ◁ a) ◁ b
        ab = mul[np.ix_(g, g)]
        lhs = op[np.arange(x.size)[:, None, None], ab[None, :, :]]
        rhs = op[op[:, g][:, :, None], g[None, None, :]]
        for w in np.argwhere(lhs != rhs):
            out.add('mgr_i_action', (w[0], g[w[1]], g[w[2]]))
        for w in np.flatnonzero(op[:, e] != np.arange(x.size)):
            out.add('mgr_i_identity', (w, e))
    _rack_violations(op, out)
    for xx in range(x.size):
        col = op[:, xx]
        for lam, members in enumerate(x.groups):
            g = np.array(members)
            images = col[g]
            targets = np.unique(x.group_of[images])
            if len(targets) != 1:
                out.add('mgr_iii_group', (xx, lam))
                continue
            ab = mul[np.ix_(g, g)]
            lhs = col[ab]
            rhs = mul[images[:, None], images[None, :]]
            for w in np.argwhere(lhs != rhs):
                out.add('mgr_iii_hom', (g[w[0]], g[w[1]], xx))
    rep = out.report()
    rep.violations.sort(key=lambda v: (_MGR_ORDER.index(v[0]), v[1]))
    return rep


_MGR_ORDER = ['group_assoc', 'mgr_i_action', 'mgr_i_identity', 'rack_i_bijective',
              'rack_ii_distributive', 'mgr_iii_group', 'mgr_iii_hom']


def check_group_table(table):
    """Exhaustive group-axiom report for a full Cayley table."""
    return _group_report(table)[0]


# ---------------------------------------------------------------------------
# .alg text format

def _strip(line):
    return line.split('#', 1)[0].split()


def format_algebra(alg):
    """Serialize to the ``.alg`` Cayley-table text format."""
    lines = []
    if isinstance(alg, FiniteMGR):
        lines.append('mgr {0} {1}'.format(alg.size, len(alg.groups)))
    else:
        lines.append('rack {0}'.format(alg.size))
    for row in alg.op:
        lines.append(' '.join(str(int(v)) for v in row))
    if isinstance(alg, FiniteMGR):
        for lam, members in enumerate(alg.groups):
            lines.append('group {0} {1}'.format(lam, ' '.join(map(str, members))))
            for row in alg.mul[np.ix_(members, members)]:
                lines.append(' '.join(str(int(v)) for v in row))
    return '\n'.join(lines) + '\n'


def parse_algebra(text):
    """Parse ``.alg`` text into a :class:`FiniteRack` or :class:`FiniteMGR`."""
    rows = [(no, toks) for no, toks in
            ((i + 1, _strip(l)) for i, l in enumerate(text.splitlines())) if toks]
    if not rows:
        raise AlgebraError('empty algebra file')
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(rows):
            raise AlgebraError('unexpected end of algebra file')
        pos += 1
        return rows[pos - 1]

    def ints(no, toks, count):
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise AlgebraError('line {0}: expected integers'.format(no)) from None
        if len(vals) != count:
            raise AlgebraError('line {0}: expected {1} entries, got {2}'.format(
                no, count, len(vals)))
        return vals

    no, head = take()
    if head[0] == 'rack' and len(head) == 2:
        size = ints(no, head[1:], 1)[0]
        table = [ints(*take(), size) for _ in range(size)]
        kind = 'rack'
    elif head[0] == 'mgr' and len(head) == 3:
        size, ngroups = ints(no, head[1:], 2)
        table = [ints(*take(), size) for _ in range(size)]
        kind = 'mgr'
    else:
        raise AlgebraError('line {0}: expected "rack <size>" or '
                           '"mgr <size> <num_groups>"'.format(no))
    if size < 1:
        raise AlgebraError('line {0}: size must be positive'.format(no))
    if kind == 'rack':
        if pos != len(rows):
            raise AlgebraError('line {0}: trailing content'.format(rows[pos][0]))
        return FiniteRack(table)
    groups, tables = [], []
    for lam in range(ngroups):
        no, toks = take()
        if toks[0] != 'group' or len(toks) < 3:
            raise AlgebraError('line {0}: expected "group <λ> <members…>"'.format(no))
        label, *members = ints(no, toks[1:], len(toks) - 1)
        if label != lam:
            raise AlgebraError('line {0}: groups must be listed in order'.format(no))
        groups.append(members)
        tables.append([ints(*take(), len(members)) for _ in members])
    if pos != len(rows):
        raise AlgebraError('line {0}: trailing content'.format(rows[pos][0]))
    return FiniteMGR(table, groups, tables)


def load_algebra(path):
    with open(path) as fh:
        return parse_algebra(fh.read())

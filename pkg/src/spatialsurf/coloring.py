"""
Colorings of Y-oriented diagrams by racks and multiple group racks.

Crossing rule: a ``sign=+1`` crossing needs
``C(under_out) = C(under_in) ◁ C(over)`` and a ``sign=-1`` crossing needs
``C(under_in) = C(under_out) ◁ C(over)``.

Vertex rule: the three colors lie in one group and, with ``k`` the lone
slot (the out-arc of a merge, the in-arc of a split),
``C(pred(k)) C(succ(k)) = C(k)`` at a merge and
``C(succ(k)) C(pred(k)) = C(k)`` at a split, where ``pred``/``succ`` are
taken counterclockwise.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .algebra import FiniteMGR

BRUTEFORCE_BOUND = 10 ** 8


class ColoringError(ValueError):
    pass


def _vertex_product(v):
    """``(p, q, r)`` with the vertex rule ``C(p) C(q) = C(r)``."""
    k, s, t = (a for a, _ in v.rotation)
    # rotation starts at the lone slot k: succ(k) = s, pred(k) = t
    if v.kind == 'merge':
        return t, s, k
    if v.kind == 'split':
        return s, t, k
    raise ColoringError('vertex {0} is a {1}; orient the diagram first'.format(v.id, v.kind))


class _Problem:
    """Integer-indexed constraints of a diagram over an algebra."""

    def __init__(self, d, alg):
        if d.vertices and not isinstance(alg, FiniteMGR):
            raise ColoringError('diagram has vertices; coloring needs an MGR, not a plain rack')
        self.arcs = list(d.arcs)
        index = {a: i for i, a in enumerate(self.arcs)}
        self.m = alg.size
        self.op = alg.op.tolist()
        self.opinv = alg.inv.tolist()
        if isinstance(alg, FiniteMGR):
            self.mul = alg.mul.tolist()
            self.inverse = alg.inverse.tolist()
        self.crossings = [(index[c.over], index[c.under_in], index[c.under_out], c.sign)
                          for c in d.crossings]
        self.vertices = [tuple(index[a] for a in _vertex_product(v)) for v in d.vertices]
        watch = [[] for _ in self.arcs]
        for k, (o, i, j, _) in enumerate(self.crossings):
            for a in {o, i, j}:
                watch[a].append(('c', k))
        for k, (p, q, r) in enumerate(self.vertices):
            for a in {p, q, r}:
                watch[a].append(('v', k))
        self.watch = watch
        self.free = [a for a in range(len(self.arcs)) if not watch[a]]

    def propagate(self, col, queue):
        """Fill forced colors; return False on contradiction."""
        op, opinv = self.op, self.opinv
        while queue:
            a = queue.pop()
            for kind, k in self.watch[a]:
                if kind == 'c':
                    o, i, j, s = self.crossings[k]
                    co, ci, cj = col[o], col[i], col[j]
                    if co < 0:
                        continue
                    if s > 0:
                        fwd, back = op[ci][co] if ci >= 0 else -1, opinv[cj][co] if cj >= 0 else -1
                    else:
                        fwd, back = opinv[ci][co] if ci >= 0 else -1, op[cj][co] if cj >= 0 else -1
                    if ci >= 0 and cj >= 0:
                        if fwd != cj:
                            return False
                    elif ci >= 0:
                        col[j] = fwd
                        queue.append(j)
                    elif cj >= 0:
                        col[i] = back
                        queue.append(i)
                else:
                    p, q, r = self.vertices[k]
                    cp, cq, cr = col[p], col[q], col[r]
                    known = (cp >= 0) + (cq >= 0) + (cr >= 0)
                    if known < 2:
                        continue
                    mul, inverse = self.mul, self.inverse
                    if cp >= 0 and cq >= 0:
                        v = mul[cp][cq]
                        if v < 0 or (cr >= 0 and cr != v):
                            return False
                        if cr < 0:
                            col[r] = v
                            queue.append(r)
                    elif cr >= 0 and cp >= 0:
                        v = mul[inverse[cp]][cr]
                        if v < 0:
                            return False
                        col[q] = v
                        queue.append(q)
                    else:
                        v = mul[cr][inverse[cq]]
                        if v < 0:
                            return False
                        col[p] = v
                        queue.append(p)
        return True

    def _branch_arc(self, col):
        """Uncolored arc whose coloring unlocks the most constraints.

        A constraint counts when the arc is one of exactly two unknowns
        (for a crossing the over arc must be known or be the candidate).
        Ties go to the lowest arc id; -1 when everything is colored.
        """
        best, best_score = -1, -1
        for a in range(len(col)):
            if col[a] >= 0 or not self.watch[a]:
                continue
            score = 0
            for kind, k in self.watch[a]:
                if kind == 'c':
                    o, i, j, _ = self.crossings[k]
                    unknown = {b for b in (o, i, j) if col[b] < 0}
                    if len(unknown) == 2 or (len(unknown) == 1 and o == a):
                        score += 1
                else:
                    unknown = {b for b in self.vertices[k] if col[b] < 0}
                    if len(unknown) == 2:
                        score += 1
            if score > best_score:
                best, best_score = a, score
        return best

    def count(self, col=None):
        if col is None:
            col = [-1] * len(self.arcs)
            for a in self.free:
                col[a] = 0
            return self.count_from(col) * self.m ** len(self.free)
        return self.count_from(col)

    def count_from(self, col):
        a = self._branch_arc(col)
        if a < 0:
            return 1
        total = 0
        for x in range(self.m):
            trial = list(col)
            trial[a] = x
            if self.propagate(trial, [a]):
                total += self.count_from(trial)
        return total

    def solutions(self, col):
        """Yield complete colorings in lexicographic order of sorted arcs."""
        a = -1
        for b in range(len(col)):
            if col[b] < 0:
                a = b
                break
        if a < 0:
            yield list(col)
            return
        for x in range(self.m):
            trial = list(col)
            trial[a] = x
            if self.propagate(trial, [a]):
                yield from self.solutions(trial)


def _search_partition(args):
    d, alg, a, x = args
    prob = _Problem(d, alg)
    col = [-1] * len(prob.arcs)
    for f in prob.free:
        col[f] = 0
    col[a] = x
    if not prob.propagate(col, [a]):
        return 0
    return prob.count_from(col)


def count_colorings_search(d, alg, jobs=1):
    """Exact count by propagation and branching.

    Propagation solves any constraint with a single unknown arc (via
    ``◁``-inverses and group inverses); when stuck it branches on the
    arc that unlocks the most constraints (lowest id on ties).  Fast when
    few branch points remain, exponential in their number otherwise.
    """
    prob = _Problem(d, alg)
    if jobs <= 1:
        return prob.count()
    col = [-1] * len(prob.arcs)
    for f in prob.free:
        col[f] = 0
    a = prob._branch_arc(col)
    scale = prob.m ** len(prob.free)
    if a < 0:
        return scale
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_search_partition, [(d, alg, a, x) for x in range(prob.m)])
        return sum(parts) * scale


# ---------------------------------------------------------------------------
# variable elimination over sparse relations
#
# A factor is ``(scope, rows)`` with ``rows`` a dict from value tuples
# (one entry per scope arc) to the number of ways that tuple extends.
# Rack and group rules are functional, so these relations stay far
# smaller than the dense ``|X|^k`` tables.

ROW_LIMIT = 2_000_000


class _TooBig(Exception):
    pass


def _factor_tables(d, alg):
    prob = _Problem(d, alg)
    m = prob.m
    op = prob.op
    factors = []
    for o, i, j, sign in prob.crossings:
        if sign > 0:
            rows = [((y, x, op[x][y]), 1) for y in range(m) for x in range(m)]
        else:
            rows = [((y, op[x][y], x), 1) for y in range(m) for x in range(m)]
        factors.append(_restrict((o, i, j), rows))
    if prob.vertices:
        groups = [list(g) for g in alg.groups]
        mul = prob.mul
        for p, q, k in prob.vertices:
            rows = [((a, b, mul[a][b]), 1) for g in groups for a in g for b in g]
            factors.append(_restrict((p, q, k), rows))
    return prob, factors


def _restrict(scope, rows):
    """Drop rows that disagree on repeated arcs and merge the repeats."""
    uniq = tuple(dict.fromkeys(scope))
    pos = [scope.index(v) for v in uniq]
    out = {}
    for vals, c in rows:
        if all(vals[k] == vals[scope.index(v)] for k, v in enumerate(scope)):
            key = tuple(vals[k] for k in pos)
            out[key] = out.get(key, 0) + c
    return uniq, out


def _join(f, g):
    (sf, rf), (sg, rg) = f, g
    shared = [v for v in sg if v in sf]
    extra = [v for v in sg if v not in sf]
    kf = [sf.index(v) for v in shared]
    kg = [sg.index(v) for v in shared]
    eg = [sg.index(v) for v in extra]
    index = {}
    for vals, c in rg.items():
        index.setdefault(tuple(vals[k] for k in kg), []).append((tuple(vals[k] for k in eg), c))
    out = {}
    for vals, c in rf.items():
        for rest, c2 in index.get(tuple(vals[k] for k in kf), ()):
            out[vals + rest] = c * c2
        if len(out) > ROW_LIMIT:
            raise _TooBig
    return sf + tuple(extra), out


def _sum_out(f, v):
    scope, rows = f
    k = scope.index(v)
    out = {}
    for vals, c in rows.items():
        key = vals[:k] + vals[k + 1:]
        out[key] = out.get(key, 0) + c
    return scope[:k] + scope[k + 1:], out


def _estimate(touching, m):
    """Join size if the factors were independent apart from shared arcs."""
    size = 1.0
    seen = set()
    for sc, rows in touching:
        size *= len(rows)
        for v in sc:
            if v in seen:
                size /= m
            seen.add(v)
    return size


def _ve(factors, variables, m):
    """Sum over ``variables`` of the product of ``factors``; exact int."""
    factors = list(factors)
    remaining = set(variables)
    while remaining:
        best = None
        for v in sorted(remaining):
            est = _estimate([f for f in factors if v in f[0]], m)
            if best is None or est < best[0]:
                best = (est, v)
        est, v = best
        if est > ROW_LIMIT:
            return _condition(factors, remaining, m)
        touching = sorted((f for f in factors if v in f[0]), key=lambda f: len(f[1]))
        acc = touching[0]
        try:
            for f in touching[1:]:
                acc = _join(acc, f)
                if not acc[1]:
                    return 0
        except _TooBig:
            return _condition(factors, remaining, m)
        factors = [f for f in factors if v not in f[0]]
        factors.append(_sum_out(acc, v))
        remaining.discard(v)
    total = 1
    for _, rows in factors:
        total *= rows.get((), 0)
    return total


def _pick_branch(factors, remaining):
    degree = {v: 0 for v in remaining}
    for sc, _ in factors:
        for v in sc:
            degree[v] += 1
    return max(sorted(remaining), key=lambda v: degree[v])


def _slice(factors, v, x):
    out = []
    for sc, rows in factors:
        if v in sc:
            k = sc.index(v)
            out.append((sc[:k] + sc[k + 1:],
                        {vals[:k] + vals[k + 1:]: c for vals, c in rows.items() if vals[k] == x}))
        else:
            out.append((sc, rows))
    return out


def _condition(factors, remaining, m):
    v = _pick_branch(factors, remaining)
    rest = remaining - {v}
    return sum(_ve(_slice(factors, v, x), rest, m) for x in range(m))


def _ve_partition(args):
    d, alg, x = args
    prob, factors = _factor_tables(d, alg)
    constrained = set(range(len(prob.arcs))) - set(prob.free)
    v = _pick_branch(factors, constrained)
    return _ve(_slice(factors, v, x), constrained - {v}, prob.m)


def count_colorings(d, alg, jobs=1):
    """Number of colorings of ``d`` by ``alg``, as an exact integer.

    Every crossing and vertex rule is a relation over its arcs; the count
    is the number of assignments satisfying all of them, computed by
    eliminating arcs one at a time (smallest estimated join first) and
    conditioning on the most shared arc whenever a join would exceed
    ``ROW_LIMIT`` rows.  Arcs in no rule contribute a factor
    ``|X|`` each.  With ``jobs > 1`` the values of the most shared arc
    are split across worker processes; the total does not depend on
    ``jobs``.
    """
    prob, factors = _factor_tables(d, alg)
    scale = prob.m ** len(prob.free)
    constrained = set(range(len(prob.arcs))) - set(prob.free)
    if jobs <= 1 or not constrained:
        return _ve(factors, constrained, prob.m) * scale
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_ve_partition, [(d, alg, x) for x in range(prob.m)])
        return sum(parts) * scale


def enumerate_colorings(d, alg, cap):
    """The first ``cap`` colorings in lexicographic order.

    Returns ``(colorings, truncated)`` where each coloring is a dict
    ``arc -> element`` and ``truncated`` tells whether more exist.
    """
    if cap < 1:
        raise ValueError('cap must be positive')
    prob = _Problem(d, alg)
    out = []
    for sol in prob.solutions([-1] * len(prob.arcs)):
        if len(out) == cap:
            return out, True
        out.append(dict(zip(prob.arcs, sol)))
    return out, False


def is_coloring(d, alg, coloring):
    """Check the crossing and vertex rules for a total assignment."""
    missing = [a for a in d.arcs if a not in coloring]
    if missing:
        raise ColoringError('assignment misses arc(s) {0}'.format(', '.join(missing)))
    c = {a: int(x) for a, x in coloring.items()}
    for x in d.crossings:
        if x.sign > 0:
            ok = alg.op[c[x.under_in], c[x.over]] == c[x.under_out]
        else:
            ok = alg.op[c[x.under_out], c[x.over]] == c[x.under_in]
        if not ok:
            return False
    if d.vertices and not isinstance(alg, FiniteMGR):
        raise ColoringError('diagram has vertices; coloring needs an MGR')
    for v in d.vertices:
        p, q, r = (c[a] for a in _vertex_product(v))
        if alg.mul[p, q] != r:
            return False
    return True


def count_colorings_bruteforce(d, alg, bound=BRUTEFORCE_BOUND, chunk=1 << 20):
    """Exhaustive count over all ``|X|^|arcs|`` assignments (test oracle).

    Each constraint is evaluated directly from the tables, without any
    inverse lookups or propagation.
    """
    m, n = alg.size, len(d.arcs)
    total = m ** n
    if total > bound:
        raise ColoringError('{0}^{1} assignments exceeds the bound {2}'.format(m, n, bound))
    if d.vertices and not isinstance(alg, FiniteMGR):
        raise ColoringError('diagram has vertices; coloring needs an MGR')
    index = {a: i for i, a in enumerate(d.arcs)}
    op = np.asarray(alg.op)
    mul = np.asarray(alg.mul) if d.vertices else None
    prods = [tuple(index[a] for a in _vertex_product(v)) for v in d.vertices]
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = []
        for k in range(n):
            cols.append((idx // m ** (n - 1 - k)) % m)
        ok = np.ones(len(idx), dtype=bool)
        for x in d.crossings:
            o, i, j = cols[index[x.over]], cols[index[x.under_in]], cols[index[x.under_out]]
            if x.sign > 0:
                ok &= op[i, o] == j
            else:
                ok &= op[j, o] == i
        for p, q, r in prods:
            ok &= mul[cols[p], cols[q]] == cols[r]
        count += int(ok.sum())
    return count


def all_assignments(d, alg):
    """Every assignment as a dict, lexicographic (small inputs only)."""
    for combo in itertools.product(range(alg.size), repeat=len(d.arcs)):
        yield dict(zip(d.arcs, combo))

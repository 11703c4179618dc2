"""
Diagrams of spatial trivalent graphs
====================================

A diagram is stored as a slot model.  Arcs are the pieces of the
diagram between undercrossings and vertices; each arc carries a
direction (the Y-orientation).  Crossings and vertices consume arc
ends:

* a crossing consumes the head of ``under_in`` and the tail of
  ``under_out``; its ``over`` arc is referenced, not cut;
* a vertex consumes three arc ends, listed counterclockwise, each
  flagged ``'in'`` (the arc's head) or ``'out'`` (the arc's tail);
* circle arcs (closed components with no undercrossing) are consumed
  nowhere.

Crossing signs: ``+1`` when turning the under-strand direction a
quarter turn clockwise gives the over-strand direction.

The ``.sgd`` text format has one declaration per line::

    arc a1
    circle c1
    crossing x1 over=a1 under_in=a2 under_out=a3 sign=+
    vertex v1 kind=merge left=a1 right=a2 stem=a3

A merge has ``left`` and ``right`` incoming and ``stem`` outgoing, a
split has ``stem`` incoming; the counterclockwise rotation is
``(left, stem, right)`` for a merge and ``(stem, left, right)`` for a
split.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field

IN, OUT = 'in', 'out'
_TOKEN = re.compile(r'^[A-Za-z0-9_.\-]+$')


class DiagramError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Crossing:
    id: str
    over: str
    under_in: str
    under_out: str
    sign: int

    def arcs(self):
        return (self.over, self.under_in, self.under_out)


@dataclass(frozen=True, order=True)
class Vertex:
    """A trivalent vertex; ``rotation`` is counterclockwise and starts at the stem."""
    id: str
    rotation: tuple

    @classmethod
    def from_slots(cls, id, slots):
        """Build from any counterclockwise triple of ``(arc, 'in'|'out')``."""
        slots = tuple((a, d) for a, d in slots)
        dirs = [d for _, d in slots]
        if len(slots) != 3 or any(d not in (IN, OUT) for d in dirs):
            raise DiagramError('vertex {0}: need three (arc, in|out) slots'.format(id))
        if dirs.count(IN) in (0, 3):
            # keep Y-violations representable so validate() can report them
            k = slots.index(min(slots))
            return cls(id, slots[k:] + slots[:k])
        lone = IN if dirs.count(IN) == 1 else OUT
        k = dirs.index(lone)
        return cls(id, slots[k:] + slots[:k])

    @classmethod
    def merge(cls, id, left, right, stem):
        return cls(id, ((stem, OUT), (right, IN), (left, IN)))

    @classmethod
    def split(cls, id, left, right, stem):
        return cls(id, ((stem, IN), (left, OUT), (right, OUT)))

    @property
    def kind(self):
        n_in = sum(d == IN for _, d in self.rotation)
        return {2: 'merge', 1: 'split', 3: 'sink', 0: 'source'}[n_in]

    @property
    def stem(self):
        return self.rotation[0][0]

    @property
    def left(self):
        return self.rotation[2][0] if self.kind == 'merge' else self.rotation[1][0]

    @property
    def right(self):
        return self.rotation[1][0] if self.kind == 'merge' else self.rotation[2][0]

    def arcs(self):
        return tuple(a for a, _ in self.rotation)


@dataclass(frozen=True)
class Diagram:
    """An immutable Y-oriented diagram.  Use :func:`make_diagram` to build one."""
    arcs: tuple
    crossings: tuple
    vertices: tuple
    circles: frozenset = field(default_factory=frozenset)

    def crossing(self, cid):
        for c in self.crossings:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def vertex(self, vid):
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def __str__(self):
        return 'Diagram({0} arcs, {1} crossings, {2} vertices, {3} circles)'.format(
            len(self.arcs), len(self.crossings), len(self.vertices), len(self.circles))


def make_diagram(arcs=(), crossings=(), vertices=(), circles=()):
    """Canonical constructor: sorts everything so equal diagrams compare equal."""
    circles = frozenset(circles)
    arcs = tuple(sorted(set(arcs) | circles))
    return Diagram(arcs, tuple(sorted(crossings)), tuple(sorted(vertices)), circles)


# ---------------------------------------------------------------------------
# validation

def _ends(d):
    """Map arc -> (tail consumers, head consumers)."""
    tails = defaultdict(list)
    heads = defaultdict(list)
    for c in d.crossings:
        heads[c.under_in].append(('crossing', c.id))
        tails[c.under_out].append(('crossing', c.id))
    for v in d.vertices:
        for i, (a, flag) in enumerate(v.rotation):
            (heads if flag == IN else tails)[a].append(('vertex', v.id, i))
    return tails, heads


def validate(d):
    """List every violated diagram invariant; empty for a valid diagram."""
    problems = []
    known = set(d.arcs)
    seen_nodes = set()
    if len(known) != len(d.arcs):
        problems.append('duplicate arc ids')
    for a in d.circles:
        if a not in known:
            problems.append('circle {0}: undeclared arc'.format(a))
    for c in d.crossings:
        if c.id in seen_nodes:
            problems.append('duplicate id {0}'.format(c.id))
        seen_nodes.add(c.id)
        for role, a in zip(('over', 'under_in', 'under_out'), c.arcs()):
            if a not in known:
                problems.append('crossing {0}: unknown arc {1} ({2})'.format(c.id, a, role))
        if c.sign not in (1, -1):
            problems.append('crossing {0}: sign must be +1 or -1'.format(c.id))
    for v in d.vertices:
        if v.id in seen_nodes:
            problems.append('duplicate id {0}'.format(v.id))
        seen_nodes.add(v.id)
        if len(v.rotation) != 3:
            problems.append('vertex {0}: needs exactly three slots'.format(v.id))
            continue
        for a, flag in v.rotation:
            if a not in known:
                problems.append('vertex {0}: unknown arc {1}'.format(v.id, a))
            if flag not in (IN, OUT):
                problems.append('vertex {0}: bad direction {1!r}'.format(v.id, flag))
        kind = v.kind
        if kind in ('sink', 'source'):
            problems.append('vertex {0}: Y-violation ({1})'.format(v.id, kind))
    tails, heads = _ends(d)
    for a in d.arcs:
        nt, nh = len(tails[a]), len(heads[a])
        if a in d.circles:
            if nt or nh:
                problems.append('circle {0}: must not be consumed by crossings or vertices'.format(a))
            continue
        if nt != 1:
            problems.append('arc {0}: tail consumed {1} times (slot violation)'.format(a, nt))
        if nh != 1:
            problems.append('arc {0}: head consumed {1} times (slot violation)'.format(a, nh))
    return problems


def y_condition(d):
    return all(v.kind in ('merge', 'split') for v in d.vertices)


def check(d):
    problems = validate(d)
    if problems:
        raise DiagramError('; '.join(problems))
    return d


# ---------------------------------------------------------------------------
# edges and orientations

def edges(d):
    """Partition the arcs into graph edges.

    Each edge is a tuple of arcs in traversal order (starting at the arc
    leaving a vertex, or at the smallest arc id of a closed edge).  Edges
    are sorted by their smallest arc id.
    """
    nxt = {c.under_in: c.under_out for c in d.crossings}
    prv = {c.under_out: c.under_in for c in d.crossings}
    done = set()
    out = []
    for a in d.arcs:
        if a in done:
            continue
        start = a
        while start in prv and prv[start] != a:
            start = prv[start]
        chain = [start]
        done.add(start)
        cur = start
        while cur in nxt and nxt[cur] not in done:
            cur = nxt[cur]
            chain.append(cur)
            done.add(cur)
        if start in prv:
            # closed edge: rotate to the smallest id
            k = chain.index(min(chain))
            chain = chain[k:] + chain[:k]
        out.append(tuple(chain))
    out.sort(key=min)
    return out


def is_closed_edge(d, edge):
    """True for vertex-free edges (circles and closed under-chains)."""
    if edge[0] in d.circles:
        return True
    nxt = {c.under_in: c.under_out for c in d.crossings}
    return nxt.get(edge[-1]) == edge[0]


def reverse_edge(d, edge):
    """Reverse every arc of ``edge``.  The result may violate the Y-condition."""
    es = set(edge)
    crossings = []
    for c in d.crossings:
        sign = c.sign
        under_in, under_out = c.under_in, c.under_out
        if under_in in es:
            under_in, under_out = under_out, under_in
            sign = -sign
        if c.over in es:
            sign = -sign
        crossings.append(Crossing(c.id, c.over, under_in, under_out, sign))
    flip = {IN: OUT, OUT: IN}
    vertices = [Vertex.from_slots(v.id, [(a, flip[f] if a in es else f) for a, f in v.rotation])
                for v in d.vertices]
    return make_diagram(d.arcs, crossings, vertices, d.circles)


def enumerate_y_orientations(d):
    """Every Y-orientation reachable by reversing edges, in bitmask order.

    Bit ``i`` of the mask reverses ``edges(d)[i]``; mask 0 is ``d`` itself.
    """
    es = edges(d)
    out = []
    for mask in range(1 << len(es)):
        cur = d
        for i, e in enumerate(es):
            if mask >> i & 1:
                cur = reverse_edge(cur, e)
        if y_condition(cur):
            out.append(cur)
    return out


# ---------------------------------------------------------------------------
# abstract surface

@dataclass(frozen=True)
class SurfaceStats:
    components: int
    euler: int
    boundary: int
    genus: int


def surface_stats(d):
    """Abstract-surface data of the spatial surface built from ``d``.

    Vertices become disks with their stored rotation, edges become
    untwisted bands and each crossing is two separate bands, so
    crossings play no part.  Closed edges contribute an annulus each.
    """
    es = edges(d)
    # half-edge ends: vertex slot -> the slot at the other end of its edge
    tail_slot, head_slot = {}, {}
    for v in d.vertices:
        for i, (a, flag) in enumerate(v.rotation):
            (head_slot if flag == IN else tail_slot)[a] = (v.id, i)
    partner = {}
    n_edges = 0
    n_closed = 0
    for e in es:
        if is_closed_edge(d, e):
            n_closed += 1
            continue
        n_edges += 1
        s, t = tail_slot[e[0]], head_slot[e[-1]]
        partner[s] = t
        partner[t] = s
    # face tracing: cross the band, then turn to the next slot counterclockwise
    seen = set()
    boundary = 0
    for start in partner:
        if start in seen:
            continue
        boundary += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            vid, i = partner[cur]
            cur = (vid, (i + 1) % 3)
    # connected components of the graph part
    parent = {v.id: v.id for v in d.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in partner.items():
        parent[find(s[0])] = find(t[0])
    components = len({find(v) for v in parent}) + n_closed
    euler = len(d.vertices) - n_edges
    boundary += 2 * n_closed
    genus2 = 2 * components - boundary - euler
    return SurfaceStats(components, euler, boundary, genus2 // 2)


# ---------------------------------------------------------------------------
# .sgd text format

def _kv(no, toks, keys):
    vals = {}
    for t in toks:
        if '=' not in t:
            raise DiagramError('line {0}: expected key=value, got {1!r}'.format(no, t))
        k, v = t.split('=', 1)
        if k not in keys or k in vals:
            raise DiagramError('line {0}: unexpected key {1!r}'.format(no, k))
        vals[k] = v
    missing = [k for k in keys if k not in vals]
    if missing:
        raise DiagramError('line {0}: missing {1}'.format(no, ', '.join(missing)))
    return vals


def _token(no, t):
    if not _TOKEN.match(t):
        raise DiagramError('line {0}: bad id {1!r}'.format(no, t))
    return t


def parse_diagram(text):
    """Parse ``.sgd`` text into a validated :class:`Diagram`.

    Raises :class:`DiagramError` on syntax errors (with the line number),
    references to undeclared arcs, and invariant violations.
    """
    arcs, circles, crossings, vertices = [], [], [], []
    declared = set()
    refs = []
    for no, line in enumerate(text.splitlines(), 1):
        toks = line.split('#', 1)[0].split()
        if not toks:
            continue
        head, rest = toks[0], toks[1:]
        if head in ('arc', 'circle'):
            if len(rest) != 1:
                raise DiagramError('line {0}: expected "{1} <id>"'.format(no, head))
            a = _token(no, rest[0])
            if head == 'arc':
                if a in declared:
                    raise DiagramError('line {0}: arc {1} declared twice'.format(no, a))
                arcs.append(a)
            else:
                circles.append(a)
            declared.add(a)
        elif head == 'crossing':
            if not rest:
                raise DiagramError('line {0}: crossing needs an id'.format(no))
            kv = _kv(no, rest[1:], ('over', 'under_in', 'under_out', 'sign'))
            if kv['sign'] not in ('+', '-'):
                raise DiagramError('line {0}: sign must be + or -'.format(no))
            c = Crossing(_token(no, rest[0]), kv['over'], kv['under_in'], kv['under_out'],
                         1 if kv['sign'] == '+' else -1)
            crossings.append(c)
            refs.extend((no, a) for a in c.arcs())
        elif head == 'vertex':
            if not rest:
                raise DiagramError('line {0}: vertex needs an id'.format(no))
            kv = _kv(no, rest[1:], ('kind', 'left', 'right', 'stem'))
            make = {'merge': Vertex.merge, 'split': Vertex.split}.get(kv['kind'])
            if make is None:
                raise DiagramError('line {0}: kind must be merge or split'.format(no))
            v = make(_token(no, rest[0]), kv['left'], kv['right'], kv['stem'])
            vertices.append(v)
            refs.extend((no, a) for a in v.arcs())
        else:
            raise DiagramError('line {0}: unknown declaration {1!r}'.format(no, head))
    for no, a in refs:
        if a not in declared:
            raise DiagramError('line {0}: unknown arc {1}'.format(no, a))
    return check(make_diagram(arcs, crossings, vertices, circles))


def format_diagram(d):
    """Serialize to ``.sgd``; declarations are grouped by kind and sorted by id."""
    lines = ['arc {0}'.format(a) for a in d.arcs if a not in d.circles]
    lines += ['circle {0}'.format(a) for a in sorted(d.circles)]
    for c in d.crossings:
        lines.append('crossing {0} over={1} under_in={2} under_out={3} sign={4}'.format(
            c.id, c.over, c.under_in, c.under_out, '+' if c.sign > 0 else '-'))
    for v in d.vertices:
        lines.append('vertex {0} kind={1} left={2} right={3} stem={4}'.format(
            v.id, v.kind, v.left, v.right, v.stem))
    return '\n'.join(lines) + '\n'


def load_diagram(path):
    with open(path) as fh:
        return parse_diagram(fh.read())


def rename_arcs(d, mapping):
    """Apply an arc renaming (arcs missing from ``mapping`` keep their id)."""
    f = lambda a: mapping.get(a, a)
    crossings = [Crossing(c.id, f(c.over), f(c.under_in), f(c.under_out), c.sign)
                 for c in d.crossings]
    vertices = [Vertex(v.id, tuple((f(a), fl) for a, fl in v.rotation)) for v in d.vertices]
    return make_diagram([f(a) for a in d.arcs], crossings, vertices, [f(a) for a in d.circles])


def disjoint_union(d1, d2, prefix1='L.', prefix2='R.'):
    """Side-by-side union; ids are prefixed to keep them apart."""
    def tag(d, p):
        crossings = [Crossing(p + c.id, p + c.over, p + c.under_in, p + c.under_out, c.sign)
                     for c in d.crossings]
        vertices = [Vertex(p + v.id, tuple((p + a, fl) for a, fl in v.rotation))
                    for v in d.vertices]
        return [p + a for a in d.arcs], crossings, vertices, [p + a for a in d.circles]
    a1, c1, v1, o1 = tag(d1, prefix1)
    a2, c2, v2, o2 = tag(d2, prefix2)
    return make_diagram(a1 + a2, c1 + c2, v1 + v2, o1 + o2)

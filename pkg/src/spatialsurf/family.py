"""
The distinguishing pairs ``D_n`` / ``D_n'`` and a small diagram corpus.

Both diagrams consist of a base tangle closed up by an outer loop, plus
the same eight trivalent vertices and twelve edges; they have the same
rotation system and differ only in what the two long edges carry:

============  ==================================  ==================================
edge          ``D_n``                             ``D_n'``
============  ==================================  ==================================
``T -> Q``    over the ``S -> R`` edge, knotted   over the ``S -> R`` edge, 4 kinks
              arc (trefoil tangle), 1 kink
``R -> Q``    4 kinks, ``2n`` kinks               knotted arc, 1 kink, ``2n`` kinks
============  ==================================  ==================================

Vertex names follow the drawing (P, A, B, C on the base loop and its
chord, S, R, T on the right, Q on the left).  Every gadget is traversed
right to left, which is also the Y-orientation used for those edges.
Kinks are drawn passing over themselves first; for ``n < 0`` the
``2n`` block uses mirrored (negative) kinks.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .diagram import (IN, OUT, Crossing, DiagramError, Vertex, check,
                      format_diagram, load_diagram, make_diagram, parse_diagram)


@dataclass(frozen=True)
class Tangle:
    """A strand with one open end on each side.

    ``crossings`` may reference any of ``arcs``; ``enter`` is the arc whose
    tail is open and ``leave`` the arc whose head is open.
    """
    arcs: tuple
    crossings: tuple
    enter: str
    leave: str


def parse_tangle(text):
    """Read a tangle: ``arc``/``crossing`` lines as in ``.sgd`` plus
    ``enter <arc>`` and ``leave <arc>`` naming the open ends.

    The names ``trivial`` and ``trefoil`` select the built-in tangles.
    """
    name = text.strip()
    if name in BUILTIN_TANGLES:
        return BUILTIN_TANGLES[name]()
    body, ends = [], {}
    for no, line in enumerate(text.splitlines(), 1):
        toks = line.split('#', 1)[0].split()
        if toks and toks[0] in ('enter', 'leave'):
            if len(toks) != 2 or toks[0] in ends:
                raise DiagramError('line {0}: expected one "{1} <arc>"'.format(no, toks[0]))
            ends[toks[0]] = toks[1]
            body.append('')
        elif toks and toks[0] in ('vertex', 'circle'):
            raise DiagramError('line {0}: tangles hold only arcs and crossings'.format(no))
        else:
            body.append(line)
    if set(ends) != {'enter', 'leave'}:
        raise DiagramError('tangle needs both "enter" and "leave"')
    # close the strand temporarily so the ordinary validator applies
    enter, leave = ends['enter'], ends['leave']
    probe = '\n'.join(body) + '\ncrossing __close over={0} under_in={0} under_out={1} sign=+\n'.format(
        leave, enter)
    try:
        d = parse_diagram(probe)
    except DiagramError as exc:
        raise DiagramError('invalid tangle: {0}'.format(exc)) from None
    crossings = tuple(c for c in d.crossings if c.id != '__close')
    return Tangle(tuple(d.arcs), crossings, enter, leave)


def format_tangle(t):
    lines = ['arc {0}'.format(a) for a in sorted(t.arcs)]
    for c in sorted(t.crossings):
        lines.append('crossing {0} over={1} under_in={2} under_out={3} sign={4}'.format(
            c.id, c.over, c.under_in, c.under_out, '+' if c.sign > 0 else '-'))
    lines += ['enter {0}'.format(t.enter), 'leave {0}'.format(t.leave)]
    return '\n'.join(lines) + '\n'


def load_tangle(source):
    """``source`` is a built-in tangle name or a path to a tangle file."""
    if source in BUILTIN_TANGLES:
        return BUILTIN_TANGLES[source]()
    with open(source) as fh:
        return parse_tangle(fh.read())


def trivial_base():
    """A single unknotted strand."""
    return Tangle(('s',), (), 's', 's')


def kink_chain(count, positive=True):
    """``count`` consecutive curls of one sign along a strand."""
    if count < 0:
        raise ValueError('count must be non-negative')
    if count == 0:
        return trivial_base()
    arcs = tuple('k{0}'.format(i) for i in range(count + 1))
    crossings = []
    for i in range(count):
        a, b = arcs[i], arcs[i + 1]
        if positive:
            # passes over itself first, then under
            crossings.append(Crossing('x{0}'.format(i), a, a, b, 1))
        else:
            crossings.append(Crossing('x{0}'.format(i), b, a, b, -1))
    return Tangle(arcs, tuple(crossings), arcs[0], arcs[-1])


def trefoil_tangle():
    """A knotted arc whose closure is the positive trefoil (three + crossings)."""
    a0, a1, a2, a3 = 't0', 't1', 't2', 't3'
    return Tangle((a0, a1, a2, a3),
                  (Crossing('x0', a2, a0, a1, 1),
                   Crossing('x1', a1, a2, a3, 1),
                   Crossing('x2', a3, a1, a2, 1)),
                  a0, a3)


def tangle_closure(t):
    """Close a tangle into a knot diagram by joining its two ends."""
    ren = {t.leave: t.enter}
    f = lambda a: ren.get(a, a)
    crossings = [Crossing(c.id, f(c.over), f(c.under_in), f(c.under_out), c.sign)
                 for c in t.crossings]
    arcs = [a for a in t.arcs if a != t.leave or t.leave == t.enter]
    circles = [t.enter] if not t.crossings else []
    return check(make_diagram(arcs, crossings, (), circles))


class _Builder:
    """Accumulates arcs and crossings while strands are laid down."""

    def __init__(self):
        self.arcs = []
        self.crossings = []
        self.vertices = []

    def arc(self, name):
        self.arcs.append(name)
        return name

    def splice(self, t, cur, prefix):
        """Continue strand ``cur`` through tangle ``t``; return the new current arc."""
        ren = {t.enter: cur}
        for a in t.arcs:
            if a != t.enter:
                ren[a] = self.arc(prefix + a)
        for c in t.crossings:
            self.crossings.append(Crossing(prefix + c.id, ren[c.over], ren[c.under_in],
                                           ren[c.under_out], c.sign))
        return ren[t.leave]

    def under(self, cur, over, sign, cid, new):
        self.crossings.append(Crossing(cid, over, cur, self.arc(new), sign))
        return new

    def build(self):
        return check(make_diagram(self.arcs, self.crossings, self.vertices))


def _twist_block(n):
    return kink_chain(2 * abs(n), positive=n >= 0)


def _family(n, base, primed):
    b = _Builder()
    # base loop P -> A -> B -> (base) -> P, chord A -> C -> B
    for name in ('e1', 'e2', 'e4', 'e5', 'e8', 'e9', 'e12'):
        b.arc(name)
    e3_end = b.splice(base, b.arc('e3'), 'D.')
    # C -> S passes under the right side of the loop
    e6_end = b.under(b.arc('e6'), 'e2', 1, 'X1', 'e6b')
    # T -> Q; its first arc passes over the S -> R edge
    b.arc('e10')
    if primed:
        e10_end = b.splice(kink_chain(4), 'e10', 'L.')
    else:
        cur = b.splice(trefoil_tangle(), 'e10', 'K.')
        e10_end = b.splice(kink_chain(1), cur, 'J.')
    e7_end = b.under(b.arc('e7'), 'e10', -1, 'X2', 'e7b')
    # R -> Q
    b.arc('e11')
    if primed:
        cur = b.splice(trefoil_tangle(), 'e11', 'K.')
        cur = b.splice(kink_chain(1), cur, 'J.')
    else:
        cur = b.splice(kink_chain(4), 'e11', 'L.')
    e11_end = b.splice(_twist_block(n), cur, 'N.')
    # counterclockwise slots as drawn
    b.vertices = [
        Vertex.from_slots('A', [('e2', OUT), ('e1', IN), ('e4', OUT)]),
        Vertex.from_slots('B', [('e2', IN), ('e5', IN), ('e3', OUT)]),
        Vertex.from_slots('C', [('e6', OUT), ('e4', IN), ('e5', OUT)]),
        Vertex.from_slots('S', [('e9', IN), ('e7', OUT), (e6_end, IN)]),
        Vertex.from_slots('R', [('e8', OUT), ('e11', OUT), (e7_end, IN)]),
        Vertex.from_slots('T', [('e8', IN), ('e10', OUT), ('e9', OUT)]),
        Vertex.from_slots('Q', [(e10_end, IN), (e11_end, IN), ('e12', OUT)]),
        Vertex.from_slots('P', [('e1', OUT), ('e12', IN), (e3_end, IN)]),
    ]
    return b.build()


def make_Dn(n, base=None):
    """The diagram ``D_n`` around ``base`` (default: a trivial strand)."""
    return _family(n, trivial_base() if base is None else base, primed=False)


def make_Dn_prime(n, base=None):
    """The diagram ``D_n'`` around ``base`` (default: a trivial strand)."""
    return _family(n, trivial_base() if base is None else base, primed=True)


BUILTIN_TANGLES = {'trivial': trivial_base, 'trefoil': trefoil_tangle}


def _theta():
    # two vertices side by side joined by a top, middle and bottom edge
    return check(make_diagram(
        ['a', 'b', 'c'], (),
        [Vertex.from_slots('u', [('a', IN), ('b', OUT), ('c', OUT)]),
         Vertex.from_slots('w', [('a', OUT), ('c', IN), ('b', IN)])]))


def _hopf():
    return check(make_diagram(
        ['a', 'b'],
        [Crossing('x0', 'b', 'a', 'a', 1), Crossing('x1', 'a', 'b', 'b', 1)]))


def corpus():
    """The fixed test corpus as an ordered list of ``(name, Diagram)``."""
    return [
        ('unknot', check(make_diagram(circles=['a']))),
        ('kink1', tangle_closure(kink_chain(1))),
        ('kink2', tangle_closure(kink_chain(2))),
        ('kink2neg', tangle_closure(kink_chain(2, positive=False))),
        ('hopf', _hopf()),
        ('trefoil', tangle_closure(trefoil_tangle())),
        ('theta', _theta()),
        ('D1', make_Dn(1)),
        ('Dm1', make_Dn(-1)),
        ('D1p', make_Dn_prime(1)),
        ('Dm1p', make_Dn_prime(-1)),
    ]


DATA_DIR = os.path.join(os.path.dirname(__file__), 'data')


def write_corpus(directory):
    """Write every corpus diagram as ``<name>.sgd``; returns the written paths."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, d in corpus():
        path = os.path.join(directory, name + '.sgd')
        with open(path, 'w') as fh:
            fh.write(format_diagram(d))
        paths.append(path)
    return paths


def load_corpus(directory=DATA_DIR):
    """Read back ``<name>.sgd`` files for every corpus name."""
    return [(name, load_diagram(os.path.join(directory, name + '.sgd')))
            for name, _ in corpus()]

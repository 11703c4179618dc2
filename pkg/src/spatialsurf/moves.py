"""
Reidemeister moves R1-R6 as rewrites of the slot model.

The slot model stores no planar embedding, so each move is matched by
its combinatorial signature: which arcs are cut where, which arc passes
over, the crossing signs and the vertex rotation.  Every rewrite keeps the
coloring relations consistent (the sign rules below are exactly the ones
that make the colorings before and after correspond), and untouched
arcs keep their ids.

Move catalogue (``direction`` / ``variant``):

R1  expand ``over+ over- under+ under-`` (circles: ``+ -``), reduce ``curl kink``
R2  expand ``+ -`` (sign of the first new crossing), reduce ``+ -``
R3  flip ``A B`` (which strand is on top)
R4  expand/reduce ``under over`` (does the first leg pass under or over)
R5  expand/reduce ``over under`` (strand passing over or under the vertex);
    expand moves a crossing from one leg onto the other two, reduce
    moves it back
R6  flip ``ccw cw`` (the edge turns a quarter turn; each undoes the other)

Legs at a vertex are read clockwise; ``eps(slot)`` is ``+1`` for an
incoming slot and ``-1`` for an outgoing one.  Fresh ids look like
``R2e.0`` (kind, first letter of the direction, counter).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .diagram import IN, OUT, Crossing, Vertex, check, make_diagram

KINDS = ('R1', 'R2', 'R3', 'R4', 'R5', 'R6')
SURFACE_MOVES = frozenset({'R2', 'R3', 'R5', 'R6'})
HANDLEBODY_MOVES = frozenset(KINDS)
_DIRECTIONS = {'R1': ('expand', 'reduce'), 'R2': ('expand', 'reduce'), 'R3': ('flip',),
               'R4': ('expand', 'reduce'), 'R5': ('expand', 'reduce'), 'R6': ('flip',)}


class MoveError(ValueError):
    pass


class StaleSiteError(MoveError):
    """The site does not match the diagram it is applied to."""


@dataclass(frozen=True, order=True)
class MoveSite:
    kind: str
    direction: str
    variant: str
    anchors: tuple

    def __str__(self):
        return ' '.join((self.kind, '{0}:{1}'.format(self.direction, self.variant))
                        + tuple(self.anchors))


def parse_site(text):
    """Inverse of ``str(site)``: ``'<kind> <direction>:<variant> <anchor>...'``."""
    toks = text.split()
    if len(toks) < 2 or ':' not in toks[1] or toks[0] not in KINDS:
        raise MoveError('bad move site {0!r}'.format(text))
    direction, variant = toks[1].split(':', 1)
    return MoveSite(toks[0], direction, variant, tuple(toks[2:]))


def _eps(flag):
    return 1 if flag == IN else -1


# ---------------------------------------------------------------------------
# shared bookkeeping

class _Index:
    """Lookups used by the matchers."""

    def __init__(self, d):
        self.d = d
        self.cross = {c.id: c for c in d.crossings}
        self.vert = {v.id: v for v in d.vertices}
        self.head, self.tail = {}, {}
        for c in d.crossings:
            self.head[c.under_in] = ('c', c.id)
            self.tail[c.under_out] = ('c', c.id)
        for v in d.vertices:
            for i, (a, f) in enumerate(v.rotation):
                (self.head if f == IN else self.tail)[a] = ('v', v.id, i)
        self.over = Counter(c.over for c in d.crossings)

    def plain_vertex(self, v):
        """True if no arc occupies two slots of ``v``."""
        return len({a for a, _ in v.rotation}) == 3

    def near_crossing(self, v, i):
        """Crossing cutting leg ``i`` of ``v`` right next to the vertex.

        Returns ``(crossing, far_arc)`` when the slot arc is not an over arc
        anywhere and its other end is an undercrossing, else ``None``.
        """
        a, f = v.rotation[i]
        if self.over[a]:
            return None
        end = (self.tail if f == IN else self.head).get(a)
        if end is None or end[0] != 'c':
            return None
        c = self.cross[end[1]]
        far = c.under_in if f == IN else c.under_out
        if far == a:
            return None
        return c, far


class _Edit:
    """Mutable working copy of a diagram; ``build`` validates the result."""

    def __init__(self, d, prefix):
        self.arcs = set(d.arcs)
        self.circles = set(d.circles)
        self.cross = {c.id: c for c in d.crossings}
        self.vert = {v.id: list(v.rotation) for v in d.vertices}
        self.prefix = prefix
        self.used = set(d.arcs) | set(self.cross) | set(self.vert)
        self.counter = 0

    def fresh(self):
        while True:
            name = '{0}.{1}'.format(self.prefix, self.counter)
            self.counter += 1
            if name not in self.used:
                self.used.add(name)
                return name

    def new_arc(self):
        a = self.fresh()
        self.arcs.add(a)
        return a

    def put(self, cid, over, under_in, under_out, sign):
        self.cross[cid] = Crossing(cid, over, under_in, under_out, sign)

    def rename(self, old, new):
        """Replace every reference to arc ``old`` by ``new`` and drop ``old``."""
        f = lambda a: new if a == old else a
        for cid, c in list(self.cross.items()):
            self.cross[cid] = Crossing(cid, f(c.over), f(c.under_in), f(c.under_out), c.sign)
        for vid, rot in self.vert.items():
            self.vert[vid] = [(f(a), fl) for a, fl in rot]
        self.arcs.discard(old)
        if old in self.circles:
            self.circles.discard(old)
            self.circles.add(new)

    def set_head(self, consumer, arc):
        """Point the head consumer ``consumer`` (from :class:`_Index`) at ``arc``."""
        if consumer[0] == 'c':
            c = self.cross[consumer[1]]
            self.cross[c.id] = Crossing(c.id, c.over, arc, c.under_out, c.sign)
        else:
            rot = self.vert[consumer[1]]
            rot[consumer[2]] = (arc, rot[consumer[2]][1])

    def build(self):
        vertices = [Vertex.from_slots(vid, rot) for vid, rot in self.vert.items()]
        return check(make_diagram(self.arcs, self.cross.values(), vertices, self.circles))


# ---------------------------------------------------------------------------
# R1

def _r1_sites(ix):
    d = ix.d
    out = []
    for a in d.arcs:
        if a in d.circles:
            out += [MoveSite('R1', 'expand', s, (a,)) for s in ('+', '-')]
        else:
            out += [MoveSite('R1', 'expand', v, (a,)) for v in ('over+', 'over-', 'under+', 'under-')]
    for c in d.crossings:
        if c.over == c.under_in == c.under_out:
            out.append(MoveSite('R1', 'reduce', 'curl', (c.id,)))
        elif c.over in (c.under_in, c.under_out) and c.under_in != c.under_out:
            out.append(MoveSite('R1', 'reduce', 'kink', (c.id,)))
    return out


def _r1_apply(d, ix, s):
    e = _Edit(d, 'R1' + s.direction[0])
    if s.direction == 'expand':
        a, = s.anchors
        if a in d.circles:
            e.circles.discard(a)
            e.put(e.fresh(), a, a, a, 1 if s.variant == '+' else -1)
            return e.build()
        n = e.new_arc()
        e.set_head(ix.head[a], n)
        sign = 1 if s.variant.endswith('+') else -1
        e.put(e.fresh(), a if s.variant.startswith('over') else n, a, n, sign)
        return e.build()
    c = ix.cross[s.anchors[0]]
    del e.cross[c.id]
    if s.variant == 'curl':
        e.circles.add(c.over)
    else:
        e.rename(c.under_out, c.under_in)
    return e.build()


# ---------------------------------------------------------------------------
# R2

def _neighbours(d):
    """Ordered pairs of distinct arcs meeting at a common crossing or vertex.

    R2 only pushes one strand under a nearby one; without an embedding
    "nearby" means sharing a crossing or a vertex.
    """
    pairs = set()
    groups = [c.arcs() for c in d.crossings] + [v.arcs() for v in d.vertices]
    for g in groups:
        for a in g:
            for b in g:
                if a != b:
                    pairs.add((a, b))
    return pairs


def _r2_sites(ix):
    d = ix.d
    out = []
    for b, a in sorted(_neighbours(d)):
        out += [MoveSite('R2', 'expand', s, (b, a)) for s in ('+', '-')]
    for x in d.crossings:
        m = x.under_out
        if m == x.under_in or ix.over[m]:
            continue
        end = ix.head.get(m)
        if end is None or end[0] != 'c':
            continue
        y = ix.cross[end[1]]
        if y.id != x.id and y.over == x.over and y.sign == -x.sign and y.under_out != m:
            if y.under_out == x.under_in and y.id < x.id:
                # a two-arc loop: both arcs bound the same bigon, list it once
                continue
            out.append(MoveSite('R2', 'reduce', '+' if x.sign > 0 else '-', (x.id, y.id)))
    return out


def _r2_apply(d, ix, s):
    e = _Edit(d, 'R2' + s.direction[0])
    if s.direction == 'expand':
        b, a = s.anchors
        sign = 1 if s.variant == '+' else -1
        b1 = e.new_arc()
        if b in d.circles:
            e.circles.discard(b)
            b2 = b
        else:
            b2 = e.new_arc()
            e.set_head(ix.head[b], b2)
        e.put(e.fresh(), a, b, b1, sign)
        e.put(e.fresh(), a, b1, b2, -sign)
        return e.build()
    x, y = (ix.cross[c] for c in s.anchors)
    b0, m, b2 = x.under_in, x.under_out, y.under_out
    del e.cross[x.id], e.cross[y.id]
    e.arcs.discard(m)
    if b2 == b0:
        e.circles.add(b0)
    else:
        e.rename(b2, b0)
    return e.build()


# ---------------------------------------------------------------------------
# R3

def _r3_sites(ix):
    d = ix.d
    out = []
    for x in d.crossings:
        b1 = x.under_out
        if b1 == x.under_in or ix.over[b1]:
            continue
        end = ix.head.get(b1)
        if end is None or end[0] != 'c':
            continue
        y = ix.cross[end[1]]
        if y.id == x.id or y.under_out == b1:
            continue
        p, q = x.over, y.over
        if p == q:
            continue
        for c in d.crossings:
            if c.id in (x.id, y.id):
                continue
            # A: q on top, the middle strand through p crosses under q at c
            if c.over == q and ((c.under_in == p and c.sign == y.sign)
                                or (c.under_out == p and c.sign == -y.sign)):
                out.append(MoveSite('R3', 'flip', 'A', (x.id, y.id, c.id)))
            # B: p on top, the middle strand through q crosses under p at c
            if c.over == p and ((c.under_out == q and c.sign == x.sign)
                                or (c.under_in == q and c.sign == -x.sign)):
                out.append(MoveSite('R3', 'flip', 'B', (x.id, y.id, c.id)))
    return out


def _r3_apply(d, ix, s):
    x, y, c = (ix.cross[a] for a in s.anchors)
    e = _Edit(d, 'R3f')
    if s.variant == 'A':
        p, q = x.over, y.over
        p2 = c.under_out if c.under_in == p else c.under_in
        e.put(x.id, q, x.under_in, x.under_out, y.sign)
        e.put(y.id, p2, y.under_in, y.under_out, x.sign)
    else:
        p, q = x.over, y.over
        q2 = c.under_in if c.under_out == q else c.under_out
        e.put(x.id, q2, x.under_in, x.under_out, y.sign)
        e.put(y.id, p, y.under_in, y.under_out, x.sign)
    return e.build()


# ---------------------------------------------------------------------------
# R4: two legs at a vertex swap places, one passing under the other

def _r4_sites(ix):
    out = []
    for v in ix.d.vertices:
        if not ix.plain_vertex(v):
            continue
        rot = v.rotation
        for i in range(3):
            x, y = rot[i][0], rot[(i - 1) % 3][0]
            out += [MoveSite('R4', 'expand', s, (v.id, x, y)) for s in ('under', 'over')]
        slot_arcs = {a for a, _ in rot}
        for k in range(3):
            hit = ix.near_crossing(v, k)
            if hit is None:
                continue
            c, far = hit
            if far in slot_arcs:
                continue
            fn = rot[k][1]
            for variant, j, want in (('under', (k + 1) % 3, 1), ('over', (k - 1) % 3, -1)):
                o, fo = rot[j]
                if c.over != o:
                    continue
                sign = want * _eps(fo) * (1 if fn == IN else -1)
                if c.sign == sign:
                    out.append(MoveSite('R4', 'reduce', variant, (v.id, c.id)))
    return out


def _r4_apply(d, ix, s):
    e = _Edit(d, 'R4' + s.direction[0])
    v = ix.vert[s.anchors[0]]
    rot = e.vert[v.id]
    if s.direction == 'expand':
        x, y = s.anchors[1:]
        i = [a for a, _ in rot].index(x)
        j = (i - 1) % 3
        (ax, fx), (ay, fy) = rot[i], rot[j]
        n = e.new_arc()
        if s.variant == 'under':
            # x passes under y: near colour is far <| eps(y) of y
            under, flag, over, eps = ax, fx, ay, _eps(fy)
            rot[i], rot[j] = (ay, fy), (n, fx)
        else:
            under, flag, over, eps = ay, fy, ax, -_eps(fx)
            rot[i], rot[j] = (n, fy), (ax, fx)
        if flag == IN:
            e.put(e.fresh(), over, under, n, eps)
        else:
            e.put(e.fresh(), over, n, under, -eps)
        return e.build()
    c = ix.cross[s.anchors[1]]
    k = _near_slot(ix, v, c.id)
    n, fn = rot[k]
    far = ix.near_crossing(v, k)[1]
    j = (k + 1) % 3 if s.variant == 'under' else (k - 1) % 3
    rot[j], rot[k] = (far, fn), rot[j]
    del e.cross[c.id]
    e.arcs.discard(n)
    return e.build()


def _near_slot(ix, v, cid):
    for k in range(3):
        hit = ix.near_crossing(v, k)
        if hit is not None and hit[0].id == cid:
            return k
    raise StaleSiteError('crossing {0} is not next to vertex {1}'.format(cid, v.id))


# ---------------------------------------------------------------------------
# R5: a strand slides across a vertex

def _tau(c, flag):
    """``tau`` with ``near = far <|^tau over`` for a crossing cutting a leg."""
    return c.sign if flag == IN else -c.sign


def _cut_leg(e, rot, i, over, tau, cid):
    """Cut leg ``i`` next to the vertex so that ``near = far <|^tau over``."""
    far, flag = rot[i]
    near = e.new_arc()
    if flag == IN:
        e.put(cid, over, far, near, tau)
    else:
        e.put(cid, over, near, far, -tau)
    rot[i] = (near, flag)


def _r5_over_sites(ix, v):
    out = []
    slot_arcs = {a for a, _ in v.rotation}
    cuts = {}
    for k in range(3):
        hit = ix.near_crossing(v, k)
        if hit is None:
            continue
        c, far = hit
        if c.over in slot_arcs or far in slot_arcs or c.over == far:
            continue
        cuts[k] = (c, far)
        out.append(MoveSite('R5', 'expand', 'over', (v.id, c.id)))
    for k1 in range(3):
        for k2 in range(k1 + 1, 3):
            if k1 in cuts and k2 in cuts:
                (c1, f1), (c2, f2) = cuts[k1], cuts[k2]
                if (c1.over == c2.over and c1.over not in (f1, f2)
                        and _tau(c1, v.rotation[k1][1]) == _tau(c2, v.rotation[k2][1])):
                    out.append(MoveSite('R5', 'reduce', 'over', (v.id, c1.id, c2.id)))
    return out


def _r5_under_sites(ix, v):
    out = []
    rot = v.rotation
    slot_of = {a: k for k, (a, _) in enumerate(rot)}
    for c in ix.d.crossings:
        if c.over not in slot_of or c.under_in in slot_of or c.under_out in slot_of:
            continue
        out.append(MoveSite('R5', 'expand', 'under', (v.id, c.id)))
        t1 = c.under_out
        if t1 == c.under_in or ix.over[t1]:
            continue
        end = ix.head.get(t1)
        if end is None or end[0] != 'c':
            continue
        c2 = ix.cross[end[1]]
        if c2.id == c.id or c2.over not in slot_of or c2.under_out in slot_of or c2.under_out == t1:
            continue
        a, b = slot_of[c.over], slot_of[c2.over]
        ea, eb = _eps(rot[a][1]), _eps(rot[b][1])
        if b == (a - 1) % 3 and c.sign == ea and c2.sign == eb:
            out.append(MoveSite('R5', 'reduce', 'under', (v.id, c.id, c2.id)))
        elif b == (a + 1) % 3 and c.sign == -ea and c2.sign == -eb:
            out.append(MoveSite('R5', 'reduce', 'under', (v.id, c.id, c2.id)))
    return out


def _r5_sites(ix):
    out = []
    for v in ix.d.vertices:
        if ix.plain_vertex(v):
            out += _r5_over_sites(ix, v) + _r5_under_sites(ix, v)
    return out


def _r5_apply(d, ix, s):
    e = _Edit(d, 'R5' + s.direction[0])
    v = ix.vert[s.anchors[0]]
    rot = e.vert[v.id]
    cs = [ix.cross[c] for c in s.anchors[1:]]
    if s.variant == 'over':
        ks = [_near_slot(ix, v, c.id) for c in cs]
        t = cs[0].over
        tau = _tau(cs[0], rot[ks[0]][1])
        for c, k in zip(cs, ks):
            near, flag = rot[k]
            rot[k] = (ix.near_crossing(v, k)[1], flag)
            del e.cross[c.id]
            e.arcs.discard(near)
        rest = [k for k in range(3) if k not in ks]
        ids = [cs[0].id] + [e.fresh() for _ in rest[1:]]
        for k, cid in zip(rest, ids):
            _cut_leg(e, rot, k, t, -tau, cid)
        return e.build()
    slot_of = {a: k for k, (a, _) in enumerate(rot)}
    c = cs[0]
    if s.direction == 'expand':
        z = slot_of[c.over]
        if c.sign == -_eps(rot[z][1]):
            first, second, sgn = (z - 1) % 3, (z + 1) % 3, 1
        else:
            first, second, sgn = (z + 1) % 3, (z - 1) % 3, -1
        t1 = e.new_arc()
        e.put(c.id, rot[first][0], c.under_in, t1, sgn * _eps(rot[first][1]))
        e.put(e.fresh(), rot[second][0], t1, c.under_out, sgn * _eps(rot[second][1]))
        return e.build()
    c2 = cs[1]
    a, b = slot_of[c.over], slot_of[c2.over]
    z = 3 - a - b
    sgn = -1 if b == (a - 1) % 3 else 1
    del e.cross[c2.id]
    e.arcs.discard(c.under_out)
    e.put(c.id, rot[z][0], c.under_in, c2.under_out, sgn * _eps(rot[z][1]))
    return e.build()


# ---------------------------------------------------------------------------
# R6: IH move on a crossing-free edge between two vertices

def _r6_sites(ix):
    out = []
    for a in ix.d.arcs:
        h, t = ix.head.get(a), ix.tail.get(a)
        if (h is None or t is None or h[0] != 'v' or t[0] != 'v' or h[1] == t[1]
                or ix.over[a]):
            continue
        out += [MoveSite('R6', 'flip', turn, (a,)) for turn in ('ccw', 'cw')]
    return out


def _r6_apply(d, ix, s):
    a, = s.anchors
    u, w = ix.tail[a][1], ix.head[a][1]
    e = _Edit(d, 'R6f')

    def from_e(vid):
        rot = list(ix.vert[vid].rotation)
        k = rot.index((a, OUT if vid == u else IN))
        return rot[k + 1:] + rot[:k]

    (sa, sb), (sc, sd) = from_e(u), from_e(w)
    for flag_u in (OUT, IN):
        flag_w = IN if flag_u == OUT else OUT
        if s.variant == 'ccw':
            ru, rw = [(a, flag_u), sb, sc], [(a, flag_w), sd, sa]
        else:
            ru, rw = [(a, flag_u), sd, sa], [(a, flag_w), sb, sc]
        if all(len({f for _, f in r}) == 2 for r in (ru, rw)):
            break
    e.vert[u], e.vert[w] = ru, rw
    return e.build()


# ---------------------------------------------------------------------------
# public interface

_SITES = {'R1': _r1_sites, 'R2': _r2_sites, 'R3': _r3_sites,
          'R4': _r4_sites, 'R5': _r5_sites, 'R6': _r6_sites}
_APPLY = {'R1': _r1_apply, 'R2': _r2_apply, 'R3': _r3_apply,
          'R4': _r4_apply, 'R5': _r5_apply, 'R6': _r6_apply}


def find_sites(d, kind, direction=None):
    """All sites of move ``kind`` in ``d`` (optionally one direction), sorted."""
    if kind not in _SITES:
        raise MoveError('unknown move kind {0!r}'.format(kind))
    sites = _SITES[kind](_Index(d))
    if direction is not None:
        sites = [s for s in sites if s.direction == direction]
    return sorted(set(sites))


def apply_move(d, site):
    """Rewrite ``d`` at ``site``; raises :class:`StaleSiteError` if it does not match."""
    if site not in find_sites(d, site.kind, site.direction):
        raise StaleSiteError('site {0} does not match the diagram'.format(site))
    return _APPLY[site.kind](d, _Index(d), site)


def random_walk(d, allowed, steps, seed):
    """Apply ``steps`` random moves drawn from the kinds in ``allowed``.

    Each step picks a kind, then a direction, then a site, uniformly
    among those with at least one site, using ``random.Random(seed)``.
    Returns ``(diagram, log)`` where ``log`` holds one ``str(site)`` per
    step; the walk stops early if no allowed move applies.
    """
    allowed = sorted(set(allowed))
    bad = [k for k in allowed if k not in KINDS]
    if bad:
        raise MoveError('unknown move kind(s): {0}'.format(', '.join(bad)))
    rng = random.Random(seed)
    log = []
    for _ in range(steps):
        ix = _Index(d)
        options = {}
        for kind in allowed:
            for s in sorted(set(_SITES[kind](ix))):
                options.setdefault(kind, {}).setdefault(s.direction, []).append(s)
        if not options:
            break
        kind = rng.choice(sorted(options))
        direction = rng.choice(sorted(options[kind]))
        site = rng.choice(options[kind][direction])
        d = _APPLY[kind](d, ix, site)
        log.append(str(site))
    return d, log


def format_log(log):
    return ''.join(line + '\n' for line in log)

"""
Command-line interface: ``spatialsurf <group> <command> ...``.

Every command builds a :class:`RunReport`.  Plain output prints the
result lines only; ``--json`` prints the whole report as one object.
Exit status is 0 on success, 1 when a requested check fails
(``algebra check``, ``--oracle``, ``--expect``) and 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field

from . import algebra as A
from . import coloring as C
from . import diagram as D
from . import family as F
from . import moves as M
from . import seifert as S


class CliError(Exception):
    """Bad input; reported on stderr with exit status 2."""


@dataclass
class RunReport:
    command: list
    seed: int
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    ok: bool = True
    elapsed: float = 0.0

    def add_input(self, path):
        with open(path, 'rb') as fh:
            self.inputs[path] = hashlib.sha256(fh.read()).hexdigest()

    def emit(self, key, value, line=None):
        self.results[key] = value
        self.lines.append(str(value) if line is None else line)

    def as_dict(self):
        return {'command': self.command, 'seed': self.seed, 'inputs': self.inputs,
                'results': self.results, 'ok': self.ok, 'elapsed': round(self.elapsed, 6)}


def _read(report, path, loader):
    try:
        report.add_input(path)
        return loader(path)
    except OSError as exc:
        raise CliError('{0}: {1}'.format(path, exc.strerror or exc)) from None
    except (A.AlgebraError, D.DiagramError, S.MatrixError) as exc:
        raise CliError('{0}: {1}'.format(path, exc)) from None


def _write(path, text):
    try:
        with open(path, 'w') as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError('{0}: {1}'.format(path, exc.strerror or exc)) from None


# algebra

def _group_table(report, source):
    """``Z<k>``, ``S<k>`` or a file holding a Cayley table in matrix format."""
    m = re.fullmatch(r'([ZS])(\d+)', source)
    if m:
        k = int(m.group(2))
        if k < 1:
            raise CliError('group order must be positive')
        return A.cyclic_group_table(k) if m.group(1) == 'Z' else A.symmetric_group(k)[0]
    table = _read(report, source, S.load_matrix).tolist()
    if not table:
        raise CliError('{0}: empty group table'.format(source))
    return table


def _make_algebra(report, kind, args):
    need = {'dihedral': 1, 'cyclic': 1, 'product': 2, 'mcq': 1, 'mgr': 1}
    if kind not in need:
        raise CliError('unknown algebra kind {0!r}'.format(kind))
    if len(args) != need[kind]:
        raise CliError('algebra make {0} takes {1} argument(s)'.format(kind, need[kind]))
    try:
        if kind in ('dihedral', 'cyclic'):
            n = int(args[0])
            return A.dihedral_quandle(n) if kind == 'dihedral' else A.cyclic_rack(n)
        if kind == 'product':
            r1, r2 = (_read(report, f, A.load_algebra) for f in args)
            return A.product_rack(r1, r2)
        if kind == 'mcq':
            return A.conjugation_mcq(_group_table(report, args[0]))
        return A.mgr_from_rack(_read(report, args[0], A.load_algebra))
    except ValueError as exc:
        raise CliError(str(exc)) from None


def cmd_algebra(ns, report):
    if ns.action == 'make':
        alg = _make_algebra(report, ns.kind, ns.args)
        text = A.format_algebra(alg)
        if ns.output:
            _write(ns.output, text)
            report.emit('size', alg.size, 'size={0}'.format(alg.size))
            if isinstance(alg, A.FiniteMGR):
                report.emit('groups', len(alg.groups), 'groups={0}'.format(len(alg.groups)))
        else:
            report.results['algebra'] = text
            report.lines.extend(text.splitlines())
        return
    alg = _read(report, ns.file, A.load_algebra)
    if isinstance(alg, A.FiniteMGR):
        checks = [('mgr', A.check_mgr_axioms(alg), True)]
    else:
        checks = [('rack', A.check_rack_axioms(alg), True),
                  ('quandle', A.check_quandle(alg), False)]
    for name, rep, required in checks:
        report.results[name] = {'passed': rep.passed,
                                'violations': [[n, list(w)] for n, w in rep.violations]}
        report.lines.append('{0}: {1}'.format(name, rep))
        if required and not rep.passed:
            report.ok = False


# color

def cmd_color(ns, report):
    d = _read(report, ns.diagram, D.load_diagram)
    alg = _read(report, ns.algebra, A.load_algebra)
    if d.vertices and not isinstance(alg, A.FiniteMGR):
        raise CliError('diagram has vertices; the algebra must be an MGR')
    count = C.count_colorings(d, alg, jobs=ns.jobs)
    report.emit('count', count)
    if ns.oracle:
        try:
            brute = C.count_colorings_bruteforce(d, alg)
        except C.ColoringError as exc:
            raise CliError('oracle: {0}'.format(exc)) from None
        agree = brute == count
        report.emit('oracle', brute, 'oracle={0} agree={1}'.format(brute, str(agree).lower()))
        report.ok &= agree
    if ns.expect is not None:
        report.results['expect'] = ns.expect
        report.ok &= count == ns.expect
    if ns.enumerate:
        cols, truncated = C.enumerate_colorings(d, alg, ns.enumerate)
        report.results['colorings'] = cols
        report.results['truncated'] = truncated
        for c in cols:
            report.lines.append(' '.join('{0}={1}'.format(a, c[a]) for a in d.arcs))
        if truncated:
            report.lines.append('truncated=true')


# moves

def cmd_moves(ns, report):
    d = _read(report, ns.diagram, D.load_diagram)
    allowed = M.SURFACE_MOVES if ns.surface else M.HANDLEBODY_MOVES
    if ns.sites:
        kinds = sorted(allowed) if ns.sites == 'all' else [ns.sites]
        sites = []
        for kind in kinds:
            if kind not in allowed:
                raise CliError('move {0} is not allowed here'.format(kind))
            sites += [str(s) for s in M.find_sites(d, kind)]
        report.results['sites'] = sites
        report.lines.extend(sites)
        return
    if ns.walk:
        kinds, steps = ns.walk[0], ns.walk[1]
        try:
            steps = int(steps)
            seed = int(ns.walk[2]) if len(ns.walk) > 2 else ns.seed
        except ValueError:
            raise CliError('--walk STEPS and SEED must be integers') from None
        kinds = [k for k in kinds.split(',') if k]
        illegal = [k for k in kinds if k not in allowed]
        if illegal:
            raise CliError('move(s) {0} not allowed{1}'.format(
                ', '.join(illegal), ' in surface mode' if ns.surface else ''))
        try:
            d, log = M.random_walk(d, kinds, steps, seed)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        report.results['walk_seed'] = seed
    else:
        try:
            site = M.parse_site(ns.apply)
            if site.kind not in allowed:
                raise CliError('move {0} not allowed in surface mode'.format(site.kind))
            d = M.apply_move(d, site)
        except M.MoveError as exc:
            raise CliError(str(exc)) from None
        log = [str(site)]
    report.results['log'] = log
    report.lines.extend(log)
    report.emit('steps', len(log), 'steps={0}'.format(len(log)))
    text = D.format_diagram(d)
    if ns.output:
        _write(ns.output, text)
    else:
        report.results['diagram'] = text
        report.lines.extend(text.splitlines())


# seifert

def _matrix(report, source):
    if source == 'empty':
        return S.IntMatrix([])
    return _read(report, source, S.load_matrix)


def _profile_line(p):
    return ' '.join(map(str, p))


def cmd_seifert(ns, report):
    if ns.action == 'profile':
        p = S.gcd_profile(_matrix(report, ns.file))
        report.emit('profile', list(p), _profile_line(p))
    elif ns.action == 'family':
        m = S.build_Vk(_matrix(report, ns.v), ns.k)
        report.results['matrix'] = m.tolist()
        report.lines.extend(S.format_matrix(m).splitlines())
    elif ns.action == 'distinguish':
        m1, m2 = _matrix(report, ns.f1), _matrix(report, ns.f2)
        if m1.n != m2.n:
            raise CliError('matrices must have equal size')
        p1, p2 = S.gcd_profile(m1), S.gcd_profile(m2)
        report.results['profiles'] = [list(p1), list(p2)]
        report.emit('distinguish', p1 != p2, str(p1 != p2).lower())
    elif ns.action == 'transform':
        m, p = _matrix(report, ns.file), _matrix(report, ns.p)
        try:
            out = S.congruent_transform(m, p)
        except S.MatrixError as exc:
            raise CliError(str(exc)) from None
        report.results['matrix'] = out.tolist()
        report.lines.extend(S.format_matrix(out).splitlines())
    else:
        # profile invariance under seeded unimodular transforms
        m = _matrix(report, ns.file)
        if m.n == 0:
            raise CliError('matrix is empty')
        base = S.gcd_profile(m)
        rng = random.Random(ns.seed)
        bad = 0
        for _ in range(ns.trials):
            p = S.random_unimodular(m.n, ns.steps, rng.getrandbits(32))
            bad += S.gcd_profile(S.congruent_transform(m, p)) != base
        report.emit('profile', list(base), _profile_line(base))
        report.emit('trials', ns.trials, 'trials={0} changed={1}'.format(ns.trials, bad))
        report.results['changed'] = bad
        report.ok &= bad == 0


# family

def _default_mgr():
    return A.mgr_from_rack(A.product_rack(A.dihedral_quandle(3), A.cyclic_rack(2)))


def _base(report, source):
    if source in F.BUILTIN_TANGLES:
        return F.BUILTIN_TANGLES[source]()
    return _read(report, source, F.load_tangle)


def cmd_family(ns, report):
    if ns.action == 'gen':
        make = F.make_Dn if ns.which == 'Dn' else F.make_Dn_prime
        d = make(ns.n, _base(report, ns.base))
        text = D.format_diagram(d)
        if ns.output:
            _write(ns.output, text)
            report.emit('arcs', len(d.arcs), 'arcs={0} crossings={1} vertices={2}'.format(
                len(d.arcs), len(d.crossings), len(d.vertices)))
        else:
            report.results['diagram'] = text
            report.lines.extend(text.splitlines())
    elif ns.action == 'corpus':
        paths = F.write_corpus(ns.output)
        report.results['written'] = paths
        report.lines.extend(paths)
    else:
        alg = _read(report, ns.algebra, A.load_algebra) if ns.algebra else _default_mgr()
        if not isinstance(alg, A.FiniteMGR):
            raise CliError('the ratio needs an MGR algebra')
        base = _base(report, ns.base)
        rows = []
        for n in range(ns.lo, ns.hi + 1):
            a = C.count_colorings(F.make_Dn(n, base), alg, jobs=ns.jobs)
            b = C.count_colorings(F.make_Dn_prime(n, base), alg, jobs=ns.jobs)
            ratio = '{0:g}'.format(b / a) if a else 'undefined'
            rows.append({'n': n, 'Dn': a, 'Dnp': b, 'ratio': ratio})
            report.lines.append('n={0} Dn={1} Dnp={2} ratio={3}'.format(n, a, b, ratio))
            if ns.expect is not None:
                report.ok &= a > 0 and b == ns.expect * a
        report.results['rows'] = rows


# parser

def _global(p, suppress):
    d = argparse.SUPPRESS
    p.add_argument('--seed', type=int, default=d if suppress else 0,
                   help='seed for all randomness (default 0)')
    p.add_argument('--json', action='store_true', default=d if suppress else False,
                   help='print the report as one JSON object')
    p.add_argument('--jobs', type=int, default=d if suppress else 1,
                   help='worker processes for the coloring solver')


def build_parser():
    top = argparse.ArgumentParser(prog='spatialsurf',
                                  description='Colorings, moves and Seifert invariants '
                                              'of spatial surfaces and handlebody-knots.')
    _global(top, False)
    groups = top.add_subparsers(dest='group', required=True)

    def sub(parent, name, **kw):
        p = parent.add_parser(name, **kw)
        _global(p, True)
        return p

    alg = groups.add_parser('algebra', help='build and check finite algebras')
    acts = alg.add_subparsers(dest='action', required=True)
    p = sub(acts, 'make', help='dihedral n | cyclic n | product f1 f2 | mcq G | mgr f')
    p.add_argument('kind')
    p.add_argument('args', nargs='+')
    p.add_argument('-o', '--output')
    p = sub(acts, 'check', help='exhaustive axiom check of a .alg file')
    p.add_argument('file')

    p = sub(groups, 'color', help='count colorings of a diagram')
    p.add_argument('diagram')
    p.add_argument('algebra')
    p.add_argument('--enumerate', type=int, metavar='N', help='list the first N colorings')
    p.add_argument('--oracle', action='store_true', help='cross-check by brute force')
    p.add_argument('--expect', type=int, help='fail unless the count equals this')

    p = sub(groups, 'moves', help='apply moves or random walks')
    p.add_argument('diagram')
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument('--walk', nargs='+', metavar='ARG',
                     help='KINDS STEPS [SEED], KINDS comma separated (SEED defaults to --seed)')
    how.add_argument('--apply', metavar='SITE', help='one site, as printed by --sites')
    how.add_argument('--sites', nargs='?', const='all', metavar='KIND',
                     help='list the sites of one kind (default all allowed kinds)')
    p.add_argument('--surface', action='store_true', help='allow only R2, R3, R5, R6')
    p.add_argument('-o', '--output')

    sf = groups.add_parser('seifert', help='minor-gcd invariants of integer matrices')
    acts = sf.add_subparsers(dest='action', required=True)
    p = sub(acts, 'profile')
    p.add_argument('file')
    p = sub(acts, 'family', help='the block matrix V_k around v (v may be "empty")')
    p.add_argument('v')
    p.add_argument('k', type=int)
    p = sub(acts, 'distinguish')
    p.add_argument('f1')
    p.add_argument('f2')
    p = sub(acts, 'transform', help='P^T M P for unimodular P')
    p.add_argument('file')
    p.add_argument('p')
    p = sub(acts, 'invariance', help='profile under seeded random unimodular transforms')
    p.add_argument('file')
    p.add_argument('--trials', type=int, default=200)
    p.add_argument('--steps', type=int, default=12)

    fam = groups.add_parser('family', help='the D_n / D_n\' pairs and the corpus')
    acts = fam.add_subparsers(dest='action', required=True)
    p = sub(acts, 'gen')
    p.add_argument('which', choices=['Dn', 'Dnp'])
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--base', default='trivial', help='tangle file, "trivial" or "trefoil"')
    p.add_argument('-o', '--output')
    p = sub(acts, 'corpus')
    p.add_argument('-o', '--output', required=True)
    p = sub(acts, 'ratio', help="|Col(D_n')| / |Col(D_n)| for a range of n")
    p.add_argument('--algebra', help='MGR .alg file (default: built from R3 x C2)')
    p.add_argument('--base', default='trivial')
    p.add_argument('--from', dest='lo', type=int, default=-2)
    p.add_argument('--to', dest='hi', type=int, default=2)
    p.add_argument('--expect', type=int, help='fail unless every ratio equals this')
    return top


_COMMANDS = {'algebra': cmd_algebra, 'color': cmd_color, 'moves': cmd_moves,
             'seifert': cmd_seifert, 'family': cmd_family}


def run(argv):
    """Parse ``argv`` and run it; returns ``(report, exit_status, as_json)``."""
    ns = build_parser().parse_args(argv)
    report = RunReport(command=['spatialsurf'] + list(argv), seed=ns.seed)
    start = time.perf_counter()
    try:
        if ns.jobs < 1:
            raise CliError('--jobs must be at least 1')
        if ns.group == 'moves' and ns.walk and len(ns.walk) not in (2, 3):
            raise CliError('--walk takes KINDS STEPS [SEED]')
        _COMMANDS[ns.group](ns, report)
    except CliError as exc:
        report.ok = False
        report.results['error'] = str(exc)
        status = 2
    else:
        status = 0 if report.ok else 1
    report.elapsed = time.perf_counter() - start
    return report, status, ns.json


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    report, status, as_json = run(argv)
    if as_json:
        print(json.dumps(report.as_dict(), sort_keys=True))
    else:
        if report.lines:
            print('\n'.join(report.lines))
        if 'error' in report.results:
            print('error: {0}'.format(report.results['error']), file=sys.stderr)
    return status


if __name__ == '__main__':
    sys.exit(main())

import filecmp
import os

import pytest

from spatialsurf.algebra import cyclic_rack, dihedral_quandle, mgr_from_rack, product_rack
from spatialsurf.coloring import count_colorings, enumerate_colorings
from spatialsurf.diagram import (DiagramError, edges, format_diagram, surface_stats,
                                 validate, y_condition)
from spatialsurf.family import (DATA_DIR, Tangle, corpus, format_tangle, kink_chain,
                                load_corpus, load_tangle, make_Dn, make_Dn_prime,
                                parse_tangle, tangle_closure, trefoil_tangle,
                                trivial_base, write_corpus)
from spatialsurf.moves import apply_move, find_sites

X = mgr_from_rack(product_rack(dihedral_quandle(3), cyclic_rack(2)))
BASES = {'trivial': trivial_base(), 'trefoil': trefoil_tangle()}


class TestTangles:
    def test_trivial(self):
        t = trivial_base()
        assert len(t.arcs) == 1 and not t.crossings
        d = tangle_closure(t)
        assert d.circles == {t.enter}
        assert count_colorings(d, dihedral_quandle(3)) == 3

    def test_kink_chain(self):
        assert kink_chain(0) == trivial_base()
        t = kink_chain(2)
        assert len(t.crossings) == 2 and len(t.arcs) == 3
        assert {c.sign for c in kink_chain(3, positive=False).crossings} == {-1}
        with pytest.raises(ValueError):
            kink_chain(-1)

    def test_kinks_reduce_to_circle(self):
        d = tangle_closure(kink_chain(2))
        for _ in range(2):
            d = apply_move(d, find_sites(d, 'R1', 'reduce')[0])
            assert validate(d) == []
        assert not d.crossings and len(d.circles) == 1

    def test_trefoil_closure(self):
        d = tangle_closure(trefoil_tangle())
        assert len(d.crossings) == 3 and len(d.arcs) == 3
        assert count_colorings(d, dihedral_quandle(3)) == 9

    @pytest.mark.parametrize('t', [trivial_base(), kink_chain(3), trefoil_tangle(),
                                   kink_chain(2, positive=False)])
    def test_format_round_trip(self, t):
        back = parse_tangle(format_tangle(t))
        assert back == Tangle(tuple(sorted(t.arcs)), tuple(sorted(t.crossings)),
                              t.enter, t.leave)

    def test_builtin_names(self, tmp_path):
        assert load_tangle('trefoil') == trefoil_tangle()
        p = tmp_path / 'k.tgl'
        p.write_text(format_tangle(kink_chain(1)))
        assert load_tangle(str(p)).crossings == kink_chain(1).crossings

    @pytest.mark.parametrize('text', [
        'arc a\nenter a\n',
        'arc a\narc b\nenter a\nleave b\n',
        'arc a\nvertex v kind=merge left=a right=a stem=a\nenter a\nleave a\n',
        'arc a\nenter a\nenter a\nleave a\n',
    ])
    def test_bad_tangles(self, text):
        with pytest.raises(DiagramError):
            parse_tangle(text)


class TestFamily:
    @pytest.mark.parametrize('make', [make_Dn, make_Dn_prime])
    def test_structure(self, make):
        d = make(0)
        assert validate(d) == [] and y_condition(d)
        # eight trivalent junctions and twelve edges as drawn
        assert len(d.vertices) == 8
        assert sum(1 for e in edges(d) if e[0] not in d.circles) == 12

    @pytest.mark.parametrize('base', sorted(BASES))
    @pytest.mark.parametrize('n', range(-2, 3))
    def test_stats_agree(self, base, n):
        a = surface_stats(make_Dn(n, BASES[base]))
        b = surface_stats(make_Dn_prime(n, BASES[base]))
        assert a == b
        if base == 'trivial':
            assert (a.components, a.euler, a.boundary, a.genus) == (1, -4, 2, 2)

    @pytest.mark.parametrize('base', sorted(BASES))
    @pytest.mark.parametrize('n', range(-2, 3))
    def test_ratio(self, base, n):
        a = count_colorings(make_Dn(n, BASES[base]), X)
        b = count_colorings(make_Dn_prime(n, BASES[base]), X)
        assert b == 2 * a
        assert a > 0 and a % 4 == 0 and b % 4 == 0

    def test_twist_block_sizes(self):
        base = len(make_Dn(0).crossings)
        for n in (-2, -1, 1, 2):
            d = make_Dn(n)
            assert len(d.crossings) == base + 2 * abs(n)
            signs = {c.sign for c in d.crossings if c.id.startswith('N.')}
            assert signs == {1 if n > 0 else -1}

    @pytest.mark.parametrize('make', [make_Dn, make_Dn_prime])
    @pytest.mark.parametrize('n', [-1, 0, 2])
    def test_z2_coordinates_forced(self, make, n):
        # element index is 2*r + z with z the Z2 coordinate
        d = make(n)
        cols, truncated = enumerate_colorings(d, X, 10 ** 4)
        assert not truncated and cols
        for c in cols:
            assert c['e2'] % 2 == 0 and c['e10'] % 2 == 0


class TestCorpus:
    def test_contents(self, corpus_map):
        assert list(corpus_map) == ['unknot', 'kink1', 'kink2', 'kink2neg', 'hopf', 'trefoil',
                                    'theta', 'D1', 'Dm1', 'D1p', 'Dm1p']
        assert len(corpus_map['trefoil'].crossings) == 3
        theta = corpus_map['theta']
        assert len(theta.vertices) == 2 and len(edges(theta)) == 3
        assert all(validate(d) == [] for d in corpus_map.values())

    def test_deterministic(self):
        assert [format_diagram(d) for _, d in corpus()] == \
            [format_diagram(d) for _, d in corpus()]

    def test_shipped_files_bit_exact(self, tmp_path):
        paths = write_corpus(str(tmp_path))
        for p in paths:
            shipped = os.path.join(DATA_DIR, os.path.basename(p))
            assert filecmp.cmp(p, shipped, shallow=False), p

    def test_load(self):
        assert load_corpus() == corpus()

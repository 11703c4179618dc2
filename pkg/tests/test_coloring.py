import itertools

import pytest
from hypothesis import given, settings, strategies as st

from spatialsurf.algebra import (conjugation_mcq, cyclic_group_table,
                                 cyclic_rack, dihedral_quandle, mgr_from_rack, product_rack)
from spatialsurf.coloring import (ColoringError, all_assignments, count_colorings,
                                  count_colorings_bruteforce, count_colorings_search,
                                  enumerate_colorings, is_coloring)
from spatialsurf.diagram import disjoint_union, enumerate_y_orientations, parse_diagram
from spatialsurf.family import corpus, kink_chain, tangle_closure

TREFOIL = parse_diagram("""\
arc a
arc b
arc c
crossing x1 over=c under_in=a under_out=b sign=+
crossing x2 over=a under_in=b under_out=c sign=+
crossing x3 over=b under_in=c under_out=a sign=+
""")
CIRCLE = parse_diagram('circle c\n')
R3 = dihedral_quandle(3)


def hand_oracle(d, alg, col):
    # the crossing and vertex equations written out from the definitions
    op, ok = alg.op, True
    for x in d.crossings:
        i, j, o = col[x.under_in], col[x.under_out], col[x.over]
        ok &= (op[i, o] == j) if x.sign > 0 else (op[j, o] == i)
    for v in d.vertices:
        # product of the slots read clockwise, outgoing arcs inverted, is e
        elems = [col[a] if fl == 'in' else alg.inverse[col[a]] for a, fl in reversed(v.rotation)]
        if len({alg.group_of[g] for g in elems}) != 1:
            return False
        p = alg.mul[alg.mul[elems[0], elems[1]], elems[2]]
        ok &= p == alg.identity[alg.group_of[elems[0]]]
    return bool(ok)


class TestIsColoring:
    def test_circle(self):
        assert all(is_coloring(CIRCLE, R3, {'c': x}) for x in range(3))

    def test_trefoil(self):
        assert is_coloring(TREFOIL, R3, {'a': 1, 'b': 1, 'c': 1})
        assert is_coloring(TREFOIL, R3, {'a': 0, 'b': 1, 'c': 2})
        assert not is_coloring(TREFOIL, R3, {'a': 0, 'b': 0, 'c': 1})

    def test_missing_arc(self):
        with pytest.raises(ColoringError):
            is_coloring(TREFOIL, R3, {'a': 0})

    def test_vertices_need_mgr(self, corpus_map):
        with pytest.raises(ColoringError):
            count_colorings(corpus_map['theta'], R3)

    @pytest.mark.parametrize('name', ['theta', 'hopf', 'kink1', 'trefoil'])
    def test_matches_hand_oracle(self, name, corpus_map, mgrs):
        d = corpus_map[name]
        for alg in (mgrs['R3xZ2'], mgrs['S3']):
            if alg.size ** len(d.arcs) > 50000:
                continue
            for col in all_assignments(d, alg):
                assert is_coloring(d, alg, col) == hand_oracle(d, alg, col)


class TestCount:
    def test_values(self):
        assert count_colorings(TREFOIL, R3) == 9
        assert count_colorings(CIRCLE, R3) == 3
        assert count_colorings(CIRCLE, mgr_from_rack(product_rack(R3, cyclic_rack(2)))) == 12

    def test_theta_z2(self, corpus_map):
        x = conjugation_mcq(cyclic_group_table(2))
        d = corpus_map['theta']
        assert count_colorings(d, x) == count_colorings_bruteforce(d, x) == 4

    def test_small_corpus_all_solvers(self, corpus_map, mgrs):
        algs = list(mgrs.values()) + [R3, cyclic_rack(3), product_rack(R3, cyclic_rack(2))]
        for name, d in corpus_map.items():
            if len(d.arcs) > 6:
                continue
            for alg in algs:
                if d.vertices and not hasattr(alg, 'mul'):
                    continue
                brute = count_colorings_bruteforce(d, alg)
                assert count_colorings(d, alg) == brute, (name, alg)
                assert count_colorings_search(d, alg) == brute, (name, alg)

    def test_large_diagrams_solvers_agree(self, corpus_map, mgrs):
        for name in ('D1', 'Dm1p'):
            d = corpus_map[name]
            for alg in (mgrs['Z3'], mgrs['R3xZ2']):
                assert count_colorings(d, alg) == count_colorings_search(d, alg)

    def test_jobs_do_not_change_result(self, corpus_map, mgrs):
        d = corpus_map['D1p']
        x = mgrs['R3C2xZ2']
        base = count_colorings(d, x)
        assert base == 96
        assert count_colorings(d, x, jobs=3) == base
        assert count_colorings_search(d, x, jobs=2) == base

    def test_disjoint_union_multiplies(self, corpus_map, mgrs):
        x = mgrs['R3xZ2']
        a, b = corpus_map['theta'], corpus_map['trefoil']
        assert count_colorings(disjoint_union(a, b), x) == \
            count_colorings(a, x) * count_colorings(b, x)

    def test_bruteforce_bound(self, corpus_map, mgrs):
        with pytest.raises(ColoringError):
            count_colorings_bruteforce(corpus_map['D1'], mgrs['R3C2xZ2'])

    def test_framing_sensitivity(self, mgrs):
        # a plain circle and a one-kink circle differ for the C2-based MGR
        x = mgrs['C2xZ2']
        kink = tangle_closure(kink_chain(1))
        assert count_colorings(CIRCLE, x) == 4
        assert count_colorings(kink, x) == 2


class TestEnumerate:
    def test_circle(self):
        cols, trunc = enumerate_colorings(CIRCLE, R3, 10)
        assert [c['c'] for c in cols] == [0, 1, 2] and not trunc

    def test_trefoil(self):
        cols, trunc = enumerate_colorings(TREFOIL, R3, 100)
        assert len(cols) == 9 and not trunc
        assert cols[0] == {'a': 0, 'b': 0, 'c': 0}
        keys = [tuple(c[a] for a in TREFOIL.arcs) for c in cols]
        assert keys == sorted(keys)
        brute = [c for c in all_assignments(TREFOIL, R3) if is_coloring(TREFOIL, R3, c)]
        assert cols == brute

    def test_truncation(self):
        cols, trunc = enumerate_colorings(TREFOIL, R3, 2)
        assert len(cols) == 2 and trunc

    def test_theta_lexicographic(self, corpus_map, mgrs):
        d, x = corpus_map['theta'], mgrs['S3']
        cols, trunc = enumerate_colorings(d, x, 1000)
        brute = [c for c in all_assignments(d, x) if is_coloring(d, x, c)]
        assert cols == brute and not trunc


class TestOrientationIndependence:
    @pytest.mark.parametrize('name', ['theta', 'hopf', 'kink2', 'trefoil'])
    def test_small(self, name, corpus_map, mgrs):
        d = corpus_map[name]
        for x in mgrs.values():
            counts = {count_colorings(y, x) for y in enumerate_y_orientations(d)}
            assert len(counts) == 1

    def test_family_sample(self, corpus_map, mgrs):
        d = corpus_map['D1']
        ys = enumerate_y_orientations(d)
        x = mgrs['R3xZ2']
        want = count_colorings(d, x)
        for y in ys[::40]:
            assert count_colorings(y, x) == want


@pytest.mark.parametrize('name,alg', list(itertools.product(
    ['kink1', 'kink2', 'kink2neg', 'hopf', 'trefoil', 'theta'], ['R3xZ2', 'C2xZ2', 'Z3', 'S3'])))
def test_ve_matches_bruteforce(name, alg, corpus_map, mgrs):
    d, x = corpus_map[name], mgrs[alg]
    assert count_colorings(d, x) == count_colorings_bruteforce(d, x)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.booleans(), st.integers(2, 5))
def test_kink_chains_with_racks(count, positive, n):
    d = tangle_closure(kink_chain(count, positive))
    for r in (dihedral_quandle(n), cyclic_rack(n)):
        assert count_colorings(d, r) == count_colorings_bruteforce(d, r)

"""Which moves preserve which counts.

Surface moves keep every MGR count; a single R1 kink can change a count
for an MGR whose groups are not conjugation groups.
"""
from spatialsurf.algebra import (conjugation_mcq, cyclic_rack, dihedral_quandle, mgr_from_rack,
                                 symmetric_group)
from spatialsurf.coloring import count_colorings
from spatialsurf.diagram import surface_stats
from spatialsurf.family import load_corpus
from spatialsurf.moves import HANDLEBODY_MOVES, SURFACE_MOVES, apply_move, find_sites, random_walk

corpus = dict(load_corpus())
theta = corpus['theta']
x = mgr_from_rack(dihedral_quandle(3))

w, log = random_walk(theta, SURFACE_MOVES, 50, seed=3)
print('after 50 surface moves: {0} crossings, count {1} -> {2}'.format(
    len(w.crossings), count_colorings(theta, x), count_colorings(w, x)))
print('first moves:', *log[:4], sep='\n  ')

# Framing: with mgr(C2) one kink on a circle halves the count.
c2 = mgr_from_rack(cyclic_rack(2))
circle = corpus['unknot']
site = find_sites(circle, 'R1', 'expand')[0]
print('circle {0} vs kinked circle {1} ({2})'.format(
    count_colorings(circle, c2), count_colorings(apply_move(circle, site), c2), site))

# Conjugation MCQs ignore framing: all six moves keep the count.
s3 = conjugation_mcq(symmetric_group(3)[0])
w, _ = random_walk(theta, HANDLEBODY_MOVES, 50, seed=3)
print('S3 MCQ before/after all-move walk:', count_colorings(theta, s3), count_colorings(w, s3))

# R4 re-glues the bands at a vertex, which the surface statistics notice.
r4 = apply_move(theta, find_sites(theta, 'R4', 'expand')[0])
print('theta stats', surface_stats(theta), '\n  after R4', surface_stats(r4))

"""Counting colorings, from the trefoil up to the D_n / D_n' pair.

Run with ``python gallery/colorings_and_the_ratio.py``.
"""
from spatialsurf.algebra import cyclic_rack, dihedral_quandle, mgr_from_rack, product_rack
from spatialsurf.coloring import count_colorings, enumerate_colorings
from spatialsurf.family import load_corpus, make_Dn, make_Dn_prime

corpus = dict(load_corpus())
r3 = dihedral_quandle(3)

# Three arcs, three colors: the trefoil admits the 3 constant colorings
# plus 6 that use every color.
trefoil = corpus['trefoil']
print('trefoil with R3:', count_colorings(trefoil, r3))
cols, _ = enumerate_colorings(trefoil, r3, 9)
print('  non-constant:', sum(len(set(c.values())) > 1 for c in cols))

# Vertices need group structure, so switch to an MGR built from R3 x C2.
x = mgr_from_rack(product_rack(r3, cyclic_rack(2)))
print('|X| =', x.size, 'with', len(x.groups), 'groups')
print('theta with X:', count_colorings(corpus['theta'], x))

# The two diagrams share a surface type but not their counts.
for n in range(-2, 3):
    a, b = count_colorings(make_Dn(n), x), count_colorings(make_Dn_prime(n), x)
    print('n={0:+d}  D_n={1}  D_n\'={2}  ratio={3}'.format(n, a, b, b // a))

"""
Trees, ratios and the rescaling limit
=====================================

On a tree the occupation ratio R = Z_in / Z_out obeys
R_v = lam / prod (1 + R_child).  Trees with floor(s d) copies of each branch
turn this recursion, after rescaling lam = Lam / d, into the exponential maps
of the semigroup.
"""
import numpy as np

from limitzeros import graphs as gr
from limitzeros.orbit import IDENTITY as I, Compose

T = gr.RootedGraph.from_parents([-1, 0, 0, 1, 1, 2])
pair = gr.partition_pair(T)
print("Z =", pair.full.coefficients, " Z_in =", pair.z_in.coefficients, " Z_out =", pair.z_out.coefficients)
print("R(1) =", gr.ratio(T, 1))

# %%
# A zero of Z is a parameter where some ratio hits -1.
for lam in gr.poly_roots(pair.full):
    print(f"root {lam:.6f}: R = {pair(lam):.6f}")

# %%
# Rescaled ratios approach g_Lam(0) with error about C/d.
g = Compose((0.5, 0.5), (I, Compose((1.0,), (Compose((1.0,), (I,)),))))
lam = 1 + 1j
target = gr.limit_value(g, lam)
for d in (10, 100, 1000):
    tree = gr.gspec_to_tree(g, d)
    err = abs(gr.rescaled_ratio(tree, d, lam) - target)
    print(f"d = {d:5d}: {tree.n:7d} vertices, error {err:.2e}, d * error {d * err:.3f}")

# %%
# For maximum degree 3 no root comes closer to 0 than 4/27.
trees = [t for t in gr.tree_corpus(9) if t.max_degree <= 3]
closest = min(abs(z) for t in trees for z in gr.poly_roots(gr.ind_poly(t)))
print(f"{len(trees)} trees, closest root {closest:.5f}, bound {4 / 27:.5f}")

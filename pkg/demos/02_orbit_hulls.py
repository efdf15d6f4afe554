"""
Hulls of the semigroup orbit of 0
=================================

For each parameter Lam the convex hull of all iterates g(0), g built from
the maps Lam exp(-sum s_i Z_i), is grown from hull{0, Lam} by adding images of
its boundary until nothing changes.  Bounded hulls with 0 on the boundary
mark parameters of the limit zero-free set.
"""
import numpy as np

from limitzeros import orbit as ob

for lam in (1.0, -0.2, -0.36, -0.37, 1 + 1j, 2.2 + 0.8j, 3j, 2.9 + 0.2j):
    a = ob.hull_iterate(lam)
    verdict = ob.membership_from_hull(a)
    print(f"Lam = {lam!s:>10}  {a.status.value:>15} after {a.iterations:3d} steps"
          f"  diameter {a.diameter:8.3f}  clearance {a.origin_clearance:.2e}  -> {verdict.value}")

# %%
# Real parameters give segments: [0, Lam] for Lam > 0, and for -1/e < Lam < 0
# the interval from the attracting fixed point to 0.
seg = ob.hull_iterate(-0.2).polygon
print("hull of -0.2:", np.sort(seg.vertices.real))

# %%
# The hull only grows.  Watch the first few steps for Lam = 1 + i.
a = ob.hull_iterate(1 + 1j, keep_history=True)
for k, poly in enumerate(a.history[:6]):
    print(f"step {k}: {len(poly):4d} vertices, area {poly.area():.5f}")

# %%
# Star shape: shrinking a member towards 0 keeps it a member.
print([m.value for m in ob.star_convexity_probe(2.2 + 0.8j, [0.25, 0.5, 0.75, 1.0])])

# %%
# A compactly invariant convex set certifies that the hull stays bounded
# under small perturbations of the parameter.
K = ob.strict_invariant_candidate(0.45 + 0.45j)
img = (0.45 + 0.45j) * np.exp(-K.boundary_samples(4096))
print("strictly invariant set with", len(K), "vertices; min clearance of images",
      K.signed_clearance(img).min())

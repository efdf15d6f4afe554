"""
Cardioids and their rescaled limit
==================================

The zero-free region of depth-bounded d-ary trees around 0 is the cardioid
C_d = {-d^d u / (u + d)^(d+1) : |u| < 1}.  Stretched by a factor d it
approaches C_inf = {-u e^(-u) : |u| < 1}.
"""
import numpy as np

from limitzeros import cardioid as cd

limit = cd.cardioid_boundary(cd.LIMIT, 2048)
print("limit cardioid spans Re in [%.3f, %.3f], |Im| <= %.3f"
      % (limit.points.real.min(), limit.points.real.max(), np.abs(limit.points.imag).max()))

# %%
# The rescaled curves close in at rate about 1/d: doubling d halves the gap.
for d in (25, 50, 100, 200, 400):
    gap = cd.hausdorff_distance(cd.rescaled_boundary(d, 2048), limit)
    print(f"d = {d:4d}   Hausdorff gap {gap:.4f}   d * gap {d * gap:.3f}")

# %%
# Inside the cardioid the map Z -> Lam e^(-Z) has an attracting fixed point.
for lam in (0.5, 1 + 1j, 2.5, 2.8, -0.3 + 0.1j):
    fp = cd.fixed_point(lam)
    print(f"Lam = {lam!s:>10}  p = {fp.point:.5f}  |multiplier| = {abs(fp.multiplier):.4f}"
          f"  inside: {cd.cardioid_contains(cd.LIMIT, lam)}")

# %%
# The real traces: the finite cardioids cut the real line in an interval
# that grows like (-1/e, e) / d.
for d in (2, 10, 100):
    lo, hi = cd.real_interval(cd.CardioidSpec(d))
    print(f"d = {d:3d}: d * trace = ({d * lo:.4f}, {d * hi:.4f})")
print("limit:", cd.real_interval(cd.LIMIT))

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 5))
    for d in (5, 20, 80):
        p = cd.rescaled_boundary(d, 1024).points
        ax.plot(p.real, p.imag, lw=0.8, label=f"d = {d}")
    ax.plot(limit.points.real, limit.points.imag, "k", lw=1.5, label="limit")
    ax.set_aspect("equal")
    ax.legend()
    fig.savefig("cardioids.png", dpi=120)
